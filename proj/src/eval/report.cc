// Copyright 2026 The DeltaScore Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "deltascore/eval/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace deltascore::eval {
namespace {

using nlohmann::ordered_json;

constexpr int kCellWidth = 7;

std::string FixedThree(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", value);
  return buffer;
}

std::string PadRight(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string PadLeft(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

const TableCell* CorrelationTable::Find(const std::string& metric,
                                        const std::string& dataset,
                                        Aspect aspect) const {
  for (const TableCell& cell : cells) {
    if (cell.metric_id == metric && cell.dataset_id == dataset &&
        cell.aspect == aspect) {
      return &cell;
    }
  }
  return nullptr;
}

std::string RenderJson(const CorrelationTable& table) {
  ordered_json out;
  out["metrics"] = table.metrics;
  out["datasets"] = table.datasets;
  out["cells"] = ordered_json::array();
  for (const TableCell& cell : table.cells) {
    ordered_json j;
    j["metric"] = cell.metric_id;
    j["dataset"] = cell.dataset_id;
    j["aspect"] = std::string(perturb::AspectName(cell.aspect));
    if (cell.report) {
      const CorrelationReport& r = *cell.report;
      j["tau"] = r.tau;
      j["abs_tau"] = r.abs_tau;
      j["n"] = r.n;
      j["concordant"] = r.counts.concordant;
      j["discordant"] = r.counts.discordant;
      j["ties_x"] = r.counts.ties_x;
      j["ties_y"] = r.counts.ties_y;
      j["ties_xy"] = r.counts.ties_xy;
      j["pairs"] = r.counts.pairs;
      j["excluded"] = r.excluded_ids.size();
      j["excluded_ids"] = r.excluded_ids;
    } else {
      j["error"] = cell.error;
    }
    out["cells"].push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string RenderText(const CorrelationTable& table) {
  std::size_t label_width = std::string("metric").size();
  for (const std::string& metric : table.metrics) {
    label_width = std::max(label_width, metric.size());
  }
  label_width += 2;
  const std::size_t group_width = kCellWidth * perturb::kAllAspects.size();

  std::ostringstream out;
  out << PadRight("", label_width);
  for (const std::string& dataset : table.datasets) {
    out << PadRight("  " + dataset, group_width + 2);
  }
  out << "\n" << PadRight("metric", label_width);
  for (std::size_t d = 0; d < table.datasets.size(); ++d) {
    out << "  ";
    for (perturb::Aspect aspect : perturb::kAllAspects) {
      out << PadLeft(std::string(perturb::AspectAbbrev(aspect)), kCellWidth);
    }
  }
  out << "\n";
  for (const std::string& metric : table.metrics) {
    out << PadRight(metric, label_width);
    for (const std::string& dataset : table.datasets) {
      out << "  ";
      for (perturb::Aspect aspect : perturb::kAllAspects) {
        const TableCell* cell = table.Find(metric, dataset, aspect);
        const std::string value = cell != nullptr && cell->report
                                      ? FixedThree(cell->report->abs_tau)
                                      : "-";
        out << PadLeft(value, kCellWidth);
      }
    }
    out << "\n";
  }
  std::string text = out.str();
  // Drop trailing spaces on each line.
  std::string trimmed;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    line.erase(line.find_last_not_of(' ') + 1);
    trimmed += line + "\n";
  }
  return trimmed;
}

}  // namespace deltascore::eval
