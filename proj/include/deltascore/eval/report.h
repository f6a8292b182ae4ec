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

// Correlation tables: rows are metrics, columns are the five aspects repeated
// per dataset, cells hold |tau|.

#ifndef DELTASCORE_EVAL_REPORT_H_
#define DELTASCORE_EVAL_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "deltascore/eval/correlation.h"

namespace deltascore::eval {

struct TableCell {
  std::string metric_id;
  std::string dataset_id;
  Aspect aspect = Aspect::kFluency;
  std::optional<CorrelationReport> report;
  std::string error;  // Set when report is empty.
};

struct CorrelationTable {
  std::vector<std::string> metrics;   // Row order.
  std::vector<std::string> datasets;  // Column group order.
  std::vector<TableCell> cells;

  const TableCell* Find(const std::string& metric, const std::string& dataset,
                        Aspect aspect) const;
};

// Pretty-printed JSON with a trailing newline.
std::string RenderJson(const CorrelationTable& table);

// Fixed-width text; "-" marks a cell without a correlation.
std::string RenderText(const CorrelationTable& table);

}  // namespace deltascore::eval

#endif  // DELTASCORE_EVAL_REPORT_H_
