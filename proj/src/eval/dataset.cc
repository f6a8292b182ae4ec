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

#include "deltascore/eval/dataset.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "deltascore/error.h"

namespace deltascore::eval {
namespace {

constexpr std::size_t kMaxReported = 10;

using nlohmann::json;

// Thrown inside line parsing; carries the offending field.
struct FieldError {
  std::string message;
};

std::string RequireString(const json& record, const char* field,
                          bool optional = false) {
  const auto it = record.find(field);
  if (it == record.end()) {
    if (optional) return {};
    throw FieldError{std::string(field) + ": missing"};
  }
  if (!it->is_string()) throw FieldError{std::string(field) + ": not a string"};
  return it->get<std::string>();
}

RatedStory ParseRecord(const std::string& line) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw FieldError{std::string("invalid JSON: ") + e.what()};
  }
  if (!record.is_object()) throw FieldError{"record is not an object"};

  RatedStory rated;
  rated.story.id = RequireString(record, "id");
  if (text::IsBlank(rated.story.id)) throw FieldError{"id: empty"};
  rated.story.condition = RequireString(record, "condition");
  rated.story.story = RequireString(record, "story");
  if (text::IsBlank(rated.story.story)) throw FieldError{"story: empty"};
  if (record.contains("system")) {
    rated.story.system = RequireString(record, "system");
  }

  const auto ratings = record.find("ratings");
  if (ratings == record.end() || ratings->is_null()) return rated;
  if (!ratings->is_object()) throw FieldError{"ratings: not an object"};
  for (const auto& [name, scores] : ratings->items()) {
    const std::string field = "ratings." + name;
    const auto aspect = perturb::ParseAspect(name);
    if (!aspect) throw FieldError{field + ": unknown aspect"};
    if (!scores.is_array()) throw FieldError{field + ": not a list"};
    if (scores.empty()) throw FieldError{field + ": no annotator scores"};
    std::vector<int>& out = rated.ratings[*aspect];
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const std::string element = field + "[" + std::to_string(i) + "]";
      if (!scores[i].is_number_integer()) {
        throw FieldError{element + ": not an integer"};
      }
      const auto value = scores[i].get<std::int64_t>();
      if (value < 1 || value > 5) {
        throw FieldError{element + ": " + std::to_string(value) +
                         " outside 1..5"};
      }
      out.push_back(static_cast<int>(value));
    }
  }
  return rated;
}

}  // namespace

std::vector<RatedStory> ParseDataset(std::istream& in) {
  std::vector<RatedStory> stories;
  std::vector<std::string> problems;
  std::size_t total_problems = 0;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_number = 0;

  auto report = [&](std::string message) {
    ++total_problems;
    if (problems.size() < kMaxReported) {
      problems.push_back("line " + std::to_string(line_number) + ": " +
                         std::move(message));
    }
  };

  while (std::getline(in, line)) {
    ++line_number;
    if (text::IsBlank(line)) continue;
    try {
      RatedStory rated = ParseRecord(line);
      if (!ids.insert(rated.story.id).second) {
        report("id: duplicate '" + rated.story.id + "'");
        continue;
      }
      stories.push_back(std::move(rated));
    } catch (const FieldError& e) {
      report(e.message);
    }
  }

  if (total_problems > 0) {
    std::ostringstream message;
    message << total_problems << " malformed line(s)";
    for (const std::string& problem : problems) message << "\n  " << problem;
    if (total_problems > problems.size()) {
      message << "\n  ... " << total_problems - problems.size() << " more";
    }
    throw Error(ErrorCode::kIngestError, message.str());
  }
  return stories;
}

std::vector<RatedStory> LoadDataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open dataset " + path);
  try {
    return ParseDataset(in);
  } catch (const Error& error) {
    RethrowWithContext(error, path);
  }
}

double AggregateRatings(const std::vector<int>& scores) {
  if (scores.empty()) {
    throw Error(ErrorCode::kInvalidInput, "no ratings to aggregate");
  }
  double sum = 0.0;
  for (int score : scores) sum += score;
  return sum / static_cast<double>(scores.size());
}

std::map<Aspect, double> AggregateRatings(const RatedStory& story) {
  std::map<Aspect, double> means;
  for (const auto& [aspect, scores] : story.ratings) {
    means[aspect] = AggregateRatings(scores);
  }
  return means;
}

std::vector<ConditionedStory> StoriesOf(const std::vector<RatedStory>& rated) {
  std::vector<ConditionedStory> stories;
  stories.reserve(rated.size());
  for (const RatedStory& r : rated) stories.push_back(r.story);
  return stories;
}

}  // namespace deltascore::eval
