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

#include "deltascore/cli/commands.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "deltascore/eval/dataset.h"
#include "deltascore/eval/report.h"
#include "deltascore/llm/client.h"
#include "deltascore/perturb/antonym_lexicon.h"
#include "deltascore/perturb/perturbations.h"
#include "deltascore/perturb/profiles.h"
#include "deltascore/rng.h"
#include "deltascore/scoring/ngram_model.h"

#ifndef DELTASCORE_DEFAULT_ANTONYMS
#define DELTASCORE_DEFAULT_ANTONYMS ""
#endif

namespace deltascore::cli {
namespace {

using nlohmann::ordered_json;
using perturb::Kind;

constexpr std::string_view kVersion = "deltascore 0.1.0";

// Raised for flag combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BackendFlags {
  std::string backend = "ngram";
  std::string model_path;
  std::string endpoint;
  std::string model;
  std::string auth_env = "DELTASCORE_LOGPROB_TOKEN";
  std::string shape = "native";
  std::string channel = "concatenated";
  std::string cassette;
  std::string mode = "live";
  double timeout = 60.0;
  int retries = 3;
  int in_flight = 8;
};

struct ServiceFlags {
  std::string endpoint;
  std::string model;
  std::string auth_env = "DELTASCORE_SERVICE_TOKEN";
  std::string shape = "generic";
  std::string cassette;
  std::string mode = "live";
  double temperature = 0.0;
  double timeout = 60.0;
  int retries = 3;
  int in_flight = 4;
};

void AddBackendFlags(CLI::App* app, BackendFlags& f) {
  app->add_option("--backend", f.backend, "ngram or remote")
      ->check(CLI::IsMember({"ngram", "remote"}))
      ->capture_default_str();
  app->add_option("--model", f.model_path, "n-gram model file");
  app->add_option("--lm-endpoint", f.endpoint, "remote logprob endpoint URL");
  app->add_option("--lm-model", f.model, "remote model name");
  app->add_option("--lm-auth-env", f.auth_env, "env var holding the token")
      ->capture_default_str();
  app->add_option("--lm-shape", f.shape, "native or openai-echo")
      ->check(CLI::IsMember({"native", "openai-echo"}))
      ->capture_default_str();
  app->add_option("--lm-channel", f.channel, "concatenated or encoder")
      ->check(CLI::IsMember({"concatenated", "encoder"}))
      ->capture_default_str();
  app->add_option("--lm-cassette", f.cassette, "record/replay cassette file");
  app->add_option("--lm-mode", f.mode, "live, record or replay")
      ->check(CLI::IsMember({"live", "record", "replay"}))
      ->capture_default_str();
  app->add_option("--lm-timeout", f.timeout, "seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--lm-retries", f.retries)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--lm-in-flight", f.in_flight)
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
}

void AddServiceFlags(CLI::App* app, ServiceFlags& f) {
  app->add_option("--service-endpoint", f.endpoint, "text service URL");
  app->add_option("--service-model", f.model, "text service model name");
  app->add_option("--service-auth-env", f.auth_env)->capture_default_str();
  app->add_option("--service-shape", f.shape, "generic or openai")
      ->check(CLI::IsMember({"generic", "openai"}))
      ->capture_default_str();
  app->add_option("--service-cassette", f.cassette);
  app->add_option("--service-mode", f.mode, "live, record or replay")
      ->check(CLI::IsMember({"live", "record", "replay"}))
      ->capture_default_str();
  app->add_option("--service-temperature", f.temperature)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--service-timeout", f.timeout)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--service-retries", f.retries)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--service-in-flight", f.in_flight)
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
}

scoring::BackendConfig ToConfig(const BackendFlags& f) {
  scoring::BackendConfig config;
  config.kind = f.backend == "remote" ? scoring::BackendKind::kRemoteLogprob
                                      : scoring::BackendKind::kNGram;
  config.model_path = f.model_path;
  config.endpoint = f.endpoint;
  config.model = f.model;
  config.auth_env = f.auth_env;
  config.shape = f.shape == "openai-echo" ? scoring::WireShape::kOpenAiEcho
                                          : scoring::WireShape::kNative;
  config.channel = f.channel == "encoder"
                       ? scoring::ConditionChannel::kEncoder
                       : scoring::ConditionChannel::kConcatenated;
  config.cassette_path = f.cassette;
  config.cassette_mode = f.mode;
  config.timeout_seconds = f.timeout;
  config.max_retries = f.retries;
  config.max_in_flight = f.in_flight;
  return config;
}

std::unique_ptr<scoring::Backend> BuildBackend(const BackendFlags& f) {
  if (f.backend == "ngram" && f.model_path.empty()) {
    throw UsageError("--model is required with --backend ngram");
  }
  if (f.backend == "remote" && f.mode != "live" && f.cassette.empty()) {
    throw UsageError("--lm-mode " + f.mode + " needs --lm-cassette");
  }
  return scoring::MakeBackend(ToConfig(f));
}

std::unique_ptr<llm::Client> BuildService(const ServiceFlags& f) {
  if (f.endpoint.empty()) {
    throw UsageError("this perturbation needs --service-endpoint");
  }
  if (f.mode != "live" && f.cassette.empty()) {
    throw UsageError("--service-mode " + f.mode + " needs --service-cassette");
  }
  llm::ServiceConfig config;
  config.endpoint = f.endpoint;
  config.model = f.model;
  config.auth_env = f.auth_env;
  config.shape = *llm::ParseChatShape(f.shape);
  config.cassette_path = f.cassette;
  config.mode = *net::ParseCassetteMode(f.mode);
  config.temperature = f.temperature;
  config.timeout_seconds = f.timeout;
  config.max_retries = f.retries;
  config.max_in_flight = f.in_flight;
  return std::make_unique<llm::Client>(std::move(config));
}

bool NeedsService(Kind kind) {
  return kind == Kind::kRmRelWords || kind == Kind::kCommonsense ||
         kind == Kind::kBlanderNarrative;
}

ordered_json BackendJson(const BackendFlags& f) {
  ordered_json j;
  j["backend"] = f.backend;
  if (f.backend == "ngram") {
    j["model"] = f.model_path;
  } else {
    j["endpoint"] = f.endpoint;
    j["model"] = f.model;
    j["shape"] = f.shape;
    j["channel"] = f.channel;
    j["cassette"] = f.cassette;
    j["mode"] = f.mode;
  }
  return j;
}

ordered_json ServiceJson(const ServiceFlags& f) {
  ordered_json j;
  j["endpoint"] = f.endpoint;
  j["model"] = f.model;
  j["shape"] = f.shape;
  j["temperature"] = f.temperature;
  j["cassette"] = f.cassette;
  j["mode"] = f.mode;
  return j;
}

ordered_json FlagsJson(const perturb::PerturbationSpec& spec) {
  ordered_json j;
  j["kind"] = std::string(perturb::KindName(spec.kind));
  j["degree"] = spec.degree;
  return j;
}

std::filesystem::path PrepareOutDir(const std::string& out) {
  std::filesystem::path dir(out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create output directory " + out + ": " + ec.message());
  }
  return dir;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Rethrows the error of
// the lowest failing index.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)),
                            std::max<std::size_t>(n, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
  }
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

// ---------------------------------------------------------------- perturb

struct PerturbArgs {
  std::string dataset;
  std::string kind;
  std::optional<double> degree;
  std::uint64_t seed = 0;
  std::string out;
  std::string antonyms = DELTASCORE_DEFAULT_ANTONYMS;
  int jobs = 1;
  BackendFlags backend;
  ServiceFlags service;
};

int RunPerturb(const PerturbArgs& args, std::ostream& out) {
  const auto kind = perturb::ParseKind(args.kind);
  if (!kind) throw UsageError("unknown --kind '" + args.kind + "'");
  perturb::PerturbationSpec spec{
      *kind, args.degree.value_or(perturb::DefaultDegree(*kind)), 0};
  try {
    perturb::Validate(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const std::vector<eval::RatedStory> rated = eval::LoadDataset(args.dataset);
  const std::vector<ConditionedStory> stories = eval::StoriesOf(rated);

  perturb::PerturbationContext context;
  perturb::AntonymLexicon lexicon;
  std::unique_ptr<llm::Client> service;
  std::unique_ptr<scoring::Backend> backend;
  if (*kind == Kind::kAntonym) {
    lexicon = perturb::AntonymLexicon::Load(args.antonyms);
    context.antonyms = &lexicon;
  }
  if (NeedsService(*kind)) {
    service = BuildService(args.service);
    context.service = service.get();
  }
  if (*kind == Kind::kStoryReplace) {
    backend = BuildBackend(args.backend);
    context.backend = backend.get();
    context.corpus = stories;
  }

  const std::filesystem::path dir = PrepareOutDir(args.out);
  std::vector<std::string> lines(stories.size());
  ParallelFor(stories.size(), args.jobs, [&](std::size_t i) {
    perturb::PerturbationSpec story_spec = spec;
    story_spec.seed =
        DeriveSeed(args.seed, stories[i].id, perturb::KindName(*kind));
    try {
      lines[i] = PerturbationRecord(
          perturb::Perturb(stories[i], story_spec, context));
    } catch (const Error& e) {
      RethrowWithContext(e, "story '" + stories[i].id + "'");
    }
  });

  std::string contents;
  for (const std::string& line : lines) contents += line + "\n";
  WriteFileAtomically((dir / "perturbations.jsonl").string(), contents);

  ordered_json manifest;
  manifest["command"] = "perturb";
  manifest["version"] = std::string(kVersion);
  manifest["dataset"] = args.dataset;
  manifest["out"] = args.out;
  manifest["seed"] = args.seed;
  manifest["seed_derivation"] = std::string(SeededRng::kAlgorithm);
  manifest["perturbation"] = FlagsJson(spec);
  if (*kind == Kind::kAntonym) manifest["antonyms"] = args.antonyms;
  if (service) manifest["service"] = ServiceJson(args.service);
  if (backend) manifest["backend"] = BackendJson(args.backend);
  WriteFileAtomically((dir / "manifest.json").string(),
                      manifest.dump(2) + "\n");
  out << "wrote " << lines.size() << " records to "
      << (dir / "perturbations.jsonl").string() << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- train-lm

struct TrainArgs {
  std::string corpus;
  int order = 2;
  double alpha = 1.0;
  std::string out;
};

int RunTrain(const TrainArgs& args, std::ostream& out) {
  std::ifstream in(args.corpus);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open corpus " + args.corpus);
  std::vector<std::vector<std::string>> sentences;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> words = text::TokenizeWords(line);
    if (!words.empty()) sentences.push_back(std::move(words));
  }
  const scoring::NGramModel model =
      scoring::NGramModel::Train(sentences, args.order, args.alpha);
  const std::filesystem::path path(args.out);
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  WriteFileAtomically(args.out, model.Serialize());
  out << "trained " << model.id() << " on " << sentences.size()
      << " lines; wrote " << args.out << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ delta

struct DeltaArgs {
  std::string dataset;
  std::vector<std::string> profiles = {"production"};
  std::uint64_t seed = 0;
  int replicates = 1;
  std::string out;
  std::string antonyms = DELTASCORE_DEFAULT_ANTONYMS;
  int jobs = 1;
  BackendFlags backend;
  ServiceFlags service;
};

int RunDelta(const DeltaArgs& args, std::ostream& out) {
  std::vector<perturb::ProfileSet> sets;
  try {
    for (const std::string& name : args.profiles) {
      for (perturb::ProfileSet& set : perturb::ResolveProfiles(name)) {
        perturb::Validate(set);
        sets.push_back(std::move(set));
      }
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  std::set<std::string> names;
  for (const perturb::ProfileSet& set : sets) {
    if (!names.insert(set.name).second) {
      throw UsageError("profile '" + set.name + "' given twice");
    }
  }

  bool need_antonyms = false;
  bool need_service = false;
  for (const perturb::ProfileSet& set : sets) {
    for (const perturb::AspectProfile& p : set.profiles) {
      need_antonyms = need_antonyms || p.spec.kind == Kind::kAntonym;
      need_service = need_service || NeedsService(p.spec.kind);
    }
  }

  const std::vector<eval::RatedStory> rated = eval::LoadDataset(args.dataset);
  const std::vector<ConditionedStory> stories = eval::StoriesOf(rated);
  std::unique_ptr<scoring::Backend> backend = BuildBackend(args.backend);

  perturb::PerturbationContext context;
  perturb::AntonymLexicon lexicon;
  std::unique_ptr<llm::Client> service;
  if (need_antonyms) {
    lexicon = perturb::AntonymLexicon::Load(args.antonyms);
    context.antonyms = &lexicon;
  }
  if (need_service) {
    service = BuildService(args.service);
    context.service = service.get();
  }
  context.backend = backend.get();
  context.corpus = stories;

  const std::filesystem::path dir = PrepareOutDir(args.out);
  const delta::EvaluationOptions options{args.seed, args.replicates};
  std::string contents;
  std::size_t records = 0;
  for (const perturb::ProfileSet& set : sets) {
    const std::vector<delta::DeltaResult> results = delta::EvaluateCorpus(
        stories, set, *backend, context, options, args.jobs);
    for (const delta::DeltaResult& result : results) {
      contents += DeltaRecord(result, set.name) + "\n";
      ++records;
    }
  }
  WriteFileAtomically((dir / "deltas.jsonl").string(), contents);

  ordered_json manifest;
  manifest["command"] = "delta";
  manifest["version"] = std::string(kVersion);
  manifest["dataset"] = args.dataset;
  manifest["out"] = args.out;
  manifest["seed"] = args.seed;
  manifest["seed_derivation"] = std::string(SeededRng::kAlgorithm);
  manifest["replicates"] = args.replicates;
  manifest["backend"] = BackendJson(args.backend);
  manifest["backend_id"] = backend->id();
  ordered_json profiles = ordered_json::array();
  for (const perturb::ProfileSet& set : sets) {
    ordered_json j;
    j["name"] = set.name;
    ordered_json aspects;
    for (const perturb::AspectProfile& p : set.profiles) {
      aspects[std::string(perturb::AspectName(p.aspect))] =
          perturb::SpecLabel(p.spec);
    }
    j["aspects"] = aspects;
    profiles.push_back(std::move(j));
  }
  manifest["profiles"] = profiles;
  if (need_antonyms) manifest["antonyms"] = args.antonyms;
  if (service) manifest["service"] = ServiceJson(args.service);
  WriteFileAtomically((dir / "manifest.json").string(),
                      manifest.dump(2) + "\n");
  out << "wrote " << records << " records to "
      << (dir / "deltas.jsonl").string() << "\n";
  return kExitOk;
}

// -------------------------------------------------------------- correlate

struct CorrelateArgs {
  std::string scores;
  std::vector<std::string> ratings;
  std::vector<std::string> names;
  std::string out;
};

int RunCorrelate(const CorrelateArgs& args, std::ostream& out) {
  if (!args.names.empty() && args.names.size() != args.ratings.size()) {
    throw UsageError("--dataset-name must be given once per --ratings");
  }
  std::ifstream in(args.scores);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + args.scores);
  ScoreTable table;
  try {
    table = ParseDeltaRecords(in);
  } catch (const Error& e) {
    RethrowWithContext(e, args.scores);
  }

  std::vector<std::vector<eval::RatedStory>> datasets;
  eval::CorrelationTable report;
  report.metrics = table.metrics;
  std::set<std::string> known;
  for (std::size_t d = 0; d < args.ratings.size(); ++d) {
    datasets.push_back(eval::LoadDataset(args.ratings[d]));
    report.datasets.push_back(
        args.names.empty()
            ? std::filesystem::path(args.ratings[d]).stem().string()
            : args.names[d]);
    for (const eval::RatedStory& r : datasets.back()) known.insert(r.story.id);
  }

  std::set<std::string> orphans;
  for (const auto& [key, scores] : table.scores) {
    for (const auto& [id, value] : scores) {
      if (!known.contains(id)) orphans.insert(id);
    }
  }
  if (!orphans.empty()) {
    std::string message =
        std::to_string(orphans.size()) + " scored id(s) not in any dataset:";
    for (const std::string& id : orphans) message += " " + id;
    throw Error(ErrorCode::kInvalidInput, message);
  }

  std::size_t usable = 0;
  for (const std::string& metric : table.metrics) {
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      std::set<std::string> ids;
      for (const eval::RatedStory& r : datasets[d]) ids.insert(r.story.id);
      for (perturb::Aspect aspect : perturb::kAllAspects) {
        const auto it = table.scores.find({metric, aspect});
        if (it == table.scores.end()) continue;
        eval::ScoreMap subset;
        for (const auto& [id, value] : it->second) {
          if (ids.contains(id)) subset.emplace(id, value);
        }
        eval::TableCell cell{metric, report.datasets[d], aspect, {}, {}};
        try {
          cell.report = eval::CorrelateAspect(subset, datasets[d], aspect,
                                              metric, report.datasets[d]);
          ++usable;
        } catch (const Error& e) {
          cell.error = e.what();
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }
  if (usable == 0) {
    std::string message = "no correlation could be computed";
    if (!report.cells.empty()) message += ": " + report.cells.front().error;
    throw Error(ErrorCode::kInsufficientData, message);
  }

  const std::filesystem::path dir = PrepareOutDir(args.out);
  const std::string text = eval::RenderText(report);
  WriteFileAtomically((dir / "correlation.json").string(),
                      eval::RenderJson(report));
  WriteFileAtomically((dir / "correlation.txt").string(), text);

  ordered_json manifest;
  manifest["command"] = "correlate";
  manifest["version"] = std::string(kVersion);
  manifest["scores"] = args.scores;
  manifest["ratings"] = args.ratings;
  manifest["datasets"] = report.datasets;
  manifest["out"] = args.out;
  WriteFileAtomically((dir / "manifest.json").string(),
                      manifest.dump(2) + "\n");
  out << text;
  return kExitOk;
}

}  // namespace

ExitCode ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kScoringError:
    case ErrorCode::kBatchError:
    case ErrorCode::kServiceError:
    case ErrorCode::kReplayMiss:
      return kExitBackend;
    default:
      return kExitData;
  }
}

std::string PerturbationRecord(const perturb::PerturbedStory& perturbed) {
  ordered_json j;
  j["id"] = perturbed.original_id;
  j["kind"] = std::string(perturb::KindName(perturbed.spec.kind));
  j["degree"] = perturbed.spec.degree;
  j["seed"] = perturbed.spec.seed;
  j["original"] = perturbed.original;
  j["perturbed"] = perturbed.text;
  ordered_json edits = ordered_json::array();
  for (const perturb::Edit& edit : perturbed.edits) {
    edits.push_back({{"op", edit.op},
                     {"position", edit.position},
                     {"before", edit.before},
                     {"after", edit.after}});
  }
  j["edits"] = std::move(edits);
  j["noop"] = perturbed.noop;
  if (perturbed.noop) j["noop_reason"] = perturbed.noop_reason;
  return j.dump();
}

std::string DeltaRecord(const delta::DeltaResult& result,
                        const std::string& profile) {
  auto number = [](double value) {
    return std::isfinite(value) ? ordered_json(value) : ordered_json(nullptr);
  };
  ordered_json j;
  j["id"] = result.id;
  j["aspect"] = result.aspect
                    ? ordered_json(std::string(perturb::AspectName(*result.aspect)))
                    : ordered_json(nullptr);
  j["kind"] = std::string(perturb::KindName(result.spec.kind));
  j["degree"] = result.spec.degree;
  j["seed"] = result.spec.seed;
  j["logp_original"] = number(result.logp_original);
  j["logp_perturbed"] = number(result.logp_perturbed);
  j["delta"] = number(result.delta);
  j["flags"] = {{"noop", result.flags.noop},
                {"truncated", result.flags.truncated},
                {"degenerate", result.flags.degenerate}};
  j["profile"] = profile;
  j["replicates"] = result.replicates;
  return j.dump();
}

ScoreTable ParseDeltaRecords(std::istream& in) {
  ScoreTable table;
  std::set<std::string> metrics;
  std::string line;
  std::size_t line_number = 0;
  auto fail = [&](const std::string& message) {
    throw Error(ErrorCode::kIngestError,
                "line " + std::to_string(line_number) + ": " + message);
  };
  while (std::getline(in, line)) {
    ++line_number;
    if (text::IsBlank(line)) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("record is not an object");
    if (!j.contains("id") || !j["id"].is_string()) fail("id: missing");
    if (!j.contains("aspect") || !j["aspect"].is_string()) {
      fail("aspect: missing");
    }
    const auto aspect = perturb::ParseAspect(j["aspect"].get<std::string>());
    if (!aspect) fail("aspect: unknown");
    if (!j.contains("delta") ||
        !(j["delta"].is_number() || j["delta"].is_null())) {
      fail("delta: missing");
    }
    std::string metric;
    if (j.contains("profile") && j["profile"].is_string()) {
      metric = j["profile"].get<std::string>();
    } else {
      if (!j.contains("kind") || !j["kind"].is_string()) fail("kind: missing");
      const auto kind = perturb::ParseKind(j["kind"].get<std::string>());
      if (!kind) fail("kind: unknown");
      const double degree =
          j.contains("degree") && j["degree"].is_number()
              ? j["degree"].get<double>()
              : 1.0;
      metric = perturb::SpecLabel({*kind, degree, 0});
    }
    if (metrics.insert(metric).second) table.metrics.push_back(metric);
    const double value = j["delta"].is_null()
                             ? std::numeric_limits<double>::quiet_NaN()
                             : j["delta"].get<double>();
    const std::string id = j["id"].get<std::string>();
    if (!table.scores[{metric, *aspect}].emplace(id, value).second) {
      fail("duplicate score for " + metric + " / " +
           std::string(perturb::AspectName(*aspect)) + " / " + id);
    }
  }
  return table;
}

void WriteFileAtomically(const std::string& path, const std::string& contents) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIoError, "cannot write " + temp);
    file << contents;
    file.flush();
    if (!file) throw Error(ErrorCode::kIoError, "write failed: " + temp);
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot rename " + temp + " to " + path + ": " + ec.message());
  }
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Reference-free story evaluation by perturbation likelihood "
               "differences"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML or INI file mirroring the flags");
  app.require_subcommand(1);

  PerturbArgs perturb_args;
  CLI::App* perturb = app.add_subcommand("perturb", "Perturb every story");
  perturb->add_option("--dataset", perturb_args.dataset, "stories (JSONL)")
      ->required();
  perturb->add_option("--kind", perturb_args.kind, "perturbation kind")
      ->required();
  perturb->add_option("--degree", perturb_args.degree, "in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  perturb->add_option("--seed", perturb_args.seed, "global seed")
      ->capture_default_str();
  perturb->add_option("--out", perturb_args.out, "output directory")
      ->required();
  perturb->add_option("--antonyms", perturb_args.antonyms, "antonym TSV")
      ->capture_default_str();
  perturb->add_option("--jobs", perturb_args.jobs)
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  AddBackendFlags(perturb, perturb_args.backend);
  AddServiceFlags(perturb, perturb_args.service);

  TrainArgs train_args;
  CLI::App* train =
      app.add_subcommand("train-lm", "Train an n-gram model on a text corpus");
  train->add_option("--corpus", train_args.corpus, "one text per line")
      ->required();
  train->add_option("--order", train_args.order)
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  train->add_option("--alpha", train_args.alpha, "additive smoothing")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--out", train_args.out, "model file")->required();

  DeltaArgs delta_args;
  CLI::App* delta_cmd =
      app.add_subcommand("delta", "Score stories against their perturbations");
  delta_cmd->add_option("--dataset", delta_args.dataset, "stories (JSONL)")
      ->required();
  delta_cmd
      ->add_option("--profiles", delta_args.profiles,
                   "production, targeted, typo, jumble, antonym or Kind@degree")
      ->capture_default_str();
  delta_cmd->add_option("--seed", delta_args.seed)->capture_default_str();
  delta_cmd->add_option("--replicates", delta_args.replicates)
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  delta_cmd->add_option("--out", delta_args.out, "output directory")
      ->required();
  delta_cmd->add_option("--antonyms", delta_args.antonyms)
      ->capture_default_str();
  delta_cmd->add_option("--jobs", delta_args.jobs)
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  AddBackendFlags(delta_cmd, delta_args.backend);
  AddServiceFlags(delta_cmd, delta_args.service);

  CorrelateArgs correlate_args;
  CLI::App* correlate = app.add_subcommand(
      "correlate", "Kendall correlation of scores with human ratings");
  correlate->add_option("--scores", correlate_args.scores, "deltas.jsonl")
      ->required();
  correlate->add_option("--ratings", correlate_args.ratings, "rated dataset")
      ->required();
  correlate->add_option("--dataset-name", correlate_args.names,
                        "column label per --ratings");
  correlate->add_option("--out", correlate_args.out, "output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (perturb->parsed()) return RunPerturb(perturb_args, out);
    if (train->parsed()) return RunTrain(train_args, out);
    if (delta_cmd->parsed()) return RunDelta(delta_args, out);
    if (correlate->parsed()) return RunCorrelate(correlate_args, out);
  } catch (const UsageError& e) {
    err << "deltascore: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "deltascore: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "deltascore: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace deltascore::cli
