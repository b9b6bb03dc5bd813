// xlsrl: annotation projection and bootstrapped SRL training from the command line.
//
// Exit codes: 0 success, 1 usage or argument error, 2 data error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xlsrl/align.h"
#include "xlsrl/bootstrap.h"
#include "xlsrl/conll.h"
#include "xlsrl/error.h"
#include "xlsrl/eval.h"
#include "xlsrl/pipeline.h"
#include "xlsrl/project.h"
#include "xlsrl/sidecar.h"
#include "xlsrl/synth.h"
#include "xlsrl/util.h"

namespace fs = std::filesystem;
using namespace xlsrl;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Settings shared by several subcommands. Flags override the JSON config,
// which overrides these defaults.
struct RunConfig {
  double threshold = 0.4;
  std::string cost = "uniform";
  std::string variant = "relabel";
  int rounds = 7;
  int epochs = 10;
  std::uint64_t seed = 1;
  std::vector<std::string> blacklist = {"AM"};
  bool blacklist_prefix = true;
  int workers = default_workers();
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (auto part : split(text, ',')) {
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

void apply_json(RunConfig& cfg, const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  if (!j.is_object()) throw DataError(path + ": config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "threshold") cfg.threshold = value.get<double>();
      else if (key == "cost") cfg.cost = value.get<std::string>();
      else if (key == "variant") cfg.variant = value.get<std::string>();
      else if (key == "rounds") cfg.rounds = value.get<int>();
      else if (key == "epochs") cfg.epochs = value.get<int>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "workers") cfg.workers = value.get<int>();
      else if (key == "blacklist_prefix") cfg.blacklist_prefix = value.get<bool>();
      else if (key == "blacklist") {
        cfg.blacklist = value.is_string() ? split_list(value.get<std::string>())
                                          : value.get<std::vector<std::string>>();
      } else {
        throw UsageError(path + ": unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Registers the shared flags on a subcommand and resolves them after parsing.
class SharedFlags {
 public:
  void add(CLI::App* app, bool projection, bool training, bool bootstrapping) {
    app->add_option("--config", config_path_, "JSON file with default settings");
    app->add_option("--workers", flags_.workers, "worker threads for sentence-level stages");
    track(app, "--workers");
    track(app, "--config");
    if (projection) {
      app->add_option("--threshold", flags_.threshold, "projection density threshold in [0,1]");
      track(app, "--threshold");
    }
    if (projection || bootstrapping) {
      app->add_option("--cost", flags_.cost, "uniform | comp | dep | comp+dep");
      track(app, "--cost");
    }
    app->add_option("--blacklist", blacklist_, "comma-separated roles to drop (empty: none)");
    track(app, "--blacklist");
    app->add_flag("--exact-blacklist", exact_, "match blacklist roles exactly, not by prefix");
    track(app, "--exact-blacklist");
    if (training || bootstrapping) {
      app->add_option("--epochs", flags_.epochs, "perceptron epochs per training run");
      app->add_option("--seed", flags_.seed, "shuffling seed");
      track(app, "--epochs");
      track(app, "--seed");
    }
    if (bootstrapping) {
      app->add_option("--variant", flags_.variant, "fill-in | relabel");
      app->add_option("--rounds", flags_.rounds, "bootstrap rounds m");
      track(app, "--variant");
      track(app, "--rounds");
    }
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (set("--config")) apply_json(cfg, config_path_);
    if (set("--threshold")) cfg.threshold = flags_.threshold;
    if (set("--cost")) cfg.cost = flags_.cost;
    if (set("--variant")) cfg.variant = flags_.variant;
    if (set("--rounds")) cfg.rounds = flags_.rounds;
    if (set("--epochs")) cfg.epochs = flags_.epochs;
    if (set("--seed")) cfg.seed = flags_.seed;
    if (set("--workers")) cfg.workers = flags_.workers;
    if (set("--blacklist")) cfg.blacklist = split_list(blacklist_);
    if (set("--exact-blacklist")) cfg.blacklist_prefix = !exact_;

    if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0)) {
      throw UsageError("--threshold must lie in [0,1], got " + format_double(cfg.threshold));
    }
    if (cfg.rounds < 0) throw UsageError("--rounds must be >= 0");
    if (cfg.epochs < 1) throw UsageError("--epochs must be >= 1");
    if (cfg.workers < 1) throw UsageError("--workers must be >= 1");
    parse_cost_mode(cfg.cost);
    parse_variant(cfg.variant);
    return cfg;
  }

 private:
  void track(CLI::App* app, const std::string& name) { options_[name] = app->get_option(name); }
  bool set(const std::string& name) const {
    auto it = options_.find(name);
    return it != options_.end() && it->second->count() > 0;
  }

  RunConfig flags_;
  std::string config_path_;
  std::string blacklist_;
  bool exact_ = false;
  std::map<std::string, CLI::Option*> options_;
};

RoleBlacklist blacklist_of(const RunConfig& cfg) {
  return RoleBlacklist{{cfg.blacklist.begin(), cfg.blacklist.end()}, cfg.blacklist_prefix};
}

std::vector<Sentence> load_conll(const std::string& path, Provenance provenance) {
  try {
    return parse_conll(read_file(path), {provenance, std::nullopt});
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  } catch (const StructureError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<AlignmentSet> load_alignments(const std::string& path) {
  try {
    return parse_alignments(read_file(path));
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void require_same_length(size_t a, const std::string& a_path, size_t b, const std::string& b_path,
                         const char* unit_b) {
  if (a != b) {
    throw DataError(a_path + " has " + std::to_string(a) + " sentences but " + b_path + " has " +
                    std::to_string(b) + " " + unit_b);
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory " + dir + ": " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

// ---- project ---------------------------------------------------------------

struct ProjectArgs {
  std::string source, target, forward, backward, intersected, out;
  bool backward_reversed = false;
};

std::string density_report(const std::vector<double>& densities, size_t kept, double threshold) {
  constexpr int kBins = 10;
  std::vector<long> histogram(kBins, 0);
  for (double d : densities) histogram[std::min(kBins - 1, static_cast<int>(d * kBins))]++;
  const size_t total = densities.size();
  char line[128];
  std::snprintf(line, sizeof(line), "kept %zu of %zu pairs (%.2f%%) at threshold %s\n", kept, total,
                total ? 100.0 * static_cast<double>(kept) / static_cast<double>(total) : 0.0,
                format_double(threshold).c_str());
  std::string out = line;
  out += "density histogram\n";
  for (int b = 0; b < kBins; ++b) {
    std::snprintf(line, sizeof(line), "  [%.1f, %.1f%c %ld\n", b / 10.0, (b + 1) / 10.0,
                  b == kBins - 1 ? ']' : ')', histogram[b]);
    out += line;
  }
  return out;
}

void cmd_project(const ProjectArgs& args, const RunConfig& cfg) {
  const bool have_pair = !args.forward.empty() && !args.backward.empty();
  if (args.intersected.empty() && !have_pair) {
    throw UsageError("project needs --forward and --backward, or --intersected");
  }
  const auto source = load_conll(args.source, Provenance::kGold);
  const auto target = load_conll(args.target, Provenance::kGold);
  require_same_length(source.size(), args.source, target.size(), args.target, "sentences");

  std::vector<AlignmentSet> alignments;
  if (!args.intersected.empty()) {
    alignments = load_alignments(args.intersected);
    require_same_length(source.size(), args.source, alignments.size(), args.intersected, "lines");
  } else {
    const auto forward = load_alignments(args.forward);
    auto backward = load_alignments(args.backward);
    require_same_length(source.size(), args.source, forward.size(), args.forward, "lines");
    require_same_length(source.size(), args.source, backward.size(), args.backward, "lines");
    for (size_t i = 0; i < forward.size(); ++i) {
      alignments.push_back(
          intersect(forward[i], args.backward_reversed ? transpose(backward[i]) : backward[i]));
    }
  }

  std::vector<SentencePair> pairs;
  pairs.reserve(source.size());
  for (size_t i = 0; i < source.size(); ++i) {
    try {
      pairs.push_back(make_pair(source[i], target[i], alignments[i]));
    } catch (const DataError& e) {
      throw DataError("sentence pair " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  std::vector<double> densities(pairs.size());
  parallel_for(pairs.size(), cfg.workers,
               [&](size_t i) { densities[i] = projection_density(pairs[i]).value; });
  std::vector<size_t> kept;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (densities[i] >= cfg.threshold) kept.push_back(i);
  }

  const RoleBlacklist blacklist = blacklist_of(cfg);
  std::vector<ProjectionResult> results(kept.size());
  parallel_for(kept.size(), cfg.workers, [&](size_t k) {
    results[k] = project_pair(pairs[kept[k]], blacklist, static_cast<int>(k));
  });

  std::vector<Sentence> projected;
  std::vector<AlignmentSet> kept_alignments;
  std::vector<ProjectedInstance> instances;
  std::vector<double> completeness;
  for (size_t k = 0; k < kept.size(); ++k) {
    projected.push_back(results[k].target);
    kept_alignments.push_back(pairs[kept[k]].alignment);
    completeness.push_back(completeness_cost(results[k].target));
    instances.insert(instances.end(), results[k].instances.begin(), results[k].instances.end());
  }
  assign_costs(instances, parse_cost_mode(cfg.cost), completeness);

  ensure_dir(args.out);
  write_file(join(args.out, "projected.conll"), write_conll(projected));
  write_file(join(args.out, "projected.align"), write_alignments(kept_alignments));
  write_file(join(args.out, "costs.tsv"), write_cost_sidecar(instances));
  const std::string report = density_report(densities, kept.size(), cfg.threshold);
  write_file(join(args.out, "density.txt"), report);
  std::cout << report;
}

// ---- train / predict / evaluate -----------------------------------------------

struct TrainArgs {
  std::string input, model;
};

void cmd_train(const TrainArgs& args, const RunConfig& cfg) {
  const auto corpus = load_conll(args.input, Provenance::kGold);
  if (corpus.empty()) throw DataError(args.input + ": no sentences");
  TrainOptions options;
  options.epochs = cfg.epochs;
  options.seed = cfg.seed;
  const ModelBundle bundle = train_supervised(corpus, options);
  write_file(args.model, write_bundle(bundle));
  std::cout << "trained " << bundle.models.size() << " stages on " << corpus.size()
            << " sentences\n";
}

ModelBundle load_bundle(const std::string& path) {
  try {
    return parse_bundle(read_file(path));
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

struct PredictArgs {
  std::string model, input, output;
  bool gold_predicates = false;
};

void cmd_predict(const PredictArgs& args, const RunConfig& cfg) {
  const ModelBundle bundle = load_bundle(args.model);
  const auto corpus = load_conll(args.input, Provenance::kGold);
  const auto out = run_pipeline(bundle, corpus, args.gold_predicates, cfg.workers);
  const std::string text = write_conll(out);
  if (args.output.empty()) {
    std::cout << text;
  } else {
    write_file(args.output, text);
  }
}

struct EvaluateArgs {
  std::string gold, pred, csv;
  bool score_senses = false;
};

void cmd_evaluate(const EvaluateArgs& args, const RunConfig& cfg) {
  const auto gold = load_conll(args.gold, Provenance::kGold);
  const auto pred = load_conll(args.pred, Provenance::kPredicted);
  require_same_length(gold.size(), args.gold, pred.size(), args.pred, "sentences");
  ScoreOptions options;
  options.gold_predicate_mode = !args.score_senses;
  options.excluded = blacklist_of(cfg);
  const EvalReport report = score(gold, pred, options);
  std::cout << format_report(report);
  if (!args.csv.empty()) write_file(args.csv, report_csv(report));
}

// ---- bootstrap ---------------------------------------------------------------

struct BootstrapArgs {
  std::string projected, out, dev;
  std::vector<std::string> curves = {"VERB+A0", "VERB+A1"};
  bool warm_start = false;
};

void cmd_bootstrap(const BootstrapArgs& args, const RunConfig& cfg) {
  BootstrapConfig bc;
  bc.iterations = cfg.rounds;
  bc.variant = parse_variant(cfg.variant);
  bc.cost_mode = parse_cost_mode(cfg.cost);
  bc.epochs_per_round = cfg.epochs;
  bc.seed = cfg.seed;
  bc.workers = cfg.workers;
  bc.warm_start = args.warm_start;

  std::vector<DependencyKey> keys;
  for (const auto& k : args.curves) {
    try {
      keys.push_back(parse_dependency_key(k));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  const std::string conll_path = join(args.projected, "projected.conll");
  const std::string align_path = join(args.projected, "projected.align");
  const std::string costs_path = join(args.projected, "costs.tsv");
  const auto targets = load_conll(conll_path, Provenance::kProjected);
  const auto alignments = load_alignments(align_path);
  std::vector<ProjectedSentence> corpus;
  if (fs::exists(costs_path)) {
    std::vector<CostRow> rows;
    try {
      rows = parse_cost_sidecar(read_file(costs_path));
    } catch (const ParseError& e) {
      throw DataError(costs_path + ": " + e.what());
    }
    corpus = load_projected(targets, alignments, rows);
  } else if (bc.cost_mode != CostMode::kUniform) {
    throw DataError("cost mode " + cfg.cost + " needs the cost sidecar " + costs_path);
  } else {
    corpus = load_projected(targets, alignments);
  }

  std::vector<Sentence> dev;
  if (!args.dev.empty()) dev = load_conll(args.dev, Provenance::kGold);

  PartitionedData data = partition(corpus);
  if (data.labeled.empty()) throw DataError(conll_path + ": no labeled argument candidates");
  std::cout << "D_L " << data.labeled.size() << " candidates, D_U " << data.unlabeled.size()
            << " candidates, " << data.sentences.size() << " sentences\n";

  ensure_dir(args.out);
  std::string metrics = metrics_csv_header();
  std::vector<RoundReport> reports;
  const std::string stage_label = variant_name(bc.variant);
  bootstrap(std::move(data), bc, [&](int round, const ModelBundle& model) {
    write_file(join(args.out, "model_round" + std::to_string(round) + ".txt"), write_bundle(model));
    if (dev.empty()) return;
    EvalReport report = checkpoint_metrics(round, model, dev, cfg.workers);
    metrics += metrics_csv_rows(round, round == 0 ? "initial" : stage_label, report);
    std::cout << "round " << round << " F1 " << format_double(report.overall.f1) << "\n";
    reports.push_back({round, std::move(report)});
  });
  if (!dev.empty()) {
    write_file(join(args.out, "metrics.csv"), metrics);
    write_file(join(args.out, "curves.csv"), emit_iteration_curves(reports, keys));
  }
}

// ---- synth -------------------------------------------------------------------

struct SynthArgs {
  SynthConfig config;
  std::string out;
};

void cmd_synth(const SynthArgs& args) {
  try {
    args.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const SynthCorpus c = generate(args.config);
  ensure_dir(args.out);
  write_file(join(args.out, "source.conll"), write_conll(c.source));
  write_file(join(args.out, "target.conll"), write_conll(c.target));
  write_file(join(args.out, "forward.align"), write_alignments(c.forward));
  write_file(join(args.out, "backward.align"), write_alignments(c.backward));
  write_file(join(args.out, "gold_target.conll"), write_conll(c.gold_target));
  write_file(join(args.out, "heldout.conll"), write_conll(c.heldout));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-lingual SRL annotation projection and bootstrapped training"};
  app.require_subcommand(1);

  ProjectArgs project_args;
  SharedFlags project_flags;
  auto* project = app.add_subcommand("project", "project source SRL onto target sentences");
  project->add_option("--source", project_args.source, "source CoNLL corpus with SRL")->required();
  project->add_option("--target", project_args.target, "target CoNLL corpus")->required();
  project->add_option("--forward", project_args.forward, "source-target alignments");
  project->add_option("--backward", project_args.backward, "second direction alignments");
  project->add_flag("--backward-reversed", project_args.backward_reversed,
                    "backward file is in target-source orientation");
  project->add_option("--intersected", project_args.intersected,
                      "pre-intersected alignments, instead of --forward/--backward");
  project->add_option("--out", project_args.out, "output directory")->required();
  project_flags.add(project, true, false, false);

  TrainArgs train_args;
  SharedFlags train_flags;
  auto* train = app.add_subcommand("train", "supervised training on labeled CoNLL");
  train->add_option("--input", train_args.input, "labeled CoNLL corpus")->required();
  train->add_option("--model", train_args.model, "output model file")->required();
  train_flags.add(train, false, true, false);

  BootstrapArgs boot_args;
  SharedFlags boot_flags;
  auto* boot = app.add_subcommand("bootstrap", "self-training on a projected corpus");
  boot->add_option("--projected", boot_args.projected, "directory written by 'project'")
      ->required();
  boot->add_option("--out", boot_args.out, "output directory")->required();
  boot->add_option("--dev", boot_args.dev, "gold CoNLL scored after every round");
  boot->add_option("--curves", boot_args.curves, "dependencies for curves.csv, e.g. VERB+A0")
      ->delimiter(',');
  boot->add_flag("--warm-start", boot_args.warm_start, "start each round from the previous model");
  boot_flags.add(boot, false, true, true);

  PredictArgs predict_args;
  SharedFlags predict_flags;
  auto* predict = app.add_subcommand("predict", "label a CoNLL corpus");
  predict->add_option("--model", predict_args.model, "model file")->required();
  predict->add_option("--input", predict_args.input, "CoNLL corpus")->required();
  predict->add_option("--output", predict_args.output, "output CoNLL (default stdout)");
  predict->add_flag("--gold-predicates", predict_args.gold_predicates,
                    "keep the input's predicates and senses");
  predict_flags.add(predict, false, false, false);

  EvaluateArgs eval_args;
  SharedFlags eval_flags;
  auto* evaluate = app.add_subcommand("evaluate", "score predicted against gold SRL");
  evaluate->add_option("--gold", eval_args.gold, "gold CoNLL")->required();
  evaluate->add_option("--pred", eval_args.pred, "predicted CoNLL")->required();
  evaluate->add_option("--csv", eval_args.csv, "also write the report as CSV");
  evaluate->add_flag("--senses", eval_args.score_senses,
                     "score predicate senses too (no gold predicates)");
  eval_flags.add(evaluate, false, false, false);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "generate a synthetic parallel corpus");
  synth->add_option("--out", synth_args.out, "output directory")->required();
  synth->add_option("--pairs", synth_args.config.n_pairs, "sentence pairs");
  synth->add_option("--heldout", synth_args.config.n_heldout, "held-out target sentences");
  synth->add_option("--vocab", synth_args.config.vocab_size, "lemmas per word class");
  synth->add_option("--length", synth_args.config.mean_length, "mean sentence length");
  synth->add_option("--shift", synth_args.config.shift_rate, "translation shift rate");
  synth->add_option("--dropout", synth_args.config.alignment_dropout, "alignment dropout rate");
  synth->add_option("--noise", synth_args.config.label_noise, "source label noise rate");
  synth->add_option("--seed", synth_args.config.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*project) cmd_project(project_args, project_flags.resolve());
    if (*train) cmd_train(train_args, train_flags.resolve());
    if (*boot) cmd_bootstrap(boot_args, boot_flags.resolve());
    if (*predict) cmd_predict(predict_args, predict_flags.resolve());
    if (*evaluate) cmd_evaluate(eval_args, eval_flags.resolve());
    if (*synth) cmd_synth(synth_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return 0;
}
