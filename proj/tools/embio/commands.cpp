// Copyright 2026 The embkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "embkit/domain_shift.hpp"
#include "embkit/emb_io.hpp"
#include "embkit/error.hpp"
#include "embkit/evalkit.hpp"
#include "embkit/hypersphere.hpp"
#include "embkit/identity_bank.hpp"
#include "embkit/parallel.hpp"
#include "embkit/random.hpp"
#include "embkit/run_config.hpp"
#include "embkit/sampler.hpp"
#include "embkit/text_format.hpp"

namespace embio {

namespace fs = std::filesystem;
using embkit::Error;
using embkit::ErrorCode;
using json = nlohmann::ordered_json;

namespace {

struct GlobalOptions {
  unsigned threads = embkit::default_thread_count();
  bool force = false;
  std::string config_path;
};

// Every output of one subcommand is staged here and only renamed into place
// once the whole command has succeeded.
class OutputSet {
 public:
  explicit OutputSet(bool force) : force_(force) {}

  std::size_t stage(const fs::path& path) {
    for (const auto& f : files_) {
      if (fs::absolute(f.path()) == fs::absolute(path)) {
        throw Error(ErrorCode::kInvalidArgument,
                    path.string() + ": named as two different outputs");
      }
    }
    files_.emplace_back(path, force_);
    return files_.size() - 1;
  }

  void write(std::size_t id, std::string_view contents) {
    files_[id].write(contents);
  }

  void commit_all() {
    try {
      for (auto& f : files_) {
        f.commit();
        committed_.push_back(f.path());
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& p : committed_) fs::remove(p, ec);
      throw;
    }
  }

 private:
  bool force_;
  std::vector<embkit::OutputFile> files_;
  std::vector<fs::path> committed_;
};

embkit::RunConfig resolve_config(const GlobalOptions& g) {
  embkit::RunConfig config;
  if (!g.config_path.empty()) config = embkit::load_run_config(g.config_path);
  embkit::apply_env_overrides(config, embkit::process_env());
  return config;
}

std::string report_text(const json& j) { return j.dump(2) + "\n"; }

fs::path sibling_with_extension(const fs::path& p, const std::string& ext) {
  fs::path out = p;
  out.replace_extension(ext);
  return out;
}

fs::path sidecar_path(const fs::path& delta) {
  fs::path out = delta;
  out += ".json";
  return out;
}

// Reads an embedding file together with its label manifest and checks the
// manifest against the row count.
std::vector<embkit::LabeledVector> load_labeled(const fs::path& emb,
                                                const fs::path& labels) {
  const embkit::RowMatrix rows = embkit::read_emb(emb);
  const auto entries = embkit::read_labels(labels);
  try {
    return embkit::join_labels(entries, rows);
  } catch (const Error& e) {
    throw e.with_context(labels.string());
  }
}

// --- estimate-shift --------------------------------------------------------

struct EstimateShiftArgs {
  std::string target, source, out;
  double strength = 1.0;
};

void cmd_estimate_shift(const GlobalOptions& g, const EstimateShiftArgs& a) {
  OutputSet outputs(g.force);
  const auto delta_out = outputs.stage(a.out);
  const auto side_out = outputs.stage(sidecar_path(a.out));

  const embkit::RowMatrix target = embkit::read_emb(a.target);
  const embkit::RowMatrix source = embkit::read_emb(a.source);
  embkit::ShiftVector shift;
  try {
    shift = embkit::estimate_shift(target, source);
  } catch (const Error& e) {
    throw e.with_context(a.target + " vs " + a.source);
  }

  embkit::RowMatrix delta;
  delta.append_row(shift.delta);
  outputs.write(delta_out, embkit::encode_emb(delta));
  json side;
  side["source_count"] = shift.source_count;
  side["target_count"] = shift.target_count;
  side["strength"] = a.strength;
  outputs.write(side_out, report_text(side));
  outputs.commit_all();
}

// --- apply-shift -----------------------------------------------------------

struct ApplyShiftArgs {
  std::string in, delta, out;
  std::optional<double> strength;
};

embkit::ShiftVector load_shift(const fs::path& delta_path, double* strength) {
  const embkit::RowMatrix delta = embkit::read_emb(delta_path);
  if (delta.rows() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                delta_path.string() + ": shift file must hold exactly 1 row, "
                                      "found " +
                    std::to_string(delta.rows()));
  }
  const fs::path side_path = sidecar_path(delta_path);
  json side;
  try {
    side = json::parse(embkit::read_file(side_path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, side_path.string() + ": " + e.what());
  }
  embkit::ShiftVector shift;
  auto d = delta.row(0);
  shift.delta.assign(d.begin(), d.end());
  try {
    shift.source_count = side.at("source_count").get<std::size_t>();
    shift.target_count = side.at("target_count").get<std::size_t>();
    *strength = side.value("strength", 1.0);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, side_path.string() + ": " + e.what());
  }
  if (shift.source_count < 1 || shift.target_count < 1) {
    throw Error(ErrorCode::kParseError,
                side_path.string() + ": population counts must be >= 1");
  }
  return shift;
}

void cmd_apply_shift(const GlobalOptions& g, const ApplyShiftArgs& a) {
  OutputSet outputs(g.force);
  const auto out_id = outputs.stage(a.out);
  const embkit::RunConfig config = resolve_config(g);

  double strength = 1.0;
  const embkit::ShiftVector shift = load_shift(a.delta, &strength);
  if (config.is_explicit("shift_strength")) strength = config.shift_strength;
  if (a.strength) strength = *a.strength;

  const embkit::RowMatrix in = embkit::read_emb(a.in);
  embkit::RowMatrix shifted;
  try {
    shifted = embkit::apply_shift(in, shift, strength, g.threads);
  } catch (const Error& e) {
    throw e.with_context(a.in);
  }
  outputs.write(out_id, embkit::encode_emb(shifted));
  outputs.commit_all();
}

// --- prototype -------------------------------------------------------------

struct PrototypeArgs {
  std::string in, labels, out, out_labels;
  std::size_t max_sources = 0;
};

void cmd_prototype(const GlobalOptions& g, const PrototypeArgs& a) {
  OutputSet outputs(g.force);
  const fs::path labels_path = a.out_labels.empty()
                                   ? sibling_with_extension(a.out, ".jsonl")
                                   : fs::path(a.out_labels);
  const auto emb_id = outputs.stage(a.out);
  const auto labels_id = outputs.stage(labels_path);

  const auto manifest = load_labeled(a.in, a.labels);
  const auto bank = embkit::build_bank(
      manifest, a.max_sources == 0 ? SIZE_MAX : a.max_sources);

  embkit::RowMatrix protos;
  std::vector<embkit::LabelEntry> entries;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    protos.append_row(bank[i].prototype.values());
    embkit::LabelEntry e{bank[i].label, i, json::object()};
    e.extra["sources"] = bank[i].sources.size();
    entries.push_back(std::move(e));
  }
  outputs.write(emb_id, embkit::encode_emb(protos));
  outputs.write(labels_id, embkit::format_labels(entries));
  outputs.commit_all();
}

// --- filter-ids ------------------------------------------------------------

struct FilterArgs {
  std::string prototypes, labels, out, scores_out;
  std::optional<std::size_t> top_k;
  std::string aggregate = "max";
};

embkit::SimilarityAggregate parse_aggregate(const std::string& name) {
  if (name == "max") return embkit::SimilarityAggregate::kMax;
  if (name == "mean") return embkit::SimilarityAggregate::kMean;
  throw Error(ErrorCode::kInvalidArgument,
              "--aggregate must be max or mean, got '" + name + "'");
}

void cmd_filter_ids(const GlobalOptions& g, const FilterArgs& a) {
  OutputSet outputs(g.force);
  const auto keep_id = outputs.stage(a.out);
  std::optional<std::size_t> scores_id;
  if (!a.scores_out.empty()) scores_id = outputs.stage(a.scores_out);

  const embkit::RunConfig config = resolve_config(g);
  const std::optional<std::size_t> top_k =
      a.top_k ? a.top_k : config.top_k_identities;
  if (!top_k) {
    throw Error(ErrorCode::kInvalidArgument,
                "--top-k or top_k_identities is required");
  }
  const auto aggregate = parse_aggregate(a.aggregate);

  const auto manifest = load_labeled(a.prototypes, a.labels);
  const auto bank = embkit::build_bank(manifest);
  const auto reports = embkit::score_identities(bank, aggregate, g.threads);
  // Validates k against the bank size.
  embkit::filter_top_k(reports, *top_k);

  outputs.write(keep_id, embkit::format_similarity_csv(
                             std::span(reports).first(*top_k)));
  if (scores_id) {
    outputs.write(*scores_id, embkit::format_similarity_csv(reports));
  }
  outputs.commit_all();
}

// --- sample ----------------------------------------------------------------

struct SampleArgs {
  std::string bank, labels, out_plan, out_emb, scores_out;
  std::string filter_order = "before";
  std::optional<std::uint64_t> seed;
};

void cmd_sample(const GlobalOptions& g, const SampleArgs& a) {
  OutputSet outputs(g.force);
  const auto plan_id = outputs.stage(a.out_plan);
  const auto emb_id = outputs.stage(a.out_emb);
  std::optional<std::size_t> scores_id;
  if (!a.scores_out.empty()) scores_id = outputs.stage(a.scores_out);

  embkit::RunConfig config = resolve_config(g);
  if (a.seed) config.global_seed = *a.seed;
  if (a.filter_order != "before" && a.filter_order != "after") {
    throw Error(ErrorCode::kInvalidArgument,
                "--filter-order must be before or after");
  }

  const auto manifest = load_labeled(a.bank, a.labels);
  std::vector<embkit::IdentityRecord> bank =
      embkit::build_bank(manifest, config.sources_per_id);

  std::optional<std::set<std::string>> keep;
  if (config.top_k_identities) {
    const auto reports = embkit::score_identities(
        bank, embkit::SimilarityAggregate::kMax, g.threads);
    const auto labels = embkit::filter_top_k(reports, *config.top_k_identities);
    keep.emplace(labels.begin(), labels.end());
    if (scores_id) {
      outputs.write(*scores_id, embkit::format_similarity_csv(reports));
    }
    if (a.filter_order == "before") {
      std::erase_if(bank, [&](const embkit::IdentityRecord& r) {
        return !keep->contains(r.label);
      });
    }
  } else if (scores_id) {
    throw Error(ErrorCode::kInvalidArgument,
                "--out-scores needs top_k_identities in the config");
  }

  const embkit::BetaParams params = config.beta_params();
  std::vector<embkit::SamplePlan> plans(bank.size());
  std::vector<std::vector<embkit::Embedding>> samples(bank.size());
  embkit::parallel_for(bank.size(), g.threads, [&](std::size_t i) {
    plans[i] = embkit::make_plan(bank[i], config.images_per_id, params,
                                 config.global_seed, config.sources_per_id);
    samples[i] = embkit::execute_plan(bank[i], plans[i]);
  });

  // Single collector: identities by label, entries by index.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    if (!keep || keep->contains(bank[i].label)) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return bank[x].label < bank[y].label;
  });

  embkit::RowMatrix out_rows(0, bank.empty() ? 0 : bank.front().prototype.dim());
  std::string plan_text;
  std::size_t row = 0;
  for (std::size_t i : order) {
    for (std::size_t j = 0; j < plans[i].entries.size(); ++j) {
      const embkit::PlanEntry& e = plans[i].entries[j];
      json line;
      line["label"] = plans[i].label;
      line["row"] = row++;
      line["index"] = e.index;
      line["direction"] = e.direction;
      line["lambda"] = e.lambda;
      line["seed"] = e.seed;
      line["decode_multiplicity"] = config.decode_multiplicity;
      plan_text += line.dump();
      plan_text += '\n';
      out_rows.append_row(samples[i][j].values());
    }
  }
  outputs.write(emb_id, embkit::encode_emb(out_rows));
  outputs.write(plan_id, plan_text);
  outputs.commit_all();
}

// --- eval-verify / eval-tar --------------------------------------------------

struct EvalArgs {
  std::string emb, pairs, report, roc_out;
  std::optional<std::size_t> folds;
  std::optional<double> far;
};

embkit::ScoreSet load_scores(const GlobalOptions& g, const EvalArgs& a) {
  const embkit::RowMatrix rows = embkit::read_emb(a.emb);
  const auto pairs = embkit::read_pairs(a.pairs);
  try {
    return embkit::score_pairs(rows, pairs, g.threads);
  } catch (const Error& e) {
    throw e.with_context(a.pairs);
  }
}

json score_counts(const embkit::ScoreSet& scores) {
  json j;
  j["pairs"] = scores.pairs.size();
  j["genuine"] = scores.genuine_count();
  j["impostor"] = scores.impostor_count();
  return j;
}

void cmd_eval_verify(const GlobalOptions& g, const EvalArgs& a) {
  OutputSet outputs(g.force);
  const auto report_id = outputs.stage(a.report);
  std::optional<std::size_t> roc_id;
  if (!a.roc_out.empty()) roc_id = outputs.stage(a.roc_out);

  const embkit::RunConfig config = resolve_config(g);
  const std::size_t folds = a.folds.value_or(config.folds);
  const embkit::ScoreSet scores = load_scores(g, a);
  const embkit::KFoldResult result = embkit::kfold_accuracy(scores, folds);

  json report = score_counts(scores);
  report["folds"] = folds;
  report["mean_accuracy"] = result.mean_accuracy;
  report["per_fold"] = result.per_fold;
  report["thresholds"] = result.thresholds;
  const bool grouped =
      !scores.pairs.empty() &&
      std::all_of(scores.pairs.begin(), scores.pairs.end(),
                  [](const embkit::ScoredPair& p) { return p.group; });
  if (grouped) {
    const embkit::GroupStats stats = embkit::group_accuracy(scores, folds);
    json groups;
    json per_group = json::object();
    for (const auto& [name, acc] : stats.per_group) per_group[name] = acc;
    groups["per_group"] = per_group;
    groups["mean"] = stats.mean;
    groups["std"] = stats.std;
    report["groups"] = groups;
  }
  outputs.write(report_id, report_text(report));
  if (roc_id) {
    outputs.write(*roc_id, embkit::format_roc_csv(embkit::roc(scores)));
  }
  outputs.commit_all();
}

void cmd_eval_tar(const GlobalOptions& g, const EvalArgs& a) {
  OutputSet outputs(g.force);
  const auto report_id = outputs.stage(a.report);
  std::optional<std::size_t> roc_id;
  if (!a.roc_out.empty()) roc_id = outputs.stage(a.roc_out);

  const embkit::RunConfig config = resolve_config(g);
  const double far = a.far.value_or(config.far_target);
  const embkit::ScoreSet scores = load_scores(g, a);
  const embkit::TarAtFar op = embkit::tar_at_far(scores, far);

  json report = score_counts(scores);
  report["far_target"] = far;
  report["tar"] = op.tar;
  report["threshold"] = op.threshold;
  report["achieved_far"] = op.achieved_far;
  outputs.write(report_id, report_text(report));
  if (roc_id) {
    outputs.write(*roc_id, embkit::format_roc_csv(embkit::roc(scores)));
  }
  outputs.commit_all();
}

// --- synth-clusters ----------------------------------------------------------

struct SynthArgs {
  embkit::ClusterSpec spec;
  std::string out;
};

void cmd_synth_clusters(const GlobalOptions& g, const SynthArgs& a) {
  OutputSet outputs(g.force);
  const auto emb_id = outputs.stage(a.out + ".emb");
  const auto labels_id = outputs.stage(a.out + ".jsonl");

  const auto data = embkit::gen_clusters(a.spec);
  embkit::RowMatrix rows;
  std::vector<embkit::LabelEntry> entries;
  for (std::size_t i = 0; i < data.size(); ++i) {
    rows.append_row(data[i].values);
    entries.push_back({data[i].label, i, json::object()});
  }
  outputs.write(emb_id, embkit::encode_emb(rows));
  outputs.write(labels_id, embkit::format_labels(entries));
  outputs.commit_all();
}

// --- make-pairs --------------------------------------------------------------

struct MakePairsArgs {
  std::string labels, out;
  std::size_t genuine = 0;
  std::size_t impostor = 0;
  std::size_t folds = embkit::kDefaultFolds;
  std::uint64_t seed = 0;
};

std::size_t draw_index(embkit::Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
}

void cmd_make_pairs(const GlobalOptions& g, const MakePairsArgs& a) {
  OutputSet outputs(g.force);
  const auto out_id = outputs.stage(a.out);

  const auto entries = embkit::read_labels(a.labels);
  std::map<std::string, std::vector<std::size_t>> rows_by_label;
  std::set<std::size_t> seen_rows;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!seen_rows.insert(entries[i].row).second) {
      throw Error(ErrorCode::kDuplicateRow,
                  a.labels + ": row " + std::to_string(entries[i].row) +
                      " listed twice (entry " + std::to_string(i + 1) + ")");
    }
    rows_by_label[entries[i].label].push_back(entries[i].row);
  }
  std::vector<const std::vector<std::size_t>*> multi;
  std::vector<const std::vector<std::size_t>*> all;
  for (const auto& [_, rows] : rows_by_label) {
    all.push_back(&rows);
    if (rows.size() >= 2) multi.push_back(&rows);
  }
  if (a.genuine > 0 && multi.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                a.labels + ": no label has two rows for genuine pairs");
  }
  if (a.impostor > 0 && all.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                a.labels + ": impostor pairs need at least two labels");
  }

  embkit::Rng rng(a.seed);
  std::vector<embkit::VerificationPair> pairs;
  for (std::size_t i = 0; i < a.genuine; ++i) {
    const auto& rows = *multi[draw_index(rng, multi.size())];
    const std::size_t x = draw_index(rng, rows.size());
    std::size_t y = draw_index(rng, rows.size() - 1);
    if (y >= x) ++y;
    pairs.push_back({rows[x], rows[y], true, {}, {}});
  }
  for (std::size_t i = 0; i < a.impostor; ++i) {
    const std::size_t x = draw_index(rng, all.size());
    std::size_t y = draw_index(rng, all.size() - 1);
    if (y >= x) ++y;
    const auto& rx = *all[x];
    const auto& ry = *all[y];
    pairs.push_back({rx[draw_index(rng, rx.size())],
                     ry[draw_index(rng, ry.size())], false, {}, {}});
  }
  for (std::size_t i = pairs.size(); i > 1; --i) {
    std::swap(pairs[i - 1], pairs[draw_index(rng, i)]);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pairs[i].fold = i * a.folds / pairs.size();
  }
  outputs.write(out_id, embkit::format_pairs(pairs));
  outputs.commit_all();
}

std::string single_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

void print_error(std::string_view code, const std::string& detail) {
  std::cerr << "embio: error: " << code << ": " << single_line(detail)
            << std::endl;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Embedding-space identity sampling, domain-shift correction "
               "and verification metrics over EMB1 files"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--threads", g.threads,
                 "Worker threads (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--force", g.force, "Overwrite existing outputs");
  app.add_option("--config", g.config_path,
                 "Run configuration (key = value per line)")
      ->check(CLI::ExistingFile);

  EstimateShiftArgs es;
  auto* c_es = app.add_subcommand(
      "estimate-shift", "Mean offset from a source to a target population");
  c_es->add_option("--target", es.target, "Target population (EMB1)")
      ->required();
  c_es->add_option("--source", es.source, "Source population (EMB1)")
      ->required();
  c_es->add_option("--out", es.out, "Shift vector output (EMB1, 1 row)")
      ->required();
  c_es->add_option("--strength", es.strength,
                   "Strength recorded in the sidecar");
  c_es->callback([&] { cmd_estimate_shift(g, es); });

  ApplyShiftArgs as;
  auto* c_as =
      app.add_subcommand("apply-shift", "Add a shift vector to every row");
  c_as->add_option("--in", as.in, "Input rows (EMB1)")->required();
  c_as->add_option("--delta", as.delta, "Shift vector from estimate-shift")
      ->required();
  c_as->add_option("--strength", as.strength, "Multiplier on the shift");
  c_as->add_option("--out", as.out, "Shifted rows (EMB1)")->required();
  c_as->callback([&] { cmd_apply_shift(g, as); });

  PrototypeArgs pa;
  auto* c_pa = app.add_subcommand(
      "prototype", "Per-label renormalized mean embedding");
  c_pa->add_option("--in", pa.in, "Embeddings (EMB1)")->required();
  c_pa->add_option("--labels", pa.labels, "Label manifest (JSONL)")
      ->required();
  c_pa->add_option("--out", pa.out, "Prototypes (EMB1)")->required();
  c_pa->add_option("--out-labels", pa.out_labels,
                   "Prototype manifest (default: --out with .jsonl)");
  c_pa->add_option("--max-sources", pa.max_sources,
                   "Use at most this many rows per label (0 = all)");
  c_pa->callback([&] { cmd_prototype(g, pa); });

  FilterArgs fa;
  auto* c_fa = app.add_subcommand(
      "filter-ids", "Keep the k identities least similar to any other");
  c_fa->add_option("--prototypes", fa.prototypes, "Prototypes (EMB1)")
      ->required();
  c_fa->add_option("--labels", fa.labels, "Label manifest (JSONL)")
      ->required();
  c_fa->add_option("--top-k", fa.top_k, "Number of identities to keep");
  c_fa->add_option("--out", fa.out, "Kept identities (CSV)")->required();
  c_fa->add_option("--out-scores", fa.scores_out,
                   "Every identity's score (CSV)");
  c_fa->add_option("--aggregate", fa.aggregate, "max (default) or mean");
  c_fa->callback([&] { cmd_filter_ids(g, fa); });

  SampleArgs sa;
  auto* c_sa = app.add_subcommand(
      "sample", "Geodesic samples around each identity prototype");
  c_sa->add_option("--bank", sa.bank, "Source embeddings (EMB1)")->required();
  c_sa->add_option("--labels", sa.labels, "Label manifest (JSONL)")
      ->required();
  c_sa->add_option("--out-plan", sa.out_plan, "Sample manifest (JSONL)")
      ->required();
  c_sa->add_option("--out-emb", sa.out_emb, "Sampled embeddings (EMB1)")
      ->required();
  c_sa->add_option("--out-scores", sa.scores_out,
                   "Identity scores when filtering (CSV)");
  c_sa->add_option("--filter-order", sa.filter_order,
                   "Filter identities before (default) or after sampling");
  c_sa->add_option("--seed", sa.seed, "Override global_seed");
  c_sa->callback([&] { cmd_sample(g, sa); });

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval-verify", "k-fold verification accuracy");
  c_ev->add_option("--emb", ev.emb, "Embeddings (EMB1)")->required();
  c_ev->add_option("--pairs", ev.pairs, "Pairs (CSV a,b,label[,group][,fold])")
      ->required();
  c_ev->add_option("--folds", ev.folds, "Fold count (default 10)");
  c_ev->add_option("--report", ev.report, "Metrics report (JSON)")
      ->required();
  c_ev->add_option("--roc", ev.roc_out, "ROC points (CSV)");
  c_ev->callback([&] { cmd_eval_verify(g, ev); });

  EvalArgs et;
  auto* c_et = app.add_subcommand("eval-tar", "TAR at a fixed FAR");
  c_et->add_option("--emb", et.emb, "Embeddings (EMB1)")->required();
  c_et->add_option("--pairs", et.pairs, "Pairs (CSV a,b,label[,group][,fold])")
      ->required();
  c_et->add_option("--far", et.far, "Target FAR (default 1e-4)");
  c_et->add_option("--report", et.report, "Metrics report (JSON)")
      ->required();
  c_et->add_option("--roc", et.roc_out, "ROC points (CSV)");
  c_et->callback([&] { cmd_eval_tar(g, et); });

  SynthArgs sy;
  auto* c_sy = app.add_subcommand(
      "synth-clusters", "Synthetic identity clusters on the unit sphere");
  c_sy->add_option("--ids", sy.spec.num_identities, "Identities")->required();
  c_sy->add_option("--dim", sy.spec.dim, "Dimension")->required();
  c_sy->add_option("--per-id", sy.spec.samples_per_id, "Samples per identity")
      ->required();
  c_sy->add_option("--concentration", sy.spec.concentration,
                   "Inverse noise scale")
      ->required();
  c_sy->add_option("--seed", sy.spec.seed, "Generator seed")->required();
  c_sy->add_option("--out", sy.out, "Output prefix (.emb and .jsonl)")
      ->required();
  c_sy->callback([&] { cmd_synth_clusters(g, sy); });

  MakePairsArgs mp;
  auto* c_mp = app.add_subcommand(
      "make-pairs", "Random genuine/impostor pairs from a label manifest");
  c_mp->add_option("--labels", mp.labels, "Label manifest (JSONL)")
      ->required();
  c_mp->add_option("--genuine", mp.genuine, "Genuine pair count")->required();
  c_mp->add_option("--impostor", mp.impostor, "Impostor pair count")
      ->required();
  c_mp->add_option("--folds", mp.folds, "Folds to assign (default 10)")
      ->check(CLI::Range(std::size_t{1}, SIZE_MAX));
  c_mp->add_option("--seed", mp.seed, "Generator seed")->required();
  c_mp->add_option("--out", mp.out, "Pairs (CSV)")->required();
  c_mp->callback([&] { cmd_make_pairs(g, mp); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return 2;
  } catch (const Error& e) {
    print_error(embkit::error_code_name(e.code()), e.detail());
    return 1;
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace embio
