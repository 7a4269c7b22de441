// tools/cli.cpp

// Copyright 2026  The mmclap Authors

// See ../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "mmclap/archive.hpp"
#include "mmclap/contrastive/checkpoint.hpp"
#include "mmclap/contrastive/trainer.hpp"
#include "mmclap/datapipe/augment.hpp"
#include "mmclap/datapipe/normalize.hpp"
#include "mmclap/datapipe/split.hpp"
#include "mmclap/datapipe/synth.hpp"
#include "mmclap/error.hpp"
#include "mmclap/eval/baseline.hpp"
#include "mmclap/eval/metrics.hpp"
#include "mmclap/eval/sign_test.hpp"
#include "mmclap/eval/table.hpp"
#include "mmclap/zeroshot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mmclap::cli {
namespace {

// Keys a config file may carry besides RunConfig fields.
const std::set<std::string> kPathKeys = {"manifest", "taxonomy", "augmentations", "prompts", "prompt_set",
                                         "checkpoint", "task", "out"};

struct Common {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> test_session;
  std::string target_mode;
  std::string backend;
  std::string out;
};

struct Request {
  RunConfig config;
  json paths = json::object();
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_file, "JSON config file");
  sub->add_option("--seed", c.seed, "root random seed");
  sub->add_option("--test-session", c.test_session, "held-out session id");
  sub->add_option("--target-mode", c.target_mode, "identity or label_aware");
  sub->add_option("--backend", c.backend, "toy or pretrained:<dir>");
  sub->add_option("--out", c.out, "output path");
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
}

// defaults < base (e.g. a checkpoint's config) < config file < flags
Request resolve(const Common& c, const RunConfig& base = {}) {
  Request r;
  r.config = base;
  if (!c.config_file.empty()) {
    json doc = read_json_file(c.config_file);
    if (!doc.is_object()) throw ValidationError("config", "must be a JSON object");
    json run = json::object();
    for (auto& [k, v] : doc.items()) (kPathKeys.count(k) ? r.paths[k] : run[k]) = v;
    r.config = config_from_json(run, r.config);
  }
  if (c.seed) r.config.seed = *c.seed;
  if (c.test_session) r.config.test_session = *c.test_session;
  if (!c.target_mode.empty()) r.config.target_mode = parse_target_mode(c.target_mode);
  if (!c.backend.empty()) r.config.backend = c.backend;
  if (!c.out.empty()) r.paths["out"] = c.out;
  const auto errors = validate(r.config);
  if (!errors.empty()) {
    const auto colon = errors.front().find(':');
    throw ValidationError(errors.front().substr(0, colon),
                          colon == std::string::npos ? "invalid" : errors.front().substr(colon + 2));
  }
  return r;
}

std::string path_of(const Request& r, const std::string& flag_value, const std::string& key, bool required = true) {
  if (!flag_value.empty()) return flag_value;
  if (r.paths.contains(key)) return r.paths[key].get<std::string>();
  if (required) throw ValidationError(key, "required (flag --" + key + " or config key)");
  return {};
}

json meta_line(const std::string& kind, const RunConfig& config, json extra = json::object()) {
  json meta = {{"kind", kind}, {"config_digest", config_digest(config)}, {"seed", config.seed}};
  for (auto& [k, v] : extra.items()) meta[k] = v;
  return {{"meta", meta}};
}

class JsonlWriter {
 public:
  explicit JsonlWriter(fs::path path) : path_(std::move(path)) {}
  void add(const json& line) { buf_ << line.dump() << "\n"; }
  void commit() {
    if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
    write_file_atomic(path_, buf_.str());
  }

 private:
  fs::path path_;
  std::ostringstream buf_;
};

struct JsonlFile {
  json meta = json::object();
  std::vector<json> rows;
};

JsonlFile read_jsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  JsonlFile f;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(n, path.string() + ": " + e.what());
    }
    if (doc.contains("meta")) f.meta = doc["meta"];
    else f.rows.push_back(std::move(doc));
  }
  return f;
}

datapipe::LabelingResult label_manifest(const std::vector<UtteranceRecord>& records,
                                        const std::vector<std::string>& tasks, const RunConfig& config,
                                        std::ostream& err) {
  auto labeled = datapipe::label_records(records, tasks, {config.normalization_scope, config.aggregation});
  for (const auto& w : labeled.warnings) err << "warning: " << w << "\n";
  return labeled;
}

// ---------------------------------------------------------------------------

int cmd_synth(const Common& c, const datapipe::SynthOptions& base, bool no_heldout, std::ostream& out) {
  const Request r = resolve(c);
  datapipe::SynthOptions o = base;
  if (c.seed) o.seed = *c.seed;
  o.sessions = r.config.sessions;
  o.frontend = r.config.toy;
  o.include_heldout = !no_heldout;
  const std::string dir = path_of(r, {}, "out");
  const auto ds = datapipe::synth_dataset(o);
  datapipe::write_synth_dataset(ds, dir);
  out << "wrote " << ds.records.size() << " utterances to " << dir << "\n";
  return kExitOk;
}

int cmd_augment(const Common& c, const std::string& taxonomy_flag, int n, bool stub, const std::string& write_taxonomy,
                std::ostream& out, std::ostream& err) {
  const Request r = resolve(c);
  auto taxonomy = load_taxonomy(path_of(r, taxonomy_flag, "taxonomy"));
  std::unique_ptr<datapipe::LlmClient> client =
      stub ? std::make_unique<datapipe::StubLlmClient>() : datapipe::make_llm_client_from_env();
  const auto records = datapipe::augment_taxonomy(taxonomy, *client, n);
  JsonlWriter w(path_of(r, {}, "out"));
  w.add(meta_line("augmentations", r.config,
                  {{"client", client->is_stub() ? "stub" : "http"}, {"taxonomy_digest", taxonomy_digest(taxonomy)}}));
  std::size_t partial = 0, rejected = 0;
  for (const auto& rec : records) {
    w.add(datapipe::to_json(rec));
    partial += rec.partial;
    rejected += rec.rejected.size();
  }
  w.commit();
  if (!write_taxonomy.empty()) {
    datapipe::apply_augmentations(taxonomy, records);
    save_taxonomy(write_taxonomy, taxonomy);
  }
  if (rejected) err << "warning: " << rejected << " paraphrases contained a prohibited word and were set aside\n";
  if (partial) err << "warning: " << partial << " descriptions received fewer paraphrases than requested\n";
  out << "wrote " << records.size() << " augmentation records\n";
  return kExitOk;
}

struct TrainPaths {
  std::string manifest, taxonomy, augmentations;
};

int cmd_train(const Common& c, const TrainPaths& p, std::ostream& out, std::ostream& err) {
  const Request r = resolve(c);
  const fs::path manifest = path_of(r, p.manifest, "manifest");
  std::string tax_path = path_of(r, p.taxonomy, "taxonomy", false);
  if (tax_path.empty()) tax_path = (manifest.parent_path() / "taxonomy.json").string();
  auto taxonomy = load_taxonomy(tax_path);
  if (const auto aug = path_of(r, p.augmentations, "augmentations", false); !aug.empty()) {
    datapipe::apply_augmentations(taxonomy, datapipe::load_augmentations(aug));
    const auto report = validate_taxonomy(taxonomy);
    if (!report.ok()) throw ValidationError("taxonomy", report.violations.front());
  }
  const fs::path dir = path_of(r, {}, "out");

  const auto records = load_manifest(manifest, r.config.sessions);
  const auto labeled = label_manifest(records, taxonomy.names(), r.config, err);
  const auto split = datapipe::session_split(labeled.items, r.config.test_session);

  std::mt19937_64 rng(component_seed(r.config.seed, "model"));
  contrastive::ClapModel model(r.config, taxonomy.names(), rng);
  const auto items = contrastive::prepare_items(split.train, model.audio_backend(), manifest.parent_path());
  contrastive::Trainer trainer(model, taxonomy, component_seed(r.config.seed, "trainer"));

  JsonlWriter log(dir / "train_log.jsonl");
  log.add(meta_line("train_log", r.config, {{"n_train", items.size()}, {"test_session", r.config.test_session}}));
  double last = 0.0;
  trainer.fit(items, [&](const contrastive::StepRecord& s) {
    json line = {{"step", s.step}, {"epoch", s.epoch}};
    line["loss"] = contrastive::to_json(s.loss);
    log.add(line);
    last = s.loss.total;
  });
  fs::create_directories(dir);
  contrastive::save_checkpoint(dir / "checkpoint.bin", model, taxonomy,
                               {{"n_train", items.size()}, {"steps", trainer.steps()}});
  save_taxonomy(dir / "taxonomy.json", taxonomy);
  log.commit();
  out << "trained " << trainer.steps() << " steps on " << items.size() << " utterances; final loss " << last << "\n";
  return kExitOk;
}

int cmd_train_baseline(const Common& c, const std::string& manifest_flag, const std::string& task_flag,
                       std::ostream& out, std::ostream& err) {
  const Request r = resolve(c);
  const fs::path manifest = path_of(r, manifest_flag, "manifest");
  const std::string task = path_of(r, task_flag, "task");
  const fs::path dir = path_of(r, {}, "out");
  const auto records = load_manifest(manifest, r.config.sessions);
  const auto labeled = label_manifest(records, {task}, r.config, err);
  const auto split = datapipe::session_split(labeled.items, r.config.test_session);

  std::mt19937_64 rng(0);
  auto frontend = encoders::make_backends(r.config, rng);
  const auto train = contrastive::prepare_items(split.train, *frontend.audio, manifest.parent_path());
  const auto test = contrastive::prepare_items(split.test, *frontend.audio, manifest.parent_path());

  eval::BaselineReport report;
  JsonlWriter log(dir / "train_log.jsonl");
  log.add(meta_line("baseline_log", r.config, {{"task", task}}));
  auto model = eval::train_baseline(train, task, r.config, &report,
                                    r.config.youden_split == ThresholdSplit::Test ? &test : nullptr,
                                    [&](int epoch, double loss) { log.add({{"epoch", epoch}, {"loss", loss}}); });
  for (const auto& w : report.youden.warnings) err << "warning: " << w << "\n";
  fs::create_directories(dir);
  eval::save_baseline(dir / "baseline.bin", model,
                      {{"initial_loss", report.initial_loss}, {"final_loss", report.final_loss}});
  log.commit();

  JsonlWriter preds(dir / "predictions.jsonl");
  preds.add(meta_line("supervised", r.config, {{"task", task}, {"threshold", model.threshold()}}));
  for (const auto& pr : eval::predict_baseline(model, test))
    preds.add({{"id", pr.id}, {"predicted", pr.predicted}, {"score", pr.score}});
  preds.commit();
  out << "baseline loss " << report.initial_loss << " -> " << report.final_loss << "; threshold "
      << model.threshold() << "\n";
  return kExitOk;
}

struct ZeroShotPaths {
  std::string checkpoint, manifest, prompts, prompt_set;
  bool all_sessions = false;
};

int cmd_zero_shot(const Common& c, const ZeroShotPaths& p, std::ostream& out, std::ostream& err) {
  // Read paths before the checkpoint so its config can serve as the base.
  const Request pre = resolve(c);
  fs::path ckpt = path_of(pre, p.checkpoint, "checkpoint");
  if (fs::is_directory(ckpt)) ckpt /= "checkpoint.bin";
  contrastive::CheckpointInfo info;
  const auto model = contrastive::load_checkpoint(ckpt, &info);
  const Request r = resolve(c, info.config);

  const fs::path manifest = path_of(r, p.manifest, "manifest");
  auto prompts = zeroshot::load_prompt_file(path_of(r, p.prompts, "prompts"));
  const std::string set_name = path_of(r, p.prompt_set, "prompt_set", false);
  const zeroshot::ClassPromptSet* set = prompts.sets.empty() ? nullptr : &prompts.sets.front();
  if (!set_name.empty()) {
    set = nullptr;
    for (const auto& s : prompts.sets)
      if (s.name == set_name) set = &s;
    if (!set) throw ValidationError("prompt_set", "no prompt set named '" + set_name + "'");
  }
  if (!set) throw ValidationError("prompts", "file holds no prompt sets");

  const auto records = load_manifest(manifest, r.config.sessions);
  std::vector<LabeledUtterance> items;
  for (const auto& rec : records)
    if (p.all_sessions || rec.session == r.config.test_session) items.push_back({rec.id, rec.audio_ref, rec.session, {}});
  if (items.empty()) throw ValidationError("test_session", "no utterances to classify");

  const auto results = zeroshot::classify_dataset(items, *set, model, manifest.parent_path());
  JsonlWriter w(path_of(r, {}, "out"));
  w.add(meta_line("zero-shot", info.config,
                  {{"task", prompts.task}, {"prompt_set", set->name}, {"prompts", set->texts},
                   {"test_session", p.all_sessions ? json() : json(r.config.test_session)}}));
  std::size_t failed = 0;
  for (const auto& d : results) {
    if (d.result) {
      w.add(zeroshot::to_json(d.id, *d.result));
    } else {
      w.add({{"id", d.id}, {"error", d.error}});
      ++failed;
      err << "warning: " << d.id << ": " << d.error << "\n";
    }
  }
  w.commit();
  out << "classified " << results.size() - failed << " of " << results.size() << " utterances with prompt set '"
      << set->name << "'\n";
  return kExitOk;
}

struct Scored {
  std::string name, method, prompt;
  std::map<std::string, int> predicted;
};

Scored load_predictions(const std::string& arg) {
  Scored s;
  std::string path = arg;
  if (const auto eq = arg.find('='); eq != std::string::npos) {
    s.name = arg.substr(0, eq);
    path = arg.substr(eq + 1);
  }
  const auto file = read_jsonl(path);
  for (const auto& row : file.rows)
    if (row.contains("predicted")) s.predicted[row.at("id").get<std::string>()] = row.at("predicted").get<int>();
  s.method = file.meta.value("kind", std::string("predictions"));
  s.prompt = file.meta.value("prompt_set", std::string());
  if (s.name.empty()) s.name = s.prompt.empty() ? s.method : s.prompt;
  return s;
}

// Items with a usable label that every prediction set covers, in manifest order.
std::pair<std::vector<std::string>, std::vector<int>> common_items(const datapipe::LabelingResult& labeled,
                                                                   const std::string& task,
                                                                   const std::vector<Scored>& sets) {
  std::vector<std::string> ids;
  std::vector<int> labels;
  for (const auto& item : labeled.items) {
    const Label l = item.label(task);
    if (!is_usable(l)) continue;
    bool covered = true;
    for (const auto& s : sets) covered = covered && s.predicted.count(item.id);
    if (!covered) continue;
    ids.push_back(item.id);
    labels.push_back(polarity(l));
  }
  return {ids, labels};
}

std::vector<int> gather(const Scored& s, const std::vector<std::string>& ids) {
  std::vector<int> out;
  for (const auto& id : ids) out.push_back(s.predicted.at(id));
  return out;
}

struct Scoring {
  std::vector<Scored> sets;
  std::vector<std::string> ids;
  std::vector<int> labels;
  std::string task;
};

Scoring score_sets(const Request& r, const std::string& manifest_flag, const std::string& task_flag,
                   const std::vector<std::string>& pred_args, std::ostream& err) {
  Scoring s;
  const fs::path manifest = path_of(r, manifest_flag, "manifest");
  s.task = path_of(r, task_flag, "task");
  if (pred_args.empty()) throw ValidationError("predictions", "at least one predictions file is required");
  for (const auto& arg : pred_args) s.sets.push_back(load_predictions(arg));
  const auto records = load_manifest(manifest, r.config.sessions);
  const auto labeled = label_manifest(records, {s.task}, r.config, err);
  std::tie(s.ids, s.labels) = common_items(labeled, s.task, s.sets);
  if (s.ids.empty()) throw ValidationError("predictions", "no predicted item has a usable label for '" + s.task + "'");
  return s;
}

eval::MetricReport report_for(const Scored& set, const Scoring& s, const eval::ChanceRate& chance) {
  auto m = eval::compute_metrics(gather(set, s.ids), s.labels);
  m.chance_wa = chance.wa;
  m.chance_ua = chance.ua;
  return m;
}

eval::ResultTable build_table(const Scoring& s, const eval::ChanceRate& chance) {
  eval::ResultTable table;
  table.task = s.task;
  table.groups = {"test"};
  eval::MetricReport random;
  random.wa = random.chance_wa = chance.wa;
  random.ua = random.chance_ua = chance.ua;
  random.n_items = s.labels.size();
  table.rows.push_back({"random", "", {random}});
  for (const auto& set : s.sets)
    table.rows.push_back({set.method, set.name == set.method ? "" : set.name, {report_for(set, s, chance)}});
  return table;
}

void write_json(const Request& r, const json& doc) {
  if (!r.paths.contains("out")) return;
  const fs::path o = r.paths["out"].get<std::string>();
  if (o.has_parent_path()) fs::create_directories(o.parent_path());
  write_file_atomic(o, doc.dump(2) + "\n");
}

int cmd_eval(const Common& c, const std::string& manifest_flag, const std::string& task_flag,
             const std::vector<std::string>& pred_args, std::ostream& out, std::ostream& err) {
  const Request r = resolve(c);
  const auto s = score_sets(r, manifest_flag, task_flag, pred_args, err);
  const auto chance = eval::chance_rate(s.labels, r.config.chance_trials, component_seed(r.config.seed, "chance"));
  out << eval::render_text(build_table(s, chance));
  json doc;
  if (s.sets.size() == 1) {
    doc = eval::to_json(report_for(s.sets.front(), s, chance));
  } else {
    doc = {{"reports", json::object()}};
    for (const auto& set : s.sets) doc["reports"][set.name] = eval::to_json(report_for(set, s, chance));
  }
  doc["task"] = s.task;
  write_json(r, doc);
  return kExitOk;
}

int cmd_compare(const Common& c, const std::string& manifest_flag, const std::string& task_flag,
                std::vector<std::string> pred_args, const std::string& pair_flag, std::ostream& out, std::ostream& err) {
  const Request r = resolve(c);
  if (pred_args.size() < 2) throw ValidationError("predictions", "compare needs two prediction files");
  const auto s = score_sets(r, manifest_flag, task_flag, pred_args, err);
  std::string a = s.sets[0].name, b = s.sets[1].name;
  if (!pair_flag.empty()) {
    const auto comma = pair_flag.find(',');
    if (comma == std::string::npos) throw ValidationError("pair", "expected NAME_A,NAME_B");
    a = pair_flag.substr(0, comma);
    b = pair_flag.substr(comma + 1);
  }
  auto find = [&](const std::string& n) -> const Scored& {
    for (const auto& set : s.sets)
      if (set.name == n) return set;
    throw ValidationError("pair", "no predictions named '" + n + "'");
  };
  const auto chance = eval::chance_rate(s.labels, r.config.chance_trials, component_seed(r.config.seed, "chance"));
  auto table = build_table(s, chance);
  table.sign_test = eval::sign_test(gather(find(a), s.ids), gather(find(b), s.ids), s.labels);
  table.sign_test_note = a + " vs " + b;
  out << eval::render_text(table);
  const json doc = {{"sign_test",
                     {{"a", a}, {"b", b}, {"n_items", s.ids.size()}, {"n_plus", table.sign_test->n_plus},
                      {"n_minus", table.sign_test->n_minus}, {"p_value", table.sign_test->p_value}}},
                    {"table", eval::to_json(table)}};
  write_json(r, doc);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mmclap: multi-task contrastive audio-text training and zero-shot evaluation", "mmclap"};
  app.require_subcommand(1);

  Common common;
  datapipe::SynthOptions synth;
  bool no_heldout = false;
  auto* s_synth = app.add_subcommand("synth", "generate a synthetic labeled corpus");
  add_common(s_synth, common);
  s_synth->add_option("--items,--n-items", synth.n_items);
  s_synth->add_option("--k-train", synth.k_train);
  s_synth->add_option("--feature-noise", synth.feature_noise);
  s_synth->add_option("--annotator-noise", synth.annotator_noise);
  s_synth->add_option("--annotator-bias", synth.annotator_bias);
  s_synth->add_option("--annotators", synth.annotators);
  s_synth->add_flag("--no-heldout", no_heldout, "omit the held-out task");

  std::string taxonomy, write_taxonomy;
  int n_paraphrases = 10;
  bool stub = false;
  auto* s_aug = app.add_subcommand("augment", "paraphrase emotion descriptions");
  add_common(s_aug, common);
  s_aug->add_option("--taxonomy", taxonomy);
  s_aug->add_option("-n,--n-paraphrases", n_paraphrases);
  s_aug->add_flag("--stub", stub, "use the offline paraphraser");
  s_aug->add_option("--write-taxonomy", write_taxonomy, "also write the augmented taxonomy here");

  TrainPaths tp;
  auto* s_train = app.add_subcommand("train", "train the contrastive model");
  add_common(s_train, common);
  s_train->add_option("--manifest", tp.manifest);
  s_train->add_option("--taxonomy", tp.taxonomy);
  s_train->add_option("--augmentations", tp.augmentations);

  std::string manifest, task;
  auto* s_base = app.add_subcommand("train-baseline", "train the supervised single-task baseline");
  add_common(s_base, common);
  s_base->add_option("--manifest", manifest);
  s_base->add_option("--task", task);

  ZeroShotPaths zp;
  auto* s_zs = app.add_subcommand("zero-shot", "classify utterances against text prompts");
  add_common(s_zs, common);
  s_zs->add_option("--checkpoint", zp.checkpoint);
  s_zs->add_option("--manifest", zp.manifest);
  s_zs->add_option("--prompts", zp.prompts);
  s_zs->add_option("--prompt-set", zp.prompt_set);
  s_zs->add_flag("--all-sessions", zp.all_sessions);

  std::vector<std::string> predictions;
  auto* s_eval = app.add_subcommand("eval", "score prediction files against manifest labels");
  add_common(s_eval, common);
  s_eval->add_option("--manifest", manifest);
  s_eval->add_option("--task", task);
  s_eval->add_option("--predictions", predictions, "[NAME=]FILE, repeatable");

  std::string pair;
  auto* s_cmp = app.add_subcommand("compare", "sign test and summary table over prediction files");
  add_common(s_cmp, common);
  s_cmp->add_option("--manifest", manifest);
  s_cmp->add_option("--task", task);
  s_cmp->add_option("--predictions", predictions, "[NAME=]FILE, repeatable");
  s_cmp->add_option("--pair", pair, "NAME_A,NAME_B for the sign test (default: first two)");

  std::vector<std::string> argv_store = {"mmclap"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (s_synth->parsed()) return cmd_synth(common, synth, no_heldout, out);
    if (s_aug->parsed()) return cmd_augment(common, taxonomy, n_paraphrases, stub, write_taxonomy, out, err);
    if (s_train->parsed()) return cmd_train(common, tp, out, err);
    if (s_base->parsed()) return cmd_train_baseline(common, manifest, task, out, err);
    if (s_zs->parsed()) return cmd_zero_shot(common, zp, out, err);
    if (s_eval->parsed()) return cmd_eval(common, manifest, task, predictions, out, err);
    if (s_cmp->parsed()) return cmd_compare(common, manifest, task, predictions, pair, out, err);
  } catch (const ValidationError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace mmclap::cli
