// Copyright 2026 The divrepair Authors
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

#include "divrepair/cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "divrepair/cli/config.hpp"
#include "divrepair/cli/corpus.hpp"
#include "divrepair/common/errors.hpp"
#include "divrepair/eval/fisher.hpp"
#include "divrepair/eval/report.hpp"
#include "divrepair/lang/interpreter.hpp"
#include "divrepair/lang/parser.hpp"
#include "json.hpp"

namespace divrepair::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using search::Technique;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::uint64_t parse_u64(const std::string& text) {
  std::uint64_t v = 0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw Error("expected a nonnegative integer, got '" + text + "'");
  }
  return v;
}

/// Options shared by the verbs; unset ones fall back to the config file.
struct Common {
  std::vector<std::string> bugs;
  std::string technique;
  std::optional<std::uint64_t> seed;
  std::string seeds;
  std::string config;
  std::string out;
  std::string corpus;
  std::string metric = "invariant";
  int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c, bool search_flags) {
  cmd->add_option("--bug", c.bugs, "Bug id under the corpus, or a bug directory (repeatable)");
  cmd->add_option("--out", c.out, "Output root (default: $DIVREPAIR_OUT, then ./out)");
  cmd->add_option("--corpus", c.corpus, "Corpus root (default: $DIVREPAIR_CORPUS, then ./corpus)");
  cmd->add_option("--config", c.config, "key = value configuration file");
  cmd->add_option("--jobs", c.jobs, "Worker threads for evaluation")->check(CLI::PositiveNumber);
  cmd->add_option("--technique", c.technique, "genprog, divgp or both");
  cmd->add_option("--seeds", c.seeds, "Inclusive seed range A..B");
  if (search_flags) {
    cmd->add_option("--seed", c.seed, "Single seed");
  }
}

RunConfig base_config(const Common& c) {
  RunConfig cfg;
  if (!c.config.empty()) cfg = load_config_file(c.config, cfg);
  if (!c.out.empty()) cfg.out = c.out;
  if (c.seed) cfg.search.seed = *c.seed;
  if (!c.technique.empty() && c.technique != "both") {
    cfg.technique = search::parse_technique(c.technique);
  }
  cfg.validate();
  return cfg;
}

fs::path corpus_root(const Common& c) {
  if (!c.corpus.empty()) return c.corpus;
  if (const char* env = std::getenv("DIVREPAIR_CORPUS"); env && *env) return env;
  return "corpus";
}

std::vector<fs::path> bug_dirs(const Common& c, const RunConfig& cfg) {
  std::vector<std::string> names = c.bugs;
  if (names.empty() && !cfg.bug.empty()) names.push_back(cfg.bug);
  if (names.empty()) return list_bundles(corpus_root(c));
  std::vector<fs::path> out;
  for (const auto& n : names) out.push_back(resolve_bug(n, corpus_root(c)));
  return out;
}

std::vector<Technique> techniques(const Common& c, const RunConfig& cfg,
                                  bool default_both) {
  if (c.technique == "both" || (c.technique.empty() && default_both)) {
    return {Technique::kGenProg, Technique::kDivGP};
  }
  return {cfg.technique};
}

std::vector<std::uint64_t> seed_list(const Common& c, const RunConfig& cfg) {
  if (!c.seeds.empty()) {
    auto [a, b] = parse_seed_range(c.seeds);
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = a; s <= b; ++s) out.push_back(s);
    return out;
  }
  return {cfg.search.seed};
}

/// Run records for one bug and technique: the requested seeds, or every
/// seed<N>.json present. Missing files are appended to `missing`.
std::vector<search::RunRecord> load_runs(const fs::path& root,
                                         const std::string& bug, Technique t,
                                         const Common& c,
                                         std::vector<std::string>& missing) {
  std::vector<fs::path> files;
  if (!c.seeds.empty() || c.seed) {
    RunConfig cfg;
    if (c.seed) cfg.search.seed = *c.seed;
    for (std::uint64_t s : seed_list(c, cfg)) files.push_back(run_path(root, bug, t, s));
  } else {
    const fs::path dir = run_path(root, bug, t, 0).parent_path();
    std::vector<std::pair<std::uint64_t, fs::path>> found;
    if (fs::is_directory(dir)) {
      for (const auto& e : fs::directory_iterator(dir)) {
        const std::string name = e.path().filename().string();
        if (name.rfind("seed", 0) != 0 || e.path().extension() != ".json") continue;
        const std::string num = name.substr(4, name.size() - 9);
        std::uint64_t s = 0;
        auto r = std::from_chars(num.data(), num.data() + num.size(), s);
        if (r.ec == std::errc() && r.ptr == num.data() + num.size()) {
          found.emplace_back(s, e.path());
        }
      }
    }
    std::sort(found.begin(), found.end());
    for (auto& f : found) files.push_back(f.second);
    if (files.empty()) missing.push_back(dir.string() + "/seed*.json");
  }
  std::vector<search::RunRecord> out;
  for (const auto& f : files) {
    if (!fs::exists(f)) {
      missing.push_back(f.string());
      continue;
    }
    out.push_back(search::deserialize_run(read_file(f)));
  }
  return out;
}

/// Post-initialization patches of every run, replayed on the bundle.
std::vector<eval::EvalPatch> collect_patches(const std::vector<search::RunRecord>& runs,
                                             const BugBundle& bundle) {
  std::vector<eval::EvalPatch> out;
  for (const auto& r : runs) {
    auto patches = eval::replay_patches(r, bundle.program, bundle.whitebox);
    std::move(patches.begin(), patches.end(), std::back_inserter(out));
  }
  return out;
}

json to_json(const eval::CorrectnessRow& r) {
  json patches = json::array();
  for (const auto& v : r.patches) {
    patches.push_back({{"id", v.id}, {"failed_blackbox", v.failed_blackbox}});
  }
  return {{"bug", r.bug}, {"technique", search::to_string(r.technique)},
          {"patches", patches}};
}

eval::CorrectnessRow correctness_from(const json& j) {
  eval::CorrectnessRow r;
  r.bug = j.at("bug").get<std::string>();
  r.technique = search::parse_technique(j.at("technique").get<std::string>());
  for (const auto& p : j.at("patches")) {
    r.patches.push_back({p.at("id").get<std::string>(),
                         p.at("failed_blackbox").get<std::size_t>()});
  }
  return r;
}

json to_json(const eval::DiversityRow& r) {
  return {{"bug", r.bug},
          {"technique", search::to_string(r.technique)},
          {"metric", eval::to_string(r.metric)},
          {"ids", r.ids},
          {"values", r.values}};
}

eval::DiversityRow diversity_from(const json& j) {
  eval::DiversityRow r;
  r.bug = j.at("bug").get<std::string>();
  r.technique = search::parse_technique(j.at("technique").get<std::string>());
  r.metric = eval::parse_metric(j.at("metric").get<std::string>());
  r.ids = j.at("ids").get<std::vector<std::string>>();
  r.values = j.at("values").get<std::vector<double>>();
  return r;
}

fs::path correctness_json(const fs::path& root) {
  return root / "reports" / "correctness.json";
}
fs::path diversity_json(const fs::path& root, eval::Metric m) {
  return root / "reports" / ("diversity_" + std::string(eval::to_string(m)) + ".json");
}

/// Re-renders the report files from whatever intermediate results exist.
void rerender(const fs::path& root) {
  std::vector<eval::CorrectnessRow> c;
  std::vector<eval::DiversityRow> d;
  if (fs::exists(correctness_json(root))) {
    for (const auto& j : json::parse(read_file(correctness_json(root)))) {
      c.push_back(correctness_from(j));
    }
  }
  for (eval::Metric m : {eval::Metric::kInvariant, eval::Metric::kTestgen}) {
    if (!fs::exists(diversity_json(root, m))) continue;
    for (const auto& j : json::parse(read_file(diversity_json(root, m)))) {
      d.push_back(diversity_from(j));
    }
  }
  eval::render_reports(c, d, root);
}

struct MissingRuns : Error {
  explicit MissingRuns(const std::vector<std::string>& paths)
      : Error(describe(paths)) {}
  static std::string describe(const std::vector<std::string>& paths) {
    std::string s = "missing run records:";
    for (const auto& p : paths) s += "\n  " + p;
    return s;
  }
};

int cmd_repair(const Common& c, std::ostream& out) {
  const RunConfig base = base_config(c);
  const fs::path root = output_root(base.out);
  bool any_patch = false;
  for (const fs::path& dir : bug_dirs(c, base)) {
    const BugBundle bundle = load_bundle(dir, base.search.fuel);
    for (Technique t : techniques(c, base, false)) {
      for (std::uint64_t seed : seed_list(c, base)) {
        search::SearchConfig sc = base.search;
        sc.seed = seed;
        const auto record = search::repair(to_input(bundle), sc, t, Jobs{c.jobs});
        const fs::path path = run_path(root, bundle.id, t, seed);
        write_file(path, search::serialize(record));
        const std::size_t found = record.search_patches().size();
        const std::size_t init = record.patches.size() - found;
        any_patch = any_patch || found > 0;
        out << bundle.id << ' ' << search::to_string(t) << " seed" << seed << ": "
            << found << " patches";
        if (init) out << " (+" << init << " discarded from initialization)";
        out << " -> " << path.string() << '\n';
      }
    }
  }
  return any_patch ? kExitOk : kExitNoPatch;
}

int cmd_evaluate(const Common& c, std::ostream& out) {
  const RunConfig base = base_config(c);
  const fs::path root = output_root(base.out);
  std::vector<std::string> missing;
  json rows = json::array();
  for (const fs::path& dir : bug_dirs(c, base)) {
    const BugBundle bundle = load_bundle(dir, base.search.fuel);
    for (Technique t : techniques(c, base, true)) {
      const auto runs = load_runs(root, bundle.id, t, c, missing);
      if (!missing.empty()) continue;
      const auto patches = collect_patches(runs, bundle);
      const auto row = eval::evaluate_correctness(bundle.id, t, patches,
                                                  bundle.blackbox, base.search.fuel);
      out << bundle.id << ' ' << search::to_string(t) << ": "
          << eval::ratio(row.correct(), row.total()) << " correct\n";
      rows.push_back(to_json(row));
    }
  }
  if (!missing.empty()) throw MissingRuns(missing);
  write_file(correctness_json(root), rows.dump(2) + "\n");
  rerender(root);
  return kExitOk;
}

int cmd_diversity(const Common& c, std::ostream& out) {
  const RunConfig base = base_config(c);
  const fs::path root = output_root(base.out);
  const eval::Metric metric = eval::parse_metric(c.metric);
  std::vector<std::string> missing;
  json rows = json::array();
  for (const fs::path& dir : bug_dirs(c, base)) {
    const BugBundle bundle = load_bundle(dir, base.search.fuel);
    eval::DiversityContext ctx;
    ctx.bug = bundle.id;
    ctx.original = &bundle.program;
    ctx.whitebox = &bundle.whitebox;
    ctx.min_support = base.search.min_support;
    ctx.testgen_budget = base.testgen_budget;
    ctx.seed = base.search.seed;
    ctx.fuel = base.search.fuel;
    ctx.jobs = Jobs{c.jobs};
    ctx.suite_dir = root / "diversity";
    for (Technique t : techniques(c, base, true)) {
      Common all_seeds = c;
      all_seeds.seed.reset();
      const auto runs = load_runs(root, bundle.id, t, all_seeds, missing);
      if (!missing.empty()) continue;
      const auto patches = collect_patches(runs, bundle);
      const auto row = eval::evaluate_diversity(t, patches, metric, ctx);
      out << bundle.id << ' ' << search::to_string(t) << ' '
          << eval::to_string(metric) << ": mean " << eval::format_mean(row.mean())
          << " over " << row.values.size() << " patches\n";
      rows.push_back(to_json(row));
    }
  }
  if (!missing.empty()) throw MissingRuns(missing);
  write_file(diversity_json(root, metric), rows.dump(2) + "\n");
  rerender(root);
  return kExitOk;
}

int cmd_stats(const Common& c, const std::vector<std::uint64_t>& counts,
              std::ostream& out) {
  auto verdict = [](const eval::FisherResult& f) {
    if (f.degenerate) return "degenerate table (zero margin), p = 1 by convention";
    return f.p > 0.05 ? "not significant at 0.05" : "significant at 0.05";
  };
  if (!counts.empty()) {
    if (counts.size() != 4) throw Error("--counts needs exactly four values a,b,c,d");
    const auto f = eval::fisher_exact_two_sided(counts[0], counts[1], counts[2], counts[3]);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", f.p);
    out << "p = " << buf << " (" << verdict(f) << ")\n";
    return kExitOk;
  }
  const fs::path root = output_root(base_config(c).out);
  if (!fs::exists(correctness_json(root))) {
    throw MissingRuns({correctness_json(root).string() + " (run `divrepair evaluate` first)"});
  }
  std::vector<eval::CorrectnessRow> rows;
  for (const auto& j : json::parse(read_file(correctness_json(root)))) {
    rows.push_back(correctness_from(j));
  }
  for (const auto& l : eval::fisher_lines(rows)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", l.p);
    out << l.label << ": genprog " << eval::ratio(l.genprog_correct, l.genprog_total)
        << ", divgp " << eval::ratio(l.divgp_correct, l.divgp_total) << ", p = " << buf
        << " (" << verdict({l.p, l.degenerate}) << ")\n";
  }
  return kExitOk;
}

int cmd_report(const Common& c, std::ostream& out) {
  cmd_evaluate(c, out);
  for (const char* m : {"invariant", "testgen"}) {
    Common with = c;
    with.metric = m;
    cmd_diversity(with, out);
  }
  out << "reports written to "
      << (output_root(base_config(c).out) / "reports").string() << '\n';
  return kExitOk;
}

int cmd_validate(const Common& c, std::ostream& out, std::ostream& err) {
  const RunConfig base = base_config(c);
  int bad = 0;
  for (const fs::path& dir : bug_dirs(c, base)) {
    try {
      const BugBundle b = load_bundle(dir, base.search.fuel);
      const auto cls = harness::classify_tests(b.program, b.whitebox, base.search.fuel);
      out << "ok    " << b.id << ": " << b.whitebox.size() << " white-box ("
          << cls.negatives.size() << " failing), " << b.blackbox.size()
          << " black-box\n";
    } catch (const std::exception& e) {
      ++bad;
      err << "FAIL  " << dir.string() << ": " << e.what() << '\n';
    }
  }
  return bad ? kExitError : kExitOk;
}

int cmd_run(const std::string& program, const std::optional<std::string>& input,
            std::uint64_t fuel, std::ostream& out, std::ostream& err) {
  const lang::Program p = lang::parse_file(program);
  std::string text;
  if (input) {
    text = *input;
  } else {
    std::ostringstream s;
    s << std::cin.rdbuf();
    text = s.str();
  }
  const auto outcome = lang::execute(p, text, fuel, false);
  out << outcome.stdout_text;
  if (outcome.status != lang::ExecStatus::kCompleted) {
    err << lang::to_string(outcome.status);
    if (!outcome.error.empty()) err << ": " << outcome.error;
    err << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto s = parse_u64(text);
    return {s, s};
  }
  const auto a = parse_u64(text.substr(0, dots));
  const auto b = parse_u64(text.substr(dots + 2));
  if (b < a) throw Error("empty seed range '" + text + "'");
  return {a, b};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"divrepair: genetic-programming program repair for a small language"};
  app.require_subcommand(1);
  Common c;

  auto* repair = app.add_subcommand("repair", "Search for patches and write run records");
  add_common(repair, c, true);

  auto* evaluate = app.add_subcommand("evaluate", "Check recorded patches against black-box tests");
  add_common(evaluate, c, true);

  auto* diversity = app.add_subcommand("diversity", "Semantic diversity of recorded patches");
  add_common(diversity, c, true);
  diversity->add_option("--metric", c.metric, "invariant or testgen");

  std::vector<std::uint64_t> counts;
  auto* stats = app.add_subcommand("stats", "Fisher exact test on correct/incorrect counts");
  add_common(stats, c, false);
  stats->add_option("--counts", counts, "a,b,c,d: genprog correct, incorrect, divgp correct, incorrect")
      ->delimiter(',');

  auto* report = app.add_subcommand("report", "evaluate plus both diversity metrics");
  add_common(report, c, true);

  auto* validate = app.add_subcommand("validate-corpus", "Check every bug bundle");
  add_common(validate, c, false);

  bool defaults = false;
  auto* config = app.add_subcommand("config", "Print a configuration");
  config->add_flag("--defaults", defaults, "Print every default value");
  config->add_option("--config", c.config, "Normalize and print this file");

  std::string program;
  std::optional<std::string> input;
  std::uint64_t fuel = lang::kDefaultFuel;
  auto* run = app.add_subcommand("run", "Execute a program (reads stdin unless --input)");
  run->add_option("program", program, "Path to a .mini file")->required();
  run->add_option("--input", input, "Input text");
  run->add_option("--fuel", fuel, "Step budget");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*repair) return cmd_repair(c, out);
    if (*evaluate) return cmd_evaluate(c, out);
    if (*diversity) return cmd_diversity(c, out);
    if (*stats) return cmd_stats(c, counts, out);
    if (*report) return cmd_report(c, out);
    if (*validate) return cmd_validate(c, out, err);
    if (*config) {
      RunConfig cfg;
      if (!c.config.empty()) cfg = load_config_file(c.config);
      if (!defaults && c.config.empty()) {
        err << "config: pass --defaults or --config FILE\n";
        return kExitError;
      }
      out << save_config(cfg);
      return kExitOk;
    }
    if (*run) return cmd_run(program, input, fuel, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace divrepair::cli
