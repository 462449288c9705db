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

#include "divrepair/eval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "divrepair/common/errors.hpp"
#include "divrepair/common/rng.hpp"
#include "divrepair/eval/fisher.hpp"
#include "divrepair/invariants/profile.hpp"
#include "divrepair/lang/printer.hpp"
#include "divrepair/search/patch.hpp"

namespace divrepair::eval {
namespace {

using search::Technique;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Distinct sources of a patch set plus, per patch, its source index.
struct Grouping {
  std::vector<const lang::Program*> programs;
  std::vector<std::string> keys;
  std::vector<std::size_t> of;
  std::vector<std::size_t> count;
};

Grouping group(std::span<const EvalPatch> patches) {
  Grouping g;
  std::map<std::string, std::size_t> seen;
  for (const EvalPatch& p : patches) {
    const std::string text = lang::pretty_print(p.program);
    auto [it, fresh] = seen.emplace(text, g.programs.size());
    if (fresh) {
      g.programs.push_back(&p.program);
      g.keys.push_back(content_key(p.program));
      g.count.push_back(0);
    }
    g.of.push_back(it->second);
    ++g.count[it->second];
  }
  return g;
}

/// Member diversity from a distance between distinct sources: a patch's
/// copies are at distance zero from it, every other member contributes its
/// source's distance.
template <typename Dist>
std::vector<double> expand(const Grouping& g, Dist&& dist) {
  std::vector<double> per_source(g.programs.size(), 0.0);
  for (std::size_t u = 0; u < g.programs.size(); ++u) {
    for (std::size_t v = 0; v < g.programs.size(); ++v) {
      if (u != v) per_source[u] += static_cast<double>(g.count[v]) * dist(u, v);
    }
  }
  std::vector<double> out;
  out.reserve(g.of.size());
  for (std::size_t s : g.of) out.push_back(per_source[s]);
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

/// Whitespace-aligned text table; columns separated by two spaces.
std::string text_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      // Column widths count code points so a multibyte placeholder pads as one.
      std::size_t len = 0;
      for (unsigned char ch : row[i]) len += (ch & 0xC0) != 0x80;
      width[i] = std::max(width[i], len);
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) {
        std::size_t len = 0;
        for (unsigned char ch : row[i]) len += (ch & 0xC0) != 0x80;
        line.append(width[i] - len, ' ');
      }
    }
    out += line + "\n";
  }
  return out;
}

const std::vector<Technique> kTechniques = {Technique::kGenProg,
                                            Technique::kDivGP};
const std::vector<Metric> kMetrics = {Metric::kInvariant, Metric::kTestgen};

std::vector<std::string> bugs_of(std::span<const CorrectnessRow> c,
                                 std::span<const DiversityRow> d) {
  std::vector<std::string> bugs;
  for (const auto& r : c) bugs.push_back(r.bug);
  for (const auto& r : d) bugs.push_back(r.bug);
  std::sort(bugs.begin(), bugs.end());
  bugs.erase(std::unique(bugs.begin(), bugs.end()), bugs.end());
  return bugs;
}

const CorrectnessRow* find_row(std::span<const CorrectnessRow> rows,
                               const std::string& bug, Technique t) {
  for (const auto& r : rows) {
    if (r.bug == bug && r.technique == t) return &r;
  }
  return nullptr;
}

const DiversityRow* find_row(std::span<const DiversityRow> rows,
                             const std::string& bug, Technique t, Metric m) {
  for (const auto& r : rows) {
    if (r.bug == bug && r.technique == t && r.metric == m) return &r;
  }
  return nullptr;
}

}  // namespace

std::vector<EvalPatch> replay_patches(const search::RunRecord& record,
                                      const lang::Program& original,
                                      const harness::TestSuite& whitebox) {
  std::vector<EvalPatch> out;
  for (const search::PatchRecord* rec : record.search_patches()) {
    auto program = search::apply_edits(original, rec->patch.edits);
    if (!program) throw Error("patch " + rec->id + " no longer applies");
    if (!search::passes_all(*program, whitebox, record.config.fuel)) {
      throw Error("patch " + rec->id + " fails the white-box suite on replay");
    }
    out.push_back({rec->id, std::move(*program)});
  }
  return out;
}

std::size_t CorrectnessRow::correct() const {
  return static_cast<std::size_t>(
      std::count_if(patches.begin(), patches.end(),
                    [](const PatchVerdict& v) { return v.correct(); }));
}

CorrectnessRow evaluate_correctness(std::string bug, Technique technique,
                                    std::span<const EvalPatch> patches,
                                    const harness::TestSuite& blackbox,
                                    std::uint64_t fuel) {
  CorrectnessRow row{std::move(bug), technique, {}};
  for (const EvalPatch& p : patches) {
    PatchVerdict v{p.id, 0};
    for (const harness::TestCase& t : blackbox) {
      if (harness::run_test(p.program, t, fuel) != harness::TestResult::kPass) {
        ++v.failed_blackbox;
      }
    }
    row.patches.push_back(std::move(v));
  }
  return row;
}

std::string_view to_string(Metric m) {
  return m == Metric::kInvariant ? "invariant" : "testgen";
}

Metric parse_metric(std::string_view name) {
  if (name == "invariant") return Metric::kInvariant;
  if (name == "testgen") return Metric::kTestgen;
  throw Error("unknown metric '" + std::string(name) +
              "' (expected invariant or testgen)");
}

std::optional<double> DiversityRow::mean() const {
  if (values.empty()) return std::nullopt;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

std::string content_key(const lang::Program& program) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(lang::pretty_print(program))));
  return buf;
}

std::uint64_t pair_seed(std::uint64_t master, std::string_view bug,
                        std::string_view key_a, std::string_view key_b) {
  if (key_b < key_a) std::swap(key_a, key_b);
  return derive_seed(master, {"testgen-pair", bug, key_a, key_b});
}

DiversityRow evaluate_diversity(Technique technique,
                                std::span<const EvalPatch> patches,
                                Metric metric, const DiversityContext& ctx) {
  DiversityRow row{ctx.bug, technique, metric, {}, {}};
  for (const EvalPatch& p : patches) row.ids.push_back(p.id);
  if (patches.empty()) return row;
  const Grouping g = group(patches);

  if (metric == Metric::kInvariant) {
    if (!ctx.original || !ctx.whitebox) {
      throw Error("invariant diversity needs the original program and suite");
    }
    const auto tests =
        harness::classify_tests(*ctx.original, *ctx.whitebox, ctx.fuel);
    const auto invariants = inv::infer_invariants(*ctx.original, *ctx.whitebox,
                                                  ctx.min_support, ctx.fuel);
    std::vector<lang::Program> programs;
    for (const lang::Program* p : g.programs) programs.push_back(*p);
    const auto profiles =
        inv::profile_population(programs, invariants, tests.positives,
                                tests.negatives, ctx.fuel, ctx.jobs);
    row.values = expand(g, [&](std::size_t u, std::size_t v) {
      return static_cast<double>(inv::invariant_distance(profiles[u], profiles[v]));
    });
    return row;
  }

  // One task per unordered pair of distinct sources.
  const std::size_t n = g.programs.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<testgen::PairDistance> results(pairs.size());
  parallel_for(pairs.size(), ctx.jobs, [&](std::size_t k) {
    auto [i, j] = pairs[k];
    // Order the pair by key so the result does not depend on patch order.
    const bool flip = g.keys[j] < g.keys[i];
    const lang::Program& a = *g.programs[flip ? j : i];
    const lang::Program& b = *g.programs[flip ? i : j];
    results[k] = testgen::testgen_pair(
        a, b, ctx.testgen_budget,
        pair_seed(ctx.seed, ctx.bug, g.keys[i], g.keys[j]), ctx.fuel);
  });
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    dist[i * n + j] = dist[j * n + i] = results[k].distance;
  }
  if (ctx.suite_dir) {
    std::vector<PairSuite> suites;
    suites.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      std::string a = g.keys[i], b = g.keys[j];
      if (b < a) std::swap(a, b);
      suites.push_back({a + "-" + b, results[k].distance, results[k].differing,
                        std::move(results[k].merged)});
    }
    std::sort(suites.begin(), suites.end(),
              [](const PairSuite& x, const PairSuite& y) { return x.pair < y.pair; });
    const auto dir = *ctx.suite_dir / ctx.bug / std::string(search::to_string(technique));
    std::filesystem::create_directories(dir);
    write_pair_suites(dir / "suites.txt", suites);
  }
  row.values = expand(g, [&](std::size_t u, std::size_t v) { return dist[u * n + v]; });
  return row;
}

void write_pair_suites(const std::filesystem::path& path,
                       std::span<const PairSuite> pairs) {
  std::string text;
  for (const PairSuite& p : pairs) {
    char d[64];
    auto r = std::to_chars(d, d + sizeof d, p.distance);
    text += "## pair " + p.pair + " distance " + std::string(d, r.ptr) +
            " differing " + std::to_string(p.differing) + "\n";
    text += "# merged suite: " + std::to_string(p.inputs.size()) + " inputs\n";
    for (const auto& in : p.inputs) text += in + "\n";
  }
  write_text(path, text);
}

std::vector<PairSuite> read_pair_suites(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::vector<PairSuite> out;
  std::string line;
  auto bad = [&] { return Error("malformed pair suite file " + path.string()); };
  while (std::getline(in, line)) {
    PairSuite p;
    std::istringstream head(line);
    std::string hashes, word, distance;
    if (!(head >> hashes >> word >> p.pair >> word >> distance >> word >> p.differing) ||
        hashes != "##") {
      throw bad();
    }
    auto r = std::from_chars(distance.data(), distance.data() + distance.size(), p.distance);
    if (r.ec != std::errc()) throw bad();
    std::size_t n = 0;
    if (!std::getline(in, line) ||
        std::sscanf(line.c_str(), "# merged suite: %zu inputs", &n) != 1) {
      throw bad();
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::getline(in, line)) throw bad();
      p.inputs.push_back(line);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<FisherLine> fisher_lines(std::span<const CorrectnessRow> rows) {
  auto line_for = [&](std::string label, auto&& include) {
    FisherLine l;
    l.label = std::move(label);
    for (const auto& r : rows) {
      if (!include(r)) continue;
      if (r.technique == Technique::kGenProg) {
        l.genprog_correct += r.correct();
        l.genprog_total += r.total();
      } else {
        l.divgp_correct += r.correct();
        l.divgp_total += r.total();
      }
    }
    const auto f = fisher_exact_two_sided(
        l.genprog_correct, l.genprog_total - l.genprog_correct,
        l.divgp_correct, l.divgp_total - l.divgp_correct);
    l.p = f.p;
    l.degenerate = f.degenerate;
    return l;
  };
  std::vector<FisherLine> out;
  out.push_back(line_for("pooled", [](const CorrectnessRow&) { return true; }));
  for (const std::string& bug : bugs_of(rows, {})) {
    out.push_back(line_for(bug, [&](const CorrectnessRow& r) { return r.bug == bug; }));
  }
  return out;
}

std::string ratio(std::size_t x, std::size_t n) {
  return std::to_string(x) + "/" + std::to_string(n);
}

std::string format_mean(std::optional<double> mean) {
  return mean ? fixed(*mean, 6) : "—";
}

void render_reports(std::span<const CorrectnessRow> correctness,
                    std::span<const DiversityRow> diversity,
                    const std::filesystem::path& out) {
  const auto dir = out / "reports";
  std::filesystem::create_directories(dir);
  const auto bugs = bugs_of(correctness, diversity);

  // correctness.csv: one row per bug and technique, then totals.
  std::ostringstream csv;
  csv << "bug,technique,patches_total,patches_correct,patches_incorrect,"
         "failed_blackbox_histogram\n";
  std::map<Technique, std::pair<std::size_t, std::size_t>> totals;
  std::vector<std::vector<std::string>> table = {{"bug", "genprog", "divgp"}};
  for (const std::string& bug : bugs) {
    std::vector<std::string> cells = {bug};
    for (Technique t : kTechniques) {
      const CorrectnessRow* r = find_row(correctness, bug, t);
      const std::size_t total = r ? r->total() : 0;
      const std::size_t ok = r ? r->correct() : 0;
      // "failed:count" pairs, e.g. "0:12;1:3".
      std::string failed;
      if (r) {
        std::map<std::size_t, std::size_t> histogram;
        for (const auto& v : r->patches) ++histogram[v.failed_blackbox];
        for (auto [k, n] : histogram) {
          if (!failed.empty()) failed += ';';
          failed += std::to_string(k) + ":" + std::to_string(n);
        }
      }
      if (r) {
        csv << bug << ',' << to_string(t) << ',' << total << ',' << ok << ','
            << total - ok << ',' << failed << '\n';
      }
      totals[t].first += ok;
      totals[t].second += total;
      cells.push_back(ratio(ok, total));
    }
    table.push_back(std::move(cells));
  }
  std::vector<std::string> total_cells = {"total"};
  for (Technique t : kTechniques) {
    const auto [ok, total] = totals[t];
    csv << "TOTAL," << to_string(t) << ',' << total << ',' << ok << ','
        << total - ok << ",\n";
    total_cells.push_back(ratio(ok, total));
  }
  table.push_back(std::move(total_cells));
  write_text(dir / "correctness.csv", csv.str());

  // diversity.csv: mean per bug x technique x metric.
  std::ostringstream dcsv;
  dcsv << "bug,technique,metric,patches,mean_diversity\n";
  std::vector<std::vector<std::string>> dtable = {
      {"bug", "genprog/invariant", "divgp/invariant", "genprog/testgen",
       "divgp/testgen"}};
  for (const std::string& bug : bugs) {
    std::vector<std::string> cells = {bug};
    for (Metric m : kMetrics) {
      for (Technique t : kTechniques) {
        const DiversityRow* r = find_row(diversity, bug, t, m);
        if (r) {
          dcsv << bug << ',' << to_string(t) << ',' << to_string(m) << ','
               << r->values.size() << ',' << format_mean(r->mean()) << '\n';
        }
        cells.push_back(r ? format_mean(r->mean()) : "—");
      }
    }
    dtable.push_back(std::move(cells));
  }
  write_text(dir / "diversity.csv", dcsv.str());

  std::vector<std::vector<std::string>> ftable = {
      {"scope", "genprog", "divgp", "p", "verdict"}};
  for (const FisherLine& l : fisher_lines(correctness)) {
    std::string verdict = l.degenerate ? "degenerate (zero margin)"
                          : l.p > 0.05 ? "not significant at 0.05"
                                       : "significant at 0.05";
    ftable.push_back({l.label, ratio(l.genprog_correct, l.genprog_total),
                      ratio(l.divgp_correct, l.divgp_total), fixed(l.p, 6),
                      std::move(verdict)});
  }

  std::ostringstream md;
  md << "# Repair evaluation summary\n\n"
     << "## Correct patches (pass every black-box test)\n\n"
     << "```\n" << text_table(table) << "```\n\n"
     << "## Fisher exact test, correct vs incorrect by technique\n\n"
     << "Two-sided; tables as probable as or less probable than the "
        "observed one are summed.\n\n"
     << "```\n" << text_table(ftable) << "```\n\n"
     << "## Mean semantic diversity of patches\n\n"
     << "```\n" << text_table(dtable) << "```\n";
  write_text(dir / "summary.md", md.str());
}

}  // namespace divrepair::eval
