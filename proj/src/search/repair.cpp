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

#include "divrepair/search/repair.hpp"

#include <algorithm>
#include <unordered_map>

#include "divrepair/common/errors.hpp"
#include "divrepair/invariants/profile.hpp"
#include "divrepair/lang/printer.hpp"
#include "json.hpp"

namespace divrepair::search {
namespace {

using nlohmann::json;

/// Memoizes fitness and profiles by patched source text. Lookups and inserts
/// happen on the calling thread; only the misses are evaluated in parallel.
class Evaluator {
 public:
  Evaluator(const harness::Classification& tests, const SearchConfig& config,
            const std::vector<inv::Invariant>& invariants, Jobs jobs)
      : tests_(tests), config_(config), invariants_(invariants), jobs_(jobs) {}

  std::vector<harness::FitnessResult> fitness(
      const std::vector<lang::Program>& programs,
      const std::vector<std::string>& sources) {
    std::vector<lang::Program> missing;
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < programs.size(); ++i) {
      if (fitness_.count(sources[i]) ||
          std::find(keys.begin(), keys.end(), sources[i]) != keys.end()) {
        continue;
      }
      missing.push_back(programs[i]);
      keys.push_back(sources[i]);
    }
    const auto fresh = harness::evaluate_population(
        missing, tests_.positives, tests_.negatives, config_.weights,
        config_.fuel, jobs_);
    for (std::size_t i = 0; i < keys.size(); ++i) fitness_.emplace(keys[i], fresh[i]);
    std::vector<harness::FitnessResult> out;
    for (const std::string& s : sources) out.push_back(fitness_.at(s));
    return out;
  }

  std::vector<inv::InvariantProfile> profiles(
      const std::vector<lang::Program>& programs,
      const std::vector<std::string>& sources) {
    std::vector<lang::Program> missing;
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < programs.size(); ++i) {
      if (profiles_.count(sources[i]) ||
          std::find(keys.begin(), keys.end(), sources[i]) != keys.end()) {
        continue;
      }
      missing.push_back(programs[i]);
      keys.push_back(sources[i]);
    }
    const auto fresh = inv::profile_population(missing, invariants_, tests_.positives,
                                               tests_.negatives, config_.fuel, jobs_);
    for (std::size_t i = 0; i < keys.size(); ++i) profiles_.emplace(keys[i], fresh[i]);
    std::vector<inv::InvariantProfile> out;
    for (const std::string& s : sources) out.push_back(profiles_.at(s));
    return out;
  }

 private:
  const harness::Classification& tests_;
  const SearchConfig& config_;
  const std::vector<inv::Invariant>& invariants_;
  Jobs jobs_;
  std::unordered_map<std::string, harness::FitnessResult> fitness_;
  std::unordered_map<std::string, inv::InvariantProfile> profiles_;
};

struct Generation {
  std::vector<Patch> patches;
  std::vector<lang::Program> programs;
  std::vector<std::string> sources;
  std::vector<harness::FitnessResult> fitness;
};

std::vector<std::string> ids_of(const harness::TestSuite& suite) {
  std::vector<std::string> ids;
  for (const auto& t : suite) ids.push_back(t.id);
  return ids;
}

json edits_to_json(const std::vector<Edit>& edits) {
  json arr = json::array();
  for (const Edit& e : edits) arr.push_back(e.to_string());
  return arr;
}

std::vector<Edit> edits_from_json(const json& arr) {
  std::vector<Edit> edits;
  for (const auto& e : arr) edits.push_back(Edit::parse(e.get<std::string>()));
  return edits;
}

json config_to_json(const SearchConfig& c) {
  return json{{"pop_size", c.pop_size},
              {"max_generations", c.max_generations},
              {"tournament_k", c.tournament_k},
              {"w_pos", c.weights.w_pos},
              {"w_neg", c.weights.w_neg},
              {"lambda", c.lambda},
              {"mutation_rate", c.mutation_rate},
              {"seed", c.seed},
              {"fuel", c.fuel},
              {"min_support", c.min_support}};
}

SearchConfig config_from_json(const json& j) {
  SearchConfig c;
  c.pop_size = j.at("pop_size").get<std::size_t>();
  c.max_generations = j.at("max_generations").get<std::size_t>();
  c.tournament_k = j.at("tournament_k").get<std::size_t>();
  c.weights.w_pos = j.at("w_pos").get<double>();
  c.weights.w_neg = j.at("w_neg").get<double>();
  c.lambda = j.at("lambda").get<double>();
  c.mutation_rate = j.at("mutation_rate").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.fuel = j.at("fuel").get<std::uint64_t>();
  c.min_support = j.at("min_support").get<std::size_t>();
  return c;
}

json candidate_to_json(const CandidateLog& c, bool with_diversity) {
  json j{{"edits", edits_to_json(c.edits)}, {"fitness", c.fitness}};
  if (with_diversity) {
    j["diversity"] = c.diversity ? json(*c.diversity) : json(nullptr);
    j["profile"] = c.profile ? json(*c.profile) : json(nullptr);
  }
  return j;
}

}  // namespace

std::string_view to_string(Technique t) {
  return t == Technique::kGenProg ? "genprog" : "divgp";
}

Technique parse_technique(std::string_view name) {
  if (name == "genprog") return Technique::kGenProg;
  if (name == "divgp") return Technique::kDivGP;
  throw Error("unknown technique '" + std::string(name) +
              "' (expected genprog or divgp)");
}

void SearchConfig::validate() const {
  if (pop_size < 2) throw Error("pop_size must be at least 2");
  if (tournament_k < 1) throw Error("tournament_k must be at least 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("lambda must lie in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw Error("mutation_rate must lie in [0, 1]");
  }
  if (fuel < 1) throw Error("fuel must be positive");
  if (min_support < 1) throw Error("min_support must be at least 1");
  harness::validate(weights);
}

std::vector<const PatchRecord*> RunRecord::search_patches() const {
  std::vector<const PatchRecord*> out;
  for (const PatchRecord& p : patches) {
    if (!p.discarded) out.push_back(&p);
  }
  return out;
}

bool passes_all(const lang::Program& program, const harness::TestSuite& suite,
                std::uint64_t fuel) {
  for (const auto& t : suite) {
    if (harness::run_test(program, t, fuel) != harness::TestResult::kPass) return false;
  }
  return true;
}

RunRecord repair(const BugInput& bug, const SearchConfig& config,
                 Technique technique, Jobs jobs) {
  config.validate();
  const harness::Classification tests =
      harness::classify_tests(bug.original, bug.whitebox, config.fuel);
  const FaultWeights weights =
      localize(bug.original, tests.positives, tests.negatives, config.fuel);
  const bool diverse = technique == Technique::kDivGP;
  std::vector<inv::Invariant> invariants;
  if (diverse) {
    invariants = inv::infer_invariants(bug.original, bug.whitebox,
                                       config.min_support, config.fuel);
  }

  RunRecord record;
  record.bug = bug.id;
  record.technique = technique;
  record.config = config;
  record.positives = ids_of(tests.positives);
  record.negatives = ids_of(tests.negatives);
  record.invariant_count = invariants.size();

  SelectionParams params;
  params.tournament_k = config.tournament_k;
  params.lambda = diverse ? config.lambda : 0.0;
  params.max_fitness = harness::max_fitness(tests.positives.size(),
                                            tests.negatives.size(), config.weights);
  params.max_diversity = 2.0 * static_cast<double>(invariants.size()) *
                         static_cast<double>(config.pop_size - 1);

  Evaluator evaluator(tests, config, invariants, jobs);
  SeededRng rng(config.seed);

  auto materialize = [&](std::vector<Patch> patches) {
    Generation g;
    g.patches = std::move(patches);
    for (const Patch& p : g.patches) {
      auto program = apply_edits(bug.original, p.edits);
      if (!program) throw Error("internal: bred an ill-formed patch");
      g.sources.push_back(lang::pretty_print(*program));
      g.programs.push_back(std::move(*program));
    }
    g.fitness = evaluator.fitness(g.programs, g.sources);
    return g;
  };

  auto log_and_collect = [&](const Generation& g, std::size_t generation) {
    GenerationLog log;
    log.generation = generation;
    for (std::size_t i = 0; i < g.patches.size(); ++i) {
      log.candidates.push_back({g.patches[i].edits, g.fitness[i].value, {}, {}});
      const bool repaired =
          g.fitness[i].positives_passed == tests.positives.size() &&
          g.fitness[i].negatives_passed == tests.negatives.size();
      if (!repaired) continue;
      PatchRecord rec;
      rec.id = std::string(to_string(technique)) + "-s" + std::to_string(config.seed) +
               "-g" + std::to_string(generation) + "-c" + std::to_string(i);
      rec.patch = g.patches[i];
      rec.patch.generation = static_cast<int>(generation);
      rec.discarded = generation == 0;
      rec.source = g.sources[i];
      record.patches.push_back(std::move(rec));
    }
    record.generations.push_back(std::move(log));
  };

  // Diversity of every member against the living population.
  auto diversity_of = [&](const Generation& g, GenerationLog& log) {
    std::vector<double> out(g.patches.size(), 0.0);
    if (!diverse) return out;
    const auto profiles = evaluator.profiles(g.programs, g.sources);
    const auto div = inv::population_diversity(profiles, jobs);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = static_cast<double>(div[i]);
      log.candidates[i].diversity = out[i];
      log.candidates[i].profile = profiles[i].chars;
    }
    return out;
  };

  Patch empty;
  empty.seed = config.seed;
  std::vector<Patch> initial;
  for (std::size_t i = 0; i < config.pop_size; ++i) {
    initial.push_back(mutate(empty, bug.original, weights, rng));
  }
  Generation current = materialize(std::move(initial));
  log_and_collect(current, 0);

  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    const auto diversity = diversity_of(current, record.generations.back());
    std::vector<Contestant> contestants;
    for (std::size_t i = 0; i < current.patches.size(); ++i) {
      contestants.push_back({current.fitness[i].value, diversity[i]});
    }

    std::vector<Patch> children;
    while (children.size() < config.pop_size) {
      const Patch& mom = current.patches[select(contestants, params, rng)];
      const Patch& dad = current.patches[select(contestants, params, rng)];
      auto [first, second] = crossover(mom, dad, rng);
      for (Patch* child : {&first, &second}) {
        if (children.size() == config.pop_size) break;
        bool mutate_child = config.mutation_rate >= 1.0;
        if (!mutate_child && config.mutation_rate > 0.0) {
          mutate_child = rng.uniform_real() < config.mutation_rate;
        }
        Patch next = mutate_child ? mutate(*child, bug.original, weights, rng) : *child;
        next.generation = static_cast<int>(gen);
        children.push_back(std::move(next));
      }
    }
    current = materialize(std::move(children));
    log_and_collect(current, gen);
  }
  diversity_of(current, record.generations.back());
  return record;
}

std::string serialize(const RunRecord& r) {
  const bool diverse = r.technique == Technique::kDivGP;
  json gens = json::array();
  for (const GenerationLog& g : r.generations) {
    json cands = json::array();
    for (const CandidateLog& c : g.candidates) cands.push_back(candidate_to_json(c, diverse));
    gens.push_back(json{{"generation", g.generation}, {"candidates", cands}});
  }
  json patches = json::array();
  for (const PatchRecord& p : r.patches) {
    patches.push_back(json{{"id", p.id},
                           {"edits", edits_to_json(p.patch.edits)},
                           {"generation", p.patch.generation},
                           {"origin", p.discarded ? "init" : "search"},
                           {"discarded", p.discarded},
                           {"source", p.source}});
  }
  json initial = json::parse(serialize_initial_population(r));
  json j{{"bug", r.bug},
         {"technique", std::string(to_string(r.technique))},
         {"seed", r.config.seed},
         {"config", config_to_json(r.config)},
         {"positives", r.positives},
         {"negatives", r.negatives},
         {"invariant_count", r.invariant_count},
         {"initial_population", initial},
         {"generations", gens},
         {"patches", patches}};
  return j.dump(2) + "\n";
}

std::string serialize_initial_population(const RunRecord& r) {
  json arr = json::array();
  if (!r.generations.empty()) {
    for (const CandidateLog& c : r.generations.front().candidates) {
      arr.push_back(candidate_to_json(c, /*with_diversity=*/false));
    }
  }
  return arr.dump(2) + "\n";
}

RunRecord deserialize_run(std::string_view json_text) {
  RunRecord r;
  try {
    const json j = json::parse(json_text);
    r.bug = j.at("bug").get<std::string>();
    r.technique = parse_technique(j.at("technique").get<std::string>());
    r.config = config_from_json(j.at("config"));
    r.positives = j.at("positives").get<std::vector<std::string>>();
    r.negatives = j.at("negatives").get<std::vector<std::string>>();
    r.invariant_count = j.at("invariant_count").get<std::size_t>();
    for (const auto& g : j.at("generations")) {
      GenerationLog log;
      log.generation = g.at("generation").get<std::size_t>();
      for (const auto& c : g.at("candidates")) {
        CandidateLog cl;
        cl.edits = edits_from_json(c.at("edits"));
        cl.fitness = c.at("fitness").get<double>();
        if (c.contains("diversity") && !c["diversity"].is_null()) {
          cl.diversity = c["diversity"].get<double>();
        }
        if (c.contains("profile") && !c["profile"].is_null()) {
          cl.profile = c["profile"].get<std::string>();
        }
        log.candidates.push_back(std::move(cl));
      }
      r.generations.push_back(std::move(log));
    }
    for (const auto& p : j.at("patches")) {
      PatchRecord rec;
      rec.id = p.at("id").get<std::string>();
      rec.patch.edits = edits_from_json(p.at("edits"));
      rec.patch.generation = p.at("generation").get<int>();
      rec.patch.seed = r.config.seed;
      rec.discarded = p.at("discarded").get<bool>();
      rec.source = p.at("source").get<std::string>();
      r.patches.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed run record: ") + e.what());
  }
  return r;
}

}  // namespace divrepair::search
