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

#include "divrepair/cli/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "divrepair/common/errors.hpp"

namespace divrepair::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string show(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw Error("config: bad value '" + text + "' for " + key);
  }
  return v;
}

struct Field {
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

template <typename T>
Field integer(std::string key, T RunConfig::*outer) {
  return {key, [outer](const RunConfig& c) { return std::to_string(c.*outer); },
          [key, outer](RunConfig& c, const std::string& v) {
            c.*outer = parse_number<T>(key, v);
          }};
}

template <typename T>
Field search_integer(std::string key, T search::SearchConfig::*inner) {
  return {key,
          [inner](const RunConfig& c) { return std::to_string(c.search.*inner); },
          [key, inner](RunConfig& c, const std::string& v) {
            c.search.*inner = parse_number<T>(key, v);
          }};
}

Field search_real(std::string key, double search::SearchConfig::*inner) {
  return {key, [inner](const RunConfig& c) { return show(c.search.*inner); },
          [key, inner](RunConfig& c, const std::string& v) {
            c.search.*inner = parse_number<double>(key, v);
          }};
}

Field weight(std::string key, double harness::FitnessWeights::*w) {
  return {key, [w](const RunConfig& c) { return show(c.search.weights.*w); },
          [key, w](RunConfig& c, const std::string& v) {
            c.search.weights.*w = parse_number<double>(key, v);
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> kFields = {
      {"technique",
       [](const RunConfig& c) { return std::string(search::to_string(c.technique)); },
       [](RunConfig& c, const std::string& v) {
         c.technique = search::parse_technique(v);
       }},
      {"bug", [](const RunConfig& c) { return c.bug; },
       [](RunConfig& c, const std::string& v) { c.bug = v; }},
      {"out", [](const RunConfig& c) { return c.out; },
       [](RunConfig& c, const std::string& v) { c.out = v; }},
      search_integer("seed", &search::SearchConfig::seed),
      search_integer("pop_size", &search::SearchConfig::pop_size),
      search_integer("max_generations", &search::SearchConfig::max_generations),
      search_integer("tournament_k", &search::SearchConfig::tournament_k),
      weight("w_pos", &harness::FitnessWeights::w_pos),
      weight("w_neg", &harness::FitnessWeights::w_neg),
      search_real("lambda", &search::SearchConfig::lambda),
      search_real("mutation_rate", &search::SearchConfig::mutation_rate),
      search_integer("fuel", &search::SearchConfig::fuel),
      search_integer("min_support", &search::SearchConfig::min_support),
      integer("testgen_budget", &RunConfig::testgen_budget),
  };
  return kFields;
}

}  // namespace

void RunConfig::validate() const {
  search.validate();
  if (testgen_budget < 1) throw Error("testgen_budget must be at least 1");
}

std::string save_config(const RunConfig& config) {
  std::string out = "# divrepair run configuration\n";
  for (const Field& f : fields()) out += f.key + " = " + f.get(config) + "\n";
  return out;
}

RunConfig load_config(std::string_view text, const RunConfig& base) {
  RunConfig c = base;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Field* field = nullptr;
    for (const Field& f : fields()) {
      if (f.key == key) field = &f;
    }
    if (!field) {
      throw Error("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw Error("config line " + std::to_string(line_no) + ": repeated key '" + key + "'");
    }
    field->set(c, value);
  }
  return c;
}

RunConfig load_config_file(const std::filesystem::path& path,
                           const RunConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return load_config(text.str(), base);
}

std::filesystem::path output_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("DIVREPAIR_OUT"); env && *env) return env;
  return "out";
}

}  // namespace divrepair::cli
