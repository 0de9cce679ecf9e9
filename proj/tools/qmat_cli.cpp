// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// qmat: command-line front end for the q-matroid library.
//
//   qmat census fixtures/gf2_8_zdefined.json
//   qmat decompose fixtures/gf2_7_m.json --format json
//
// Exit codes: 0 ok, 1 bad input, 2 property violated (axiom failure,
// rank mismatch, no equivalence), 3 budget exceeded.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmat/qmat.hpp"

namespace {

using namespace qmat;

constexpr int kOk = 0, kInputError = 1, kViolated = 2, kOverBudget = 3;

struct RunConfig {
  std::vector<std::string> specs;
  std::string rows;  // rank: the subspace as JSON
  uint32_t shards = default_shards();
  std::optional<uint64_t> budget_ms;
  std::string format;
  uint64_t seed = 0;
  uint64_t samples = 2000;
  std::string strategy;
  bool no_cache = false;
  bool cache = false;
  bool header = false;
  bool timing = false;
  bool sampled = false;
};

[[noreturn]] void input_error(const std::string& msg) { throw Error(ErrorCode::kInvalidInput, msg); }

void print_error(const std::string& name, const std::string& msg) {
  std::cerr << json{{"error", name}, {"message", msg}}.dump() << "\n";
}

class Session {
 public:
  explicit Session(const RunConfig& cfg) : cfg_(cfg) {
    if (cfg.budget_ms) budget_ = Budget::milliseconds(*cfg.budget_ms);
    if (!cfg.strategy.empty()) opt_.strategy = parse_strategy(cfg.strategy);
    if (cfg.no_cache) cache_enabled_globally() = false;
  }

  Oracle load(size_t i) const { return load_spec(cfg_.specs.at(i), opt_); }

  // The first allowed format is the default.
  std::string format(std::initializer_list<const char*> allowed) const {
    if (cfg_.format.empty()) return *allowed.begin();
    for (const char* f : allowed) {
      if (cfg_.format == f) return f;
    }
    input_error("format '" + cfg_.format + "' is not available for this command");
  }

  const RunConfig& cfg() const { return cfg_; }
  Budget& budget() { return budget_; }

 private:
  const RunConfig& cfg_;
  Budget budget_;
  SpecOptions opt_;
};

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string rows_text(const Subspace& v) {
  return rows_json(v.ops(), v.rows()).dump();
}

int cmd_rank(Session& s) {
  auto m = s.load(0);
  json rows;
  try {
    rows = json::parse(s.cfg().rows);
  } catch (const json::parse_error& e) {
    input_error(std::string("--rows is not valid JSON: ") + e.what());
  }
  const Subspace v = parse_subspace(rows, m->q(), m->n());
  const int r = m->rank(v);
  if (s.format({"json", "text"}) == "text") {
    std::cout << r << "\n";
  } else {
    print_json(json{{"rows", rows_json(v.ops(), v.rows())}, {"dim", v.dim()}, {"rank", r}});
  }
  return kOk;
}

int cmd_zflats(Session& s) {
  const auto fmt = s.format({"json", "text", "dot"});
  auto fam = compute_zflats(s.load(0), s.cfg().shards, s.budget());
  if (fmt == "json") {
    print_json(family_json(fam));
  } else if (fmt == "dot") {
    std::cout << export_hasse(fam);
  } else {
    for (const auto& m : fam.members) std::cout << m.space.dim() << " " << m.rank << " " << rows_text(m.space) << "\n";
  }
  return kOk;
}

int cmd_hasse(Session& s) {
  const auto fmt = s.format({"dot", "json"});
  auto fam = compute_zflats(s.load(0), s.cfg().shards, s.budget());
  if (fmt == "dot") {
    std::cout << export_hasse(fam);
  } else {
    print_json(family_json(fam));
  }
  return kOk;
}

int cmd_census(Session& s) {
  const auto fmt = s.format({"csv", "json", "text"});
  CensusOptions opt;
  opt.shards = s.cfg().shards;
  opt.cache = s.cfg().cache && !s.cfg().no_cache;
  const auto rep = census(s.load(0), opt, s.budget());
  if (fmt == "csv") {
    if (s.cfg().header) std::cout << CensusReport::csv_header() << "\n";
    std::cout << rep.csv_row() << "\n";
  } else if (fmt == "json") {
    print_json(rep.to_json(s.cfg().timing));
  } else {
    const auto& c = rep.counts;
    std::cout << "subspaces    " << rep.total << "\n"
              << "flats        " << c.flats << "\n"
              << "cyclic       " << c.cyclic << "\n"
              << "cyclic_flats " << c.cyclic_flats << "\n"
              << "independent  " << c.independent << "\n"
              << "dependent    " << c.dependent << "\n"
              << "circuits     " << c.circuits << "\n"
              << "bases        " << c.bases << "\n";
  }
  return kOk;
}

int cmd_axioms(Session& s) {
  const auto fmt = s.format({"json", "text"});
  auto m = s.load(0);
  const auto mode = s.cfg().sampled ? AxiomMode::kSampled : AxiomMode::kExhaustive;
  const auto rep = axiom_check(*m, mode, s.budget(), s.cfg().seed, s.cfg().samples);
  if (fmt == "json") {
    json out{{"passed", rep.passed},
             {"mode", mode == AxiomMode::kSampled ? "sampled" : "exhaustive"},
             {"subspaces_checked", rep.subspaces_checked},
             {"covers_checked", rep.covers_checked},
             {"pairs_checked", rep.pairs_checked}};
    if (rep.violation) {
      json w = json::array();
      for (const auto& v : rep.violation->witnesses) w.push_back(rows_json(v.ops(), v.rows()));
      out["violation"] = json{{"axiom", rep.violation->axiom}, {"detail", rep.violation->detail}, {"witnesses", w}};
    }
    print_json(out);
  } else if (rep.passed) {
    std::cout << "ok " << rep.subspaces_checked << " subspaces, " << rep.pairs_checked << " pairs\n";
  } else {
    std::cout << rep.violation->axiom << " fails: " << rep.violation->detail << "\n";
    for (const auto& v : rep.violation->witnesses) std::cout << "  " << rows_text(v) << "\n";
  }
  return rep.passed ? kOk : kViolated;
}

int cmd_dual(Session& s) {
  s.format({"json"});
  print_json(dual(s.load(0))->to_spec());
  return kOk;
}

int cmd_dsum(Session& s) {
  s.format({"json"});
  if (s.cfg().specs.size() < 2) input_error("dsum needs at least two specs");
  std::vector<Oracle> parts;
  for (size_t i = 0; i < s.cfg().specs.size(); ++i) parts.push_back(s.load(i));
  const auto strategy = s.cfg().strategy.empty() ? SumStrategy::kZBased : parse_strategy(s.cfg().strategy);
  print_json(direct_sum(parts, strategy)->to_spec());
  return kOk;
}

int cmd_decompose(Session& s) {
  const auto fmt = s.format({"text", "json"});
  DecomposeOptions opt;
  opt.shards = s.cfg().shards;
  const auto rep = decompose(s.load(0), opt, s.budget());
  if (fmt == "text") {
    std::cout << rep.summary() << "\n";
  } else {
    print_json(rep.to_json());
  }
  return kOk;
}

int cmd_equiv(Session& s) {
  const auto fmt = s.format({"json", "text"});
  if (s.cfg().specs.size() != 2) input_error("equiv takes exactly two specs");
  auto a = s.load(0), b = s.load(1);
  const auto res = equivalence_search(a, b, s.budget(), s.cfg().shards);
  if (fmt == "json") {
    json out{{"outcome", res.outcome()}, {"candidates", res.candidates}};
    if (res.found) out["alpha"] = columns_to_matrix(a->ops(), res.columns);
    if (!res.note.empty()) out["note"] = res.note;
    print_json(out);
  } else {
    std::cout << res.outcome() << " after " << res.candidates << " candidates\n";
    if (res.found) {
      for (const auto& row : columns_to_matrix(a->ops(), res.columns)) std::cout << "  " << json(row).dump() << "\n";
    }
  }
  return res.found ? kOk : kViolated;
}

int cmd_verify_rep(Session& s) {
  const auto fmt = s.format({"json", "text"});
  if (s.cfg().specs.size() != 2) input_error("verify-rep takes a spec and a representation spec");
  const auto rep = verify_representation(s.load(0), s.load(1), s.cfg().shards, s.budget());
  if (fmt == "json") {
    print_json(rep.to_json());
  } else if (rep.passed) {
    std::cout << "ok " << rep.checked << " of " << rep.total << " subspaces\n";
  } else {
    std::cout << "mismatch at " << rows_text(*rep.mismatch) << ": rank " << rep.target_rank << " vs "
              << rep.rep_rank << "\n";
  }
  return rep.passed ? kOk : kViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations with q-matroids over finite fields."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--shards", cfg.shards, "Work shards (default: hardware threads)")->check(CLI::PositiveNumber);
    sub->add_option("--budget-ms", cfg.budget_ms, "Stop with exit 3 after this many milliseconds");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "dot", "text"}));
    sub->add_option("--seed", cfg.seed, "Seed for sampled checks");
    sub->add_option("--strategy", cfg.strategy, "Direct-sum rank strategy")->check(CLI::IsMember({"naive", "zbased"}));
    sub->add_flag("--no-cache", cfg.no_cache, "Disable rank memo caches");
  };
  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(Session&);
    int min_specs, max_specs;
  };
  const std::vector<Cmd> cmds = {
      {"rank", "Rank of one subspace (--rows)", cmd_rank, 1, 1},
      {"zflats", "The lattice of cyclic flats", cmd_zflats, 1, 1},
      {"census", "Count flats, cyclic spaces, circuits and so on over the whole lattice", cmd_census, 1, 1},
      {"axioms", "Check the rank axioms", cmd_axioms, 1, 1},
      {"dual", "Spec of the dual", cmd_dual, 1, 1},
      {"dsum", "Spec of a direct sum", cmd_dsum, 2, -1},
      {"decompose", "Split into trivial, free and irreducible parts", cmd_decompose, 1, 1},
      {"equiv", "Search for a linear equivalence", cmd_equiv, 2, 2},
      {"verify-rep", "Compare a matroid with a representation on every subspace", cmd_verify_rep, 2, 2},
      {"hasse", "Hasse diagram of the cyclic flats as DOT", cmd_hasse, 1, 1},
  };
  std::vector<std::pair<CLI::App*, const Cmd*>> subs;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("specs", cfg.specs, "Matroid spec files")->required()->expected(c.min_specs, c.max_specs);
    common(sub);
    const std::string name = c.name;
    if (name == "rank") sub->add_option("--rows", cfg.rows, "Subspace as JSON rows, e.g. [[1,0,1]]")->required();
    if (name == "census") {
      sub->add_flag("--header", cfg.header, "Print the CSV header line first");
      sub->add_flag("--timing", cfg.timing, "Include elapsed time and shards in JSON");
      sub->add_flag("--cache", cfg.cache, "Route ranks through the memo cache");
    }
    if (name == "axioms") {
      sub->add_flag("--sampled", cfg.sampled, "Random pairs instead of the whole lattice");
      sub->add_option("--samples", cfg.samples, "Pairs to draw with --sampled");
    }
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help
  } catch (const CLI::ParseError& e) {
    print_error("InvalidArguments", e.what());
    return kInputError;
  }

  try {
    for (const auto& [sub, cmd] : subs) {
      if (!sub->parsed()) continue;
      Session session(cfg);
      return cmd->run(session);
    }
  } catch (const Error& e) {
    const std::string name(error_name(e.code()));
    std::string msg = e.what();
    if (msg.rfind(name + ": ", 0) == 0) msg.erase(0, name.size() + 2);
    print_error(name, msg);
    return e.code() == ErrorCode::kBudgetExceeded ? kOverBudget : kInputError;
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return kInputError;
  }
  return kInputError;
}
