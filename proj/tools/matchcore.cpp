// Copyright 2026 The matchcore Authors
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

// Command-line front end: solve, verify, expand, selftest.
//
// Exit codes: 0 when an equilibrium or core outcome exists (solve), the
// candidate passes (verify) or every suite passes (selftest); 3 for the
// negative answer; 1 on any error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "matchcore/assignment.hpp"
#include "matchcore/io.hpp"
#include "matchcore/multiunit.hpp"
#include "matchcore/selftest.hpp"
#include "matchcore/tu_game.hpp"

namespace {

using namespace matchcore;

constexpr int kYes = 0;
constexpr int kError = 1;
constexpr int kNo = 3;

struct Options {
  std::string input;
  std::string output;
  std::string certificate;
  std::string groups;
  std::string value_table;
  std::string suite;
  bool oracle_check = false;
  bool allow_n2 = false;
  std::size_t budget_cells = kDefaultCellBudget;
  std::uint64_t seed = SelftestConfig{}.seed;
};

std::string bundle_text(const Bundle& x) {
  std::string out = "(";
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (j > 0) out += ",";
    out += std::to_string(x(j));
  }
  return out + ")";
}

std::string vector_text(const RationalVector& v) {
  std::string out = "(";
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (j > 0) out += ",";
    out += v(j).str();
  }
  return out + ")";
}

// JSON goes to --output when given, else to stdout; the text summary then
// moves to stderr so stdout stays parseable.
class Reporter {
 public:
  explicit Reporter(const Options& o) : output_(o.output) {}
  std::ostream& text() { return output_.empty() ? std::cerr : std::cout; }
  void emit(const Json& j) {
    if (output_.empty()) {
      std::cout << j.dump(2) << '\n';
    } else {
      write_json_file(output_, j);
    }
  }

 private:
  std::string output_;
};

void dump_table(const Options& o, const ValueFunction& vf) {
  if (o.value_table.empty()) return;
  std::ofstream out(o.value_table);
  if (!out) throw std::runtime_error("cannot write " + o.value_table);
  vf.write_csv(out);
}

Instance load(const Options& o) {
  return instance_from_json(read_json_file(o.input), ReadOptions{o.allow_n2});
}

int solve_auction(const Options& o, const Instance& inst, Reporter& rep) {
  const MultiUnitAuction& a = *inst.auction;
  const ValueFunction vf = build_value_function(a, o.budget_cells);
  dump_table(o, vf);
  const ExistenceVerdict v = decide_existence(a, vf);
  if (o.oracle_check) {
    if (v.witness &&
        !verify_equilibrium(a, v.witness->prices, v.witness->allocation,
                            DeviationMode::kUnconstrained)
             .holds) {
      throw std::logic_error("oracle check: witness fails unconstrained verification");
    }
    if (v.refutation && !is_valid_refutation(vf, *v.refutation)) {
      throw std::logic_error("oracle check: refutation is invalid");
    }
    if (!a.is_bundle_auction()) {
      const ExpandedAuction ex = expand(a, o.budget_cells);
      if (decide_existence(ex.auction).exists != v.exists) {
        throw std::logic_error("oracle check: unit expansion disagrees");
      }
    }
  }
  Json j = verdict_to_json(v);
  j["type"] = to_string(inst.kind);
  rep.emit(j);
  auto& out = rep.text();
  if (v.exists) {
    out << "equilibrium EXISTS; V(w)=" << v.value_at_endowment
        << "; prices " << vector_text(v.witness->prices) << '\n';
    if (v.price_search_used) {
      out << "note: weak monotonicity fails at w; prices came from a direct "
             "nonnegative price search\n";
    }
    return kYes;
  }
  if (v.lp_condition) {
    out << "equilibrium DOES NOT EXIST; LP optimum = V(w)=" << v.value_at_endowment
        << " but no nonnegative nonzero supporting prices\n";
  } else {
    out << "equilibrium DOES NOT EXIST; LP optimum " << v.lp_optimum
        << " > V(w)=" << v.value_at_endowment << '\n';
  }
  return kNo;
}

int solve_tu(const Options& o, const Instance& inst, Reporter& rep) {
  const TuInstance& tu = *inst.tu;
  const TuGame v = tu.normalized();
  if (!o.value_table.empty()) {
    dump_table(o, induced_value_function(induce_bundle_auction(v), o.budget_cells));
  }
  CoreVerdict verdict = decide_matching_core(v, o.budget_cells);
  if (verdict.outcome && !tu.prohibited.empty()) {
    verdict.outcome = normalize_prohibited(tu.game, tu.prohibited, *verdict.outcome);
  }
  if (o.oracle_check) {
    const CoreVerdict oracle = brute_force_matching_core(v);
    if (oracle.nonempty != verdict.nonempty) {
      throw std::logic_error("oracle check: brute-force core search disagrees");
    }
  }
  Json j = core_verdict_to_json(verdict);
  j["type"] = "tu_game";
  rep.emit(j);
  auto& out = rep.text();
  if (verdict.nonempty) {
    out << "matching core NONEMPTY; partition";
    for (const Coalition s : verdict.outcome->partition) out << ' ' << coalition_label(s);
    out << "; payoff " << vector_text(verdict.outcome->payoff) << '\n';
    return kYes;
  }
  const auto& e = *verdict.existence;
  if (e.lp_condition) {
    out << "matching core EMPTY; LP optimum = V(e)=" << e.value_at_endowment
        << " but no supporting price vector\n";
  } else {
    out << "matching core EMPTY; LP optimum " << e.lp_optimum
        << " > V(e)=" << e.value_at_endowment << '\n';
  }
  return kNo;
}

int solve_assignment(const Options& o, const Instance& inst, Reporter& rep) {
  const AssignmentGame& g = *inst.assignment;
  const AssignmentEquilibrium eq = existence_pathway(g, o.budget_cells);
  if (!o.value_table.empty() || o.oracle_check) {
    const BundleAuction auction = to_bundle_auction(g, o.budget_cells);
    const ValueFunction vf = build_value_function(auction.market(), o.budget_cells);
    dump_table(o, vf);
    if (o.oracle_check && !(vf.at(auction.market().endowment()) == eq.value)) {
      throw std::logic_error("oracle check: assignment LP disagrees with V(e)");
    }
  }
  rep.emit(assignment_to_json(eq));
  rep.text() << "equilibrium EXISTS (" << to_string(eq.branch) << " branch); V(e)="
             << eq.value << "; prices " << vector_text(eq.certificate.prices) << '\n';
  return kYes;
}

int cmd_solve(const Options& o) {
  const Instance inst = load(o);
  Reporter rep(o);
  switch (inst.kind) {
    case InstanceKind::kBundleAuction:
    case InstanceKind::kMultiUnitAuction:
      return solve_auction(o, inst, rep);
    case InstanceKind::kTuGame:
      return solve_tu(o, inst, rep);
    case InstanceKind::kAssignmentGame:
      return solve_assignment(o, inst, rep);
  }
  return kError;
}

int verify_market(const MultiUnitAuction& a, const Json& candidate) {
  const auto [p, X] = candidate_from_json(candidate, a);
  const VerificationReport report = verify_equilibrium(a, p, X, DeviationMode::kUnconstrained);
  if (report.holds) {
    std::cout << "PASS: market equilibrium at prices " << vector_text(p) << '\n';
    return kYes;
  }
  std::cout << "FAIL:";
  if (!report.price_vector) std::cout << " prices are not a nonnegative nonzero vector;";
  if (!report.feasible) std::cout << " allocation does not exactly distribute the endowment;";
  for (std::size_t i = 0; i < report.agents.size(); ++i) {
    const AgentCheck& c = report.agents[i];
    if (c.optimal) continue;
    std::cout << " agent " << a.valuation(static_cast<int>(i)).id() << " prefers "
              << bundle_text(*c.deviation) << " (profit " << c.deviation_profit
              << " > " << c.profit << ");";
  }
  std::cout << '\n';
  return kNo;
}

int cmd_verify(const Options& o) {
  const Instance inst = load(o);
  const Json candidate = read_json_file(o.certificate);
  switch (inst.kind) {
    case InstanceKind::kBundleAuction:
    case InstanceKind::kMultiUnitAuction:
      return verify_market(*inst.auction, candidate);
    case InstanceKind::kAssignmentGame:
      return verify_market(to_bundle_auction(*inst.assignment, o.budget_cells).market(),
                           candidate);
    case InstanceKind::kTuGame: {
      const TuGame v = inst.tu->normalized();
      const MatchingOutcome outcome = outcome_from_json(candidate, v);
      const CoreCheck check = is_in_matching_core(v, outcome);
      if (check.in_core) {
        std::cout << "PASS: outcome is in the matching core\n";
        return kYes;
      }
      const Coalition s = *check.violated;
      Rational paid;
      for (const int k : coalition_members(s)) paid += outcome.payoff(k);
      std::cout << "FAIL: coalition " << coalition_label(s) << " is worth " << v.worth(s)
                << " but its members receive " << paid << '\n';
      return kNo;
    }
  }
  return kError;
}

int cmd_expand(const Options& o) {
  const Instance inst = load(o);
  if (!inst.auction) throw FormatError("expand needs a bundle_auction or multiunit_auction");
  const ExpandedAuction ex = expand(*inst.auction, o.budget_cells);
  if (o.output.empty()) {
    std::cout << Json{{"auction", auction_to_json(ex.auction.market())},
                      {"groups", groups_to_json(ex.expansion)["groups"]}}
                     .dump(2)
              << '\n';
    return kYes;
  }
  write_json_file(o.output, auction_to_json(ex.auction.market()));
  write_json_file(o.groups.empty() ? o.output + ".groups.json" : o.groups,
                  groups_to_json(ex.expansion));
  std::cout << "expanded " << inst.auction->num_items() << " item types into "
            << ex.expansion.num_units << " unit items\n";
  return kYes;
}

int cmd_selftest(const Options& o) {
  SelftestConfig config;
  config.seed = o.seed;
  config.cell_budget = o.budget_cells;
  bool all = true;
  bool matched = false;
  for (const SuiteEntry& suite : selftest_suites()) {
    if (!o.suite.empty() && o.suite != suite.name) continue;
    matched = true;
    const auto start = std::chrono::steady_clock::now();
    const SuiteResult r = suite.run(config);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << " seed=" << r.seed << ' '
              << r.passed << '/' << r.trials << " (" << took.count() << " s)";
    for (const auto& note : r.notes) std::cout << "; " << note;
    std::cout << '\n';
    for (const auto& f : r.failures) std::cout << "  failure: " << f << '\n';
    all = all && r.ok();
  }
  if (!matched) throw std::invalid_argument("unknown suite \"" + o.suite + "\"");
  return all ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact market-equilibrium and matching-core solver"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--budget-cells", o.budget_cells,
                    "Maximum agents x lattice points held in memory")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--allow-n2", o.allow_n2, "Accept two-player TU games");
  };

  CLI::App* solve = app.add_subcommand("solve", "Decide existence and emit a certificate");
  solve->add_option("--input,input", o.input, "Instance JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--output", o.output, "Certificate JSON (default stdout)");
  solve->add_option("--dump-value-table", o.value_table, "Write V as CSV");
  solve->add_flag("--oracle-check", o.oracle_check, "Cross-check with brute-force oracles");
  add_common(solve);

  CLI::App* verify = app.add_subcommand("verify", "Check a candidate certificate or outcome");
  verify->add_option("--input,input", o.input, "Instance JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--certificate,certificate", o.certificate,
                     "Candidate {prices, allocation} or {partition, payoff}")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(verify);

  CLI::App* expand_cmd = app.add_subcommand("expand", "Unit expansion of a multi-unit auction");
  expand_cmd->add_option("--input,input", o.input, "Instance JSON")->required()->check(CLI::ExistingFile);
  expand_cmd->add_option("--output", o.output, "Expanded bundle auction JSON");
  expand_cmd->add_option("--groups", o.groups, "Group map JSON (default <output>.groups.json)");
  add_common(expand_cmd);

  CLI::App* selftest = app.add_subcommand("selftest", "Run the randomized oracle suites");
  selftest->add_option("--seed", o.seed, "Base seed");
  std::vector<std::string> names;
  for (const auto& s : selftest_suites()) names.emplace_back(s.name);
  selftest->add_option("--suite", o.suite, "Run one suite")->check(CLI::IsMember(names));
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kYes : kError;
  }

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (verify->parsed()) return cmd_verify(o);
    if (expand_cmd->parsed()) return cmd_expand(o);
    if (selftest->parsed()) return cmd_selftest(o);
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
  } catch (const std::length_error& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kError;
}
