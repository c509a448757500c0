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

#include "matchcore/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace matchcore {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) throw FormatError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

Bundle bundle_from_json(const Json& j, int length, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != length) {
    throw FormatError(std::string(what) + " must be an array of length " +
                      std::to_string(length));
  }
  Bundle x(length);
  for (int k = 0; k < length; ++k) {
    x(k) = int_from_json(j[static_cast<std::size_t>(k)], what);
    if (x(k) < 0) throw FormatError(std::string(what) + " has a negative entry");
  }
  return x;
}

Coalition coalition_from_json(const Json& j, int players) {
  if (!j.is_array() || j.empty()) {
    throw FormatError("coalition must be a nonempty array of players");
  }
  Coalition s = 0;
  for (const auto& member : j) {
    const int k = int_from_json(member, "player");
    if (k < 1 || k > players) {
      throw FormatError("player " + std::to_string(k) + " outside 1.." +
                        std::to_string(players));
    }
    const Coalition bit = Coalition{1} << (k - 1);
    if (s & bit) throw FormatError("player " + std::to_string(k) + " listed twice");
    s |= bit;
  }
  return s;
}

Json coalition_to_json(Coalition s) {
  Json out = Json::array();
  for (const int k : coalition_members(s)) out.push_back(k + 1);
  return out;
}

MultiUnitAuction auction_from_json(const Json& j, bool multiunit) {
  Bundle w;
  if (multiunit) {
    const Json& e = field(j, "endowment");
    if (!e.is_array() || e.empty()) throw FormatError("endowment must be a nonempty array");
    w = bundle_from_json(e, static_cast<int>(e.size()), "endowment");
    if (j.contains("items") && int_from_json(j.at("items"), "items") != w.size()) {
      throw FormatError("\"items\" disagrees with the endowment length");
    }
  } else {
    const int L = int_from_json(field(j, "items"), "items");
    if (L < 1) throw FormatError("\"items\" must be positive");
    w = unit_bundle(L);
  }
  const Box box(w);
  const Json& agents = field(j, "agents");
  if (!agents.is_array() || agents.empty()) {
    throw FormatError("\"agents\" must be a nonempty array");
  }
  std::vector<ValuationTable> tables;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const Json& agent = agents[i];
    std::string id = "agent" + std::to_string(i + 1);
    if (agent.contains("id")) {
      id = agent.at("id").is_string() ? agent.at("id").get<std::string>()
                                      : agent.at("id").dump();
    }
    std::vector<std::pair<Bundle, Rational>> entries;
    for (const auto& entry : field(agent, "values")) {
      Bundle x = bundle_from_json(field(entry, "bundle"), static_cast<int>(w.size()),
                                  "bundle");
      if (!box.contains(x)) {
        throw FormatError("agent " + id + ": bundle exceeds the endowment");
      }
      entries.emplace_back(std::move(x), rational_from_json(field(entry, "value")));
    }
    tables.push_back(ValuationTable::complete(id, box, entries));
  }
  return MultiUnitAuction(w, std::move(tables));
}

TuInstance tu_from_json(const Json& j, const ReadOptions& options) {
  const int n = int_from_json(field(j, "players"), "players");
  if (n < 1 || n > 20) throw FormatError("\"players\" must be in 1..20");
  std::vector<std::pair<Coalition, Rational>> worths;
  if (j.contains("worths")) {
    for (const auto& entry : j.at("worths")) {
      worths.emplace_back(coalition_from_json(field(entry, "coalition"), n),
                          rational_from_json(field(entry, "value")));
    }
  }
  std::vector<Coalition> prohibited;
  if (j.contains("prohibited")) {
    for (const auto& s : j.at("prohibited")) prohibited.push_back(coalition_from_json(s, n));
  }
  return TuInstance{TuGame::from_list(n, worths, options.allow_two_players),
                    std::move(prohibited)};
}

AssignmentGame assignment_from_json(const Json& j) {
  const Json& rows = field(j, "matrix");
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw FormatError("\"matrix\" must be a nonempty array of rows");
  }
  const auto cols = rows[0].size();
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      throw FormatError("matrix rows must have equal length");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          rational_from_json(rows[i][k]);
    }
  }
  return AssignmentGame(std::move(m));
}

const Json& unwrap(const Json& j, std::initializer_list<const char*> keys) {
  for (const char* verdict : {"exists", "nonempty"}) {
    if (j.is_object() && j.contains(verdict) && j.at(verdict) == false) {
      throw FormatError("candidate file is a negative verdict; there is nothing to verify");
    }
  }
  for (const char* key : keys) {
    if (j.is_object() && j.contains(key) && j.at(key).is_object()) return j.at(key);
  }
  return j;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(j.get<unsigned long long>())
                                  : Rational(j.get<long long>());
  }
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw FormatError(e.what());
    }
  }
  if (j.is_number_float()) {
    throw FormatError("value " + j.dump() +
                      " is a JSON float; write it as a decimal or fraction string");
  }
  throw FormatError("expected a number string, got " + j.dump());
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k).str());
  return out;
}

Json to_json(const Bundle& x) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < x.size(); ++k) out.push_back(x(k));
  return out;
}

Json to_json(const Allocation& X) {
  Json out = Json::array();
  for (const auto& x : X) out.push_back(to_json(x));
  return out;
}

const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kBundleAuction: return "bundle_auction";
    case InstanceKind::kMultiUnitAuction: return "multiunit_auction";
    case InstanceKind::kTuGame: return "tu_game";
    case InstanceKind::kAssignmentGame: return "assignment_game";
  }
  return "unknown";
}

Instance instance_from_json(const Json& j, const ReadOptions& options) {
  const Json& type = field(j, "type");
  if (!type.is_string()) throw FormatError("\"type\" must be a string");
  const auto t = type.get<std::string>();
  try {
    if (t == "bundle_auction") {
      return Instance{InstanceKind::kBundleAuction, auction_from_json(j, false), {}, {}};
    }
    if (t == "multiunit_auction") {
      return Instance{InstanceKind::kMultiUnitAuction, auction_from_json(j, true), {}, {}};
    }
    if (t == "tu_game") {
      return Instance{InstanceKind::kTuGame, {}, tu_from_json(j, options), {}};
    }
    if (t == "assignment_game") {
      return Instance{InstanceKind::kAssignmentGame, {}, {}, assignment_from_json(j)};
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(e.what());
  }
  throw FormatError("unknown instance type \"" + t + "\"");
}

Json auction_to_json(const MultiUnitAuction& a) {
  Json out;
  const bool bundle = a.is_bundle_auction();
  out["type"] = bundle ? "bundle_auction" : "multiunit_auction";
  out["items"] = a.num_items();
  if (!bundle) out["endowment"] = to_json(a.endowment());
  Json agents = Json::array();
  const Box& box = a.endowment_box();
  for (const auto& table : a.valuations()) {
    Json values = Json::array();
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
      values.push_back({{"bundle", to_json(box.point(idx))}, {"value", table.at(idx).str()}});
    }
    agents.push_back({{"id", table.id()}, {"values", std::move(values)}});
  }
  out["agents"] = std::move(agents);
  return out;
}

Json groups_to_json(const UnitExpansion& exp) {
  Json groups = Json::array();
  for (const auto& group : exp.groups) {
    Json g = Json::array();
    for (const int u : group) g.push_back(u + 1);
    groups.push_back(std::move(g));
  }
  return {{"groups", std::move(groups)}};
}

Json certificate_to_json(const EquilibriumCertificate& c) {
  Json surplus = Json::array();
  for (const auto& s : c.surplus) surplus.push_back(s.str());
  return {{"prices", to_json(c.prices)},
          {"allocation", to_json(c.allocation)},
          {"surplus", std::move(surplus)}};
}

Json verdict_to_json(const ExistenceVerdict& v) {
  Json out;
  out["exists"] = v.exists;
  out["lp_optimum"] = v.lp_optimum.str();
  out["V_e"] = v.value_at_endowment.str();
  out["weak_monotonicity"] = v.weak_monotonicity.holds;
  if (v.price_search_used) out["price_search_used"] = true;
  if (v.witness) out.update(certificate_to_json(*v.witness));
  if (v.refutation) {
    Json alpha = Json::array();
    for (const auto& [x, weight] : v.refutation->mixture) {
      alpha.push_back({{"x", to_json(x)}, {"weight", weight.str()}});
    }
    out["refutation"] = {{"alpha", std::move(alpha)}};
  }
  return out;
}

Json outcome_to_json(const MatchingOutcome& o) {
  Json partition = Json::array();
  for (const Coalition s : o.partition) partition.push_back(coalition_to_json(s));
  return {{"partition", std::move(partition)}, {"payoff", to_json(o.payoff)}};
}

Json core_verdict_to_json(const CoreVerdict& v) {
  Json out;
  out["nonempty"] = v.nonempty;
  if (v.outcome) out["outcome"] = outcome_to_json(*v.outcome);
  if (v.equilibrium) out["equilibrium"] = certificate_to_json(*v.equilibrium);
  if (v.existence) {
    Json evidence = verdict_to_json(*v.existence);
    for (const char* key : {"prices", "allocation", "surplus"}) evidence.erase(key);
    out["existence"] = std::move(evidence);
  }
  return out;
}

Json assignment_to_json(const AssignmentEquilibrium& eq) {
  Json out = certificate_to_json(eq.certificate);
  out["exists"] = true;
  out["branch"] = to_string(eq.branch);
  out["V_e"] = eq.value.str();
  if (eq.existence) out["lp_optimum"] = eq.existence->lp_optimum.str();
  return out;
}

std::pair<PriceVector, Allocation> candidate_from_json(const Json& j,
                                                       const MultiUnitAuction& a) {
  const Json& c = unwrap(j, {"certificate", "equilibrium"});
  const Json& prices = field(c, "prices");
  if (!prices.is_array()) throw FormatError("\"prices\" must be an array");
  if (static_cast<int>(prices.size()) != a.num_items()) {
    throw FormatError("price vector has " + std::to_string(prices.size()) +
                      " entries, expected " + std::to_string(a.num_items()));
  }
  PriceVector p(a.num_items());
  for (int k = 0; k < a.num_items(); ++k) p(k) = rational_from_json(prices[static_cast<std::size_t>(k)]);
  const Json& alloc = field(c, "allocation");
  if (!alloc.is_array() || static_cast<int>(alloc.size()) != a.num_agents()) {
    throw FormatError("allocation must list one bundle per agent (" +
                      std::to_string(a.num_agents()) + ")");
  }
  Allocation X;
  for (const auto& x : alloc) X.push_back(bundle_from_json(x, a.num_items(), "allocation bundle"));
  return {std::move(p), std::move(X)};
}

MatchingOutcome outcome_from_json(const Json& j, const TuGame& v) {
  const Json& o = unwrap(j, {"outcome"});
  MatchingOutcome out;
  for (const auto& s : field(o, "partition")) {
    out.partition.push_back(coalition_from_json(s, v.players()));
  }
  const Json& payoff = field(o, "payoff");
  if (!payoff.is_array() || static_cast<int>(payoff.size()) != v.players()) {
    throw FormatError("payoff must have one entry per player (" +
                      std::to_string(v.players()) + ")");
  }
  out.payoff = RationalVector(v.players());
  for (int k = 0; k < v.players(); ++k) {
    out.payoff(k) = rational_from_json(payoff[static_cast<std::size_t>(k)]);
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace matchcore
