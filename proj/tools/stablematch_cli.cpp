// Command-line front end: demand types, total unimodularity checks, the
// solve pipeline, the brute-force oracle, and technology-tree certificates.
// Exit codes: 0 positive verdict, 1 negative verdict, 2 operational error.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stablematch/demand_type.hpp"
#include "stablematch/io.hpp"
#include "stablematch/ip_round.hpp"
#include "stablematch/tech_tree.hpp"

using namespace stablematch;
using nlohmann::json;

namespace {

std::string worker_set_text(const NamedMarket& named, WorkerMask mask) {
  std::string s = "{";
  bool first = true;
  for (int w = 0; w < named.market.n_workers; ++w) {
    if (mask & (WorkerMask{1} << w)) {
      if (!first) s += ',';
      s += named.worker_names[w];
      first = false;
    }
  }
  s += '}';
  return s;
}

json demand_type_json(const DemandType& dt) {
  json out = json::array();
  for (const auto& d : dt.vectors) out.push_back(d);
  return out;
}

json witness_json(const NamedMarket& named, const DemandType& dt, const TuWitness& witness) {
  json rows = json::array();
  for (int r : witness.row_indices) rows.push_back(named.worker_names[r]);
  json cols = json::array();
  for (int c : witness.col_indices) cols.push_back(dt.vectors[c]);
  return json{{"rows", rows}, {"columns", cols}, {"determinant", witness.det}};
}

std::string witness_text(const NamedMarket& named, const DemandType& dt,
                         const TuWitness& witness) {
  std::string s = "rows {";
  for (std::size_t i = 0; i < witness.row_indices.size(); ++i) {
    if (i > 0) s += ',';
    s += named.worker_names[witness.row_indices[i]];
  }
  s += "} columns {";
  for (std::size_t i = 0; i < witness.col_indices.size(); ++i) {
    if (i > 0) s += ',';
    s += to_string(dt.vectors[witness.col_indices[i]]);
  }
  s += "} determinant " + std::to_string(witness.det);
  return s;
}

std::string rational_vector_text(const std::vector<Rational>& v) { return to_string(v); }

void print_matching_rows(std::ostream& os, const NamedMarket& named, const PseudoMatching& m) {
  for (int f = 0; f < named.market.m_firms; ++f) {
    os << "  " << named.firm_names[f] << ":";
    for (int w = 0; w < named.market.n_workers; ++w) {
      if (m.firm(f)[w] != 0)
        os << " " << named.worker_names[w] << "=" << to_string(m.firm(f)[w]);
    }
    os << "\n";
  }
  os << "  unmatched:";
  for (int w = 0; w < named.market.n_workers; ++w) {
    if (m.null_firm()[w] != 0)
      os << " " << named.worker_names[w] << "=" << to_string(m.null_firm()[w]);
  }
  os << "\n";
}

json matching_json(const NamedMarket& named, const PseudoMatching& m) {
  json assignment = json::object();
  for (int f = 0; f < named.market.m_firms; ++f) {
    json row = json::object();
    for (int w = 0; w < named.market.n_workers; ++w) {
      if (m.firm(f)[w] != 0) row[named.worker_names[w]] = to_string(m.firm(f)[w]);
    }
    assignment[named.firm_names[f]] = std::move(row);
  }
  json unmatched = json::object();
  for (int w = 0; w < named.market.n_workers; ++w) {
    if (m.null_firm()[w] != 0) unmatched[named.worker_names[w]] = to_string(m.null_firm()[w]);
  }
  return json{{"assignment", assignment}, {"unmatched", unmatched}};
}

json discrete_json(const NamedMarket& named, const DiscreteMatching& mu) {
  json out = json::object();
  for (int w = 0; w < named.market.n_workers; ++w) {
    int f = mu.assignment[w];
    if (f == kNullFirm) {
      out[named.worker_names[w]] = nullptr;
    } else {
      out[named.worker_names[w]] = named.firm_names[f];
    }
  }
  return out;
}

void print_discrete(std::ostream& os, const NamedMarket& named, const DiscreteMatching& mu) {
  for (int w = 0; w < named.market.n_workers; ++w) {
    int f = mu.assignment[w];
    os << "  " << named.worker_names[w] << " -> "
       << (f == kNullFirm ? std::string("unmatched") : named.firm_names[f]) << "\n";
  }
}

void print_int_matrix(std::ostream& os, const IntMatrix& m) {
  for (int r = 0; r < m.rows; ++r) {
    os << " ";
    for (int c = 0; c < m.cols; ++c) os << " " << std::setw(2) << m.at(r, c);
    os << "\n";
  }
}

json int_matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct DemandSummary {
  DemandType dt;
  bool tu = true;
  std::optional<TuWitness> witness;
  bool unimodular = true;
};

DemandSummary summarize_demand(const Market& market) {
  DemandSummary summary;
  summary.dt = market_demand_type(market);
  if (!summary.dt.vectors.empty()) {
    IntMatrix m = demand_type_matrix(summary.dt, market.n_workers);
    TuResult tu = is_totally_unimodular(m);
    summary.tu = tu.is_tu;
    summary.witness = tu.witness;
    summary.unimodular = is_unimodular(m);
  }
  return summary;
}

int cmd_demand_type(const std::string& market_path, bool as_json) {
  NamedMarket named = load_market_file(market_path);
  if (as_json) {
    json firms = json::object();
    for (int f = 0; f < named.market.m_firms; ++f) {
      firms[named.firm_names[f]] = demand_type_json(
          demand_type_fast(named.market.firm_prefs[f], named.market.n_workers));
    }
    json out{{"firms", firms}, {"market", demand_type_json(market_demand_type(named.market))}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (int f = 0; f < named.market.m_firms; ++f) {
    std::cout << "firm " << named.firm_names[f] << ": "
              << to_string(demand_type_fast(named.market.firm_prefs[f], named.market.n_workers))
              << "\n";
  }
  std::cout << "market: " << to_string(market_demand_type(named.market)) << "\n";
  return 0;
}

int cmd_check_tu(const std::string& market_path, bool as_json) {
  NamedMarket named = load_market_file(market_path);
  DemandSummary summary = summarize_demand(named.market);

  if (as_json) {
    json out{{"demand_type", demand_type_json(summary.dt)},
             {"totally_unimodular", summary.tu},
             {"unimodular", summary.unimodular}};
    if (summary.witness) out["witness"] = witness_json(named, summary.dt, *summary.witness);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "demand type: " << to_string(summary.dt) << "\n";
    std::cout << "totally unimodular: " << (summary.tu ? "yes" : "no") << "\n";
    if (summary.witness)
      std::cout << "witness: " << witness_text(named, summary.dt, *summary.witness) << "\n";
    std::cout << "unimodular: " << (summary.unimodular ? "yes" : "no") << "\n";
  }
  return summary.tu ? 0 : 1;
}

void print_system(std::ostream& os, const NamedMarket& named, const ConstraintSystem& sys) {
  os << "constraint system B (" << sys.B.rows << " x " << sys.B.cols << "), columns:";
  for (const auto& meta : sys.meta) {
    os << " ";
    if (meta.kind == ColumnKind::kNullUnit) {
      os << "null:" << named.worker_names[meta.worker];
    } else if (meta.kind == ColumnKind::kZeroColumn) {
      os << named.firm_names[meta.owner] << ":slack";
    } else {
      os << named.firm_names[meta.owner] << ":"
         << worker_set_text(named, named.market.firm_prefs[meta.owner].acceptable[meta.acceptable_index]);
    }
  }
  os << "\n";
  print_int_matrix(os, sys.B);
  os << "z_hat: " << rational_vector_text(sys.z_hat) << "\n";
}

json system_json(const NamedMarket& named, const ConstraintSystem& sys) {
  json cols = json::array();
  for (const auto& meta : sys.meta) {
    if (meta.kind == ColumnKind::kNullUnit) {
      cols.push_back(json{{"kind", "null_unit"}, {"worker", named.worker_names[meta.worker]}});
    } else if (meta.kind == ColumnKind::kZeroColumn) {
      cols.push_back(json{{"kind", "slack"}, {"firm", named.firm_names[meta.owner]}});
    } else {
      json set = json::array();
      WorkerMask mask = named.market.firm_prefs[meta.owner].acceptable[meta.acceptable_index];
      for (int w = 0; w < named.market.n_workers; ++w) {
        if (mask & (WorkerMask{1} << w)) set.push_back(named.worker_names[w]);
      }
      cols.push_back(json{{"kind", "acceptable_set"},
                          {"firm", named.firm_names[meta.owner]},
                          {"set", set}});
    }
  }
  json z_hat = json::array();
  for (const auto& q : sys.z_hat) z_hat.push_back(to_string(q));
  return json{{"B", int_matrix_json(sys.B)}, {"columns", cols}, {"z_hat", z_hat}};
}

int cmd_solve(const std::string& market_path, bool as_json, std::uint64_t seed, bool force,
              bool oracle_check, const std::string& from_matching, std::int64_t budget) {
  NamedMarket named = load_market_file(market_path);

  SolveOptions options;
  options.force = force;
  options.oracle_check = oracle_check;
  options.search.seed = seed;
  options.search.oracle_budget = budget;
  if (!from_matching.empty()) {
    PseudoMatching seed_matching = load_matching_file(from_matching, named);
    if (!verify_stable_continuum(named.market, seed_matching))
      throw std::invalid_argument("matching in " + from_matching + " is not stable");
    options.seed_matching = std::move(seed_matching);
  }

  SolveReport rep = solve(named.market, options);

  if (as_json) {
    json out;
    out["demand_type"] = demand_type_json(rep.demand_type);
    out["totally_unimodular"] = rep.demand_type_tu;
    out["unimodular"] = rep.demand_type_unimodular;
    if (rep.tu_witness) out["witness"] = witness_json(named, rep.demand_type, *rep.tu_witness);
    switch (rep.status) {
      case SolveStatus::kStableMatchingFound:
        out["status"] = "stable";
        break;
      case SolveStatus::kNotTotallyUnimodular:
        out["status"] = "not_totally_unimodular";
        break;
      case SolveStatus::kSearchExhausted:
        out["status"] = "search_exhausted";
        break;
    }
    if (rep.seed) out["seed_matching"] = matching_json(named, *rep.seed);
    if (rep.system) out["system"] = system_json(named, *rep.system);
    if (!rep.vertex.empty()) {
      json z = json::array();
      for (const auto& q : rep.vertex) z.push_back(to_string(q));
      out["vertex"] = z;
      out["vertex_integral"] = rep.vertex_integral;
    }
    if (rep.matching) out["matching"] = discrete_json(named, *rep.matching);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "demand type: " << to_string(rep.demand_type) << "\n";
    std::cout << "totally unimodular: " << (rep.demand_type_tu ? "yes" : "no") << "\n";
    if (rep.tu_witness)
      std::cout << "witness: " << witness_text(named, rep.demand_type, *rep.tu_witness) << "\n";
    if (rep.seed) {
      std::cout << "seed matching:\n";
      print_matching_rows(std::cout, named, *rep.seed);
    }
    if (rep.system) print_system(std::cout, named, *rep.system);
    if (!rep.vertex.empty()) {
      std::cout << "vertex z: " << rational_vector_text(rep.vertex)
                << (rep.vertex_integral ? "" : " (fractional)") << "\n";
    }
    switch (rep.status) {
      case SolveStatus::kStableMatchingFound:
        std::cout << "verdict: stable matching found\n";
        print_discrete(std::cout, named, *rep.matching);
        break;
      case SolveStatus::kNotTotallyUnimodular:
        std::cout << "verdict: demand type not totally unimodular\n";
        break;
      case SolveStatus::kSearchExhausted:
        std::cout << "verdict: no stable seed matching found within budget\n";
        break;
    }
  }

  switch (rep.status) {
    case SolveStatus::kStableMatchingFound:
      return 0;
    case SolveStatus::kNotTotallyUnimodular:
      return 1;
    case SolveStatus::kSearchExhausted:
      return 2;
  }
  return 2;
}

int cmd_oracle(const std::string& market_path, bool as_json, std::int64_t budget) {
  NamedMarket named = load_market_file(market_path);
  auto stable = enumerate_stable_matchings(named.market, budget);

  if (as_json) {
    json list = json::array();
    for (const auto& mu : stable) list.push_back(discrete_json(named, mu));
    std::cout << json{{"stable_matchings", list}}.dump(2) << "\n";
  } else if (stable.empty()) {
    std::cout << "stable matchings: none\n";
  } else {
    std::cout << "stable matchings: " << stable.size() << "\n";
    for (std::size_t i = 0; i < stable.size(); ++i) {
      std::cout << "matching " << (i + 1) << ":\n";
      print_discrete(std::cout, named, stable[i]);
    }
  }
  return stable.empty() ? 1 : 0;
}

int cmd_tree(const std::string& tree_path, const std::string& market_path, bool as_json) {
  std::optional<NamedMarket> named_market;
  if (!market_path.empty()) named_market = load_market_file(market_path);

  NamedTree named_tree = load_tree_file(
      tree_path, named_market ? &named_market->worker_names : nullptr);
  const TechnologyTree& tree = named_tree.tree;

  auto edge_name = [&](const std::pair<int, int>& e) {
    return named_tree.vertex_names[e.first] + named_tree.vertex_names[e.second];
  };

  bool specialists = all_specialists(tree);
  IntMatrix h = network_matrix(tree);
  std::optional<NetworkMatrices> nets;
  if (specialists) nets = network_matrices(tree);

  std::optional<TreeCertificate> cert;
  bool unit_demand = true;
  if (named_market && specialists) {
    unit_demand = is_unit_demand_over_tree(named_market->market, tree);
    if (unit_demand) cert = certify_tree_market(named_market->market, tree);
  }

  std::vector<std::pair<int, int>> edges = tree.edges;
  std::sort(edges.begin(), edges.end());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < tree.vertex_count(); ++i) {
    for (int j = i + 1; j < tree.vertex_count(); ++j) pairs.push_back({i, j});
  }

  if (as_json) {
    json out;
    json spec = json::object();
    for (int w = 0; w < tree.n_workers; ++w)
      spec[named_tree.worker_names[w]] = is_specialist(tree, w);
    out["specialists"] = spec;
    out["all_specialists"] = specialists;
    json row_names = json::array();
    for (const auto& e : edges) row_names.push_back(edge_name(e));
    json col_names = json::array();
    for (const auto& p : pairs) col_names.push_back(edge_name(p));
    out["H"] = json{{"rows", row_names}, {"columns", col_names}, {"entries", int_matrix_json(h)}};
    if (nets) {
      json worker_rows = json::array();
      for (int w = 0; w < tree.n_workers; ++w) worker_rows.push_back(named_tree.worker_names[w]);
      out["H_prime"] = json{{"rows", worker_rows},
                            {"columns", col_names},
                            {"entries", int_matrix_json(nets->h_prime)}};
    }
    if (named_market) out["unit_demand"] = unit_demand;
    if (cert) {
      json per_firm = json::object();
      for (int f = 0; f < named_market->market.m_firms; ++f) {
        json entries = json::array();
        for (const auto& entry : cert->per_firm[f]) {
          entries.push_back(json{{"vector", entry.vector},
                                 {"column", entry.column + 1},
                                 {"sign", entry.sign}});
        }
        per_firm[named_market->firm_names[f]] = std::move(entries);
      }
      out["certificate"] =
          json{{"ok", cert->ok}, {"demand_type_tu", cert->demand_type_tu}, {"firms", per_firm}};
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (int w = 0; w < tree.n_workers; ++w) {
      if (!is_specialist(tree, w))
        std::cout << "not a specialist: " << named_tree.worker_names[w] << "\n";
    }
    std::cout << "all specialists: " << (specialists ? "yes" : "no") << "\n";
    std::cout << "H (" << h.rows << " x " << h.cols << ")\n";
    std::cout << "rows:";
    for (const auto& e : edges) std::cout << " " << edge_name(e);
    std::cout << "\ncolumns:";
    for (const auto& p : pairs) std::cout << " " << edge_name(p);
    std::cout << "\n";
    print_int_matrix(std::cout, h);
    if (nets) {
      std::cout << "H' rows:";
      for (int w = 0; w < tree.n_workers; ++w) std::cout << " " << named_tree.worker_names[w];
      std::cout << "\n";
      print_int_matrix(std::cout, nets->h_prime);
    }
    if (named_market && !unit_demand)
      std::cout << "firms are not unit-demand over the tree\n";
    if (cert) {
      for (int f = 0; f < named_market->market.m_firms; ++f) {
        std::cout << "certificate " << named_market->firm_names[f] << ":";
        for (const auto& entry : cert->per_firm[f]) {
          std::cout << " " << to_string(entry.vector) << "="
                    << (entry.sign > 0 ? "+" : "-") << "H'" << (entry.column + 1);
        }
        std::cout << "\n";
      }
      std::cout << "demand type totally unimodular: " << (cert->demand_type_tu ? "yes" : "no")
                << "\n";
      std::cout << "certificate: " << (cert->ok ? "ok" : ("FAILED: " + cert->failure)) << "\n";
    }
  }

  if (!specialists) return 1;
  if (named_market && !unit_demand) return 1;
  if (cert && !cert->ok) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable matching via integer programming over a divisible-worker relaxation"};
  app.require_subcommand(1);

  std::string market_path;
  std::string tree_path;
  std::string from_matching;
  bool as_json = false;
  bool force = false;
  bool oracle_check = false;
  std::uint64_t seed = 0;
  std::int64_t budget = kDefaultEnumerationBudget;

  auto* dt = app.add_subcommand("demand-type", "print per-firm and market demand types");
  dt->add_option("market", market_path, "market JSON file")->required();
  dt->add_flag("--json", as_json, "machine-readable output");

  auto* tu = app.add_subcommand("check-tu", "test the demand type for total unimodularity");
  tu->add_option("market", market_path, "market JSON file")->required();
  tu->add_flag("--json", as_json, "machine-readable output");

  auto* sv = app.add_subcommand("solve", "find a stable matching through the full pipeline");
  sv->add_option("market", market_path, "market JSON file")->required();
  sv->add_flag("--json", as_json, "machine-readable output");
  sv->add_option("--seed", seed, "search seed");
  sv->add_flag("--force", force, "run the pipeline even when the demand type fails TU");
  sv->add_flag("--oracle-check", oracle_check, "cross-validate against the oracle");
  sv->add_option("--from-matching", from_matching, "seed from a matching JSON file");
  sv->add_option("--budget", budget, "oracle enumeration budget");

  auto* orc = app.add_subcommand("oracle", "list all stable matchings by brute force");
  orc->add_option("market", market_path, "market JSON file")->required();
  orc->add_flag("--json", as_json, "machine-readable output");
  orc->add_option("--budget", budget, "enumeration budget");

  auto* tr = app.add_subcommand("tree", "technology-tree analysis and certificates");
  tr->add_option("tree", tree_path, "tree JSON file")->required();
  tr->add_option("market", market_path, "market JSON file (enables the certificate)");
  tr->add_flag("--json", as_json, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dt->parsed()) return cmd_demand_type(market_path, as_json);
    if (tu->parsed()) return cmd_check_tu(market_path, as_json);
    if (sv->parsed())
      return cmd_solve(market_path, as_json, seed, force, oracle_check, from_matching, budget);
    if (orc->parsed()) return cmd_oracle(market_path, as_json, budget);
    if (tr->parsed()) return cmd_tree(tree_path, market_path, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
