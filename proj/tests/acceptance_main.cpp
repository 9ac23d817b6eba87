// Acceptance suite: the project-level behavioral guarantees, one per
// criterion, each with a hard wall-clock budget. Prints one PASS/FAIL line
// per criterion; the exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixture_markets.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "stablematch/demand_type.hpp"
#include "stablematch/ip_round.hpp"
#include "stablematch/tech_tree.hpp"

using namespace stablematch;
using namespace stablematch::fixtures;

namespace {

struct Checker {
  std::vector<std::string> failures;

  void require(bool condition, const std::string& what) {
    if (!condition) failures.push_back(what);
  }
};

struct Criterion {
  std::string label;
  double limit_seconds;
  std::function<void(Checker&)> body;
};

DemandType dt(std::vector<DemandVector> vs) {
  DemandType d;
  d.vectors = std::move(vs);
  std::sort(d.vectors.begin(), d.vectors.end(), std::greater<>());
  return d;
}

Rational r(long long p, long long q) { return Rational(p, q); }

Rational max_metric(const Subpopulation& a, const Subpopulation& b) {
  Rational d = 0;
  for (std::size_t w = 0; w < a.size(); ++w) d = std::max(d, Rational(abs(a[w] - b[w])));
  return d;
}

PseudoMatching walkthrough_half_matching() {
  PseudoMatching m = PseudoMatching::zeros(2, 3);
  m.firm(0) = {r(1, 2), r(1, 2), r(1, 2)};
  m.firm(1) = {r(1, 2), r(1, 2), 0};
  m.null_firm() = {0, 0, r(1, 2)};
  return m;
}

void criterion_pair_market(Checker& check) {
  Market mkt = market_no_stable();
  check.require(market_demand_type(mkt) == dt({{1, 1}, {1, 0}, {0, 1}, {1, -1}}),
                "demand type mismatch");

  auto tu = is_totally_unimodular(demand_type_matrix(market_demand_type(mkt), 2));
  check.require(!tu.is_tu, "demand type unexpectedly TU");
  check.require(tu.witness.has_value() && tu.witness->det == -2, "witness determinant != -2");
  if (tu.witness) {
    auto m = demand_type_matrix(market_demand_type(mkt), 2);
    check.require(m.column(tu.witness->col_indices[0]) == std::vector<long long>{1, 1} &&
                      m.column(tu.witness->col_indices[1]) == std::vector<long long>{1, -1},
                  "witness columns are not (1,1),(1,-1)");
  }
  check.require(enumerate_stable_matchings(mkt).empty(), "oracle found a stable matching");
}

void criterion_stabilized_market(Checker& check) {
  Market mkt = market_with_stable();
  check.require(market_demand_type(mkt) == dt({{1, 1}, {1, 0}, {0, 1}}),
                "demand type mismatch");
  check.require(is_totally_unimodular(demand_type_matrix(market_demand_type(mkt), 2)).is_tu,
                "demand type not TU");

  SolveOptions options;
  options.oracle_check = true;
  SolveReport rep = solve(mkt, options);
  check.require(rep.status == SolveStatus::kStableMatchingFound, "solve failed");

  auto oracle = enumerate_stable_matchings(mkt);
  bool pair_hired = false;
  for (const auto& mu : oracle) {
    if (matched_set(mu, 1) == 0b11) pair_hired = true;
  }
  check.require(pair_hired, "f2={w1,w2} missing from the oracle's stable set");
}

void criterion_unimodular_market(Checker& check) {
  Market mkt = market_unimodular_not_tu();
  IntMatrix d = demand_type_matrix(market_demand_type(mkt), 3);
  check.require(is_unimodular(d), "demand type should be unimodular");
  check.require(!is_totally_unimodular(d).is_tu, "demand type should fail TU");
  check.require(enumerate_stable_matchings(mkt).empty(), "oracle found a stable matching");
}

void criterion_substitutable_market(Checker& check) {
  Market mkt = market_substitutable_not_tu();
  for (const auto& pref : mkt.firm_prefs) {
    check.require(is_substitutable(pref, mkt.n_workers), "firm not substitutable");
  }
  check.require(market_demand_type(mkt) == dt({{1, 1}, {1, 0}, {0, 1}, {1, -1}}),
                "demand type mismatch");
  check.require(!is_totally_unimodular(demand_type_matrix(market_demand_type(mkt), 2)).is_tu,
                "demand type should fail TU");
}

void criterion_divisible_choice(Checker& check) {
  FirmPreference pref{{0b011, 0b110, 0b100}};  // {w1,w2} > {w2,w3} > {w3}

  auto c1 = choose_continuum(pref, {r(3, 5), r(3, 5), r(1, 2)});
  check.require(c1.chosen == Subpopulation{r(3, 5), r(3, 5), r(2, 5)},
                "choice of (3/5,3/5,1/2) is not (3/5,3/5,2/5)");

  auto c2 = choose_continuum(pref, {r(1, 10), r(2, 5), r(1, 10)});
  check.require(c2.chosen == Subpopulation{r(1, 10), r(1, 5), r(1, 10)},
                "choice of (1/10,2/5,1/10) is not (1/10,1/5,1/10)");
}

void criterion_walkthrough_system(Checker& check) {
  Market mkt = market_walkthrough();
  ConstraintSystem sys = build_system(mkt, walkthrough_half_matching());

  IntMatrix expected = IntMatrix::from_rows({
      {1, 1, 0, 0, 0},
      {0, 0, 1, 1, 0},
      {1, 0, 1, 0, 0},
      {1, 0, 1, 0, 0},
      {0, 1, 0, 0, 1},
  });
  check.require(sys.B == expected, "assembled B differs from the displayed 5x5 system");
  check.require(sys.z_hat == std::vector<Rational>(5, r(1, 2)), "z_hat is not (1/2,...,1/2)");

  VertexResult vertex = find_integral_vertex(sys);
  check.require(vertex.integral, "vertex not integral");
  for (const auto& q : vertex.z) {
    check.require(q == 0 || q == 1, "vertex entry outside {0,1}");
  }
  PseudoMatching rounded = vertex_to_matching(sys, vertex.z);
  check.require(verify_stable_continuum(mkt, rounded), "rounded matching unstable");
  check.require(is_integral(rounded), "rounded matching not integral");

  std::vector<Rational> zp{1, 0, 0, 1, 1};
  PseudoMatching m = vertex_to_matching(sys, zp);  // throws if infeasible
  check.require(m.firm(0) == Subpopulation{1, 1, 0} && m.firm(1) == Subpopulation{0, 0, 0} &&
                    m.null_firm() == Subpopulation{0, 0, 1},
                "z'=(1,0,0,1,1) does not map to f1={w1,w2}, w3 unmatched");
  DiscreteMatching mu = lift_to_discrete(mkt, m);
  check.require(mu.assignment == std::vector<int>{0, 0, kNullFirm},
                "lifted matching differs");
  check.require(is_stable(mkt, mu), "lifted matching unstable");
}

void criterion_choice_properties(Checker& check) {
  std::mt19937 rng(0xACC7);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    FirmPreference pref = testing::random_firm_pref(rng, n, 6);
    if (pref.num_acceptable() == 0) pref.acceptable.push_back(1);
    int L = pref.num_acceptable();

    // Revealed preference: any x' between the choice and x leaves it fixed.
    Subpopulation x = testing::random_subpopulation(rng, n, 8);
    Subpopulation chosen = choose_continuum(pref, x).chosen;
    Subpopulation xp(n);
    for (int w = 0; w < n; ++w) {
      xp[w] = chosen[w] + testing::random_grid_rational(rng, 4) * (x[w] - chosen[w]);
    }
    if (choose_continuum(pref, xp).chosen != chosen) {
      check.require(false, "revealed preference violated at trial " + std::to_string(trial));
      return;
    }

    // Continuity: outputs stay within (2^L - 1) times any dominating radius.
    Subpopulation xt = testing::random_subpopulation(rng, n, 12);
    Rational dist = max_metric(x, xt);
    Rational v = dist + r(1, 1000);
    Rational out_dist =
        max_metric(chosen, choose_continuum(pref, xt).chosen);
    Rational factor = (BigInt(1) << L) - 1;
    if (!(out_dist < factor * v) || !(out_dist <= factor * dist)) {
      check.require(false, "continuity bound violated at trial " + std::to_string(trial));
      return;
    }
  }
}

void criterion_transformations(Checker& check) {
  std::mt19937 rng(0xACC8);
  int produced = 0;
  while (produced < 200) {
    auto sample = testing::try_random_stable_pseudo(rng);
    if (!sample) continue;
    ++produced;
    const Market& mkt = sample->market;
    const PseudoMatching& m = sample->matching;

    for (int f = 0; f < mkt.m_firms; ++f) {
      auto trace = choose_continuum(mkt.firm_prefs[f], m.firm(f)).trace;
      if (trace.total_time < 1 &&
          !is_stable_pseudo(mkt, transform_type1(mkt, m, f))) {
        check.require(false, "type-1 output unstable (instance " + std::to_string(produced) + ")");
        return;
      }
      for (const auto& step : trace.steps) {
        if (step.time > 0 &&
            !is_stable_pseudo(mkt, transform_type2(mkt, m, f, step.index))) {
          check.require(false,
                        "type-2 output unstable (instance " + std::to_string(produced) + ")");
          return;
        }
      }
    }
    for (int w = 0; w < mkt.n_workers; ++w) {
      const Rational& q = m.null_firm()[w];
      if (q > 0 && q < 1) {
        if (!is_stable_pseudo(mkt, transform_type3(mkt, m, w, 0)) ||
            !is_stable_pseudo(mkt, transform_type3(mkt, m, w, 1))) {
          check.require(false,
                        "type-3 output unstable (instance " + std::to_string(produced) + ")");
          return;
        }
      }
    }
  }
}

void criterion_tu_pipeline(Checker& check) {
  std::mt19937 rng(0xACC9);
  int accepted = 0;
  while (accepted < 300) {
    Market mkt = testing::random_market(rng, 4, 3, 4);
    DemandType d = market_demand_type(mkt);
    if (!d.vectors.empty() &&
        !is_totally_unimodular(demand_type_matrix(d, mkt.n_workers)).is_tu) {
      continue;
    }
    ++accepted;

    SolveReport rep = solve(mkt, {});
    if (rep.status != SolveStatus::kStableMatchingFound) {
      check.require(false, "solve failed on TU market " + std::to_string(accepted));
      return;
    }
    auto oracle = enumerate_stable_matchings(mkt);
    if (std::find(oracle.begin(), oracle.end(), *rep.matching) == oracle.end()) {
      check.require(false, "answer missing from oracle on market " + std::to_string(accepted));
      return;
    }
    if (!rep.system || !is_unimodular(rep.system->B)) {
      check.require(false, "assembled B not unimodular on market " + std::to_string(accepted));
      return;
    }
  }
}

void criterion_tree_suite(Checker& check) {
  NetworkMatrices nets = network_matrices(tree_two_branch());
  check.require(nets.h == IntMatrix::from_rows({
                    {1, 0, 0, -1, -1, 0},
                    {0, 1, 1, 1, 1, 0},
                    {0, 0, 1, 0, 1, 1},
                }),
                "edge incidence matrix differs from the path table");
  check.require(nets.h_prime == IntMatrix::from_rows({
                    {1, 0, 0, -1, -1, 0},
                    {1, 0, 0, -1, -1, 0},
                    {0, 1, 1, 1, 1, 0},
                    {0, 0, 1, 0, 1, 1},
                }),
                "worker incidence matrix differs");

  TreeCertificate cert = certify_tree_market(market_tree_unit_demand(), tree_two_branch());
  check.require(cert.ok && cert.demand_type_tu, "fixture certificate failed");
  auto entry_is = [&](const CertificateEntry& e, DemandVector v, int col, int sign) {
    return e.vector == v && e.column == col && e.sign == sign;
  };
  check.require(cert.per_firm.size() == 2 && cert.per_firm[0].size() == 3 &&
                    entry_is(cert.per_firm[0][0], {1, 1, 0, 0}, 0, 1) &&
                    entry_is(cert.per_firm[0][1], {1, 1, -1, 0}, 3, -1) &&
                    entry_is(cert.per_firm[0][2], {0, 0, 1, 0}, 1, 1),
                "first firm's certificate is not {+1, -4, +2} (1-based: H'1, -H'4, H'2)");
  check.require(cert.per_firm.size() == 2 && cert.per_firm[1].size() == 3 &&
                    entry_is(cert.per_firm[1][0], {1, 1, 0, 0}, 0, 1) &&
                    entry_is(cert.per_firm[1][1], {0, 0, 1, 1}, 2, 1) &&
                    entry_is(cert.per_firm[1][2], {-1, -1, 1, 1}, 4, 1),
                "second firm's certificate is not {H'1, H'3, H'5}");

  std::mt19937 rng(0xACCA);
  for (int trial = 0; trial < 100; ++trial) {
    TechnologyTree tree = testing::random_specialist_tree(rng, 6, 6);
    Market mkt = testing::random_tree_market(rng, tree, 3);

    TreeCertificate c = certify_tree_market(mkt, tree);
    if (!c.ok || !c.demand_type_tu) {
      check.require(false, "random tree certificate failed at trial " + std::to_string(trial));
      return;
    }
    SolveReport rep = solve(mkt, {});
    if (rep.status != SolveStatus::kStableMatchingFound) {
      check.require(false, "random tree market unsolved at trial " + std::to_string(trial));
      return;
    }
    auto oracle = enumerate_stable_matchings(mkt);
    if (std::find(oracle.begin(), oracle.end(), *rep.matching) == oracle.end()) {
      check.require(false, "tree-market answer missing from oracle at trial " +
                               std::to_string(trial));
      return;
    }
  }
}

void criterion_integral_vertices(Checker& check) {
  std::mt19937 rng(0xACCB);
  int systems = 0;
  while (systems < 50) {
    Market mkt = testing::random_market(rng, 4, 3, 4);
    DemandType d = market_demand_type(mkt);
    if (!d.vectors.empty() &&
        !is_totally_unimodular(demand_type_matrix(d, mkt.n_workers)).is_tu) {
      continue;
    }
    auto stable = enumerate_stable_matchings(mkt);
    if (stable.empty()) continue;

    // Integral lift, plus an averaged fractional seed when two stable
    // matchings mix into a verified stable matching.
    std::vector<PseudoMatching> seeds{embed_discrete(mkt, stable.front())};
    if (stable.size() >= 2) {
      PseudoMatching a = embed_discrete(mkt, stable.front());
      PseudoMatching b = embed_discrete(mkt, stable.back());
      PseudoMatching mix = PseudoMatching::zeros(mkt.m_firms, mkt.n_workers);
      for (std::size_t row = 0; row < mix.by_firm.size(); ++row) {
        for (int w = 0; w < mkt.n_workers; ++w) {
          mix.by_firm[row][w] = (a.by_firm[row][w] + b.by_firm[row][w]) / 2;
        }
      }
      if (verify_stable_continuum(mkt, mix)) seeds.push_back(std::move(mix));
    }

    for (const auto& seed : seeds) {
      if (systems >= 50) break;
      ConstraintSystem sys = build_system(mkt, seed);
      if (sys.B.cols > 10) continue;
      ++systems;
      for (const auto& vertex : testing::enumerate_vertices(sys.B)) {
        for (const auto& q : vertex) {
          if (!is_integer(q)) {
            check.require(false, "fractional vertex under a TU demand type");
            return;
          }
        }
      }
    }
  }

  // The hand-built odd-cycle system: its only vertex is half-integral and
  // must be flagged.
  ConstraintSystem toy;
  toy.m_firms = 1;
  toy.n_workers = 2;
  toy.B = IntMatrix::from_rows({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  toy.meta = {{0, ColumnKind::kAcceptableSet, 0, -1},
              {0, ColumnKind::kAcceptableSet, 1, -1},
              {1, ColumnKind::kNullUnit, -1, 0}};
  toy.z_hat = {r(1, 2), r(1, 2), r(1, 2)};

  auto vertices = testing::enumerate_vertices(toy.B);
  check.require(vertices.size() == 1 &&
                    vertices[0] == std::vector<Rational>{r(1, 2), r(1, 2), r(1, 2)},
                "toy system should have exactly the half-integral vertex");
  VertexResult vertex = find_integral_vertex(toy);
  check.require(!vertex.integral, "half-integral vertex not flagged");
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"pair-demand market: demand type, determinant witness, empty oracle", 1.0,
       criterion_pair_market},
      {"stabilized pair market: TU demand type and an oracle-confirmed solve", 1.0,
       criterion_stabilized_market},
      {"three-firm market: unimodular, not totally unimodular, no stable matching", 1.0,
       criterion_unimodular_market},
      {"substitutable preferences with a non-TU demand type", 1.0,
       criterion_substitutable_market},
      {"divisible choice procedure on exact rationals", 1.0, criterion_divisible_choice},
      {"seeded constraint system reproduces the 5x5 walkthrough bit-exactly", 1.0,
       criterion_walkthrough_system},
      {"revealed preference and continuity of the divisible choice (1000 cases)", 30.0,
       criterion_choice_properties},
      {"stable transformations preserve stability (200 verified instances)", 60.0,
       criterion_transformations},
      {"TU demand types always solve, oracle-confirmed, with unimodular B (300 markets)",
       300.0, criterion_tu_pipeline},
      {"technology-tree certificates and end-to-end solves (100 trees)", 300.0,
       criterion_tree_suite},
      {"only integral vertices under TU systems; half-integral toy flagged", 120.0,
       criterion_integral_vertices},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker check;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].body(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criteria[i].limit_seconds) {
      check.failures.push_back("time limit exceeded (" + std::to_string(seconds) + "s > " +
                               std::to_string(criteria[i].limit_seconds) + "s)");
    }

    bool passed = check.failures.empty();
    if (!passed) ++failures;
    std::printf("[%s] criterion %zu: %s (%.1f ms)\n", passed ? "PASS" : "FAIL", i + 1,
                criteria[i].label.c_str(), seconds * 1000.0);
    for (const auto& note : check.failures) {
      std::printf("       %s\n", note.c_str());
    }
  }

  if (failures == 0) {
    std::printf("all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("%d of %zu criteria FAILED\n", failures, criteria.size());
  }
  return failures;
}
