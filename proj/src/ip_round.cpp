#include "stablematch/ip_round.hpp"

#include <algorithm>
#include <stdexcept>

namespace stablematch {

ConstraintSystem build_system(const Market& market, const PseudoMatching& matching) {
  if (!verify_stable_continuum(market, matching))
    throw std::invalid_argument("build_system: seed matching is not stable");

  const int m = market.m_firms;
  const int n = market.n_workers;

  ConstraintSystem sys;
  sys.m_firms = m;
  sys.n_workers = n;

  struct Column {
    ColumnMeta meta;
    std::vector<long long> entries;  // m+n rows
    Rational value;
  };
  std::vector<Column> columns;

  for (int f = 0; f < m; ++f) {
    const auto& pref = market.firm_prefs[f];
    ContinuumChoice choice = choose_continuum(pref, matching.firm(f));

    Rational consumed = 0;
    for (const auto& step : choice.trace.steps) {
      if (step.time <= 0) continue;
      Column col;
      col.meta = {f, ColumnKind::kAcceptableSet, step.index, -1};
      col.entries.assign(m + n, 0);
      col.entries[f] = 1;
      for (int w = 0; w < n; ++w) {
        if (pref.acceptable[step.index] & (WorkerMask{1} << w)) col.entries[m + w] = 1;
      }
      col.value = step.time;
      consumed += step.time;
      columns.push_back(std::move(col));
    }
    if (consumed < 1) {
      Column col;
      col.meta = {f, ColumnKind::kZeroColumn, -1, -1};
      col.entries.assign(m + n, 0);
      col.entries[f] = 1;
      col.value = Rational(1) - consumed;
      columns.push_back(std::move(col));
    }
  }
  for (int w = 0; w < n; ++w) {
    if (matching.null_firm()[w] > 0) {
      Column col;
      col.meta = {m, ColumnKind::kNullUnit, -1, w};
      col.entries.assign(m + n, 0);
      col.entries[m + w] = 1;
      col.value = matching.null_firm()[w];
      columns.push_back(std::move(col));
    }
  }

  const int k = static_cast<int>(columns.size());
  sys.B = IntMatrix(m + n, k);
  sys.meta.resize(k);
  sys.z_hat.resize(k);
  for (int c = 0; c < k; ++c) {
    sys.meta[c] = columns[c].meta;
    sys.z_hat[c] = columns[c].value;
    for (int r = 0; r < m + n; ++r) sys.B.at(r, c) = columns[c].entries[r];
  }

  for (int r = 0; r < m + n; ++r) {
    Rational sum = 0;
    for (int c = 0; c < k; ++c) sum += Rational(sys.B.at(r, c)) * sys.z_hat[c];
    if (sum != 1) throw std::logic_error("build_system: B z_hat != 1");
  }
  return sys;
}

namespace {

class PhaseOneSimplex {
 public:
  explicit PhaseOneSimplex(const ConstraintSystem& sys)
      : rows_(sys.B.rows), cols_(sys.B.cols) {
    tableau_.assign(rows_, std::vector<Rational>(cols_ + rows_ + 1, Rational(0)));
    basis_.resize(rows_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) tableau_[i][j] = sys.B.at(i, j);
      tableau_[i][cols_ + i] = 1;
      tableau_[i][rhs()] = 1;
      basis_[i] = cols_ + i;
    }
    // Phase-I objective: minimize the artificial total. Reduced-cost row for
    // the all-artificial basis (artificial columns start at cost zero).
    objective_.assign(cols_ + rows_ + 1, Rational(0));
    for (int j = 0; j < cols_; ++j) {
      for (int i = 0; i < rows_; ++i) objective_[j] -= tableau_[i][j];
    }
    for (int i = 0; i < rows_; ++i) objective_[rhs()] -= tableau_[i][rhs()];
  }

  std::vector<Rational> run() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {  // artificials never re-enter
        if (objective_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) break;

      int leave = -1;
      Rational best_ratio = 0;
      for (int i = 0; i < rows_; ++i) {
        if (tableau_[i][enter] <= 0) continue;
        Rational ratio = tableau_[i][rhs()] / tableau_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) throw std::logic_error("phase-I simplex unbounded");
      pivot(leave, enter);
    }

    if (objective_[rhs()] != 0) throw std::runtime_error("constraint system infeasible");

    // Pivot leftover artificials out where an original column allows it;
    // rows with no such column are redundant and keep a zero-valued
    // artificial without affecting the solution.
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      for (int j = 0; j < cols_; ++j) {
        if (tableau_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }

    std::vector<Rational> z(cols_, Rational(0));
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) z[basis_[i]] = tableau_[i][rhs()];
    }
    return z;
  }

 private:
  int rhs() const { return cols_ + rows_; }

  void pivot(int row, int col) {
    Rational p = tableau_[row][col];
    for (auto& v : tableau_[row]) v /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == row || tableau_[i][col] == 0) continue;
      Rational factor = tableau_[i][col];
      for (int j = 0; j <= rhs(); ++j) tableau_[i][j] -= factor * tableau_[row][j];
    }
    if (objective_[col] != 0) {
      Rational factor = objective_[col];
      for (int j = 0; j <= rhs(); ++j) objective_[j] -= factor * tableau_[row][j];
    }
    basis_[row] = col;
  }

  int rows_;
  int cols_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<Rational> objective_;
  std::vector<int> basis_;
};

}  // namespace

VertexResult find_integral_vertex(const ConstraintSystem& sys) {
  PhaseOneSimplex simplex(sys);
  VertexResult out;
  out.z = simplex.run();
  out.integral = std::all_of(out.z.begin(), out.z.end(),
                             [](const Rational& q) { return is_integer(q); });
  return out;
}

PseudoMatching vertex_to_matching(const ConstraintSystem& sys, const std::vector<Rational>& z) {
  if (static_cast<int>(z.size()) != sys.B.cols)
    throw std::invalid_argument("vertex_to_matching: wrong solution length");
  for (const auto& q : z) {
    if (q < 0 || !is_integer(q))
      throw std::invalid_argument("vertex_to_matching: z must be nonnegative and integral");
  }
  for (int r = 0; r < sys.B.rows; ++r) {
    Rational sum = 0;
    for (int c = 0; c < sys.B.cols; ++c) sum += Rational(sys.B.at(r, c)) * z[c];
    if (sum != 1) throw std::invalid_argument("vertex_to_matching: B z != 1");
  }

  PseudoMatching m = PseudoMatching::zeros(sys.m_firms, sys.n_workers);
  for (int c = 0; c < sys.B.cols; ++c) {
    if (z[c] == 0) continue;
    const ColumnMeta& meta = sys.meta[c];
    switch (meta.kind) {
      case ColumnKind::kAcceptableSet:
        for (int w = 0; w < sys.n_workers; ++w) {
          m.firm(meta.owner)[w] += z[c] * sys.B.at(sys.m_firms + w, c);
        }
        break;
      case ColumnKind::kZeroColumn:
        break;
      case ColumnKind::kNullUnit:
        m.null_firm()[meta.worker] += z[c];
        break;
    }
  }
  if (!is_integral(m) || !is_continuum_matching(m))
    throw std::logic_error("vertex_to_matching: output is not an integral matching");
  return m;
}

SolveReport solve(const Market& market, const SolveOptions& options) {
  SolveReport rep;
  rep.demand_type = market_demand_type(market);
  if (rep.demand_type.vectors.empty()) {
    rep.demand_type_tu = true;
    rep.demand_type_unimodular = true;
  } else {
    IntMatrix d = demand_type_matrix(rep.demand_type, market.n_workers);
    TuResult tu = is_totally_unimodular(d);
    rep.demand_type_tu = tu.is_tu;
    rep.tu_witness = tu.witness;
    rep.demand_type_unimodular = is_unimodular(d);
  }

  if (!rep.demand_type_tu && !options.force) {
    rep.status = SolveStatus::kNotTotallyUnimodular;
    return rep;
  }

  if (options.seed_matching) {
    if (!verify_stable_continuum(market, *options.seed_matching))
      throw std::invalid_argument("solve: supplied seed matching is not stable");
    rep.seed = options.seed_matching;
  } else {
    rep.seed = find_stable_continuum(market, options.search);
    if (!rep.seed) {
      rep.status = SolveStatus::kSearchExhausted;
      return rep;
    }
  }

  rep.system = build_system(market, *rep.seed);
  VertexResult vertex = find_integral_vertex(*rep.system);
  rep.vertex = vertex.z;
  rep.vertex_integral = vertex.integral;

  if (!vertex.integral) {
    if (rep.demand_type_tu)
      throw std::logic_error("solve: fractional vertex under a totally unimodular demand type");
    rep.status = SolveStatus::kNotTotallyUnimodular;
    return rep;
  }

  PseudoMatching integral = vertex_to_matching(*rep.system, vertex.z);
  DiscreteMatching mu = lift_to_discrete(market, integral);
  if (!is_stable(market, mu)) throw std::logic_error("solve: produced an unstable matching");

  if (options.oracle_check) {
    auto oracle = enumerate_stable_matchings(market, options.search.oracle_budget);
    if (std::find(oracle.begin(), oracle.end(), mu) == oracle.end())
      throw std::logic_error("solve: matching missing from the oracle's stable set");
  }

  rep.matching = mu;
  rep.status = SolveStatus::kStableMatchingFound;
  return rep;
}

}  // namespace stablematch
