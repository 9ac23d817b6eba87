#include "stablematch/continuum.hpp"

#include <algorithm>
#include <stdexcept>

namespace stablematch {

Subpopulation zero_subpopulation(int n_workers) {
  return Subpopulation(static_cast<std::size_t>(n_workers), Rational(0));
}

bool subpopulation_leq(const Subpopulation& a, const Subpopulation& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] > b[w]) return false;
  }
  return true;
}

Subpopulation join(const Subpopulation& a, const Subpopulation& b) {
  Subpopulation out(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) out[w] = std::max(a[w], b[w]);
  return out;
}

WorkerMask support(const Subpopulation& x) {
  WorkerMask s = 0;
  for (std::size_t w = 0; w < x.size(); ++w) {
    if (x[w] > 0) s |= WorkerMask{1} << w;
  }
  return s;
}

ContinuumChoice choose_continuum(const FirmPreference& pref, const Subpopulation& x) {
  const int n = static_cast<int>(x.size());
  ContinuumChoice out;
  out.chosen = zero_subpopulation(n);
  out.trace.total_time = 0;

  Subpopulation remaining = x;
  for (int k = 0; k < pref.num_acceptable(); ++k) {
    WorkerMask u = pref.acceptable[k];
    Rational t = Rational(1) - out.trace.total_time;
    for (int w = 0; w < n; ++w) {
      if (u & (WorkerMask{1} << w)) t = std::min(t, remaining[w]);
    }
    if (t > 0) {
      for (int w = 0; w < n; ++w) {
        if (u & (WorkerMask{1} << w)) {
          remaining[w] -= t;
          out.chosen[w] += t;
        }
      }
      out.trace.total_time += t;
    } else {
      t = 0;
    }
    out.trace.steps.push_back(TraceStep{k, t, remaining});
  }
  return out;
}

bool blair_weakly_prefers(const FirmPreference& pref, const Subpopulation& xp,
                          const Subpopulation& x) {
  return choose_continuum(pref, join(xp, x)).chosen == xp;
}

bool blair_strictly_prefers(const FirmPreference& pref, const Subpopulation& xp,
                            const Subpopulation& x) {
  return xp != x && blair_weakly_prefers(pref, xp, x);
}

PseudoMatching PseudoMatching::zeros(int m_firms, int n_workers) {
  PseudoMatching m;
  m.by_firm.assign(static_cast<std::size_t>(m_firms) + 1, zero_subpopulation(n_workers));
  return m;
}

void validate_pseudo_matching(const Market& market, const PseudoMatching& m) {
  if (m.firm_count() != market.m_firms)
    throw std::invalid_argument("pseudo-matching has wrong firm count");
  for (const auto& row : m.by_firm) {
    if (static_cast<int>(row.size()) != market.n_workers)
      throw std::invalid_argument("pseudo-matching row has wrong worker count");
    for (const auto& q : row) {
      if (q < 0 || q > 1) throw std::invalid_argument("pseudo-matching entry outside [0,1]");
    }
  }
}

bool is_integral(const PseudoMatching& m) {
  for (const auto& row : m.by_firm) {
    for (const auto& q : row) {
      if (q != 0 && q != 1) return false;
    }
  }
  return true;
}

Rational column_sum(const PseudoMatching& m, int worker) {
  Rational s = 0;
  for (const auto& row : m.by_firm) s += row[worker];
  return s;
}

bool is_continuum_matching(const PseudoMatching& m) {
  if (m.by_firm.empty()) return true;
  const int n = static_cast<int>(m.by_firm[0].size());
  for (int w = 0; w < n; ++w) {
    if (column_sum(m, w) != 1) return false;
  }
  return true;
}

Subpopulation available_weak(const Market& market, const PseudoMatching& m, int f) {
  Subpopulation out = zero_subpopulation(market.n_workers);
  for (int w = 0; w < market.n_workers; ++w) {
    for (int g = 0; g < market.m_firms; ++g) {
      if (market.worker_weakly_prefers(w, f, g)) out[w] += m.firm(g)[w];
    }
    if (market.worker_weakly_prefers(w, f, kNullFirm)) out[w] += m.null_firm()[w];
  }
  return out;
}

Subpopulation available_strict(const Market& market, const PseudoMatching& m, int f) {
  Subpopulation out = zero_subpopulation(market.n_workers);
  for (int w = 0; w < market.n_workers; ++w) {
    int rank_f = market.worker_rank(w, f);
    for (int g = 0; g < market.m_firms; ++g) {
      if (market.worker_rank(w, g) > rank_f) out[w] += m.firm(g)[w];
    }
    if (market.worker_rank(w, kNullFirm) > rank_f) out[w] += m.null_firm()[w];
  }
  return out;
}

std::optional<BlockWitness> firm_can_block(const Market& market, const PseudoMatching& m,
                                           int f) {
  const auto& pref = market.firm_prefs[f];
  ContinuumChoice current = choose_continuum(pref, m.firm(f));
  if (current.chosen != m.firm(f))
    throw std::invalid_argument("firm_can_block: firm is not individually rational");

  // By revealed preference, a deviation M' <= A (with M' strictly Blair
  // preferred) exists exactly when choosing from the whole weak availability
  // yields something other than the current assignment.
  ContinuumChoice best = choose_continuum(pref, available_weak(market, m, f));
  if (best.chosen == m.firm(f)) return std::nullopt;

  // Witness: the first set whose consumption the extra availability extends.
  // One exists whenever the chosen vectors differ, and the first divergence
  // extends (never shortens) a step.
  for (std::size_t k = 0; k < current.trace.steps.size(); ++k) {
    if (best.trace.steps[k].time > current.trace.steps[k].time) {
      int index = current.trace.steps[k].index;
      return BlockWitness{index, pref.acceptable[index]};
    }
  }
  throw std::logic_error("firm_can_block: diverging choices with identical traces");
}

bool is_stable_pseudo(const Market& market, const PseudoMatching& m) {
  validate_pseudo_matching(market, m);

  for (int f = 0; f < market.m_firms; ++f) {
    if (choose_continuum(market.firm_prefs[f], m.firm(f)).chosen != m.firm(f)) return false;
  }
  for (int w = 0; w < market.n_workers; ++w) {
    for (int f = 0; f < market.m_firms; ++f) {
      if (!market.worker_accepts(w, f) && m.firm(f)[w] != 0) return false;
    }
  }
  for (int f = 0; f < market.m_firms; ++f) {
    if (firm_can_block(market, m, f).has_value()) return false;
  }
  return true;
}

namespace {

void require_stable(const Market& market, const PseudoMatching& m, const char* op) {
  if (!is_stable_pseudo(market, m))
    throw std::invalid_argument(std::string(op) + ": input pseudo-matching is not stable");
}

}  // namespace

PseudoMatching transform_type1(const Market& market, const PseudoMatching& m, int f) {
  require_stable(market, m, "transform_type1");
  ContinuumChoice choice = choose_continuum(market.firm_prefs[f], m.firm(f));
  if (choice.trace.total_time >= 1)
    throw std::invalid_argument("transform_type1: firm has no slack time");
  PseudoMatching out = m;
  out.firm(f) = zero_subpopulation(market.n_workers);
  return out;
}

PseudoMatching transform_type2(const Market& market, const PseudoMatching& m, int f, int k) {
  require_stable(market, m, "transform_type2");
  const auto& pref = market.firm_prefs[f];
  if (k < 0 || k >= pref.num_acceptable())
    throw std::invalid_argument("transform_type2: acceptable-set index out of range");
  ContinuumChoice choice = choose_continuum(pref, m.firm(f));
  if (choice.trace.steps[k].time <= 0)
    throw std::invalid_argument("transform_type2: chosen set has zero consumption time");
  PseudoMatching out = m;
  out.firm(f) = zero_subpopulation(market.n_workers);
  for (int w = 0; w < market.n_workers; ++w) {
    if (pref.acceptable[k] & (WorkerMask{1} << w)) out.firm(f)[w] = 1;
  }
  return out;
}

PseudoMatching transform_type3(const Market& market, const PseudoMatching& m, int worker,
                               int bit) {
  require_stable(market, m, "transform_type3");
  if (bit != 0 && bit != 1) throw std::invalid_argument("transform_type3: bit must be 0 or 1");
  const Rational& q = m.null_firm()[worker];
  if (q == 0 || q == 1)
    throw std::invalid_argument("transform_type3: unmatched mass is already integral");
  PseudoMatching out = m;
  out.null_firm()[worker] = bit;
  return out;
}

DiscreteMatching lift_to_discrete(const Market& market, const PseudoMatching& m) {
  validate_pseudo_matching(market, m);
  if (!is_integral(m)) throw std::invalid_argument("lift_to_discrete: matching not integral");
  if (!is_continuum_matching(m))
    throw std::invalid_argument("lift_to_discrete: column sums are not all 1");

  DiscreteMatching mu;
  mu.assignment.assign(market.n_workers, kNullFirm);
  for (int w = 0; w < market.n_workers; ++w) {
    for (int f = 0; f < market.m_firms; ++f) {
      if (m.firm(f)[w] == 1) mu.assignment[w] = f;
    }
  }
  return mu;
}

PseudoMatching embed_discrete(const Market& market, const DiscreteMatching& mu) {
  PseudoMatching m = PseudoMatching::zeros(market.m_firms, market.n_workers);
  for (int w = 0; w < market.n_workers; ++w) {
    int f = mu.assignment[w];
    if (f == kNullFirm) {
      m.null_firm()[w] = 1;
    } else {
      m.firm(f)[w] = 1;
    }
  }
  return m;
}

}  // namespace stablematch
