#pragma once

#include <optional>
#include <vector>

#include "stablematch/market.hpp"
#include "stablematch/rational.hpp"

namespace stablematch {

/// Per-worker-type quantities in [0,1], exact rationals.
using Subpopulation = std::vector<Rational>;

Subpopulation zero_subpopulation(int n_workers);
bool subpopulation_leq(const Subpopulation& a, const Subpopulation& b);

/// Componentwise maximum.
Subpopulation join(const Subpopulation& a, const Subpopulation& b);

/// Support indicator: bit w set where x(w) > 0.
WorkerMask support(const Subpopulation& x);

/// One step of the consumption procedure: the firm spends `time` consuming
/// its k-th acceptable set, leaving `remaining`.
struct TraceStep {
  int index = 0;  // position in the firm's acceptable list
  Rational time;
  Subpopulation remaining;
};

struct ConsumptionTrace {
  std::vector<TraceStep> steps;  // one per acceptable set, in order
  Rational total_time;
};

struct ContinuumChoice {
  Subpopulation chosen;
  ConsumptionTrace trace;
};

/// The firm eats its acceptable sets in preference order at unit speed,
/// switching when a member type runs out, until time 1 or nothing acceptable
/// remains. On integral inputs this coincides with the discrete choice.
ContinuumChoice choose_continuum(const FirmPreference& pref, const Subpopulation& x);

/// Blair order: x' is weakly preferred to x when x' survives choosing from
/// the join of the two.
bool blair_weakly_prefers(const FirmPreference& pref, const Subpopulation& xp,
                          const Subpopulation& x);
bool blair_strictly_prefers(const FirmPreference& pref, const Subpopulation& xp,
                            const Subpopulation& x);

/// Assignment of a subpopulation to every firm plus the null firm. Column
/// sums are unconstrained; a pseudo-matching with unit column sums is a
/// matching of the divisible market.
struct PseudoMatching {
  std::vector<Subpopulation> by_firm;  // size m_firms + 1; last row = null firm

  static PseudoMatching zeros(int m_firms, int n_workers);

  int firm_count() const { return static_cast<int>(by_firm.size()) - 1; }
  Subpopulation& firm(int f) { return by_firm[f]; }
  const Subpopulation& firm(int f) const { return by_firm[f]; }
  Subpopulation& null_firm() { return by_firm.back(); }
  const Subpopulation& null_firm() const { return by_firm.back(); }

  bool operator==(const PseudoMatching&) const = default;
};

/// Throws std::invalid_argument unless shapes match the market and every
/// entry lies in [0,1].
void validate_pseudo_matching(const Market& market, const PseudoMatching& m);

bool is_integral(const PseudoMatching& m);
Rational column_sum(const PseudoMatching& m, int worker);
bool is_continuum_matching(const PseudoMatching& m);  // all column sums == 1

/// Mass sitting at f or anywhere weakly worse for each worker type.
Subpopulation available_weak(const Market& market, const PseudoMatching& m, int f);
/// Mass sitting strictly below f (the pool a blocking firm can poach from).
Subpopulation available_strict(const Market& market, const PseudoMatching& m, int f);

struct BlockWitness {
  int index = 0;         // smallest eligible position in the acceptable list
  WorkerMask workers = 0;  // the acceptable set at that position
};

/// Blocking test for an individually rational firm: f takes part in a
/// blocking coalition exactly when choosing from its weak availability gives
/// something other than its current assignment. The witness is the first
/// acceptable set whose consumption the extra availability extends. Throws
/// std::invalid_argument if f is not individually rational in m.
std::optional<BlockWitness> firm_can_block(const Market& market, const PseudoMatching& m,
                                           int f);

/// Stability of a pseudo-matching: every firm keeps exactly what it is
/// assigned, no worker mass sits at an unacceptable firm, and no firm blocks.
bool is_stable_pseudo(const Market& market, const PseudoMatching& m);

/// Zero out a firm that has slack time (total consumption < 1). Preserves
/// stability. Throws std::invalid_argument when preconditions fail.
PseudoMatching transform_type1(const Market& market, const PseudoMatching& m, int f);

/// Snap a firm to the k-th acceptable set, allowed when it consumed that set
/// for positive time. Preserves stability.
PseudoMatching transform_type2(const Market& market, const PseudoMatching& m, int f, int k);

/// Snap a worker type's unmatched mass to 0 or 1, allowed when it is strictly
/// between. Preserves stability.
PseudoMatching transform_type3(const Market& market, const PseudoMatching& m, int worker,
                               int bit);

/// Integral matching of the divisible market -> discrete matching. Throws on
/// non-integral input or broken column sums. When the input is stable, the
/// output is stable in the discrete market.
DiscreteMatching lift_to_discrete(const Market& market, const PseudoMatching& m);

/// Discrete matching -> integral continuum matching (unmatched mass at the
/// null firm).
PseudoMatching embed_discrete(const Market& market, const DiscreteMatching& mu);

}  // namespace stablematch
