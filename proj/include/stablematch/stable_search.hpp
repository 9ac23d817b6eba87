#pragma once

#include <cstdint>
#include <optional>

#include "stablematch/continuum.hpp"
#include "stablematch/market.hpp"

namespace stablematch {

struct SearchConfig {
  int max_iterations = 400;
  int restarts = 8;
  std::uint64_t seed = 0;
  bool use_oracle_lift = true;
  bool use_tatonnement = true;
  std::int64_t oracle_budget = kDefaultEnumerationBudget;
};

/// True iff m is a matching of the divisible market (unit column sums) and
/// stable. Throws std::invalid_argument on shape/range violations.
bool verify_stable_continuum(const Market& market, const PseudoMatching& m);

/// Best-effort search for a stable matching of the divisible market. Tries,
/// in order: lifting a stable matching found by the discrete oracle (always
/// stable in the divisible market), then damped tatonnement from seeded
/// starting points where the lowest blocking firm repeatedly moves toward its
/// preferred achievable assignment, with the step size halving whenever a
/// state repeats. Every candidate is verified before being returned; nullopt
/// means the budget ran out, never that no stable matching exists.
std::optional<PseudoMatching> find_stable_continuum(const Market& market,
                                                    const SearchConfig& config = {});

}  // namespace stablematch
