#pragma once

#include <vector>

#include "stablematch/int_matrix.hpp"
#include "stablematch/market.hpp"

namespace stablematch {

/// Difference of two chosen sets as availability grows: entries in {-1,0,+1},
/// never the zero vector.
using DemandVector = std::vector<int>;

/// A deduplicated set of demand vectors in canonical (descending
/// lexicographic) order.
struct DemandType {
  std::vector<DemandVector> vectors;

  bool contains(const DemandVector& d) const;
  bool operator==(const DemandType&) const = default;
};

/// Exact demand type by iterating every nested pair S' strictly inside S and
/// collecting the nonzero choice differences. Exponential; throws
/// BudgetExceededError above max_workers.
DemandType demand_type_bruteforce(const FirmPreference& pref, int n_workers,
                                  int max_workers = 16);

/// Polynomial extraction: for acceptable sets S and choice-fixed-point sets
/// S' (the empty set included), ind(S) - ind(S') is a demand vector exactly
/// when S = Ch(S u S'). Agrees with demand_type_bruteforce everywhere.
DemandType demand_type_fast(const FirmPreference& pref, int n_workers);

/// Union over all firms.
DemandType market_demand_type(const Market& market);

/// The demand vectors as matrix columns, in canonical order.
IntMatrix demand_type_matrix(const DemandType& dt, int n_workers);

std::string to_string(const DemandVector& d);
std::string to_string(const DemandType& dt);

}  // namespace stablematch
