#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stablematch/errors.hpp"

namespace stablematch {

// Worker subsets are bitmasks over worker indices 0..n-1 (bit w = worker w).
// Markets here are desk scale; 32 workers is far beyond every enumeration cap.
using WorkerMask = std::uint32_t;

/// Firms are indices 0..m-1. The null firm (being unmatched) is kNullFirm.
inline constexpr int kNullFirm = -1;

inline bool mask_subset(WorkerMask a, WorkerMask b) { return (a & ~b) == 0; }

/// A firm's strict ranking of its acceptable worker sets, best first.
/// The empty set is implicit and ranks just below the last listed set;
/// sets never listed are unacceptable (below empty). Listed sets must be
/// nonempty and pairwise distinct.
struct FirmPreference {
  std::vector<WorkerMask> acceptable;

  int num_acceptable() const { return static_cast<int>(acceptable.size()); }

  /// Rank of a set: 0..L-1 for listed sets, L for the empty set, L+1 for
  /// anything unlisted. Lower is better.
  int rank_of(WorkerMask s) const;

  bool operator==(const FirmPreference&) const = default;
};

/// A worker's strict ranking of acceptable firms, best first. Unlisted firms
/// rank below the null firm.
struct WorkerPreference {
  std::vector<int> acceptable;

  bool operator==(const WorkerPreference&) const = default;
};

struct Market {
  int n_workers = 0;
  int m_firms = 0;
  std::vector<FirmPreference> firm_prefs;
  std::vector<WorkerPreference> worker_prefs;

  /// Throws std::invalid_argument if any structural invariant is broken
  /// (out-of-range ids, duplicate or empty listed sets, ...).
  void validate() const;

  /// Position of f in w's ranking: listed firms get their list index, the
  /// null firm len, unlisted firms len+1+f (a strict total order with every
  /// unacceptable firm below the null firm).
  int worker_rank(int w, int f) const;

  bool worker_accepts(int w, int f) const;               // f above null firm
  bool worker_weakly_prefers(int w, int f, int g) const;  // f at least as good as g

  bool operator==(const Market&) const = default;
};

/// Per-worker firm assignment (kNullFirm = unmatched). The firm-side view
/// matched_set() is derived, so the two-sided consistency of a matching
/// holds by construction.
struct DiscreteMatching {
  std::vector<int> assignment;

  bool operator==(const DiscreteMatching&) const = default;
};

WorkerMask matched_set(const DiscreteMatching& mu, int firm);

/// The firm's most preferred subset of `avail`: the first listed acceptable
/// set contained in it, or the empty set.
WorkerMask choose(const FirmPreference& pref, WorkerMask avail);

bool is_individually_rational(const Market& market, const DiscreteMatching& mu);

struct BlockingCoalition {
  int firm = 0;
  WorkerMask workers = 0;

  bool operator==(const BlockingCoalition&) const = default;
};

/// First blocking coalition in deterministic order: firms ascending, each
/// firm's acceptable sets in preference order. A listed set S blocks when it
/// beats the firm's current set and every member weakly prefers the firm to
/// her current match.
std::optional<BlockingCoalition> find_blocking_coalition(const Market& market,
                                                         const DiscreteMatching& mu);

bool is_stable(const Market& market, const DiscreteMatching& mu);

inline constexpr std::int64_t kDefaultEnumerationBudget = std::int64_t{1} << 20;

/// Brute-force oracle: every worker->firm/null assignment is tested for
/// stability. Assignments are visited (and results returned) in lexicographic
/// order, with the null firm ordered after all real firms. Throws
/// BudgetExceededError when (m+1)^n exceeds the budget.
std::vector<DiscreteMatching> enumerate_stable_matchings(
    const Market& market, std::int64_t budget = kDefaultEnumerationBudget);

/// Exhaustive substitutability test: every worker chosen from a set is still
/// chosen after any other single worker is removed.
bool is_substitutable(const FirmPreference& pref, int n_workers);

}  // namespace stablematch
