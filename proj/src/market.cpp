#include "stablematch/market.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stablematch {

int FirmPreference::rank_of(WorkerMask s) const {
  for (std::size_t i = 0; i < acceptable.size(); ++i) {
    if (acceptable[i] == s) return static_cast<int>(i);
  }
  int empty_rank = static_cast<int>(acceptable.size());
  return s == 0 ? empty_rank : empty_rank + 1;
}

void Market::validate() const {
  if (n_workers < 0 || m_firms < 0) throw std::invalid_argument("negative market size");
  if (n_workers > 31) throw std::invalid_argument("too many workers for mask representation");
  if (static_cast<int>(firm_prefs.size()) != m_firms)
    throw std::invalid_argument("firm_prefs size does not match m_firms");
  if (static_cast<int>(worker_prefs.size()) != n_workers)
    throw std::invalid_argument("worker_prefs size does not match n_workers");

  const WorkerMask all = n_workers == 0 ? 0 : (WorkerMask{1} << n_workers) - 1;
  for (const auto& pref : firm_prefs) {
    std::set<WorkerMask> seen;
    for (WorkerMask s : pref.acceptable) {
      if (s == 0) throw std::invalid_argument("empty set listed as acceptable");
      if (!mask_subset(s, all)) throw std::invalid_argument("acceptable set references unknown worker");
      if (!seen.insert(s).second) throw std::invalid_argument("duplicate acceptable set");
    }
  }
  for (const auto& pref : worker_prefs) {
    std::set<int> seen;
    for (int f : pref.acceptable) {
      if (f < 0 || f >= m_firms) throw std::invalid_argument("worker ranks unknown firm");
      if (!seen.insert(f).second) throw std::invalid_argument("duplicate firm in worker preference");
    }
  }
}

int Market::worker_rank(int w, int f) const {
  const auto& list = worker_prefs[w].acceptable;
  int len = static_cast<int>(list.size());
  if (f == kNullFirm) return len;
  for (int i = 0; i < len; ++i) {
    if (list[i] == f) return i;
  }
  return len + 1 + f;
}

bool Market::worker_accepts(int w, int f) const {
  return worker_rank(w, f) < worker_rank(w, kNullFirm);
}

bool Market::worker_weakly_prefers(int w, int f, int g) const {
  return worker_rank(w, f) <= worker_rank(w, g);
}

WorkerMask matched_set(const DiscreteMatching& mu, int firm) {
  WorkerMask s = 0;
  for (std::size_t w = 0; w < mu.assignment.size(); ++w) {
    if (mu.assignment[w] == firm) s |= WorkerMask{1} << w;
  }
  return s;
}

WorkerMask choose(const FirmPreference& pref, WorkerMask avail) {
  for (WorkerMask s : pref.acceptable) {
    if (mask_subset(s, avail)) return s;
  }
  return 0;
}

bool is_individually_rational(const Market& market, const DiscreteMatching& mu) {
  for (int w = 0; w < market.n_workers; ++w) {
    int f = mu.assignment[w];
    if (f != kNullFirm && !market.worker_accepts(w, f)) return false;
  }
  for (int f = 0; f < market.m_firms; ++f) {
    WorkerMask s = matched_set(mu, f);
    if (choose(market.firm_prefs[f], s) != s) return false;
  }
  return true;
}

std::optional<BlockingCoalition> find_blocking_coalition(const Market& market,
                                                         const DiscreteMatching& mu) {
  for (int f = 0; f < market.m_firms; ++f) {
    const auto& pref = market.firm_prefs[f];
    WorkerMask current = matched_set(mu, f);
    int current_rank = pref.rank_of(current);

    // Workers that weakly prefer f to their current match.
    WorkerMask willing = 0;
    for (int w = 0; w < market.n_workers; ++w) {
      if (market.worker_weakly_prefers(w, f, mu.assignment[w])) willing |= WorkerMask{1} << w;
    }

    for (int k = 0; k < current_rank && k < pref.num_acceptable(); ++k) {
      if (mask_subset(pref.acceptable[k], willing)) {
        return BlockingCoalition{f, pref.acceptable[k]};
      }
    }
  }
  return std::nullopt;
}

bool is_stable(const Market& market, const DiscreteMatching& mu) {
  return is_individually_rational(market, mu) && !find_blocking_coalition(market, mu);
}

std::vector<DiscreteMatching> enumerate_stable_matchings(const Market& market,
                                                         std::int64_t budget) {
  const int n = market.n_workers;
  const int m = market.m_firms;

  std::int64_t total = 1;
  for (int w = 0; w < n; ++w) {
    total *= m + 1;
    if (total > budget) {
      throw BudgetExceededError("stable-matching enumeration over budget: (m+1)^n > " +
                                std::to_string(budget));
    }
  }

  std::vector<DiscreteMatching> stable;
  // Digits run 0..m per worker, with m standing for the null firm so that
  // unmatched sorts after every real firm.
  std::vector<int> digits(n, 0);
  DiscreteMatching mu;
  mu.assignment.assign(n, 0);
  for (std::int64_t it = 0; it < total; ++it) {
    for (int w = 0; w < n; ++w) mu.assignment[w] = digits[w] == m ? kNullFirm : digits[w];
    if (is_stable(market, mu)) stable.push_back(mu);

    for (int w = n - 1; w >= 0; --w) {
      if (++digits[w] <= m) break;
      digits[w] = 0;
    }
  }
  return stable;
}

bool is_substitutable(const FirmPreference& pref, int n_workers) {
  const WorkerMask all = n_workers == 0 ? 0 : (WorkerMask{1} << n_workers) - 1;
  for (WorkerMask s = 0; s <= all; ++s) {
    WorkerMask chosen = choose(pref, s);
    if (chosen == 0) continue;
    for (int wp = 0; wp < n_workers; ++wp) {
      WorkerMask other = WorkerMask{1} << wp;
      if (!(s & other)) continue;
      WorkerMask kept = choose(pref, s & ~other);
      // Every chosen worker other than wp must survive wp's removal.
      if ((chosen & ~other & ~kept) != 0) return false;
    }
    if (s == all) break;  // avoid wrap when n_workers == 32
  }
  return true;
}

}  // namespace stablematch
