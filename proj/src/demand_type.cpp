#include "stablematch/demand_type.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace stablematch {

namespace {

using DemandSet = std::set<DemandVector, std::greater<DemandVector>>;

DemandVector difference(WorkerMask chosen, WorkerMask chosen_sub, int n) {
  DemandVector d(n, 0);
  for (int w = 0; w < n; ++w) {
    WorkerMask bit = WorkerMask{1} << w;
    d[w] = ((chosen & bit) ? 1 : 0) - ((chosen_sub & bit) ? 1 : 0);
  }
  return d;
}

bool is_zero(const DemandVector& d) {
  return std::all_of(d.begin(), d.end(), [](int v) { return v == 0; });
}

DemandType from_set(DemandSet&& s) {
  DemandType dt;
  dt.vectors.assign(s.begin(), s.end());
  return dt;
}

}  // namespace

bool DemandType::contains(const DemandVector& d) const {
  return std::find(vectors.begin(), vectors.end(), d) != vectors.end();
}

DemandType demand_type_bruteforce(const FirmPreference& pref, int n_workers,
                                  int max_workers) {
  if (n_workers > max_workers) {
    throw BudgetExceededError("demand type brute force over budget: n > " +
                              std::to_string(max_workers));
  }
  const WorkerMask all = n_workers == 0 ? 0 : (WorkerMask{1} << n_workers) - 1;

  std::vector<WorkerMask> chosen(static_cast<std::size_t>(all) + 1);
  for (WorkerMask s = 0; s <= all; ++s) {
    chosen[s] = choose(pref, s);
    if (s == all) break;
  }

  DemandSet out;
  for (WorkerMask s = 1; s <= all; ++s) {
    // Proper submasks of s, the empty set included.
    WorkerMask sub = (s - 1) & s;
    while (true) {
      DemandVector d = difference(chosen[s], chosen[sub], n_workers);
      if (!is_zero(d)) out.insert(std::move(d));
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
    if (s == all) break;
  }
  return from_set(std::move(out));
}

DemandType demand_type_fast(const FirmPreference& pref, int n_workers) {
  // Candidate lower sets: acceptable sets that are fixed points of the
  // choice function, plus the empty set.
  std::vector<WorkerMask> lower{0};
  for (WorkerMask u : pref.acceptable) {
    if (choose(pref, u) == u) lower.push_back(u);
  }

  DemandSet out;
  for (WorkerMask s : pref.acceptable) {
    for (WorkerMask sub : lower) {
      if (sub == s) continue;
      if (choose(pref, s | sub) != s) continue;
      out.insert(difference(s, sub, n_workers));
    }
  }
  return from_set(std::move(out));
}

DemandType market_demand_type(const Market& market) {
  DemandSet out;
  for (const auto& pref : market.firm_prefs) {
    DemandType dt = demand_type_fast(pref, market.n_workers);
    out.insert(dt.vectors.begin(), dt.vectors.end());
  }
  return from_set(std::move(out));
}

IntMatrix demand_type_matrix(const DemandType& dt, int n_workers) {
  IntMatrix m(n_workers, static_cast<int>(dt.vectors.size()));
  for (int c = 0; c < m.cols; ++c) {
    for (int r = 0; r < n_workers; ++r) m.at(r, c) = dt.vectors[c][r];
  }
  return m;
}

std::string to_string(const DemandVector& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(d[i]);
  }
  s += ')';
  return s;
}

std::string to_string(const DemandType& dt) {
  std::string s = "{";
  for (std::size_t i = 0; i < dt.vectors.size(); ++i) {
    if (i > 0) s += ',';
    s += to_string(dt.vectors[i]);
  }
  s += '}';
  return s;
}

}  // namespace stablematch
