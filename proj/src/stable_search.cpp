#include "stablematch/stable_search.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace stablematch {

bool verify_stable_continuum(const Market& market, const PseudoMatching& m) {
  validate_pseudo_matching(market, m);
  return is_continuum_matching(m) && is_stable_pseudo(market, m);
}

namespace {

std::string state_key(const PseudoMatching& m) {
  std::string key;
  for (const auto& row : m.by_firm) {
    for (const auto& q : row) {
      key += to_string(q);
      key += ',';
    }
    key += ';';
  }
  return key;
}

// Move `amount` of worker w into firm f, drawing from the holders w likes
// least first (so only mass that prefers f gets moved when amount fits the
// strictly-worse pool).
void draw_mass(const Market& market, PseudoMatching& m, int f, int w, Rational amount) {
  std::vector<int> holders;  // m_firms = null firm, else firm index
  for (int g = 0; g <= market.m_firms; ++g) holders.push_back(g);
  std::sort(holders.begin(), holders.end(), [&](int a, int b) {
    int ra = a == market.m_firms ? market.worker_rank(w, kNullFirm) : market.worker_rank(w, a);
    int rb = b == market.m_firms ? market.worker_rank(w, kNullFirm) : market.worker_rank(w, b);
    return ra > rb;
  });
  for (int g : holders) {
    if (amount == 0) break;
    if (g == f) continue;
    Rational& held = m.by_firm[g][w];
    Rational take = std::min(held, amount);
    held -= take;
    m.firm(f)[w] += take;
    amount -= take;
  }
}

// One damped correction: make every firm individually rational (excess goes
// to the null firm), then let the lowest blocking firm move a sigma-fraction
// of the way toward its choice from what is available to it.
void tatonnement_step(const Market& market, PseudoMatching& m, const Rational& sigma) {
  for (int f = 0; f < market.m_firms; ++f) {
    Subpopulation kept = choose_continuum(market.firm_prefs[f], m.firm(f)).chosen;
    for (int w = 0; w < market.n_workers; ++w) {
      Rational excess = m.firm(f)[w] - kept[w];
      if (excess > 0) {
        m.null_firm()[w] += excess;
        m.firm(f)[w] = kept[w];
      }
    }
  }

  for (int f = 0; f < market.m_firms; ++f) {
    if (!firm_can_block(market, m, f)) continue;
    Subpopulation target =
        choose_continuum(market.firm_prefs[f], available_weak(market, m, f)).chosen;
    for (int w = 0; w < market.n_workers; ++w) {
      Rational delta = (target[w] - m.firm(f)[w]) * sigma;
      if (delta > 0) {
        draw_mass(market, m, f, w, delta);
      } else if (delta < 0) {
        m.firm(f)[w] += delta;
        m.null_firm()[w] -= delta;
      }
    }
    return;
  }
}

PseudoMatching random_assignment(const Market& market, std::mt19937& rng) {
  DiscreteMatching mu;
  mu.assignment.resize(market.n_workers);
  for (int w = 0; w < market.n_workers; ++w) {
    const auto& options = market.worker_prefs[w].acceptable;
    std::size_t pick = rng() % (options.size() + 1);
    mu.assignment[w] = pick == options.size() ? kNullFirm : options[pick];
  }
  return embed_discrete(market, mu);
}

}  // namespace

std::optional<PseudoMatching> find_stable_continuum(const Market& market,
                                                    const SearchConfig& config) {
  if (config.use_oracle_lift) {
    try {
      auto stable = enumerate_stable_matchings(market, config.oracle_budget);
      if (!stable.empty()) {
        PseudoMatching lifted = embed_discrete(market, stable.front());
        if (verify_stable_continuum(market, lifted)) return lifted;
      }
    } catch (const BudgetExceededError&) {
      // fall through to the local search
    }
  }

  if (!config.use_tatonnement) return std::nullopt;

  for (int restart = 0; restart < config.restarts; ++restart) {
    std::mt19937 rng(static_cast<std::uint32_t>(config.seed ^ (0x9e3779b9ull * restart)));
    PseudoMatching m = restart == 0 ? embed_discrete(market, DiscreteMatching{std::vector<int>(
                                          market.n_workers, kNullFirm)})
                                    : random_assignment(market, rng);
    Rational sigma = 1;
    std::set<std::string> seen;
    for (int iter = 0; iter < config.max_iterations; ++iter) {
      if (verify_stable_continuum(market, m)) return m;
      tatonnement_step(market, m, sigma);
      if (!seen.insert(state_key(m)).second) {
        sigma /= 2;
        seen.clear();
        if (denominator(sigma) > (BigInt(1) << 16)) break;
      }
    }
    if (verify_stable_continuum(market, m)) return m;
  }
  return std::nullopt;
}

}  // namespace stablematch
