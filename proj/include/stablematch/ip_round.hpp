#pragma once

#include <optional>
#include <vector>

#include "stablematch/continuum.hpp"
#include "stablematch/demand_type.hpp"
#include "stablematch/int_matrix.hpp"
#include "stablematch/market.hpp"
#include "stablematch/stable_search.hpp"

namespace stablematch {

enum class ColumnKind {
  kAcceptableSet,  // one of the firm's positively consumed sets
  kZeroColumn,     // the firm's slack when its consumption time is under 1
  kNullUnit,       // unit vector for a worker with unmatched mass
};

struct ColumnMeta {
  int owner = 0;  // firm index; m_firms stands for the null firm
  ColumnKind kind = ColumnKind::kAcceptableSet;
  int acceptable_index = -1;  // for kAcceptableSet
  int worker = -1;            // for kNullUnit
};

/// The linear system whose nonnegative solutions z with Bz = 1 are exactly the
/// balanced ways of snapping the seeding matching: one option per firm (rows
/// 0..m-1) and unit mass per worker (rows m..m+n-1). z_hat encodes the
/// seeding matching itself, so the polytope is never empty.
struct ConstraintSystem {
  int m_firms = 0;
  int n_workers = 0;
  IntMatrix B;  // (m+n) x K
  std::vector<ColumnMeta> meta;
  std::vector<Rational> z_hat;
};

/// Assemble the system from a verified stable matching of the divisible
/// market. Columns are ordered firm 0..m-1 then the null firm; within a firm,
/// positively consumed sets by ascending preference index, then the optional
/// zero column; null-firm unit columns by ascending worker. Throws
/// std::invalid_argument when the matching is not stable and std::logic_error
/// if the assembled system fails B z_hat = 1.
ConstraintSystem build_system(const Market& market, const PseudoMatching& matching);

struct VertexResult {
  std::vector<Rational> z;
  bool integral = false;
};

/// A basic feasible solution of {z | Bz = 1, z >= 0} by exact-rational
/// phase-I simplex under Bland's rule (entering variable: lowest index with
/// negative reduced cost; leaving: lowest basic index among the ratio ties).
/// Deterministic. Throws std::runtime_error when the system is infeasible.
VertexResult find_integral_vertex(const ConstraintSystem& sys);

/// Map an integral solution back to a matching: each firm takes the one
/// column selected for it (zero column = nothing), the null firm keeps the
/// selected unit masses. Throws std::invalid_argument unless z is a
/// nonnegative integral solution of Bz = 1.
PseudoMatching vertex_to_matching(const ConstraintSystem& sys, const std::vector<Rational>& z);

enum class SolveStatus {
  kStableMatchingFound,
  kNotTotallyUnimodular,
  kSearchExhausted,
};

struct SolveOptions {
  bool force = false;         // run the pipeline even when the demand type fails TU
  bool oracle_check = false;  // cross-validate the answer against the oracle
  SearchConfig search{};
  std::optional<PseudoMatching> seed_matching;  // user-supplied stable seed
};

struct SolveReport {
  SolveStatus status = SolveStatus::kSearchExhausted;
  DemandType demand_type;
  bool demand_type_tu = false;
  std::optional<TuWitness> tu_witness;
  bool demand_type_unimodular = false;
  std::optional<PseudoMatching> seed;
  std::optional<ConstraintSystem> system;
  std::vector<Rational> vertex;
  bool vertex_integral = false;
  std::optional<DiscreteMatching> matching;
};

/// The whole pipeline: demand type -> total unimodularity gate -> stable
/// seed -> constraint system -> integral vertex -> stable discrete matching.
/// The returned matching always passes the discrete stability check (a
/// failure there throws std::logic_error; it cannot be produced).
SolveReport solve(const Market& market, const SolveOptions& options = {});

}  // namespace stablematch
