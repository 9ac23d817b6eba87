#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stablematch/errors.hpp"

namespace stablematch {

/// Dense integer matrix, row major. All arithmetic on it is exact; products
/// run through 128-bit intermediates and throw std::overflow_error rather
/// than wrap.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<long long> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  long long& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  long long at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  IntMatrix submatrix(const std::vector<int>& row_indices,
                      const std::vector<int>& col_indices) const;
  std::vector<long long> column(int c) const;

  bool operator==(const IntMatrix&) const = default;
};

/// Exact determinant of a square matrix (Bareiss fraction-free elimination).
long long determinant(const IntMatrix& m);

struct TuBudget {
  int max_order = 12;
  std::int64_t max_submatrices = std::int64_t{1} << 24;
};

/// A square submatrix whose determinant falls outside {-1,0,1}.
struct TuWitness {
  std::vector<int> row_indices;
  std::vector<int> col_indices;
  long long det = 0;
};

struct TuResult {
  bool is_tu = false;
  std::optional<TuWitness> witness;
};

/// Totally unimodular test by exhaustive determinant enumeration, ascending
/// by submatrix order (so the first witness found is minimal and the check
/// stops there). Throws BudgetExceededError when the submatrix count exceeds
/// the budget before a verdict is reached.
TuResult is_totally_unimodular(const IntMatrix& m, const TuBudget& budget = {});

/// Unimodularity of the column set: every linearly independent subset of
/// columns extends to an integer basis of determinant +-1. Decided by
/// reducing the rows to a lattice basis with unimodular row operations and
/// testing all maximal column minors of the reduced matrix.
bool is_unimodular(const IntMatrix& m, const TuBudget& budget = {});

/// Rank plus the nonzero rows left by unimodular integer row reduction
/// (row-style echelon form over Z). Exposed for the unimodularity test and
/// for diagnostics.
IntMatrix integer_row_reduce(const IntMatrix& m);

}  // namespace stablematch
