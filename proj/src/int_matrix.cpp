#include "stablematch/int_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace stablematch {

namespace {

constexpr long long kLimit = std::int64_t{1} << 62;

long long checked(__int128 v) {
  if (v > kLimit || v < -kLimit) throw std::overflow_error("integer matrix arithmetic overflow");
  return static_cast<long long>(v);
}

long long mul(long long a, long long b) { return checked(static_cast<__int128>(a) * b); }

// Next k-combination of {0..n-1} in lexicographic order; false when done.
bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> first_combination(int k) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

// C(n,k) capped so budget comparisons cannot overflow.
std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows; ++r) {
    if (static_cast<int>(rows[r].size()) != m.cols)
      throw std::invalid_argument("ragged row list");
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::submatrix(const std::vector<int>& row_indices,
                               const std::vector<int>& col_indices) const {
  IntMatrix m(static_cast<int>(row_indices.size()), static_cast<int>(col_indices.size()));
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = at(row_indices[r], col_indices[c]);
  }
  return m;
}

std::vector<long long> IntMatrix::column(int c) const {
  std::vector<long long> v(rows);
  for (int r = 0; r < rows; ++r) v[r] = at(r, c);
  return v;
}

long long determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;

  IntMatrix a = m;
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a.at(i, k) != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(pivot, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        __int128 num = static_cast<__int128>(a.at(i, j)) * a.at(k, k) -
                       static_cast<__int128>(a.at(i, k)) * a.at(k, j);
        a.at(i, j) = checked(num / prev);  // Bareiss: division is exact
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

TuResult is_totally_unimodular(const IntMatrix& m, const TuBudget& budget) {
  // 1x1 pass doubles as the fast entry reject.
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (std::llabs(m.at(r, c)) > 1) {
        return {false, TuWitness{{r}, {c}, m.at(r, c)}};
      }
    }
  }

  int max_k = std::min(m.rows, m.cols);
  if (max_k > budget.max_order)
    throw BudgetExceededError("total unimodularity: matrix order above budget");
  std::int64_t total = 0;
  for (int k = 1; k <= max_k; ++k) {
    std::int64_t rk = binomial_capped(m.rows, k, budget.max_submatrices);
    std::int64_t ck = binomial_capped(m.cols, k, budget.max_submatrices);
    if (rk > budget.max_submatrices / std::max<std::int64_t>(ck, 1)) {
      throw BudgetExceededError("total unimodularity: submatrix count above budget");
    }
    total += rk * ck;
    if (total > budget.max_submatrices)
      throw BudgetExceededError("total unimodularity: submatrix count above budget");
  }

  for (int k = 2; k <= max_k; ++k) {
    auto rows_idx = first_combination(k);
    do {
      auto cols_idx = first_combination(k);
      do {
        long long det = determinant(m.submatrix(rows_idx, cols_idx));
        if (det < -1 || det > 1) {
          return {false, TuWitness{rows_idx, cols_idx, det}};
        }
      } while (next_combination(cols_idx, m.cols));
    } while (next_combination(rows_idx, m.rows));
  }
  return {true, std::nullopt};
}

IntMatrix integer_row_reduce(const IntMatrix& m) {
  IntMatrix a = m;
  int pivot_row = 0;
  for (int c = 0; c < a.cols && pivot_row < a.rows; ++c) {
    // Euclidean elimination in column c over rows pivot_row..rows-1.
    while (true) {
      int best = -1;
      for (int i = pivot_row; i < a.rows; ++i) {
        if (a.at(i, c) != 0 && (best < 0 || std::llabs(a.at(i, c)) < std::llabs(a.at(best, c))))
          best = i;
      }
      if (best < 0) break;
      if (best != pivot_row) {
        for (int j = 0; j < a.cols; ++j) std::swap(a.at(pivot_row, j), a.at(best, j));
      }
      bool clean = true;
      for (int i = pivot_row + 1; i < a.rows; ++i) {
        if (a.at(i, c) == 0) continue;
        long long q = a.at(i, c) / a.at(pivot_row, c);
        for (int j = 0; j < a.cols; ++j) {
          a.at(i, j) = checked(static_cast<__int128>(a.at(i, j)) -
                               static_cast<__int128>(q) * a.at(pivot_row, j));
        }
        if (a.at(i, c) != 0) clean = false;
      }
      if (clean) {
        ++pivot_row;
        break;
      }
    }
  }

  IntMatrix reduced(pivot_row, a.cols);
  for (int r = 0; r < pivot_row; ++r) {
    for (int c = 0; c < a.cols; ++c) reduced.at(r, c) = a.at(r, c);
  }
  return reduced;
}

bool is_unimodular(const IntMatrix& m, const TuBudget& budget) {
  if (m.cols == 0) return true;

  IntMatrix r = integer_row_reduce(m);
  int rank = r.rows;
  if (rank == 0) return true;  // only zero columns; the empty subset extends trivially

  // Full-row-rank criterion on the reduced matrix: every rank x rank column
  // submatrix must have determinant 0 or +-1.
  std::int64_t count = binomial_capped(m.cols, rank, budget.max_submatrices);
  if (count > budget.max_submatrices)
    throw BudgetExceededError("unimodularity: column subset count above budget");

  std::vector<int> all_rows(rank);
  for (int i = 0; i < rank; ++i) all_rows[i] = i;
  auto cols_idx = first_combination(rank);
  do {
    long long det = determinant(r.submatrix(all_rows, cols_idx));
    if (det < -1 || det > 1) return false;
  } while (next_combination(cols_idx, m.cols));
  return true;
}

}  // namespace stablematch
