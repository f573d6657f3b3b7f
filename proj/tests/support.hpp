// Independent helpers for tests: brute-force determinants and ranks that do not
// share code paths with the elimination kernels they check.
#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "congru/matrix.hpp"

namespace congru::testing {

/// Leibniz-formula determinant, for matrices up to about 8 x 8.
template <Field F>
typename F::Element leibniz_det(const Matrix<F>& m, const std::vector<std::size_t>& rows,
                                const std::vector<std::size_t>& cols) {
  const F& f = m.field();
  std::vector<std::size_t> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  auto det = f.zero();
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    auto term = f.one();
    for (std::size_t i = 0; i < perm.size() && !f.is_zero(term); ++i) term = f.mul(term, m(rows[i], cols[perm[i]]));
    det = inversions % 2 ? f.sub(det, term) : f.add(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

template <Field F>
typename F::Element leibniz_det(const Matrix<F>& m) {
  std::vector<std::size_t> idx(m.rows());
  std::iota(idx.begin(), idx.end(), 0);
  return leibniz_det(m, idx, idx);
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Rank as the largest size of a nonvanishing minor.
template <Field F>
std::size_t minor_rank(const Matrix<F>& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    for (const auto& r : rs)
      for (const auto& c : cs)
        if (!m.field().is_zero(leibniz_det(m, r, c))) return k;
  }
  return 0;
}

}  // namespace congru::testing
