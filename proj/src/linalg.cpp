#include "sidec/linalg.hpp"

#include <numeric>
#include <utility>

namespace sidec {

Elimination eliminate(const ExactMatrix& input) {
  Elimination e;
  e.reduced = input;
  ExactMatrix& m = e.reduced;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  e.column_order.resize(cols);
  std::iota(e.column_order.begin(), e.column_order.end(), std::size_t{0});

  std::vector<std::size_t> support;
  std::size_t k = 0;
  for (; k < rows && k < cols; ++k) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = k; i < rows && pr == rows; ++i) {
      for (std::size_t j = k; j < cols; ++j) {
        if (!m(i, j).is_zero()) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr == rows) break;

    if (pr != k) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pr, j), m(k, j));
    }
    if (pc != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, pc), m(i, k));
      std::swap(e.column_order[pc], e.column_order[k]);
    }

    const GaussianRational pivot = m(k, k);
    support.clear();
    for (std::size_t j = k; j < cols; ++j) {
      if (!m(k, j).is_zero()) {
        m(k, j) /= pivot;
        support.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == k || m(i, k).is_zero()) continue;
      const GaussianRational factor = m(i, k);
      for (std::size_t j : support) m(i, j) -= factor * m(k, j);
    }
  }
  e.rank = k;
  return e;
}

std::size_t rank(const ExactMatrix& m) { return eliminate(m).rank; }

std::vector<ExactMatrix> kernel_basis(const ExactMatrix& m) {
  const Elimination e = eliminate(m);
  const std::size_t cols = m.cols();
  std::vector<ExactMatrix> basis;
  basis.reserve(cols - e.rank);
  for (std::size_t f = e.rank; f < cols; ++f) {
    ExactMatrix v(cols, 1);
    v(e.column_order[f], 0) = 1;
    for (std::size_t p = 0; p < e.rank; ++p) {
      const GaussianRational& x = e.reduced(p, f);
      if (!x.is_zero()) v(e.column_order[p], 0) = -x;
    }
    // Scale so the first nonzero entry is 1.
    for (std::size_t i = 0; i < cols; ++i) {
      if (v(i, 0).is_zero()) continue;
      if (v(i, 0) != GaussianRational(1)) v *= GaussianRational(1) / v(i, 0);
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

ExactMatrix inverse(const ExactMatrix& input) {
  if (!input.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = input.rows();
  ExactMatrix a = input;
  ExactMatrix inv = ExactMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n;
    for (std::size_t i = k; i < n; ++i) {
      if (!a(i, k).is_zero()) {
        pr = i;
        break;
      }
    }
    if (pr == n) throw SingularMatrixError(kernel_basis(input).front());
    if (pr != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pr, j), a(k, j));
        std::swap(inv(pr, j), inv(k, j));
      }
    }
    const GaussianRational pivot = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(k, j).is_zero()) a(k, j) /= pivot;
      if (!inv(k, j).is_zero()) inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const GaussianRational factor = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(k, j).is_zero()) a(i, j) -= factor * a(k, j);
        if (!inv(k, j).is_zero()) inv(i, j) -= factor * inv(k, j);
      }
    }
  }
  return inv;
}

std::vector<std::size_t> weyr_sequence(const ExactMatrix& m, const GaussianRational& alpha) {
  if (!m.is_square()) throw DimensionError("weyr_sequence of a non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= alpha;
  std::vector<std::size_t> seq{n};
  ExactMatrix power = ExactMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (seq.back() == 0) {
      seq.push_back(0);
      continue;
    }
    power = power * shifted;
    seq.push_back(rank(power));
  }
  return seq;
}

std::vector<std::size_t> jordan_block_sizes(const std::vector<std::size_t>& weyr) {
  // blocks of size >= k: weyr[k-1] - weyr[k]
  std::vector<std::size_t> sizes;
  for (std::size_t k = weyr.size() - 1; k >= 1; --k) {
    std::size_t at_least_k = weyr[k - 1] - weyr[k];
    std::size_t at_least_next = k + 1 < weyr.size() ? weyr[k] - weyr[k + 1] : 0;
    for (std::size_t c = 0; c < at_least_k - at_least_next; ++c) sizes.push_back(k);
  }
  return sizes;
}

ExactMatrix stack_vectorized(const std::vector<ExactMatrix>& ms) {
  if (ms.empty()) return {};
  const std::size_t len = ms.front().rows() * ms.front().cols();
  ExactMatrix s(ms.size(), len);
  for (std::size_t r = 0; r < ms.size(); ++r) {
    if (ms[r].rows() * ms[r].cols() != len) throw DimensionError("stack_vectorized: shape mismatch");
    auto e = ms[r].entries();
    for (std::size_t c = 0; c < len; ++c) s(r, c) = e[c];
  }
  return s;
}

}  // namespace sidec
