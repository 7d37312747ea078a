#include "vfg/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace vfg {

namespace {

// row_dst += factor * row_src over columns [from, cols).
void axpy(const FiniteField& f, FieldElement factor, std::span<const FieldElement> src, std::span<FieldElement> dst,
          std::size_t from) {
  for (std::size_t c = from; c < dst.size(); ++c) {
    if (!src[c].is_zero()) dst[c] = f.add(dst[c], f.mul(factor, src[c]));
  }
}

}  // namespace

std::vector<FieldElement> Matrix::apply(std::span<const FieldElement> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<FieldElement> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    FieldElement acc;
    for (std::size_t c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul((*this)(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

std::size_t rank(Matrix m) {
  const FiniteField& f = m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r) {
      for (std::size_t k = c; k < m.cols(); ++k) std::swap(m(pivot, k), m(r, k));
    }
    const FieldElement inv = f.inv(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      axpy(f, f.neg(f.mul(m(i, c), inv)), m.row(r), m.row(i), c);
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<FieldElement>> solve(Matrix a, std::span<const FieldElement> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve expects a square system");
  const FiniteField& f = a.field();
  std::vector<FieldElement> rhs(b.begin(), b.end());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c) {
      for (std::size_t k = c; k < n; ++k) std::swap(a(pivot, k), a(c, k));
      std::swap(rhs[pivot], rhs[c]);
    }
    const FieldElement inv = f.inv(a(c, c));
    if (inv != f.one()) {
      for (std::size_t k = c; k < n; ++k) a(c, k) = f.mul(a(c, k), inv);
      rhs[c] = f.mul(rhs[c], inv);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const FieldElement factor = f.neg(a(i, c));
      axpy(f, factor, a.row(c), a.row(i), c);
      rhs[i] = f.add(rhs[i], f.mul(factor, rhs[c]));
    }
  }
  return rhs;
}

std::vector<std::vector<FieldElement>> nullspace(Matrix m) {
  const FiniteField& f = m.field();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(r, k));
    }
    const FieldElement inv = f.inv(m(r, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = f.mul(m(r, k), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      axpy(f, f.neg(m(i, c)), m.row(r), m.row(i), c);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<FieldElement>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(m.cols());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = f.neg(m(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(BitMatrix m) {
  const std::size_t words = m.words_per_row();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t pivot = r;
    while (pivot < m.rows() && !(m.row(pivot)[w] & bit)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r) {
      for (std::size_t k = 0; k < words; ++k) std::swap(m.row(pivot)[k], m.row(r)[k]);
    }
    const std::uint64_t* src = m.row(r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      std::uint64_t* dst = m.row(i);
      if (dst[w] & bit) {
        for (std::size_t k = w; k < words; ++k) dst[k] ^= src[k];
      }
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<bool>> solve(BitMatrix a, const std::vector<bool>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve expects a square system");
  // Augment with the right-hand side as an extra column.
  BitMatrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < a.words_per_row(); ++k) aug.row(r)[k] = a.row(r)[k];
    aug.set(r, n, b[r]);
  }
  const std::size_t words = aug.words_per_row();
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t pivot = c;
    while (pivot < n && !(aug.row(pivot)[w] & bit)) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c) {
      for (std::size_t k = 0; k < words; ++k) std::swap(aug.row(pivot)[k], aug.row(c)[k]);
    }
    const std::uint64_t* src = aug.row(c);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t* dst = aug.row(i);
      if (i != c && (dst[w] & bit)) {
        for (std::size_t k = w; k < words; ++k) dst[k] ^= src[k];
      }
    }
  }
  std::vector<bool> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug.get(r, n);
  return x;
}

std::vector<FieldElement> RowEchelon::reduce(std::span<const FieldElement> v) const {
  if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  std::vector<FieldElement> w(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const FieldElement c = w[pivots_[i]];
    if (c.is_zero()) continue;
    axpy(field_, field_.neg(c), rows_[i], w, 0);
  }
  return w;
}

bool RowEchelon::contains(std::span<const FieldElement> v) const {
  for (auto c : reduce(v)) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool RowEchelon::insert(std::span<const FieldElement> v) {
  std::vector<FieldElement> w = reduce(v);
  std::size_t pivot = 0;
  while (pivot < dim_ && w[pivot].is_zero()) ++pivot;
  if (pivot == dim_) return false;
  const FieldElement inv = field_.inv(w[pivot]);
  for (auto& c : w) c = field_.mul(c, inv);
  // Keep the basis fully reduced: clear the new pivot from existing rows.
  for (auto& row : rows_) {
    const FieldElement c = row[pivot];
    if (!c.is_zero()) axpy(field_, field_.neg(c), w, row, 0);
  }
  auto pos = std::size_t{0};
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
  return true;
}

}  // namespace vfg
