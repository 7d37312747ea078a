#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vfg/finite_field.hpp"

namespace vfg {

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix(FiniteField field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

  const FiniteField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<FieldElement> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const FieldElement> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<FieldElement> apply(std::span<const FieldElement> v) const;

 private:
  FiniteField field_;
  std::size_t rows_, cols_;
  std::vector<FieldElement> data_;
};

std::size_t rank(Matrix m);
/// The unique x with a x = b, or nullopt when a (square) is singular.
std::optional<std::vector<FieldElement>> solve(Matrix a, std::span<const FieldElement> b);
/// Basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<FieldElement>> nullspace(Matrix m);

/// Matrix over GF(2) with each row packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return (data_[r * words_ + c / 64] >> (c % 64)) & 1u; }
  void set(std::size_t r, std::size_t c, bool v) {
    auto& w = data_[r * words_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
  }
  std::uint64_t* row(std::size_t r) { return data_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }
  std::size_t words_per_row() const { return words_; }

 private:
  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> data_;
};

/// Word-parallel Gaussian elimination.
std::size_t rank(BitMatrix m);
std::optional<std::vector<bool>> solve(BitMatrix a, const std::vector<bool>& b);

/// Reduced row-echelon basis of a growing subspace of F^dim.
class RowEchelon {
 public:
  RowEchelon(FiniteField field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  /// Adds v to the span; returns false when v was already in it.
  bool insert(std::span<const FieldElement> v);
  bool contains(std::span<const FieldElement> v) const;
  /// v minus its projection onto the span along the pivots.
  std::vector<FieldElement> reduce(std::span<const FieldElement> v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::vector<FieldElement>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const FiniteField& field() const { return field_; }

 private:
  FiniteField field_;
  std::size_t dim_;
  std::vector<std::vector<FieldElement>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace vfg
