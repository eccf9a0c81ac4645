#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "minorank/field.hpp"

namespace minorank {

class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(Field f, std::size_t rows, std::size_t cols);
  FieldMatrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries);
  static FieldMatrix from_rows(Field f, const std::vector<FieldVector>& rows, std::size_t cols);
  static FieldMatrix identity(Field f, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Elem v) { entries_[r * cols_ + c] = v; }
  const std::vector<Elem>& entries() const { return entries_; }
  FieldVector row(std::size_t r) const;
  FieldVector col(std::size_t c) const;

  FieldMatrix transpose() const;
  FieldMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  bool is_zero() const;

  bool operator==(const FieldMatrix& o) const = default;

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> entries_;
};

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix scaled(const FieldMatrix& a, Elem c);

std::size_t mat_rank(const FieldMatrix& m);

// Reduced row echelon form; pivots are the first nonzero column of each row.
struct EchelonForm {
  FieldMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};
EchelonForm rref(const FieldMatrix& m);

// Basis of the left nullspace {b : b^T m = 0}.
std::vector<FieldVector> nullspace_basis(const FieldMatrix& m);

// Basis of the right nullspace {x : m x = 0}.
std::vector<FieldVector> kernel_basis(const FieldMatrix& m);

struct DualBasis {
  std::vector<FieldVector> originals;
  std::vector<FieldVector> duals;
  std::vector<std::size_t> support;
};

// Duals a*_i supported on |support| = r coordinates with a*_i . a_j = delta_ij.
DualBasis dual_basis(const Field& f, const std::vector<FieldVector>& vectors);

// Coefficients c with sum_i c_i gens[i] = target, or nullopt.
std::optional<FieldVector> solve_combination(const Field& f, const std::vector<FieldVector>& gens,
                                             const FieldVector& target);

// Inverse of a square matrix, or nullopt when singular.
std::optional<FieldMatrix> inverse(const FieldMatrix& m);

// Indices of a maximal linearly independent subfamily, scanning in order.
std::vector<std::size_t> independent_subfamily(const Field& f, const std::vector<FieldVector>& vectors);

// Rows and columns of an r x r nonsingular submatrix, r = rank(m).
struct FullRankMinor {
  std::vector<std::size_t> rows, cols;
};
FullRankMinor full_rank_minor(const FieldMatrix& m);

// m = sum_i col_i (x) row_i with rank(m) terms.
struct RankFactorization {
  std::vector<FieldVector> cols, rows;
};
RankFactorization rank_factorization(const FieldMatrix& m);

}  // namespace minorank
