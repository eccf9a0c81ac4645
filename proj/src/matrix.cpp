#include "minorank/matrix.hpp"

#include <utility>

#include "minorank/errors.hpp"
#include "minorank/kernels.hpp"
#include "minorank/span_basis.hpp"

namespace minorank {

FieldMatrix::FieldMatrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(f), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) fail(ErrorKind::InvalidInput, "matrix entry count mismatch");
  for (Elem& e : entries_) e = Elem(e % f.p());
}

FieldMatrix FieldMatrix::from_rows(Field f, const std::vector<FieldVector>& rows, std::size_t cols) {
  FieldMatrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorKind::InvalidInput, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

FieldMatrix FieldMatrix::identity(Field f, std::size_t n) {
  FieldMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FieldVector FieldMatrix::row(std::size_t r) const {
  return FieldVector(entries_.begin() + long(r * cols_), entries_.begin() + long((r + 1) * cols_));
}

FieldVector FieldMatrix::col(std::size_t c) const {
  FieldVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

FieldMatrix FieldMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  FieldMatrix s(field_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s.set(i, j, at(rows[i], cols[j]));
  return s;
}

bool FieldMatrix::is_zero() const { return minorank::is_zero(entries_); }

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::InvalidInput, "shape mismatch");
  std::vector<Elem> e = a.entries();
  kernels::axpy_mod(e.data(), b.entries().data(), 1, Elem(a.field().p()), e.size());
  return FieldMatrix(a.field(), a.rows(), a.cols(), std::move(e));
}

FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
  return a + scaled(b, a.field().neg(1));
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::InvalidInput, "shape mismatch");
  const Field& f = a.field();
  FieldMatrix c(f, a.rows(), b.cols());
  std::vector<Elem> row(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(row.begin(), row.end(), Elem(0));
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem s = a.at(i, k);
      if (s) kernels::axpy_mod(row.data(), b.entries().data() + k * b.cols(), s, Elem(f.p()), b.cols());
    }
    for (std::size_t j = 0; j < b.cols(); ++j) c.set(i, j, row[j]);
  }
  return c;
}

FieldMatrix scaled(const FieldMatrix& a, Elem c) {
  std::vector<Elem> e = a.entries();
  for (Elem& x : e) x = a.field().mul(x, c);
  return FieldMatrix(a.field(), a.rows(), a.cols(), std::move(e));
}

std::size_t mat_rank(const FieldMatrix& m) {
  SpanBasis b(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows() && b.dimension() < m.cols(); ++r) b.insert(m.row(r));
  return b.dimension();
}

EchelonForm rref(const FieldMatrix& m) {
  const Field& f = m.field();
  const Elem p = Elem(f.p());
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<Elem> a = m.entries();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && a[piv * C + c] == 0) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(a[piv * C + j], a[r * C + j]);
    Elem s = f.inv(a[r * C + c]);
    for (std::size_t j = 0; j < C; ++j) a[r * C + j] = f.mul(a[r * C + j], s);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r) continue;
      Elem e = a[i * C + c];
      if (e) kernels::axpy_mod(a.data() + i * C, a.data() + r * C, Elem(p - e), p, C);
    }
    pivots.push_back(c);
    ++r;
  }
  return {FieldMatrix(f, R, C, std::move(a)), std::move(pivots)};
}

std::vector<FieldVector> kernel_basis(const FieldMatrix& m) {
  const Field& f = m.field();
  EchelonForm e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<FieldVector> basis;
  for (std::size_t fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    FieldVector x(m.cols(), 0);
    x[fc] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = f.neg(e.reduced.at(i, fc));
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<FieldVector> nullspace_basis(const FieldMatrix& m) { return kernel_basis(m.transpose()); }

std::optional<FieldMatrix> inverse(const FieldMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  FieldMatrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, n + i, 1);
  }
  EchelonForm e = rref(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  FieldMatrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, e.reduced.at(i, n + j));
  return inv;
}

DualBasis dual_basis(const Field& f, const std::vector<FieldVector>& vectors) {
  DualBasis out;
  out.originals = vectors;
  if (vectors.empty()) return out;
  const std::size_t r = vectors.size(), n = vectors[0].size();
  FieldMatrix M = FieldMatrix::from_rows(f, vectors, n);
  EchelonForm e = rref(M);
  if (e.rank() < r) fail(ErrorKind::DependentInput, "dual_basis needs linearly independent vectors");
  out.support = e.pivots;
  FieldMatrix MS = M.submatrix([&] {
    std::vector<std::size_t> all(r);
    for (std::size_t i = 0; i < r; ++i) all[i] = i;
    return all;
  }(), out.support);
  auto DS = inverse(MS.transpose());
  if (!DS) fail(ErrorKind::DependentInput, "singular support block");
  for (std::size_t i = 0; i < r; ++i) {
    FieldVector d(n, 0);
    for (std::size_t j = 0; j < r; ++j) d[out.support[j]] = DS->at(i, j);
    out.duals.push_back(std::move(d));
  }
  return out;
}

std::optional<FieldVector> solve_combination(const Field& f, const std::vector<FieldVector>& gens,
                                             const FieldVector& target) {
  const std::size_t k = gens.size(), n = target.size();
  FieldMatrix aug(f, n, k + 1);
  for (std::size_t j = 0; j < k; ++j) {
    if (gens[j].size() != n) fail(ErrorKind::InvalidInput, "generator length mismatch");
    for (std::size_t i = 0; i < n; ++i) aug.set(i, j, gens[j][i]);
  }
  for (std::size_t i = 0; i < n; ++i) aug.set(i, k, target[i]);
  EchelonForm e = rref(aug);
  FieldVector c(k, 0);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == k) return std::nullopt;
    c[e.pivots[i]] = e.reduced.at(i, k);
  }
  return c;
}

std::vector<std::size_t> independent_subfamily(const Field& f, const std::vector<FieldVector>& vectors) {
  std::vector<std::size_t> idx;
  if (vectors.empty()) return idx;
  SpanBasis b(f, vectors[0].size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (b.insert(vectors[i])) idx.push_back(i);
  return idx;
}

FullRankMinor full_rank_minor(const FieldMatrix& m) {
  FullRankMinor out;
  std::vector<FieldVector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  out.rows = independent_subfamily(m.field(), rows);
  std::vector<FieldVector> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    FieldVector v;
    for (std::size_t r : out.rows) v.push_back(m.at(r, c));
    cols.push_back(std::move(v));
  }
  out.cols = independent_subfamily(m.field(), cols);
  return out;
}

RankFactorization rank_factorization(const FieldMatrix& m) {
  EchelonForm e = rref(m);
  RankFactorization out;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    out.cols.push_back(m.col(e.pivots[i]));
    out.rows.push_back(e.reduced.row(i));
  }
  return out;
}

}  // namespace minorank
