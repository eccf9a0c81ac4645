#include <algorithm>

#include "minorank/errors.hpp"
#include "minorank/minors.hpp"

namespace minorank {

namespace {

Tensor restrict_axis(const Tensor& t, int axis, const std::vector<std::size_t>& keep) {
  MinorSelection sel = full_selection(t);
  Axis ax;
  for (std::size_t i : keep) ax.push_back(t.axis(axis)[i]);
  sel.sets[std::size_t(axis)] = std::move(ax);
  return restrict_to(t, sel);
}

std::vector<FieldVector> matrix_rows(const FieldMatrix& m) {
  std::vector<FieldVector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rows;
}

FieldMatrix matrix_combination(const std::vector<FieldMatrix>& mats, const FieldVector& a) {
  FieldMatrix out(mats[0].field(), mats[0].rows(), mats[0].cols());
  for (std::size_t i = 0; i < mats.size(); ++i)
    if (a[i]) out = out + scaled(mats[i], a[i]);
  return out;
}

std::vector<FieldVector> all_vectors(const Field& f, std::size_t s, std::uint64_t budget) {
  if (f.power(s) > budget) fail(ErrorKind::ScaleExceeded, "too many coefficient vectors to enumerate");
  std::vector<FieldVector> out;
  FieldVector v(s, 0);
  do out.push_back(v);
  while (next_vector(f, v));
  return out;
}

// Row removal: returns the surviving row positions, at most s*k of them.
std::vector<std::size_t> remove_rows(const std::vector<FieldMatrix>& mats, std::size_t k, const MinorOptions& opt) {
  const Field& f = mats[0].field();
  const std::size_t s = mats.size();
  const auto coeffs = all_vectors(f, s, opt.oracle.node_budget);
  std::vector<std::size_t> keep(mats[0].rows());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  std::vector<std::size_t> all_cols(mats[0].cols());
  for (std::size_t c = 0; c < all_cols.size(); ++c) all_cols[c] = c;

  while (keep.size() > s * k) {
    std::vector<FieldMatrix> sub;
    for (const auto& m : mats) sub.push_back(m.submatrix(keep, all_cols));
    std::vector<FieldVector> lambda;
    std::vector<std::size_t> ranks;
    for (const auto& a : coeffs) {
      std::size_t r = mat_rank(matrix_combination(sub, a));
      ranks.push_back(r);
      if (r <= k) lambda.push_back(a);
    }
    // Left kernel common to a^j.A for a spanning subfamily a^1..a^r of Lambda.
    std::vector<std::size_t> basis = independent_subfamily(f, lambda);
    std::size_t width = std::max<std::size_t>(1, basis.size() * all_cols.size());
    FieldMatrix stacked(f, keep.size(), width);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      FieldMatrix m = matrix_combination(sub, lambda[basis[j]]);
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) stacked.set(r, j * all_cols.size() + c, m.at(r, c));
    }
    std::vector<FieldVector> ker = nullspace_basis(stacked);
    if (ker.empty()) fail(ErrorKind::VerificationFailed, "row removal found no common kernel vector");
    const FieldVector& b = ker[0];
    std::size_t x = std::size_t(std::find_if(b.begin(), b.end(), [](Elem e) { return e != 0; }) - b.begin());
    keep.erase(keep.begin() + std::ptrdiff_t(x));

    if (opt.check_invariants) {
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::vector<FieldMatrix> after;
        for (const auto& m : mats) after.push_back(m.submatrix(keep, all_cols));
        std::size_t r = mat_rank(matrix_combination(after, coeffs[i]));
        bool ok = ranks[i] <= k ? r == ranks[i] : r >= k;
        if (!ok) fail(ErrorKind::VerificationFailed, "row removal changed a protected rank");
      }
    }
  }
  return keep;
}

}  // namespace

MinorResult tr_minor_extract(const Tensor& t, std::size_t k, const MinorOptions& opt) {
  if (k == 0) fail(ErrorKind::InvalidInput, "minor size must be positive");
  const int d = t.order();
  RankMemo memo(PartitionFamily::tensor_rank(d), opt.oracle);
  if (!memo.at_least(t, k)) fail(ErrorKind::RankTooLow, "tensor rank below " + std::to_string(k));
  MinorResult res;
  res.target = k;
  if (d == 1) {
    res.selection = support_point_selection(t);
  } else {
    Tensor cur = t;
    for (int a = 0; a < d; ++a) {
      std::vector<std::size_t> idx = independent_subfamily(t.field(), matrix_rows(flatten(cur, AxisMask(1) << a)));
      if (idx.size() > k) idx.resize(k);
      cur = restrict_axis(cur, a, idx);
    }
    res.selection = {cur.axes(), pairwise_disjoint(cur.axes())};
  }
  res.route.push_back("d=" + std::to_string(d) + " tr: spanning subfamilies");
  if (!memo.at_least(restrict_to(t, res.selection), k))
    fail(ErrorKind::VerificationFailed, "tensor rank minor lost rank");
  res.verified = k;
  return res;
}

MatrixMinor multi_matrix_minor(const std::vector<FieldMatrix>& mats, std::size_t k, const MinorOptions& opt) {
  if (mats.empty()) fail(ErrorKind::InvalidInput, "no matrices");
  if (k == 0) fail(ErrorKind::InvalidInput, "minor size must be positive");
  for (const auto& m : mats)
    if (m.rows() != mats[0].rows() || m.cols() != mats[0].cols() || !(m.field() == mats[0].field()))
      fail(ErrorKind::AxisMismatch, "matrices of different shapes");
  MatrixMinor out;
  out.rows = remove_rows(mats, k, opt);
  std::vector<std::size_t> all_cols(mats[0].cols());
  for (std::size_t c = 0; c < all_cols.size(); ++c) all_cols[c] = c;
  std::vector<FieldMatrix> transposed;
  for (const auto& m : mats) transposed.push_back(m.submatrix(out.rows, all_cols).transpose());
  out.cols = remove_rows(transposed, k, opt);
  if (!check_multi_matrix_minor(mats, out, k)) fail(ErrorKind::VerificationFailed, "multi-matrix minor lost rank");
  return out;
}

bool check_multi_matrix_minor(const std::vector<FieldMatrix>& mats, const MatrixMinor& mm, std::size_t k) {
  const auto coeffs = all_vectors(mats[0].field(), mats.size(), default_node_budget());
  for (const auto& a : coeffs) {
    FieldMatrix m = matrix_combination(mats, a);
    std::size_t full = mat_rank(m), part = mat_rank(m.submatrix(mm.rows, mm.cols));
    if (part < std::min(full, k)) return false;
  }
  return true;
}

MinorResult multi_tensor_minor(const std::vector<Tensor>& ts, std::size_t k, const MinorOptions& opt) {
  if (ts.empty()) fail(ErrorKind::InvalidInput, "no tensors");
  if (k == 0) fail(ErrorKind::InvalidInput, "minor size must be positive");
  const int d = ts[0].order();
  if (d < 2) fail(ErrorKind::InvalidInput, "tensors of order at least 2 expected");
  for (const auto& t : ts)
    if (!t.same_shape(ts[0])) fail(ErrorKind::AxisMismatch, "tensors of different shapes");
  std::vector<Tensor> cur = ts;
  for (int a = 0; a < d; ++a) {
    std::vector<FieldMatrix> mats;
    for (const auto& t : cur) mats.push_back(flatten(t, AxisMask(1) << a));
    std::vector<std::size_t> keep = remove_rows(mats, k, opt);
    for (auto& t : cur) t = restrict_axis(t, a, keep);
  }
  MinorResult res;
  res.target = k;
  res.selection = {cur[0].axes(), pairwise_disjoint(cur[0].axes())};
  res.route.push_back("d=" + std::to_string(d) + " tr: row removal per axis, s=" + std::to_string(ts.size()));
  if (!check_multi_tensor_minor(ts, res.selection, k, opt.oracle))
    fail(ErrorKind::VerificationFailed, "multi-tensor minor lost rank");
  res.verified = k;
  return res;
}

bool check_multi_tensor_minor(const std::vector<Tensor>& ts, const MinorSelection& sel, std::size_t k,
                              const OracleOptions& opt) {
  RankMemo memo(PartitionFamily::tensor_rank(ts[0].order()), opt);
  for (const auto& a : all_vectors(ts[0].field(), ts.size(), opt.node_budget)) {
    Tensor full = combination(ts, a);
    Tensor part = restrict_to(full, sel);
    for (std::size_t j = 1; j <= k; ++j) {
      if (!memo.at_least(full, j)) break;
      if (!memo.at_least(part, j)) return false;
    }
  }
  return true;
}

}  // namespace minorank
