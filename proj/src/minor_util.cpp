#include <algorithm>

#include "minorank/errors.hpp"
#include "minorank/minors.hpp"

namespace minorank {

MinorSelection selection_from_positions(const Tensor& t, const std::vector<std::vector<std::size_t>>& pos) {
  if (int(pos.size()) != t.order()) fail(ErrorKind::AxisMismatch, "one position list per axis expected");
  MinorSelection sel;
  for (int a = 0; a < t.order(); ++a) {
    std::vector<std::size_t> p = pos[std::size_t(a)];
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    Axis ax;
    for (std::size_t i : p) ax.push_back(t.axis(a).at(i));
    sel.sets.push_back(std::move(ax));
  }
  return sel;
}

MinorSelection selection_union(const MinorSelection& a, const MinorSelection& b) {
  if (a.sets.empty()) return b;
  if (b.sets.empty()) return a;
  if (a.sets.size() != b.sets.size()) fail(ErrorKind::AxisMismatch, "selections of different order");
  MinorSelection out;
  for (std::size_t i = 0; i < a.sets.size(); ++i) {
    Axis u;
    std::set_union(a.sets[i].begin(), a.sets[i].end(), b.sets[i].begin(), b.sets[i].end(), std::back_inserter(u));
    out.sets.push_back(std::move(u));
  }
  out.disjoint = pairwise_disjoint(out.sets);
  return out;
}

std::vector<std::vector<std::size_t>> selection_positions(const Tensor& t, const MinorSelection& sel) {
  if (int(sel.sets.size()) != t.order()) fail(ErrorKind::AxisMismatch, "selection order differs from tensor order");
  std::vector<std::vector<std::size_t>> out(sel.sets.size());
  for (int a = 0; a < t.order(); ++a)
    for (Label l : sel.sets[std::size_t(a)]) {
      auto p = t.position(a, l);
      if (!p) fail(ErrorKind::NotSubset, "selected label " + std::to_string(l) + " not on axis");
      out[std::size_t(a)].push_back(*p);
    }
  return out;
}

MinorSelection support_point_selection(const Tensor& t) {
  for (std::size_t li = 0; li < t.size(); ++li)
    if (t.value(li)) {
      MinorSelection sel;
      for (Label l : t.labels_of(li)) sel.sets.push_back({l});
      return sel;
    }
  fail(ErrorKind::RankTooLow, "zero tensor has no nonzero minor");
}

MinorSelection shrink_minor(const Tensor& t, RankMemo& memo, std::size_t l, MinorSelection start) {
  MinorSelection cur = std::move(start);
  for (std::size_t a = 0; a < cur.sets.size(); ++a) {
    for (std::size_t i = 0; i < cur.sets[a].size();) {
      if (cur.sets[a].size() == 1) break;
      MinorSelection trial = cur;
      trial.sets[a].erase(trial.sets[a].begin() + std::ptrdiff_t(i));
      if (memo.at_least(restrict_to(t, trial), l))
        cur = std::move(trial);
      else
        ++i;
    }
  }
  cur.disjoint = pairwise_disjoint(cur.sets);
  return cur;
}

FullRankMinor matrix_minor(const FieldMatrix& m, std::size_t l) {
  FullRankMinor full = full_rank_minor(m);
  if (full.rows.size() < l) fail(ErrorKind::RankTooLow, "matrix rank below the requested minor size");
  FullRankMinor out;
  out.rows.assign(full.rows.begin(), full.rows.begin() + std::ptrdiff_t(l));
  std::vector<FieldVector> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    FieldVector v;
    for (std::size_t r : out.rows) v.push_back(m.at(r, c));
    cols.push_back(std::move(v));
  }
  out.cols = independent_subfamily(m.field(), cols);
  return out;
}

Tensor combination(const std::vector<Tensor>& ts, const FieldVector& a) {
  if (ts.empty() || a.size() != ts.size()) fail(ErrorKind::InvalidInput, "one coefficient per tensor expected");
  Tensor out = ts[0].zeros_like();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!ts[i].same_shape(out)) fail(ErrorKind::AxisMismatch, "tensors of different shapes");
    if (a[i]) out += ts[i].scaled(a[i]);
  }
  return out;
}

std::vector<FieldVector> nonzero_vectors(const Field& f, std::size_t s) {
  std::vector<FieldVector> out;
  FieldVector v(s, 0);
  while (next_vector(f, v)) out.push_back(v);
  return out;
}

bool verify_minor(const Tensor& t, const PartitionFamily& R, const MinorSelection& sel, std::size_t l,
                  const OracleOptions& opt) {
  RankMemo memo(R, opt);
  return memo.at_least(restrict_to(t, sel), l);
}

Tensor c_slice(const Tensor& t, AxisMask C, const std::vector<std::size_t>& y) { return slice_at(t, C, y); }

}  // namespace minorank
