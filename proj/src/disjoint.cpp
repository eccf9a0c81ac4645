#include "minorank/disjoint.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "minorank/errors.hpp"

namespace minorank {

namespace {

using LabelSet = std::set<Label>;

LabelSet labels_of(const MinorSelection& sel) {
  LabelSet out;
  for (const Axis& a : sel.sets) out.insert(a.begin(), a.end());
  return out;
}

// t with every label in `drop` removed from every axis; nullopt if an axis empties.
std::optional<Tensor> without_labels(const Tensor& t, const LabelSet& drop) {
  MinorSelection sel;
  for (const Axis& a : t.axes()) {
    Axis keep;
    for (Label l : a)
      if (!drop.count(l)) keep.push_back(l);
    if (keep.empty()) return std::nullopt;
    sel.sets.push_back(std::move(keep));
  }
  return restrict_to(t, sel);
}

MinorSelection empty_selection(int d) {
  MinorSelection sel;
  sel.sets.assign(std::size_t(d), {});
  sel.disjoint = true;
  return sel;
}

bool all_nonempty(const MinorSelection& sel) {
  return std::all_of(sel.sets.begin(), sel.sets.end(), [](const Axis& a) { return !a.empty(); });
}

DisjointCertificate finish(const Tensor& t, const PartitionFamily& R, MinorSelection sel, std::size_t l,
                           std::vector<std::string> route, const OracleOptions& opt) {
  sel.disjoint = pairwise_disjoint(sel.sets);
  if (!sel.disjoint) fail(ErrorKind::VerificationFailed, "selection is not pairwise disjoint");
  DisjointCertificate c;
  c.notion = notion_name(R);
  c.bound = l;
  if (l > 0) {
    if (!all_nonempty(sel)) fail(ErrorKind::VerificationFailed, "empty axis in a positive-rank selection");
    RankMemo memo(R, opt);
    if (!memo.at_least(restrict_to(t, sel), l)) fail(ErrorKind::VerificationFailed, "disjoint selection lost rank");
  }
  c.verified = l;
  c.selection = std::move(sel);
  c.route = std::move(route);
  return c;
}

// Inverse of the square matrix m(rows x cols); caller guarantees nonsingular.
FieldMatrix core_inverse(const FieldMatrix& m, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) {
  auto inv = inverse(m.submatrix(rows, cols));
  if (!inv) fail(ErrorKind::VerificationFailed, "greedy core became singular");
  return *inv;
}

// m(i, j) - m(i, cols) M^{-1} m(rows, j).
Elem schur(const FieldMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
           const FieldMatrix& inv, std::size_t i, std::size_t j) {
  const Field& f = m.field();
  Elem v = m.at(i, j);
  for (std::size_t a = 0; a < cols.size(); ++a) {
    Elem ra = m.at(i, cols[a]);
    if (!ra) continue;
    for (std::size_t b = 0; b < rows.size(); ++b) v = f.sub(v, f.mul(ra, f.mul(inv.at(a, b), m.at(rows[b], j))));
  }
  return v;
}

// Greedy maximal nonsingular core of m: rows/cols are added in canonical
// order while the labels they use stay pairwise distinct.
struct Core {
  std::vector<std::size_t> rows, cols;
};
Core greedy_core(const FieldMatrix& m, const std::vector<std::vector<Label>>& row_labels,
                 const std::vector<std::vector<Label>>& col_labels) {
  Core c;
  LabelSet used;
  auto fresh = [&](const std::vector<Label>& ls, const LabelSet& extra) {
    for (Label l : ls)
      if (used.count(l) || extra.count(l)) return false;
    return true;
  };
  while (true) {
    FieldMatrix inv = c.rows.empty() ? FieldMatrix(m.field(), 0, 0) : core_inverse(m, c.rows, c.cols);
    bool grown = false;
    for (std::size_t i = 0; i < m.rows() && !grown; ++i) {
      if (!fresh(row_labels[i], {})) continue;
      LabelSet mine(row_labels[i].begin(), row_labels[i].end());
      for (std::size_t j = 0; j < m.cols() && !grown; ++j) {
        if (!fresh(col_labels[j], mine)) continue;
        if (schur(m, c.rows, c.cols, inv, i, j) == 0) continue;
        c.rows.push_back(i);
        c.cols.push_back(j);
        used.insert(row_labels[i].begin(), row_labels[i].end());
        used.insert(col_labels[j].begin(), col_labels[j].end());
        grown = true;
      }
    }
    if (!grown) return c;
  }
}

// Labels of every row / column of flatten(t, I).
std::vector<std::vector<Label>> flat_labels(const Tensor& t, AxisMask S) {
  std::vector<int> axes = mask_axes(S);
  std::vector<std::size_t> shape, idx(axes.size(), 0);
  for (int a : axes) shape.push_back(t.extent(a));
  std::vector<std::vector<Label>> out;
  do {
    std::vector<Label> ls;
    for (std::size_t k = 0; k < axes.size(); ++k) ls.push_back(t.axis(axes[k])[idx[k]]);
    out.push_back(std::move(ls));
  } while (next_index(shape, idx));
  return out;
}

bool distinct(const std::vector<Label>& ls) {
  LabelSet s(ls.begin(), ls.end());
  return s.size() == ls.size();
}

// Family induced on the remaining axes when axis a is fixed to one point.
PartitionFamily drop_axis(const PartitionFamily& R, int a) {
  const AxisMask ground = full_mask(R.order()) & ~(AxisMask(1) << a);
  std::vector<Partition> out;
  for (const Partition& P : R.partitions()) {
    Partition Q;
    for (AxisMask part : P) {
      AxisMask rest = part & ground;
      if (rest) Q.push_back(compress_mask(rest, ground));
    }
    out.push_back(canonical_partition(Q));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return PartitionFamily(R.order() - 1, out);
}

// Every part of every partition lies inside I or inside its complement, so
// the I-flattening rank is a lower bound for Rrk.
bool flattening_bounds(const PartitionFamily& R, AxisMask I) {
  for (const Partition& P : R.partitions())
    for (AxisMask part : P)
      if ((part & I) && (part & ~I)) return false;
  return true;
}

MinorSelection off_diagonal_point(const Tensor& t) {
  auto pts = off_diagonal_support(t);
  if (pts.empty()) fail(ErrorKind::RankTooLow, "tensor is supported inside E");
  MinorSelection sel;
  for (Label l : t.labels_of(pts[0])) sel.sets.push_back({l});
  sel.disjoint = true;
  return sel;
}

class DisjointEngine {
 public:
  explicit DisjointEngine(const OracleOptions& opt) : opt_(opt) {}
  MinorSelection find(const Tensor& t, const PartitionFamily& R, std::size_t l, std::vector<std::string>& route,
                      int depth);

 private:
  OracleOptions opt_;
};

MinorSelection DisjointEngine::find(const Tensor& t, const PartitionFamily& R, std::size_t l,
                                    std::vector<std::string>& route, int depth) {
  const int d = t.order();
  if (l == 0) fail(ErrorKind::InvalidInput, "disjoint target must be positive");
  if (depth > (1 << d) + d) fail(ErrorKind::VerificationFailed, "disjoint recursion too deep");
  if (supported_in_diagonal(t)) fail(ErrorKind::RankTooLow, "tensor is supported inside E");
  const std::string pre = "d=" + std::to_string(d) + " " + notion_name(R);
  RankMemo memo(R, opt_);

  if (R.has_single_part() || l == 1) {
    if (R.has_single_part() && l > 1) fail(ErrorKind::RankTooLow, "single-part family has rank at most 1");
    route.push_back(pre + ": off-diagonal point");
    return off_diagonal_point(t);
  }
  if (d == 2) {
    MatrixDisjointResult mr = matrix_disjoint_extract(t, opt_);
    if (mr.rank >= l) {
      Tensor core = restrict_to(t, mr.cert.selection);
      FullRankMinor mm = matrix_minor(flatten(core, 1), l);
      route.push_back(pre + ": matrix construction");
      return selection_from_positions(core, {mm.rows, mm.cols});
    }
  } else {
    // Case 1: one slice already carries the rank on the remaining labels.
    for (int a = 0; a < d; ++a) {
      const PartitionFamily Ra = drop_axis(R, a);
      if (Ra.has_single_part()) continue;
      RankMemo sub_memo(Ra, opt_);
      for (std::size_t y = 0; y < t.extent(a); ++y) {
        const Label lab = t.axis(a)[y];
        auto S = without_labels(slice_at(t, full_mask(d) & ~(AxisMask(1) << a), std::vector<std::size_t>{y}), {lab});
        if (!S || !sub_memo.at_least(*S, l)) continue;
        std::vector<std::string> sub;
        MinorSelection inner;
        try {
          inner = find(*S, Ra, l, sub, depth + 1);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::RankTooLow && e.kind() != ErrorKind::ScaleExceeded) throw;
          continue;
        }
        MinorSelection sel;
        for (int b = 0, k = 0; b < d; ++b) sel.sets.push_back(b == a ? Axis{lab} : inner.sets[std::size_t(k++)]);
        if (!memo.at_least(restrict_to(t, sel), l)) continue;
        route.push_back(pre + ": case 1 (slice " + std::to_string(a + 1) + "=" + std::to_string(lab) + ")");
        route.insert(route.end(), sub.begin(), sub.end());
        return sel;
      }
    }
    // Case 2: a flattening that bounds R from below.
    for (int size = 1; size < d; ++size)
      for (AxisMask I = 1; I < full_mask(d); ++I) {
        if (mask_size(I) != size || !flattening_bounds(R, I)) continue;
        FlatteningExtension fe = disjoint_flattening_extend(t, I, false, opt_);
        if (fe.cert.bound < l || !all_nonempty(fe.cert.selection)) continue;
        if (!memo.at_least(restrict_to(t, fe.cert.selection), l)) continue;
        route.push_back(pre + ": case 2 (flattening " + std::to_string(fe.cert.bound) + ")");
        return fe.cert.selection;
      }
    // Case 3: the down-shadow.
    if (!R.is_tensor_rank()) {
      const DownShadow ds = down_shadow(R);
      RankMemo shadow_memo(ds.shadow, opt_);
      for (std::size_t L = l; L <= l + 2 && shadow_memo.at_least(t, L); ++L) {
        std::vector<std::string> sub;
        MinorSelection sel;
        try {
          sel = find(t, ds.shadow, L, sub, depth + 1);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::RankTooLow && e.kind() != ErrorKind::ScaleExceeded) throw;
          break;
        }
        if (!memo.at_least(restrict_to(t, sel), l)) continue;
        route.push_back(pre + ": case 3 (down-shadow target " + std::to_string(L) + ")");
        route.insert(route.end(), sub.begin(), sub.end());
        return sel;
      }
    }
  }
  DisjointReport rep = disjoint_rank_exact(t, R, opt_);
  if (rep.value < l) fail(ErrorKind::RankTooLow, "disjoint rank " + std::to_string(rep.value) + " below " + std::to_string(l));
  route.push_back(pre + ": exhaustive");
  return rep.selection;
}

}  // namespace

MatrixDisjointResult matrix_disjoint_extract(const Tensor& A, const OracleOptions& opt) {
  if (A.order() != 2) fail(ErrorKind::InvalidInput, "matrix expected");
  (void)opt;
  const Field& f = A.field();
  const FieldMatrix m = flatten(A, 1);
  Core core = greedy_core(m, flat_labels(A, 1), flat_labels(A, 2));
  MatrixDisjointResult res;
  res.rank = core.rows.size();

  LabelSet X, Y;
  for (std::size_t i : core.rows) X.insert(A.axis(0)[i]);
  for (std::size_t j : core.cols) Y.insert(A.axis(1)[j]);
  // D(z, z) makes the Schur complement vanish at every label outside X and Y.
  res.modifier = A.zeros_like();
  FieldMatrix inv = core.rows.empty() ? FieldMatrix(f, 0, 0) : core_inverse(m, core.rows, core.cols);
  for (std::size_t i = 0; i < A.extent(0); ++i) {
    const Label z = A.axis(0)[i];
    if (X.count(z) || Y.count(z)) continue;
    auto j = A.position(1, z);
    if (!j) continue;
    Elem s = schur(m, core.rows, core.cols, inv, i, *j);
    res.modifier.set(std::vector<std::size_t>{i, *j}, f.neg(s));
  }
  const FieldMatrix B = flatten(A + res.modifier, 1);
  std::vector<std::size_t> notY_rows, Y_rows, notX_cols, X_cols, all_cols(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) (Y.count(A.axis(0)[i]) ? Y_rows : notY_rows).push_back(i);
  for (std::size_t j = 0; j < m.cols(); ++j) (X.count(A.axis(1)[j]) ? X_cols : notX_cols).push_back(j);
  for (std::size_t j = 0; j < m.cols(); ++j) all_cols[j] = j;
  res.core = notY_rows.empty() || notX_cols.empty() ? 0 : mat_rank(B.submatrix(notY_rows, notX_cols));
  res.rows_part = Y_rows.empty() ? 0 : mat_rank(B.submatrix(Y_rows, all_cols));
  res.cols_part = notY_rows.empty() || X_cols.empty() ? 0 : mat_rank(B.submatrix(notY_rows, X_cols));
  res.modified_rank = mat_rank(B);
  const std::size_t k = res.rank;
  if (res.core != k || res.rows_part > k || res.cols_part > k || res.modified_rank > res.core + res.rows_part + res.cols_part)
    fail(ErrorKind::VerificationFailed, "three-term decomposition failed");

  MinorSelection sel;
  sel.sets = {Axis(X.begin(), X.end()), Axis(Y.begin(), Y.end())};
  sel.disjoint = true;
  if (k > 0 && mat_rank(flatten(restrict_to(A, sel), 1)) < k)
    fail(ErrorKind::VerificationFailed, "disjoint core lost rank");
  res.cert.selection = sel;
  res.cert.notion = "rk";
  res.cert.bound = res.cert.verified = k;
  res.cert.route = {"d=2: greedy disjoint core, rk(A+D) = " + std::to_string(res.modified_rank)};
  return res;
}

DisjointCertificate multi_matrix_disjoint(const std::vector<Tensor>& mats, const std::vector<FieldVector>& Lambda,
                                          std::size_t l, const OracleOptions& opt) {
  if (mats.empty()) fail(ErrorKind::InvalidInput, "no matrices");
  for (const auto& m : mats)
    if (m.order() != 2 || !m.same_shape(mats[0])) fail(ErrorKind::AxisMismatch, "matrices of one shape expected");
  if (l == 0) fail(ErrorKind::InvalidInput, "target must be positive");
  const std::size_t s = mats.size();
  const PartitionFamily rk = PartitionFamily::tensor_rank(2);
  std::vector<std::string> route;

  // Peel: serve Lambda[0] with an s*l (or smaller) disjoint core, recurse on
  // the combinations it misses over labels not yet used.
  std::function<MinorSelection(const std::vector<FieldVector>&, const LabelSet&)> peel =
      [&](const std::vector<FieldVector>& lam, const LabelSet& used) -> MinorSelection {
    if (lam.empty()) return empty_selection(2);
    auto M = without_labels(combination(mats, lam[0]), used);
    if (!M) fail(ErrorKind::RankTooLow, "no labels left for a combination");
    MatrixDisjointResult mr = matrix_disjoint_extract(*M, opt);
    if (mr.rank < l) fail(ErrorKind::RankTooLow, "a combination has disjoint core below " + std::to_string(l));
    const std::size_t target = std::min(mr.rank, s * l);
    Tensor core = restrict_to(*M, mr.cert.selection);
    FullRankMinor mm = matrix_minor(flatten(core, 1), target);
    MinorSelection first = selection_from_positions(core, {mm.rows, mm.cols});
    route.push_back("d=2: peel core of size " + std::to_string(target));
    std::vector<FieldVector> bad;
    for (std::size_t i = 1; i < lam.size(); ++i) {
      auto Mi = combination(mats, lam[i]);
      if (mat_rank(flatten(restrict_to(Mi, first), 1)) < l) bad.push_back(lam[i]);
    }
    LabelSet more = used;
    for (Label x : labels_of(first)) more.insert(x);
    return selection_union(first, peel(bad, more));
  };
  MinorSelection sel = peel(Lambda, {});
  for (const auto& a : Lambda)
    if (mat_rank(flatten(restrict_to(combination(mats, a), sel), 1)) < l)
      fail(ErrorKind::VerificationFailed, "multi-matrix disjoint selection lost rank");
  DisjointCertificate c;
  sel.disjoint = pairwise_disjoint(sel.sets);
  if (!sel.disjoint) fail(ErrorKind::VerificationFailed, "selection is not pairwise disjoint");
  c.selection = sel;
  c.notion = notion_name(rk);
  c.bound = c.verified = Lambda.empty() ? 0 : l;
  c.route = route;
  return c;
}

DisjointifyResult support_disjointify(const Tensor& t) {
  const int d = t.order();
  DisjointifyResult res;
  const auto pts = off_diagonal_support(t);
  res.off_diagonal = pts.size();
  std::size_t dd = 1;
  for (int i = 0; i < d; ++i) dd *= std::size_t(d);
  res.guaranteed = (pts.size() + dd - 1) / dd;

  // Labels, the axes on which each occurs, and the points through each.
  std::map<Label, std::vector<int>> axes_of;
  for (int a = 0; a < d; ++a)
    for (Label l : t.axis(a)) axes_of[l].push_back(a);
  std::vector<std::vector<Label>> plabels;
  std::map<Label, std::vector<std::pair<std::size_t, int>>> through;  // (point, axis)
  for (std::size_t p = 0; p < pts.size(); ++p) {
    plabels.push_back(t.labels_of(pts[p]));
    for (int a = 0; a < d; ++a) through[plabels[p][std::size_t(a)]].push_back({p, a});
  }

  // Conditional expectations: prob[p] = chance that p survives given the
  // colors fixed so far, the rest uniform over the axes carrying the label.
  std::vector<long double> prob(pts.size(), 1.0L);
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (Label l : plabels[p]) prob[p] /= (long double)axes_of[l].size();
  std::map<Label, int> color;
  for (const auto& [l, axes] : axes_of) {
    int best = axes[0];
    long double best_gain = -1;
    for (int c : axes) {
      long double gain = 0;
      for (const auto& [p, a] : through[l])
        if (a == c) gain += prob[p];
      if (gain > best_gain + 1e-15L) {
        best_gain = gain;
        best = c;
      }
    }
    color[l] = best;
    const long double scale = (long double)axes.size();
    for (const auto& [p, a] : through[l]) prob[p] = a == best ? prob[p] * scale : 0.0L;
  }

  // Local improvement: move one label while the surviving count grows.
  std::vector<int> misplaced(pts.size(), 0);
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (int a = 0; a < d; ++a) misplaced[p] += color[plabels[p][std::size_t(a)]] != a;
  for (bool improved = true; improved;) {
    improved = false;
    for (auto& [l, axes] : axes_of) {
      for (int c : axes) {
        const int old = color[l];
        if (c == old) continue;
        long delta = 0;
        for (const auto& [p, a] : through[l]) {
          const int before = misplaced[p];
          const int after = before - (old != a) + (c != a);
          delta += long(after == 0) - long(before == 0);
        }
        if (delta <= 0) continue;
        for (const auto& [p, a] : through[l]) misplaced[p] += -(old != a) + (c != a);
        color[l] = c;
        improved = true;
      }
    }
  }
  res.selection.sets.assign(std::size_t(d), {});
  for (const auto& [l, c] : color) res.selection.sets[std::size_t(c)].push_back(l);
  res.selection.disjoint = true;
  res.retained = std::size_t(std::count(misplaced.begin(), misplaced.end(), 0));
  // Independent count on the restriction itself.
  if (all_nonempty(res.selection) && restrict_to(t, res.selection).support_size() != res.retained)
    fail(ErrorKind::VerificationFailed, "retained support miscounted");
  if (res.retained < res.guaranteed) fail(ErrorKind::VerificationFailed, "coloring fell below its expectation");
  return res;
}

FlatteningExtension disjoint_flattening_extend(const Tensor& t, AxisMask I, bool check_hypothesis,
                                               const OracleOptions& opt) {
  const int d = t.order();
  if (I == 0 || (I & ~full_mask(d)) || I == full_mask(d)) fail(ErrorKind::BadAxisSet, "row axes must be a proper subset");
  FlatteningExtension fe;
  fe.I = I;
  const FieldMatrix m = flatten(t, I);
  const auto rl = flat_labels(t, I), cl = flat_labels(t, full_mask(d) & ~I);
  // Rows or columns that repeat a label can never join: zero them out.
  FieldMatrix mm = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!distinct(rl[i]))
      for (std::size_t j = 0; j < m.cols(); ++j) mm.set(i, j, 0);
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!distinct(cl[j]))
      for (std::size_t i = 0; i < m.rows(); ++i) mm.set(i, j, 0);
  Core core = greedy_core(mm, rl, cl);

  MinorSelection sel = empty_selection(d);
  std::vector<int> rows_axes = mask_axes(I), cols_axes = mask_axes(full_mask(d) & ~I);
  for (std::size_t i : core.rows)
    for (std::size_t k = 0; k < rows_axes.size(); ++k) sel.sets[std::size_t(rows_axes[k])].push_back(rl[i][k]);
  for (std::size_t j : core.cols)
    for (std::size_t k = 0; k < cols_axes.size(); ++k) sel.sets[std::size_t(cols_axes[k])].push_back(cl[j][k]);
  for (auto& a : sel.sets) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  sel.disjoint = pairwise_disjoint(sel.sets);
  if (!sel.disjoint) fail(ErrorKind::VerificationFailed, "flattening family reused a label");
  const std::size_t k = core.rows.size();
  if (k > 0 && mat_rank(flatten(restrict_to(t, sel), I)) < k)
    fail(ErrorKind::VerificationFailed, "flattening family lost rank");
  fe.cert.selection = sel;
  fe.cert.notion = "frank";
  fe.cert.bound = fe.cert.verified = k;
  fe.cert.route = {"d=" + std::to_string(d) + ": maximal distinct-label flattening family of size " + std::to_string(k)};

  if (check_hypothesis) {
    try {
      const PartitionFamily low = PartitionFamily::partition_rank(d - 1);
      for (int a = 0; a < d; ++a)
        for (std::size_t y = 0; y < t.extent(a); ++y) {
          Tensor s = slice_at(t, full_mask(d) & ~(AxisMask(1) << a), std::vector<std::size_t>{y});
          fe.slice_bound = std::max(fe.slice_bound, essential_rank_exact(s, low, opt).value);
        }
      fe.hypothesis_checked = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ScaleExceeded) throw;
      fail(ErrorKind::HypothesisUnverifiable, "slice essential ranks are beyond the budget");
    }
  }
  return fe;
}

DisjointCertificate disjoint_rank_find(const Tensor& t, const PartitionFamily& R, std::size_t l,
                                       const OracleOptions& opt) {
  if (R.order() != t.order()) fail(ErrorKind::AxisMismatch, "family order differs from tensor order");
  DisjointEngine eng(opt);
  std::vector<std::string> route;
  MinorSelection sel = eng.find(t, R, l, route, 0);
  return finish(t, R, std::move(sel), l, std::move(route), opt);
}

DisjointCertificate multi_disjoint_find(const std::vector<Tensor>& ts, const PartitionFamily& R,
                                        const std::vector<FieldVector>& Lambda, std::size_t l,
                                        const OracleOptions& opt) {
  if (ts.empty()) fail(ErrorKind::InvalidInput, "no tensors");
  if (l == 0) fail(ErrorKind::InvalidInput, "target must be positive");
  for (const auto& a : Lambda)
    if (a.size() != ts.size() || is_zero(a)) fail(ErrorKind::InvalidInput, "Lambda must hold nonzero vectors of F^s");
  const int d = ts[0].order();
  const std::size_t s = ts.size();
  RankMemo memo(R, opt);
  std::vector<std::string> route;

  // A single removable slice that kills the combination: the obstruction
  // pattern for tensor rank.
  auto obstructed = [&](const FieldVector& a) {
    if (!R.is_tensor_rank() || d < 3) return false;
    Tensor T = combination(ts, a);
    for (int ax = 0; ax < d; ++ax)
      for (Label y : T.axis(ax)) {
        MinorSelection keep = full_selection(T);
        auto& A = keep.sets[std::size_t(ax)];
        A.erase(std::find(A.begin(), A.end(), y));
        if (A.empty()) continue;
        Tensor rest = restrict_to(T, keep);
        if (supported_in_diagonal(rest)) return true;
        try {
          if (disjoint_rank_exact(rest, R, opt).value < l) return true;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::ScaleExceeded) throw;
        }
      }
    return false;
  };

  std::function<MinorSelection(const std::vector<FieldVector>&, const LabelSet&)> peel =
      [&](const std::vector<FieldVector>& lam, const LabelSet& used) -> MinorSelection {
    if (lam.empty()) return empty_selection(d);
    auto T = without_labels(combination(ts, lam[0]), used);
    MinorSelection first;
    bool found = false;
    for (std::size_t target = s * l; target >= l && !found && T; --target) {
      try {
        DisjointEngine eng(opt);
        std::vector<std::string> sub;
        first = eng.find(*T, R, target, sub, 0);
        RankMemo tm(R, opt);
        first = shrink_minor(*T, tm, target, first);
        route.push_back("peel target " + std::to_string(target));
        route.insert(route.end(), sub.begin(), sub.end());
        found = true;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::RankTooLow) throw;
      }
    }
    if (!found) {
      if (obstructed(lam[0]))
        fail(ErrorKind::Obstructed, "a single slice removal kills a combination; no common disjoint minor");
      fail(ErrorKind::RankTooLow, "a combination has disjoint rank below " + std::to_string(l) + " on the free labels");
    }
    std::vector<FieldVector> bad;
    for (std::size_t i = 1; i < lam.size(); ++i)
      if (!memo.at_least(restrict_to(combination(ts, lam[i]), first), l)) bad.push_back(lam[i]);
    LabelSet more = used;
    for (Label x : labels_of(first)) more.insert(x);
    return selection_union(first, peel(bad, more));
  };
  MinorSelection sel = peel(Lambda, {});
  sel.disjoint = pairwise_disjoint(sel.sets);
  if (!sel.disjoint) fail(ErrorKind::VerificationFailed, "selection is not pairwise disjoint");
  for (const auto& a : Lambda)
    if (!memo.at_least(restrict_to(combination(ts, a), sel), l))
      fail(ErrorKind::VerificationFailed, "multidimensional disjoint selection lost rank");
  DisjointCertificate c;
  c.selection = sel;
  c.notion = notion_name(R);
  c.bound = c.verified = Lambda.empty() ? 0 : l;
  c.route = route;
  return c;
}

std::vector<Tensor> obstruction_pair(const Field& f, std::size_t n) {
  if (n < 4) fail(ErrorKind::InvalidInput, "obstruction pair needs n >= 4");
  Tensor t1 = Tensor::cube(f, 3, n), t2 = Tensor::cube(f, 3, n);
  // shift form on labels 2..n: b(u, u+1) = 1, essential rank n - 2
  for (std::size_t u = 1; u + 1 < n; ++u) {
    t1.set(std::vector<std::size_t>{0, u, u + 1}, 1);
    t2.set(std::vector<std::size_t>{u, 0, u + 1}, 1);
  }
  return {t1, t2};
}

}  // namespace minorank
