#include <algorithm>

#include "minorank/errors.hpp"
#include "minorank/minors.hpp"

namespace minorank {

namespace {

std::string prefix(const Tensor& t, const PartitionFamily& R) {
  return "d=" + std::to_string(t.order()) + " " + notion_name(R);
}

// Labels of the complement axes of C taken from complement positions.
void add_projections(const Tensor& t, AxisMask C, const std::vector<std::vector<std::size_t>>& points,
                     std::vector<std::vector<std::size_t>>& pos) {
  std::vector<int> comp = mask_axes(full_mask(t.order()) & ~C);
  for (const auto& y : points)
    for (std::size_t i = 0; i < comp.size(); ++i) pos[std::size_t(comp[i])].push_back(y[i]);
}

// Tensor on the axes of S with the given values (last axis fastest).
Tensor on_axes(const Tensor& like, AxisMask S, std::vector<Elem> values) {
  std::vector<Axis> axes;
  for (int a : mask_axes(S)) axes.push_back(like.axis(a));
  return Tensor(like.field(), std::move(axes), std::move(values));
}

// Full selection assembled from a selection on the axes of S and one on the complement.
MinorSelection merge_parts(const Tensor& t, AxisMask S, const MinorSelection& on_S, const MinorSelection& on_rest) {
  MinorSelection sel;
  sel.sets.resize(std::size_t(t.order()));
  std::vector<int> in = mask_axes(S), out = mask_axes(full_mask(t.order()) & ~S);
  for (std::size_t i = 0; i < in.size(); ++i) sel.sets[std::size_t(in[i])] = on_S.sets[i];
  for (std::size_t i = 0; i < out.size(); ++i) sel.sets[std::size_t(out[i])] = on_rest.sets[i];
  sel.disjoint = pairwise_disjoint(sel.sets);
  return sel;
}

class Engine {
 public:
  explicit Engine(const MinorOptions& opt) : opt_(opt) {}

  MinorSelection find(const Tensor& t, const PartitionFamily& R, std::size_t l, std::vector<std::string>& route,
                      int depth);
  MinorSelection multi(const std::vector<Tensor>& ts, const PartitionFamily& R, const std::vector<FieldVector>& Lambda,
                       std::size_t l, std::vector<std::string>& route, int depth);

 private:
  std::optional<MinorSelection> case1(const Tensor& t, const PartitionFamily& R, std::size_t l,
                                      const SeparatedSearch& s, RankMemo& memo, std::vector<std::string>& route,
                                      int depth);
  std::optional<MinorSelection> case2(const Tensor& t, const PartitionFamily& R, const DownShadow& ds, std::size_t l,
                                      const SeparatedSearch& s, RankMemo& memo, std::vector<std::string>& route,
                                      int depth);
  std::optional<MinorSelection> case3(const Tensor& t, const PartitionFamily& R, const DownShadow& ds, std::size_t l,
                                      const SeparatedSearch& s, RankMemo& memo, std::vector<std::string>& route,
                                      int depth);

  MinorOptions opt_;
};

MinorSelection Engine::find(const Tensor& t, const PartitionFamily& R, std::size_t l, std::vector<std::string>& route,
                            int depth) {
  if (l == 0) fail(ErrorKind::InvalidInput, "minor target must be positive");
  if (R.order() != t.order()) fail(ErrorKind::AxisMismatch, "family order differs from tensor order");
  if (depth > (1 << t.order()) + 1) fail(ErrorKind::VerificationFailed, "down-shadow recursion too deep");
  RankMemo memo(R, opt_.oracle);
  if (!memo.at_least(t, l)) fail(ErrorKind::RankTooLow, notion_name(R) + " rank below " + std::to_string(l));
  const std::string pre = prefix(t, R);

  if (l == 1 || R.has_single_part()) {
    route.push_back(pre + ": support point");
    return support_point_selection(t);
  }
  if (R.is_tensor_rank()) {
    MinorResult r = tr_minor_extract(t, l, opt_);
    route.push_back(pre + ": base");
    return r.selection;
  }

  const DownShadow ds = down_shadow(R);
  const std::size_t q = l * (l - 1) + 1;
  std::optional<SeparatedSearch> search;
  try {
    search = separated_family_search(t, ds.largest, std::vector<std::size_t>(l, q), l, opt_.oracle);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ScaleExceeded) throw;
  }
  if (search) {
    if (auto s = case1(t, R, l, *search, memo, route, depth)) return *s;
    if (auto s = case2(t, R, ds, l, *search, memo, route, depth)) return *s;
  }
  if (auto s = case3(t, R, ds, l, search ? *search : SeparatedSearch{}, memo, route, depth)) return *s;

  route.push_back(pre + ": shrink");
  return shrink_minor(t, memo, l, full_selection(t));
}

std::optional<MinorSelection> Engine::case1(const Tensor& t, const PartitionFamily& R, std::size_t l,
                                            const SeparatedSearch& s, RankMemo& memo, std::vector<std::string>& route,
                                            int depth) {
  if (s.table) return std::nullopt;
  const AxisMask C = s.family.C;
  const std::size_t q = s.family.threshold;
  std::vector<Tensor> slices;
  for (const auto& y : s.family.points) slices.push_back(c_slice(t, C, y));
  std::vector<std::string> sub;
  MinorSelection onC;
  try {
    onC = multi(slices, PartitionFamily::partition_rank(mask_size(C)), nonzero_vectors(t.field(), l), q, sub, depth + 1);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RankTooLow && e.kind() != ErrorKind::ScaleExceeded) throw;
    return std::nullopt;
  }
  std::vector<std::vector<std::size_t>> pos(std::size_t(t.order()));
  add_projections(t, C, s.family.points, pos);
  MinorSelection rest = selection_from_positions(t, pos);
  std::vector<int> comp = mask_axes(full_mask(t.order()) & ~C);
  MinorSelection restC;
  for (int a : comp) restC.sets.push_back(rest.sets[std::size_t(a)]);
  MinorSelection sel = merge_parts(t, C, onC, restC);
  if (!memo.at_least(restrict_to(t, sel), l)) return std::nullopt;
  route.push_back(prefix(t, R) + ": case 1 (" + std::to_string(l) + " separated slices)");
  route.insert(route.end(), sub.begin(), sub.end());
  return sel;
}

std::optional<MinorSelection> Engine::case2(const Tensor& t, const PartitionFamily& R, const DownShadow& ds,
                                            std::size_t l, const SeparatedSearch& s, RankMemo& memo,
                                            std::vector<std::string>& route, int depth) {
  if (!s.table || s.family.size() == 0) return std::nullopt;
  const AxisMask C = s.family.C, Cc = ds.comp_ground;
  const ApproximationTable& tab = *s.table;
  const std::size_t lp = s.family.size();
  const std::size_t m = tab.residual_bound;
  const std::size_t M = l * (m + l);
  if (M < (m + l) * l) return std::nullopt;  // lemma hypothesis, kept explicit
  const Field& f = t.field();

  std::vector<Tensor> B;
  for (const auto& y : s.family.points) B.push_back(c_slice(t, C, y));
  RankMemo prC(PartitionFamily::partition_rank(mask_size(C)), opt_.oracle);
  const auto Lambda = nonzero_vectors(f, lp);
  // (i) must already hold before restriction.
  for (const auto& a : Lambda)
    if (!prC.at_least(combination(B, a), M)) return std::nullopt;

  RankMemo compMemo(ds.comp, opt_.oracle);
  for (std::size_t j = 0; j < lp; ++j) {
    std::vector<Elem> vals;
    for (const auto& c : tab.coeffs) vals.push_back(c[j]);
    Tensor Aj = on_axes(t, Cc, vals);
    if (!compMemo.at_least(Aj, l)) continue;
    std::vector<std::string> sub;
    MinorSelection onCc, onC;
    try {
      onCc = find(Aj, ds.comp, l, sub, depth + 1);
      onC = multi(B, PartitionFamily::partition_rank(mask_size(C)), Lambda, M, sub, depth + 1);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankTooLow && e.kind() != ErrorKind::ScaleExceeded) throw;
      continue;
    }
    MinorSelection sel = merge_parts(t, C, onC, onCc);
    // Hypotheses of the extension step, checked on the restriction.
    bool ok = true;
    std::vector<Tensor> Br;
    for (const auto& b : B) Br.push_back(restrict_to(b, onC));
    for (const auto& a : Lambda) ok = ok && prC.at_least(combination(Br, a), M);
    ok = ok && compMemo.at_least(restrict_to(Aj, onCc), l);
    if (ok) {
      // (iii): residual slices over the restricted complement box.
      Tensor tr = restrict_to(t, sel);
      auto cpos = selection_positions(on_axes(t, Cc, std::vector<Elem>(tab.coeffs.size())), onCc);
      std::vector<std::size_t> shape;
      for (const auto& p : cpos) shape.push_back(p.size());
      std::vector<std::size_t> idx(shape.size(), 0), comp_shape;
      for (int a : mask_axes(Cc)) comp_shape.push_back(t.extent(a));
      do {
        std::vector<std::size_t> yfull, yloc;
        std::size_t lin = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          yfull.push_back(cpos[i][idx[i]]);
          lin = lin * comp_shape[i] + yfull.back();
        }
        Tensor res = c_slice(tr, C, idx);
        for (std::size_t i = 0; i < lp; ++i)
          if (tab.coeffs[lin][i]) res -= Br[i].scaled(tab.coeffs[lin][i]);
        if (prC.at_least(res, m + 1)) ok = false;
      } while (ok && next_index(shape, idx));
    }
    if (!ok || !memo.at_least(restrict_to(t, sel), l)) continue;
    route.push_back(prefix(t, R) + ": case 2 (coefficient " + std::to_string(j + 1) + ", m=" + std::to_string(m) +
                    ", M=" + std::to_string(M) + ")");
    route.insert(route.end(), sub.begin(), sub.end());
    return sel;
  }
  return std::nullopt;
}

std::optional<MinorSelection> Engine::case3(const Tensor& t, const PartitionFamily& R, const DownShadow& ds,
                                            std::size_t l, const SeparatedSearch& s, RankMemo& memo,
                                            std::vector<std::string>& route, int depth) {
  const AxisMask C = ds.largest, Cc = ds.comp_ground;
  // U = T - S with S(x) = sum_i A_i(x(C^c)) T_{y_i}(x(C)).
  Tensor U = t;
  if (s.table && s.family.size() > 0) {
    std::vector<Tensor> B;
    for (const auto& y : s.family.points) B.push_back(c_slice(t, C, y));
    std::vector<int> in = mask_axes(C), out = mask_axes(Cc);
    std::vector<std::size_t> pos(std::size_t(t.order()));
    for (std::size_t li = 0; li < t.size(); ++li) {
      t.unravel(li, pos);
      std::size_t yi = 0, xi = 0;
      for (int a : out) yi = yi * t.extent(a) + pos[std::size_t(a)];
      for (int a : in) xi = xi * t.extent(a) + pos[std::size_t(a)];
      Elem v = U.value(li);
      for (std::size_t i = 0; i < B.size(); ++i)
        v = t.field().sub(v, t.field().mul(s.table->coeffs[yi][i], B[i].value(xi)));
      U.set_value(li, v);
    }
  }
  RankMemo shadowMemo(ds.shadow, opt_.oracle);
  for (std::size_t L = l; L <= l + 3; ++L) {
    if (!shadowMemo.at_least(U, L)) break;
    std::vector<std::string> sub;
    MinorSelection sel;
    try {
      sel = find(U, ds.shadow, L, sub, depth + 1);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankTooLow && e.kind() != ErrorKind::ScaleExceeded) throw;
      break;
    }
    if (!memo.at_least(restrict_to(t, sel), l)) continue;
    route.push_back(prefix(t, R) + ": case 3 (down-shadow target " + std::to_string(L) + ")");
    route.insert(route.end(), sub.begin(), sub.end());
    return sel;
  }
  return std::nullopt;
}

MinorSelection Engine::multi(const std::vector<Tensor>& ts, const PartitionFamily& R,
                             const std::vector<FieldVector>& Lambda, std::size_t l, std::vector<std::string>& route,
                             int depth) {
  if (ts.empty()) fail(ErrorKind::InvalidInput, "no tensors");
  MinorSelection empty;
  empty.sets.resize(std::size_t(ts[0].order()));
  if (Lambda.empty()) return empty;
  const std::size_t s = ts.size();
  const Tensor T0 = combination(ts, Lambda[0]);
  MinorSelection first;
  bool found = false;
  for (std::size_t target = s * l; target >= l && !found; --target) {
    try {
      first = find(T0, R, target, route, depth);
      found = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RankTooLow) throw;
    }
  }
  if (!found) fail(ErrorKind::RankTooLow, "a combination in Lambda has rank below " + std::to_string(l));
  RankMemo memo(R, opt_.oracle);
  std::vector<FieldVector> bad;
  for (std::size_t i = 1; i < Lambda.size(); ++i)
    if (!memo.at_least(restrict_to(combination(ts, Lambda[i]), first), l)) bad.push_back(Lambda[i]);
  MinorSelection rest = multi(ts, R, bad, l, route, depth);
  MinorSelection sel = selection_union(first, rest);
  for (const auto& a : Lambda)
    if (!memo.at_least(restrict_to(combination(ts, a), sel), l))
      fail(ErrorKind::VerificationFailed, "multidimensional minor lost rank");
  return sel;
}

}  // namespace

MinorResult general_minor_find(const Tensor& t, const PartitionFamily& R, std::size_t l, const MinorOptions& opt) {
  Engine eng(opt);
  MinorResult res;
  res.target = l;
  res.selection = eng.find(t, R, l, res.route, 0);
  if (!verify_minor(t, R, res.selection, l, opt.oracle)) fail(ErrorKind::VerificationFailed, "minor lost rank");
  res.verified = l;
  return res;
}

MinorResult multi_rrank_minor(const std::vector<Tensor>& ts, const PartitionFamily& R,
                              const std::vector<FieldVector>& Lambda, std::size_t l, const MinorOptions& opt) {
  if (ts.empty()) fail(ErrorKind::InvalidInput, "no tensors");
  for (const auto& a : Lambda)
    if (a.size() != ts.size() || is_zero(a)) fail(ErrorKind::InvalidInput, "Lambda must hold nonzero vectors of F^s");
  Engine eng(opt);
  MinorResult res;
  res.target = l;
  res.selection = eng.multi(ts, R, Lambda, l, res.route, 0);
  res.verified = Lambda.empty() ? 0 : l;
  return res;
}

MinorResult product_rank_minor(const Tensor& t, const PartitionFamily& R1, const PartitionFamily& R2, std::size_t l,
                               const MinorOptions& opt) {
  const int d1 = R1.order(), d2 = R2.order(), d = t.order();
  if (d1 + d2 != d) fail(ErrorKind::AxisMismatch, "factor orders must add up to the tensor order");
  if (l == 0) fail(ErrorKind::InvalidInput, "minor target must be positive");
  const PartitionFamily R = product_family(R1, R2);
  RankMemo memo(R, opt.oracle);
  if (!memo.at_least(t, l)) fail(ErrorKind::RankTooLow, "product rank below " + std::to_string(l));
  const AxisMask I = full_mask(d1), J = full_mask(d) & ~I;
  const FieldMatrix A = flatten(t, I);
  const std::size_t r = mat_rank(A);
  MinorResult res;
  res.target = l;
  const std::string pre = "d=" + std::to_string(d) + " " + notion_name(R1) + "x" + notion_name(R2);

  auto unravel_on = [&](AxisMask S, std::size_t idx, std::vector<std::vector<std::size_t>>& pos) {
    std::vector<int> axes = mask_axes(S);
    for (std::size_t i = axes.size(); i-- > 0;) {
      pos[std::size_t(axes[i])].push_back(idx % t.extent(axes[i]));
      idx /= t.extent(axes[i]);
    }
  };

  if (r >= l) {
    FullRankMinor mm = matrix_minor(A, l);
    std::vector<std::vector<std::size_t>> pos(static_cast<std::size_t>(d));
    for (std::size_t row : mm.rows) unravel_on(I, row, pos);
    for (std::size_t col : mm.cols) unravel_on(J, col, pos);
    res.selection = selection_from_positions(t, pos);
    res.route.push_back(pre + ": case 1 (flattening rank " + std::to_string(r) + ")");
  } else {
    RankFactorization rf = rank_factorization(A);
    RankMemo m1(R1, opt.oracle), m2(R2, opt.oracle);
    bool done = false;
    for (std::size_t i = 0; i < rf.cols.size() && !done; ++i) {
      for (int side = 0; side < 2 && !done; ++side) {
        const AxisMask own = side == 0 ? I : J, other = side == 0 ? J : I;
        Tensor Ti = on_axes(t, own, side == 0 ? rf.cols[i] : rf.rows[i]);
        if (!(side == 0 ? m1 : m2).at_least(Ti, l)) continue;
        // u supported on |U| <= l' points with u.T_{other,i'} = delta.
        DualBasis dual = dual_basis(t.field(), side == 0 ? rf.rows : rf.cols);
        MinorSelection inner = general_minor_find(Ti, side == 0 ? R1 : R2, l, opt).selection;
        std::vector<std::vector<std::size_t>> pos(static_cast<std::size_t>(d));
        for (std::size_t idx : dual.support) unravel_on(other, idx, pos);
        std::vector<int> own_axes = mask_axes(own);
        auto inner_pos = selection_positions(Ti, inner);
        for (std::size_t k = 0; k < own_axes.size(); ++k) pos[std::size_t(own_axes[k])] = inner_pos[k];
        res.selection = selection_from_positions(t, pos);
        res.route.push_back(pre + ": case 2 (term " + std::to_string(i + 1) + ", factor " + std::to_string(side + 1) +
                            ")");
        done = true;
      }
    }
    if (!done) {
      res.route.push_back(pre + ": shrink");
      res.selection = shrink_minor(t, memo, l, full_selection(t));
    }
  }
  res.selection.disjoint = pairwise_disjoint(res.selection.sets);
  if (!memo.at_least(restrict_to(t, res.selection), l)) fail(ErrorKind::VerificationFailed, "product minor lost rank");
  res.verified = l;
  return res;
}

}  // namespace minorank
