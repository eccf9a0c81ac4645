#include "minorank/ff_minors.hpp"

#include "minorank/bias.hpp"
#include "minorank/errors.hpp"

namespace minorank {

namespace {

MinorSelection find(const Tensor& t, std::size_t l, const MinorOptions& opt, std::vector<std::string>& route) {
  const int d = t.order();
  const std::string pre = "d=" + std::to_string(d) + " pr";
  RankMemo memo(PartitionFamily::partition_rank(d), opt.oracle);
  if (!memo.at_least(t, l)) fail(ErrorKind::RankTooLow, "partition rank below " + std::to_string(l));

  if (d == 2) {
    FullRankMinor mm = matrix_minor(flatten(t, 1), l);
    route.push_back(pre + ": matrix minor");
    return selection_from_positions(t, {mm.rows, mm.cols});
  }

  std::optional<std::vector<FieldVector>> us;
  try {
    us = separated_projections(t, l, l, opt.oracle);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ScaleExceeded) throw;
  }
  if (!us) {
    route.push_back(pre + ": shrink");
    return shrink_minor(t, memo, l, full_selection(t));
  }

  const Field& f = t.field();
  const std::size_t mark = route.size();
  route.push_back(pre + ": " + std::to_string(l) + " separated projections");
  MinorSelection rest;  // on axes 2..d
  for (const auto& v : nonzero_vectors(f, l)) {
    Tensor s = contract(combine(f, *us, v), t, 0);
    std::vector<std::string> sub;
    rest = selection_union(rest, find(s, l, opt, sub));
    if (route.size() == mark + 1) route.insert(route.end(), sub.begin(), sub.end());
  }

  // Slices T_{x1} restricted to X_2 x ... x X_d and a spanning subfamily.
  MinorSelection wide;
  wide.sets.push_back(t.axis(0));
  wide.sets.insert(wide.sets.end(), rest.sets.begin(), rest.sets.end());
  const Tensor tw = restrict_to(t, wide);
  const FieldMatrix slices = flatten(tw, 1);
  std::vector<FieldVector> rows;
  for (std::size_t r = 0; r < slices.rows(); ++r) rows.push_back(slices.row(r));
  std::vector<std::size_t> X1 = independent_subfamily(f, rows);
  if (X1.empty()) fail(ErrorKind::VerificationFailed, "restricted slices vanish");

  // u'_h(x1') = sum_{x1} u_h(x1) a_{x1'}(x1), with T_{x1} = sum a_{x1'}(x1) T_{x1'} on X.
  std::vector<FieldVector> gens;
  for (std::size_t i : X1) gens.push_back(rows[i]);
  std::vector<FieldVector> uprime(l, FieldVector(X1.size(), 0));
  for (std::size_t x = 0; x < rows.size(); ++x) {
    auto a = solve_combination(f, gens, rows[x]);
    if (!a) fail(ErrorKind::VerificationFailed, "slice outside the span of the chosen slices");
    for (std::size_t h = 0; h < l; ++h)
      for (std::size_t j = 0; j < X1.size(); ++j) uprime[h][j] = f.add(uprime[h][j], f.mul((*us)[h][x], (*a)[j]));
  }

  MinorSelection sel = wide;
  sel.sets[0].clear();
  for (std::size_t i : X1) sel.sets[0].push_back(t.axis(0)[i]);
  sel.disjoint = pairwise_disjoint(sel.sets);
  const Tensor tr = restrict_to(t, sel);
  if (opt.check_invariants) {
    RankMemo low(PartitionFamily::partition_rank(d - 1), opt.oracle);
    if (!is_separated(tr, uprime, l, low)) fail(ErrorKind::VerificationFailed, "rewritten projections not separated");
  }
  if (!memo.at_least(tr, l)) fail(ErrorKind::VerificationFailed, "partition rank minor lost rank");
  return sel;
}

}  // namespace

MinorResult ff_pr_minor_find(const Tensor& t, std::size_t l, const MinorOptions& opt) {
  if (l == 0) fail(ErrorKind::InvalidInput, "minor target must be positive");
  if (t.order() < 2) fail(ErrorKind::InvalidInput, "tensors of order at least 2 expected");
  MinorResult res;
  res.target = l;
  res.selection = find(t, l, opt, res.route);
  if (!verify_minor(t, PartitionFamily::partition_rank(t.order()), res.selection, l, opt.oracle))
    fail(ErrorKind::VerificationFailed, "minor lost rank");
  res.verified = l;
  return res;
}

}  // namespace minorank
