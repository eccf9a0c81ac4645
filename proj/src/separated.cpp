#include <algorithm>

#include "minorank/errors.hpp"
#include "minorank/minors.hpp"

namespace minorank {

namespace {

std::vector<std::vector<std::size_t>> complement_points(const Tensor& t, AxisMask C) {
  std::vector<std::size_t> shape;
  for (int a : mask_axes(full_mask(t.order()) & ~C)) shape.push_back(t.extent(a));
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> y(shape.size(), 0);
  do out.push_back(y);
  while (next_index(shape, y));
  return out;
}

// T_y + sum_i a_i T_{y_i}
Tensor shifted(const Tensor& base, const std::vector<Tensor>& chosen, const FieldVector& a) {
  Tensor out = base;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    if (a[i]) out += chosen[i].scaled(a[i]);
  return out;
}

}  // namespace

SeparatedSearch separated_family_search(const Tensor& t, AxisMask C, const std::vector<std::size_t>& D, std::size_t l,
                                        const OracleOptions& opt) {
  const int d = t.order();
  const AxisMask full = full_mask(d);
  if (C == 0 || (C & ~full) || C == full) fail(ErrorKind::BadAxisSet, "slice axes must be a proper nonempty subset");
  if (l == 0 || D.size() != l) fail(ErrorKind::InvalidInput, "schedule must have one entry per step");
  for (std::size_t j = 0; j < l; ++j) {
    if (D[j] == 0) fail(ErrorKind::InvalidInput, "schedule entries must be positive");
    if (j > 0 && D[j] > D[j - 1]) fail(ErrorKind::InvalidInput, "schedule must be non-increasing");
  }
  const Field& f = t.field();
  if (f.power(l) > opt.node_budget) fail(ErrorKind::ScaleExceeded, "too many combinations to check");

  const auto Y = complement_points(t, C);
  std::vector<Tensor> slices;
  for (const auto& y : Y) slices.push_back(c_slice(t, C, y));
  RankMemo memo(PartitionFamily::partition_rank(mask_size(C)), opt);

  SeparatedSearch out;
  SeparatedFamily& fam = out.family;
  fam.C = C;
  fam.schedule = D;
  std::vector<std::size_t> chosen;
  std::vector<Tensor> chosen_slices;
  for (std::size_t j = 0; j < l; ++j) {
    // a_j = 1 after scaling; combinations with a_j = 0 already meet D(j-1) >= D(j).
    bool found = false;
    for (std::size_t yi = 0; yi < Y.size() && !found; ++yi) {
      if (std::find(chosen.begin(), chosen.end(), yi) != chosen.end()) continue;
      bool ok = true;
      FieldVector a(j, 0);
      do {
        ++fam.combinations_checked;
        ok = memo.at_least(shifted(slices[yi], chosen_slices, a), D[j]);
      } while (ok && next_vector(f, a));
      if (ok) {
        chosen.push_back(yi);
        chosen_slices.push_back(slices[yi]);
        fam.points.push_back(Y[yi]);
        found = true;
      }
    }
    if (!found) break;
  }
  const std::size_t lp = chosen.size();
  fam.threshold = lp == 0 ? 0 : D[lp - 1];
  if (lp == l) return out;

  // Every y has coefficients with pr(T_y - sum A_i(y) T_{y_i}) < D(l'+1).
  ApproximationTable table;
  const std::size_t bound = D[lp];
  for (std::size_t yi = 0; yi < Y.size(); ++yi) {
    FieldVector a(lp, 0);
    bool found = false;
    do {
      ++fam.combinations_checked;
      Tensor residual = shifted(slices[yi], chosen_slices, a);
      if (!memo.at_least(residual, bound)) {
        FieldVector coeff(lp);
        for (std::size_t i = 0; i < lp; ++i) coeff[i] = f.neg(a[i]);
        std::size_t r = memo.rank(residual);
        table.coeffs.push_back(std::move(coeff));
        table.residual.push_back(r);
        table.residual_bound = std::max(table.residual_bound, r);
        found = true;
      }
    } while (!found && next_vector(f, a));
    if (!found) fail(ErrorKind::VerificationFailed, "stopping criterion left a slice without an approximation");
  }
  out.table = std::move(table);
  return out;
}

}  // namespace minorank
