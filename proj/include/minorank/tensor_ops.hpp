#pragma once

#include <span>
#include <string>
#include <vector>

#include "minorank/matrix.hpp"
#include "minorank/tensor.hpp"

namespace minorank {

struct MinorSelection {
  std::vector<Axis> sets;
  bool disjoint = false;

  std::size_t max_size() const;
  bool operator==(const MinorSelection& o) const = default;
};

MinorSelection full_selection(const Tensor& t);
bool pairwise_disjoint(const std::vector<Axis>& sets);
std::string to_string(const MinorSelection& sel);

// T(X_1 x ... x X_d).
Tensor restrict_to(const Tensor& t, const MinorSelection& sel);

// T_y on the axes in I, y listing labels of the complementary axes in order.
Tensor slice(const Tensor& t, AxisMask I, std::span<const Label> y);
// Same with y given as positions.
Tensor slice_at(const Tensor& t, AxisMask I, std::span<const std::size_t> y);

// (u.T) along `axis`: sum_x u(x) T(..., x, ...). Order drops by one.
Tensor contract(const FieldVector& u, const Tensor& t, int axis = 0);

// Rows indexed by prod_{a in I} Q_a, columns by the complement (last axis fastest).
FieldMatrix flatten(const Tensor& t, AxisMask I);

// Inverse of flatten for a matrix of matching size.
Tensor unflatten(const FieldMatrix& m, const Tensor& like, AxisMask I);

// New axis a is old axis perm[a].
Tensor permute_axes(const Tensor& t, const std::vector<int>& perm);

// For every linear index of t, its index in prod_{a in S} Q_a (last axis fastest).
std::vector<std::size_t> sub_indices(const Tensor& t, AxisMask S);
// Tensor on the axes in I given as a dense value vector (last axis fastest).
Tensor sub_tensor(const Tensor& like, AxisMask I, std::vector<Elem> values);

// E(I) membership: two distinct axes of I carry equal labels.
class DiagonalSet {
 public:
  DiagonalSet(std::vector<Axis> axes, AxisMask I);
  bool contains(std::span<const Label> coords) const;
  bool contains_linear(const Tensor& shape_like, std::size_t linear) const;
  AxisMask mask() const { return mask_; }

 private:
  std::vector<Axis> axes_;
  AxisMask mask_;
  std::vector<int> idx_;
};

bool in_diagonal(std::span<const Label> coords, AxisMask I);

// Linear indices of the support points outside E.
std::vector<std::size_t> off_diagonal_support(const Tensor& t);
bool supported_in_diagonal(const Tensor& t);

}  // namespace minorank
