#include "minorank/tensor_ops.hpp"

#include <algorithm>
#include <sstream>

#include "minorank/errors.hpp"
#include "minorank/kernels.hpp"

namespace minorank {

std::size_t MinorSelection::max_size() const {
  std::size_t m = 0;
  for (const Axis& a : sets) m = std::max(m, a.size());
  return m;
}

MinorSelection full_selection(const Tensor& t) { return {t.axes(), false}; }

bool pairwise_disjoint(const std::vector<Axis>& sets) {
  std::vector<Label> all;
  for (const Axis& a : sets) all.insert(all.end(), a.begin(), a.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

std::string to_string(const MinorSelection& sel) {
  std::ostringstream os;
  os << "(";
  for (std::size_t a = 0; a < sel.sets.size(); ++a) {
    if (a) os << " x ";
    os << "{";
    for (std::size_t i = 0; i < sel.sets[a].size(); ++i) os << (i ? "," : "") << sel.sets[a][i];
    os << "}";
  }
  os << ")";
  return os.str();
}

Tensor restrict_to(const Tensor& t, const MinorSelection& sel) {
  const int d = t.order();
  if (int(sel.sets.size()) != d) fail(ErrorKind::AxisMismatch, "selection order differs from tensor order");
  std::vector<std::vector<std::size_t>> pos(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const Axis& X = sel.sets[std::size_t(a)];
    if (X.empty()) fail(ErrorKind::EmptyAxis, "selection axis " + std::to_string(a + 1) + " is empty");
    for (Label l : X) {
      auto p = t.position(a, l);
      if (!p) fail(ErrorKind::NotSubset, "label " + std::to_string(l) + " not on axis " + std::to_string(a + 1));
      pos[std::size_t(a)].push_back(*p);
    }
  }
  Tensor r(t.field(), sel.sets);
  std::vector<std::size_t> shape = r.shape(), idx(std::size_t(d), 0);
  std::size_t li = 0;
  do {
    std::size_t src = 0;
    for (int a = 0; a < d; ++a) src += pos[std::size_t(a)][idx[std::size_t(a)]] * t.stride(a);
    r.mutable_values()[li++] = t.value(src);
  } while (next_index(shape, idx));
  return r;
}

Tensor slice_at(const Tensor& t, AxisMask I, std::span<const std::size_t> y) {
  const int d = t.order();
  if (I == 0 || (I & ~full_mask(d))) fail(ErrorKind::BadAxisSet, "slice coordinate set out of range");
  std::vector<int> in = mask_axes(I), out = mask_axes(full_mask(d) & ~I);
  if (y.size() != out.size()) fail(ErrorKind::BadPoint, "slice point has wrong arity");
  std::size_t base = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (y[i] >= t.extent(out[i])) fail(ErrorKind::BadPoint, "slice point out of range");
    base += y[i] * t.stride(out[i]);
  }
  std::vector<Axis> axes;
  std::vector<std::size_t> shape;
  for (int a : in) {
    axes.push_back(t.axis(a));
    shape.push_back(t.extent(a));
  }
  Tensor s(t.field(), std::move(axes));
  std::vector<std::size_t> idx(in.size(), 0);
  std::size_t li = 0;
  do {
    std::size_t src = base;
    for (std::size_t i = 0; i < in.size(); ++i) src += idx[i] * t.stride(in[i]);
    s.mutable_values()[li++] = t.value(src);
  } while (next_index(shape, idx));
  return s;
}

Tensor slice(const Tensor& t, AxisMask I, std::span<const Label> y) {
  std::vector<int> out = mask_axes(full_mask(t.order()) & ~I);
  if (y.size() != out.size()) fail(ErrorKind::BadPoint, "slice point has wrong arity");
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto p = t.position(out[i], y[i]);
    if (!p) fail(ErrorKind::BadPoint, "slice label " + std::to_string(y[i]) + " not on axis");
    pos.push_back(*p);
  }
  return slice_at(t, I, pos);
}

Tensor contract(const FieldVector& u, const Tensor& t, int axis) {
  const int d = t.order();
  if (axis < 0 || axis >= d || d < 2) fail(ErrorKind::AxisMismatch, "contraction axis out of range");
  if (u.size() != t.extent(axis)) fail(ErrorKind::AxisMismatch, "contraction vector has wrong length");
  std::vector<Axis> axes;
  for (int a = 0; a < d; ++a)
    if (a != axis) axes.push_back(t.axis(a));
  Tensor r(t.field(), std::move(axes));
  const Elem p = Elem(t.field().p());
  const std::size_t inner = t.stride(axis);
  const std::size_t outer = t.size() / (inner * t.extent(axis));
  for (std::size_t o = 0; o < outer; ++o) {
    Elem* dst = r.mutable_values().data() + o * inner;
    for (std::size_t x = 0; x < u.size(); ++x) {
      if (!u[x]) continue;
      const Elem* src = t.values().data() + (o * t.extent(axis) + x) * inner;
      kernels::axpy_mod(dst, src, u[x], p, inner);
    }
  }
  return r;
}

FieldMatrix flatten(const Tensor& t, AxisMask I) {
  const int d = t.order();
  AxisMask full = full_mask(d);
  if (I == 0 || (I & ~full) || I == full) fail(ErrorKind::BadAxisSet, "flatten needs a proper nonempty axis set");
  std::vector<int> rows = mask_axes(I), cols = mask_axes(full & ~I);
  std::size_t R = 1, C = 1;
  for (int a : rows) R *= t.extent(a);
  for (int a : cols) C *= t.extent(a);
  FieldMatrix m(t.field(), R, C);
  std::vector<std::size_t> pos(std::size_t(d), 0), shape = t.shape();
  std::size_t li = 0;
  do {
    std::size_t r = 0, c = 0;
    for (int a : rows) r = r * t.extent(a) + pos[std::size_t(a)];
    for (int a : cols) c = c * t.extent(a) + pos[std::size_t(a)];
    m.set(r, c, t.value(li++));
  } while (next_index(shape, pos));
  return m;
}

Tensor unflatten(const FieldMatrix& m, const Tensor& like, AxisMask I) {
  const int d = like.order();
  std::vector<int> rows = mask_axes(I), cols = mask_axes(full_mask(d) & ~I);
  Tensor t = like.zeros_like();
  std::vector<std::size_t> pos(std::size_t(d), 0), shape = t.shape();
  std::size_t li = 0;
  do {
    std::size_t r = 0, c = 0;
    for (int a : rows) r = r * t.extent(a) + pos[std::size_t(a)];
    for (int a : cols) c = c * t.extent(a) + pos[std::size_t(a)];
    t.mutable_values()[li++] = m.at(r, c);
  } while (next_index(shape, pos));
  return t;
}

Tensor permute_axes(const Tensor& t, const std::vector<int>& perm) {
  const int d = t.order();
  std::vector<Axis> axes;
  for (int a = 0; a < d; ++a) axes.push_back(t.axis(perm[std::size_t(a)]));
  Tensor r(t.field(), std::move(axes));
  std::vector<std::size_t> pos(std::size_t(d), 0), shape = r.shape();
  std::size_t li = 0;
  do {
    std::size_t src = 0;
    for (int a = 0; a < d; ++a) src += pos[std::size_t(a)] * t.stride(perm[std::size_t(a)]);
    r.mutable_values()[li++] = t.value(src);
  } while (next_index(shape, pos));
  return r;
}

std::vector<std::size_t> sub_indices(const Tensor& t, AxisMask S) {
  const int d = t.order();
  std::vector<std::size_t> mult(std::size_t(d), 0);
  std::size_t m = 1;
  for (int a = d - 1; a >= 0; --a)
    if (S >> a & 1) {
      mult[std::size_t(a)] = m;
      m *= t.extent(a);
    }
  std::vector<std::size_t> out(t.size());
  std::vector<std::size_t> pos(std::size_t(d), 0), shape = t.shape();
  std::size_t li = 0;
  do {
    std::size_t idx = 0;
    for (int a = 0; a < d; ++a) idx += mult[std::size_t(a)] * pos[std::size_t(a)];
    out[li++] = idx;
  } while (next_index(shape, pos));
  return out;
}

Tensor sub_tensor(const Tensor& like, AxisMask I, std::vector<Elem> values) {
  std::vector<Axis> axes;
  for (int a : mask_axes(I)) axes.push_back(like.axis(a));
  return Tensor(like.field(), std::move(axes), std::move(values));
}

DiagonalSet::DiagonalSet(std::vector<Axis> axes, AxisMask I) : axes_(std::move(axes)), mask_(I), idx_(mask_axes(I)) {}

bool DiagonalSet::contains(std::span<const Label> coords) const {
  for (std::size_t i = 0; i < idx_.size(); ++i)
    for (std::size_t j = i + 1; j < idx_.size(); ++j)
      if (coords[std::size_t(idx_[i])] == coords[std::size_t(idx_[j])]) return true;
  return false;
}

bool DiagonalSet::contains_linear(const Tensor& shape_like, std::size_t linear) const {
  auto labels = shape_like.labels_of(linear);
  return contains(labels);
}

bool in_diagonal(std::span<const Label> coords, AxisMask I) {
  std::vector<int> idx = mask_axes(I);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (coords[std::size_t(idx[i])] == coords[std::size_t(idx[j])]) return true;
  return false;
}

std::vector<std::size_t> off_diagonal_support(const Tensor& t) {
  std::vector<std::size_t> out;
  AxisMask all = full_mask(t.order());
  for (std::size_t li = 0; li < t.size(); ++li) {
    if (!t.value(li)) continue;
    auto labels = t.labels_of(li);
    if (!in_diagonal(labels, all)) out.push_back(li);
  }
  return out;
}

bool supported_in_diagonal(const Tensor& t) { return off_diagonal_support(t).empty(); }

}  // namespace minorank
