#include "minorank/tensor.hpp"

#include <algorithm>
#include <string>

#include "minorank/errors.hpp"
#include "minorank/kernels.hpp"

namespace minorank {

Tensor::Tensor(Field f, std::vector<Axis> axes) : field_(f), axes_(std::move(axes)) {
  init_strides();
  std::size_t n = 1;
  for (const Axis& a : axes_) n *= a.size();
  values_.assign(n, 0);
}

Tensor::Tensor(Field f, std::vector<Axis> axes, std::vector<Elem> values) : Tensor(f, std::move(axes)) {
  if (values.size() != values_.size()) fail(ErrorKind::InvalidInput, "value count does not match shape");
  values_ = std::move(values);
  for (Elem& e : values_) e = Elem(e % field_.p());
}

void Tensor::init_strides() {
  if (axes_.empty()) fail(ErrorKind::InvalidInput, "tensor needs at least one axis");
  std::size_t n = 1;
  for (const Axis& a : axes_) {
    if (a.empty()) fail(ErrorKind::EmptyAxis, "tensor axis is empty");
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i - 1] >= a[i]) fail(ErrorKind::InvalidInput, "axis labels must be strictly increasing");
    if (n > kMaxTensorSize / a.size()) fail(ErrorKind::ScaleExceeded, "tensor exceeds 2^20 entries");
    n *= a.size();
  }
  strides_.assign(axes_.size(), 1);
  for (std::size_t a = axes_.size() - 1; a-- > 0;) strides_[a] = strides_[a + 1] * axes_[a + 1].size();
}

Tensor Tensor::cube(Field f, int d, std::size_t n) {
  Axis ax(n);
  for (std::size_t i = 0; i < n; ++i) ax[i] = Label(i + 1);
  return Tensor(f, std::vector<Axis>(std::size_t(d), ax));
}

std::vector<std::size_t> Tensor::shape() const {
  std::vector<std::size_t> s;
  for (const Axis& a : axes_) s.push_back(a.size());
  return s;
}

std::size_t Tensor::linear_index(std::span<const std::size_t> pos) const {
  std::size_t li = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) li += pos[a] * strides_[a];
  return li;
}

void Tensor::unravel(std::size_t linear, std::span<std::size_t> pos) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    pos[a] = linear / strides_[a];
    linear %= strides_[a];
  }
}

std::optional<std::size_t> Tensor::position(int a, Label label) const {
  const Axis& ax = axes_[std::size_t(a)];
  auto it = std::lower_bound(ax.begin(), ax.end(), label);
  if (it == ax.end() || *it != label) return std::nullopt;
  return std::size_t(it - ax.begin());
}

Elem Tensor::at_labels(std::span<const Label> labels) const {
  std::size_t li = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    auto p = position(int(a), labels[a]);
    if (!p) fail(ErrorKind::BadPoint, "label " + std::to_string(labels[a]) + " not on axis " + std::to_string(a + 1));
    li += *p * strides_[a];
  }
  return values_[li];
}

void Tensor::set_labels(std::span<const Label> labels, Elem v) {
  std::vector<std::size_t> pos(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    auto p = position(int(a), labels[a]);
    if (!p) fail(ErrorKind::BadPoint, "label " + std::to_string(labels[a]) + " not on axis " + std::to_string(a + 1));
    pos[a] = *p;
  }
  set(pos, v);
}

std::vector<Label> Tensor::labels_of(std::size_t linear) const {
  std::vector<Label> out(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    out[a] = axes_[a][linear / strides_[a]];
    linear %= strides_[a];
  }
  return out;
}

bool Tensor::is_zero() const { return minorank::is_zero(values_); }

std::size_t Tensor::support_size() const {
  return std::size_t(std::count_if(values_.begin(), values_.end(), [](Elem e) { return e != 0; }));
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (!same_shape(o)) fail(ErrorKind::AxisMismatch, "tensor shapes differ");
  kernels::axpy_mod(values_.data(), o.values_.data(), 1, Elem(field_.p()), values_.size());
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (!same_shape(o)) fail(ErrorKind::AxisMismatch, "tensor shapes differ");
  kernels::axpy_mod(values_.data(), o.values_.data(), field_.neg(1), Elem(field_.p()), values_.size());
  return *this;
}

Tensor Tensor::scaled(Elem c) const {
  Tensor t = *this;
  for (Elem& e : t.values_) e = field_.mul(e, c);
  return t;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }

bool next_index(const std::vector<std::size_t>& shape, std::vector<std::size_t>& pos) {
  for (std::size_t i = shape.size(); i-- > 0;) {
    if (++pos[i] < shape[i]) return true;
    pos[i] = 0;
  }
  return false;
}

AxisMask full_mask(int d) { return d >= 32 ? ~AxisMask(0) : (AxisMask(1) << d) - 1; }

std::vector<int> mask_axes(AxisMask m) {
  std::vector<int> out;
  for (int a = 0; a < 32; ++a)
    if (m >> a & 1) out.push_back(a);
  return out;
}

}  // namespace minorank
