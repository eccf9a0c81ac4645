#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "minorank/field.hpp"

namespace minorank {

using Label = std::uint32_t;
using Axis = std::vector<Label>;
// Bit a set <=> axis a (0-based) belongs to the coordinate set.
using AxisMask = std::uint32_t;

inline constexpr std::size_t kMaxTensorSize = std::size_t(1) << 20;

// Dense order-d array over F_p. Axis a carries a strictly increasing list of
// labels; values are stored row-major with the last axis fastest.
class Tensor {
 public:
  Tensor() = default;
  Tensor(Field f, std::vector<Axis> axes);
  Tensor(Field f, std::vector<Axis> axes, std::vector<Elem> values);

  // [n]^d with labels 1..n on every axis.
  static Tensor cube(Field f, int d, std::size_t n);

  const Field& field() const { return field_; }
  int order() const { return int(axes_.size()); }
  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(int a) const { return axes_[std::size_t(a)]; }
  std::size_t extent(int a) const { return axes_[std::size_t(a)].size(); }
  std::vector<std::size_t> shape() const;
  std::size_t size() const { return values_.size(); }
  std::size_t stride(int a) const { return strides_[std::size_t(a)]; }

  const std::vector<Elem>& values() const { return values_; }
  std::vector<Elem>& mutable_values() { return values_; }
  Elem value(std::size_t linear) const { return values_[linear]; }
  void set_value(std::size_t linear, Elem v) { values_[linear] = Elem(v % field_.p()); }

  std::size_t linear_index(std::span<const std::size_t> pos) const;
  void unravel(std::size_t linear, std::span<std::size_t> pos) const;
  Elem at(std::span<const std::size_t> pos) const { return values_[linear_index(pos)]; }
  void set(std::span<const std::size_t> pos, Elem v) { set_value(linear_index(pos), v); }

  std::optional<std::size_t> position(int a, Label label) const;
  // Value at a label tuple; throws BadPoint when a label is absent.
  Elem at_labels(std::span<const Label> labels) const;
  void set_labels(std::span<const Label> labels, Elem v);
  std::vector<Label> labels_of(std::size_t linear) const;

  bool is_zero() const;
  std::size_t support_size() const;
  bool same_shape(const Tensor& o) const { return field_ == o.field_ && axes_ == o.axes_; }

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor scaled(Elem c) const;
  Tensor zeros_like() const { return Tensor(field_, axes_); }

  bool operator==(const Tensor& o) const {
    return field_ == o.field_ && axes_ == o.axes_ && values_ == o.values_;
  }

 private:
  void init_strides();

  Field field_;
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::vector<Elem> values_;
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);

// Iterates over all multi-indices of a shape; last coordinate fastest.
bool next_index(const std::vector<std::size_t>& shape, std::vector<std::size_t>& pos);

AxisMask full_mask(int d);
std::vector<int> mask_axes(AxisMask m);
inline int mask_size(AxisMask m) { return __builtin_popcount(m); }

}  // namespace minorank
