#include "minorank/span_basis.hpp"

#include <algorithm>
#include <cstring>

#include "minorank/kernels.hpp"

namespace minorank {

SpanBasis::SpanBasis(Field f, std::size_t length)
    : field_(f), length_(length), stride_(f.binary() ? (length + 63) / 64 : length) {
  if (field_.binary())
    scratch_bits_.resize(std::max<std::size_t>(stride_, 1));
  else
    scratch_bytes_.resize(std::max<std::size_t>(stride_, 1));
}

std::vector<std::uint64_t> SpanBasis::pack_bits(const FieldVector& v) const {
  std::vector<std::uint64_t> w(stride_, 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] & 1) w[i >> 6] |= std::uint64_t(1) << (i & 63);
  return w;
}

FieldVector SpanBasis::unpack_bits(const std::uint64_t* w) const {
  FieldVector v(length_, 0);
  for (std::size_t i = 0; i < length_; ++i) v[i] = Elem((w[i >> 6] >> (i & 63)) & 1);
  return v;
}

bool SpanBasis::reduce_from(std::size_t from, std::uint64_t* w) const {
  for (std::size_t r = from; r < pivots_.size(); ++r) {
    std::size_t pc = pivots_[r];
    if ((w[pc >> 6] >> (pc & 63)) & 1) kernels::xor_words(w, bits_.data() + r * stride_, stride_);
  }
  for (std::size_t i = 0; i < stride_; ++i)
    if (w[i]) return false;
  return true;
}

bool SpanBasis::reduce(std::uint64_t* w) const { return reduce_from(0, w); }

bool SpanBasis::reduce_from(std::size_t from, Elem* v) const {
  const Elem p = Elem(field_.p());
  for (std::size_t r = from; r < pivots_.size(); ++r) {
    Elem c = v[pivots_[r]];
    if (c) kernels::axpy_mod(v, bytes_.data() + r * stride_, Elem(p - c), p, stride_);
  }
  for (std::size_t i = 0; i < stride_; ++i)
    if (v[i]) return false;
  return true;
}

bool SpanBasis::reduce(Elem* v) const { return reduce_from(0, v); }

bool SpanBasis::insert(const std::uint64_t* w) {
  std::copy(w, w + stride_, scratch_bits_.begin());
  return insert_reduced_bits(scratch_bits_);
}

bool SpanBasis::insert_reduced_bits(std::vector<std::uint64_t>& s) {
  if (reduce(s.data())) return false;
  for (std::size_t i = 0; i < stride_; ++i) {
    if (s[i]) {
      pivots_.push_back(i * 64 + std::size_t(__builtin_ctzll(s[i])));
      bits_.insert(bits_.end(), s.begin(), s.begin() + stride_);
      return true;
    }
  }
  return false;
}

bool SpanBasis::insert(const Elem* v) {
  std::copy(v, v + stride_, scratch_bytes_.begin());
  Elem* s = scratch_bytes_.data();
  if (reduce(s)) return false;
  std::size_t pc = 0;
  while (s[pc] == 0) ++pc;
  Elem scale = field_.inv(s[pc]);
  for (std::size_t i = 0; i < stride_; ++i) s[i] = field_.mul(s[i], scale);
  pivots_.push_back(pc);
  bytes_.insert(bytes_.end(), s, s + stride_);
  return true;
}

bool SpanBasis::insert(const FieldVector& v) {
  if (field_.binary()) {
    auto w = pack_bits(v);
    return insert(w.data());
  }
  return insert(v.data());
}

bool SpanBasis::contains(const FieldVector& v) const {
  if (field_.binary()) {
    auto w = pack_bits(v);
    return reduce(w.data());
  }
  FieldVector c = v;
  return reduce(c.data());
}

void SpanBasis::truncate(std::size_t dim) {
  if (dim >= pivots_.size()) return;
  pivots_.resize(dim);
  if (field_.binary())
    bits_.resize(dim * stride_);
  else
    bytes_.resize(dim * stride_);
}

}  // namespace minorank
