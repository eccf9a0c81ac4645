#include "minorank/field.hpp"

#include <limits>
#include <string>

#include "minorank/errors.hpp"
#include "minorank/kernels.hpp"

namespace minorank {

bool supported_field_order(int p) { return p == 2 || p == 3 || p == 5 || p == 7; }

Field::Field(int p) {
  if (!supported_field_order(p))
    fail(ErrorKind::ParameterOutOfRange, "unsupported field order " + std::to_string(p));
  p_ = Elem(p);
  for (int a = 1; a < p; ++a)
    for (int b = 1; b < p; ++b)
      if ((a * b) % p == 1) inv_[a] = Elem(b);
}

std::uint64_t Field::power(std::size_t n) const {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p_) return std::numeric_limits<std::uint64_t>::max();
    r *= p_;
  }
  return r;
}

FieldVector add(const Field& f, const FieldVector& a, const FieldVector& b) {
  FieldVector r = a;
  kernels::axpy_mod(r.data(), b.data(), 1, Elem(f.p()), r.size());
  return r;
}

void axpy(const Field& f, FieldVector& y, Elem c, const FieldVector& x) {
  if (c == 0) return;
  kernels::axpy_mod(y.data(), x.data(), c, Elem(f.p()), y.size());
}

Elem dot(const Field& f, const FieldVector& a, const FieldVector& b) {
  unsigned long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += unsigned(a[i]) * b[i];
  return Elem(s % f.p());
}

bool is_zero(const FieldVector& v) {
  for (Elem e : v)
    if (e) return false;
  return true;
}

bool next_vector(const Field& f, FieldVector& v) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < f.p()) return true;
    v[i] = 0;
  }
  return false;
}

FieldVector vector_from_index(const Field& f, std::size_t n, std::uint64_t code) {
  FieldVector v(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = Elem(code % f.p());
    code /= f.p();
  }
  return v;
}

}  // namespace minorank
