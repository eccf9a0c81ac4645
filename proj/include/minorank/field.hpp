#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace minorank {

using Elem = std::uint8_t;
using FieldVector = std::vector<Elem>;

// Prime field F_p for p in {2, 3, 5, 7}. Elements are stored reduced in [0, p).
class Field {
 public:
  explicit Field(int p = 2);

  int p() const { return p_; }
  bool binary() const { return p_ == 2; }

  Elem add(Elem a, Elem b) const {
    unsigned s = unsigned(a) + b;
    return Elem(s >= p_ ? s - p_ : s);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return a == 0 ? 0 : Elem(p_ - a); }
  Elem mul(Elem a, Elem b) const { return Elem((unsigned(a) * b) % p_); }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem reduce(long long v) const {
    long long r = v % p_;
    return Elem(r < 0 ? r + p_ : r);
  }

  // Number of vectors in F_p^n, saturating at UINT64_MAX.
  std::uint64_t power(std::size_t n) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  Elem p_;
  std::array<Elem, 8> inv_{};
};

bool supported_field_order(int p);

// Vector arithmetic helpers.
FieldVector add(const Field& f, const FieldVector& a, const FieldVector& b);
void axpy(const Field& f, FieldVector& y, Elem c, const FieldVector& x);
Elem dot(const Field& f, const FieldVector& a, const FieldVector& b);
bool is_zero(const FieldVector& v);

// Iterates all vectors of F_p^n in lexicographic order (last coordinate fastest).
// Returns false after the last vector.
bool next_vector(const Field& f, FieldVector& v);

// Vector with index `code` in the lexicographic enumeration of F_p^n.
FieldVector vector_from_index(const Field& f, std::size_t n, std::uint64_t code);

}  // namespace minorank
