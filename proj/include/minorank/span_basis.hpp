#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "minorank/field.hpp"

namespace minorank {

// Incremental echelon basis of a subspace of F_p^n. Rows are appended in
// insertion order, each reduced against its predecessors, so truncating back to
// an earlier dimension is an exact rollback. Over F_2 rows are bit-packed in
// 64-bit words; otherwise one byte per entry with the pivot entry scaled to 1.
class SpanBasis {
 public:
  SpanBasis(Field f, std::size_t length);

  const Field& field() const { return field_; }
  std::size_t length() const { return length_; }
  std::size_t dimension() const { return pivots_.size(); }
  // Words (F_2) or bytes (otherwise) per packed row.
  std::size_t stride() const { return stride_; }

  // Packing helpers for callers that keep their own buffers.
  std::vector<std::uint64_t> pack_bits(const FieldVector& v) const;
  FieldVector unpack_bits(const std::uint64_t* w) const;

  // Reduce in place against the basis; true iff the residual is zero.
  bool reduce(std::uint64_t* w) const;
  bool reduce(Elem* v) const;
  // Reduce against rows [from, dimension()) only.
  bool reduce_from(std::size_t from, std::uint64_t* w) const;
  bool reduce_from(std::size_t from, Elem* v) const;

  // Insert a packed row (reduced copy is stored); true iff it was independent.
  bool insert(const std::uint64_t* w);
  bool insert(const Elem* v);
  bool insert(const FieldVector& v);

  bool contains(const FieldVector& v) const;
  void truncate(std::size_t dim);

 private:
  bool insert_reduced_bits(std::vector<std::uint64_t>& scratch);

  Field field_;
  std::size_t length_;
  std::size_t stride_;
  std::vector<std::uint64_t> bits_;
  std::vector<Elem> bytes_;
  std::vector<std::size_t> pivots_;
  mutable std::vector<std::uint64_t> scratch_bits_;
  mutable std::vector<Elem> scratch_bytes_;
};

}  // namespace minorank
