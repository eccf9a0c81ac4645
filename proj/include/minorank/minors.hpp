#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minorank/certificate.hpp"
#include "minorank/matrix.hpp"
#include "minorank/partition.hpp"
#include "minorank/rank_oracles.hpp"
#include "minorank/tensor.hpp"
#include "minorank/tensor_ops.hpp"

namespace minorank {

struct MinorOptions {
  OracleOptions oracle;
  // Re-check loop invariants (row removal keeps the ranks it promises) on
  // every iteration. Costly; meant for tests.
  bool check_invariants = false;
};

// A selection together with how it was found. `route` gets one entry per
// recursion step, e.g. "d=3 sr: case 1", "d=3 tr: base", "shrink".
struct MinorResult {
  MinorSelection selection;
  std::size_t target = 0;
  std::size_t verified = 0;  // oracle-confirmed lower bound on the restricted rank
  std::vector<std::string> route;
};

// ---- selection helpers ----

// Selection from positions per axis (sorted and deduplicated).
MinorSelection selection_from_positions(const Tensor& t, const std::vector<std::vector<std::size_t>>& pos);
// Axis-wise union.
MinorSelection selection_union(const MinorSelection& a, const MinorSelection& b);
// Positions of the labels of `sel` on each axis of t.
std::vector<std::vector<std::size_t>> selection_positions(const Tensor& t, const MinorSelection& sel);
// Singleton selection at the first support point; throws RankTooLow for zero.
MinorSelection support_point_selection(const Tensor& t);
// Starting from `start`, drop labels one at a time (axis 0 first, labels
// ascending) whenever Rrk of the restriction stays >= l. Requires that the
// start already satisfies the bound.
MinorSelection shrink_minor(const Tensor& t, RankMemo& memo, std::size_t l, MinorSelection start);
// l rows and l columns of m forming a nonsingular l x l submatrix; RankTooLow
// when rank(m) < l.
FullRankMinor matrix_minor(const FieldMatrix& m, std::size_t l);

// ---- tensor rank ----

// Per axis, keep k independent slices (or a maximal independent family when
// fewer exist). tr of the restriction is >= k, and equals tr(t) when tr(t) <= k.
// RankTooLow when tr(t) < k.
MinorResult tr_minor_extract(const Tensor& t, std::size_t k, const MinorOptions& opt = {});

struct MatrixMinor {
  std::vector<std::size_t> rows, cols;  // positions
};
// Rows then columns, at most s*k of each, with
// rank((a.A)(X x Y)) >= min(rank(a.A), k) for every a in F^s.
MatrixMinor multi_matrix_minor(const std::vector<FieldMatrix>& mats, std::size_t k, const MinorOptions& opt = {});
// Every a in F^s satisfies rank((a.A)(X x Y)) >= min(rank(a.A), k).
bool check_multi_matrix_minor(const std::vector<FieldMatrix>& mats, const MatrixMinor& mm, std::size_t k);

// Same guarantee for tr of linear combinations of s tensors of one shape.
MinorResult multi_tensor_minor(const std::vector<Tensor>& ts, std::size_t k, const MinorOptions& opt = {});
bool check_multi_tensor_minor(const std::vector<Tensor>& ts, const MinorSelection& sel, std::size_t k,
                              const OracleOptions& opt = {});

// a.T = sum_i a_i T_i.
Tensor combination(const std::vector<Tensor>& ts, const FieldVector& a);

// ---- separated families of C-slices ----

struct SeparatedFamily {
  AxisMask C = 0;                          // slice axes; points live on the complement
  std::vector<std::vector<std::size_t>> points;  // positions on the complement axes, in order
  std::vector<std::size_t> schedule;       // D(1..l)
  std::size_t threshold = 0;               // D(l'), or 0 for the empty family
  std::uint64_t combinations_checked = 0;  // (a, y) pairs the scan evaluated
  std::size_t size() const { return points.size(); }
};

struct ApproximationTable {
  // For the j-th complement position y (canonical order, last axis fastest):
  // pr(T_y - sum_i coeffs[j][i] T_{y_i}) = residual[j].
  std::vector<FieldVector> coeffs;
  std::vector<std::size_t> residual;
  std::size_t residual_bound = 0;  // max residual, <= D(l'+1) - 1
};

struct SeparatedSearch {
  SeparatedFamily family;
  std::optional<ApproximationTable> table;  // absent when the full family was found
};

// Process with radii. D must be non-increasing with l entries; each step takes
// the first complement position whose addition keeps
// pr(sum a_i T_{y_i}) >= D(j) for all nonzero a. Stops early with a table.
SeparatedSearch separated_family_search(const Tensor& t, AxisMask C, const std::vector<std::size_t>& D,
                                        std::size_t l, const OracleOptions& opt = {});

// Slice of t on the axes of C at complement positions y.
Tensor c_slice(const Tensor& t, AxisMask C, const std::vector<std::size_t>& y);

// ---- certificate transforms ----

// Rewrite every term whose partition contains the largest part C as terms in
// which C is split in two, using dual functionals on the complement slices.
// Requires pr(T_y) <= m for every C-slice (SliceBoundViolated otherwise).
// The result is a certificate for the down-shadow R' with at most
// l(lm + l^2 + 1) terms, l = cert.value().
RankCertificate equivalence_transform(const Tensor& t, const RankCertificate& cert, std::size_t m,
                                      const OracleOptions& opt = {});
// Order-3 slice rank to tensor rank: all three kinds of terms are split at
// once. Needs rank <= m for every slice in all three directions; at most
// m * sr^2 terms.
RankCertificate slice_to_tensor_transform(const Tensor& t, const RankCertificate& cert, std::size_t m,
                                          const OracleOptions& opt = {});
// Shared engine: split every term containing one of `parts`.
RankCertificate split_parts_transform(const Tensor& t, const RankCertificate& cert, const std::vector<AxisMask>& parts,
                                      std::size_t m, const OracleOptions& opt = {});

// ---- general engine ----

// Selection with Rrk(restriction) >= l. Tensor rank goes to
// tr_minor_extract; otherwise Case 1 (separated slices), Case 2 (high-rank
// coefficient function, lemma hypotheses checked explicitly) and Case 3
// (recursion on the down-shadow) are tried in order, then a greedy shrink.
// RankTooLow when Rrk(t) < l.
MinorResult general_minor_find(const Tensor& t, const PartitionFamily& R, std::size_t l, const MinorOptions& opt = {});

// One selection with Rrk((a.T)(restriction)) >= l for every a in Lambda.
// Lambda holds nonzero vectors of F^s. Empty Lambda gives empty sets.
MinorResult multi_rrank_minor(const std::vector<Tensor>& ts, const PartitionFamily& R,
                              const std::vector<FieldVector>& Lambda, std::size_t l, const MinorOptions& opt = {});
// All nonzero vectors of F^s.
std::vector<FieldVector> nonzero_vectors(const Field& f, std::size_t s);

// R1 x R2 on the first d1 and last d2 axes. Case 1 through a nonsingular
// l x l minor of the flattening, Case 2 through u.T = T_{1,i} (or T_{2,i}).
MinorResult product_rank_minor(const Tensor& t, const PartitionFamily& R1, const PartitionFamily& R2, std::size_t l,
                               const MinorOptions& opt = {});

// Rrk(restriction) >= l by the oracle.
bool verify_minor(const Tensor& t, const PartitionFamily& R, const MinorSelection& sel, std::size_t l,
                  const OracleOptions& opt = {});

}  // namespace minorank
