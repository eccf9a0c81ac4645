#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minorank/certificate.hpp"
#include "minorank/minors.hpp"

namespace minorank {

// Pairwise disjoint selection with an oracle-confirmed lower bound.
struct DisjointCertificate {
  MinorSelection selection;  // disjoint = true
  std::string notion;
  std::size_t bound = 0;     // claimed: Rrk(restriction) >= bound
  std::size_t verified = 0;  // what the oracle confirmed
  std::vector<std::string> route;
};

// Matrix given as an order-2 tensor; both axes draw labels from one namespace.
struct MatrixDisjointResult {
  DisjointCertificate cert;
  std::size_t rank = 0;      // rank of A(X x Y), X and Y of this size
  Tensor modifier;           // D, supported on the diagonal {x = y}
  std::size_t modified_rank = 0;                // rk(A + D) <= 3 rank
  std::size_t core = 0, rows_part = 0, cols_part = 0;  // the three subadditivity terms
};
// Greedy maximal disjoint nonsingular minor. Maximality makes the Schur
// complement vanish off the diagonal, which yields D with rk(A + D) <= 3k,
// hence k >= erk(A) / 3. The three-term decomposition is recomputed and
// checked before returning.
MatrixDisjointResult matrix_disjoint_extract(const Tensor& A, const OracleOptions& opt = {});

// Disjoint X, Y with rk((a.A)(X x Y)) >= l for every a in Lambda (nonzero
// vectors of F^s). RankTooLow when some a cannot be served by the peeling.
DisjointCertificate multi_matrix_disjoint(const std::vector<Tensor>& mats, const std::vector<FieldVector>& Lambda,
                                          std::size_t l, const OracleOptions& opt = {});

struct DisjointifyResult {
  MinorSelection selection;
  std::size_t off_diagonal = 0;  // |eZ(T)|
  std::size_t retained = 0;      // |Z(T(X_1 x ... x X_d))|
  std::size_t guaranteed = 0;    // ceil(|eZ| / d^d), what the coloring argument proves
};
// Every label gets one axis; coordinates follow the conditional expectation
// of the surviving support (uniform colors for the labels not yet fixed),
// then single-label recolorings are applied while they strictly help.
DisjointifyResult support_disjointify(const Tensor& t);

// Certificate for the down-shadow of cert.family modulo E: the output terms
// evaluate to t + V' with V' supported in E. Needs epr(T_y) <= m for every
// complement point y outside E(C^c) (SliceBoundViolated otherwise). At most
// l^2 (m + d'(d - d')) + l^3 + l terms, d' = |C|; (m + 2) l^2 when the family
// is a single flattening of an order-3 tensor.
RankCertificate essential_equivalence_reduce(const Tensor& t, const RankCertificate& cert, std::size_t m,
                                             const OracleOptions& opt = {});
// Largest essential partition rank of the C-slices at complement points
// outside E(C^c): the m that essential_equivalence_reduce needs.
std::size_t essential_slice_bound(const Tensor& t, AxisMask C, const OracleOptions& opt = {});
// Repeated reduction down to tensor rank, one down-shadow step at a time with
// the slice bound measured at each step. `steps` receives the term counts.
RankCertificate essential_tensor_chain(const Tensor& t, const RankCertificate& cert, const OracleOptions& opt = {},
                                       std::vector<std::size_t>* steps = nullptr);

struct FlatteningExtension {
  DisjointCertificate cert;     // frank_I of the restriction >= cert.bound
  AxisMask I = 1;               // row axes of the flattening
  std::size_t slice_bound = 0;  // max essential rank of the order-(d-1) slices, when checked
  bool hypothesis_checked = false;
};
// Maximal family of pairwise distinct labels x_i (on the axes of I) and
// columns u_i (on the others) with A(X x U) nonsingular, grown greedily.
// With check_hypothesis the slice essential ranks are computed too
// (HypothesisUnverifiable when that is beyond the budget).
FlatteningExtension disjoint_flattening_extend(const Tensor& t, AxisMask I = 1, bool check_hypothesis = false,
                                               const OracleOptions& opt = {});

// Disjoint selection with Rrk >= l. d = 2 goes to the matrix construction;
// otherwise single slices (Case 1), a flattening that bounds R from below
// (Case 2) and the down-shadow (Case 3) are tried, then the exhaustive
// disjoint search. RankTooLow when dRrk(t) < l.
DisjointCertificate disjoint_rank_find(const Tensor& t, const PartitionFamily& R, std::size_t l,
                                       const OracleOptions& opt = {});

// One disjoint selection serving every a in Lambda. For tensor rank families a
// failure that traces back to a single removable slice is reported as
// Obstructed; otherwise RankTooLow.
DisjointCertificate multi_disjoint_find(const std::vector<Tensor>& ts, const PartitionFamily& R,
                                        const std::vector<FieldVector>& Lambda, std::size_t l,
                                        const OracleOptions& opt = {});

// The pair T_1 = 1_{x=1} b_1(y, z), T_2 = 1_{y=1} b_2(x, z) on [n]^3 with
// b_1, b_2 identity-like forms avoiding label 1.
std::vector<Tensor> obstruction_pair(const Field& f, std::size_t n);

}  // namespace minorank
