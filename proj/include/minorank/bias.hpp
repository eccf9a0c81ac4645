#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "minorank/rank_oracles.hpp"
#include "minorank/tensor.hpp"
#include "minorank/tensor_ops.hpp"

namespace minorank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// m(T)(u_1, ..., u_d) = sum_x T(x) prod_a u_a(x_a).
Elem multilinear_form(const Tensor& t, const std::vector<FieldVector>& us);

struct BiasValue {
  bool exact = true;
  Rational value = 1;            // exact probability when `exact`
  std::uint64_t hits = 0;        // vanishing count (exact: out of total)
  BigInt total = 1;              // number of tuples enumerated or sampled
  double estimate = 1.0;         // hits / total
  double std_error = 0.0;        // binomial standard error, sampled only
  std::uint64_t seed = 0;

  std::string fraction() const;  // "num/den"
};

// Probability over u_1..u_{d-1} that (u_1 ... u_{d-1}).T vanishes, by full
// enumeration. ScaleExceeded when p^{|Q_1|+...+|Q_{d-1}|} exceeds the budget.
BiasValue bias_exact(const Tensor& t, std::uint64_t budget = default_node_budget());

// Monte Carlo estimate. Samples are drawn in fixed-size chunks, chunk c using
// its own generator seeded from (seed, c), so the result depends only on
// (t, samples, seed).
BiasValue bias_mc(const Tensor& t, std::uint64_t samples, std::uint64_t seed);

// ar = -log_p bias. Exact when the bias is a power of p; otherwise the value
// lies in the half-open bracket (lo, hi].
struct AnalyticRank {
  bool exact = false;
  BigInt value = 0;     // when exact
  BigInt lo = 0, hi = 0;
  double approx = 0.0;
};
AnalyticRank analytic_rank(const Tensor& t, std::uint64_t budget = default_node_budget());
AnalyticRank analytic_rank_of(const BiasValue& b, int p, std::size_t exponent);

// bias(T) == E_u bias(u.T), both sides exact.
bool averaging_check(const Tensor& t, std::uint64_t budget = default_node_budget());

// u_1..u_l in F^{Q_1} with pr((sum_h v_h u_h).T) >= q for every v != 0. Built
// greedily: u_h is the first vector (canonical order) with
// pr((u_h + sum_{i<h} v_i u_i).T) >= q for all v in F^{h-1}; the finished
// family is re-checked over all nonzero v. nullopt when a step finds nothing.
std::optional<std::vector<FieldVector>> separated_projections(const Tensor& t, std::size_t q, std::size_t l,
                                                              const OracleOptions& opt = {});

// Exhaustive check of the separation property.
bool is_separated(const Tensor& t, const std::vector<FieldVector>& us, std::size_t q, RankMemo& memo);

// Linear combination sum_h v_h u_h.
FieldVector combine(const Field& f, const std::vector<FieldVector>& us, const FieldVector& v);


// r -> A_{d,F}(r), the bound pr <= A(ar). Presets:
//  "oracle":    identity; at small scale the pipeline asks the pr oracle
//               directly, so the threshold is the target itself.
//  "janzer":    (c log|F|)^{c'} r^{c'}, c' = 4^{d^d}; c configurable.
//  "milicevic": 2^{d^{2^{C d^2}}} (r^{2^{2^{C d^2}}} + 1); C configurable.
// The closed forms are recorded for comparison only and are not verified.
// Values beyond 2^20 bits throw ParameterOutOfRange.
class BoundFunction {
 public:
  static BoundFunction oracle();
  static BoundFunction janzer(int d, int p, double c = 1.0);
  static BoundFunction milicevic(int d, double C = 1.0);
  static BoundFunction by_name(const std::string& name, int d, int p, double constant = 1.0);

  BigInt operator()(const BigInt& r) const;
  const std::string& name() const { return name_; }
  bool verified() const { return name_ == "oracle"; }

 private:
  std::string name_ = "oracle";
  int d_ = 2, p_ = 2;
  double constant_ = 1.0;
};

}  // namespace minorank
