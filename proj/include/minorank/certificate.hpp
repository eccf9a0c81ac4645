#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minorank/partition.hpp"
#include "minorank/tensor.hpp"

namespace minorank {

// a_I: prod_{a in I} Q_a -> F, dense, last axis of I fastest.
struct Factor {
  AxisMask part = 0;
  std::vector<Elem> values;
};

struct RankTerm {
  Partition partition;
  std::vector<Factor> factors;  // one per part, in partition order
};

// Explicit decomposition: the terms sum to t + modifier (modifier absent means
// the terms sum to t itself).
struct RankCertificate {
  std::string notion;
  PartitionFamily family;
  std::vector<RankTerm> terms;
  std::optional<Tensor> modifier;

  std::size_t value() const { return terms.size(); }
};

Tensor evaluate_term(const Tensor& like, const RankTerm& term);
Tensor evaluate_terms(const Tensor& like, const std::vector<RankTerm>& terms);

// Terms use partitions of the family, evaluate to t (+ modifier), and any
// modifier is supported inside E.
bool certifies(const RankCertificate& cert, const Tensor& t);

// Factor holding the values of a tensor defined on the axes of `part`.
Factor factor_from(AxisMask part, const Tensor& on_part);
// Indicator of one position on a single axis.
Factor indicator_factor(const Tensor& like, int axis, std::size_t position);

}  // namespace minorank
