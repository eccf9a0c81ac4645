#pragma once

// Internal: span-cover search shared by the rank oracles.

#include <cstdint>
#include <optional>
#include <vector>

#include "minorank/certificate.hpp"
#include "minorank/field.hpp"
#include "minorank/partition.hpp"
#include "minorank/tensor.hpp"

namespace minorank::detail {

// Choose at most k units (each a list of vectors) whose span together with
// `base` contains every target.
struct SpanProblem {
  Field field;
  std::size_t length = 0;
  std::vector<std::vector<FieldVector>> units;
  std::vector<FieldVector> targets;
  std::vector<FieldVector> base;
};

std::optional<std::vector<std::size_t>> span_cover(const SpanProblem& prob, std::size_t k, std::uint64_t budget,
                                                   std::uint64_t& nodes);

// sum_{j=1..k} C(n, j), saturating.
std::uint64_t combinations_upto(std::uint64_t n, std::size_t k);

struct RankSearchOutcome {
  bool found = false;
  std::vector<RankTerm> terms;
  FieldVector extra_coeffs;  // coefficient of e_x for each extra point
  std::uint64_t nodes = 0;
};

// Is t a sum of at most k R-rank-one terms plus a combination of the unit
// tensors at the `extra` linear indices?
RankSearchOutcome rank_search(const Tensor& t, const PartitionFamily& R, std::size_t k,
                              const std::vector<std::size_t>& extra, std::uint64_t budget);

}  // namespace minorank::detail
