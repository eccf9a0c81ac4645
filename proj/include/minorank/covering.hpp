#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minorank/tensor.hpp"

namespace minorank {

// Points of a box [n_1] x ... x [n_d], coordinates 1-based, kept sorted and
// without duplicates.
struct SupportSet {
  std::vector<int> dims;
  std::vector<std::vector<int>> points;

  SupportSet() = default;
  SupportSet(std::vector<int> dims, std::vector<std::vector<int>> points);
  std::size_t size() const { return points.size(); }
  bool contains(const std::vector<int>& pt) const;
};

// Slice cover: type = axis (0-based), constraint x_type = value.
// Line cover:  type 0: x = value, 1: y = value, 2: x + y = value.
struct CoverConstraint {
  int type = 0;
  int value = 0;
  bool operator==(const CoverConstraint&) const = default;
};

struct CoverSolution {
  std::string kind;  // "slice-cover" or "line-cover"
  std::vector<CoverConstraint> covers;
  bool exhausted_below = false;  // no cover of size() - 1 exists
  std::uint64_t nodes = 0;
  std::size_t size() const { return covers.size(); }
};

bool is_antichain(const SupportSet& U);
CoverSolution scc_exact(const SupportSet& U);
CoverSolution lc3_exact(const SupportSet& V);
bool covers(const CoverSolution& sol, const SupportSet& U);

// {(x, y) in X x Y : x + y in Z}, with dims {max X, max Y} (at least 1).
SupportSet mu_map(const std::vector<int>& X, const std::vector<int>& Y, const std::vector<int>& Z);
// Points of U inside X_1 x ... x X_d.
SupportSet restrict_support(const SupportSet& U, const std::vector<std::vector<int>>& boxes);
SupportSet intersect(const SupportSet& a, const SupportSet& b);

// Support of a tensor as 1-based positions along each axis.
SupportSet support_of(const Tensor& t);

}  // namespace minorank
