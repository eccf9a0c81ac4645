#pragma once

#include <string>
#include <utility>
#include <vector>

#include "minorank/tensor.hpp"

namespace minorank {

// A set partition of the axes {0..d-1}; parts are bitmasks ordered by their
// smallest axis.
using Partition = std::vector<AxisMask>;

Partition canonical_partition(Partition p);
std::string to_string(const Partition& p);

// Order used to pick the largest part among equal sizes: compare the
// characteristic vectors (x_1, ..., x_d) lexicographically.
bool characteristic_less(AxisMask a, AxisMask b);

class PartitionFamily {
 public:
  PartitionFamily() = default;
  PartitionFamily(int d, std::vector<Partition> partitions);

  static PartitionFamily tensor_rank(int d);
  static PartitionFamily slice_rank(int d);
  static PartitionFamily partition_rank(int d);
  static PartitionFamily flattening(int d, AxisMask I);

  int order() const { return d_; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  std::size_t size() const { return partitions_.size(); }
  bool empty() const { return partitions_.empty(); }
  bool contains(const Partition& p) const;
  bool is_tensor_rank() const;
  // True when some member has a single part, making every tensor rank <= 1.
  bool has_single_part() const;
  // Every member of this family is a member of `o`.
  bool subset_of(const PartitionFamily& o) const;

  bool operator==(const PartitionFamily& o) const = default;

 private:
  int d_ = 0;
  std::vector<Partition> partitions_;
};

std::string to_string(const PartitionFamily& r);
// "tr", "sr", "pr" when the family matches a named notion, otherwise "R".
std::string notion_name(const PartitionFamily& r);

// Unordered bipartitions {I, J} of C; I holds the smallest axis of C.
std::vector<std::pair<AxisMask, AxisMask>> bipartitions(AxisMask C);

// Re-index a mask living on `ground` to consecutive axes, and back.
AxisMask compress_mask(AxisMask m, AxisMask ground);
AxisMask expand_mask(AxisMask m, AxisMask ground);

struct DownShadow {
  AxisMask largest = 0;     // C
  PartitionFamily shadow;   // R'
  PartitionFamily plus;     // R_+
  PartitionFamily minus;    // R_-
  PartitionFamily comp;     // R_comp on [d] \ C, re-indexed
  AxisMask comp_ground = 0; // [d] \ C as a mask of the original axes
};

AxisMask largest_part(const PartitionFamily& r);
DownShadow down_shadow(const PartitionFamily& r);

PartitionFamily product_family(const PartitionFamily& a, const PartitionFamily& b);

// Named order-4 families.
PartitionFamily pr22_family();
PartitionFamily one_times_sr_family();
PartitionFamily tripartition_family();

}  // namespace minorank
