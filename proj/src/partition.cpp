#include "minorank/partition.hpp"

#include <algorithm>
#include <sstream>

#include "minorank/errors.hpp"

namespace minorank {

Partition canonical_partition(Partition p) {
  std::sort(p.begin(), p.end(), [](AxisMask a, AxisMask b) { return __builtin_ctz(a) < __builtin_ctz(b); });
  return p;
}

std::string to_string(const Partition& p) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << (i ? "," : "") << "{";
    auto axes = mask_axes(p[i]);
    for (std::size_t j = 0; j < axes.size(); ++j) os << (j ? "," : "") << axes[j] + 1;
    os << "}";
  }
  os << "}";
  return os.str();
}

bool characteristic_less(AxisMask a, AxisMask b) {
  AxisMask diff = a ^ b;
  if (!diff) return false;
  AxisMask low = diff & (~diff + 1);
  return (b & low) != 0;
}

PartitionFamily::PartitionFamily(int d, std::vector<Partition> partitions) : d_(d) {
  if (d < 0 || d > 16) fail(ErrorKind::ParameterOutOfRange, "partition family order out of range");
  const AxisMask full = full_mask(d);
  for (Partition& p : partitions) {
    AxisMask seen = 0;
    for (AxisMask part : p) {
      if (part == 0) fail(ErrorKind::InvalidInput, "partition has an empty part");
      if (part & ~full) fail(ErrorKind::InvalidInput, "partition part outside [d]");
      if (part & seen) fail(ErrorKind::InvalidInput, "partition parts overlap");
      seen |= part;
    }
    if (seen != full) fail(ErrorKind::InvalidInput, "partition does not cover [d]");
    partitions_.push_back(canonical_partition(std::move(p)));
  }
  std::sort(partitions_.begin(), partitions_.end());
  partitions_.erase(std::unique(partitions_.begin(), partitions_.end()), partitions_.end());
}

PartitionFamily PartitionFamily::tensor_rank(int d) {
  Partition p;
  for (int a = 0; a < d; ++a) p.push_back(AxisMask(1) << a);
  return PartitionFamily(d, {p});
}

PartitionFamily PartitionFamily::slice_rank(int d) {
  if (d == 1) return tensor_rank(1);
  std::vector<Partition> ps;
  for (int a = 0; a < d; ++a) ps.push_back({AxisMask(1) << a, full_mask(d) & ~(AxisMask(1) << a)});
  return PartitionFamily(d, ps);
}

PartitionFamily PartitionFamily::partition_rank(int d) {
  // Order 1: the only partition is {[1]}, so every notion is [T != 0].
  if (d == 1) return tensor_rank(1);
  std::vector<Partition> ps;
  for (auto [I, J] : bipartitions(full_mask(d))) ps.push_back({I, J});
  return PartitionFamily(d, ps);
}

PartitionFamily PartitionFamily::flattening(int d, AxisMask I) {
  if (I == 0 || I == full_mask(d) || (I & ~full_mask(d))) fail(ErrorKind::BadAxisSet, "flattening needs a proper axis set");
  return PartitionFamily(d, {{I, full_mask(d) & ~I}});
}

bool PartitionFamily::contains(const Partition& p) const {
  Partition c = canonical_partition(p);
  return std::binary_search(partitions_.begin(), partitions_.end(), c);
}

bool PartitionFamily::is_tensor_rank() const { return *this == tensor_rank(d_); }

bool PartitionFamily::has_single_part() const {
  for (const Partition& p : partitions_)
    if (p.size() == 1) return true;
  return false;
}

bool PartitionFamily::subset_of(const PartitionFamily& o) const {
  if (d_ != o.d_) return false;
  for (const Partition& p : partitions_)
    if (!o.contains(p)) return false;
  return true;
}

std::string to_string(const PartitionFamily& r) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < r.partitions().size(); ++i) os << (i ? ", " : "") << to_string(r.partitions()[i]);
  os << "}";
  return os.str();
}

std::string notion_name(const PartitionFamily& r) {
  const int d = r.order();
  if (d >= 1 && r.is_tensor_rank()) return "tr";
  if (d >= 2 && r == PartitionFamily::partition_rank(d)) return d == 3 || d == 2 ? "sr" : "pr";
  if (d >= 2 && r == PartitionFamily::slice_rank(d)) return "sr";
  return "R";
}

std::vector<std::pair<AxisMask, AxisMask>> bipartitions(AxisMask C) {
  std::vector<std::pair<AxisMask, AxisMask>> out;
  if (mask_size(C) < 2) return out;
  AxisMask low = C & (~C + 1);
  AxisMask rest = C & ~low;
  // Enumerate subsets S of rest; I = low | S, J = rest \ S, J nonempty.
  for (AxisMask S = 0;; S = (S - rest) & rest) {
    AxisMask I = low | S, J = C & ~I;
    if (J) out.emplace_back(I, J);
    if (S == rest) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

AxisMask compress_mask(AxisMask m, AxisMask ground) {
  AxisMask out = 0;
  int k = 0;
  for (int a = 0; a < 32; ++a) {
    if (!(ground >> a & 1)) continue;
    if (m >> a & 1) out |= AxisMask(1) << k;
    ++k;
  }
  return out;
}

AxisMask expand_mask(AxisMask m, AxisMask ground) {
  AxisMask out = 0;
  int k = 0;
  for (int a = 0; a < 32; ++a) {
    if (!(ground >> a & 1)) continue;
    if (m >> k & 1) out |= AxisMask(1) << a;
    ++k;
  }
  return out;
}

AxisMask largest_part(const PartitionFamily& r) {
  AxisMask best = 0;
  for (const Partition& p : r.partitions())
    for (AxisMask part : p) {
      if (!best || mask_size(part) > mask_size(best) ||
          (mask_size(part) == mask_size(best) && characteristic_less(part, best)))
        best = part;
    }
  return best;
}

DownShadow down_shadow(const PartitionFamily& r) {
  const int d = r.order();
  if (r.empty()) fail(ErrorKind::InvalidInput, "empty partition family");
  if (r.is_tensor_rank()) fail(ErrorKind::AlreadyTensorRank, "down-shadow of the tensor-rank family");
  DownShadow out;
  const AxisMask C = largest_part(r);
  out.largest = C;
  out.comp_ground = full_mask(d) & ~C;
  std::vector<Partition> plus, minus, comp, shadow;
  for (const Partition& p : r.partitions()) {
    if (std::find(p.begin(), p.end(), C) != p.end()) {
      plus.push_back(p);
      Partition rest, restc;
      for (AxisMask part : p)
        if (part != C) {
          rest.push_back(part);
          restc.push_back(compress_mask(part, out.comp_ground));
        }
      comp.push_back(restc);
      for (auto [I, J] : bipartitions(C)) {
        Partition q = rest;
        q.push_back(I);
        q.push_back(J);
        shadow.push_back(q);
      }
    } else {
      minus.push_back(p);
      shadow.push_back(p);
    }
  }
  out.plus = PartitionFamily(d, plus);
  out.minus = PartitionFamily(d, minus);
  out.comp = PartitionFamily(d - mask_size(C), comp);
  out.shadow = PartitionFamily(d, shadow);
  return out;
}

PartitionFamily product_family(const PartitionFamily& a, const PartitionFamily& b) {
  const int d1 = a.order();
  std::vector<Partition> ps;
  for (const Partition& p : a.partitions())
    for (const Partition& q : b.partitions()) {
      Partition u = p;
      for (AxisMask part : q) u.push_back(part << d1);
      ps.push_back(u);
    }
  return PartitionFamily(d1 + b.order(), ps);
}

namespace {
AxisMask m(std::initializer_list<int> axes) {
  AxisMask r = 0;
  for (int a : axes) r |= AxisMask(1) << (a - 1);
  return r;
}
}  // namespace

PartitionFamily pr22_family() {
  return PartitionFamily(4, {{m({1, 2}), m({3, 4})}, {m({1, 3}), m({2, 4})}, {m({1, 4}), m({2, 3})}});
}

PartitionFamily one_times_sr_family() {
  return PartitionFamily(4, {{m({1}), m({2}), m({3, 4})}, {m({1}), m({3}), m({2, 4})}, {m({1}), m({4}), m({2, 3})}});
}

PartitionFamily tripartition_family() {
  std::vector<Partition> ps;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      Partition p{m({i, j})};
      for (int k = 1; k <= 4; ++k)
        if (k != i && k != j) p.push_back(m({k}));
      ps.push_back(p);
    }
  return PartitionFamily(4, ps);
}

}  // namespace minorank
