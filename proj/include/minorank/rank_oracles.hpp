#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "minorank/certificate.hpp"
#include "minorank/partition.hpp"
#include "minorank/tensor.hpp"
#include "minorank/tensor_ops.hpp"

namespace minorank {

// Node budget from MINORANK_NODE_BUDGET, default 1e8.
std::uint64_t default_node_budget();

struct OracleOptions {
  std::uint64_t node_budget = default_node_budget();
  // Matrix rank for d = 2, the single-part shortcut and the antichain slice
  // rank identity. Disable to force the generic search.
  bool fast_paths = true;
};

struct RankReport {
  std::string notion;
  std::size_t value = 0;
  RankCertificate certificate;
  // Depth value-1 was searched exhaustively without success (vacuous for 0).
  bool exhausted_below = false;
  std::uint64_t nodes = 0;
  std::string method;  // "search", "matrix", "single-part", "antichain"
};

// A k-term certificate, or nullopt when exhaustion proves Rrk > k.
std::optional<RankCertificate> rrank_decide(const Tensor& t, const PartitionFamily& R, std::size_t k,
                                            const OracleOptions& opt = {});
RankReport rrank_exact(const Tensor& t, const PartitionFamily& R, const OracleOptions& opt = {});
// Convenience: value only.
std::size_t rrank(const Tensor& t, const PartitionFamily& R, const OracleOptions& opt = {});
std::size_t tensor_rank(const Tensor& t, const OracleOptions& opt = {});
std::size_t slice_rank(const Tensor& t, const OracleOptions& opt = {});
std::size_t partition_rank(const Tensor& t, const OracleOptions& opt = {});

// Minimal number of elements of S spanning every element of F; nullopt means
// no subset of S spans F. All vectors share one length.
std::optional<std::size_t> spanning_rank(const Field& f, const std::vector<FieldVector>& S,
                                         const std::vector<FieldVector>& F, const OracleOptions& opt = {});

struct EssentialReport {
  std::size_t value = 0;
  Tensor modifier;  // V supported in E with Rrk(T + V) = value
  RankCertificate certificate;
  std::uint64_t nodes = 0;
};
std::optional<EssentialReport> essential_rank_decide(const Tensor& t, const PartitionFamily& R, std::size_t k,
                                                     const OracleOptions& opt = {});
EssentialReport essential_rank_exact(const Tensor& t, const PartitionFamily& R, const OracleOptions& opt = {});

struct DisjointReport {
  std::size_t value = 0;
  MinorSelection selection;  // disjoint; empty sets when value = 0
  std::uint64_t assignments = 0;
};
DisjointReport disjoint_rank_exact(const Tensor& t, const PartitionFamily& R, const OracleOptions& opt = {});

// Memoized Rrk for one family, keyed by shape and values.
class RankMemo {
 public:
  RankMemo(PartitionFamily R, OracleOptions opt = {});
  std::size_t rank(const Tensor& t);
  // Rrk(t) >= k, decided without computing the exact value when cheaper.
  bool at_least(const Tensor& t, std::size_t k);
  const PartitionFamily& family() const { return R_; }
  std::uint64_t queries() const { return queries_; }

 private:
  PartitionFamily R_;
  OracleOptions opt_;
  std::uint64_t queries_ = 0;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> cache_;  // known [lo, hi]
};

// Family of the same kind for a different order: tr/sr/pr map to themselves,
// anything else is rejected.
PartitionFamily named_family(const std::string& notion, int d);

}  // namespace minorank
