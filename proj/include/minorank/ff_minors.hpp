#pragma once

#include "minorank/minors.hpp"

namespace minorank {

// Partition-rank minor over a finite field by induction on the order. d = 2
// is a matrix minor. For d >= 3: pick l separated projections u_h, recurse
// on every (sum v_h u_h).T, take unions of the selections on axes 2..d, then
// keep on axis 1 the support of a spanning subfamily of the restricted slices
// (with u'_h rewritten on that support). Falls back to a greedy shrink when
// no separated family exists. RankTooLow when pr(t) < l.
MinorResult ff_pr_minor_find(const Tensor& t, std::size_t l, const MinorOptions& opt = {});

}  // namespace minorank
