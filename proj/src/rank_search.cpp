#include "rank_search.hpp"

#include <algorithm>
#include <string>

#include "minorank/errors.hpp"
#include "minorank/matrix.hpp"
#include "minorank/span_basis.hpp"
#include "minorank/tensor_ops.hpp"

namespace minorank::detail {

std::uint64_t combinations_upto(std::uint64_t n, std::size_t k) {
  const std::uint64_t cap = ~std::uint64_t(0);
  long double total = 0, c = 1;
  for (std::size_t j = 1; j <= k && j <= n; ++j) {
    c = c * (long double)(n - j + 1) / (long double)j;
    total += c;
    if (total >= (long double)cap) return cap;
  }
  return std::uint64_t(total);
}

namespace {

template <class W>
struct Packer;

template <>
struct Packer<std::uint64_t> {
  static std::vector<std::uint64_t> pack(const SpanBasis& b, const FieldVector& v) { return b.pack_bits(v); }
};

template <>
struct Packer<Elem> {
  static std::vector<Elem> pack(const SpanBasis&, const FieldVector& v) { return v; }
};

template <class W>
class SpanDfs {
 public:
  SpanDfs(const SpanProblem& prob, std::size_t k, std::uint64_t budget)
      : basis_(prob.field, prob.length), scratch_(prob.field, prob.length), k_(k), budget_(budget) {
    stride_ = basis_.stride();
    for (const FieldVector& b : prob.base) basis_.insert(Packer<W>::pack(basis_, b).data());
    base_dim_ = basis_.dimension();
    for (const auto& unit : prob.units) {
      std::vector<W> rows;
      for (const FieldVector& v : unit) {
        auto w = Packer<W>::pack(basis_, v);
        rows.insert(rows.end(), w.begin(), w.end());
      }
      max_rows_ = std::max(max_rows_, unit.size());
      units_.push_back(std::move(rows));
    }
    ntargets_ = prob.targets.size();
    residual_.assign(k + 1, std::vector<W>(ntargets_ * stride_));
    for (std::size_t i = 0; i < ntargets_; ++i) {
      auto w = Packer<W>::pack(basis_, prob.targets[i]);
      std::copy(w.begin(), w.end(), residual_[0].begin() + std::ptrdiff_t(i * stride_));
    }
  }

  std::optional<std::vector<std::size_t>> run(std::uint64_t& nodes) {
    bool zero = true;
    for (std::size_t i = 0; i < ntargets_; ++i) zero &= basis_.reduce(residual_[0].data() + i * stride_);
    std::optional<std::vector<std::size_t>> out;
    if (zero)
      out = std::vector<std::size_t>{};
    else if (k_ > 0 && residual_rank(0) <= k_ * max_rows_ && dfs(0, 0))
      out = chosen_;
    nodes = nodes_;
    return out;
  }

 private:
  std::size_t residual_rank(std::size_t depth) {
    if (ntargets_ <= 1) return ntargets_;
    scratch_.truncate(0);
    for (std::size_t i = 0; i < ntargets_; ++i) scratch_.insert(residual_[depth].data() + i * stride_);
    return scratch_.dimension();
  }

  bool dfs(std::size_t start, std::size_t depth) {
    const std::size_t remaining = k_ - depth - 1;
    for (std::size_t u = start; u < units_.size(); ++u) {
      if (++nodes_ > budget_) fail(ErrorKind::ScaleExceeded, "rank search exceeded the node budget");
      const std::size_t dim0 = basis_.dimension();
      const std::vector<W>& rows = units_[u];
      for (std::size_t r = 0; r * stride_ < rows.size(); ++r) basis_.insert(rows.data() + r * stride_);
      if (basis_.dimension() == dim0) continue;
      std::vector<W>& next = residual_[depth + 1];
      std::copy(residual_[depth].begin(), residual_[depth].end(), next.begin());
      bool zero = true;
      for (std::size_t i = 0; i < ntargets_; ++i) zero &= basis_.reduce_from(dim0, next.data() + i * stride_);
      chosen_.push_back(u);
      if (zero) return true;
      if (remaining > 0 && residual_rank(depth + 1) <= remaining * max_rows_ && dfs(u + 1, depth + 1)) return true;
      chosen_.pop_back();
      basis_.truncate(dim0);
    }
    return false;
  }

  SpanBasis basis_, scratch_;
  std::size_t k_;
  std::uint64_t budget_;
  std::size_t stride_ = 0, base_dim_ = 0, ntargets_ = 0, max_rows_ = 0;
  std::vector<std::vector<W>> units_;
  std::vector<std::vector<W>> residual_;
  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<std::vector<std::size_t>> span_cover(const SpanProblem& prob, std::size_t k, std::uint64_t budget,
                                                   std::uint64_t& nodes) {
  const std::uint64_t estimate = combinations_upto(prob.units.size(), k);
  if (estimate > budget)
    fail(ErrorKind::ScaleExceeded, "search space of about " + std::to_string(estimate) + " nodes exceeds budget " +
                                       std::to_string(budget));
  if (prob.field.binary()) return SpanDfs<std::uint64_t>(prob, k, budget).run(nodes);
  return SpanDfs<Elem>(prob, k, budget).run(nodes);
}

namespace {

// Normalized nonzero vectors of F_p^m (first nonzero entry equal to 1).
std::vector<FieldVector> normalized_vectors(const Field& f, std::size_t m) {
  if (f.power(m) > (std::uint64_t(1) << 22)) fail(ErrorKind::ScaleExceeded, "factor space too large to enumerate");
  std::vector<FieldVector> out;
  FieldVector v(m, 0);
  for (std::size_t lead = 0; lead < m; ++lead) {
    FieldVector tail(m - lead - 1, 0);
    do {
      std::fill(v.begin(), v.end(), 0);
      v[lead] = 1;
      std::copy(tail.begin(), tail.end(), v.begin() + std::ptrdiff_t(lead + 1));
      out.push_back(v);
    } while (next_vector(f, tail));
  }
  return out;
}

struct Plan {
  std::size_t partition = 0;
  AxisMask free = 0, fixed = 0;
  std::vector<AxisMask> fixed_parts;
  std::vector<std::size_t> idx_free, idx_fixed;
  std::vector<std::vector<std::size_t>> idx_part;
  std::size_t m_free = 1, m_fixed = 1;
};

struct Candidate {
  std::size_t plan = 0;
  std::vector<const FieldVector*> factors;  // per fixed part
  FieldVector c;                            // over the fixed coordinates
};

std::size_t part_size(const Tensor& t, AxisMask m) {
  std::size_t s = 1;
  for (int a : mask_axes(m)) s *= t.extent(a);
  return s;
}

}  // namespace

RankSearchOutcome rank_search(const Tensor& t, const PartitionFamily& R, std::size_t k,
                              const std::vector<std::size_t>& extra, std::uint64_t budget) {
  const Field& f = t.field();
  const std::size_t N = t.size();
  std::vector<Plan> plans;
  for (std::size_t pi = 0; pi < R.partitions().size(); ++pi) {
    const Partition& P = R.partitions()[pi];
    Plan pl;
    pl.partition = pi;
    for (AxisMask part : P)
      if (!pl.free || part_size(t, part) > part_size(t, pl.free)) pl.free = part;
    for (AxisMask part : P)
      if (part != pl.free) pl.fixed_parts.push_back(part);
    pl.fixed = full_mask(t.order()) & ~pl.free;
    pl.idx_free = sub_indices(t, pl.free);
    pl.idx_fixed = sub_indices(t, pl.fixed);
    for (AxisMask part : pl.fixed_parts) pl.idx_part.push_back(sub_indices(t, part));
    pl.m_free = part_size(t, pl.free);
    pl.m_fixed = part_size(t, pl.fixed);
    plans.push_back(std::move(pl));
  }

  // Factor tables per part size, shared between plans.
  std::vector<std::vector<FieldVector>> tables(N + 1);
  std::vector<Candidate> cands;
  const std::uint64_t max_cands = std::uint64_t(1) << 22;
  for (std::size_t pi = 0; pi < plans.size(); ++pi) {
    const Plan& pl = plans[pi];
    std::vector<const std::vector<FieldVector>*> opts;
    std::uint64_t count = 1;
    for (AxisMask part : pl.fixed_parts) {
      std::size_t m = part_size(t, part);
      if (tables[m].empty()) tables[m] = normalized_vectors(f, m);
      opts.push_back(&tables[m]);
      count *= tables[m].size();
      if (count + cands.size() > max_cands) fail(ErrorKind::ScaleExceeded, "too many candidate rank-one factors");
    }
    std::vector<std::size_t> choice(opts.size(), 0);
    while (true) {
      Candidate c;
      c.plan = pi;
      for (std::size_t j = 0; j < opts.size(); ++j) c.factors.push_back(&(*opts[j])[choice[j]]);
      c.c.assign(pl.m_fixed, 0);
      for (std::size_t li = 0; li < N; ++li) {
        Elem v = 1;
        for (std::size_t j = 0; j < opts.size() && v; ++j) v = f.mul(v, (*c.factors[j])[pl.idx_part[j][li]]);
        c.c[pl.idx_fixed[li]] = v;
      }
      cands.push_back(std::move(c));
      std::size_t j = opts.size();
      while (j > 0 && ++choice[j - 1] == opts[j - 1]->size()) choice[--j] = 0;
      if (j == 0) break;
    }
  }

  auto generator = [&](const Candidate& c, std::size_t z) {
    const Plan& pl = plans[c.plan];
    FieldVector g(N, 0);
    for (std::size_t li = 0; li < N; ++li)
      if (pl.idx_free[li] == z) g[li] = c.c[pl.idx_fixed[li]];
    return g;
  };

  bool quotient = extra.empty();
  for (const Plan& pl : plans) quotient &= pl.free == plans[0].free;

  SpanProblem prob;
  prob.field = f;
  if (quotient) {
    const Plan& pl = plans[0];
    prob.length = pl.m_fixed;
    for (const Candidate& c : cands) prob.units.push_back({c.c});
    prob.targets.assign(pl.m_free, FieldVector(pl.m_fixed, 0));
    for (std::size_t li = 0; li < N; ++li) prob.targets[pl.idx_free[li]][pl.idx_fixed[li]] = t.value(li);
  } else {
    prob.length = N;
    const std::uint64_t rows = [&] {
      std::uint64_t r = 0;
      for (const Candidate& c : cands) r += plans[c.plan].m_free;
      return r;
    }();
    if (rows * N > (std::uint64_t(1) << 30)) fail(ErrorKind::ScaleExceeded, "candidate generators do not fit in memory");
    for (const Candidate& c : cands) {
      std::vector<FieldVector> unit;
      for (std::size_t z = 0; z < plans[c.plan].m_free; ++z) unit.push_back(generator(c, z));
      prob.units.push_back(std::move(unit));
    }
    prob.targets.push_back(t.values());
    for (std::size_t x : extra) {
      FieldVector e(N, 0);
      e[x] = 1;
      prob.base.push_back(std::move(e));
    }
  }

  RankSearchOutcome out;
  auto chosen = span_cover(prob, k, budget, out.nodes);
  if (!chosen) return out;
  out.found = true;

  // Recover the free-part factors by one linear solve.
  std::vector<FieldVector> gens;
  for (std::size_t u : *chosen)
    for (std::size_t z = 0; z < plans[cands[u].plan].m_free; ++z) gens.push_back(generator(cands[u], z));
  for (std::size_t x : extra) {
    FieldVector e(N, 0);
    e[x] = 1;
    gens.push_back(std::move(e));
  }
  auto coeffs = solve_combination(f, gens, t.values());
  if (!coeffs) fail(ErrorKind::VerificationFailed, "rank search found a span but no combination");
  std::size_t off = 0;
  for (std::size_t u : *chosen) {
    const Candidate& c = cands[u];
    const Plan& pl = plans[c.plan];
    FieldVector b(coeffs->begin() + std::ptrdiff_t(off), coeffs->begin() + std::ptrdiff_t(off + pl.m_free));
    off += pl.m_free;
    if (is_zero(b)) continue;
    RankTerm term;
    term.partition = R.partitions()[pl.partition];
    std::size_t j = 0;
    for (AxisMask part : term.partition) {
      if (part == pl.free)
        term.factors.push_back(Factor{part, b});
      else
        term.factors.push_back(Factor{part, *c.factors[j++]});
    }
    out.terms.push_back(std::move(term));
  }
  out.extra_coeffs.assign(coeffs->begin() + std::ptrdiff_t(off), coeffs->end());
  return out;
}

}  // namespace minorank::detail
