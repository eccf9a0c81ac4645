#include "minorank/covering.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "minorank/errors.hpp"

namespace minorank {

SupportSet::SupportSet(std::vector<int> d, std::vector<std::vector<int>> pts) : dims(std::move(d)), points(std::move(pts)) {
  for (const auto& p : points) {
    if (p.size() != dims.size()) fail(ErrorKind::InvalidInput, "support point has wrong arity");
    for (std::size_t a = 0; a < p.size(); ++a)
      if (p[a] < 1 || p[a] > dims[a]) fail(ErrorKind::InvalidInput, "support point out of bounds");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

bool SupportSet::contains(const std::vector<int>& pt) const { return std::binary_search(points.begin(), points.end(), pt); }

bool is_antichain(const SupportSet& U) {
  for (std::size_t i = 0; i < U.points.size(); ++i)
    for (std::size_t j = 0; j < U.points.size(); ++j) {
      if (i == j) continue;
      const auto &a = U.points[i], &b = U.points[j];
      bool le = true;
      for (std::size_t k = 0; k < a.size() && le; ++k) le = a[k] <= b[k];
      if (le) return false;
    }
  return true;
}

namespace {

// Exact minimum cover of at most 64 points by a finite list of constraints.
class CoverSolver {
 public:
  CoverSolver(std::size_t npoints, std::vector<std::uint64_t> masks) : n_(npoints), masks_(std::move(masks)) {
    options_.resize(n_);
    for (std::size_t c = 0; c < masks_.size(); ++c)
      for (std::size_t p = 0; p < n_; ++p)
        if (masks_[c] >> p & 1) options_[p].push_back(c);
    compat_.assign(n_, 0);
    for (std::size_t p = 0; p < n_; ++p)
      for (std::size_t c : options_[p]) compat_[p] |= masks_[c];
  }

  std::vector<std::size_t> solve(bool& exhausted, std::uint64_t& nodes) {
    std::uint64_t all = n_ == 64 ? ~0ull : ((1ull << n_) - 1);
    std::size_t k = lower_bound(all);
    for (;; ++k) {
      chosen_.clear();
      if (search(all, k)) break;
    }
    exhausted = true;
    nodes = nodes_;
    return chosen_;
  }

 private:
  // Points pairwise sharing no constraint need distinct constraints.
  std::size_t lower_bound(std::uint64_t unc) const {
    std::size_t lb = 0;
    while (unc) {
      int best = -1, best_deg = 65;
      for (std::uint64_t m = unc; m; m &= m - 1) {
        int p = __builtin_ctzll(m);
        int deg = __builtin_popcountll(compat_[std::size_t(p)] & unc);
        if (deg < best_deg) best_deg = deg, best = p;
      }
      ++lb;
      unc &= ~compat_[std::size_t(best)];
      unc &= ~(1ull << best);
    }
    return lb;
  }

  bool search(std::uint64_t unc, std::size_t k) {
    ++nodes_;
    if (!unc) return true;
    if (k == 0) return false;
    auto it = failed_.find(unc);
    if (it != failed_.end() && it->second >= k) return false;
    if (lower_bound(unc) > k) {
      remember(unc, k);
      return false;
    }
    int best = -1;
    std::size_t fewest = ~std::size_t(0);
    for (std::uint64_t m = unc; m; m &= m - 1) {
      int p = __builtin_ctzll(m);
      if (options_[std::size_t(p)].size() < fewest) fewest = options_[std::size_t(p)].size(), best = p;
    }
    for (std::size_t c : options_[std::size_t(best)]) {
      chosen_.push_back(c);
      if (search(unc & ~masks_[c], k - 1)) return true;
      chosen_.pop_back();
    }
    remember(unc, k);
    return false;
  }

  void remember(std::uint64_t unc, std::size_t k) {
    auto& v = failed_[unc];
    v = std::max(v, k);
  }

  std::size_t n_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::size_t>> options_;
  std::vector<std::uint64_t> compat_;
  std::unordered_map<std::uint64_t, std::size_t> failed_;
  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;
};

CoverSolution run_cover(const std::string& kind, const SupportSet& U,
                        const std::vector<CoverConstraint>& constraints, const std::vector<std::uint64_t>& masks) {
  CoverSolution sol;
  sol.kind = kind;
  if (U.points.empty()) {
    sol.exhausted_below = true;
    return sol;
  }
  CoverSolver solver(U.points.size(), masks);
  for (std::size_t c : solver.solve(sol.exhausted_below, sol.nodes)) sol.covers.push_back(constraints[c]);
  return sol;
}

}  // namespace

CoverSolution scc_exact(const SupportSet& U) {
  if (U.size() > 64) fail(ErrorKind::ScaleExceeded, "slice covering supports at most 64 points");
  std::map<std::pair<int, int>, std::uint64_t> by;
  for (std::size_t i = 0; i < U.points.size(); ++i)
    for (std::size_t a = 0; a < U.points[i].size(); ++a) by[{int(a), U.points[i][a]}] |= 1ull << i;
  std::vector<CoverConstraint> cons;
  std::vector<std::uint64_t> masks;
  for (auto& [key, m] : by) {
    cons.push_back({key.first, key.second});
    masks.push_back(m);
  }
  return run_cover("slice-cover", U, cons, masks);
}

CoverSolution lc3_exact(const SupportSet& V) {
  if (V.size() > 64) fail(ErrorKind::ScaleExceeded, "line covering supports at most 64 points");
  if (V.dims.size() != 2) fail(ErrorKind::InvalidInput, "line covering needs a 2-D support");
  std::map<std::pair<int, int>, std::uint64_t> by;
  for (std::size_t i = 0; i < V.points.size(); ++i) {
    const auto& p = V.points[i];
    by[{0, p[0]}] |= 1ull << i;
    by[{1, p[1]}] |= 1ull << i;
    by[{2, p[0] + p[1]}] |= 1ull << i;
  }
  std::vector<CoverConstraint> cons;
  std::vector<std::uint64_t> masks;
  for (auto& [key, m] : by) {
    cons.push_back({key.first, key.second});
    masks.push_back(m);
  }
  return run_cover("line-cover", V, cons, masks);
}

bool covers(const CoverSolution& sol, const SupportSet& U) {
  for (const auto& p : U.points) {
    bool hit = false;
    for (const CoverConstraint& c : sol.covers) {
      if (sol.kind == "line-cover") {
        int v = c.type == 2 ? p[0] + p[1] : p[std::size_t(c.type)];
        hit = v == c.value;
      } else {
        hit = std::size_t(c.type) < p.size() && p[std::size_t(c.type)] == c.value;
      }
      if (hit) break;
    }
    if (!hit) return false;
  }
  return true;
}

SupportSet mu_map(const std::vector<int>& X, const std::vector<int>& Y, const std::vector<int>& Z) {
  int mx = 1, my = 1;
  for (int x : X) mx = std::max(mx, x);
  for (int y : Y) my = std::max(my, y);
  std::vector<std::vector<int>> pts;
  for (int x : X)
    for (int y : Y)
      if (std::find(Z.begin(), Z.end(), x + y) != Z.end()) pts.push_back({x, y});
  return SupportSet({mx, my}, std::move(pts));
}

SupportSet restrict_support(const SupportSet& U, const std::vector<std::vector<int>>& boxes) {
  std::vector<std::vector<int>> pts;
  for (const auto& p : U.points) {
    bool in = true;
    for (std::size_t a = 0; a < p.size() && in; ++a)
      in = std::find(boxes[a].begin(), boxes[a].end(), p[a]) != boxes[a].end();
    if (in) pts.push_back(p);
  }
  return SupportSet(U.dims, std::move(pts));
}

SupportSet intersect(const SupportSet& a, const SupportSet& b) {
  std::vector<std::vector<int>> pts;
  std::set_intersection(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(), std::back_inserter(pts));
  std::vector<int> dims = a.dims;
  for (std::size_t i = 0; i < dims.size() && i < b.dims.size(); ++i) dims[i] = std::max(dims[i], b.dims[i]);
  return SupportSet(dims, std::move(pts));
}

SupportSet support_of(const Tensor& t) {
  std::vector<int> dims;
  for (int a = 0; a < t.order(); ++a) dims.push_back(int(t.extent(a)));
  std::vector<std::vector<int>> pts;
  std::vector<std::size_t> pos(std::size_t(t.order()));
  for (std::size_t li = 0; li < t.size(); ++li) {
    if (!t.value(li)) continue;
    t.unravel(li, pos);
    std::vector<int> p;
    for (std::size_t v : pos) p.push_back(int(v) + 1);
    pts.push_back(std::move(p));
  }
  return SupportSet(std::move(dims), std::move(pts));
}

}  // namespace minorank
