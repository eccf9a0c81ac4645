#include "minorank/counterexample.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <set>
#include <thread>

#include "minorank/errors.hpp"
#include "minorank/rank_oracles.hpp"
#include "minorank/tensor_ops.hpp"

namespace minorank {

namespace {

constexpr int kNx = 11, kNy = 4, kNz = 15;

std::vector<std::uint32_t> k_subsets(int n, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m)
    if (__builtin_popcount(m) == k) out.push_back(m);
  return out;
}

Axis iota_axis(int n) {
  Axis a;
  for (int i = 1; i <= n; ++i) a.push_back(Label(i));
  return a;
}

// Reverse the z axis (axis index 2) inside every factor that contains it.
RankTerm reverse_z(const RankTerm& term) {
  RankTerm out = term;
  for (Factor& f : out.factors) {
    if (!(f.part & 4u)) continue;
    for (std::size_t b = 0; b < f.values.size(); b += kNz) std::reverse(f.values.begin() + std::ptrdiff_t(b), f.values.begin() + std::ptrdiff_t(b + kNz));
  }
  return out;
}

}  // namespace

SupportSet gowers_set() {
  return SupportSet({kNx, kNy}, {{2, 1}, {6, 1}, {11, 1}, {1, 2}, {11, 3}, {1, 4}, {6, 4}, {10, 4}});
}

Tensor gowers_tensor() {
  Tensor t(Field(2), {iota_axis(kNx), iota_axis(kNy), iota_axis(kNz)});
  for (const auto& p : gowers_set().points) {
    std::vector<Label> lab{Label(p[0]), Label(p[1]), Label(p[0] + p[1])};
    t.set_labels(lab, 1);
  }
  return t;
}

CounterexampleReport verify_counterexample(unsigned threads, bool throw_on_failure) {
  auto start = std::chrono::steady_clock::now();
  CounterexampleReport rep;
  const SupportSet V = gowers_set();
  const Tensor T = gowers_tensor();
  rep.points = V.size();

  std::set<int> sums;
  for (const auto& p : V.points) sums.insert(p[0] + p[1]);
  rep.sum_values.assign(sums.begin(), sums.end());
  rep.sum_values_ok = rep.sum_values == std::vector<int>{3, 5, 7, 10, 12, 14};

  // U = support of T; z -> 16 - z turns it into a level set x + y + z = 16.
  Tensor reflected = T.zeros_like();
  std::vector<std::size_t> pos(3);
  for (std::size_t li = 0; li < T.size(); ++li) {
    if (!T.value(li)) continue;
    T.unravel(li, pos);
    pos[2] = std::size_t(kNz - 1) - pos[2];
    reflected.set(pos, 1);
  }
  const SupportSet U = support_of(T), Ur = support_of(reflected);
  rep.reflected_antichain = is_antichain(Ur);
  rep.scc_full = scc_exact(U).size();
  rep.lc3_full = lc3_exact(V).size();

  RankReport sr = rrank_exact(reflected, PartitionFamily::slice_rank(3));
  rep.slice_rank = sr.value;
  RankCertificate back = sr.certificate;
  for (RankTerm& term : back.terms) term = reverse_z(term);
  rep.certificate_ok = sr.method == "antichain" && certifies(back, T) && certifies(sr.certificate, reflected);

  {
    std::vector<std::vector<int>> rest;
    for (const auto& p : V.points)
      if (p[0] + p[1] != 5 && p[0] + p[1] != 12) rest.push_back(p);
    CoverSolution three{"line-cover", {{0, 6}, {2, 3}, {2, 14}}};
    rep.removal_ok = covers(three, SupportSet(V.dims, rest));
  }

  // Every size-4 minor: X in C([11],4), Y = [4], Z in C([15],4). The minor
  // only depends on which points of V survive, so both covering numbers are
  // tabulated per surviving subset first.
  const std::size_t n = V.size();
  std::vector<int> lc3_of(std::size_t(1) << n), scc_of(std::size_t(1) << n);
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    std::vector<std::vector<int>> vp, up;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) {
        const auto& p = V.points[i];
        vp.push_back(p);
        up.push_back({p[0], p[1], p[0] + p[1]});
      }
    lc3_of[m] = int(lc3_exact(SupportSet(V.dims, vp)).size());
    scc_of[m] = int(scc_exact(SupportSet({kNx, kNy, kNz}, up)).size());
  }
  const auto xs = k_subsets(kNx, 4), ys = k_subsets(kNy, 4), zs = k_subsets(kNz, 4);
  rep.x_subsets = xs.size();
  rep.y_subsets = ys.size();
  rep.z_subsets = zs.size();

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  rep.threads = threads;
  std::atomic<std::uint64_t> combos{0}, mismatches{0};
  std::atomic<int> worst{0};
  auto work = [&](unsigned id) {
    std::uint64_t c = 0, bad = 0;
    int w = 0;
    for (std::size_t xi = id; xi < xs.size(); xi += threads)
      for (std::uint32_t Y : ys)
        for (std::uint32_t Z : zs) {
          ++c;
          // mu(X, Y, Z) = {(x, y) in X x Y : x + y in Z}; intersect with V.
          std::uint32_t mask = 0;
          for (std::size_t i = 0; i < n; ++i) {
            int x = V.points[i][0], y = V.points[i][1];
            if ((xs[xi] >> (x - 1) & 1) && (Y >> (y - 1) & 1) && (Z >> (x + y - 1) & 1)) mask |= 1u << i;
          }
          int lc = lc3_of[mask];
          if (lc != scc_of[mask]) ++bad;
          w = std::max(w, lc);
        }
    combos += c;
    mismatches += bad;
    int cur = worst.load();
    while (w > cur && !worst.compare_exchange_weak(cur, w)) {
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work, i);
  work(0);
  for (auto& th : pool) th.join();
  rep.combinations = combos;
  rep.cover_mismatches = mismatches;
  rep.max_minor_cover = std::size_t(worst.load());

  rep.passed = rep.sum_values_ok && rep.reflected_antichain && rep.scc_full == 4 && rep.lc3_full == 4 &&
               rep.slice_rank == 4 && rep.certificate_ok && rep.removal_ok && rep.combinations == 450450 &&
               rep.cover_mismatches == 0 && rep.max_minor_cover <= 3;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!rep.passed && throw_on_failure) fail(ErrorKind::VerificationFailed, "counterexample sub-claim failed");
  return rep;
}

}  // namespace minorank
