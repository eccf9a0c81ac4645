#include "doctest.h"
#include "minorank/errors.hpp"
#include "minorank/rank_oracles.hpp"
#include "support.hpp"

using namespace minorank;
using testsupport::diagonal;
using testsupport::random_tensor;

namespace {
OracleOptions generic() {
  OracleOptions o;
  o.fast_paths = false;
  return o;
}
}  // namespace

TEST_CASE("zero tensor has rank 0 for every family") {
  Tensor z = Tensor::cube(Field(2), 3, 2);
  for (const auto& R : {PartitionFamily::tensor_rank(3), PartitionFamily::slice_rank(3)}) {
    auto c = rrank_decide(z, R, 0);
    REQUIRE(c);
    CHECK(c->terms.empty());
  }
}

TEST_CASE("order-2 ranks equal matrix rank") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    Field f(trial % 2 ? 3 : 2);
    Tensor t = random_tensor(f, {3, 3}, rng, 0.5);
    std::size_t r = mat_rank(flatten(t, 1u));
    CHECK(rrank(t, PartitionFamily::tensor_rank(2), generic()) == r);
    CHECK(rrank(t, PartitionFamily::partition_rank(2)) == r);
  }
}

TEST_CASE("diagonal [2]^3 has slice rank 2") {
  Tensor t = diagonal(Field(2), 3, 2);
  auto R = PartitionFamily::slice_rank(3);
  CHECK_FALSE(rrank_decide(t, R, 1, generic()));
  auto c = rrank_decide(t, R, 2, generic());
  REQUIRE(c);
  CHECK(certifies(*c, t));
  CHECK(c->value() == 2);
}

TEST_CASE("rank table for every F_2 tensor of shape [2]^3") {
  const auto tr = testsupport::bfs_rank_table(3, PartitionFamily::tensor_rank(3));
  const auto sr = testsupport::bfs_rank_table(3, PartitionFamily::slice_rank(3));
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    Tensor t = testsupport::tensor_from_mask(3, mask);
    RankReport a = rrank_exact(t, PartitionFamily::tensor_rank(3), generic());
    RankReport b = rrank_exact(t, PartitionFamily::slice_rank(3), generic());
    CHECK(a.value == tr[mask]);
    CHECK(b.value == sr[mask]);
    CHECK(certifies(a.certificate, t));
    CHECK(certifies(b.certificate, t));
    CHECK(b.value <= a.value);
  }
}

TEST_CASE("rank table sample for F_2 tensors of shape [2]^4") {
  const auto tr = testsupport::bfs_rank_table(4, PartitionFamily::tensor_rank(4));
  const auto pr = testsupport::bfs_rank_table(4, PartitionFamily::partition_rank(4));
  const auto sr = testsupport::bfs_rank_table(4, PartitionFamily::slice_rank(4));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 120; ++trial) {
    std::uint64_t mask = rng() & 0xffff;
    Tensor t = testsupport::tensor_from_mask(4, mask);
    std::size_t p = rrank(t, PartitionFamily::partition_rank(4));
    std::size_t s = rrank(t, PartitionFamily::slice_rank(4));
    CHECK(p == pr[mask]);
    CHECK(s == sr[mask]);
    CHECK(p <= s);
    if (tr[mask] <= 3) CHECK(rrank(t, PartitionFamily::tensor_rank(4)) == tr[mask]);
  }
}

TEST_CASE("rank-one and two-term tensors") {
  Field f(2);
  Tensor r1 = testsupport::outer(f, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  CHECK(tensor_rank(r1) == 1);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor t = testsupport::outer(f, {testsupport::random_vector(f, 3, rng), testsupport::random_vector(f, 3, rng),
                                      testsupport::random_vector(f, 3, rng)}) +
               testsupport::outer(f, {testsupport::random_vector(f, 3, rng), testsupport::random_vector(f, 3, rng),
                                      testsupport::random_vector(f, 3, rng)});
    RankReport rep = rrank_exact(t, PartitionFamily::tensor_rank(3));
    CHECK(rep.value <= 2);
    CHECK(certifies(rep.certificate, t));
    if (rep.value > 0) CHECK_FALSE(rrank_decide(t, PartitionFamily::tensor_rank(3), rep.value - 1));
  }
}

TEST_CASE("pr <= sr <= tr and family monotonicity") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 12; ++trial) {
    Tensor t = random_tensor(Field(2), {2, 2, 2, 2}, rng, 0.5);
    std::size_t pr = partition_rank(t), sr = slice_rank(t), tr = tensor_rank(t);
    CHECK(pr <= sr);
    CHECK(sr <= tr);
    // adding partitions can only lower the rank
    PartitionFamily bigger(4, [&] {
      auto ps = PartitionFamily::slice_rank(4).partitions();
      const PartitionFamily extra = pr22_family();
      for (const auto& p : extra.partitions()) ps.push_back(p);
      return ps;
    }());
    CHECK(rrank(t, bigger) <= sr);
  }
}

TEST_CASE("fast paths agree with the generic search") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    // antichain supports in [3]^3: points with x + y + z constant
    Tensor t = Tensor::cube(Field(2), 3, 3);
    int level = 4 + int(rng() % 3);
    for (std::size_t li = 0; li < t.size(); ++li) {
      auto lab = t.labels_of(li);
      if (int(lab[0] + lab[1] + lab[2]) == level && rng() % 3) t.set_value(li, 1);
    }
    auto R = PartitionFamily::slice_rank(3);
    RankReport fast = rrank_exact(t, R), slow = rrank_exact(t, R, generic());
    CHECK(fast.value == slow.value);
    CHECK(certifies(fast.certificate, t));
  }
}

TEST_CASE("spanning rank") {
  Field f(2);
  std::vector<FieldVector> basis{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<FieldVector> F{{1, 1, 0}, {0, 1, 1}};
  CHECK(spanning_rank(f, basis, F) == 3);
  std::vector<FieldVector> whole;
  for (std::uint64_t c = 1; c < 8; ++c) whole.push_back(vector_from_index(f, 3, c));
  CHECK(spanning_rank(f, whole, F) == 2);
  CHECK(spanning_rank(f, basis, {}) == 0);
  CHECK_FALSE(spanning_rank(f, {{1, 0, 0}}, F));
  // tensor rank equals the spanning rank of the slices over rank-one matrices
  std::vector<FieldVector> rank_one;
  for (std::uint64_t a = 1; a < 4; ++a)
    for (std::uint64_t b = 1; b < 4; ++b) {
      FieldVector v(4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) v[std::size_t(2 * i + j)] = Elem(((a >> (1 - i)) & 1) & ((b >> (1 - j)) & 1));
      rank_one.push_back(v);
    }
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    Tensor t = testsupport::tensor_from_mask(3, mask);
    std::vector<FieldVector> slices;
    for (std::size_t x = 0; x < 2; ++x) {
      FieldVector s(t.values().begin() + std::ptrdiff_t(4 * x), t.values().begin() + std::ptrdiff_t(4 * x + 4));
      slices.push_back(s);
    }
    CHECK(spanning_rank(f, rank_one, slices) == tensor_rank(t));
  }
}

TEST_CASE("essential rank") {
  Field f(2);
  Tensor id = Tensor::cube(f, 2, 4);
  for (std::size_t i = 0; i < 4; ++i) id.set_value(i * 5, 1);
  EssentialReport e = essential_rank_exact(id, PartitionFamily::tensor_rank(2));
  CHECK(e.value == 0);
  CHECK((id + e.modifier).is_zero());
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor t = random_tensor(f, {4, 4}, rng, 0.5);
    EssentialReport r = essential_rank_exact(t, PartitionFamily::tensor_rank(2));
    // brute force over the 2^4 diagonal modifications
    std::size_t best = 99;
    for (int code = 0; code < 16; ++code) {
      Tensor s = t;
      for (int i = 0; i < 4; ++i)
        if (code >> i & 1) s.set_value(std::size_t(i * 5), Elem(1 - s.value(std::size_t(i * 5))));
      best = std::min(best, mat_rank(flatten(s, 1u)));
    }
    CHECK(r.value == best);
    CHECK(r.value <= mat_rank(flatten(t, 1u)));
    CHECK(certifies(r.certificate, t));
    EssentialReport g = essential_rank_exact(t, PartitionFamily::tensor_rank(2), generic());
    CHECK(g.value == best);
    CHECK(certifies(g.certificate, t));
  }
  // supported inside E
  Tensor inside = Tensor::cube(f, 3, 2);
  inside.set_value(0, 1);
  inside.set_value(3, 1);
  CHECK(essential_rank_exact(inside, PartitionFamily::slice_rank(3)).value == 0);
}

TEST_CASE("disjoint rank") {
  Field f(2);
  Tensor t = Tensor::cube(f, 2, 2);
  t.set_value(1, 1);  // (1,2)
  DisjointReport d = disjoint_rank_exact(t, PartitionFamily::tensor_rank(2));
  CHECK(d.value == 1);
  CHECK(d.selection.sets == std::vector<Axis>{{1}, {2}});
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    Tensor s = random_tensor(f, {3, 3, 3}, rng, 0.3);
    auto R = PartitionFamily::slice_rank(3);
    DisjointReport dr = disjoint_rank_exact(s, R);
    EssentialReport er = essential_rank_exact(s, R);
    CHECK(dr.value <= er.value);
    CHECK((dr.value == 0) == (er.value == 0));
    if (dr.value) CHECK(rrank(restrict_to(s, dr.selection), R) == dr.value);
  }
}

TEST_CASE("oversized searches raise ScaleExceeded") {
  Field f(3);
  std::mt19937_64 rng(8);
  Tensor t = random_tensor(f, {4, 4, 4, 4}, rng);
  try {
    rrank_exact(t, PartitionFamily::tensor_rank(4));
    FAIL("expected ScaleExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ScaleExceeded);
  }
}
