#pragma once

// Shared helpers for the test binaries: random instances and small
// independent reference implementations.

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "minorank/matrix.hpp"
#include "minorank/partition.hpp"
#include "minorank/tensor.hpp"
#include "minorank/tensor_ops.hpp"

namespace testsupport {

using namespace minorank;

inline Tensor random_tensor(Field f, const std::vector<std::size_t>& dims, std::mt19937_64& rng, double density = 1.0) {
  std::vector<Axis> axes;
  for (std::size_t n : dims) {
    Axis a;
    for (std::size_t i = 1; i <= n; ++i) a.push_back(Label(i));
    axes.push_back(a);
  }
  Tensor t(f, axes);
  std::uniform_int_distribution<int> val(1, f.p() - 1);
  std::bernoulli_distribution keep(density);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (keep(rng)) t.set_value(i, Elem(val(rng)));
  return t;
}

inline FieldVector random_vector(const Field& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> val(0, f.p() - 1);
  FieldVector v(n);
  for (auto& x : v) x = Elem(val(rng));
  return v;
}

inline FieldMatrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  return FieldMatrix(f, r, c, random_vector(f, r * c, rng));
}

// Outer product of vectors, labels 1..n on every axis.
inline Tensor outer(const Field& f, const std::vector<FieldVector>& vs) {
  std::vector<std::size_t> dims;
  for (const auto& v : vs) dims.push_back(v.size());
  std::mt19937_64 rng(0);
  Tensor t = random_tensor(f, dims, rng, 0.0);
  std::vector<std::size_t> pos(vs.size(), 0), shape = t.shape();
  std::size_t li = 0;
  do {
    Elem v = 1;
    for (std::size_t a = 0; a < vs.size(); ++a) v = f.mul(v, vs[a][pos[a]]);
    t.set_value(li++, v);
  } while (next_index(shape, pos));
  return t;
}

// Diagonal tensor 1_{x_1 = ... = x_d} on [n]^d.
inline Tensor diagonal(const Field& f, int d, std::size_t n) {
  Tensor t = Tensor::cube(f, d, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> pos(std::size_t(d), i);
    t.set(pos, 1);
  }
  return t;
}

// Textbook Gaussian elimination without any packing or early exits.
inline std::size_t naive_rank(FieldMatrix m) {
  const Field& f = m.field();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Elem tmp = m.at(rank, j);
      m.set(rank, j, m.at(piv, j));
      m.set(piv, j, tmp);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      Elem factor = f.mul(m.at(r, c), f.inv(m.at(rank, c)));
      for (std::size_t j = 0; j < m.cols(); ++j) m.set(r, j, f.sub(m.at(r, j), f.mul(factor, m.at(rank, j))));
    }
    ++rank;
  }
  return rank;
}

// Breadth-first rank table over all F_2 tensors of shape [2]^d, encoded as
// bit masks (bit i = value at linear index i). Generators are every nonzero
// product prod_{I in P} a_I(x_I) for P in R.
inline std::vector<std::uint8_t> bfs_rank_table(int d, const PartitionFamily& R) {
  const std::size_t N = std::size_t(1) << d;
  const std::size_t states = std::size_t(1) << N;
  std::vector<std::uint64_t> gens;
  for (const Partition& P : R.partitions()) {
    // Enumerate one function per part; a function on part I is a bit mask
    // over its 2^|I| points.
    std::vector<std::size_t> choice(P.size(), 0), limit;
    for (AxisMask part : P) limit.push_back(std::size_t(1) << (std::size_t(1) << mask_size(part)));
    while (true) {
      std::uint64_t g = 0;
      for (std::size_t x = 0; x < N; ++x) {
        bool v = true;
        for (std::size_t j = 0; j < P.size() && v; ++j) {
          // coordinates of x restricted to part j; axis 0 is the most significant bit
          std::size_t sub = 0;
          for (int a = 0; a < d; ++a)
            if (P[j] >> a & 1) sub = sub * 2 + ((x >> (d - 1 - a)) & 1);
          v = (choice[j] >> sub) & 1;
        }
        if (v) g |= std::uint64_t(1) << x;
      }
      if (g) gens.push_back(g);
      std::size_t j = P.size();
      while (j > 0 && ++choice[j - 1] == limit[j - 1]) choice[--j] = 0;
      if (j == 0) break;
    }
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<std::uint8_t> dist(states, 255);
  std::vector<std::uint64_t> frontier{0};
  dist[0] = 0;
  for (std::uint8_t level = 1; !frontier.empty(); ++level) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t s : frontier)
      for (std::uint64_t g : gens) {
        std::uint64_t u = s ^ g;
        if (dist[u] == 255) {
          dist[u] = level;
          next.push_back(u);
        }
      }
    frontier.swap(next);
  }
  return dist;
}

inline Tensor tensor_from_mask(int d, std::uint64_t mask) {
  Tensor t = Tensor::cube(Field(2), d, 2);
  for (std::size_t i = 0; i < t.size(); ++i) t.set_value(i, Elem((mask >> i) & 1));
  return t;
}

}  // namespace testsupport
