#include "minorank/generate.hpp"

#include <random>

#include "minorank/counterexample.hpp"
#include "minorank/disjoint.hpp"
#include "minorank/errors.hpp"

namespace minorank {

namespace {

// Portable draws: only the raw engine output is used.
struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t seed) : rng(seed) {}
  bool coin(double density) { return double(rng() >> 11) * 0x1.0p-53 < density; }
  Elem nonzero(int p) { return Elem(1 + rng() % std::uint64_t(p - 1)); }
  Elem any(int p) { return Elem(rng() % std::uint64_t(p)); }
};

}  // namespace

const std::vector<std::string>& generator_kinds() {
  static const std::vector<std::string> kinds = {"random", "rank1sum", "diagonal", "antichain",
                                                 "esupported", "obstruction", "gowers"};
  return kinds;
}

std::vector<Tensor> generate(const std::string& kind, const GenerateParams& g) {
  if (g.d < 1 || g.d > 8 || g.n < 1 || g.n > 64) fail(ErrorKind::InvalidInput, "generator shape out of range");
  if (g.density < 0 || g.density > 1) fail(ErrorKind::InvalidInput, "density must lie in [0, 1]");
  const Field f(g.p);
  Draw draw(g.seed);
  if (kind == "gowers") return {gowers_tensor()};
  if (kind == "obstruction") return obstruction_pair(f, g.n);
  Tensor t = Tensor::cube(f, g.d, g.n);
  if (kind == "random") {
    for (std::size_t i = 0; i < t.size(); ++i)
      if (draw.coin(g.density)) t.set_value(i, draw.nonzero(g.p));
  } else if (kind == "diagonal") {
    for (std::size_t x = 0; x < g.n; ++x) t.set(std::vector<std::size_t>(std::size_t(g.d), x), 1);
  } else if (kind == "rank1sum") {
    // sum of k outer products: tr <= k by construction
    for (std::size_t term = 0; term < g.k; ++term) {
      std::vector<FieldVector> vs(std::size_t(g.d), FieldVector(g.n));
      for (auto& v : vs)
        for (auto& x : v) x = draw.any(g.p);
      std::vector<std::size_t> pos(std::size_t(g.d), 0), shape(std::size_t(g.d), g.n);
      do {
        int prod = 1;
        for (int a = 0; a < g.d; ++a) prod = prod * vs[std::size_t(a)][pos[std::size_t(a)]] % g.p;
        if (prod) t.set(pos, Elem((t.at(pos) + prod) % g.p));
      } while (next_index(shape, pos));
    }
  } else if (kind == "antichain") {
    // support on the layer x_1 + ... + x_d = n - 1 (positions), an antichain
    std::vector<std::size_t> pos(std::size_t(g.d), 0), shape(std::size_t(g.d), g.n);
    do {
      std::size_t sum = 0;
      for (auto x : pos) sum += x;
      if (sum == g.n - 1 && draw.coin(g.density)) t.set(pos, draw.nonzero(g.p));
    } while (next_index(shape, pos));
  } else if (kind == "esupported") {
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto ls = t.labels_of(i);
      bool in_e = false;
      for (std::size_t a = 0; a < ls.size() && !in_e; ++a)
        for (std::size_t b = a + 1; b < ls.size(); ++b) in_e = in_e || ls[a] == ls[b];
      if (in_e && draw.coin(g.density)) t.set_value(i, draw.nonzero(g.p));
    }
  } else {
    fail(ErrorKind::UnknownKind, "unknown generator kind " + kind);
  }
  return {t};
}

}  // namespace minorank
