#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minorank/tensor.hpp"

namespace minorank {

struct GenerateParams {
  int d = 3;
  std::size_t n = 3;       // labels 1..n on every axis
  std::size_t k = 1;       // terms for rank1sum
  int p = 2;
  double density = 0.5;    // random, esupported, antichain
  std::uint64_t seed = 0;
};

// Kinds: random, rank1sum, diagonal, antichain, esupported, obstruction
// (two tensors), gowers. Deterministic in (kind, params); values come from
// raw mt19937_64 output so they do not depend on the standard library.
std::vector<Tensor> generate(const std::string& kind, const GenerateParams& params);
const std::vector<std::string>& generator_kinds();

}  // namespace minorank
