#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minorank/certificate.hpp"
#include "minorank/covering.hpp"
#include "minorank/tensor.hpp"

namespace minorank {

// V = {(2,1),(6,1),(11,1),(1,2),(11,3),(1,4),(6,4),(10,4)} inside [11] x [4].
SupportSet gowers_set();
// T(x, y, z) = 1_V(x, y) 1_{z = x + y} on [11] x [4] x [15] over F_2.
Tensor gowers_tensor();

struct CounterexampleReport {
  std::size_t points = 0;
  std::vector<int> sum_values;   // distinct x + y over V
  bool sum_values_ok = false;    // equal to {3,5,7,10,12,14}
  bool reflected_antichain = false;
  std::size_t lc3_full = 0;      // lc_3 V
  std::size_t scc_full = 0;      // scc U
  std::size_t slice_rank = 0;    // sr T, certificate checked
  bool certificate_ok = false;
  bool removal_ok = false;       // x=6, x+y=3, x+y=14 cover V minus {x+y in {5,12}}
  std::uint64_t x_subsets = 0, y_subsets = 0, z_subsets = 0, combinations = 0;
  std::size_t max_minor_cover = 0;   // largest lc_3 over all size-4 minors
  std::uint64_t cover_mismatches = 0; // scc(U ∩ box) != lc_3(V ∩ mu)
  unsigned threads = 1;
  double seconds = 0;
  bool passed = false;
};

// Full machine check. Throws VerificationFailed when a sub-claim fails and
// `throw_on_failure` is set.
CounterexampleReport verify_counterexample(unsigned threads = 0, bool throw_on_failure = true);

}  // namespace minorank
