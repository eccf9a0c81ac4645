#include "minorank/kernels.hpp"

namespace minorank::kernels::scalar {

void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

void axpy_mod(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::uint8_t p, std::size_t n) {
  if (c == 0) return;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned s = dst[i] + unsigned(c) * src[i];
    dst[i] = std::uint8_t(s % p);
  }
}

}  // namespace minorank::kernels::scalar
