#include "minorank/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace minorank::kernels::avx2 {

#if defined(__AVX2__)

bool compiled() { return true; }

void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

// c*src mod p comes from a 16-entry shuffle table (src < 8), then one
// conditional subtraction folds dst + c*src < 2p back into [0, p).
void axpy_mod(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::uint8_t p, std::size_t n) {
  if (c == 0) return;
  alignas(16) std::uint8_t lut[16] = {};
  for (unsigned v = 0; v < p; ++v) lut[v] = std::uint8_t((c * v) % p);
  const __m128i lut128 = _mm_load_si128(reinterpret_cast<const __m128i*>(lut));
  const __m256i table = _mm256_broadcastsi128_si256(lut128);
  const __m256i pv = _mm256_set1_epi8(static_cast<char>(p));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i t = _mm256_add_epi8(d, _mm256_shuffle_epi8(table, s));
    t = _mm256_min_epu8(t, _mm256_sub_epi8(t, pv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), t);
  }
  for (; i < n; ++i) dst[i] = std::uint8_t((dst[i] + lut[src[i]]) % p);
}

#else

bool compiled() { return false; }
void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) { scalar::xor_words(dst, src, n); }
void axpy_mod(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::uint8_t p, std::size_t n) {
  scalar::axpy_mod(dst, src, c, p, n);
}

#endif

}  // namespace minorank::kernels::avx2
