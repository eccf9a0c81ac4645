#pragma once

#include <cstddef>
#include <cstdint>

// Row kernels for elimination and contraction. Each kernel has a portable
// scalar reference and an AVX2 variant; the variant is chosen once at runtime
// from the CPU feature flags.
namespace minorank::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
const char* isa_name(Isa isa);

// Forces the scalar reference for the rest of the process (used by tests).
void force_scalar(bool on);

// dst[i] ^= src[i]
void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);

// dst[i] = (dst[i] + c * src[i]) mod p, with dst, src, c already reduced.
void axpy_mod(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::uint8_t p, std::size_t n);

namespace scalar {
void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
void axpy_mod(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::uint8_t p, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool compiled();
void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
void axpy_mod(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::uint8_t p, std::size_t n);
}  // namespace avx2

}  // namespace minorank::kernels
