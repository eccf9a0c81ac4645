#include "minorank/kernels.hpp"

#include <atomic>

namespace minorank::kernels {

namespace {

std::atomic<bool> g_force_scalar{false};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return avx2::compiled() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool use_avx2() {
  static const bool has = cpu_has_avx2();
  return has && !g_force_scalar.load(std::memory_order_relaxed);
}

}  // namespace

Isa active_isa() { return use_avx2() ? Isa::Avx2 : Isa::Scalar; }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  // Short rows dominate the searches; the vector path only pays off past a few words.
  if (n >= 8 && use_avx2())
    avx2::xor_words(dst, src, n);
  else
    scalar::xor_words(dst, src, n);
}

void axpy_mod(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::uint8_t p, std::size_t n) {
  if (n >= 32 && use_avx2())
    avx2::axpy_mod(dst, src, c, p, n);
  else
    scalar::axpy_mod(dst, src, c, p, n);
}

}  // namespace minorank::kernels
