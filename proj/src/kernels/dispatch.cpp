#include <atomic>
#include <cstdlib>
#include <cstring>

#include "mollab/kernels.hpp"

namespace mollab::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("MOLLAB_SIMD"); env && std::strcmp(env, "scalar") == 0) {
    return Isa::Scalar;
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() {
#if defined(MOLLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) return false;
  current().store(isa, std::memory_order_relaxed);
  return true;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double functional_sum(const double* ep, const double* em, const double* s, const double* d,
                      const double* wt, std::size_t n, double c0, double c1, double beta) {
#if defined(MOLLAB_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::functional_sum(ep, em, s, d, wt, n, c0, c1, beta);
#endif
  return scalar::functional_sum(ep, em, s, d, wt, n, c0, c1, beta);
}

Norms diff_norms(const double* a, const double* b, std::size_t n) {
#if defined(MOLLAB_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::diff_norms(a, b, n);
#endif
  return scalar::diff_norms(a, b, n);
}

double stencil_residual_max(const double* s, const double* tanh_t, const double* src,
                            std::size_t n, double h, double c) {
#if defined(MOLLAB_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::stencil_residual_max(s, tanh_t, src, n, h, c);
#endif
  return scalar::stencil_residual_max(s, tanh_t, src, n, h, c);
}

}  // namespace mollab::kernels
