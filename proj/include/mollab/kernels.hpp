#pragma once

// Data-parallel loops over sampled profiles. Each kernel has a scalar
// reference and an AVX2 variant; the variant is picked once at startup from
// the CPU features (MOLLAB_SIMD=scalar forces the reference).

#include <cstddef>
#include <string_view>

namespace mollab::kernels {

enum class Isa { Scalar, Avx2 };

struct Norms {
  double sup = 0;
  double sumsq = 0;
};

/// sum_i wt_i [ep_i (c0 s_i^2 + c1 d_i^2) + em_i (c0 (beta - s_i)^2 + c1 d_i^2)]
double functional_sum(const double* ep, const double* em, const double* s, const double* d,
                      const double* wt, std::size_t n, double c0, double c1, double beta);

/// max_i |a_i - b_i| and sum_i (a_i - b_i)^2.
Norms diff_norms(const double* a, const double* b, std::size_t n);

/// max over interior nodes of
/// |(s[i+1] - 2 s[i] + s[i-1]) / h^2 + tanh_t[i] (s[i+1] - s[i-1]) / (2h) + c s[i] - src[i]|
double stencil_residual_max(const double* s, const double* tanh_t, const double* src,
                            std::size_t n, double h, double c);

Isa active_isa();
bool avx2_available();
/// Select an implementation; returns false if the ISA is unavailable.
bool set_isa(Isa isa);
std::string_view isa_name(Isa isa);

namespace scalar {
double functional_sum(const double* ep, const double* em, const double* s, const double* d,
                      const double* wt, std::size_t n, double c0, double c1, double beta);
Norms diff_norms(const double* a, const double* b, std::size_t n);
double stencil_residual_max(const double* s, const double* tanh_t, const double* src,
                            std::size_t n, double h, double c);
}  // namespace scalar

#if defined(MOLLAB_HAVE_AVX2)
namespace avx2 {
double functional_sum(const double* ep, const double* em, const double* s, const double* d,
                      const double* wt, std::size_t n, double c0, double c1, double beta);
Norms diff_norms(const double* a, const double* b, std::size_t n);
double stencil_residual_max(const double* s, const double* tanh_t, const double* src,
                            std::size_t n, double h, double c);
}  // namespace avx2
#endif

}  // namespace mollab::kernels
