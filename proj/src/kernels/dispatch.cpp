#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace qbsf::kernels {

const KernelSet* avx2_kernels() {
#if defined(QBSF_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet* neon_kernels() {
#if defined(QBSF_HAVE_NEON)
  return neon_kernels_unchecked();  // baseline on aarch64
#else
  return nullptr;
#endif
}

const KernelSet& active_kernels() {
  static const KernelSet* chosen = [] {
    const char* env = std::getenv("QBSF_KERNEL");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2_kernels()) return avx2_kernels();
    if (want == "neon" && neon_kernels()) return neon_kernels();
    if (auto* k = avx2_kernels()) return k;
    if (auto* k = neon_kernels()) return k;
    return &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace qbsf::kernels
