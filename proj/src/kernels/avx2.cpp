// Built with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_internal.hpp"

namespace qbsf::kernels {

namespace {

static_assert(kBlockWords == 4, "one __m256i per block");

void run(std::span<const Instr> code, const std::uint64_t* const* leaves, std::uint64_t* out,
         std::size_t words, std::uint64_t* scratch) {
  auto* regs = reinterpret_cast<__m256i*>(scratch);
  for (std::size_t base = 0; base < words; base += kBlockWords) {
    for (std::size_t i = 0; i < code.size(); ++i) {
      const Instr& in = code[i];
      __m256i r;
      switch (in.op) {
        case Op::Zero: r = _mm256_setzero_si256(); break;
        case Op::One: r = _mm256_set1_epi64x(-1); break;
        case Op::Leaf:
          r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(leaves[in.a] + base));
          break;
        case Op::Not:
          r = _mm256_xor_si256(_mm256_loadu_si256(regs + in.a), _mm256_set1_epi64x(-1));
          break;
        case Op::And:
          r = _mm256_and_si256(_mm256_loadu_si256(regs + in.a), _mm256_loadu_si256(regs + in.b));
          break;
        case Op::Or:
        default:
          r = _mm256_or_si256(_mm256_loadu_si256(regs + in.a), _mm256_loadu_si256(regs + in.b));
          break;
      }
      _mm256_storeu_si256(regs + i, r);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + base),
                        _mm256_loadu_si256(regs + code.size() - 1));
  }
}

void and_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t w = 0;
  for (; w + 4 <= words; w += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + w);
    const auto* s = reinterpret_cast<const __m256i*>(src + w);
    _mm256_storeu_si256(d, _mm256_and_si256(_mm256_loadu_si256(d), _mm256_loadu_si256(s)));
  }
  for (; w < words; ++w) dst[w] &= src[w];
}

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t w = 0;
  for (; w + 4 <= words; w += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + w);
    const auto* s = reinterpret_cast<const __m256i*>(src + w);
    _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), _mm256_loadu_si256(s)));
  }
  for (; w < words; ++w) dst[w] |= src[w];
}

bool all_zero(const std::uint64_t* v, std::size_t lanes) {
  const std::size_t full = lanes / 64;
  std::size_t w = 0;
  for (; w + 4 <= full; w += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + w));
    if (!_mm256_testz_si256(x, x)) return false;
  }
  for (; w < full; ++w)
    if (v[w] != 0) return false;
  return (lanes % 64 == 0) || (v[full] & tail_mask(lanes)) == 0;
}

bool all_ones(const std::uint64_t* v, std::size_t lanes) {
  const std::size_t full = lanes / 64;
  const __m256i ones = _mm256_set1_epi64x(-1);
  std::size_t w = 0;
  for (; w + 4 <= full; w += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + w));
    if (!_mm256_testc_si256(x, ones)) return false;
  }
  for (; w < full; ++w)
    if (v[w] != ~std::uint64_t{0}) return false;
  return (lanes % 64 == 0) || (v[full] & tail_mask(lanes)) == tail_mask(lanes);
}

}  // namespace

const KernelSet* avx2_kernels_unchecked() {
  static const KernelSet set{"avx2", run, and_into, or_into, all_zero, all_ones};
  return &set;
}

}  // namespace qbsf::kernels
