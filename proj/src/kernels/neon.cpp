#include <arm_neon.h>

#include "kernels_internal.hpp"

namespace qbsf::kernels {

namespace {

// Two uint64x2_t per block.
void run(std::span<const Instr> code, const std::uint64_t* const* leaves, std::uint64_t* out,
         std::size_t words, std::uint64_t* scratch) {
  for (std::size_t base = 0; base < words; base += kBlockWords) {
    for (std::size_t i = 0; i < code.size(); ++i) {
      const Instr& in = code[i];
      std::uint64_t* r = scratch + i * kBlockWords;
      const std::uint64_t* x = scratch + in.a * kBlockWords;
      const std::uint64_t* y = scratch + in.b * kBlockWords;
      for (std::size_t h = 0; h < kBlockWords; h += 2) {
        uint64x2_t v;
        switch (in.op) {
          case Op::Zero: v = vdupq_n_u64(0); break;
          case Op::One: v = vdupq_n_u64(~std::uint64_t{0}); break;
          case Op::Leaf: v = vld1q_u64(leaves[in.a] + base + h); break;
          case Op::Not:
            v = vreinterpretq_u64_u32(vmvnq_u32(vreinterpretq_u32_u64(vld1q_u64(x + h))));
            break;
          case Op::And: v = vandq_u64(vld1q_u64(x + h), vld1q_u64(y + h)); break;
          case Op::Or:
          default: v = vorrq_u64(vld1q_u64(x + h), vld1q_u64(y + h)); break;
        }
        vst1q_u64(r + h, v);
      }
    }
    const std::uint64_t* last = scratch + (code.size() - 1) * kBlockWords;
    for (std::size_t h = 0; h < kBlockWords; h += 2) vst1q_u64(out + base + h, vld1q_u64(last + h));
  }
}

void and_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t w = 0;
  for (; w + 2 <= words; w += 2) vst1q_u64(dst + w, vandq_u64(vld1q_u64(dst + w), vld1q_u64(src + w)));
  for (; w < words; ++w) dst[w] &= src[w];
}

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t w = 0;
  for (; w + 2 <= words; w += 2) vst1q_u64(dst + w, vorrq_u64(vld1q_u64(dst + w), vld1q_u64(src + w)));
  for (; w < words; ++w) dst[w] |= src[w];
}

bool all_zero(const std::uint64_t* v, std::size_t lanes) {
  const std::size_t full = lanes / 64;
  std::size_t w = 0;
  for (; w + 2 <= full; w += 2)
    if (vmaxvq_u32(vreinterpretq_u32_u64(vld1q_u64(v + w))) != 0) return false;
  for (; w < full; ++w)
    if (v[w] != 0) return false;
  return (lanes % 64 == 0) || (v[full] & tail_mask(lanes)) == 0;
}

bool all_ones(const std::uint64_t* v, std::size_t lanes) {
  const std::size_t full = lanes / 64;
  std::size_t w = 0;
  for (; w + 2 <= full; w += 2)
    if (vminvq_u32(vreinterpretq_u32_u64(vld1q_u64(v + w))) != 0xFFFFFFFFu) return false;
  for (; w < full; ++w)
    if (v[w] != ~std::uint64_t{0}) return false;
  return (lanes % 64 == 0) || (v[full] & tail_mask(lanes)) == tail_mask(lanes);
}

}  // namespace

const KernelSet* neon_kernels_unchecked() {
  static const KernelSet set{"neon", run, and_into, or_into, all_zero, all_ones};
  return &set;
}

}  // namespace qbsf::kernels
