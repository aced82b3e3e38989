#include <algorithm>
#include <bit>

#include "kernels_internal.hpp"

namespace qbsf::kernels {

namespace {

void run(std::span<const Instr> code, const std::uint64_t* const* leaves, std::uint64_t* out,
         std::size_t words, std::uint64_t* scratch) {
  for (std::size_t base = 0; base < words; base += kBlockWords) {
    for (std::size_t i = 0; i < code.size(); ++i) {
      std::uint64_t* r = scratch + i * kBlockWords;
      const Instr& in = code[i];
      const std::uint64_t* x = scratch + in.a * kBlockWords;
      const std::uint64_t* y = scratch + in.b * kBlockWords;
      switch (in.op) {
        case Op::Zero: std::fill_n(r, kBlockWords, 0); break;
        case Op::One: std::fill_n(r, kBlockWords, ~std::uint64_t{0}); break;
        case Op::Leaf: std::copy_n(leaves[in.a] + base, kBlockWords, r); break;
        case Op::Not:
          for (std::size_t w = 0; w < kBlockWords; ++w) r[w] = ~x[w];
          break;
        case Op::And:
          for (std::size_t w = 0; w < kBlockWords; ++w) r[w] = x[w] & y[w];
          break;
        case Op::Or:
          for (std::size_t w = 0; w < kBlockWords; ++w) r[w] = x[w] | y[w];
          break;
      }
    }
    std::copy_n(scratch + (code.size() - 1) * kBlockWords, kBlockWords, out + base);
  }
}

void and_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) dst[w] &= src[w];
}

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) dst[w] |= src[w];
}

bool all_zero(const std::uint64_t* v, std::size_t lanes) {
  const std::size_t full = lanes / 64;
  for (std::size_t w = 0; w < full; ++w)
    if (v[w] != 0) return false;
  return (lanes % 64 == 0) || (v[full] & tail_mask(lanes)) == 0;
}

bool all_ones(const std::uint64_t* v, std::size_t lanes) {
  const std::size_t full = lanes / 64;
  for (std::size_t w = 0; w < full; ++w)
    if (v[w] != ~std::uint64_t{0}) return false;
  return (lanes % 64 == 0) || (v[full] & tail_mask(lanes)) == tail_mask(lanes);
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", run, and_into, or_into, all_zero, all_ones};
  return set;
}

std::size_t first_set(const std::uint64_t* v, std::size_t lanes) {
  for (std::size_t w = 0; w * 64 < lanes; ++w)
    if (v[w] != 0) return std::min(lanes, w * 64 + std::countr_zero(v[w]));
  return lanes;
}

std::size_t first_clear(const std::uint64_t* v, std::size_t lanes) {
  for (std::size_t w = 0; w * 64 < lanes; ++w)
    if (~v[w] != 0) return std::min(lanes, w * 64 + std::countr_zero(~v[w]));
  return lanes;
}

}  // namespace qbsf::kernels
