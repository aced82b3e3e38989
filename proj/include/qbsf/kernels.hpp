#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace qbsf::kernels {

// Bit-sliced evaluation: one 64-bit word holds 64 lanes, each lane an
// independent candidate. Programs are straight-line and run block by block
// so the register file stays in cache.

enum class Op : std::uint8_t { Zero, One, Leaf, Not, And, Or };

/// Leaf: a = leaf index. Not: a = operand. And/Or: a, b = operands. Operands
/// refer to earlier instructions; the last instruction is the result.
struct Instr {
  Op op = Op::Zero;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

/// Words per block (256 lanes). Lane buffers are padded to whole blocks.
inline constexpr std::size_t kBlockWords = 4;

constexpr std::size_t padded_words(std::size_t lanes) {
  const std::size_t words = (lanes + 63) / 64;
  return (words + kBlockWords - 1) / kBlockWords * kBlockWords;
}

struct KernelSet {
  std::string_view name;
  /// out[0, words) = program over leaves[k][0, words); `words` is a multiple
  /// of kBlockWords and scratch holds code.size() * kBlockWords words.
  void (*run)(std::span<const Instr> code, const std::uint64_t* const* leaves,
              std::uint64_t* out, std::size_t words, std::uint64_t* scratch);
  void (*and_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  void (*or_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  /// Tests over the first `lanes` lanes only.
  bool (*all_zero)(const std::uint64_t* v, std::size_t lanes);
  bool (*all_ones)(const std::uint64_t* v, std::size_t lanes);
};

const KernelSet& scalar_kernels();
/// nullptr when not compiled in or not supported by this CPU.
const KernelSet* avx2_kernels();
const KernelSet* neon_kernels();

/// Best available set; QBSF_KERNEL=scalar|avx2|neon forces a choice when
/// that set is available.
const KernelSet& active_kernels();

/// Index of the first set (resp. clear) lane below `lanes`, or `lanes`.
std::size_t first_set(const std::uint64_t* v, std::size_t lanes);
std::size_t first_clear(const std::uint64_t* v, std::size_t lanes);

}  // namespace qbsf::kernels
