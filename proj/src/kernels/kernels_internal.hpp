#pragma once

#include "qbsf/kernels.hpp"

namespace qbsf::kernels {

/// Mask of the valid lanes in the last, partial word.
constexpr std::uint64_t tail_mask(std::size_t lanes) {
  return (std::uint64_t{1} << (lanes % 64)) - 1;
}

const KernelSet* avx2_kernels_unchecked();
const KernelSet* neon_kernels_unchecked();

}  // namespace qbsf::kernels
