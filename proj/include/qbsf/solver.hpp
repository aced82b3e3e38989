#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbsf/analysis.hpp"
#include "qbsf/formula.hpp"
#include "qbsf/kernels.hpp"
#include "qbsf/semantics.hpp"
#include "qbsf/truth_table.hpp"

namespace qbsf {

struct SolveLimits {
  unsigned max_arity = 4;
  std::uint64_t max_steps = std::uint64_t{1} << 24;

  EvalLimits eval() const { return {max_arity, max_steps}; }
};

struct Verdict {
  bool value = false;
  /// Tables for the leading same-type block (up to its last function binder,
  /// or the whole block when it has none) when `value` is that block's goal:
  /// true for exists, false for forall. Lexicographically first.
  std::optional<Interpretation> witness;
  /// Binders covered by `witness`, in prefix order.
  std::vector<Binder> witness_binders;
};

/// Decides a closed formula. Non-prenex input is flattened and prenexed
/// first; a witness is only produced for prenex input.
/// Throws NotClosed or LimitExceeded.
Verdict decide(const Formula& f, const SolveLimits& limits = {});

/// Truth value of `f` with its free symbols taken from `interp`.
bool decide_under(const Formula& f, const Interpretation& interp, const SolveLimits& limits = {},
                  const kernels::KernelSet* kernel_set = nullptr);

/// decide(f).value == evaluate(f, {}) in exhaustive mode.
bool decide_against_oracle(const Formula& f, const SolveLimits& limits = {});

}  // namespace qbsf
