#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbsf/formula.hpp"

namespace qbsf {

struct Binder {
  Quantifier quantifier;
  std::string symbol;
  unsigned arity;

  friend bool operator==(const Binder&, const Binder&) = default;
};

/// Leading binders of `f` and the formula below them.
std::vector<Binder> prefix_of(const Formula& f);
const Formula& matrix_of(const Formula& f);

bool is_quantifier_free(const Formula& f);
bool is_prenex(const Formula& f);
/// Every application argument is a constant or a proposition.
bool is_simple(const Formula& f);
/// Prenex, simple, and the matrix is a conjunction of clauses (resp. a
/// disjunction of terms) over literals of is_literal().
bool is_cnf(const Formula& f);
bool is_dnf(const Formula& f);
/// Every symbol of arity >= 1 occurs with a single argument tuple.
bool is_uniq(const Formula& f);

/// Number of maximal same-quantifier runs.
std::uint64_t count_runs(std::span<const Binder> block);

enum class BlockType { None, Sigma, Pi };

std::string_view to_string(BlockType t);

/// A quantity that may be unbounded (the fragment index omega).
using Count = std::uint64_t;
inline constexpr Count kOmega = std::numeric_limits<Count>::max();

struct FragmentSignature {
  BlockType so_type = BlockType::None;
  Count so_count = 0;
  Count so_alt = 0;
  BlockType fo_type = BlockType::None;
  Count fo_count = 0;
  Count fo_alt = 0;

  friend bool operator==(const FragmentSignature&, const FragmentSignature&) = default;
};

enum class SplitPolicy {
  /// The function block ends at the last binder of arity >= 1 and may
  /// contain propositions; every prefix splits.
  Maximal,
  /// The function block holds only binders of arity >= 1 before the first
  /// proposition binder; a later function binder is NotSplittable.
  Strict,
};

/// Minimal signature. Throws NotPrenex, or NotSplittable under Strict.
FragmentSignature signature_of(const Formula& f, SplitPolicy policy = SplitPolicy::Maximal);

/// Whether some split of the prefix into a function block and a trailing
/// proposition block satisfies `sig`. Throws NotPrenex.
bool in_fragment(const Formula& f, const FragmentSignature& sig);

struct Classification {
  bool prenex = false;
  bool simple = false;
  bool cnf = false;
  bool dnf = false;
  bool uniq = false;
  std::optional<FragmentSignature> signature;  // present iff prenex
};

Classification classify(const Formula& f);

/// Advisory warnings, e.g. a name quantified at two different arities.
std::vector<std::string> lint(const Formula& f);

}  // namespace qbsf
