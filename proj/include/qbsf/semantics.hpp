#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "qbsf/formula.hpp"
#include "qbsf/truth_table.hpp"

namespace qbsf {

/// Bounds for brute-force enumeration. A step is one candidate table tried
/// for a quantified or free symbol (or one decision of the clause search).
struct EvalLimits {
  unsigned max_arity = 4;
  std::uint64_t max_steps = std::uint64_t{1} << 24;
};

enum class EvalMode {
  /// Short-circuit connectives and quantifiers; homogeneous proposition
  /// blocks over CNF (exists) or DNF (forall) matrices are decided by clause
  /// search instead of full enumeration.
  Pruned,
  /// Literal semantic clauses: every table of every quantifier is visited
  /// and max/min taken over all of them.
  Exhaustive,
};

using SymbolArities = std::map<std::string, unsigned>;

/// Free symbols with their arity; throws InconsistentArity.
SymbolArities free_symbols(const Formula& f);

/// Throws InconsistentArity or ArityMismatch if a binder and one of its
/// occurrences disagree.
void check_well_formed(const Formula& f);

bool evaluate(const Formula& f, const Interpretation& interp,
              const EvalLimits& limits = {}, EvalMode mode = EvalMode::Pruned);

bool equivalent(const Formula& a, const Formula& b, const EvalLimits& limits = {});
bool entails(const Formula& a, const Formula& b, const EvalLimits& limits = {});

/// Calls `visit` for every interpretation over `symbols` (tables in
/// lexicographic order, first symbol outermost) until it returns false.
/// Throws LimitExceeded when an arity exceeds the limit or the number of
/// interpretations exceeds max_steps.
void for_each_interpretation(const SymbolArities& symbols, const EvalLimits& limits,
                             const std::function<bool(const Interpretation&)>& visit);

/// Subformula at `pos`; throws InvalidPath.
const Formula& subformula_at(const Formula& f, const Position& pos);

/// Replaces the subformula at `pos` by `replacement`. Throws InvalidPath, or
/// CaptureDetected when a free symbol of `replacement` that is not free in
/// the replaced subformula would be bound by a binder above `pos`.
Formula substitute(const Formula& f, const Position& pos, const Formula& replacement);

/// Renames binders so that no binder name repeats or coincides with a free
/// symbol. Conflicting names are numbered in order of appearance (p -> p1,
/// p2, ...); names that are already unique are kept.
Formula alpha_rename(const Formula& f);

/// Every name occurring in `f`, bound or free.
std::set<std::string> all_names(const Formula& f);

/// `base` if unused, else base1, base2, ...; the result is added to `used`.
std::string fresh_name(const std::string& base, std::set<std::string>& used);

}  // namespace qbsf
