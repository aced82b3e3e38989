#pragma once

#include <vector>

#include "qbsf/formula.hpp"

namespace qbsf {

/// A literal is a possibly negated constant, proposition, or function atom
/// whose arguments are constants or propositions.
bool is_literal(const Formula& f);

/// Atom with constant/proposition arguments only (no negation).
bool is_simple_atom(const Formula& f);

/// Operands of a maximal And (resp. Or) tree, left to right.
std::vector<Formula> conjuncts(const Formula& f);
std::vector<Formula> disjuncts(const Formula& f);

/// Negation normal form: negations only directly above atoms or constants,
/// constants under negation folded. Binders flip under negation.
Formula nnf(const Formula& f);

/// NNF of ~f.
Formula negated_nnf(const Formula& f);

/// Clause list of a CNF matrix (each clause a literal list), or nullopt-like
/// empty result with ok=false when `matrix` is not clausal.
struct ClausalForm {
  bool ok = false;
  std::vector<std::vector<Formula>> groups;
};
ClausalForm as_cnf(const Formula& matrix);
ClausalForm as_dnf(const Formula& matrix);

}  // namespace qbsf
