#include "qbsf/clausal.hpp"

namespace qbsf {

namespace {

void collect(const Formula& f, Kind kind, std::vector<Formula>& out) {
  if (f.kind() == kind) {
    collect(f.lhs(), kind, out);
    collect(f.rhs(), kind, out);
  } else {
    out.push_back(f);
  }
}

ClausalForm clausal(const Formula& matrix, Kind outer, Kind inner) {
  ClausalForm out;
  for (const auto& group : (outer == Kind::And ? conjuncts(matrix) : disjuncts(matrix))) {
    std::vector<Formula> lits;
    collect(group, inner, lits);
    for (const auto& l : lits)
      if (!is_literal(l)) return {};
    out.groups.push_back(std::move(lits));
  }
  out.ok = true;
  return out;
}

}  // namespace

bool is_simple_atom(const Formula& f) {
  if (f.kind() == Kind::Const) return true;
  if (f.kind() != Kind::App) return false;
  for (const auto& a : f.args())
    if (!(a.is_const() || a.is_proposition())) return false;
  return true;
}

bool is_literal(const Formula& f) {
  if (f.kind() == Kind::Not) return is_simple_atom(f.operand());
  return is_simple_atom(f);
}

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  collect(f, Kind::And, out);
  return out;
}

std::vector<Formula> disjuncts(const Formula& f) {
  std::vector<Formula> out;
  collect(f, Kind::Or, out);
  return out;
}

Formula negated_nnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Const:
      return Formula::constant(!f.value());
    case Kind::App:
      return Formula::negate(f);
    case Kind::Not:
      return nnf(f.operand());
    case Kind::And:
      return Formula::disj(negated_nnf(f.lhs()), negated_nnf(f.rhs()));
    case Kind::Or:
      return Formula::conj(negated_nnf(f.lhs()), negated_nnf(f.rhs()));
    case Kind::Exists:
    case Kind::Forall:
      return Formula::quantified(dual(f.quantifier()), f.symbol(), f.arity(),
                                 negated_nnf(f.body()));
  }
  return f;
}

Formula nnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Const:
    case Kind::App:
      return f;
    case Kind::Not:
      return negated_nnf(f.operand());
    case Kind::And:
      return Formula::conj(nnf(f.lhs()), nnf(f.rhs()));
    case Kind::Or:
      return Formula::disj(nnf(f.lhs()), nnf(f.rhs()));
    case Kind::Exists:
    case Kind::Forall:
      return Formula::quantified(f.quantifier(), f.symbol(), f.arity(), nnf(f.body()));
  }
  return f;
}

ClausalForm as_cnf(const Formula& matrix) { return clausal(matrix, Kind::And, Kind::Or); }
ClausalForm as_dnf(const Formula& matrix) { return clausal(matrix, Kind::Or, Kind::And); }

}  // namespace qbsf
