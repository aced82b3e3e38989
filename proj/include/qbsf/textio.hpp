#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qbsf/formula.hpp"

namespace qbsf {

/// Parses the `.qbsf` text format.
///
///   phi := '0' | '1' | IDENT | IDENT '(' phi (',' phi)* ')' | '~' phi
///        | '(' phi ')' | phi OP phi | QUANT IDENT ['/' NAT] phi
///
/// Loosest to tightest: quantifiers, `<->`, `->` (right-assoc), `|`, `&`,
/// `~`. A quantifier body extends as far right as possible. `;` starts a
/// line comment. Throws SyntaxError (with position) or InconsistentArity.
Formula parse_formula(std::string_view text);

/// Minimal-parenthesis rendering; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);

struct Existential {
  std::string name;
  std::vector<std::string> deps;

  friend bool operator==(const Existential&, const Existential&) = default;
};

struct DqbfInstance {
  std::vector<std::string> universals;
  std::vector<Existential> existentials;
  Formula matrix;  // propositional CNF over v<k>
};

/// DQDIMACS subset: `p cnf V C`, `a`/`e`/`d` prefix lines, clauses, `c`
/// comments. Variable k becomes proposition `v<k>`. An `e` variable depends
/// on every universal declared before it.
/// Throws SyntaxError, UndeclaredVariable or HeaderMismatch.
DqbfInstance parse_dqdimacs(std::string_view text);

}  // namespace qbsf
