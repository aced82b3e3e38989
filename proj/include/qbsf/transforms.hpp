#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbsf/formula.hpp"
#include "qbsf/textio.hpp"

namespace qbsf {

/// Replaces every application argument that is not a constant or a
/// proposition by a fresh z, as `exists z ((z <-> arg) & atom)` around the
/// atom. Arguments are flattened before their atom.
Formula flatten(const Formula& f);

/// Hoists all binders to the front after alpha_rename: left operand's
/// binders before the right's, flipped under negation. Throws ShapeMismatch
/// when `f` is not simple.
Formula to_prenex(const Formula& f);

/// Flips every prefix quantifier and replaces the matrix by the NNF of its
/// negation. Throws NotPrenex.
Formula dualize(const Formula& f);

/// Assignment to x1..xk; nullopt marks an undefined variable.
struct PartialAssignment {
  std::vector<std::optional<bool>> values;
};

/// (defined_i, value_i) for i = 1..k, then zeros up to m_star.
/// Throws WidthTooSmall when m_star < 2k.
std::vector<bool> encode_assignment(const PartialAssignment& s, std::size_t k,
                                    std::size_t m_star);

/// theta(g) for `phi_prime` = G1 x1 ... Gk xk H with H a simple CNF, where the
/// reduced function has arity m; g gets arity max(m, 2k). Clause order: g(0),
/// the guarded clauses of H, then the extension clauses for prefix lengths
/// 0..k-1. Throws NotPropositionalPrefix or NotCNF.
Formula build_theta(const Formula& phi_prime, const std::string& g, unsigned m);

/// Appends constant-0 arguments to every f atom up to arity m_star and
/// re-annotates f's binders. Throws ArityShrink.
Formula pad_arity(const Formula& f, const std::string& fname, unsigned m_star);

/// Replaces adjacent binders G f, G g of equal arity by G h with one more
/// argument: f(a) -> h(0, a), g(a) -> h(1, a). Throws ArityMismatch,
/// QuantifierTypeMismatch, NotAdjacent, or CaptureDetected if h is taken.
Formula merge_functions(const Formula& f, const std::string& fname, const std::string& gname,
                        const std::string& hname);

/// G f G1 x1 ... Gk xk H  ->  G h G'1 x1 ... G'k xk H' with one function
/// quantifier of arity max(m, 2k) + 1 and a matrix in the same normal form
/// (CNF for exists, DNF for forall). Throws ShapeMismatch.
Formula alt_reduce(const Formula& f);

/// exists f1 ... exists fn forall x H[y_i := f_i(z_i)].
Formula dqbf_to_qbsf(const DqbfInstance& d);

}  // namespace qbsf
