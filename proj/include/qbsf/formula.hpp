#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qbsf {

enum class Kind { Const, App, Not, And, Or, Exists, Forall };

enum class Quantifier { Exists, Forall };

constexpr Quantifier dual(Quantifier q) noexcept {
  return q == Quantifier::Exists ? Quantifier::Forall : Quantifier::Exists;
}

/// Immutable, structurally shared qbsf term.
///
/// Propositions are applications of arity zero. Or and Forall are kept as
/// first-class nodes so that normal-form analysis sees the surface shape;
/// implication and biconditional only exist as builders.
class Formula {
 public:
  /// Defaults to the constant 0.
  Formula();

  static Formula constant(bool value);
  static Formula var(std::string name);
  static Formula app(std::string symbol, std::vector<Formula> args);
  static Formula negate(Formula operand);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula exists(std::string symbol, unsigned arity, Formula body);
  static Formula forall(std::string symbol, unsigned arity, Formula body);
  static Formula quantified(Quantifier q, std::string symbol, unsigned arity,
                            Formula body);

  /// a -> b, lowered to ~a | b.
  static Formula implies(Formula lhs, Formula rhs);
  /// a <-> b, lowered to (~a | b) & (~b | a).
  static Formula iff(Formula lhs, Formula rhs);

  /// Left-associated chains; the empty conjunction is 1, the empty
  /// disjunction is 0.
  static Formula conj_all(std::span<const Formula> parts);
  static Formula disj_all(std::span<const Formula> parts);

  Kind kind() const noexcept;
  bool is_const() const noexcept { return kind() == Kind::Const; }
  bool is_app() const noexcept { return kind() == Kind::App; }
  bool is_quantifier() const noexcept {
    return kind() == Kind::Exists || kind() == Kind::Forall;
  }
  /// Application of arity zero.
  bool is_proposition() const noexcept;

  bool value() const;                  // Const
  const std::string& symbol() const;   // App, Exists, Forall
  std::span<const Formula> args() const;  // App
  unsigned arity() const;              // Exists, Forall: declared; App: args
  Quantifier quantifier() const;       // Exists, Forall
  const Formula& operand() const;      // Not
  const Formula& lhs() const;          // And, Or
  const Formula& rhs() const;          // And, Or
  const Formula& body() const;         // Exists, Forall

  /// Children in positional order: args of App, operand of Not, lhs/rhs,
  /// binder body. Positions in substitute() index into this list.
  std::span<const Formula> children() const;

  /// Same node kind and payload with new children.
  Formula with_children(std::vector<Formula> children) const;

  std::size_t size() const;

  bool same_node(const Formula& other) const noexcept {
    return node_ == other.node_;
  }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

/// Path from the root, each entry indexing Formula::children().
using Position = std::vector<std::size_t>;

/// Bottom-up rebuild; `fn` sees a node whose children are already rewritten.
Formula rewrite_bottom_up(const Formula& f,
                          const std::function<Formula(const Formula&)>& fn);

}  // namespace qbsf
