#include "qbsf/formula.hpp"

#include <utility>

#include "qbsf/error.hpp"

namespace qbsf {

struct Formula::Node {
  Kind kind = Kind::Const;
  bool value = false;
  std::string symbol;
  unsigned arity = 0;
  std::vector<Formula> children;
  std::size_t size = 1;
};

Formula::Formula() : Formula(constant(false)) {}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::constant(bool value) {
  static const Formula zero(std::make_shared<const Node>(Node{Kind::Const, false, {}, 0, {}, 1}));
  static const Formula one(std::make_shared<const Node>(Node{Kind::Const, true, {}, 0, {}, 1}));
  return value ? one : zero;
}

Formula Formula::var(std::string name) { return app(std::move(name), {}); }

Formula Formula::app(std::string symbol, std::vector<Formula> args) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::App;
  node->symbol = std::move(symbol);
  node->arity = static_cast<unsigned>(args.size());
  node->children = std::move(args);
  for (const auto& c : node->children) node->size += c.size();
  return Formula(std::move(node));
}

Formula Formula::negate(Formula operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->size = 1 + operand.size();
  node->children.push_back(std::move(operand));
  return Formula(std::move(node));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->size = 1 + lhs.size() + rhs.size();
  node->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(node));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->size = 1 + lhs.size() + rhs.size();
  node->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(node));
}

Formula Formula::quantified(Quantifier q, std::string symbol, unsigned arity, Formula body) {
  auto node = std::make_shared<Node>();
  node->kind = q == Quantifier::Exists ? Kind::Exists : Kind::Forall;
  node->symbol = std::move(symbol);
  node->arity = arity;
  node->size = 1 + body.size();
  node->children.push_back(std::move(body));
  return Formula(std::move(node));
}

Formula Formula::exists(std::string symbol, unsigned arity, Formula body) {
  return quantified(Quantifier::Exists, std::move(symbol), arity, std::move(body));
}

Formula Formula::forall(std::string symbol, unsigned arity, Formula body) {
  return quantified(Quantifier::Forall, std::move(symbol), arity, std::move(body));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return disj(negate(std::move(lhs)), std::move(rhs));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return conj(disj(negate(lhs), rhs), disj(negate(rhs), lhs));
}

Formula Formula::conj_all(std::span<const Formula> parts) {
  if (parts.empty()) return constant(true);
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::disj_all(std::span<const Formula> parts) {
  if (parts.empty()) return constant(false);
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Kind Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_proposition() const noexcept {
  return node_->kind == Kind::App && node_->children.empty();
}

bool Formula::value() const {
  if (kind() != Kind::Const) fail(ErrorCode::ShapeMismatch, "value() on non-constant");
  return node_->value;
}

const std::string& Formula::symbol() const {
  if (kind() != Kind::App && !is_quantifier())
    fail(ErrorCode::ShapeMismatch, "symbol() on node without symbol");
  return node_->symbol;
}

std::span<const Formula> Formula::args() const {
  if (kind() != Kind::App) fail(ErrorCode::ShapeMismatch, "args() on non-application");
  return node_->children;
}

unsigned Formula::arity() const {
  if (kind() != Kind::App && !is_quantifier())
    fail(ErrorCode::ShapeMismatch, "arity() on node without symbol");
  return node_->arity;
}

Quantifier Formula::quantifier() const {
  if (!is_quantifier()) fail(ErrorCode::ShapeMismatch, "quantifier() on non-binder");
  return kind() == Kind::Exists ? Quantifier::Exists : Quantifier::Forall;
}

const Formula& Formula::operand() const {
  if (kind() != Kind::Not) fail(ErrorCode::ShapeMismatch, "operand() on non-negation");
  return node_->children[0];
}

const Formula& Formula::lhs() const {
  if (kind() != Kind::And && kind() != Kind::Or)
    fail(ErrorCode::ShapeMismatch, "lhs() on non-binary node");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (kind() != Kind::And && kind() != Kind::Or)
    fail(ErrorCode::ShapeMismatch, "rhs() on non-binary node");
  return node_->children[1];
}

const Formula& Formula::body() const {
  if (!is_quantifier()) fail(ErrorCode::ShapeMismatch, "body() on non-binder");
  return node_->children[0];
}

std::span<const Formula> Formula::children() const { return node_->children; }

Formula Formula::with_children(std::vector<Formula> children) const {
  if (children.size() != node_->children.size())
    fail(ErrorCode::InvalidPath, "with_children: child count changed");
  switch (kind()) {
    case Kind::Const:
      return *this;
    case Kind::App:
      return app(node_->symbol, std::move(children));
    case Kind::Not:
      return negate(std::move(children[0]));
    case Kind::And:
      return conj(std::move(children[0]), std::move(children[1]));
    case Kind::Or:
      return disj(std::move(children[0]), std::move(children[1]));
    case Kind::Exists:
    case Kind::Forall:
      return quantified(quantifier(), node_->symbol, node_->arity, std::move(children[0]));
  }
  return *this;
}

std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.size != y.size || x.value != y.value || x.arity != y.arity ||
      x.symbol != y.symbol || x.children.size() != y.children.size())
    return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  return true;
}

Formula rewrite_bottom_up(const Formula& f, const std::function<Formula(const Formula&)>& fn) {
  if (f.children().empty()) return fn(f);
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  bool changed = false;
  for (const auto& c : f.children()) {
    kids.push_back(rewrite_bottom_up(c, fn));
    changed = changed || !kids.back().same_node(c);
  }
  return fn(changed ? f.with_children(std::move(kids)) : f);
}

}  // namespace qbsf
