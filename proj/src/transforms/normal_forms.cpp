#include <set>

#include "qbsf/analysis.hpp"
#include "qbsf/clausal.hpp"
#include "qbsf/error.hpp"
#include "qbsf/semantics.hpp"
#include "qbsf/transforms.hpp"

namespace qbsf {

namespace {

Formula flatten_rec(const Formula& f, std::set<std::string>& used) {
  if (!f.is_app()) {
    if (f.children().empty()) return f;
    std::vector<Formula> kids;
    for (const auto& c : f.children()) kids.push_back(flatten_rec(c, used));
    return f.with_children(std::move(kids));
  }
  std::vector<Formula> args;
  std::vector<std::pair<std::string, Formula>> introduced;
  for (const auto& a : f.args()) {
    if (a.is_const() || a.is_proposition()) {
      args.push_back(a);
      continue;
    }
    Formula inner = flatten_rec(a, used);
    std::string z = fresh_name("z", used);
    args.push_back(Formula::var(z));
    introduced.emplace_back(std::move(z), std::move(inner));
  }
  Formula out = Formula::app(f.symbol(), std::move(args));
  for (auto it = introduced.rbegin(); it != introduced.rend(); ++it)
    out = Formula::exists(it->first, 0,
                          Formula::conj(Formula::iff(Formula::var(it->first), it->second), out));
  return out;
}

struct Prenexed {
  std::vector<Binder> prefix;
  Formula matrix;
};

Prenexed hoist(const Formula& f) {
  switch (f.kind()) {
    case Kind::Const:
    case Kind::App:
      return {{}, f};
    case Kind::Not: {
      Prenexed p = hoist(f.operand());
      for (auto& b : p.prefix) b.quantifier = dual(b.quantifier);
      return {std::move(p.prefix), Formula::negate(std::move(p.matrix))};
    }
    case Kind::And:
    case Kind::Or: {
      Prenexed l = hoist(f.lhs());
      Prenexed r = hoist(f.rhs());
      l.prefix.insert(l.prefix.end(), r.prefix.begin(), r.prefix.end());
      return {std::move(l.prefix), f.with_children({std::move(l.matrix), std::move(r.matrix)})};
    }
    case Kind::Exists:
    case Kind::Forall: {
      Prenexed b = hoist(f.body());
      b.prefix.insert(b.prefix.begin(), Binder{f.quantifier(), f.symbol(), f.arity()});
      return b;
    }
  }
  return {{}, f};
}

}  // namespace

Formula flatten(const Formula& f) {
  if (is_simple(f)) return f;
  std::set<std::string> used = all_names(f);
  return flatten_rec(f, used);
}

Formula to_prenex(const Formula& f) {
  if (!is_simple(f)) fail(ErrorCode::ShapeMismatch, "prenexing requires a simple formula; flatten first");
  if (is_prenex(f)) return f;
  Prenexed p = hoist(alpha_rename(f));
  Formula out = std::move(p.matrix);
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it)
    out = Formula::quantified(it->quantifier, it->symbol, it->arity, std::move(out));
  return out;
}

Formula dualize(const Formula& f) {
  if (!is_prenex(f)) fail(ErrorCode::NotPrenex, "dualize requires a prenex formula");
  const auto prefix = prefix_of(f);
  Formula out = negated_nnf(matrix_of(f));
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    out = Formula::quantified(dual(it->quantifier), it->symbol, it->arity, std::move(out));
  return out;
}

}  // namespace qbsf
