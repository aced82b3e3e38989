#include <algorithm>
#include <set>

#include "qbsf/analysis.hpp"
#include "qbsf/clausal.hpp"
#include "qbsf/error.hpp"
#include "qbsf/semantics.hpp"
#include "qbsf/transforms.hpp"

namespace qbsf {

namespace {

Formula bit(bool b) { return Formula::constant(b); }

// g applied to the encoding of the assignment x1..x_len (the first `len`
// variables defined, taking their proposition as value), with an optional
// extra variable x_{len+1} fixed to `next`.
Formula g_atom(const std::string& g, const std::vector<Binder>& prefix, std::size_t len,
               std::optional<bool> next, unsigned m_star) {
  std::vector<Formula> args;
  for (std::size_t i = 0; i < len; ++i) {
    args.push_back(bit(true));
    args.push_back(Formula::var(prefix[i].symbol));
  }
  if (next) {
    args.push_back(bit(true));
    args.push_back(bit(*next));
  }
  while (args.size() < m_star) args.push_back(bit(false));
  return Formula::app(g, std::move(args));
}

// Replace atoms of `name` through `fn`, leaving shadowed occurrences alone.
Formula map_atoms(const Formula& f, const std::set<std::string>& names,
                  const std::function<Formula(const Formula&)>& fn) {
  switch (f.kind()) {
    case Kind::Const:
      return f;
    case Kind::App: {
      std::vector<Formula> args;
      for (const auto& a : f.args()) args.push_back(map_atoms(a, names, fn));
      Formula rebuilt = Formula::app(f.symbol(), std::move(args));
      return names.count(f.symbol()) ? fn(rebuilt) : rebuilt;
    }
    case Kind::Exists:
    case Kind::Forall:
      if (names.count(f.symbol())) {
        auto inner = names;
        inner.erase(f.symbol());
        return Formula::quantified(f.quantifier(), f.symbol(), f.arity(),
                                   map_atoms(f.body(), inner, fn));
      }
      [[fallthrough]];
    default: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(map_atoms(c, names, fn));
      return f.with_children(std::move(kids));
    }
  }
}

Formula wrap(const std::vector<Binder>& prefix, Formula body) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    body = Formula::quantified(it->quantifier, it->symbol, it->arity, std::move(body));
  return body;
}

unsigned arity_of(const Formula& f, const std::string& name, bool& found) {
  unsigned arity = 0;
  found = false;
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* cur = stack.back();
    stack.pop_back();
    if ((cur->is_app() || cur->is_quantifier()) && cur->symbol() == name) {
      if (found && cur->arity() != arity)
        fail(ErrorCode::InconsistentArity, "'" + name + "' used at two arities");
      arity = cur->arity();
      found = true;
    }
    for (const auto& c : cur->children()) stack.push_back(&c);
  }
  return arity;
}

}  // namespace

std::vector<bool> encode_assignment(const PartialAssignment& s, std::size_t k,
                                    std::size_t m_star) {
  if (m_star < 2 * k)
    fail(ErrorCode::WidthTooSmall, "width " + std::to_string(m_star) + " cannot hold " +
                                       std::to_string(k) + " variables");
  std::vector<bool> out(m_star, false);
  for (std::size_t i = 0; i < k && i < s.values.size(); ++i) {
    if (!s.values[i]) continue;
    out[2 * i] = true;
    out[2 * i + 1] = *s.values[i];
  }
  return out;
}

Formula build_theta(const Formula& phi_prime, const std::string& g, unsigned m) {
  const auto prefix = prefix_of(phi_prime);
  for (const auto& b : prefix)
    if (b.arity != 0)
      fail(ErrorCode::NotPropositionalPrefix, "binder '" + b.symbol + "' has arity " +
                                                  std::to_string(b.arity));
  const Formula& matrix = matrix_of(phi_prime);
  if (!is_quantifier_free(matrix) || !is_simple(matrix))
    fail(ErrorCode::NotCNF, "matrix must be quantifier-free and simple");
  const ClausalForm cnf = as_cnf(matrix);
  if (!cnf.ok) fail(ErrorCode::NotCNF, "matrix is not in CNF");

  const std::size_t k = prefix.size();
  const auto m_star = static_cast<unsigned>(std::max<std::size_t>(m, 2 * k));
  std::vector<Formula> clauses;
  clauses.push_back(g_atom(g, prefix, 0, std::nullopt, m_star));
  const Formula total = g_atom(g, prefix, k, std::nullopt, m_star);
  for (const auto& clause : cnf.groups) {
    std::vector<Formula> lits{Formula::negate(total)};
    lits.insert(lits.end(), clause.begin(), clause.end());
    clauses.push_back(Formula::disj_all(lits));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Formula guard = Formula::negate(g_atom(g, prefix, i, std::nullopt, m_star));
    const Formula zero = g_atom(g, prefix, i, false, m_star);
    const Formula one = g_atom(g, prefix, i, true, m_star);
    if (prefix[i].quantifier == Quantifier::Exists) {
      clauses.push_back(Formula::disj(Formula::disj(guard, zero), one));
    } else {
      clauses.push_back(Formula::disj(guard, one));
      clauses.push_back(Formula::disj(guard, zero));
    }
  }
  std::vector<Binder> universal;
  for (const auto& b : prefix) universal.push_back({Quantifier::Forall, b.symbol, 0});
  return wrap(universal, Formula::conj_all(clauses));
}

Formula pad_arity(const Formula& f, const std::string& fname, unsigned m_star) {
  bool found = false;
  const unsigned m = arity_of(f, fname, found);
  if (!found || m == m_star) return f;
  if (m > m_star)
    fail(ErrorCode::ArityShrink, "'" + fname + "' has arity " + std::to_string(m) +
                                     " > " + std::to_string(m_star));
  return rewrite_bottom_up(f, [&](const Formula& node) {
    if (node.is_quantifier() && node.symbol() == fname)
      return Formula::quantified(node.quantifier(), fname, m_star, node.body());
    if (node.is_app() && node.symbol() == fname) {
      std::vector<Formula> args(node.args().begin(), node.args().end());
      args.resize(m_star, Formula::constant(false));
      return Formula::app(fname, std::move(args));
    }
    return node;
  });
}

Formula merge_functions(const Formula& f, const std::string& fname, const std::string& gname,
                        const std::string& hname) {
  if (hname != fname && hname != gname && all_names(f).count(hname))
    fail(ErrorCode::CaptureDetected, "merged name '" + hname + "' is already in use");

  std::function<Formula(const Formula&, bool&)> go = [&](const Formula& node,
                                                         bool& done) -> Formula {
    if (done) return node;
    if (node.is_quantifier() && node.symbol() == fname) {
      const Formula& next = node.body();
      if (!next.is_quantifier() || next.symbol() != gname)
        fail(ErrorCode::NotAdjacent, "'" + gname + "' is not bound directly below '" + fname + "'");
      if (node.arity() != next.arity())
        fail(ErrorCode::ArityMismatch, "'" + fname + "'/" + std::to_string(node.arity()) +
                                           " and '" + gname + "'/" +
                                           std::to_string(next.arity()));
      if (node.quantifier() != next.quantifier())
        fail(ErrorCode::QuantifierTypeMismatch, "'" + fname + "' and '" + gname +
                                                    "' are bound by different quantifiers");
      done = true;
      Formula body = map_atoms(next.body(), {fname, gname}, [&](const Formula& atom) {
        std::vector<Formula> args{bit(atom.symbol() == gname)};
        args.insert(args.end(), atom.args().begin(), atom.args().end());
        return Formula::app(hname, std::move(args));
      });
      return Formula::quantified(node.quantifier(), hname, node.arity() + 1, std::move(body));
    }
    if (node.children().empty()) return node;
    std::vector<Formula> kids;
    for (const auto& c : node.children()) kids.push_back(go(c, done));
    return node.with_children(std::move(kids));
  };
  bool done = false;
  Formula out = go(f, done);
  if (!done) fail(ErrorCode::NotAdjacent, "no binder for '" + fname + "'");
  return out;
}

Formula alt_reduce(const Formula& input) {
  const Formula f = alpha_rename(input);
  if (!f.is_quantifier())
    fail(ErrorCode::ShapeMismatch, "expected a leading function quantifier");
  const Quantifier gamma = f.quantifier();
  const std::string fname = f.symbol();
  const unsigned m = f.arity();
  const Formula& phi_prime = f.body();
  const auto prefix = prefix_of(phi_prime);
  for (const auto& b : prefix)
    if (b.arity != 0)
      fail(ErrorCode::ShapeMismatch, "binder '" + b.symbol + "' after the function quantifier is not a proposition");
  const Formula& matrix = matrix_of(phi_prime);
  if (!is_quantifier_free(matrix) || !is_simple(matrix))
    fail(ErrorCode::ShapeMismatch, "matrix must be quantifier-free and simple");
  const bool normal = gamma == Quantifier::Exists ? as_cnf(matrix).ok : as_dnf(matrix).ok;
  if (!normal)
    fail(ErrorCode::ShapeMismatch, gamma == Quantifier::Exists ? "matrix is not in CNF"
                                                               : "matrix is not in DNF");

  std::set<std::string> used = all_names(f);
  const std::string g = fresh_name("g", used);
  const std::string h = fresh_name("h", used);
  const auto m_star = static_cast<unsigned>(std::max<std::size_t>(m, 2 * prefix.size()));

  Formula inner;
  if (gamma == Quantifier::Exists) {
    inner = Formula::exists(g, m_star, build_theta(phi_prime, g, m));
  } else {
    const Formula theta = build_theta(dualize(phi_prime), g, m);
    inner = Formula::forall(g, m_star, dualize(theta));
  }
  Formula staged = Formula::quantified(gamma, fname, m, inner);
  staged = pad_arity(staged, fname, m_star);
  return merge_functions(staged, fname, g, h);
}

Formula dqbf_to_qbsf(const DqbfInstance& d) {
  std::set<std::string> used(d.universals.begin(), d.universals.end());
  for (const auto& e : d.existentials) used.insert(e.name);
  std::map<std::string, Formula> skolem;
  std::vector<Binder> prefix;
  for (std::size_t i = 0; i < d.existentials.size(); ++i) {
    const auto& e = d.existentials[i];
    const std::string fn = fresh_name("f" + std::to_string(i + 1), used);
    std::vector<Formula> args;
    for (const auto& z : e.deps) args.push_back(Formula::var(z));
    skolem.emplace(e.name, Formula::app(fn, std::move(args)));
    prefix.push_back({Quantifier::Exists, fn, static_cast<unsigned>(e.deps.size())});
  }
  for (const auto& x : d.universals) prefix.push_back({Quantifier::Forall, x, 0});
  Formula body = rewrite_bottom_up(d.matrix, [&](const Formula& node) {
    if (node.is_proposition())
      if (auto it = skolem.find(node.symbol()); it != skolem.end()) return it->second;
    return node;
  });
  return wrap(prefix, std::move(body));
}

}  // namespace qbsf
