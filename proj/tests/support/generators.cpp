#include "generators.hpp"

#include <algorithm>
#include <map>

namespace qbsf::test {

Formula FormulaGen::literal(const std::vector<Symbol>& scope) {
  Formula a = atom(scope, 0, false);
  return coin() ? Formula::negate(a) : a;
}

Formula FormulaGen::atom(const std::vector<Symbol>& scope, unsigned depth, bool nested_args) {
  if (scope.empty() || coin(0.08)) return Formula::constant(coin());
  const auto& [name, arity] = scope[below(scope.size())];
  std::vector<Symbol> props;
  for (const auto& s : scope)
    if (s.second == 0) props.push_back(s);
  std::vector<Formula> args;
  for (unsigned i = 0; i < arity; ++i) {
    if (nested_args && depth > 0 && coin(0.15)) {
      args.push_back(matrix(scope, std::min(depth - 1, 1u), false));
    } else if (!props.empty() && coin(0.75)) {
      args.push_back(Formula::var(props[below(props.size())].first));
    } else {
      args.push_back(Formula::constant(coin()));
    }
  }
  return Formula::app(name, std::move(args));
}

Formula FormulaGen::matrix(const std::vector<Symbol>& scope, unsigned depth, bool nested_args) {
  if (depth == 0 || coin(0.25)) return atom(scope, depth, nested_args);
  switch (below(6)) {
    case 0: return Formula::negate(matrix(scope, depth - 1, nested_args));
    case 1:
    case 2: return Formula::conj(matrix(scope, depth - 1, nested_args), matrix(scope, depth - 1, nested_args));
    case 3:
    case 4: return Formula::disj(matrix(scope, depth - 1, nested_args), matrix(scope, depth - 1, nested_args));
    default:
      return coin() ? Formula::iff(matrix(scope, depth - 1, nested_args), matrix(scope, depth - 1, nested_args))
                    : Formula::implies(matrix(scope, depth - 1, nested_args),
                                       matrix(scope, depth - 1, nested_args));
  }
}

Formula FormulaGen::node(std::vector<Symbol>& scope, unsigned depth, unsigned& budget, const GenConfig& cfg) {
  if (budget > 0 && coin(0.3)) {
    --budget;
    const unsigned arity = static_cast<unsigned>(below(cfg.max_arity + 1));
    const std::string name = (arity == 0 ? "p" : "f") + std::to_string(++fresh_);
    scope.emplace_back(name, arity);
    Formula body = node(scope, depth, budget, cfg);
    scope.pop_back();
    return Formula::quantified(coin() ? Quantifier::Exists : Quantifier::Forall, name, arity, std::move(body));
  }
  if (depth == 0 || coin(0.2)) return atom(scope, depth, cfg.nested_args);
  switch (below(5)) {
    case 0: return Formula::negate(node(scope, depth - 1, budget, cfg));
    case 1:
    case 2: {
      Formula l = node(scope, depth - 1, budget, cfg);
      return Formula::conj(std::move(l), node(scope, depth - 1, budget, cfg));
    }
    default: {
      Formula l = node(scope, depth - 1, budget, cfg);
      return Formula::disj(std::move(l), node(scope, depth - 1, budget, cfg));
    }
  }
}

Formula FormulaGen::over(const std::vector<Symbol>& free, const GenConfig& cfg) {
  std::vector<Symbol> scope = free;
  unsigned budget = static_cast<unsigned>(below(cfg.max_quantifiers + 1));
  if (!cfg.prenex_only && coin(0.4)) return node(scope, cfg.max_depth, budget, cfg);
  std::vector<std::pair<Quantifier, Symbol>> prefix;
  for (unsigned i = 0; i < budget; ++i) {
    const unsigned arity = static_cast<unsigned>(below(cfg.max_arity + 1));
    Symbol s{(arity == 0 ? "p" : "f") + std::to_string(++fresh_), arity};
    prefix.emplace_back(coin() ? Quantifier::Exists : Quantifier::Forall, s);
    scope.push_back(s);
  }
  Formula f = matrix(scope, cfg.max_depth, cfg.nested_args);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    f = Formula::quantified(it->first, it->second.first, it->second.second, std::move(f));
  return f;
}

Formula FormulaGen::closed(const GenConfig& cfg) { return over({}, cfg); }

std::vector<std::vector<Formula>> FormulaGen::clausal(const std::vector<Symbol>& scope, unsigned groups,
                                                      unsigned width) {
  std::vector<std::vector<Formula>> out(groups);
  for (auto& g : out) {
    const std::size_t w = 1 + below(width);
    for (std::size_t i = 0; i < w; ++i) g.push_back(literal(scope));
  }
  return out;
}

std::string RawDqbf::to_dqdimacs() const {
  std::string s = "c generated\np cnf " + std::to_string(num_vars) + " " + std::to_string(clauses.size()) + "\n";
  if (!universals.empty()) {
    s += "a";
    for (int u : universals) s += " " + std::to_string(u);
    s += " 0\n";
  }
  for (const auto& [v, deps] : existentials) {
    s += "d " + std::to_string(v);
    for (int d : deps) s += " " + std::to_string(d);
    s += " 0\n";
  }
  for (const auto& c : clauses) {
    for (int l : c) s += std::to_string(l) + " ";
    s += "0\n";
  }
  return s;
}

RawDqbf random_dqbf(FormulaGen& gen, int max_universals, int max_existentials, int max_deps) {
  RawDqbf d;
  const int nu = static_cast<int>(gen.below(static_cast<std::size_t>(max_universals) + 1));
  const int ne = static_cast<int>(gen.below(static_cast<std::size_t>(max_existentials) + 1));
  d.num_vars = nu + ne;
  for (int u = 1; u <= nu; ++u) d.universals.push_back(u);
  for (int e = nu + 1; e <= nu + ne; ++e) {
    std::vector<int> pool = d.universals;
    std::shuffle(pool.begin(), pool.end(), gen.rng());
    const std::size_t k = std::min<std::size_t>(pool.size(), gen.below(static_cast<std::size_t>(max_deps) + 1));
    std::vector<int> deps(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(deps.begin(), deps.end());
    d.existentials.emplace_back(e, deps);
  }
  if (d.num_vars == 0) return d;
  const std::size_t nc = 1 + gen.below(5);
  for (std::size_t c = 0; c < nc; ++c) {
    std::vector<int> clause;
    const std::size_t w = 1 + gen.below(3);
    for (std::size_t i = 0; i < w; ++i) {
      const int v = 1 + static_cast<int>(gen.below(static_cast<std::size_t>(d.num_vars)));
      clause.push_back(gen.coin() ? v : -v);
    }
    d.clauses.push_back(clause);
  }
  return d;
}

bool dqbf_true_by_skolem(const RawDqbf& d) {
  const std::size_t ne = d.existentials.size();
  std::vector<std::uint64_t> table_count(ne);
  for (std::size_t i = 0; i < ne; ++i) table_count[i] = std::uint64_t{1} << (1u << d.existentials[i].second.size());
  std::vector<std::uint64_t> table(ne, 0);
  std::map<int, std::size_t> upos;
  for (std::size_t k = 0; k < d.universals.size(); ++k) upos[d.universals[k]] = k;
  for (;;) {
    bool all = true;
    for (std::uint64_t ua = 0; ua < (std::uint64_t{1} << d.universals.size()) && all; ++ua) {
      std::map<int, bool> val;
      for (std::size_t k = 0; k < d.universals.size(); ++k) val[d.universals[k]] = (ua >> k) & 1;
      for (std::size_t i = 0; i < ne; ++i) {
        // Dependency tuple, first dependency most significant.
        std::uint64_t idx = 0;
        for (int dep : d.existentials[i].second) idx = (idx << 1) | (val[dep] ? 1 : 0);
        val[d.existentials[i].first] = (table[i] >> idx) & 1;
      }
      for (const auto& c : d.clauses) {
        bool sat = false;
        for (int l : c) sat = sat || (val[std::abs(l)] == (l > 0));
        if (!sat) {
          all = false;
          break;
        }
      }
    }
    if (all) return true;
    std::size_t i = 0;
    while (i < ne && ++table[i] == table_count[i]) table[i++] = 0;
    if (i == ne) return false;
  }
}

}  // namespace qbsf::test
