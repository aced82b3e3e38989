#include "qbsf/semantics.hpp"

#include <deque>
#include <memory>
#include <optional>
#include <unordered_map>

#include "qbsf/clausal.hpp"
#include "qbsf/clause_search.hpp"
#include "qbsf/error.hpp"

namespace qbsf {

namespace {

// Proposition blocks shorter than this are enumerated even in pruned mode.
constexpr std::size_t kSearchBlockThreshold = 6;

struct Scope {
  std::string name;
  unsigned arity;
};

void collect_free(const Formula& f, std::vector<Scope>& scope, SymbolArities& out,
                  bool check_bound) {
  switch (f.kind()) {
    case Kind::Const:
      return;
    case Kind::App: {
      const auto& name = f.symbol();
      const unsigned n = f.arity();
      bool bound = false;
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->name == name) {
          bound = true;
          if (check_bound && it->arity != n)
            fail(ErrorCode::ArityMismatch, "'" + name + "' bound with arity " +
                                               std::to_string(it->arity) + " but applied to " +
                                               std::to_string(n) + " arguments");
          break;
        }
      }
      if (!bound) {
        auto [it, inserted] = out.emplace(name, n);
        if (!inserted && it->second != n)
          fail(ErrorCode::InconsistentArity, "free symbol '" + name + "' used with arities " +
                                                 std::to_string(it->second) + " and " +
                                                 std::to_string(n));
      }
      for (const auto& a : f.args()) collect_free(a, scope, out, check_bound);
      return;
    }
    case Kind::Exists:
    case Kind::Forall:
      scope.push_back({f.symbol(), f.arity()});
      collect_free(f.body(), scope, out, check_bound);
      scope.pop_back();
      return;
    default:
      for (const auto& c : f.children()) collect_free(c, scope, out, check_bound);
      return;
  }
}

// ---------------------------------------------------------------------------
// Compiled evaluator. Every symbol occurrence is resolved to a slot; free
// symbols take the first slots, each binder gets its own.

struct ENode {
  Kind kind = Kind::Const;
  bool value = false;
  std::uint32_t slot = 0;
  unsigned arity = 0;
  std::vector<std::uint32_t> kids;
  // Clause search for a proposition block starting at this binder.
  std::shared_ptr<ClauseSearch> search;
  bool search_negated = false;
};

class Evaluator {
 public:
  Evaluator(const EvalLimits& limits, EvalMode mode) : limits_(limits), mode_(mode) {}

  /// Free symbols get slots in map order.
  void declare_free(const SymbolArities& free) {
    for (const auto& [name, arity] : free) {
      free_slots_[name] = static_cast<std::uint32_t>(slots_.size());
      slots_.emplace_back(arity);
    }
  }

  std::uint32_t compile(const Formula& f) {
    std::vector<std::pair<std::string, std::uint32_t>> env;
    return compile(f, env);
  }

  void bind_free(const Interpretation& interp) {
    for (const auto& [name, slot] : free_slots_) {
      const TruthTable& t = interp.at(name);
      if (t.arity() != slots_[slot].arity())
        fail(ErrorCode::ArityMismatch, "interpretation of '" + name + "' has arity " +
                                           std::to_string(t.arity()) + ", formula uses " +
                                           std::to_string(slots_[slot].arity()));
      slots_[slot] = t;
    }
  }

  void set_free(const std::string& name, const TruthTable& t) { slots_[free_slots_.at(name)] = t; }

  bool run(std::uint32_t root) { return eval(root); }

  std::uint64_t& steps() { return steps_; }

 private:
  // `chain_tried`: the parent binder is a proposition binder of the same
  // quantifier whose block attempt failed, so this suffix fails too.
  std::uint32_t compile(const Formula& f, std::vector<std::pair<std::string, std::uint32_t>>& env,
                        bool chain_tried = false) {
    ENode n;
    n.kind = f.kind();
    switch (f.kind()) {
      case Kind::Const:
        n.value = f.value();
        break;
      case Kind::App:
        n.slot = resolve(f.symbol(), env);
        n.arity = f.arity();
        for (const auto& a : f.args()) n.kids.push_back(compile(a, env));
        break;
      case Kind::Not:
      case Kind::And:
      case Kind::Or:
        for (const auto& c : f.children()) n.kids.push_back(compile(c, env));
        break;
      case Kind::Exists:
      case Kind::Forall: {
        if (f.arity() > limits_.max_arity)
          fail(ErrorCode::LimitExceeded, "quantified arity " + std::to_string(f.arity()) +
                                             " exceeds bound " +
                                             std::to_string(limits_.max_arity));
        n.arity = f.arity();
        n.slot = static_cast<std::uint32_t>(slots_.size());
        slots_.emplace_back(f.arity());
        env.emplace_back(f.symbol(), n.slot);
        const bool attempt = mode_ == EvalMode::Pruned && f.arity() == 0 && !chain_tried;
        if (attempt) try_block(f, n, env);
        if (!n.search) {
          const Formula& body = f.body();
          const bool same_chain = (attempt || chain_tried) && body.is_quantifier() &&
                                  body.quantifier() == f.quantifier() && body.arity() == 0;
          n.kids.push_back(compile(body, env, same_chain));
        }
        env.pop_back();
        break;
      }
    }
    nodes_.push_back(std::move(n));
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  std::uint32_t resolve(const std::string& name,
                        const std::vector<std::pair<std::string, std::uint32_t>>& env) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == name) return it->second;
    auto it = free_slots_.find(name);
    if (it == free_slots_.end()) fail(ErrorCode::UnboundSymbol, "no binding for '" + name + "'");
    return it->second;
  }

  // Builds a clause search for `exists x1..xk CNF` or `forall x1..xk DNF`.
  // Called with the binder for `f` already pushed on `env`.
  void try_block(const Formula& f, ENode& n,
                 std::vector<std::pair<std::string, std::uint32_t>>& env) {
    const Quantifier q = f.quantifier();
    std::vector<std::string> names{f.symbol()};
    Formula matrix = f.body();
    while (matrix.is_quantifier() && matrix.quantifier() == q && matrix.arity() == 0) {
      names.push_back(matrix.symbol());
      matrix = matrix.body();
    }
    if (names.size() < kSearchBlockThreshold) return;
    ClausalForm form = q == Quantifier::Exists ? as_cnf(matrix) : as_dnf(matrix);
    if (!form.ok) return;

    // Inner binders of the block resolve to fresh slots of their own; the
    // search does not read those slots, so only name -> variable matters.
    // Later binders shadow earlier ones.
    std::unordered_map<std::string, std::uint32_t> var_of;
    for (std::uint32_t i = 0; i < names.size(); ++i) var_of[names[i]] = i;

    auto env_outer = env;
    env_outer.pop_back();  // the block's own first binder
    std::vector<SearchAtom> atoms;
    std::vector<SearchClause> clauses;
    auto arg_of = [&](const Formula& a) {
      SearchArg arg;
      if (a.is_const()) {
        arg.kind = SearchArg::Kind::Const;
        arg.value = a.value();
      } else if (auto it = var_of.find(a.symbol()); it != var_of.end()) {
        arg.kind = SearchArg::Kind::Var;
        arg.var = it->second;
      } else {
        arg.kind = SearchArg::Kind::External;
        arg.external = &slots_[resolve(a.symbol(), env_outer)];
      }
      return arg;
    };
    for (const auto& group : form.groups) {
      SearchClause clause;
      for (const auto& lit_formula : group) {
        bool negated = lit_formula.kind() == Kind::Not;
        const Formula& atom = negated ? lit_formula.operand() : lit_formula;
        // forall-DNF is refuted by satisfying the negated terms as clauses.
        if (q == Quantifier::Forall) negated = !negated;
        SearchLiteral lit;
        lit.negated = negated;
        if (atom.is_const()) {
          lit.kind = SearchLiteral::Kind::Const;
          lit.index = atom.value() ? 1 : 0;
        } else if (atom.is_proposition() && var_of.count(atom.symbol())) {
          lit.kind = SearchLiteral::Kind::Var;
          lit.index = var_of[atom.symbol()];
        } else {
          if (var_of.count(atom.symbol()))
            fail(ErrorCode::ArityMismatch, "proposition '" + atom.symbol() + "' applied to arguments");
          SearchAtom sa;
          sa.table = &slots_[resolve(atom.symbol(), env_outer)];
          for (const auto& a : atom.args()) sa.args.push_back(arg_of(a));
          lit.kind = SearchLiteral::Kind::Atom;
          lit.index = static_cast<std::uint32_t>(atoms.size());
          atoms.push_back(std::move(sa));
        }
        clause.push_back(lit);
      }
      clauses.push_back(std::move(clause));
    }
    n.search = std::make_shared<ClauseSearch>(static_cast<std::uint32_t>(names.size()),
                                              std::move(atoms), std::move(clauses));
    n.search_negated = q == Quantifier::Forall;
  }

  void tick() {
    if (++steps_ > limits_.max_steps)
      fail(ErrorCode::LimitExceeded, "evaluation step budget of " +
                                         std::to_string(limits_.max_steps) + " exhausted");
  }

  bool eval(std::uint32_t idx) {
    const ENode& n = nodes_[idx];
    switch (n.kind) {
      case Kind::Const:
        return n.value;
      case Kind::App: {
        std::uint64_t index = 0;
        for (auto k : n.kids) index = (index << 1) | (eval(k) ? 1u : 0u);
        return slots_[n.slot].at(index);
      }
      case Kind::Not:
        return !eval(n.kids[0]);
      case Kind::And: {
        if (mode_ == EvalMode::Exhaustive) {
          const bool a = eval(n.kids[0]);
          const bool b = eval(n.kids[1]);
          return a && b;
        }
        return eval(n.kids[0]) && eval(n.kids[1]);
      }
      case Kind::Or: {
        if (mode_ == EvalMode::Exhaustive) {
          const bool a = eval(n.kids[0]);
          const bool b = eval(n.kids[1]);
          return a || b;
        }
        return eval(n.kids[0]) || eval(n.kids[1]);
      }
      case Kind::Exists:
      case Kind::Forall: {
        if (n.search) {
          const bool sat = n.search->satisfiable(steps_, limits_.max_steps);
          return n.search_negated ? !sat : sat;
        }
        const bool is_exists = n.kind == Kind::Exists;
        const std::uint64_t count = TruthTable::count(n.arity);
        bool result = !is_exists;
        const TruthTable saved = slots_[n.slot];
        for (std::uint64_t c = 0; c < count; ++c) {
          tick();
          slots_[n.slot] = TruthTable::from_candidate(n.arity, c);
          const bool v = eval(n.kids[0]);
          if (is_exists && v) {
            result = true;
            if (mode_ == EvalMode::Pruned) break;
          }
          if (!is_exists && !v) {
            result = false;
            if (mode_ == EvalMode::Pruned) break;
          }
        }
        slots_[n.slot] = saved;
        return result;
      }
    }
    return false;
  }

  EvalLimits limits_;
  EvalMode mode_;
  std::deque<TruthTable> slots_;
  std::map<std::string, std::uint32_t> free_slots_;
  std::vector<ENode> nodes_;
  std::uint64_t steps_ = 0;
};

Formula rename(const Formula& f, std::vector<std::pair<std::string, std::string>>& env,
               const std::set<std::string>& conflicting, std::set<std::string>& used,
               std::map<std::string, unsigned>& counters) {
  switch (f.kind()) {
    case Kind::Const:
      return f;
    case Kind::App: {
      std::string name = f.symbol();
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == name) {
          name = it->second;
          break;
        }
      std::vector<Formula> args;
      for (const auto& a : f.args()) args.push_back(rename(a, env, conflicting, used, counters));
      return Formula::app(std::move(name), std::move(args));
    }
    case Kind::Exists:
    case Kind::Forall: {
      std::string target = f.symbol();
      if (conflicting.count(target)) {
        auto& k = counters[target];
        do {
          target = f.symbol() + std::to_string(++k);
        } while (used.count(target));
        used.insert(target);
      }
      env.emplace_back(f.symbol(), target);
      Formula body = rename(f.body(), env, conflicting, used, counters);
      env.pop_back();
      return Formula::quantified(f.quantifier(), target, f.arity(), std::move(body));
    }
    default: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(rename(c, env, conflicting, used, counters));
      return f.with_children(std::move(kids));
    }
  }
}

void count_binders(const Formula& f, std::map<std::string, unsigned>& counts) {
  if (f.is_quantifier()) ++counts[f.symbol()];
  for (const auto& c : f.children()) count_binders(c, counts);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (f.is_app() || f.is_quantifier()) out.insert(f.symbol());
  for (const auto& c : f.children()) collect_names(c, out);
}

}  // namespace

SymbolArities free_symbols(const Formula& f) {
  std::vector<Scope> scope;
  SymbolArities out;
  collect_free(f, scope, out, false);
  return out;
}

void check_well_formed(const Formula& f) {
  std::vector<Scope> scope;
  SymbolArities out;
  collect_free(f, scope, out, true);
}

bool evaluate(const Formula& f, const Interpretation& interp, const EvalLimits& limits,
              EvalMode mode) {
  check_well_formed(f);
  const auto free = free_symbols(f);
  Evaluator ev(limits, mode);
  ev.declare_free(free);
  const auto root = ev.compile(f);
  ev.bind_free(interp);
  return ev.run(root);
}

void for_each_interpretation(const SymbolArities& symbols, const EvalLimits& limits,
                             const std::function<bool(const Interpretation&)>& visit) {
  std::vector<std::pair<std::string, unsigned>> syms(symbols.begin(), symbols.end());
  std::uint64_t total = 1;
  for (const auto& [name, arity] : syms) {
    if (arity > limits.max_arity)
      fail(ErrorCode::LimitExceeded, "free symbol '" + name + "' has arity " +
                                         std::to_string(arity) + " above bound " +
                                         std::to_string(limits.max_arity));
    const std::uint64_t c = TruthTable::count(arity);
    if (c > limits.max_steps || total > limits.max_steps / c)
      fail(ErrorCode::LimitExceeded, "too many interpretations to enumerate");
    total *= c;
  }
  Interpretation interp;
  for (const auto& [name, arity] : syms) interp.bind(name, TruthTable(arity));
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == syms.size()) return visit(interp);
    const auto& [name, arity] = syms[i];
    const std::uint64_t count = TruthTable::count(arity);
    for (std::uint64_t c = 0; c < count; ++c) {
      interp.bind(name, TruthTable::from_candidate(arity, c));
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  rec(0);
}

namespace {

// Shared driver for equivalent/entails: compiles both sides once over the
// union of their free symbols.
bool compare_all(const Formula& a, const Formula& b, const EvalLimits& limits, bool both_ways) {
  check_well_formed(a);
  check_well_formed(b);
  SymbolArities all = free_symbols(a);
  for (const auto& [name, arity] : free_symbols(b)) {
    auto [it, inserted] = all.emplace(name, arity);
    if (!inserted && it->second != arity)
      fail(ErrorCode::InconsistentArity, "'" + name + "' has different arities on the two sides");
  }
  Evaluator ev(limits, EvalMode::Pruned);
  ev.declare_free(all);
  const auto ra = ev.compile(a);
  const auto rb = ev.compile(b);
  bool holds = true;
  for_each_interpretation(all, limits, [&](const Interpretation& interp) {
    if (++ev.steps() > limits.max_steps)
      fail(ErrorCode::LimitExceeded, "equivalence check step budget exhausted");
    ev.bind_free(interp);
    const bool va = ev.run(ra);
    const bool vb = ev.run(rb);
    if (both_ways ? va != vb : (va && !vb)) {
      holds = false;
      return false;
    }
    return true;
  });
  return holds;
}

}  // namespace

bool equivalent(const Formula& a, const Formula& b, const EvalLimits& limits) {
  return compare_all(a, b, limits, true);
}

bool entails(const Formula& a, const Formula& b, const EvalLimits& limits) {
  return compare_all(a, b, limits, false);
}

const Formula& subformula_at(const Formula& f, const Position& pos) {
  const Formula* cur = &f;
  for (auto i : pos) {
    if (i >= cur->children().size())
      fail(ErrorCode::InvalidPath, "position leaves the formula");
    cur = &cur->children()[i];
  }
  return *cur;
}

Formula substitute(const Formula& f, const Position& pos, const Formula& replacement) {
  const Formula& target = subformula_at(f, pos);
  // Binders strictly above the position.
  std::vector<std::string> above;
  const Formula* cur = &f;
  for (auto i : pos) {
    if (cur->is_quantifier()) above.push_back(cur->symbol());
    cur = &cur->children()[i];
  }
  const auto old_free = free_symbols(target);
  for (const auto& [name, arity] : free_symbols(replacement)) {
    if (old_free.count(name)) continue;
    for (const auto& b : above)
      if (b == name)
        fail(ErrorCode::CaptureDetected, "free symbol '" + name +
                                             "' of the replacement would be captured");
  }
  std::function<Formula(const Formula&, std::size_t)> rebuild =
      [&](const Formula& node, std::size_t depth) -> Formula {
    if (depth == pos.size()) return replacement;
    std::vector<Formula> kids(node.children().begin(), node.children().end());
    kids[pos[depth]] = rebuild(kids[pos[depth]], depth + 1);
    return node.with_children(std::move(kids));
  };
  Formula out = rebuild(f, 0);
  check_well_formed(out);
  return out;
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  std::string name = base;
  for (unsigned k = 1; used.count(name); ++k) name = base + std::to_string(k);
  used.insert(name);
  return name;
}

Formula alpha_rename(const Formula& f) {
  std::map<std::string, unsigned> counts;
  count_binders(f, counts);
  const auto free = free_symbols(f);
  std::set<std::string> conflicting;
  for (const auto& [name, c] : counts)
    if (c > 1 || free.count(name)) conflicting.insert(name);
  if (conflicting.empty()) return f;
  std::set<std::string> used = all_names(f);
  std::map<std::string, unsigned> counters;
  std::vector<std::pair<std::string, std::string>> env;
  return rename(f, env, conflicting, used, counters);
}

}  // namespace qbsf
