#include <algorithm>
#include <set>
#include <tuple>

#include "qbsf/error.hpp"
#include "qbsf/machine.hpp"
#include "qbsf/transforms.hpp"

namespace qbsf {

namespace {

// Configurations explored before giving up on reachability pruning.
constexpr std::size_t kExploreCap = 200000;

// A literal that may already be decided.
struct Lit {
  bool is_const = false;
  bool value = false;
  Formula f;

  static Lit constant(bool v) { return {true, v, {}}; }
  static Lit of(Formula f) { return {false, false, std::move(f)}; }
  Lit operator~() const {
    if (is_const) return constant(!value);
    if (f.kind() == Kind::Not) return of(f.operand());
    return of(Formula::negate(f));
  }
};

class Cnf {
 public:
  void add(std::initializer_list<Lit> lits) { add(std::vector<Lit>(lits)); }

  void add(const std::vector<Lit>& lits) {
    std::vector<Formula> kept;
    for (const auto& l : lits) {
      if (l.is_const) {
        if (l.value) return;
        continue;
      }
      kept.push_back(l.f);
    }
    clauses_.push_back(kept.empty() ? Formula::constant(false) : Formula::disj_all(kept));
  }

  Formula formula() const { return Formula::conj_all(clauses_); }

 private:
  std::vector<Formula> clauses_;
};

using Key = std::tuple<std::size_t, std::string, std::size_t, std::string>;  // t, q, p, read

class Encoder {
 public:
  Encoder(const OracleMachine& m, std::string_view input) : m_(m), input_(input) {
    validate(m_);
    for (std::size_t k = 0; k < m_.alphabet.size(); ++k) symbol_index_[m_.alphabet[k]] = k;
    for (std::size_t k = 0; k < m_.states.size(); ++k) state_index_[m_.states[k]] = k;
  }

  Formula encode(Quantifier first) {
    const Configuration init = initial_configuration(m_, input_);
    explore(init);
    const std::size_t T = m_.time_bound;
    const std::size_t L = m_.tape_length();
    Cnf cnf;

    // Initial configuration.
    cnf.add({state(0, m_.start)});
    cnf.add({head(0, 0)});
    for (std::size_t p = 0; p < L; ++p) cnf.add({tape(0, p, init.tape[p])});

    for (std::size_t t = 0; t <= T; ++t) exactly_one_constraints(cnf, t);

    for (std::size_t t = 0; t < T; ++t) {
      frame(cnf, t);
      halting(cnf, t);
      for (const auto& q : m_.states) {
        if (q == m_.accept || q == m_.reject || q == m_.query) continue;
        for (std::size_t p = 0; p < L; ++p)
          for (const auto& a : m_.alphabet)
            if (reachable(t, q, p, a)) step(cnf, t, q, p, a);
      }
    }
    cnf.add({state(T, m_.accept)});

    Formula out = cnf.formula();
    for (std::size_t t = T + 1; t-- > 0;) {
      std::vector<std::string> names;
      for (std::size_t p = 0; p < L; ++p) {
        if (window_cell(p)) {
          names.push_back(z_name(t, p));
        } else {
          for (std::size_t k = 0; k < m_.alphabet.size(); ++k) names.push_back(a_name(t, p, k));
        }
      }
      for (std::size_t p = 0; p < L; ++p) names.push_back(h_name(t, p));
      for (std::size_t k = 0; k < m_.states.size(); ++k) names.push_back(s_name(t, k));
      for (auto it = names.rbegin(); it != names.rend(); ++it)
        out = Formula::exists(*it, 0, std::move(out));
    }
    for (std::size_t i = m_.num_oracles; i >= 1; --i) {
      const Quantifier q = (i % 2 == 1) ? first : dual(first);
      out = Formula::quantified(q, oracle_symbol(i), static_cast<unsigned>(m_.window.query_bits),
                                std::move(out));
    }
    return out;
  }

 private:
  bool window_cell(std::size_t p) const {
    const auto& w = m_.window;
    return p >= w.offset && p < w.offset + w.index_bits + w.query_bits;
  }

  static std::string a_name(std::size_t t, std::size_t p, std::size_t k) {
    return "a" + std::to_string(t) + "_" + std::to_string(p) + "_" + std::to_string(k);
  }
  static std::string z_name(std::size_t t, std::size_t p) {
    return "z" + std::to_string(t) + "_" + std::to_string(p);
  }
  static std::string h_name(std::size_t t, std::size_t p) {
    return "h" + std::to_string(t) + "_" + std::to_string(p);
  }
  static std::string s_name(std::size_t t, std::size_t k) {
    return "s" + std::to_string(t) + "_" + std::to_string(k);
  }

  Lit state(std::size_t t, const std::string& q) const {
    return Lit::of(Formula::var(s_name(t, state_index_.at(q))));
  }
  Lit head(std::size_t t, std::size_t p) const { return Lit::of(Formula::var(h_name(t, p))); }

  // "cell p holds symbol a at time t"; window cells are one bit each.
  Lit tape(std::size_t t, std::size_t p, const std::string& a) const {
    if (window_cell(p)) {
      const Lit z = Lit::of(Formula::var(z_name(t, p)));
      if (a == "1") return z;
      if (a == "0") return ~z;
      return Lit::constant(false);
    }
    return Lit::of(Formula::var(a_name(t, p, symbol_index_.at(a))));
  }

  static void exactly_one(Cnf& cnf, const std::vector<Lit>& lits) {
    cnf.add(lits);
    for (std::size_t i = 0; i < lits.size(); ++i)
      for (std::size_t j = i + 1; j < lits.size(); ++j) cnf.add({~lits[i], ~lits[j]});
  }

  void exactly_one_constraints(Cnf& cnf, std::size_t t) const {
    std::vector<Lit> states;
    for (const auto& q : m_.states) states.push_back(state(t, q));
    exactly_one(cnf, states);
    std::vector<Lit> heads;
    for (std::size_t p = 0; p < m_.tape_length(); ++p) heads.push_back(head(t, p));
    exactly_one(cnf, heads);
    for (std::size_t p = 0; p < m_.tape_length(); ++p) {
      if (window_cell(p)) continue;
      std::vector<Lit> cell;
      for (const auto& a : m_.alphabet) cell.push_back(tape(t, p, a));
      exactly_one(cnf, cell);
    }
  }

  // Cells away from the head keep their content.
  void frame(Cnf& cnf, std::size_t t) const {
    for (std::size_t p = 0; p < m_.tape_length(); ++p) {
      if (window_cell(p)) {
        const Lit now = tape(t, p, "1"), next = tape(t + 1, p, "1");
        cnf.add({head(t, p), ~now, next});
        cnf.add({head(t, p), now, ~next});
      } else {
        for (const auto& a : m_.alphabet) cnf.add({head(t, p), ~tape(t, p, a), tape(t + 1, p, a)});
      }
    }
  }

  void halting(Cnf& cnf, std::size_t t) const {
    for (const auto* q : {&m_.accept, &m_.reject}) {
      cnf.add({~state(t, *q), state(t + 1, *q)});
      for (std::size_t p = 0; p < m_.tape_length(); ++p)
        cnf.add({~state(t, *q), ~head(t, p), head(t + 1, p)});
    }
  }

  // "index cells spell v at time t" as a negated conjunction, i.e. the
  // literals of its negation.
  std::vector<Lit> index_differs(std::size_t t, std::size_t v) const {
    std::vector<Lit> out;
    const std::size_t r = m_.window.index_bits;
    for (std::size_t j = 0; j < r; ++j) {
      const bool bit = (v >> (r - 1 - j)) & 1;
      const Lit z = tape(t, m_.window.offset + j, "1");
      out.push_back(bit ? ~z : z);
    }
    return out;
  }

  Lit oracle_atom(std::size_t t, std::size_t i) const {
    std::vector<Formula> args;
    const auto& w = m_.window;
    for (std::size_t j = 0; j < w.query_bits; ++j)
      args.push_back(Formula::var(z_name(t, w.offset + w.index_bits + j)));
    return Lit::of(Formula::app(oracle_symbol(i), std::move(args)));
  }

  void step(Cnf& cnf, std::size_t t, const std::string& q, std::size_t p, const std::string& a) {
    const Transition& tr = m_.transitions.at({q, a});
    const std::vector<Lit> guard{~state(t, q), ~head(t, p), ~tape(t, p, a)};
    auto with_guard = [&](std::vector<Lit> extra) {
      std::vector<Lit> c = guard;
      c.insert(c.end(), extra.begin(), extra.end());
      cnf.add(c);
    };
    std::size_t np = p;
    if (tr.move == Move::Left && p > 0) --np;
    if (tr.move == Move::Right && p + 1 < m_.tape_length()) ++np;
    with_guard({tape(t + 1, p, tr.write)});
    with_guard({head(t + 1, np)});
    if (tr.next != m_.query) {
      with_guard({state(t + 1, tr.next)});
      return;
    }
    const std::size_t l = m_.num_oracles;
    for (int positive = 1; positive >= 0; --positive) {
      for (std::size_t i = 1; i <= l; ++i) {
        std::vector<Lit> c = index_differs(t + 1, i);
        const Lit atom = oracle_atom(t + 1, i);
        c.push_back(positive ? ~atom : atom);
        c.push_back(state(t + 1, positive ? m_.answer_pos : m_.answer_neg));
        with_guard(std::move(c));
      }
    }
    const std::size_t values = std::size_t{1} << m_.window.index_bits;
    for (std::size_t v = 0; v < values; ++v)
      if (v < 1 || v > l) with_guard(index_differs(t + 1, v));
  }

  bool reachable(std::size_t t, const std::string& q, std::size_t p, const std::string& a) const {
    return all_reachable_ || reach_.count({t, q, p, a});
  }

  // Every (t, state, head, read symbol) on some run, over both answers to
  // every query.
  void explore(const Configuration& init) {
    std::vector<std::pair<std::size_t, Configuration>> stack{{0, init}};
    std::set<std::pair<std::size_t, std::vector<std::string>>> seen;
    std::size_t visited = 0;
    const auto& w = m_.window;
    while (!stack.empty()) {
      auto [t, c] = std::move(stack.back());
      stack.pop_back();
      if (t >= m_.time_bound || c.state == m_.accept || c.state == m_.reject) continue;
      std::vector<std::string> key = c.tape;
      key.push_back(c.state);
      key.push_back(std::to_string(c.head));
      if (!seen.insert({t, std::move(key)}).second) continue;
      if (++visited > kExploreCap) {
        all_reachable_ = true;
        return;
      }
      const std::string& read = c.tape[c.head];
      reach_.insert({t, c.state, c.head, read});
      const Transition& tr = m_.transitions.at({c.state, read});
      if (window_cell(c.head) && tr.write != "0" && tr.write != "1") continue;
      Configuration next = c;
      next.tape[c.head] = tr.write;
      if (tr.move == Move::Left && next.head > 0) --next.head;
      if (tr.move == Move::Right && next.head + 1 < next.tape.size()) ++next.head;
      next.state = tr.next;
      if (tr.next != m_.query) {
        stack.emplace_back(t + 1, std::move(next));
        continue;
      }
      std::size_t index = 0;
      for (std::size_t j = 0; j < w.index_bits; ++j)
        index = (index << 1) | (next.tape[w.offset + j] == "1" ? 1u : 0u);
      if (index < 1 || index > m_.num_oracles) continue;
      for (const auto* answer : {&m_.answer_pos, &m_.answer_neg}) {
        Configuration branch = next;
        branch.state = *answer;
        stack.emplace_back(t + 1, std::move(branch));
      }
    }
  }

  const OracleMachine& m_;
  std::string input_;
  std::map<std::string, std::size_t> symbol_index_;
  std::map<std::string, std::size_t> state_index_;
  std::set<Key> reach_;
  bool all_reachable_ = false;
};

}  // namespace

Formula encode_run(const OracleMachine& m, std::string_view input, Quantifier first) {
  return Encoder(m, input).encode(first);
}

Formula encode_run_dnf(const OracleMachine& m, std::string_view input, Quantifier first) {
  return dualize(encode_run(complement(m), input, dual(first)));
}

}  // namespace qbsf
