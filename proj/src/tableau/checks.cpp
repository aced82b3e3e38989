#include <algorithm>
#include <bit>
#include <map>
#include <optional>

#include "qbsf/error.hpp"
#include "qbsf/tableau.hpp"

namespace qbsf {

namespace {

unsigned bits_for(std::size_t values) {
  return std::max(1u, static_cast<unsigned>(std::bit_width(values > 0 ? values - 1 : 0)));
}

// One innermost branch of a check; at most one membership test inside.
class Branch {
 public:
  explicit Branch(MembershipAudit* audit) : audit_(audit) {
    if (audit_) ++audit_->branches;
  }
  ~Branch() {
    if (audit_ && tests_ > 1) ++audit_->violations;
  }
  Branch(const Branch&) = delete;
  Branch& operator=(const Branch&) = delete;

  bool member(const TableauEncoding& a, std::uint64_t word) {
    ++tests_;
    if (audit_) ++audit_->queries;
    return a.contains(word);
  }

 private:
  MembershipAudit* audit_;
  unsigned tests_ = 0;
};

void check_width(const TableauEncoding& a, const CellWidths& w) {
  if (a.width() != w.total())
    fail(ErrorCode::WidthMismatch, "encoding has width " + std::to_string(a.width()) +
                                       ", machine cells need " + std::to_string(w.total()));
}

// Symbols present at (t, p), one branch per candidate symbol.
std::vector<std::uint32_t> symbols_at(const AtmView& v, const CellWidths& w, const TableauEncoding& a,
                                      std::size_t t, std::size_t p, MembershipAudit* audit,
                                      bool states_only = false) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < v.num_symbols(); ++c) {
    if (states_only && !v.is_state(c)) continue;
    Branch b(audit);
    if (b.member(a, encode_cell({c, t, p}, w))) out.push_back(c);
  }
  return out;
}

}  // namespace

CellWidths CellWidths::of(const AtmView& v) {
  CellWidths w;
  w.num_symbols = v.num_symbols();
  w.n = v.n();
  w.symbol_bits = bits_for(w.num_symbols);
  w.time_bits = bits_for(w.n + 1);
  w.pos_bits = bits_for(2 * w.n + 2);
  if (w.total() > 24)
    fail(ErrorCode::OutOfRange, "cell words of width " + std::to_string(w.total()) + " are too wide");
  return w;
}

std::uint64_t encode_cell(const CellWord& c, const CellWidths& w) {
  if (c.symbol >= w.num_symbols || c.t > w.n || c.p > 2 * w.n + 1)
    fail(ErrorCode::OutOfRange, "cell (" + std::to_string(c.symbol) + ", " + std::to_string(c.t) +
                                    ", " + std::to_string(c.p) + ") out of range");
  return (std::uint64_t{c.symbol} << (w.time_bits + w.pos_bits)) |
         (std::uint64_t{c.t} << w.pos_bits) | c.p;
}

CellWord decode_cell(std::uint64_t word, const CellWidths& w) {
  if (word >> w.total())
    fail(ErrorCode::OutOfRange, "word " + std::to_string(word) + " wider than " + std::to_string(w.total()));
  CellWord c;
  c.p = word & ((std::uint64_t{1} << w.pos_bits) - 1);
  c.t = (word >> w.pos_bits) & ((std::uint64_t{1} << w.time_bits) - 1);
  c.symbol = static_cast<std::uint32_t>(word >> (w.pos_bits + w.time_bits));
  if (c.symbol >= w.num_symbols || c.t > w.n || c.p > 2 * w.n + 1)
    fail(ErrorCode::OutOfRange, "word " + std::to_string(word) + " encodes no cell");
  return c;
}

bool is_valid_cell(std::uint64_t word, const CellWidths& w) {
  if (word >> w.total()) return false;
  const std::uint64_t p = word & ((std::uint64_t{1} << w.pos_bits) - 1);
  const std::uint64_t t = (word >> w.pos_bits) & ((std::uint64_t{1} << w.time_bits) - 1);
  const std::uint64_t c = word >> (w.pos_bits + w.time_bits);
  return c < w.num_symbols && t <= w.n && p <= 2 * w.n + 1;
}

TableauEncoding::TableauEncoding(unsigned width) : width_(width), bits_(std::size_t{1} << width, 0) {}

std::size_t TableauEncoding::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::uint64_t> TableauEncoding::words() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t w = 0; w < bits_.size(); ++w)
    if (bits_[w]) out.push_back(w);
  return out;
}

TableauEncoding tableau_to_oracle(const Tableau& t, const CellWidths& w) {
  TableauEncoding a(w.total());
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t p = 0; p < t[r].size(); ++p) a.insert(encode_cell({t[r][p], r, p}, w));
  return a;
}

bool check_val(const AtmView& v, const TableauEncoding& a, MembershipAudit* audit) {
  const CellWidths w = CellWidths::of(v);
  check_width(a, w);
  // Only valid encodings.
  for (std::uint64_t word = 0; word < a.universe(); ++word) {
    if (is_valid_cell(word, w)) continue;
    Branch b(audit);
    if (b.member(a, word)) return false;
  }
  // Exactly one symbol per cell.
  const std::size_t n = v.n(), len = v.length();
  std::vector<TapeConfig> rows(n + 1, TapeConfig(len));
  for (std::size_t t = 0; t <= n; ++t)
    for (std::size_t p = 0; p < len; ++p) {
      const auto here = symbols_at(v, w, a, t, p, audit);
      if (here.size() != 1) return false;
      rows[t][p] = here[0];
    }
  // Exactly one state per row.
  for (const auto& row : rows)
    if (state_position(v, row) == len) return false;
  // Windows.
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t p = 1; p + 1 < len; ++p) {
      const std::uint32_t cells[6] = {rows[t][p - 1],     rows[t][p],     rows[t][p + 1],
                                      rows[t + 1][p - 1], rows[t + 1][p], rows[t + 1][p + 1]};
      if (!v.legal_window(p, AtmView::window_key(cells))) return false;
    }
  // One alternation type before step n.
  const StateType kind = v.type(rows[0][state_position(v, rows[0])]);
  for (std::size_t t = 1; t < n; ++t)
    if (v.type(rows[t][state_position(v, rows[t])]) != kind) return false;
  return true;
}

bool check_init1(const AtmView& v, const TableauEncoding& a, std::string_view input,
                 MembershipAudit* audit) {
  const CellWidths w = CellWidths::of(v);
  check_width(a, w);
  const TapeConfig init = initial_config(v, input);
  for (std::size_t p = 0; p < init.size(); ++p) {
    Branch b(audit);
    if (!b.member(a, encode_cell({init[p], 0, p}, w))) return false;
  }
  return true;
}

bool check_init_succ(const AtmView& v, const TableauEncoding& prev, const TableauEncoding& a,
                     MembershipAudit* audit) {
  const CellWidths w = CellWidths::of(v);
  check_width(prev, w);
  check_width(a, w);
  for (std::size_t p = 0; p < v.length(); ++p) {
    const auto first = symbols_at(v, w, a, 0, p, audit);
    const auto last = symbols_at(v, w, prev, v.n(), p, audit);
    if (first.size() != 1 || first != last) return false;
  }
  return true;
}

bool check_alt(const AtmView& v, const TableauEncoding& a, MembershipAudit* audit) {
  const CellWidths w = CellWidths::of(v);
  check_width(a, w);
  if (v.n() < 1) return false;
  std::vector<std::uint32_t> before, after;
  for (std::size_t p = 0; p < v.length(); ++p) {
    for (auto c : symbols_at(v, w, a, v.n() - 1, p, audit, true)) before.push_back(c);
    for (auto c : symbols_at(v, w, a, v.n(), p, audit, true)) after.push_back(c);
  }
  for (auto c : before)
    for (auto d : after)
      if (v.type(c) != v.type(d)) return true;
  return false;
}

bool check_alt_final(const AtmView& v, const TableauEncoding& a, MembershipAudit* audit) {
  const CellWidths w = CellWidths::of(v);
  check_width(a, w);
  for (std::size_t p = 0; p < v.length(); ++p)
    for (auto c : symbols_at(v, w, a, v.n(), p, audit, true))
      if (v.accepting(c)) return true;
  return false;
}

bool is_pure_tableau(const AtmView& v, const Tableau& t) {
  if (t.size() != v.n() + 1) return false;
  for (const auto& row : t) {
    if (row.size() != v.length()) return false;
    for (auto c : row)
      if (c >= v.num_symbols()) return false;
    if (state_position(v, row) + 1 >= row.size()) return false;
  }
  for (std::size_t r = 0; r + 1 < t.size(); ++r) {
    const auto next = successors(v, t[r]);
    if (std::find(next.begin(), next.end(), t[r + 1]) == next.end()) return false;
  }
  const StateType kind = v.type(t[0][state_position(v, t[0])]);
  for (std::size_t r = 1; r + 1 < t.size(); ++r)
    if (v.type(t[r][state_position(v, t[r])]) != kind) return false;
  return true;
}

std::optional<Tableau> oracle_to_tableau(const AtmView& v, const TableauEncoding& a) {
  const CellWidths w = CellWidths::of(v);
  check_width(a, w);
  Tableau t(v.n() + 1, TapeConfig(v.length()));
  std::vector<std::vector<int>> seen(v.n() + 1, std::vector<int>(v.length(), 0));
  for (std::uint64_t word : a.words()) {
    if (!is_valid_cell(word, w)) return std::nullopt;
    const CellWord c = decode_cell(word, w);
    if (seen[c.t][c.p]++) return std::nullopt;
    t[c.t][c.p] = c.symbol;
  }
  for (const auto& row : seen)
    for (int k : row)
      if (k != 1) return std::nullopt;
  return t;
}

Quantifier phase_quantifier(const AtmView& v, std::size_t i) {
  const Quantifier first = v.type(v.code(v.spec().start)) == StateType::Existential
                               ? Quantifier::Exists
                               : Quantifier::Forall;
  return i % 2 == 1 ? first : dual(first);
}

namespace {

// Val_i, Init_i, Alt_i for one oracle tuple, computed on demand.
class LevelPredicates {
 public:
  LevelPredicates(const AtmView& v, std::string_view input, const std::vector<TableauEncoding>& a)
      : v_(v), input_(input), a_(a), cache_(3 * a.size()) {
    if (a.size() != v.m())
      fail(ErrorCode::ArityMismatch, "expected " + std::to_string(v.m()) + " oracles, got " +
                                         std::to_string(a.size()));
  }

  // i is 1-based.
  bool val(std::size_t i) {
    return get(0, i, [&] { return check_val(v_, a_[i - 1]); });
  }
  bool init(std::size_t i) {
    return get(1, i, [&] {
      return i == 1 ? check_init1(v_, a_[0], input_) : check_init_succ(v_, a_[i - 2], a_[i - 1]);
    });
  }
  bool alt(std::size_t i) {
    return get(2, i, [&] {
      return i < v_.m() ? check_alt(v_, a_[i - 1]) : check_alt_final(v_, a_[i - 1]);
    });
  }

 private:
  template <class F>
  bool get(std::size_t which, std::size_t i, F&& f) {
    auto& slot = cache_[3 * (i - 1) + which];
    if (!slot) slot = f();
    return *slot;
  }

  const AtmView& v_;
  std::string_view input_;
  const std::vector<TableauEncoding>& a_;
  std::vector<std::optional<bool>> cache_;
};

template <class P>
bool v1_recursive(const AtmView& v, P& pred) {
  // V_{m+1} = 1, then fold outwards.
  bool inner = true;
  for (std::size_t i = v.m(); i >= 1; --i) {
    const bool guard = pred.val(i) && pred.init(i);
    if (phase_quantifier(v, i) == Quantifier::Exists)
      inner = guard && pred.alt(i) && inner;
    else
      inner = !guard || (pred.alt(i) && inner);
  }
  return inner;
}

template <class P>
bool v1_grouped(const AtmView& v, P& pred) {
  const std::size_t m = v.m();
  for (std::size_t i = 1; i <= m + 1; ++i) {
    if (i <= m && phase_quantifier(v, i) == Quantifier::Exists) continue;
    bool prefix = true;  // T_i
    for (std::size_t j = 1; j < i && prefix; ++j) prefix = pred.val(j) && pred.init(j) && pred.alt(j);
    if (!prefix) continue;
    if (i == m + 1) return true;  // F^d_{m+1} is empty
    if (!pred.val(i)) return true;   // d = 0
    if (!pred.init(i)) return true;  // d = 1
  }
  return false;
}

}  // namespace

bool eval_v1(const AtmView& v, std::string_view input, const std::vector<TableauEncoding>& oracles) {
  LevelPredicates pred(v, input, oracles);
  return v1_recursive(v, pred);
}

bool eval_v1_grouped(const AtmView& v, std::string_view input,
                     const std::vector<TableauEncoding>& oracles) {
  LevelPredicates pred(v, input, oracles);
  return v1_grouped(v, pred);
}

namespace {

// Predicate values over a fixed candidate list, indexed by candidate.
class CandidatePredicates {
 public:
  CandidatePredicates(const AtmView& v, std::string_view input, const std::vector<TableauEncoding>& c)
      : v_(v), c_(c), succ_(c.size() * c.size()) {
    for (const auto& a : c) {
      val_.push_back(check_val(v, a));
      init1_.push_back(check_init1(v, a, input));
      alt_.push_back(check_alt(v, a));
      final_.push_back(check_alt_final(v, a));
    }
  }

  struct Tuple {
    CandidatePredicates* self;
    const std::vector<std::size_t>* pick;

    bool val(std::size_t i) const { return self->val_[(*pick)[i - 1]]; }
    bool init(std::size_t i) const {
      if (i == 1) return self->init1_[(*pick)[0]];
      return self->succ((*pick)[i - 2], (*pick)[i - 1]);
    }
    bool alt(std::size_t i) const {
      const std::size_t k = (*pick)[i - 1];
      return i < self->v_.m() ? self->alt_[k] : self->final_[k];
    }
  };

 private:
  bool succ(std::size_t prev, std::size_t cur) {
    auto& slot = succ_[prev * c_.size() + cur];
    if (!slot) slot = check_init_succ(v_, c_[prev], c_[cur]);
    return *slot;
  }

  const AtmView& v_;
  const std::vector<TableauEncoding>& c_;
  std::vector<bool> val_, init1_, alt_, final_;
  std::vector<std::optional<bool>> succ_;
};

// Tuples are enumerated exhaustively up to this count, then with
// short-circuiting.
constexpr std::uint64_t kExhaustiveTuples = 1'000'000;

}  // namespace

SimulationReport verify_simulation(const AtmView& v, std::string_view input, std::size_t max_nodes) {
  SimulationReport rep;
  const PhaseTree tree = simulate_phases(v, input, max_nodes);
  const CellWidths w = CellWidths::of(v);

  std::vector<TableauEncoding> cands;
  for (const auto& node : tree.nodes) {
    TableauEncoding a = tableau_to_oracle(node.tableau, w);
    if (std::find(cands.begin(), cands.end(), a) == cands.end()) cands.push_back(std::move(a));
  }
  cands.emplace_back(w.total());  // the empty set stands in for every non-tableau
  CandidatePredicates pred(v, input, cands);

  const std::size_t m = v.m();
  std::uint64_t total = 1;
  bool exhaustive = true;
  for (std::size_t i = 0; i < m && exhaustive; ++i) {
    total *= cands.size();
    exhaustive = total <= kExhaustiveTuples;
  }

  std::vector<std::size_t> pick(m, 0);
  std::vector<std::size_t> principal;
  // Value of G_i A_i ... G_m A_m : V_1 with A_1..A_{i-1} fixed in `pick`;
  // `path` receives the deciding choices.
  auto quantify = [&](auto&& self, std::size_t i, std::vector<std::size_t>& path) -> bool {
    if (i > m) {
      ++rep.tuples;
      CandidatePredicates::Tuple t{&pred, &pick};
      const bool a = v1_recursive(v, t), b = v1_grouped(v, t);
      if (a != b && rep.grouping_agrees) {
        rep.grouping_agrees = false;
        for (auto k : pick) rep.counterexample.push_back(cands[k]);
      }
      path.assign(pick.begin(), pick.end());
      return a;
    }
    const bool exists = phase_quantifier(v, i) == Quantifier::Exists;
    std::optional<bool> result;
    std::vector<std::size_t> sub, chosen;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      pick[i - 1] = k;
      const bool r = self(self, i + 1, sub);
      if (k == 0) chosen = sub;
      if (!result && r == exists) {
        result = r;
        chosen = sub;
        if (!exhaustive) break;
      }
    }
    path = chosen;
    return result ? *result : !exists;
  };
  rep.quantified = quantify(quantify, 1, principal);

  const bool first_exists = phase_quantifier(v, 1) == Quantifier::Exists;
  auto m_acc = [&](std::size_t r) { return k_accepting(v, tree, r, m); };
  rep.k_accepting = first_exists ? std::any_of(tree.roots.begin(), tree.roots.end(), m_acc)
                                 : std::all_of(tree.roots.begin(), tree.roots.end(), m_acc);
  rep.direct = atm_accepts(v, input);
  rep.agree = rep.grouping_agrees && rep.quantified == rep.k_accepting && rep.k_accepting == rep.direct;
  if (!rep.agree && rep.grouping_agrees)
    for (auto k : principal) rep.counterexample.push_back(cands[k]);
  return rep;
}

}  // namespace qbsf
