#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "qbsf/error.hpp"
#include "qbsf/tableau.hpp"

namespace qbsf {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& msg) { fail(ErrorCode::InvalidMachine, msg); }

Move parse_move(const std::string& s) {
  if (s == "L") return Move::Left;
  if (s == "R") return Move::Right;
  if (s == "S") return Move::Stay;
  invalid("move must be L, R or S, got '" + s + "'");
}

const char* move_name(Move m) {
  switch (m) {
    case Move::Left: return "L";
    case Move::Right: return "R";
    case Move::Stay: return "S";
  }
  return "S";
}

StateType parse_type(const std::string& s) {
  if (s == "existential") return StateType::Existential;
  if (s == "universal") return StateType::Universal;
  invalid("state type must be existential or universal, got '" + s + "'");
}

// State at s scans s+1. Left at 0 and right at length-2 degrade to a stay.
void apply_step(TapeConfig& row, std::size_t s, const AtmView::Step& st) {
  const std::size_t len = row.size();
  if (st.move == Move::Left && s > 0) {
    row[s] = row[s - 1];
    row[s - 1] = st.next;
    row[s + 1] = st.write;
  } else if (st.move == Move::Right && s + 2 < len) {
    row[s] = st.write;
    row[s + 1] = st.next;
  } else {
    row[s] = st.next;
    row[s + 1] = st.write;
  }
}

}  // namespace

void validate(const AtmSpec& m) {
  std::set<std::string> names;
  for (const auto& a : m.alphabet)
    if (!names.insert(a).second) invalid("duplicate alphabet symbol '" + a + "'");
  for (const auto& s : m.states)
    if (!names.insert(s.name).second) invalid("name '" + s.name + "' used twice");
  auto is_state = [&](const std::string& s) {
    return std::any_of(m.states.begin(), m.states.end(), [&](const AtmState& x) { return x.name == s; });
  };
  auto is_symbol = [&](const std::string& a) {
    return std::find(m.alphabet.begin(), m.alphabet.end(), a) != m.alphabet.end();
  };
  if (!is_state(m.start)) invalid("start state '" + m.start + "' is not declared");
  for (const auto& a : m.accept)
    if (!is_state(a)) invalid("accept state '" + a + "' is not declared");
  if (!is_symbol(m.blank)) invalid("blank is not in the alphabet");
  for (const auto& t : m.transitions) {
    if (!is_state(t.state) || !is_state(t.next)) invalid("transition uses an undeclared state");
    if (!is_symbol(t.read) || !is_symbol(t.write)) invalid("transition uses an undeclared symbol");
  }
  if (m.phase_len < 1) invalid("phase_len must be at least 1");
  if (m.phase_count < 1) invalid("phase_count must be at least 1");
  if (names.size() > 255) invalid("too many symbols");
}

AtmSpec atm_from_json(std::string_view text, std::string* input) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    invalid(std::string("machine file is not valid JSON: ") + e.what());
  }
  AtmSpec m;
  try {
    for (const auto& s : j.at("states"))
      m.states.push_back({s.at("name").get<std::string>(), parse_type(s.at("type").get<std::string>())});
    m.start = j.at("start").get<std::string>();
    m.accept = j.at("accept").get<std::vector<std::string>>();
    m.blank = j.at("blank").get<std::string>();
    m.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 5) invalid("transition must have 5 entries");
      m.transitions.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                               t[2].get<std::string>(), t[3].get<std::string>(),
                               parse_move(t[4].get<std::string>())});
    }
    m.phase_len = j.at("phase_len").get<std::size_t>();
    m.phase_count = j.at("phase_count").get<std::size_t>();
    if (input && j.contains("input")) *input = j.at("input").get<std::string>();
  } catch (const json::exception& e) {
    invalid(std::string("malformed machine file: ") + e.what());
  }
  validate(m);
  return m;
}

std::string atm_to_json(const AtmSpec& m) {
  json j;
  j["states"] = json::array();
  for (const auto& s : m.states)
    j["states"].push_back(
        {{"name", s.name}, {"type", s.type == StateType::Existential ? "existential" : "universal"}});
  j["start"] = m.start;
  j["accept"] = m.accept;
  j["blank"] = m.blank;
  j["alphabet"] = m.alphabet;
  j["transitions"] = json::array();
  for (const auto& t : m.transitions)
    j["transitions"].push_back({t.state, t.read, t.next, t.write, move_name(t.move)});
  j["phase_len"] = m.phase_len;
  j["phase_count"] = m.phase_count;
  return j.dump(2);
}

AtmView::AtmView(const AtmSpec& m) : m_(&m) {
  validate(m);
  names_ = m.alphabet;
  for (const auto& s : m.states) {
    names_.push_back(s.name);
    types_.push_back(s.type);
    accepting_.push_back(std::find(m.accept.begin(), m.accept.end(), s.name) != m.accept.end());
  }
  steps_.assign(m.states.size(), std::vector<std::vector<Step>>(m.alphabet.size()));
  for (const auto& t : m.transitions) {
    const std::uint32_t q = code(t.state) - static_cast<std::uint32_t>(m.alphabet.size());
    steps_[q][code(t.read)].push_back({code(t.next), code(t.write), t.move});
  }
  build_windows();
}

std::uint64_t AtmView::window_key(const std::uint32_t (&cells)[6]) {
  std::uint64_t k = 0;
  for (std::uint32_t c : cells) k = (k << 8) | (c & 0xFF);
  return k;
}

bool AtmView::legal_window(std::size_t p, std::uint64_t key) const {
  return p < windows_.size() && windows_[p].count(key) > 0;
}

// Every window a row with one state can show under one step: either the
// state is too far away to matter, or it sits within two cells of the
// centre and all cells it or the window touches are enumerated.
void AtmView::build_windows() {
  const std::size_t len = length();
  const auto tape = static_cast<std::uint32_t>(m_->alphabet.size());
  windows_.assign(len, {});
  for (std::size_t p = 1; p + 1 < len; ++p) {
    auto& out = windows_[p];
    for (std::uint32_t a = 0; a < tape; ++a)
      for (std::uint32_t b = 0; b < tape; ++b)
        for (std::uint32_t c = 0; c < tape; ++c) {
          const std::uint32_t w[6] = {a, b, c, a, b, c};
          out.insert(window_key(w));
        }
    for (std::size_t s = p >= 2 ? p - 2 : 0; s <= p + 2 && s + 2 <= len; ++s) {
      std::vector<std::size_t> free;
      for (std::size_t x = (std::min(p, s) >= 1 ? std::min(p, s) - 1 : 0);
           x <= std::max(p, s) + 1 && x < len; ++x)
        if (x != s && x != s + 1) free.push_back(x);
      for (std::uint32_t qi = 0; qi < m_->states.size(); ++qi) {
        for (std::uint32_t read = 0; read < tape; ++read) {
          const auto& moves = steps_[qi][read];
          if (moves.empty()) continue;
          std::vector<std::uint32_t> pick(free.size(), 0);
          for (;;) {
            TapeConfig row(len, 0);
            row[s] = tape + qi;
            row[s + 1] = read;
            for (std::size_t k = 0; k < free.size(); ++k) row[free[k]] = pick[k];
            for (const auto& st : moves) {
              TapeConfig next = row;
              apply_step(next, s, st);
              const std::uint32_t w[6] = {row[p - 1], row[p], row[p + 1], next[p - 1], next[p], next[p + 1]};
              out.insert(window_key(w));
            }
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == tape) pick[k++] = 0;
            if (k == pick.size()) break;
          }
        }
      }
    }
  }
}

std::uint32_t AtmView::code(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) invalid("unknown symbol '" + name + "'");
  return static_cast<std::uint32_t>(it - names_.begin());
}

StateType AtmView::type(std::uint32_t code) const {
  if (!is_state(code)) fail(ErrorCode::OutOfRange, "symbol " + std::to_string(code) + " is not a state");
  return types_[code - m_->alphabet.size()];
}

bool AtmView::accepting(std::uint32_t code) const {
  return is_state(code) && accepting_[code - m_->alphabet.size()];
}

const std::vector<AtmView::Step>& AtmView::steps(std::uint32_t state, std::uint32_t read) const {
  static const std::vector<Step> none;
  if (!is_state(state) || read >= m_->alphabet.size()) return none;
  return steps_[state - m_->alphabet.size()][read];
}

TapeConfig initial_config(const AtmView& v, std::string_view input) {
  const std::size_t n = v.n();
  if (input.size() > n + 1)
    fail(ErrorCode::OutOfRange, "input of length " + std::to_string(input.size()) +
                                    " does not fit behind position " + std::to_string(n));
  TapeConfig c(v.length(), v.blank());
  c[n] = v.code(v.spec().start);
  for (std::size_t i = 0; i < input.size(); ++i) {
    const std::uint32_t s = v.code(std::string(1, input[i]));
    if (v.is_state(s)) invalid("input symbol '" + std::string(1, input[i]) + "' is a state");
    c[n + 1 + i] = s;
  }
  return c;
}

std::size_t state_position(const AtmView& v, const TapeConfig& c) {
  std::size_t found = c.size();
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (!v.is_state(c[p])) continue;
    if (found != c.size()) return c.size();
    found = p;
  }
  return found;
}

std::vector<TapeConfig> successors(const AtmView& v, const TapeConfig& c) {
  std::vector<TapeConfig> out;
  const std::size_t s = state_position(v, c);
  if (s + 1 >= c.size()) return out;
  for (const auto& st : v.steps(c[s], c[s + 1])) {
    TapeConfig next = c;
    apply_step(next, s, st);
    if (std::find(out.begin(), out.end(), next) == out.end()) out.push_back(std::move(next));
  }
  return out;
}

std::vector<Tableau> pure_tableaus_from(const AtmView& v, const TapeConfig& c) {
  std::vector<Tableau> out;
  const std::size_t s = state_position(v, c);
  if (s + 1 >= c.size()) return out;
  const StateType kind = v.type(c[s]);
  Tableau path{c};
  // Rows 0..n-1 keep the type of row 0; row n is free.
  auto extend = [&](auto&& self) -> void {
    if (path.size() == v.n() + 1) {
      if (std::find(out.begin(), out.end(), path) == out.end()) out.push_back(path);
      return;
    }
    for (auto& next : successors(v, path.back())) {
      if (path.size() < v.n() && v.type(next[state_position(v, next)]) != kind) continue;
      path.push_back(std::move(next));
      self(self);
      path.pop_back();
    }
  };
  extend(extend);
  return out;
}

PhaseTree simulate_phases(const AtmView& v, std::string_view input, std::size_t max_nodes) {
  PhaseTree tree;
  auto add = [&](Tableau t, std::size_t level) {
    if (tree.nodes.size() >= max_nodes)
      fail(ErrorCode::StateSpaceExceeded,
           "phase tree exceeds " + std::to_string(max_nodes) + " tableaus");
    tree.nodes.push_back({std::move(t), level, {}});
    return tree.nodes.size() - 1;
  };
  for (auto& t : pure_tableaus_from(v, initial_config(v, input))) tree.roots.push_back(add(std::move(t), 1));
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].level >= v.m()) continue;
    const TapeConfig last = tree.nodes[i].tableau.back();
    for (auto& t : pure_tableaus_from(v, last)) {
      const std::size_t child = add(std::move(t), tree.nodes[i].level + 1);
      tree.nodes[i].children.push_back(child);
    }
  }
  return tree;
}

bool k_accepting(const AtmView& v, const PhaseTree& tree, std::size_t node, std::size_t k) {
  const Tableau& t = tree.nodes.at(node).tableau;
  const std::uint32_t last = t.back()[state_position(v, t.back())];
  if (k == 1) return v.accepting(last);
  if (k == 0 || t.size() < 2) return false;
  const StateType kind = v.type(last);
  for (std::size_t r = 0; r + 1 < t.size(); ++r)
    if (v.type(t[r][state_position(v, t[r])]) == kind) return false;
  const auto& kids = tree.nodes[node].children;
  auto ok = [&](std::size_t c) { return k_accepting(v, tree, c, k - 1); };
  return kind == StateType::Existential ? std::any_of(kids.begin(), kids.end(), ok)
                                        : std::all_of(kids.begin(), kids.end(), ok);
}

bool atm_accepts(const AtmView& v, std::string_view input) {
  const std::size_t bound = v.n() * v.m();
  std::map<std::pair<std::size_t, TapeConfig>, bool> memo;
  auto acc = [&](auto&& self, const TapeConfig& c, std::size_t steps) -> bool {
    const std::uint32_t q = c[state_position(v, c)];
    if (v.accepting(q)) return true;
    if (steps == bound) return false;
    auto key = std::make_pair(steps, c);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto next = successors(v, c);
    bool r;
    if (next.empty()) {
      r = false;
    } else if (v.type(q) == StateType::Existential) {
      r = std::any_of(next.begin(), next.end(), [&](const TapeConfig& d) { return self(self, d, steps + 1); });
    } else {
      r = std::all_of(next.begin(), next.end(), [&](const TapeConfig& d) { return self(self, d, steps + 1); });
    }
    memo.emplace(std::move(key), r);
    return r;
  };
  return acc(acc, initial_config(v, input), 0);
}

}  // namespace qbsf
