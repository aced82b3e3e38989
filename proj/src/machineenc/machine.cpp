#include <algorithm>
#include <set>

#include <json.hpp>

#include "qbsf/error.hpp"
#include "qbsf/machine.hpp"

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

std::string_view move_name(Move m) {
  switch (m) {
    case Move::Left: return "L";
    case Move::Right: return "R";
    case Move::Stay: return "S";
  }
  return "S";
}

bool in_window(const OracleMachine& m, std::size_t cell) {
  const auto& w = m.window;
  return cell >= w.offset && cell < w.offset + w.index_bits + w.query_bits;
}

}  // namespace

void validate(const OracleMachine& m) {
  const std::set<std::string> states(m.states.begin(), m.states.end());
  if (states.size() != m.states.size()) invalid("duplicate state name");
  for (const auto* s : {&m.start, &m.accept, &m.reject, &m.query, &m.answer_pos, &m.answer_neg})
    if (!states.count(*s)) invalid("state '" + *s + "' is not declared");
  if (m.accept == m.reject) invalid("accept and reject must differ");
  if (m.query == m.answer_pos || m.query == m.answer_neg || m.answer_pos == m.answer_neg)
    invalid("query and answer states must be distinct");
  const std::set<std::string> symbols(m.alphabet.begin(), m.alphabet.end());
  if (symbols.size() != m.alphabet.size()) invalid("duplicate alphabet symbol");
  if (!symbols.count(m.blank)) invalid("blank is not in the alphabet");
  if (!symbols.count("0") || !symbols.count("1")) invalid("alphabet must contain 0 and 1");
  for (const auto& [key, tr] : m.transitions) {
    const auto& [from, read] = key;
    if (!states.count(from) || !states.count(tr.next))
      invalid("transition uses an undeclared state");
    if (!symbols.count(read) || !symbols.count(tr.write))
      invalid("transition uses an undeclared symbol");
    if (from == m.accept || from == m.reject || from == m.query)
      invalid("state '" + from + "' must not have outgoing transitions");
  }
  for (const auto& s : m.states) {
    if (s == m.accept || s == m.reject || s == m.query) continue;
    for (const auto& a : m.alphabet)
      if (!m.transitions.count({s, a}))
        invalid("no transition for (" + s + ", " + a + ")");
  }
  if ((std::size_t{1} << std::min<std::size_t>(m.window.index_bits, 62)) < m.num_oracles + 1)
    invalid("index_bits too small for " + std::to_string(m.num_oracles) + " oracles");
  const auto& w = m.window;
  if (w.offset + w.index_bits + w.query_bits > m.tape_length())
    fail(ErrorCode::WindowOverflow, "oracle window ends past the tape of length " +
                                        std::to_string(m.tape_length()));
}

OracleMachine machine_from_json(std::string_view text, std::string* input) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    invalid(std::string("machine file is not valid JSON: ") + e.what());
  }
  OracleMachine m;
  try {
    m.states = j.at("states").get<std::vector<std::string>>();
    m.start = j.at("start").get<std::string>();
    m.accept = j.at("accept").get<std::string>();
    m.reject = j.at("reject").get<std::string>();
    m.query = j.at("query").get<std::string>();
    m.answer_pos = j.at("answer_pos").get<std::string>();
    m.answer_neg = j.at("answer_neg").get<std::string>();
    m.blank = j.at("blank").get<std::string>();
    m.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 5) invalid("transition must have 5 entries");
      std::pair key{t[0].get<std::string>(), t[1].get<std::string>()};
      Transition tr{t[2].get<std::string>(), t[3].get<std::string>(),
                    parse_move(t[4].get<std::string>())};
      if (!m.transitions.emplace(key, tr).second)
        invalid("two transitions for (" + key.first + ", " + key.second + ")");
    }
    const auto& w = j.at("window");
    m.window = {w.at("offset").get<std::size_t>(), w.at("index_bits").get<std::size_t>(),
                w.at("query_bits").get<std::size_t>()};
    m.time_bound = j.at("time_bound").get<std::size_t>();
    m.num_oracles = j.at("num_oracles").get<std::size_t>();
    if (input && j.contains("input")) *input = j.at("input").get<std::string>();
  } catch (const json::exception& e) {
    invalid(std::string("malformed machine file: ") + e.what());
  }
  validate(m);
  return m;
}

std::string machine_to_json(const OracleMachine& m) {
  json j;
  j["states"] = m.states;
  j["start"] = m.start;
  j["accept"] = m.accept;
  j["reject"] = m.reject;
  j["query"] = m.query;
  j["answer_pos"] = m.answer_pos;
  j["answer_neg"] = m.answer_neg;
  j["blank"] = m.blank;
  j["alphabet"] = m.alphabet;
  j["transitions"] = json::array();
  for (const auto& [key, tr] : m.transitions)
    j["transitions"].push_back({key.first, key.second, tr.next, tr.write, move_name(tr.move)});
  j["window"] = {{"offset", m.window.offset},
                 {"index_bits", m.window.index_bits},
                 {"query_bits", m.window.query_bits}};
  j["time_bound"] = m.time_bound;
  j["num_oracles"] = m.num_oracles;
  return j.dump(2);
}

bool OracleFamily::contains(std::size_t i, const std::vector<bool>& word) const {
  if (i >= sets.size()) fail(ErrorCode::InvalidIndex, "no oracle " + std::to_string(i + 1));
  std::uint64_t idx = 0;
  for (bool b : word) idx = (idx << 1) | (b ? 1u : 0u);
  return sets[i].at(idx);
}

Configuration initial_configuration(const OracleMachine& m, std::string_view input) {
  const auto& w = m.window;
  const std::size_t window_len = w.index_bits + w.query_bits;
  if (w.offset + window_len > m.tape_length())
    fail(ErrorCode::WindowOverflow, "oracle window ends past the tape of length " +
                                        std::to_string(m.tape_length()));
  const std::size_t room = window_len > 0 ? w.offset : m.tape_length();
  if (input.size() > room)
    fail(ErrorCode::WindowOverflow, "input of length " + std::to_string(input.size()) +
                                        " does not fit before the oracle window");
  Configuration c;
  c.state = m.start;
  c.tape.assign(m.tape_length(), m.blank);
  for (std::size_t i = 0; i < input.size(); ++i) {
    std::string sym(1, input[i]);
    if (std::find(m.alphabet.begin(), m.alphabet.end(), sym) == m.alphabet.end())
      invalid("input symbol '" + sym + "' is not in the alphabet");
    c.tape[i] = std::move(sym);
  }
  for (std::size_t i = 0; i < window_len; ++i) c.tape[w.offset + i] = "0";
  return c;
}

RunResult run_machine(const OracleMachine& m, std::string_view input, const OracleFamily& oracles) {
  RunResult r;
  Configuration c = initial_configuration(m, input);
  r.trace.push_back(c);
  const auto& w = m.window;
  for (std::size_t t = 0;; ++t) {
    if (c.state == m.accept || c.state == m.reject) break;
    if (t == m.time_bound)
      fail(ErrorCode::Timeout, "machine did not halt within " + std::to_string(m.time_bound) +
                                   " steps");
    auto it = m.transitions.find({c.state, c.tape[c.head]});
    if (it == m.transitions.end())
      invalid("no transition for (" + c.state + ", " + c.tape[c.head] + ")");
    const Transition& tr = it->second;
    if (in_window(m, c.head) && tr.write != "0" && tr.write != "1")
      invalid("non-bit symbol written into the oracle window");
    c.tape[c.head] = tr.write;
    if (tr.move == Move::Left && c.head > 0) --c.head;
    if (tr.move == Move::Right && c.head + 1 < c.tape.size()) ++c.head;
    c.state = tr.next;
    if (c.state == m.query) {
      std::size_t index = 0;
      for (std::size_t j = 0; j < w.index_bits; ++j)
        index = (index << 1) | (c.tape[w.offset + j] == "1" ? 1u : 0u);
      if (index < 1 || index > m.num_oracles)
        fail(ErrorCode::InvalidIndex, "oracle index " + std::to_string(index) + " outside 1.." +
                                          std::to_string(m.num_oracles));
      std::vector<bool> word;
      for (std::size_t j = 0; j < w.query_bits; ++j)
        word.push_back(c.tape[w.offset + w.index_bits + j] == "1");
      c.state = oracles.contains(index - 1, word) ? m.answer_pos : m.answer_neg;
    }
    r.trace.push_back(c);
  }
  r.accept = c.state == m.accept;
  return r;
}

OracleMachine complement(const OracleMachine& m) {
  OracleMachine out = m;
  std::swap(out.accept, out.reject);
  return out;
}

std::string oracle_symbol(std::size_t i) { return "c" + std::to_string(i); }

}  // namespace qbsf
