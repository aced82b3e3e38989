#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbsf/formula.hpp"
#include "qbsf/truth_table.hpp"

namespace qbsf {

enum class Move { Left, Right, Stay };

struct Transition {
  std::string next;
  std::string write;
  Move move = Move::Stay;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Oracle cells [offset, offset + index_bits) hold the oracle index in
/// binary (most significant first); the query word follows in the next
/// query_bits cells.
struct OracleWindow {
  std::size_t offset = 0;
  std::size_t index_bits = 0;
  std::size_t query_bits = 0;
};

/// Deterministic single-tape machine with an oracle window.
///
/// Tape: time_bound + 1 cells, input from cell 0, window cells start as "0",
/// everything else blank; the head starts at cell 0 and a left move at cell
/// 0 stays put. A transition into `query` is resolved in the same step: the
/// window of the new configuration is read and the machine enters
/// `answer_pos` or `answer_neg`. `accept` and `reject` persist.
struct OracleMachine {
  std::vector<std::string> states;
  std::string start, accept, reject, query, answer_pos, answer_neg;
  std::string blank;
  std::vector<std::string> alphabet;  // contains blank, "0" and "1"
  std::map<std::pair<std::string, std::string>, Transition> transitions;
  OracleWindow window;
  std::size_t time_bound = 0;
  std::size_t num_oracles = 0;

  std::size_t tape_length() const { return time_bound + 1; }
};

/// Throws InvalidMachine (unknown names, nondeterminism, missing
/// transitions, index too narrow) or WindowOverflow.
void validate(const OracleMachine& m);

/// `.om.json` reader/writer. The optional "input" field is returned through
/// `input` when given.
OracleMachine machine_from_json(std::string_view text, std::string* input = nullptr);
std::string machine_to_json(const OracleMachine& m);

/// Characteristic functions of A_1..A_l, each of arity m.
struct OracleFamily {
  std::vector<TruthTable> sets;

  /// Word w_1..w_m is a member of set i iff sets[i].at(index of w).
  bool contains(std::size_t i, const std::vector<bool>& word) const;
};

struct Configuration {
  std::string state;
  std::size_t head = 0;
  std::vector<std::string> tape;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct RunResult {
  bool accept = false;
  std::vector<Configuration> trace;  // initial configuration first
};

Configuration initial_configuration(const OracleMachine& m, std::string_view input);

/// Throws Timeout, InvalidIndex, WindowOverflow (input does not fit before
/// the window) or InvalidMachine (non-bit written into the window).
RunResult run_machine(const OracleMachine& m, std::string_view input, const OracleFamily& oracles);

/// Accept and reject swapped.
OracleMachine complement(const OracleMachine& m);

/// Oracle symbols are c1..cl, each of arity query_bits.
std::string oracle_symbol(std::size_t i);

/// G1 c1 ... Gl cl exists z (Cook-style CNF of the run on `input`), the
/// quantifiers alternating from `first`. Under c_i := A_i with the oracle
/// block stripped, the formula holds iff the run accepts; an out-of-range
/// index at query time falsifies it.
Formula encode_run(const OracleMachine& m, std::string_view input, Quantifier first);

/// Same prefix, then forall z over a DNF: dualize(encode_run(complement(m),
/// input, dual(first))).
Formula encode_run_dnf(const OracleMachine& m, std::string_view input, Quantifier first);

}  // namespace qbsf
