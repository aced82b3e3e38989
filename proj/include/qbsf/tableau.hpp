#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qbsf/machine.hpp"

namespace qbsf {

enum class StateType { Existential, Universal };

struct AtmState {
  std::string name;
  StateType type = StateType::Existential;
};

struct AtmTransition {
  std::string state, read, next, write;
  Move move = Move::Stay;
};

/// Single-tape alternating machine, normalized to `phase_count` phases of
/// exactly `phase_len` steps each.
///
/// Configurations have positions 0..2n+1 (n = phase_len). The state
/// occupies a cell of its own directly left of the scanned cell; the
/// initial state sits at position n with the input from n+1. A left move
/// with the state at 0 and a right move with the state at 2n stay in place.
struct AtmSpec {
  std::vector<AtmState> states;
  std::string start;
  std::vector<std::string> accept;
  std::string blank;
  std::vector<std::string> alphabet;
  std::vector<AtmTransition> transitions;
  std::size_t phase_len = 0;
  std::size_t phase_count = 0;
};

/// Throws InvalidMachine.
void validate(const AtmSpec& m);

/// `.atm.json`: machine fields with `states` as [{"name", "type"}],
/// `accept` as a list, plus `phase_len` and `phase_count`. An optional
/// "input" field is returned through `input`.
AtmSpec atm_from_json(std::string_view text, std::string* input = nullptr);
std::string atm_to_json(const AtmSpec& m);

/// Symbol codes: alphabet symbols first, then states, in declaration order.
class AtmView {
 public:
  explicit AtmView(const AtmSpec& m);

  const AtmSpec& spec() const { return *m_; }
  std::size_t n() const { return m_->phase_len; }
  std::size_t m() const { return m_->phase_count; }
  std::size_t length() const { return 2 * n() + 2; }
  std::size_t num_symbols() const { return names_.size(); }
  std::uint32_t code(const std::string& name) const;
  const std::string& name(std::uint32_t code) const { return names_.at(code); }
  bool is_state(std::uint32_t code) const { return code >= m_->alphabet.size() && code < names_.size(); }
  StateType type(std::uint32_t code) const;
  bool accepting(std::uint32_t code) const;
  std::uint32_t blank() const { return code(m_->blank); }

  struct Step {
    std::uint32_t next, write;
    Move move;
  };
  /// Transitions for (state code, read code).
  const std::vector<Step>& steps(std::uint32_t state, std::uint32_t read) const;

  /// Rows t and t+1 restricted to p-1..p+1, packed 8 bits per cell, top row
  /// first.
  static std::uint64_t window_key(const std::uint32_t (&cells)[6]);
  /// Windows centred at p (1 <= p <= length()-2) that some single step of a
  /// configuration can produce.
  bool legal_window(std::size_t p, std::uint64_t key) const;

 private:
  void build_windows();

  const AtmSpec* m_;
  std::vector<std::string> names_;
  std::vector<StateType> types_;
  std::vector<bool> accepting_;
  std::vector<std::vector<std::vector<Step>>> steps_;  // [state][read]
  std::vector<std::unordered_set<std::uint64_t>> windows_;  // by centre
};

using TapeConfig = std::vector<std::uint32_t>;  // symbol codes, one state
using Tableau = std::vector<TapeConfig>;        // timesteps 0..n

TapeConfig initial_config(const AtmView& v, std::string_view input);
/// Position of the state cell, or length() if the row holds none or several.
std::size_t state_position(const AtmView& v, const TapeConfig& c);
/// All one-step successors (deduplicated, in transition order).
std::vector<TapeConfig> successors(const AtmView& v, const TapeConfig& c);

// ---------------------------------------------------------------------------
// Cell words

struct CellWidths {
  unsigned symbol_bits = 0;
  unsigned time_bits = 0;
  unsigned pos_bits = 0;
  std::size_t num_symbols = 0;
  std::size_t n = 0;

  unsigned total() const { return symbol_bits + time_bits + pos_bits; }
  static CellWidths of(const AtmView& v);
};

struct CellWord {
  std::uint32_t symbol = 0;
  std::size_t t = 0;
  std::size_t p = 0;

  friend bool operator==(const CellWord&, const CellWord&) = default;
};

/// Fields symbol, t, p in that order, each most significant bit first.
/// Throws OutOfRange.
std::uint64_t encode_cell(const CellWord& w, const CellWidths& widths);
CellWord decode_cell(std::uint64_t word, const CellWidths& widths);
bool is_valid_cell(std::uint64_t word, const CellWidths& widths);

/// Subset of {0,1}^h.
class TableauEncoding {
 public:
  TableauEncoding() = default;
  explicit TableauEncoding(unsigned width);

  unsigned width() const { return width_; }
  std::uint64_t universe() const { return std::uint64_t{1} << width_; }
  bool contains(std::uint64_t word) const { return bits_.at(word) != 0; }
  void insert(std::uint64_t word) { bits_.at(word) = 1; }
  void erase(std::uint64_t word) { bits_.at(word) = 0; }
  void toggle(std::uint64_t word) { bits_.at(word) ^= 1; }
  std::size_t size() const;
  std::vector<std::uint64_t> words() const;

  friend bool operator==(const TableauEncoding&, const TableauEncoding&) = default;

 private:
  unsigned width_ = 0;
  std::vector<std::uint8_t> bits_;
};

TableauEncoding tableau_to_oracle(const Tableau& t, const CellWidths& widths);

/// Counts membership tests per innermost branch of the branching checks.
struct MembershipAudit {
  std::uint64_t branches = 0;
  std::uint64_t queries = 0;
  std::uint64_t violations = 0;  // branches with more than one test
};

// ---------------------------------------------------------------------------
// Predicates. Each throws WidthMismatch when an encoding's width differs
// from the machine's cell width.

bool check_val(const AtmView& v, const TableauEncoding& a, MembershipAudit* audit = nullptr);
bool check_init1(const AtmView& v, const TableauEncoding& a, std::string_view input,
                 MembershipAudit* audit = nullptr);
bool check_init_succ(const AtmView& v, const TableauEncoding& prev, const TableauEncoding& a,
                     MembershipAudit* audit = nullptr);
bool check_alt(const AtmView& v, const TableauEncoding& a, MembershipAudit* audit = nullptr);
bool check_alt_final(const AtmView& v, const TableauEncoding& a,
                     MembershipAudit* audit = nullptr);

/// Direct test: rows 0..n are configurations, each the successor of the
/// previous one, and the states of rows 0..n-1 share one alternation type.
/// Independent of the window-based check_val.
bool is_pure_tableau(const AtmView& v, const Tableau& t);
/// Decodes `a` into a tableau when every (t, p) holds exactly one symbol and
/// no invalid word is present.
std::optional<Tableau> oracle_to_tableau(const AtmView& v, const TableauEncoding& a);

/// Quantifier of A_i: phases alternate starting with the start state's type.
Quantifier phase_quantifier(const AtmView& v, std::size_t i);

/// V_1 by its recursive definition. Throws ArityMismatch unless
/// oracles.size() == phase_count.
bool eval_v1(const AtmView& v, std::string_view input, const std::vector<TableauEncoding>& oracles);
/// V_1 through the groups S^d_i = T_i u F^d_i, i in 1..m+1, d in {0,1}.
bool eval_v1_grouped(const AtmView& v, std::string_view input,
                     const std::vector<TableauEncoding>& oracles);

// ---------------------------------------------------------------------------
// Phase tree

struct PhaseNode {
  Tableau tableau;
  std::size_t level = 1;  // phase index, 1-based
  std::vector<std::size_t> children;
};

struct PhaseTree {
  std::vector<PhaseNode> nodes;
  std::vector<std::size_t> roots;
};

/// Pure tableaus of exactly n steps from the initial configuration, and
/// their pure successor tableaus down to phase m. Throws StateSpaceExceeded
/// beyond `max_nodes`.
PhaseTree simulate_phases(const AtmView& v, std::string_view input, std::size_t max_nodes = 100000);
/// All pure tableaus of exactly n steps starting at `c`.
std::vector<Tableau> pure_tableaus_from(const AtmView& v, const TapeConfig& c);

bool k_accepting(const AtmView& v, const PhaseTree& tree, std::size_t node, std::size_t k);

/// Plain alternating acceptance within m * n steps, without tableaus.
bool atm_accepts(const AtmView& v, std::string_view input);

struct SimulationReport {
  bool agree = false;
  bool quantified = false;   // G1 A1 ... Gm Am : V1 over tableau-shaped oracles
  bool k_accepting = false;  // initial tableaus m-accepting
  bool direct = false;       // atm_accepts
  bool grouping_agrees = true;
  std::uint64_t tuples = 0;  // oracle tuples evaluated
  /// Oracle tuple at the first grouping mismatch, or the principal tuple of
  /// the quantified evaluation on disagreement.
  std::vector<TableauEncoding> counterexample;
};

SimulationReport verify_simulation(const AtmView& v, std::string_view input,
                                   std::size_t max_nodes = 100000);

}  // namespace qbsf
