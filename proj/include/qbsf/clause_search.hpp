#pragma once

#include <cstdint>
#include <vector>

#include "qbsf/truth_table.hpp"

namespace qbsf {

/// Argument of a search atom: a constant, a search variable, or an external
/// proposition read through a table of arity 0.
struct SearchArg {
  enum class Kind : std::uint8_t { Const, Var, External };
  Kind kind = Kind::Const;
  bool value = false;
  std::uint32_t var = 0;
  const TruthTable* external = nullptr;
};

/// Function atom read through `table`; its truth value is known once every
/// Var argument is assigned.
struct SearchAtom {
  const TruthTable* table = nullptr;
  std::vector<SearchArg> args;
};

struct SearchLiteral {
  enum class Kind : std::uint8_t { Const, Var, Atom };
  Kind kind = Kind::Const;
  bool negated = false;
  std::uint32_t index = 0;  // var or atom index; const value for Const
};

using SearchClause = std::vector<SearchLiteral>;

/// DPLL over an ordered variable block: unit propagation, chronological
/// backtracking, decisions in variable order with 0 tried first. Tables are
/// read through pointers at solve time, so one instance can be re-solved
/// after the tables behind it change.
class ClauseSearch {
 public:
  ClauseSearch(std::uint32_t num_vars, std::vector<SearchAtom> atoms,
               std::vector<SearchClause> clauses);

  /// Whether some assignment satisfies all clauses. Each decision costs one
  /// step; throws LimitExceeded once `steps` would pass `max_steps`.
  bool satisfiable(std::uint64_t& steps, std::uint64_t max_steps);

  /// Model of the last successful call, one entry per variable.
  const std::vector<std::int8_t>& model() const noexcept { return model_; }

 private:
  enum class Status { Satisfied, Conflict, Unit, Open };

  int literal_value(const SearchLiteral& lit) const;
  Status clause_status(std::uint32_t clause, std::uint32_t& unit_var, bool& unit_value) const;
  bool assign(std::uint32_t var, bool value);
  bool propagate_from(std::size_t trail_start);
  void undo_to(std::size_t trail_size);
  bool search(std::uint32_t next_var, std::uint64_t& steps, std::uint64_t max_steps);

  std::uint32_t num_vars_;
  std::vector<SearchAtom> atoms_;
  std::vector<SearchClause> clauses_;
  std::vector<std::vector<std::uint32_t>> occurrences_;
  std::vector<std::int8_t> values_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::int8_t> model_;
};

}  // namespace qbsf
