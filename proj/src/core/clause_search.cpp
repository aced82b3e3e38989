#include "qbsf/clause_search.hpp"

#include <algorithm>

#include "qbsf/error.hpp"

namespace qbsf {

ClauseSearch::ClauseSearch(std::uint32_t num_vars, std::vector<SearchAtom> atoms,
                           std::vector<SearchClause> clauses)
    : num_vars_(num_vars),
      atoms_(std::move(atoms)),
      clauses_(std::move(clauses)),
      occurrences_(num_vars),
      values_(num_vars, -1) {
  for (std::uint32_t c = 0; c < clauses_.size(); ++c) {
    std::vector<std::uint32_t> vars;
    for (const auto& lit : clauses_[c]) {
      if (lit.kind == SearchLiteral::Kind::Var) {
        vars.push_back(lit.index);
      } else if (lit.kind == SearchLiteral::Kind::Atom) {
        for (const auto& a : atoms_[lit.index].args)
          if (a.kind == SearchArg::Kind::Var) vars.push_back(a.var);
      }
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (auto v : vars) occurrences_[v].push_back(c);
  }
}

int ClauseSearch::literal_value(const SearchLiteral& lit) const {
  int v = -1;
  switch (lit.kind) {
    case SearchLiteral::Kind::Const:
      v = lit.index != 0 ? 1 : 0;
      break;
    case SearchLiteral::Kind::Var:
      v = values_[lit.index];
      break;
    case SearchLiteral::Kind::Atom: {
      const auto& atom = atoms_[lit.index];
      std::uint64_t idx = 0;
      for (const auto& a : atom.args) {
        int bit = 0;
        switch (a.kind) {
          case SearchArg::Kind::Const: bit = a.value ? 1 : 0; break;
          case SearchArg::Kind::Var: bit = values_[a.var]; break;
          case SearchArg::Kind::External: bit = a.external->at(0) ? 1 : 0; break;
        }
        if (bit < 0) return -1;
        idx = (idx << 1) | static_cast<std::uint64_t>(bit);
      }
      v = atom.table->at(idx) ? 1 : 0;
      break;
    }
  }
  if (v < 0) return -1;
  return lit.negated ? 1 - v : v;
}

ClauseSearch::Status ClauseSearch::clause_status(std::uint32_t clause, std::uint32_t& unit_var,
                                                 bool& unit_value) const {
  int open = 0;
  bool open_is_var = false;
  for (const auto& lit : clauses_[clause]) {
    const int v = literal_value(lit);
    if (v == 1) return Status::Satisfied;
    if (v < 0) {
      if (++open > 1) return Status::Open;
      open_is_var = lit.kind == SearchLiteral::Kind::Var;
      if (open_is_var) {
        unit_var = lit.index;
        unit_value = !lit.negated;
      }
    }
  }
  if (open == 0) return Status::Conflict;
  return open_is_var ? Status::Unit : Status::Open;
}

bool ClauseSearch::assign(std::uint32_t var, bool value) {
  const std::size_t start = trail_.size();
  values_[var] = value ? 1 : 0;
  trail_.push_back(var);
  return propagate_from(start);
}

bool ClauseSearch::propagate_from(std::size_t trail_start) {
  for (std::size_t i = trail_start; i < trail_.size(); ++i) {
    for (auto c : occurrences_[trail_[i]]) {
      std::uint32_t uv = 0;
      bool uval = false;
      switch (clause_status(c, uv, uval)) {
        case Status::Conflict:
          return false;
        case Status::Unit:
          values_[uv] = uval ? 1 : 0;
          trail_.push_back(uv);
          break;
        default:
          break;
      }
    }
  }
  return true;
}

void ClauseSearch::undo_to(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    values_[trail_.back()] = -1;
    trail_.pop_back();
  }
}

bool ClauseSearch::search(std::uint32_t next_var, std::uint64_t& steps, std::uint64_t max_steps) {
  while (next_var < num_vars_ && values_[next_var] >= 0) ++next_var;
  if (next_var == num_vars_) {
    model_ = values_;
    return true;
  }
  for (bool value : {false, true}) {
    if (++steps > max_steps) fail(ErrorCode::LimitExceeded, "clause search step budget exhausted");
    const std::size_t mark = trail_.size();
    if (assign(next_var, value) && search(next_var + 1, steps, max_steps)) {
      undo_to(mark);
      return true;
    }
    undo_to(mark);
  }
  return false;
}

bool ClauseSearch::satisfiable(std::uint64_t& steps, std::uint64_t max_steps) {
  undo_to(0);
  // Clauses without variables, and initial units.
  for (std::uint32_t c = 0; c < clauses_.size(); ++c) {
    std::uint32_t uv = 0;
    bool uval = false;
    const auto status = clause_status(c, uv, uval);
    if (status == Status::Conflict) {
      undo_to(0);
      return false;
    }
    if (status == Status::Unit && values_[uv] < 0) {
      if (!assign(uv, uval)) {
        undo_to(0);
        return false;
      }
    }
  }
  // A unit found early may have been falsified by a later initial unit.
  for (std::uint32_t c = 0; c < clauses_.size(); ++c) {
    std::uint32_t uv = 0;
    bool uval = false;
    if (clause_status(c, uv, uval) == Status::Conflict) {
      undo_to(0);
      return false;
    }
  }
  const bool sat = search(0, steps, max_steps);
  undo_to(0);
  return sat;
}

}  // namespace qbsf
