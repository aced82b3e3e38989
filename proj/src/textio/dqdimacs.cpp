#include <charconv>
#include <map>
#include <sstream>

#include "qbsf/error.hpp"
#include "qbsf/textio.hpp"

namespace qbsf {

namespace {

struct Word {
  long long value;
  std::size_t column;
};

enum class Role { None, Universal, Existential };

SyntaxError syntax_error(const std::string& msg, std::size_t line, std::size_t col) {
  return SyntaxError(std::to_string(line) + ":" + std::to_string(col) + ": " + msg, line, col);
}

class DqdimacsReader {
 public:
  DqbfInstance read(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      line(text.substr(start, end - start), line_no);
      start = end + 1;
    }
    if (!header_) throw syntax_error("missing 'p cnf' header", line_no, 1);
    if (!pending_.empty())
      throw syntax_error("last clause is not terminated by 0", pending_line_, pending_col_);
    if (clauses_.size() != num_clauses_)
      fail(ErrorCode::HeaderMismatch, "header declares " + std::to_string(num_clauses_) +
                                          " clauses, found " + std::to_string(clauses_.size()));
    std::vector<Formula> parts;
    for (const auto& c : clauses_) {
      std::vector<Formula> lits;
      for (auto lit : c) {
        Formula v = Formula::var(name(lit < 0 ? -lit : lit));
        lits.push_back(lit < 0 ? Formula::negate(std::move(v)) : std::move(v));
      }
      parts.push_back(Formula::disj_all(lits));
    }
    out_.matrix = Formula::conj_all(parts);
    return std::move(out_);
  }

 private:
  static std::string name(long long v) { return "v" + std::to_string(v); }

  static std::vector<Word> words(std::string_view s, std::size_t line_no, std::size_t skip) {
    std::vector<Word> out;
    std::size_t i = skip;
    while (i < s.size()) {
      if (s[i] == ' ' || s[i] == '\t' || s[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
      long long v = 0;
      auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, v);
      if (ec != std::errc() || ptr != s.data() + j)
        throw syntax_error("expected an integer, found '" + std::string(s.substr(i, j - i)) + "'",
                          line_no, i + 1);
      out.push_back({v, i + 1});
      i = j;
    }
    return out;
  }

  void check_var(const Word& w, std::size_t line_no) const {
    if (w.value <= 0 || static_cast<unsigned long long>(w.value) > num_vars_)
      fail(ErrorCode::UndeclaredVariable,
           std::to_string(line_no) + ":" + std::to_string(w.column) + ": variable " +
               std::to_string(w.value) + " outside 1.." + std::to_string(num_vars_));
  }

  // Prefix line body: positive variables terminated by a single 0.
  std::vector<Word> prefix_vars(const std::vector<Word>& ws, std::size_t line_no,
                                std::size_t line_len) {
    if (ws.empty() || ws.back().value != 0)
      throw syntax_error("prefix line must end with 0", line_no, line_len + 1);
    std::vector<Word> vars(ws.begin(), ws.end() - 1);
    for (const auto& w : vars) {
      if (w.value == 0) throw syntax_error("0 inside prefix line", line_no, w.column);
      if (w.value < 0) throw syntax_error("negative variable in prefix", line_no, w.column);
      check_var(w, line_no);
    }
    return vars;
  }

  void quantify(const Word& w, Role role, std::size_t line_no) {
    auto& r = roles_[w.value];
    if (r != Role::None)
      throw syntax_error("variable " + std::to_string(w.value) + " quantified twice", line_no,
                        w.column);
    r = role;
  }

  void line(std::string_view s, std::size_t line_no) {
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i == s.size()) return;
    const char c = s[i];
    if (c == 'c') return;
    if (c == 'p') {
      if (header_) throw syntax_error("duplicate header", line_no, i + 1);
      std::istringstream in{std::string(s.substr(i + 1))};
      std::string fmt;
      long long v = -1, n = -1;
      std::string extra;
      if (!(in >> fmt >> v >> n) || fmt != "cnf" || v < 0 || n < 0 || (in >> extra))
        throw syntax_error("malformed header, expected 'p cnf <vars> <clauses>'", line_no, i + 1);
      header_ = true;
      num_vars_ = static_cast<std::size_t>(v);
      num_clauses_ = static_cast<std::size_t>(n);
      return;
    }
    if (!header_) throw syntax_error("content before 'p cnf' header", line_no, i + 1);
    if (c == 'a' || c == 'e' || c == 'd') {
      if (in_matrix_) throw syntax_error("prefix line after clauses", line_no, i + 1);
      auto vars = prefix_vars(words(s, line_no, i + 1), line_no, s.size());
      if (c == 'a') {
        for (const auto& w : vars) {
          quantify(w, Role::Universal, line_no);
          out_.universals.push_back(name(w.value));
        }
      } else if (c == 'e') {
        for (const auto& w : vars) {
          quantify(w, Role::Existential, line_no);
          out_.existentials.push_back({name(w.value), out_.universals});
        }
      } else {
        if (vars.empty()) throw syntax_error("'d' line without a variable", line_no, i + 1);
        quantify(vars[0], Role::Existential, line_no);
        Existential e{name(vars[0].value), {}};
        for (std::size_t k = 1; k < vars.size(); ++k) {
          if (roles_[vars[k].value] != Role::Universal)
            fail(ErrorCode::UndeclaredVariable,
                 std::to_string(line_no) + ":" + std::to_string(vars[k].column) +
                     ": dependency " + std::to_string(vars[k].value) +
                     " is not a declared universal");
          e.deps.push_back(name(vars[k].value));
        }
        out_.existentials.push_back(std::move(e));
      }
      return;
    }
    if (c != '-' && !(c >= '0' && c <= '9'))
      throw syntax_error(std::string("unexpected line starting with '") + c + "'", line_no, i + 1);
    in_matrix_ = true;
    for (const auto& w : words(s, line_no, i)) {
      if (w.value == 0) {
        clauses_.push_back(std::move(pending_));
        pending_.clear();
        continue;
      }
      Word var{w.value < 0 ? -w.value : w.value, w.column};
      check_var(var, line_no);
      if (roles_[var.value] == Role::None)
        fail(ErrorCode::UndeclaredVariable,
             std::to_string(line_no) + ":" + std::to_string(w.column) + ": variable " +
                 std::to_string(var.value) + " is not quantified");
      if (pending_.empty()) {
        pending_line_ = line_no;
        pending_col_ = w.column;
      }
      pending_.push_back(w.value);
    }
  }

  bool header_ = false;
  bool in_matrix_ = false;
  std::size_t num_vars_ = 0;
  std::size_t num_clauses_ = 0;
  std::map<long long, Role> roles_;
  std::vector<std::vector<long long>> clauses_;
  std::vector<long long> pending_;
  std::size_t pending_line_ = 0, pending_col_ = 0;
  DqbfInstance out_;
};

}  // namespace

DqbfInstance parse_dqdimacs(std::string_view text) { return DqdimacsReader().read(text); }

}  // namespace qbsf
