#include "qbsf/textio.hpp"

namespace qbsf {

namespace {

// Binding strength of the printed forms; quantifiers are handled by the
// open_right flag instead, since their body extends to the right.
constexpr int kOr = 1;
constexpr int kAnd = 2;
constexpr int kNot = 3;

void print(const Formula& f, int min_prec, bool open_right, std::string& out) {
  switch (f.kind()) {
    case Kind::Const:
      out += f.value() ? '1' : '0';
      return;
    case Kind::App: {
      out += f.symbol();
      if (f.arity() == 0) return;
      out += '(';
      bool first = true;
      for (const auto& a : f.args()) {
        if (!first) out += ", ";
        first = false;
        print(a, 0, true, out);
      }
      out += ')';
      return;
    }
    case Kind::Not:
      out += '~';
      print(f.operand(), kNot, open_right, out);
      return;
    case Kind::And:
    case Kind::Or: {
      const int prec = f.kind() == Kind::And ? kAnd : kOr;
      const bool parens = prec < min_prec;
      if (parens) out += '(';
      print(f.lhs(), prec, false, out);
      out += f.kind() == Kind::And ? " & " : " | ";
      print(f.rhs(), prec + 1, parens || open_right, out);
      if (parens) out += ')';
      return;
    }
    case Kind::Exists:
    case Kind::Forall: {
      const bool parens = !open_right;
      if (parens) out += '(';
      out += f.quantifier() == Quantifier::Exists ? "exists " : "forall ";
      out += f.symbol();
      if (f.arity() > 0) out += "/" + std::to_string(f.arity());
      out += ' ';
      print(f.body(), 0, true, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, 0, true, out);
  return out;
}

}  // namespace qbsf
