#include <cctype>
#include <map>
#include <memory>
#include <optional>

#include "qbsf/error.hpp"
#include "qbsf/textio.hpp"

namespace qbsf {

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Slash, Tilde, And, Or, Imp, Iff, Exists, Forall, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Slash: return "'/'";
    case Tok::Tilde: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Imp: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Exists: return "'exists'";
    case Tok::Forall: return "'forall'";
    case Tok::End: return "end of input";
  }
  return "token";
}

[[noreturn]] void syntax_error(const std::string& msg, std::size_t line, std::size_t col) {
  throw SyntaxError(std::to_string(line) + ":" + std::to_string(col) + ": " + msg, line, col);
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ';') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), l, cl});
      advance(1);
    };
    switch (c) {
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ',': single(Tok::Comma); continue;
      case '/': single(Tok::Slash); continue;
      case '~': single(Tok::Tilde); continue;
      case '&': single(Tok::And); continue;
      case '|': single(Tok::Or); continue;
      default: break;
    }
    if (s.substr(i, 2) == "->") {
      out.push_back({Tok::Imp, "->", l, cl});
      advance(2);
      continue;
    }
    if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, "<->", l, cl});
      advance(3);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string word(s.substr(i, j - i));
      Tok t = word == "exists" ? Tok::Exists : word == "forall" ? Tok::Forall : Tok::Ident;
      out.push_back({t, std::move(word), l, cl});
      advance(j - i);
      continue;
    }
    syntax_error(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// Parse tree; arities of binders are settled in a second pass.
struct PNode {
  Kind kind = Kind::Const;
  bool value = false;
  std::string name;
  std::optional<unsigned> arity;
  std::vector<std::unique_ptr<PNode>> kids;
  std::size_t line = 0, column = 0;
  bool implication = false, biconditional = false;
};

using PPtr = std::unique_ptr<PNode>;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  PPtr parse_all() {
    PPtr root = parse_iff();
    if (peek().kind != Tok::End) unexpected();
    return root;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void unexpected() const {
    const auto& t = peek();
    syntax_error("unexpected " + std::string(describe(t.kind)) +
                     (t.text.empty() ? "" : " '" + t.text + "'"),
                 t.line, t.column);
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) {
      const auto& t = peek();
      syntax_error("expected " + std::string(describe(kind)) + ", found " +
                       std::string(describe(t.kind)),
                   t.line, t.column);
    }
    return take();
  }

  static PPtr binary(Kind kind, PPtr a, PPtr b, const Token& op) {
    auto n = std::make_unique<PNode>();
    n->kind = kind;
    n->line = op.line;
    n->column = op.column;
    n->kids.push_back(std::move(a));
    n->kids.push_back(std::move(b));
    return n;
  }

  PPtr parse_iff() {
    PPtr lhs = parse_imp();
    while (peek().kind == Tok::Iff) {
      const Token op = take();
      auto n = binary(Kind::And, std::move(lhs), parse_imp(), op);
      n->biconditional = true;
      lhs = std::move(n);
    }
    return lhs;
  }

  PPtr parse_imp() {
    PPtr lhs = parse_or();
    if (peek().kind == Tok::Imp) {
      const Token op = take();
      auto n = binary(Kind::Or, std::move(lhs), parse_imp(), op);
      n->implication = true;
      return n;
    }
    return lhs;
  }

  PPtr parse_or() {
    PPtr lhs = parse_and();
    while (peek().kind == Tok::Or) {
      const Token op = take();
      lhs = binary(Kind::Or, std::move(lhs), parse_and(), op);
    }
    return lhs;
  }

  PPtr parse_and() {
    PPtr lhs = parse_unary();
    while (peek().kind == Tok::And) {
      const Token op = take();
      lhs = binary(Kind::And, std::move(lhs), parse_unary(), op);
    }
    return lhs;
  }

  PPtr parse_unary() {
    const Token& t = peek();
    auto n = std::make_unique<PNode>();
    n->line = t.line;
    n->column = t.column;
    switch (t.kind) {
      case Tok::Tilde:
        take();
        n->kind = Kind::Not;
        n->kids.push_back(parse_unary());
        return n;
      case Tok::Exists:
      case Tok::Forall: {
        n->kind = t.kind == Tok::Exists ? Kind::Exists : Kind::Forall;
        take();
        n->name = expect(Tok::Ident).text;
        if (peek().kind == Tok::Slash) {
          take();
          const Token& num = expect(Tok::Number);
          try {
            n->arity = static_cast<unsigned>(std::stoul(num.text));
          } catch (const std::exception&) {
            syntax_error("arity out of range", num.line, num.column);
          }
        }
        n->kids.push_back(parse_iff());
        return n;
      }
      case Tok::LParen: {
        take();
        PPtr inner = parse_iff();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Number:
        if (t.text != "0" && t.text != "1") syntax_error("constants are 0 or 1", t.line, t.column);
        n->kind = Kind::Const;
        n->value = t.text == "1";
        take();
        return n;
      case Tok::Ident: {
        n->kind = Kind::App;
        n->name = take().text;
        if (peek().kind == Tok::LParen) {
          take();
          n->kids.push_back(parse_iff());
          while (peek().kind == Tok::Comma) {
            take();
            n->kids.push_back(parse_iff());
          }
          expect(Tok::RParen);
        }
        return n;
      }
      default:
        unexpected();
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct Binder {
  std::string name;
  PNode* node;
};

class Builder {
 public:
  Formula build(PNode& n) {
    switch (n.kind) {
      case Kind::Const:
        return Formula::constant(n.value);
      case Kind::App: {
        check_arity(n);
        std::vector<Formula> args;
        for (auto& k : n.kids) args.push_back(build(*k));
        return Formula::app(n.name, std::move(args));
      }
      case Kind::Not:
        return Formula::negate(build(*n.kids[0]));
      case Kind::And:
      case Kind::Or: {
        Formula a = build(*n.kids[0]);
        Formula b = build(*n.kids[1]);
        if (n.biconditional) return Formula::iff(std::move(a), std::move(b));
        if (n.implication) return Formula::implies(std::move(a), std::move(b));
        return n.kind == Kind::And ? Formula::conj(std::move(a), std::move(b))
                                   : Formula::disj(std::move(a), std::move(b));
      }
      case Kind::Exists:
      case Kind::Forall: {
        scope_.push_back({n.name, &n});
        Formula body = build(*n.kids[0]);
        scope_.pop_back();
        return Formula::quantified(n.kind == Kind::Exists ? Quantifier::Exists : Quantifier::Forall,
                                   n.name, n.arity.value_or(0), std::move(body));
      }
    }
    return Formula::constant(false);
  }

 private:
  [[noreturn]] static void mismatch(const PNode& n, unsigned expected) {
    fail(ErrorCode::InconsistentArity,
         std::to_string(n.line) + ":" + std::to_string(n.column) + ": '" + n.name + "' used with " +
             std::to_string(n.kids.size()) + " arguments, expected " + std::to_string(expected));
  }

  void check_arity(const PNode& n) {
    const auto argc = static_cast<unsigned>(n.kids.size());
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name != n.name) continue;
      auto& declared = it->node->arity;
      if (!declared) declared = argc;
      if (*declared != argc) mismatch(n, *declared);
      return;
    }
    auto [it, inserted] = free_.emplace(n.name, argc);
    if (!inserted && it->second != argc) mismatch(n, it->second);
  }

  std::vector<Binder> scope_;
  std::map<std::string, unsigned> free_;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser parser(lex(text));
  PPtr root = parser.parse_all();
  return Builder().build(*root);
}

}  // namespace qbsf
