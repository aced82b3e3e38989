#include "doctest.h"
#include "files.hpp"
#include "generators.hpp"
#include "qbsf/analysis.hpp"
#include "qbsf/error.hpp"
#include "qbsf/textio.hpp"

using namespace qbsf;

namespace {

Formula V(const char* n) { return Formula::var(n); }

std::string syntax_location(std::string_view text) {
  try {
    (void)parse_formula(text);
  } catch (const SyntaxError& e) {
    return std::to_string(e.line()) + ":" + std::to_string(e.column());
  }
  return "none";
}

}  // namespace

TEST_CASE("parse the Example") {
  const Formula f = parse_formula("exists f/2 forall x forall y (x & y <-> f(x,y))");
  const Formula xy = Formula::conj(V("x"), V("y"));
  const Formula fxy = Formula::app("f", {V("x"), V("y")});
  const Formula expected =
      Formula::exists("f", 2, Formula::forall("x", 0, Formula::forall("y", 0, Formula::iff(xy, fxy))));
  CHECK(f == expected);
}

TEST_CASE("parse basics") {
  CHECK(parse_formula("1") == Formula::constant(true));
  CHECK(parse_formula("  0 ; comment") == Formula::constant(false));
  CHECK(parse_formula("a | b & c") == Formula::disj(V("a"), Formula::conj(V("b"), V("c"))));
  CHECK(parse_formula("a -> b -> c") == Formula::implies(V("a"), Formula::implies(V("b"), V("c"))));
  CHECK(parse_formula("~a & b") == Formula::conj(Formula::negate(V("a")), V("b")));
  CHECK(parse_formula("exists p p & q") == Formula::exists("p", 0, Formula::conj(V("p"), V("q"))));
  // Omitted arity comes from the first use, 0 if unused.
  CHECK(parse_formula("exists f f(x)").arity() == 1);
  CHECK(parse_formula("exists f 1").arity() == 0);
}

TEST_CASE("parse errors carry positions") {
  CHECK(syntax_location("f(x") == "1:4");
  CHECK(syntax_location("a &\n  & b") == "2:3");
  CHECK(syntax_location("exists 1") == "1:8");
  CHECK(syntax_location("a $ b") == "1:3");
  try {
    (void)parse_formula("f(x) & f(x, y)");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentArity);
  }
  try {
    (void)parse_formula("exists f/2 f(x)");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentArity);
  }
}

TEST_CASE("print") {
  CHECK(print_formula(Formula::constant(true)) == "1");
  CHECK(print_formula(parse_formula("f(g(x), 0)")) == "f(g(x), 0)");
  CHECK(print_formula(parse_formula("(a | b) & c")) == "(a | b) & c");
  CHECK(print_formula(parse_formula("a | (b & c)")) == "a | b & c");
  const Formula ex = parse_formula("exists f/2 forall x forall y (x & y <-> f(x,y))");
  CHECK(parse_formula(print_formula(ex)) == ex);
}

TEST_CASE("parse . print round trip on generated formulas") {
  test::FormulaGen gen(3);
  for (int i = 0; i < 500; ++i) {
    const Formula f = gen.over({{"x", 0}, {"f", 2}}, {});
    const std::string s = print_formula(f);
    REQUIRE_MESSAGE(parse_formula(s) == f, s);
    CHECK(print_formula(parse_formula(s)) == s);
  }
}

TEST_CASE("DQDIMACS examples") {
  const DqbfInstance d = parse_dqdimacs("p cnf 2 1\na 1 0\nd 2 1 0\n2 -1 0\n");
  CHECK(d.universals == std::vector<std::string>{"v1"});
  CHECK(d.existentials == std::vector<Existential>{{"v2", {"v1"}}});
  CHECK(d.matrix == Formula::disj(V("v2"), Formula::negate(V("v1"))));
  CHECK(parse_dqdimacs("p cnf 0 0\n").matrix == Formula::constant(true));
  try {
    (void)parse_dqdimacs("p cnf 3 1\na 1 0\nd 2 3 0\n2 0\n");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndeclaredVariable);
  }
}

TEST_CASE("DQDIMACS sample files") {
  for (const auto& path : test::files_in("dqdimacs/valid")) {
    CAPTURE(path);
    const DqbfInstance d = parse_dqdimacs(test::read_file(path));
    const Formula wrapped = Formula::exists("dummy", 0, d.matrix);
    CHECK(is_cnf(wrapped));
  }
  const DqbfInstance m = parse_dqdimacs(test::read_file(test::data_path("dqdimacs/valid/mixed.dqdimacs")));
  CHECK(m.universals == std::vector<std::string>{"v1", "v3"});
  CHECK(m.existentials == std::vector<Existential>{{"v2", {"v1"}}, {"v4", {"v3"}}});
  CHECK(m.matrix == parse_formula("(v2 | ~v1) & (~v2 | v1) & (v4 | ~v3 | ~v4 | v3)"));
}

TEST_CASE("malformed DQDIMACS files are rejected with the expected diagnostic") {
  const auto files = test::files_in("dqdimacs/malformed");
  CHECK(files.size() == 10);
  for (const auto& path : files) {
    const auto c = test::check_malformed(path);
    CAPTURE(c.file);
    CHECK(c.actual_code == c.expected_code);
    CHECK(c.actual_line == c.expected_line);
  }
}

TEST_CASE("generated DQDIMACS round trip through the reader") {
  test::FormulaGen gen(5);
  for (int i = 0; i < 100; ++i) {
    const auto raw = test::random_dqbf(gen);
    const DqbfInstance d = parse_dqdimacs(raw.to_dqdimacs());
    CHECK(d.universals.size() == raw.universals.size());
    REQUIRE(d.existentials.size() == raw.existentials.size());
    for (std::size_t k = 0; k < raw.existentials.size(); ++k)
      CHECK(d.existentials[k].deps.size() == raw.existentials[k].second.size());
  }
}
