// One PASS/FAIL line per acceptance criterion. Agreement criteria tolerate
// zero mismatches; runtime bounds are wall-clock seconds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "files.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "qbsf/analysis.hpp"
#include "qbsf/clausal.hpp"
#include "qbsf/error.hpp"
#include "qbsf/machine.hpp"
#include "qbsf/semantics.hpp"
#include "qbsf/solver.hpp"
#include "qbsf/tableau.hpp"
#include "qbsf/textio.hpp"
#include "qbsf/transforms.hpp"
#include "reference.hpp"
#include "tableau_oracle.hpp"
#include "toy_atms.hpp"
#include "toy_oms.hpp"

using namespace qbsf;

namespace {

constexpr double kSemanticsSeconds = 60.0;
constexpr double kAltReduceSeconds = 600.0;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

int g_failed = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  g_failed += pass ? 0 : 1;
}

std::string summary(const Tally& t) {
  std::string s = std::to_string(t.cases) + " checks, " + std::to_string(t.failures) + " failures";
  if (t.failures) s += "; first: " + t.first_failure;
  return s;
}

/// Runs `body`; an escaping exception counts as a failure.
void guarded(Tally& t, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    t.check(false, std::string("exception: ") + e.what());
  }
}

// 1 ------------------------------------------------------------------------

void semantics_suite() {
  Tally t;
  const auto t0 = Clock::now();
  test::FormulaGen gen(1001);
  test::GenConfig cfg;  // <= 3 quantifiers, arity <= 2, depth <= 4
  guarded(t, [&] {
    for (int i = 0; i < 500; ++i) {
      const Formula f = gen.closed(cfg);
      const bool exhaustive = evaluate(f, {}, {}, EvalMode::Exhaustive);
      t.check(decide(f).value == exhaustive, print_formula(f));
      t.check(test::ref_eval(f) == exhaustive, "reference: " + print_formula(f));
    }
  });
  const double secs = since(t0);
  report(1, "semantics oracle", t.failures == 0 && t.cases >= 1000 && secs < kSemanticsSeconds,
         summary(t) + ", " + std::to_string(secs) + " s (limit 60 s)");
}

// 2 ------------------------------------------------------------------------

void example_golden() {
  Tally t;
  guarded(t, [&] {
    const Formula f = parse_formula(test::read_file(test::data_path("example.qbsf")));
    const Formula expected = Formula::exists(
        "f", 2,
        Formula::forall("x", 0,
                        Formula::forall("y", 0,
                                        Formula::iff(Formula::conj(Formula::var("x"), Formula::var("y")),
                                                     Formula::app("f", {Formula::var("x"), Formula::var("y")})))));
    t.check(f == expected, "parse");
    using B = BlockType;
    t.check(signature_of(f) == FragmentSignature{B::Sigma, 1, 1, B::Pi, 2, 1}, "signature Sigma11 Pi21");
    t.check(in_fragment(f, {B::Sigma, kOmega, 1, B::Pi, kOmega, 1}), "in Sigma^w_1 Pi^w_1");
    t.check(!in_fragment(f, {B::Pi, 1, 1, B::Sigma, kOmega, kOmega}), "not in Pi^1_1 Sigma^w_w");
    t.check(!in_fragment(f, {B::Sigma, 1, 1, B::Pi, 1, 1}), "not in Sigma^1_1 Pi^1_1");
    const Verdict v = decide(f);
    t.check(v.value, "TRUE");
    t.check(v.witness && v.witness->at("f").to_bits() == "0001", "witness 0001");
  });
  report(2, "example golden", t.failures == 0, summary(t));
}

// 3 ------------------------------------------------------------------------

void positions(const Formula& f, Position& at, std::vector<Position>& out) {
  out.push_back(at);
  const auto kids = f.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    at.push_back(i);
    positions(kids[i], at, out);
    at.pop_back();
  }
}

Formula equivalent_replacement(const Formula& s, test::FormulaGen& gen) {
  switch (gen.below(6)) {
    case 0:
      return Formula::negate(Formula::negate(s));
    case 1:
      if (s.kind() == Kind::And)
        return Formula::negate(
            Formula::disj(Formula::negate(s.children()[0]), Formula::negate(s.children()[1])));
      if (s.kind() == Kind::Or)
        return Formula::negate(
            Formula::conj(Formula::negate(s.children()[0]), Formula::negate(s.children()[1])));
      return Formula::negate(Formula::negate(s));
    case 2:
      return Formula::conj(s, Formula::constant(true));
    case 3:
      return Formula::disj(Formula::constant(false), s);
    case 4:
      return nnf(s);
    default:
      if (s.is_quantifier())
        return Formula::negate(Formula::quantified(dual(s.quantifier()), s.symbol(), s.arity(),
                                                   Formula::negate(s.body())));
      return Formula::disj(s, s);
  }
}

void substitution_invariance() {
  Tally t;
  test::FormulaGen gen(3003);
  const std::vector<test::Symbol> free{{"x", 0}, {"y", 0}, {"f", 1}};
  guarded(t, [&] {
    while (t.cases < 400) {
      const Formula f = gen.over(free, {});
      std::vector<Position> all;
      Position at;
      positions(f, at, all);
      const Position pos = all[gen.below(all.size())];
      const Formula& s = subformula_at(f, pos);
      const Formula r = equivalent_replacement(s, gen);
      t.check(equivalent(s, r), "replacement " + print_formula(r) + " for " + print_formula(s));
      const Formula g = substitute(f, pos, r);
      SymbolArities symbols = free_symbols(f);
      for (const auto& [name, arity] : free_symbols(g)) symbols.emplace(name, arity);
      bool same = true;
      for_each_interpretation(symbols, {}, [&](const Interpretation& in) {
        same = evaluate(f, in) == evaluate(g, in);
        return same;
      });
      t.check(same, print_formula(f) + " -> " + print_formula(g));
    }
  });
  report(3, "substitution invariance", t.failures == 0 && t.cases >= 400,
         std::to_string(t.cases / 2) + " triples; " + summary(t));
}

// 4 ------------------------------------------------------------------------

Formula clausal_matrix(test::FormulaGen& gen, const std::vector<test::Symbol>& scope, bool cnf) {
  std::vector<Formula> groups;
  for (const auto& g : gen.clausal(scope, 1 + static_cast<unsigned>(gen.below(3)), 3))
    groups.push_back(cnf ? Formula::disj_all(g) : Formula::conj_all(g));
  return cnf ? Formula::conj_all(groups) : Formula::disj_all(groups);
}

Formula with_prefix(Formula body, const std::vector<Binder>& prefix) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    body = Formula::quantified(it->quantifier, it->symbol, it->arity, body);
  return body;
}

unsigned arity_of(const Formula& f, const std::string& name) { return free_symbols(f).at(name); }

void alternation_reduction() {
  Tally a, b, c;
  const auto t0 = Clock::now();
  test::FormulaGen gen(4004);
  std::size_t instances = 0;
  SolveLimits limits;
  limits.max_steps = std::uint64_t{1} << 40;
  for (int i = 0; i < 120; ++i) {
    const Quantifier q = gen.coin() ? Quantifier::Exists : Quantifier::Forall;
    const bool cnf = q == Quantifier::Exists;
    const unsigned m = 1 + static_cast<unsigned>(gen.below(2));
    const std::size_t k = gen.below(3);
    std::vector<Binder> props;
    std::vector<test::Symbol> scope{{"f", m}};
    for (std::size_t j = 1; j <= k; ++j) {
      const std::string x = "x" + std::to_string(j);
      props.push_back({gen.coin() ? Quantifier::Exists : Quantifier::Forall, x, 0});
      scope.push_back({x, 0});
    }
    const Formula h = clausal_matrix(gen, scope, cnf);
    const Formula part = with_prefix(h, props);
    const Formula phi = Formula::quantified(q, "f", m, part);
    ++instances;
    const std::string tag = print_formula(phi);

    guarded(a, [&] {
      Formula reduced;
      if (cnf) {
        const Formula theta = build_theta(part, "g", m);
        reduced = Formula::exists("g", arity_of(theta, "g"), theta);
      } else {
        const Formula theta = build_theta(dualize(part), "g", m);
        reduced = Formula::forall("g", arity_of(theta, "g"), dualize(theta));
      }
      bool same = true;
      for_each_interpretation({{"f", m}}, {}, [&](const Interpretation& in) {
        same = decide_under(reduced, in, limits) == decide_under(part, in, limits);
        return same;
      });
      a.check(same, tag);
    });

    guarded(b, [&] {
      const Formula padded = pad_arity(phi, "f", 2);
      b.check(decide(padded).value == decide(phi).value, "pad " + tag);
      std::vector<test::Symbol> two = scope;
      two.push_back({"f2", m});
      const Formula h2 = clausal_matrix(gen, two, cnf);
      const Formula pair =
          Formula::quantified(q, "f", m, Formula::quantified(q, "f2", m, with_prefix(h2, props)));
      const Formula merged = merge_functions(pair, "f", "f2", "h");
      b.check(equivalent(pair, merged), "merge " + print_formula(pair));
    });

    guarded(c, [&] {
      const Formula xi = alt_reduce(phi);
      const auto pre = prefix_of(xi);
      const unsigned arity = static_cast<unsigned>(std::max<std::size_t>(m, 2 * k)) + 1;
      bool shape = pre.size() == k + 1 && pre[0].quantifier == q && pre[0].arity == arity;
      for (std::size_t j = 1; shape && j < pre.size(); ++j)
        shape = pre[j].arity == 0 && pre[j].quantifier == dual(q);
      c.check(shape, "prefix " + print_formula(xi));
      c.check(cnf ? is_cnf(xi) : is_dnf(xi), "normal form " + print_formula(xi));
      if (arity <= 4) c.check(decide(xi, limits).value == decide(phi).value, "truth " + tag);
    });
  }
  const double secs = since(t0);
  const bool pass = a.failures + b.failures + c.failures == 0 && instances >= 100 && secs < kAltReduceSeconds;
  report(4, "alternation reduction", pass,
         std::to_string(instances) + " instances; (a) " + summary(a) + "; (b) " + summary(b) + "; (c) " +
             summary(c) + "; " + std::to_string(secs) + " s (limit 600 s)");
}

// 5 ------------------------------------------------------------------------

void dqbf_translation() {
  Tally t;
  test::FormulaGen gen(5005);
  guarded(t, [&] {
    for (int i = 0; i < 60; ++i) {
      const auto raw = test::random_dqbf(gen, 3, 2, 2);
      const Formula f = dqbf_to_qbsf(parse_dqdimacs(raw.to_dqdimacs()));
      t.check(decide(f).value == test::dqbf_true_by_skolem(raw), raw.to_dqdimacs());
      t.check(is_uniq(f), "uniq " + print_formula(f));
    }
  });
  report(5, "DQBF translation", t.failures == 0 && t.cases >= 100, "60 instances; " + summary(t));
}

// 6 ------------------------------------------------------------------------

void machine_encoding() {
  Tally t;
  const auto oms = test::toy_oms();
  for (const auto& tm : oms) {
    guarded(t, [&] {
      const OracleMachine& m = tm.machine;
      const std::size_t l = m.num_oracles;
      const unsigned bits = static_cast<unsigned>(m.window.query_bits);
      t.check(m.time_bound <= 8 && l <= 2 && bits <= 2, tm.name + " size");
      for (const char* x : {"0", "1"}) {
        const std::string tag = tm.name + " on " + x;
        const Formula cnf = encode_run(m, x, Quantifier::Exists);
        const Formula body = test::strip_binders(cnf, l);
        test::for_each_family(l, bits, [&](const OracleFamily& fam) {
          t.check(evaluate(body, test::family_interpretation(fam)) == run_machine(m, x, fam).accept,
                  tag + " family");
        });
        if (tm.single_query) t.check(is_uniq(cnf), tag + " uniq");
        for (Quantifier q : {Quantifier::Exists, Quantifier::Forall}) {
          const bool expected = test::accepts_alternating(m, x, q);
          t.check(decide(encode_run(m, x, q)).value == expected, tag + " cnf prefix");
          const Formula dnf = encode_run_dnf(m, x, q);
          t.check(is_dnf(dnf) && decide(dnf).value == expected, tag + " dnf prefix");
        }
      }
    });
  }
  report(6, "machine encoding", t.failures == 0 && oms.size() >= 5,
         std::to_string(oms.size()) + " machines; " + summary(t));
}

// 7 ------------------------------------------------------------------------

void tableau_simulation() {
  Tally sim, val, group;
  std::size_t corpus = 0;
  std::mt19937_64 rng(7007);
  const auto atms = test::toy_atms();
  for (const auto& [name, spec] : atms) {
    guarded(sim, [&] {
      const AtmView v(spec);
      const test::RefAtm ref(spec);
      sim.check(spec.phase_len <= 3 && spec.phase_count <= 3, name + " size");
      for (const auto& x : test::inputs_up_to(2)) {
        const std::string tag = name + " on '" + x + "'";
        sim.check(verify_simulation(v, x).agree, tag);
        const auto entries = test::mutation_corpus(v, ref, x, rng, 4);
        for (const auto& e : entries) {
          const bool got = check_val(v, e.enc);
          val.check(got == test::ref_val(v, ref, e.enc) && (!e.generated || got), tag + " check_val");
        }
        corpus += entries.size();
        for (int k = 0; k < 60; ++k) {
          std::vector<TableauEncoding> tuple;
          for (std::size_t i = 0; i < v.m(); ++i) tuple.push_back(entries[rng() % entries.size()].enc);
          group.check(eval_v1(v, x, tuple) == eval_v1_grouped(v, x, tuple), tag + " grouping");
        }
      }
    });
  }
  const bool pass = sim.failures + val.failures + group.failures == 0 && atms.size() >= 5 && corpus >= 1000;
  report(7, "tableau simulation", pass,
         std::to_string(atms.size()) + " machines, corpus " + std::to_string(corpus) + "; simulation " +
             summary(sim) + "; check_val " + summary(val) + "; grouping " + summary(group));
}

// 8 ------------------------------------------------------------------------

void format_round_trips() {
  Tally t;
  guarded(t, [&] {
    test::FormulaGen gen(8008);
    std::vector<Formula> corpus{parse_formula(test::read_file(test::data_path("example.qbsf")))};
    for (int i = 0; i < 300; ++i) corpus.push_back(gen.over({{"x", 0}, {"f", 2}}, {}));
    for (int i = 0; i < 300; ++i) corpus.push_back(gen.closed({}));
    for (const auto& f : corpus) {
      const std::string s = print_formula(f);
      t.check(parse_formula(s) == f && print_formula(parse_formula(s)) == s, s);
    }
    for (const auto& path : test::files_in("dqdimacs/valid")) {
      const DqbfInstance d = parse_dqdimacs(test::read_file(path));
      t.check(is_cnf(d.matrix) || d.matrix.is_const(), path);
    }
    for (int i = 0; i < 100; ++i) {
      const auto raw = test::random_dqbf(gen);
      const DqbfInstance d = parse_dqdimacs(raw.to_dqdimacs());
      t.check(d.universals.size() == raw.universals.size() && d.existentials.size() == raw.existentials.size(),
              raw.to_dqdimacs());
    }
  });
  Tally bad;
  std::size_t malformed = 0;
  guarded(bad, [&] {
    for (const auto& path : test::files_in("dqdimacs/malformed")) {
      ++malformed;
      const auto c = test::check_malformed(path);
      bad.check(c.ok(), path + ": got " + c.actual_code + " at line " + std::to_string(c.actual_line));
    }
  });
  report(8, "format round trips", t.failures + bad.failures == 0 && malformed == 10,
         "round trips " + summary(t) + "; malformed files " + std::to_string(malformed) + ", " + summary(bad));
}

}  // namespace

int main() {
  semantics_suite();
  example_golden();
  substitution_invariance();
  alternation_reduction();
  dqbf_translation();
  machine_encoding();
  tableau_simulation();
  format_round_trips();
  std::printf("%s: %d of 8 criteria failed\n", g_failed ? "FAIL" : "PASS", g_failed);
  return g_failed ? 1 : 0;
}
