#include "qbsf/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbsf/analysis.hpp"
#include "qbsf/error.hpp"
#include "qbsf/machine.hpp"
#include "qbsf/semantics.hpp"
#include "qbsf/solver.hpp"
#include "qbsf/tableau.hpp"
#include "qbsf/textio.hpp"
#include "qbsf/transforms.hpp"

namespace qbsf::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Common {
  std::string input;
  std::string output;
  unsigned max_arity = SolveLimits{}.max_arity;
  std::uint64_t max_steps = SolveLimits{}.max_steps;

  SolveLimits limits() const { return {max_arity, max_steps}; }
};

// Thrown for I/O problems; maps to kFailure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Context {
 public:
  Context(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  std::string read(const std::string& path) const {
    if (path == "-") {
      std::ostringstream s;
      s << in_.rdbuf();
      return s.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  // Everything a command prints goes through here so --output applies.
  void emit(const Common& c, const std::string& text) const {
    if (c.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw IoError("cannot write '" + c.output + "'");
    f << text;
  }

  std::ostream& err() const { return err_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_common(CLI::App* sub, Common& c, bool with_limits = true) {
  sub->add_option("file", c.input, "Input file, or - for standard input")->required();
  sub->add_option("-o,--output", c.output, "Write the result to this file");
  if (with_limits) {
    sub->add_option("--max-arity", c.max_arity, "Largest enumerated arity")
        ->check(CLI::Range(0u, 6u));
    sub->add_option("--max-steps", c.max_steps, "Enumeration step budget")
        ->check(CLI::PositiveNumber);
  }
}

ordered_json count_json(Count c) {
  if (c == kOmega) return "omega";
  return c;
}

ordered_json signature_json(const FragmentSignature& s) {
  ordered_json j;
  j["soType"] = std::string(to_string(s.so_type));
  j["soCount"] = count_json(s.so_count);
  j["soAlt"] = count_json(s.so_alt);
  j["foType"] = std::string(to_string(s.fo_type));
  j["foCount"] = count_json(s.fo_count);
  j["foAlt"] = count_json(s.fo_alt);
  return j;
}

std::string witness_lines(const Verdict& v) {
  std::string out;
  if (!v.witness) return out;
  for (const auto& b : v.witness_binders) {
    out += "witness " + b.symbol + "/" + std::to_string(b.arity) + " " + v.witness->at(b.symbol).to_bits() + "\n";
  }
  return out;
}

struct SolveOpts {
  Common c;
  bool witness = false;
};

int cmd_solve(const Context& ctx, const SolveOpts& o) {
  const Formula f = parse_formula(ctx.read(o.c.input));
  const Verdict v = decide(f, o.c.limits());
  std::string text = v.value ? "TRUE\n" : "FALSE\n";
  if (o.witness) text += witness_lines(v);
  ctx.emit(o.c, text);
  return kOk;
}

struct ClassifyOpts {
  Common c;
  bool signature = false;
  std::string policy = "maximal";
};

int cmd_classify(const Context& ctx, const ClassifyOpts& o) {
  const Formula f = parse_formula(ctx.read(o.c.input));
  const Classification cl = classify(f);
  ordered_json j;
  j["prenex"] = cl.prenex;
  j["simple"] = cl.simple;
  j["cnf"] = cl.cnf;
  j["dnf"] = cl.dnf;
  j["uniq"] = cl.uniq;
  if (o.signature) {
    const SplitPolicy policy = o.policy == "strict" ? SplitPolicy::Strict : SplitPolicy::Maximal;
    j["signature"] = signature_json(signature_of(f, policy));
  } else {
    j["signature"] = cl.signature ? signature_json(*cl.signature) : ordered_json(nullptr);
  }
  j["warnings"] = lint(f);
  ctx.emit(o.c, j.dump(2) + "\n");
  return kOk;
}

struct TransformOpts {
  Common c;
  bool flatten = false, prenex = false, dualize = false, alt_reduce = false, check = false;
  std::vector<std::string> pad;    // f m*
  std::vector<std::string> merge;  // f g h
};

unsigned parse_unsigned(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used == s.size() && v <= 64) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(what, "expected a small non-negative integer, got '" + s + "'");
}

int cmd_transform(const Context& ctx, const TransformOpts& o) {
  const int chosen = o.flatten + o.prenex + o.dualize + o.alt_reduce + !o.pad.empty() + !o.merge.empty();
  if (chosen != 1) {
    ctx.err() << "transform: choose exactly one of --flatten, --prenex, --dualize, --alt-reduce, "
                 "--pad, --merge\n";
    return kFailure;
  }
  const Formula f = parse_formula(ctx.read(o.c.input));
  Formula g;
  if (o.flatten) g = flatten(f);
  if (o.prenex) g = to_prenex(f);
  if (o.dualize) g = dualize(f);
  if (o.alt_reduce) g = alt_reduce(f);
  if (!o.pad.empty()) g = pad_arity(f, o.pad[0], parse_unsigned(o.pad[1], "--pad"));
  if (!o.merge.empty()) g = merge_functions(f, o.merge[0], o.merge[1], o.merge[2]);
  ctx.emit(o.c, print_formula(g) + "\n");
  if (!o.check) return kOk;

  // dualize negates; everything else preserves truth.
  const SymbolArities fs = free_symbols(f), gs = free_symbols(g);
  bool same;
  if (fs.empty() && gs.empty()) {
    const bool a = decide(f, o.c.limits()).value, b = decide(g, o.c.limits()).value;
    same = o.dualize ? a != b : a == b;
  } else if (fs == gs) {
    same = o.dualize ? equivalent(Formula::negate(f), g, o.c.limits().eval())
                     : equivalent(f, g, o.c.limits().eval());
  } else {
    ctx.err() << "check: skipped, free symbols differ\n";
    return kOk;
  }
  ctx.err() << (same ? "check: equivalent\n" : "check: NOT equivalent\n");
  return same ? kOk : kFailure;
}

int cmd_from_dqbf(const Context& ctx, const Common& c) {
  const DqbfInstance d = parse_dqdimacs(ctx.read(c.input));
  ctx.emit(c, print_formula(dqbf_to_qbsf(d)) + "\n");
  return kOk;
}

struct EncodeOpts {
  Common c;
  std::size_t oracles = 0;
  std::string first = "exists";
  bool dnf = false;
  std::optional<std::string> input_word;
};

int cmd_encode_machine(const Context& ctx, const EncodeOpts& o) {
  std::string word;
  OracleMachine m = machine_from_json(ctx.read(o.c.input), &word);
  if (o.input_word) word = *o.input_word;
  if (o.oracles > 0 && o.oracles != m.num_oracles) {
    m.num_oracles = o.oracles;
    validate(m);
  }
  const Quantifier first = o.first == "forall" ? Quantifier::Forall : Quantifier::Exists;
  const Formula f = o.dnf ? encode_run_dnf(m, word, first) : encode_run(m, word, first);
  ctx.emit(o.c, print_formula(f) + "\n");
  return kOk;
}

struct TableauOpts {
  Common c;
  std::optional<std::string> input_word;
  std::size_t max_nodes = 100000;
};

std::string encoding_line(const TableauEncoding& a, const CellWidths& w) {
  std::string s = "{";
  bool first = true;
  for (auto word : a.words()) {
    if (!first) s += ",";
    first = false;
    std::string bits(w.total(), '0');
    for (unsigned k = 0; k < w.total(); ++k)
      if ((word >> (w.total() - 1 - k)) & 1) bits[k] = '1';
    s += bits;
  }
  return s + "}";
}

int cmd_tableau_verify(const Context& ctx, const TableauOpts& o) {
  std::string word;
  const AtmSpec spec = atm_from_json(ctx.read(o.c.input), &word);
  if (o.input_word) word = *o.input_word;
  const AtmView v(spec);
  const SimulationReport r = verify_simulation(v, word, o.max_nodes);
  std::string text = r.agree ? "AGREE\n" : "DISAGREE\n";
  if (!r.agree) {
    auto b = [](bool x) { return x ? "1" : "0"; };
    text += std::string("quantified=") + b(r.quantified) + " k-accepting=" + b(r.k_accepting) +
            " direct=" + b(r.direct) + " grouping=" + (r.grouping_agrees ? "agrees" : "differs") + "\n";
    const CellWidths w = CellWidths::of(v);
    for (std::size_t i = 0; i < r.counterexample.size(); ++i)
      text += "A" + std::to_string(i + 1) + " = " + encoding_line(r.counterexample[i], w) + "\n";
  }
  ctx.emit(o.c, text);
  return r.agree ? kOk : kFailure;
}

bool is_parse_error(ErrorCode c) {
  return c == ErrorCode::SyntaxError || c == ErrorCode::HeaderMismatch ||
         c == ErrorCode::UndeclaredVariable || c == ErrorCode::InconsistentArity;
}

bool is_transform_shape(ErrorCode c) {
  switch (c) {
    case ErrorCode::ShapeMismatch:
    case ErrorCode::ArityMismatch:
    case ErrorCode::QuantifierTypeMismatch:
    case ErrorCode::NotAdjacent:
    case ErrorCode::ArityShrink:
    case ErrorCode::NotPrenex:
    case ErrorCode::NotCNF:
    case ErrorCode::NotPropositionalPrefix:
    case ErrorCode::WidthTooSmall:
    case ErrorCode::CaptureDetected:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantified Boolean second-order formula toolkit", "qbsf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qbsf 1.0.0");

  SolveOpts solve;
  auto* s_solve = app.add_subcommand("solve", "Decide a closed formula");
  add_common(s_solve, solve.c);
  s_solve->add_flag("--witness", solve.witness, "Print tables for the leading block");

  ClassifyOpts classify_o;
  auto* s_classify = app.add_subcommand("classify", "Report shape and fragment signature as JSON");
  add_common(s_classify, classify_o.c, false);
  s_classify->add_flag("--signature", classify_o.signature, "Require a signature (exit 3 if not prenex)");
  s_classify->add_option("--split", classify_o.policy, "Function/proposition split policy")
      ->check(CLI::IsMember({"maximal", "strict"}));

  TransformOpts tr;
  auto* s_transform = app.add_subcommand("transform", "Rewrite a formula");
  add_common(s_transform, tr.c);
  s_transform->add_flag("--flatten", tr.flatten, "Make every argument a constant or proposition");
  s_transform->add_flag("--prenex", tr.prenex, "Move all quantifiers to the front");
  s_transform->add_flag("--dualize", tr.dualize, "Flip the prefix and negate the matrix");
  s_transform->add_flag("--alt-reduce", tr.alt_reduce, "Fold the proposition prefix into one function");
  s_transform->add_option("--pad", tr.pad, "Pad function F to arity M")->expected(2)->type_name("F M");
  s_transform->add_option("--merge", tr.merge, "Merge adjacent functions F and G into H")
      ->expected(3)
      ->type_name("F G H");
  s_transform->add_flag("--check", tr.check, "Verify the result against the input");

  Common dq;
  auto* s_dqbf = app.add_subcommand("from-dqbf", "Translate a DQDIMACS instance");
  add_common(s_dqbf, dq, false);

  EncodeOpts enc;
  auto* s_encode = app.add_subcommand("encode-machine", "Encode an oracle machine run");
  add_common(s_encode, enc.c, false);
  s_encode->add_option("--oracles", enc.oracles, "Number of oracle sets");
  s_encode->add_option("--first", enc.first, "Quantifier of the first oracle")
      ->check(CLI::IsMember({"exists", "forall"}));
  s_encode->add_flag("--dnf", enc.dnf, "Universal DNF form");
  s_encode->add_option("--input", enc.input_word, "Input word (overrides the file)");

  TableauOpts tab;
  auto* s_tableau = app.add_subcommand("tableau-verify", "Check the tableau simulation of an ATM");
  add_common(s_tableau, tab.c, false);
  s_tableau->add_option("--input", tab.input_word, "Input word (overrides the file)");
  s_tableau->add_option("--max-nodes", tab.max_nodes, "Phase tree size cap")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "qbsf 1.0.0\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qbsf: " << e.what() << "\n";
    return kFailure;
  }

  const Context ctx(in, out, err);
  std::string input;
  try {
    if (s_solve->parsed()) {
      input = solve.c.input;
      return cmd_solve(ctx, solve);
    }
    if (s_classify->parsed()) {
      input = classify_o.c.input;
      return cmd_classify(ctx, classify_o);
    }
    if (s_transform->parsed()) {
      input = tr.c.input;
      return cmd_transform(ctx, tr);
    }
    if (s_dqbf->parsed()) {
      input = dq.input;
      return cmd_from_dqbf(ctx, dq);
    }
    if (s_encode->parsed()) {
      input = enc.c.input;
      return cmd_encode_machine(ctx, enc);
    }
    if (s_tableau->parsed()) {
      input = tab.c.input;
      return cmd_tableau_verify(ctx, tab);
    }
  } catch (const SyntaxError& e) {
    err << input << ":" << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << input << ": " << e.what() << "\n";
    if (is_parse_error(e.code())) return kParseError;
    if (e.code() == ErrorCode::LimitExceeded) return kLimit;
    if (s_classify->parsed() && (e.code() == ErrorCode::NotPrenex || e.code() == ErrorCode::NotSplittable))
      return kClassifyShape;
    if (s_transform->parsed() && is_transform_shape(e.code())) return kTransformShape;
    return kFailure;
  } catch (const CLI::ValidationError& e) {
    err << "qbsf: " << e.what() << "\n";
    return kFailure;
  } catch (const IoError& e) {
    err << "qbsf: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace qbsf::cli
