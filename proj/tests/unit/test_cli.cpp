#include <cstdio>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "files.hpp"
#include "json.hpp"
#include "qbsf/cli.hpp"
#include "qbsf/textio.hpp"
#include "qbsf/transforms.hpp"

using namespace qbsf;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "qbsf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

const std::string kExample = "exists f/2 forall x forall y (x & y <-> f(x,y))\n";

}  // namespace

TEST_CASE("solve") {
  const auto r = run_cli({"solve", test::data_path("example.qbsf")});
  CHECK(r.code == 0);
  CHECK(r.out == "TRUE\n");
  const auto w = run_cli({"solve", "-", "--witness"}, kExample);
  CHECK(w.out == "TRUE\nwitness f/2 0001\n");
  CHECK(run_cli({"solve", "-"}, "0").out == "FALSE\n");
  const auto bad = run_cli({"solve", "-"}, "f(x");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("-:1:4:") != std::string::npos);
  CHECK(run_cli({"solve", "-"}, "exists f/5 f(0,0,0,0,0)").code == 10);
  CHECK(run_cli({"solve", "-", "--max-arity", "1"}, kExample).code == 10);
  CHECK(run_cli({"solve", "-"}, "x").code == 1);
  CHECK(run_cli({"solve", "/nonexistent/file.qbsf"}).code == 1);
}

TEST_CASE("classify") {
  const auto r = run_cli({"classify", "-"}, kExample);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["prenex"] == true);
  CHECK(j["cnf"] == false);
  CHECK(j["uniq"] == true);
  CHECK(j["signature"] == nlohmann::json::parse(
                              R"({"soType":"Sigma","soCount":1,"soAlt":1,"foType":"Pi","foCount":2,"foAlt":1})"));
  const auto one = nlohmann::json::parse(run_cli({"classify", "-"}, "1").out);
  CHECK(one["prenex"] == true);
  CHECK(one["signature"]["soCount"] == 0);
  CHECK(one["signature"]["foCount"] == 0);
  const auto np = run_cli({"classify", "-"}, "a & exists p p");
  CHECK(np.code == 0);
  CHECK(nlohmann::json::parse(np.out)["signature"].is_null());
  CHECK(run_cli({"classify", "-", "--signature"}, "a & exists p p").code == 3);
  CHECK(run_cli({"classify", "-", "--signature", "--split", "strict"},
                "exists f/2 exists x forall g/1 (g(x) | f(x, x))")
            .code == 3);
}

TEST_CASE("transform") {
  const auto r = run_cli({"transform", "-", "--alt-reduce", "--check"}, "exists f/1 exists x1 f(x1)");
  CHECK(r.code == 0);
  CHECK(parse_formula(r.out) ==
        parse_formula("exists h/3 forall x1 (h(1,0,0) & (~h(1,1,x1) | h(0,x1,0)) & (~h(1,0,0) | h(1,1,0) | h(1,1,1)))"));
  CHECK(r.err == "check: equivalent\n");
  const auto once = run_cli({"transform", "-", "--dualize"}, kExample);
  const auto twice = run_cli({"transform", "-", "--dualize"}, once.out);
  CHECK(parse_formula(twice.out) == dualize(dualize(parse_formula(kExample))));
  CHECK(run_cli({"transform", "-", "--merge", "f", "g", "h"}, "exists f/1 exists g/2 f(x)").code == 4);
  CHECK(run_cli({"transform", "-", "--prenex"}, "f(g(x))").code == 4);
  CHECK(run_cli({"transform", "-", "--pad", "f", "3"}, "exists f/1 forall x f(x)").out ==
        "exists f/3 forall x f(x, 0, 0)\n");
  CHECK(run_cli({"transform", "-", "--flatten", "--check"}, "f(g(x))").code == 0);
  CHECK(run_cli({"transform", "-"}, "x").code == 1);
}

TEST_CASE("from-dqbf, encode-machine and tableau-verify") {
  const auto d = run_cli({"from-dqbf", test::data_path("dqdimacs/valid/simple.dqdimacs")});
  CHECK(d.code == 0);
  CHECK(run_cli({"solve", "-"}, d.out).out == "TRUE\n");
  CHECK(run_cli({"from-dqbf", test::data_path("dqdimacs/malformed/05_dependency_not_universal.dqdimacs")}).code == 2);

  const auto e = run_cli({"encode-machine", test::data_path("mq.om.json"), "--oracles", "1", "--first", "exists"});
  CHECK(e.code == 0);
  CHECK(run_cli({"solve", "-"}, e.out).out == "TRUE\n");
  const auto f = run_cli({"encode-machine", test::data_path("mq.om.json"), "--first", "forall", "--dnf"});
  CHECK(run_cli({"solve", "-"}, f.out).out == "FALSE\n");
  CHECK(run_cli({"encode-machine", test::data_path("mq.om.json"), "--input", "11"}).code == 1);

  const auto t = run_cli({"tableau-verify", test::data_path("toy.atm.json"), "--input", "10"});
  CHECK(t.code == 0);
  CHECK(t.out == "AGREE\n");
  CHECK(run_cli({"tableau-verify", test::data_path("toy.atm.json"), "--input", "10", "--max-nodes", "1"}).code == 1);
}

TEST_CASE("usage, output files and determinism") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
  const auto path = (std::filesystem::temp_directory_path() / "qbsf_cli_test.out").string();
  const auto r = run_cli({"solve", "-", "-o", path}, kExample);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(test::read_file(path) == "TRUE\n");
  std::remove(path.c_str());
  const std::string enc = test::data_path("mq.om.json");
  CHECK(run_cli({"encode-machine", enc}).out == run_cli({"encode-machine", enc}).out);
}
