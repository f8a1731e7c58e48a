// End-to-end driver tests: subcommand behavior, exit codes, stream
// separation, report formats, and machine-output determinism, all exercised
// in-process through main_dispatch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "pcgroup/cli.hpp"

using namespace pcg;
using Catch::Matchers::ContainsSubstring;

namespace {

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliResult result;
  result.exit_code = main_dispatch(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

/** Writes `text` to a fresh file under the system temp directory and removes
 *  it on scope exit. */
class TempFile {
 public:
  TempFile(const std::string& tag, const std::string& text) {
    path_ = (std::filesystem::temp_directory_path() /
             ("pcgroup_test_" + tag + "_" + std::to_string(counter()++) +
              ".pc"))
                .string();
    std::ofstream out(path_, std::ios::binary);
    out << text;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string path_;
};

}  // namespace

TEST_CASE("audit on a small dihedral group reports its witnesses") {
  const CliResult r = cli({"audit", "--family", "dihedral:8"});
  CHECK(r.exit_code == 0);
  CHECK_THAT(r.out, ContainsSubstring("6 witnesses"));
  CHECK_THAT(r.out, ContainsSubstring("theorem_A"));
  CHECK_THAT(r.out, ContainsSubstring("pass"));
  CHECK(r.err.empty());
}

TEST_CASE("lemma filter runs only the requested verifier") {
  const CliResult r =
      cli({"lemmas", "--family", "quaternion:8", "--only", "R"});
  CHECK(r.exit_code == 0);
  CHECK_THAT(r.out, ContainsSubstring("vacuous"));
  CHECK_THAT(r.out, !ContainsSubstring("hall_petrescu"));
  const CliResult two =
      cli({"lemmas", "--family", "dihedral:8", "--only", "D,central"});
  CHECK(two.exit_code == 0);
  CHECK_THAT(two.out, ContainsSubstring("D"));
  CHECK_THAT(two.out, ContainsSubstring("central"));
  CHECK_THAT(two.out, !ContainsSubstring("blackburn"));
}

TEST_CASE("all lemmas on one group pass or are vacuous") {
  const CliResult r = cli({"lemmas", "--family", "wreath_cyclic:3"});
  CHECK(r.exit_code == 0);
  CHECK_THAT(r.out, ContainsSubstring(", 0 fail"));
  for (const std::string& id : lemma_ids())
    CHECK_THAT(r.out, ContainsSubstring(id));
}

TEST_CASE("check on a parse-broken file exits 2 with the position") {
  const TempFile bad("depth", "pcgroup p=2 n=3\ncomm g3 g1 = g2\n");
  const CliResult r = cli({"check", bad.path()});
  CHECK(r.exit_code == 2);
  CHECK(r.out.empty());
  CHECK_THAT(r.err, ContainsSubstring("line 2, column 14"));
  CHECK_THAT(r.err, ContainsSubstring("depth-constraint violation"));
}

TEST_CASE("check on an inconsistent presentation exits 1 with the overlap") {
  const TempFile planted("planted",
                         "pcgroup p=2 n=3\npow g1 = g2\ncomm g2 g1 = g3\n");
  const CliResult r = cli({"check", planted.path()});
  CHECK(r.exit_code == 1);
  CHECK_THAT(r.out, ContainsSubstring("fail"));
  CHECK_THAT(r.out, ContainsSubstring("associativity overlap (g1,g1,g1)"));
}

TEST_CASE("check accepts a valid presentation file") {
  const TempFile good("d8", "pcgroup p=2 n=3\npow g2 = g3\ncomm g2 g1 = g3\n");
  const CliResult r = cli({"check", good.path()});
  CHECK(r.exit_code == 0);
  CHECK_THAT(r.out, ContainsSubstring("consistency"));
  CHECK_THAT(r.out, ContainsSubstring("cayley_sanity"));
  CHECK_THAT(r.out, ContainsSubstring("2 checks: 2 pass, 0 vacuous, 0 fail"));
}

TEST_CASE("witness command honors the mode flags") {
  const CliResult both = cli({"witness", "--family", "dihedral:16"});
  CHECK(both.exit_code == 0);
  CHECK_THAT(both.out, ContainsSubstring("witness_exhaustive"));
  CHECK_THAT(both.out, ContainsSubstring("witness_constructive"));
  const CliResult ex =
      cli({"witness", "--family", "dihedral:16", "--exhaustive"});
  CHECK(ex.exit_code == 0);
  CHECK_THAT(ex.out, ContainsSubstring("witness_exhaustive"));
  CHECK_THAT(ex.out, !ContainsSubstring("witness_constructive"));
  const CliResult co =
      cli({"witness", "--family", "dihedral:16", "--constructive"});
  CHECK(co.exit_code == 0);
  CHECK_THAT(co.out, ContainsSubstring("witness_constructive"));
  CHECK_THAT(co.out, !ContainsSubstring("witness_exhaustive"));
  const CliResult clash = cli(
      {"witness", "--family", "dihedral:16", "--constructive",
       "--exhaustive"});
  CHECK(clash.exit_code == 2);
}

TEST_CASE("witness is vacuous outside the guaranteed range") {
  const CliResult r =
      cli({"witness", "--family", "unitriangular4:2", "--constructive"});
  CHECK(r.exit_code == 0);
  CHECK_THAT(r.out, ContainsSubstring("vacuous"));
  CHECK_THAT(r.out, ContainsSubstring("three or more"));
}

TEST_CASE("audit reports out-of-hypothesis groups without failing") {
  const CliResult r = cli({"audit", "--family", "unitriangular4:2"});
  CHECK(r.exit_code == 0);
  CHECK_THAT(r.out, ContainsSubstring("out of hypothesis"));
  CHECK_THAT(r.out, ContainsSubstring("d(G')=3"));
  CHECK_THAT(r.out, ContainsSubstring("union of commutator sets covers G'"));
}

TEST_CASE("oracle-diff agrees on a built-in group and refuses huge ones") {
  const CliResult ok = cli({"oracle-diff", "--family", "wreath_cyclic:3"});
  CHECK(ok.exit_code == 0);
  CHECK_THAT(ok.out, ContainsSubstring("comparisons agree"));
  const TempFile big("big", "pcgroup p=2 n=13\n");
  const CliResult refused = cli({"oracle-diff", big.path()});
  CHECK(refused.exit_code == 2);
  CHECK_THAT(refused.err, ContainsSubstring("supports orders up to 4096"));
}

TEST_CASE("size bound refuses oversized targets") {
  const CliResult r =
      cli({"check", "--family", "dihedral:512", "--max-order", "256"});
  CHECK(r.exit_code == 2);
  CHECK_THAT(r.err, ContainsSubstring("above the size bound 256"));
  CHECK_THAT(r.err, ContainsSubstring("raise --max-order"));
}

TEST_CASE("usage errors exit 2 and report to stderr") {
  CHECK(cli({}).exit_code == 2);
  CHECK(cli({"frobnicate"}).exit_code == 2);
  CHECK(cli({"audit"}).exit_code == 2);  // no target
  CHECK(cli({"audit", "--family", "frobnitz:8"}).exit_code == 2);
  CHECK(cli({"audit", "/nonexistent/path.pc"}).exit_code == 2);
  CHECK(cli({"lemmas", "--family", "dihedral:8", "--only", "nope"})
            .exit_code == 2);
  CHECK(cli({"corpus", "--format", "yaml"}).exit_code == 2);
  CHECK(cli({"corpus", "--jobs", "0"}).exit_code == 2);
  const TempFile good("dual",
                      "pcgroup p=2 n=3\npow g2 = g3\ncomm g2 g1 = g3\n");
  const CliResult dual = cli({"check", good.path(), "--family", "dihedral:8"});
  CHECK(dual.exit_code == 2);
  CHECK_THAT(dual.err, ContainsSubstring("not both"));
}

TEST_CASE("help output is informative and exits 0") {
  const CliResult r = cli({"--help"});
  CHECK(r.exit_code == 0);
  CHECK_THAT(r.out, ContainsSubstring("check"));
  CHECK_THAT(r.out, ContainsSubstring("lemmas"));
  CHECK_THAT(r.out, ContainsSubstring("corpus"));
}

TEST_CASE("machine format is valid JSON with the documented keys") {
  const CliResult r =
      cli({"audit", "--family", "dihedral:8", "--format", "machine"});
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("format_version") == 1);
  CHECK(doc.at("command") == "audit");
  CHECK(doc.at("seed") == 0);
  REQUIRE(doc.at("results").size() == 1);
  const nlohmann::json& row = doc.at("results").at(0);
  CHECK(row.at("group") == "dihedral:8");
  CHECK(row.at("lemma") == "theorem_A");
  CHECK(row.at("verdict") == "pass");
  CHECK(row.at("counterexample").is_null());
  CHECK(row.at("timings").is_null());
  CHECK_THAT(row.at("note").get<std::string>(),
             ContainsSubstring("6 witnesses"));
}

TEST_CASE("machine format records failures with a counterexample") {
  const TempFile planted("machinefail",
                         "pcgroup p=2 n=3\npow g1 = g2\ncomm g2 g1 = g3\n");
  const CliResult r = cli({"check", planted.path(), "--format", "machine"});
  CHECK(r.exit_code == 1);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  const nlohmann::json& row = doc.at("results").at(0);
  CHECK(row.at("verdict") == "fail");
  CHECK_THAT(row.at("counterexample").get<std::string>(),
             ContainsSubstring("(g1,g1,g1)"));
}

TEST_CASE("corpus obeys the size filter and stays deterministic") {
  const std::vector<std::string> args{"corpus",      "--format", "machine",
                                      "--max-order", "32",       "--seed",
                                      "7"};
  const CliResult first = cli(args);
  REQUIRE(first.exit_code == 0);
  const CliResult second = cli(args);
  CHECK(first.out == second.out);

  std::vector<std::string> jobs_args = args;
  jobs_args.push_back("--jobs");
  jobs_args.push_back("3");
  const CliResult parallel = cli(jobs_args);
  CHECK(first.out == parallel.out);

  const nlohmann::json doc = nlohmann::json::parse(first.out);
  CHECK(doc.at("seed") == 7);
  std::set<std::string> groups;
  for (const nlohmann::json& row : doc.at("results")) {
    groups.insert(row.at("group").get<std::string>());
    CHECK(row.at("verdict") != "fail");
  }
  const std::set<std::string> expected{
      "cyclic:4",         "cyclic:32",        "cyclic:27",
      "elem_abelian:8",   "elem_abelian:9",   "dihedral:8",
      "dihedral:16",      "dihedral:32",      "quaternion:8",
      "quaternion:16",    "quaternion:32",    "semidihedral:16",
      "semidihedral:32",  "heisenberg:3",     "extraspecial:2,2,+",
      "extraspecial:2,2,-",                   "extraspecial:3,1,-",
      "unitriangular3:2", "unitriangular3:3", "wreath_cyclic:2",
      "blackburn_metacyclic:2,2,2,1"};
  CHECK(groups == expected);
  // per group: consistency, sanity, 11 lemmas, audit, 2 witnesses, oracle
  CHECK(doc.at("results").size() == expected.size() * 17);
}

TEST_CASE("human format carries the header and summary lines") {
  const CliResult r = cli({"audit", "--family", "heisenberg:3"});
  CHECK_THAT(r.out,
             ContainsSubstring(
                 "# report format_version=1 command=audit seed=0"));
  CHECK_THAT(r.out, ContainsSubstring("1 checks: 1 pass, 0 vacuous, 0 fail"));
}

TEST_CASE("report emission rejects unknown formats") {
  Report report;
  report.command = "check";
  CHECK_THROWS_AS(emit_report(report, "yaml"), input_error);
}

TEST_CASE("seed selects the sampled-check stream but not the verdict") {
  const CliResult a =
      cli({"check", "--family", "dihedral:512", "--seed", "7",
           "--format", "machine"});
  const CliResult b =
      cli({"check", "--family", "dihedral:512", "--seed", "7",
           "--format", "machine"});
  const CliResult c =
      cli({"check", "--family", "dihedral:512", "--seed", "8",
           "--format", "machine"});
  CHECK(a.exit_code == 0);
  CHECK(c.exit_code == 0);
  CHECK(a.out == b.out);
  const nlohmann::json doc_c = nlohmann::json::parse(c.out);
  CHECK(doc_c.at("seed") == 8);
}
