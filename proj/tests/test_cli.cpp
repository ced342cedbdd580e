#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "fkp/cli.hpp"
#include "fkp/witness.hpp"

using namespace fkp;
using fkp::cli::CommandResult;
using fkp::cli::Options;
using fkp::cli::Status;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the installed binary; captures stdout only.
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FKP_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("canon command reports the canonical spelling") {
  const CommandResult r = fkp::cli::cmd_canon("F6*F10", Options{});
  CHECK(r.exit_code() == 0);
  CHECK(r.text == "F5*F3*F2*F2\n");
  CHECK(r.payload["input"] == "F6*F10");
  CHECK(r.payload["canonical"] == "F5*F3*F2*F2");

  CHECK(fkp::cli::cmd_canon("nonsense", Options{}).exit_code() == 2);
}

TEST_CASE("equiv command distinguishes the two outcomes by exit code") {
  const CommandResult yes = fkp::cli::cmd_equiv("F16*F3", "F48", "p", Options{});
  CHECK(yes.exit_code() == 0);
  CHECK(yes.payload["equivalent"] == true);
  CHECK(yes.payload["lhs_census"] == yes.payload["rhs_census"]);

  const CommandResult no = fkp::cli::cmd_equiv("F9", "F3*F3", "pd", Options{});
  CHECK(no.exit_code() == 1);
  CHECK(no.payload["equivalent"] == false);
  CHECK(no.payload["lhs_census"] != no.payload["rhs_census"]);

  CHECK(fkp::cli::cmd_equiv("F4", "F4", "bogus", Options{}).exit_code() == 2);
}

TEST_CASE("census command can cross check against the oracle") {
  const CommandResult r = fkp::cli::cmd_census("F8*F2", true, Options{});
  CHECK(r.exit_code() == 0);
  const json want = {{"1", 1}, {"2", 3}, {"4", 4}, {"8", 8}};
  CHECK(json(r.payload["census"]) == want);
  CHECK(json(r.payload["oracle"]) == want);
  CHECK(r.payload["agreement"] == true);

  // The formula needs no matrix, so huge sizes pass without the oracle.
  CHECK(fkp::cli::cmd_census("F65536", false, Options{}).exit_code() == 0);
  // The oracle builds the matrix and trips the capacity guard.
  CHECK(fkp::cli::cmd_census("F65536", true, Options{}).exit_code() == 3);
}

TEST_CASE("witness command emits the full certificate schema") {
  const CommandResult r = fkp::cli::cmd_witness("F4*F3", "F12", true, Options{});
  CHECK(r.exit_code() == 0);
  const std::vector<std::string> keys = {"rows", "cols", "lhs",
                                         "rhs",  "steps", "verified"};
  CHECK(r.payload.size() == keys.size());
  for (const auto& key : keys) CHECK(r.payload.contains(key));
  CHECK(r.payload["verified"] == true);
  CHECK(r.payload["lhs"] == "F4*F3");
  CHECK(r.payload["rhs"] == "F12");

  // Round trip: the serialized permutations reproduce the equality.
  std::vector<index_t> rows = r.payload["rows"].get<std::vector<index_t>>();
  std::vector<index_t> cols = r.payload["cols"].get<std::vector<index_t>>();
  const PhaseExpMatrix lhs = build(FkpSpec::parse("F4*F3"));
  const PhaseExpMatrix rhs = build(FkpSpec::parse("F12"));
  CHECK(equal(apply(Permutation(std::move(rows)), lhs, Permutation(std::move(cols))),
              rhs));
}

TEST_CASE("witness command outcomes") {
  const CommandResult no = fkp::cli::cmd_witness("F9", "F3*F3", true, Options{});
  CHECK(no.exit_code() == 1);
  CHECK(no.payload["equivalent"] == false);
  CHECK(no.payload.contains("lhs_census"));

  const CommandResult skipped =
      fkp::cli::cmd_witness("F16*F3", "F48", false, Options{});
  CHECK(skipped.exit_code() == 0);
  CHECK(skipped.payload["verified"] == false);
  CHECK(skipped.payload.contains("note"));

  // Too big to verify under the default budget: witness still emitted.
  const CommandResult capped =
      fkp::cli::cmd_witness("F1024*F3", "F3072", true, Options{});
  CHECK(capped.exit_code() == 3);
  CHECK(capped.payload["verified"] == false);
  CHECK(capped.payload["rows"].size() == 3072);

  Options wide;
  wide.max_n = 4096;
  const CommandResult verified =
      fkp::cli::cmd_witness("F1024*F3", "F3072", true, wide);
  CHECK(verified.exit_code() == 0);
  CHECK(verified.payload["verified"] == true);
}

TEST_CASE("classes command lists representatives and members") {
  const CommandResult r = fkp::cli::cmd_classes(36, true, Options{});
  CHECK(r.exit_code() == 0);
  CHECK(r.payload["count"] == 4);
  REQUIRE(r.payload["classes"].size() == 4);
  CHECK(r.payload["classes"][0]["representative"] == "F9*F4");
  const json members = r.payload["classes"][3]["members"];
  CHECK(members == json::array({"F3*F3*F2*F2", "F6*F3*F2", "F6*F6"}));

  const CommandResult bare = fkp::cli::cmd_classes(16, false, Options{});
  CHECK_FALSE(bare.payload["classes"][0].contains("members"));
  CHECK(fkp::cli::cmd_classes(0, false, Options{}).exit_code() == 2);
}

TEST_CASE("oracle command cross checks the classifier") {
  const CommandResult yes = fkp::cli::cmd_oracle("F2*F3", "F6", Options{});
  CHECK(yes.exit_code() == 0);
  CHECK(yes.payload["agreement"] == true);
  CHECK(yes.payload["witness"]["verified"] == true);

  const CommandResult no = fkp::cli::cmd_oracle("F4", "F2*F2", Options{});
  CHECK(no.exit_code() == 1);
  CHECK(no.payload["agreement"] == true);
  CHECK_FALSE(no.payload.contains("witness"));

  CHECK(fkp::cli::cmd_oracle("F16", "F16", Options{}).exit_code() == 3);
}

TEST_CASE("binary exit codes follow the contract") {
  CHECK(run_cli("canon F72").code == 0);
  CHECK(run_cli("equiv F16*F3 F48").code == 0);
  CHECK(run_cli("equiv F9 'F3*F3'").code == 1);
  CHECK(run_cli("witness F9 'F3*F3'").code == 1);
  CHECK(run_cli("canon F0").code == 2);
  CHECK(run_cli("equiv F4").code == 2);
  CHECK(run_cli("bogus").code == 2);
  CHECK(run_cli("oracle F16 F16").code == 3);
  CHECK(run_cli("witness 'F1024*F3' F3072").code == 3);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("binary output is deterministic and machine readable") {
  const RunResult once = run_cli("--json witness 'F6*F5' F30");
  const RunResult again = run_cli("--json witness 'F6*F5' F30");
  CHECK(once.code == 0);
  CHECK(once.out == again.out);

  const json payload = json::parse(once.out);
  CHECK(payload["verified"] == true);
  CHECK(payload["rows"].size() == 30);

  const RunResult classes = run_cli("--json classes 72 --members");
  const json table = json::parse(classes.out);
  CHECK(table["count"] == 6);

  const RunResult census = run_cli("--json census 'F8*F2' --oracle");
  const json c = json::parse(census.out);
  CHECK(c["agreement"] == true);
}
