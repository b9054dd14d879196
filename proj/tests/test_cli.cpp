#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "stone/generators.hpp"
#include "stone/serialize.hpp"

using namespace stone;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string test_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/stone_cli_XXXXXX";
    char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  std::string path = test_dir() + "/" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  std::string out_path = test_dir() + "/out" + std::to_string(counter++) + ".txt";
  std::string cmd = env_prefix + std::string(STONE_GROUPOID_CLI_PATH) + " " + args + " > " +
                    out_path + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  return r;
}

}  // namespace

TEST_CASE("cli: validate a well-formed pair groupoid document") {
  auto path = write_file("pair.json", groupoid_to_json(pair_groupoid(2)).dump());
  auto r = run_cli("validate " + path);
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["valid"] == true);
  CHECK(j["violations"].empty());
}

TEST_CASE("cli: validate reports violations and exits 1") {
  auto j = groupoid_to_json(one_object_groupoid(cyclic_group(2)));
  j["inv"][1] = 0;  // break the inverse law
  auto path = write_file("broken.json", j.dump());
  auto r = run_cli("validate " + path);
  CHECK(r.exit_code == 1);
  auto rep = json::parse(r.out);
  CHECK(rep["valid"] == false);
  CHECK(!rep["violations"].empty());
}

TEST_CASE("cli: malformed input is a format error (exit 2)") {
  auto path = write_file("garbage.json", "this is not json");
  CHECK(run_cli("validate " + path).exit_code == 2);
  CHECK(run_cli("pi0 " + path).exit_code == 2);
}

TEST_CASE("cli: unknown flags are usage errors (exit 2)") {
  CHECK(run_cli("pi0 --frobnicate").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code == 2);
}

TEST_CASE("cli: pi0 and isotropy") {
  auto path = write_file("pair3.json", groupoid_to_json(pair_groupoid(3)).dump());
  auto r = run_cli("pi0 " + path);
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["representatives"] == json::array({0}));
  auto r2 = run_cli("isotropy --object 1 " + path);
  REQUIRE(r2.exit_code == 0);
  CHECK(json::parse(r2.out)["elements"].size() == 1);
  CHECK(run_cli("isotropy --object 9 " + path).exit_code == 1);
}

TEST_CASE("cli: quotient by the units is an equivalent groupoid") {
  auto z4 = one_object_groupoid(cyclic_group(4));
  auto in_path = write_file("z4.json", groupoid_to_json(z4).dump());
  auto units_path = write_file("units.json", subset_to_json({0}).dump());
  auto r = run_cli("quotient --normal " + units_path + " " + in_path);
  REQUIRE(r.exit_code == 0);
  auto out = groupoid_from_json(json::parse(r.out)).groupoid;
  CHECK(out.morphism_count() == 4);
  CHECK(equivalence_oracle(out, z4));
}

TEST_CASE("cli: outputs feed back through validate") {
  auto in_path = write_file("trans.json", tower_to_json(translation_tower(2, 2)).dump());
  auto r = run_cli("skeletonize " + in_path);
  REQUIRE(r.exit_code == 0);
  auto skel_path = write_file("skel_out.json", r.out);
  CHECK(run_cli("validate " + skel_path).exit_code == 0);

  auto g = run_cli("gen --kind random --seed 3 --components 3");
  REQUIRE(g.exit_code == 0);
  auto gen_path = write_file("gen_out.json", g.out);
  CHECK(run_cli("validate " + gen_path).exit_code == 0);
}

TEST_CASE("cli: gen piped through the pipeline lists the cyclic orders") {
  auto r = run_cli("gen --kind cyclic-tower --p 2 --depth 3");
  REQUIRE(r.exit_code == 0);
  auto tower_path = write_file("ct.json", r.out);
  auto p = run_cli("realize --pipeline " + tower_path);
  REQUIRE(p.exit_code == 0);
  auto pres = json::parse(p.out);
  REQUIRE(pres["levels"].size() == 3);
  CHECK(pres["levels"][0]["groups"][0]["elements"].size() == 2);
  CHECK(pres["levels"][1]["groups"][0]["elements"].size() == 4);
  CHECK(pres["levels"][2]["groups"][0]["elements"].size() == 8);
  // the pipeline subcommand gives the same result
  auto p2 = run_cli("pipeline " + tower_path);
  REQUIRE(p2.exit_code == 0);
  CHECK(p2.out == p.out);
}

TEST_CASE("cli: vandantzig with a trace file") {
  auto in_path = write_file("z4b.json",
                            groupoid_to_json(one_object_groupoid(cyclic_group(4))).dump());
  auto u_path = write_file("u.json", subset_to_json({0, 1, 3}).dump());
  std::string trace_path = test_dir() + "/vd_trace.json";
  auto r = run_cli("vandantzig --neighborhood " + u_path + " --trace " + trace_path + " " +
                   in_path);
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out)["morphisms"] == json::array({0}));
  auto tr = json::parse(slurp(trace_path));
  CHECK(tr["H1"] == json::array({0}));
  CHECK(tr["K"] == json::array({0, 1, 3}));
}

TEST_CASE("cli: check-equiv and the oracle bound variable") {
  auto f = skeletal_replacement(pair_groupoid(2)).inclusion;
  auto f_path = write_file("incl.json", functor_to_json(f).dump());
  auto r = run_cli("check-equiv --functor " + f_path);
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["fully_faithful"] == true);
  CHECK(j["essentially_surjective"] == true);
  CHECK(j["whitehead"] == true);
  CHECK(j["equivalence"] == true);
  CHECK(j["oracle"] == true);

  auto r2 = run_cli("check-equiv --functor " + f_path, "STONE_GROUPOID_ORACLE_BOUND=2 ");
  REQUIRE(r2.exit_code == 0);
  auto j2 = json::parse(r2.out);
  CHECK(j2["oracle"].is_null());
  CHECK(j2.contains("oracle_refused"));

  CHECK(run_cli("check-equiv --functor " + f_path, "STONE_GROUPOID_ORACLE_BOUND=bogus ")
            .exit_code == 2);
}

TEST_CASE("cli: threads on a tower") {
  auto in_path = write_file("ct3.json", tower_to_json(cyclic_tower(2, 3)).dump());
  auto r = run_cli("threads --depth 2 " + in_path);
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["objects"].size() == 1);
  CHECK(j["morphisms"].size() == 8);
  CHECK(run_cli("threads --depth 7 " + in_path).exit_code == 1);
}

TEST_CASE("cli: basis and reconstruct") {
  auto in_path = write_file("z4c.json",
                            groupoid_to_json(one_object_groupoid(cyclic_group(4))).dump());
  auto r = run_cli("basis " + in_path);
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["subgroupoids"].size() == 3);
  CHECK(j["subgroupoids"][1] == json::array({0, 2}));
  auto r2 = run_cli("reconstruct " + in_path);
  REQUIRE(r2.exit_code == 0);
  CHECK(json::parse(r2.out)["bijective"] == true);
}

TEST_CASE("cli: separate and collapse on a skeletal input") {
  auto e = disjoint_union(one_object_groupoid(cyclic_group(2)),
                          one_object_groupoid(cyclic_group(3)));
  auto in_path = write_file("e.json", groupoid_to_json(e).dump());
  auto r = run_cli("separate " + in_path);
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out)["family"].size() == 3);  // one partition + two collapses
  auto r2 = run_cli("collapse --object 0 " + in_path);
  REQUIRE(r2.exit_code == 0);
  auto f = functor_from_json(json::parse(r2.out));
  CHECK(validate_functor(f).ok());
  // non-skeletal input is a domain error
  auto pair_path = write_file("pairc.json", groupoid_to_json(pair_groupoid(2)).dump());
  CHECK(run_cli("collapse --object 0 " + pair_path).exit_code == 1);
}

TEST_CASE("cli: core of a wide subgroupoid") {
  auto s3 = one_object_groupoid(symmetric_group_3());
  auto in_path = write_file("s3.json", groupoid_to_json(s3).dump());
  auto h_path = write_file("h.json", subset_to_json({0, 1}).dump());
  auto r = run_cli("core --subgroupoid " + h_path + " " + in_path);
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out)["morphisms"] == json::array({0}));
}

TEST_CASE("cli: realize a skeletal groupoid directly") {
  auto e = disjoint_union(one_object_groupoid(cyclic_group(2)),
                          one_object_groupoid(cyclic_group(3)));
  auto in_path = write_file("real.json", groupoid_to_json(e).dump());
  auto r = run_cli("realize " + in_path);
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["components"] == 2);
  REQUIRE(j["groups"].size() == 2);
  CHECK(j["groups"][0]["elements"].size() == 2);
  CHECK(j["groups"][1]["elements"].size() == 3);
  // non-skeletal input asks for skeletonization first
  auto pair_path = write_file("pairr.json", groupoid_to_json(pair_groupoid(2)).dump());
  CHECK(run_cli("realize " + pair_path).exit_code == 1);
}

TEST_CASE("cli: standard input via -") {
  auto path = write_file("stdin_pair.json", groupoid_to_json(pair_groupoid(2)).dump());
  static int counter = 900;
  std::string out_path = test_dir() + "/out" + std::to_string(counter++) + ".txt";
  std::string cmd = std::string(STONE_GROUPOID_CLI_PATH) + " pi0 - < " + path + " > " + out_path;
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(json::parse(slurp(out_path))["representatives"] == json::array({0}));
}
