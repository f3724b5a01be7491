#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "hopflift/cli.hpp"

using namespace hopflift;
using nlohmann::json;

namespace {

std::string error_pointer(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.pointer();
  }
  return "<no error>";
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hopflift_cli_" + name)).string();
}

int run_cli(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = std::string(HOPFLIFT_CLI) + " " + args + " > " +
                    (stdout_file.empty() ? std::string("/dev/null") : stdout_file) + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json qls_datum_linking_not_invariant() {
  json q = CycNum::root_of_unity(3, 1);
  json qi = CycNum::root_of_unity(3, 1).inv();
  return {{"family", "QLS"},
          {"theta", 3},
          {"N", 3},
          {"group_orders", {9, 9, 9}},
          {"generator_images", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
          {"character_values", {{q, q, q}, {qi, qi, q}, {qi, qi, q}}},
          {"linking", {{1, 2}}}};
}

}  // namespace

TEST_CASE("parse: preset config") {
  JobConfig c = parse_config(json::parse(R"({"preset":"qplane","N":3,"f_values":{"z_1":1,"z_2":2,"z_21":1}})"));
  CHECK(c.preset == "qplane");
  CHECK(c.N == 3);
  CHECK(c.f_values.at("z_2") == CycNum(2));
  CHECK(make_datum(c).positive_roots().size() == 3);
}

TEST_CASE("parse: schema errors carry a JSON pointer") {
  CHECK(error_pointer(json::parse(R"({"preset":"qplane"})")) == "/N");
  CHECK(error_pointer(json::parse(R"({"preset":"qplane","N":"three"})")) == "/N");
  CHECK(error_pointer(json::parse(R"({"preset":"qplane","N":3,"bogus":1})")) == "/bogus");
  CHECK(error_pointer(json::parse(R"({"preset":"qplane","N":3,"f_values":{"z_1":[1]}})")) == "/f_values/z_1");
  CHECK(error_pointer(json::parse(R"({"preset":"qplane","N":3,"commands":["lift","dance"]})")) == "/commands/1");
  CHECK(error_pointer(json::parse(R"({"preset":"qplane","N":3,"split":{"S":[0],"T":[2]}})")) == "/split/S");
  CHECK(error_pointer(json::parse(R"({"N":3})")) == "/preset");
  CHECK(error_pointer(json::parse(R"({"datum":{"family":"A1"}})")) == "/datum");
  try {
    parse_config(json::parse(R"({"preset":"qplane"})"));
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("'N'") != std::string::npos);
  }
}

TEST_CASE("datum errors: invariance names the generator") {
  JobConfig c = parse_config({{"datum", qls_datum_linking_not_invariant()}, {"f_values", {{"z_21", 1}}}});
  try {
    make_datum(c);
    FAIL("expected a datum error");
  } catch (const ConfigError& e) {
    CHECK(e.pointer() == "/datum");
    CHECK(std::string(e.what()).find("z_21") != std::string::npos);
  }
  JobConfig bad_preset = parse_config(json::parse(R"({"preset":"b7","N":3})"));
  CHECK_THROWS_AS(make_datum(bad_preset), ConfigError);
  JobConfig unknown = parse_config(json::parse(R"({"preset":"a1","N":3,"f_values":{"z_9":1}})"));
  try {
    run_command("lift", unknown, {});
    FAIL("expected an unknown-generator error");
  } catch (const ConfigError& e) {
    CHECK(e.pointer() == "/f_values/z_9");
  }
}

TEST_CASE("round trip: parse(emit(c)) == c") {
  std::vector<JobConfig> cs;
  cs.push_back(parse_config(json::parse(R"({"preset":"a2","N":5,"cutoff":20,"commands":["check","lift"]})")));
  JobConfig c;
  c.preset = "qls";
  c.N = 3;
  c.f_values["z_21"] = CycNum::root_of_unity(3, 1) + CycNum(Rational(1, 2));
  c.S = {0, 1};
  c.T = {2};
  cs.push_back(c);
  JobConfig d;
  d.datum = CartanDatum::preset("qplane", 3).spec();
  d.N = 3;
  d.commands = {"theorem33"};
  cs.push_back(d);
  for (const auto& x : cs) {
    CHECK(parse_config(config_to_json(x)) == x);
    CHECK(parse_config(json::parse(config_to_json(x).dump())) == x);
  }
}

TEST_CASE("lift on A1 reproduces the closed form") {
  JobConfig c = parse_config(json::parse(R"({"preset":"a1","N":3,"f_values":{"z":1}})"));
  Report r = run_command("lift", c, {});
  CHECK(r.pass());
  bool closed_form = false;
  for (const auto& rec : r.checks)
    if (rec.check.name.find("table matches") != std::string::npos) closed_form = rec.check.pass;
  CHECK(closed_form);
}

TEST_CASE("commands on presets") {
  JobConfig qp = parse_config(json::parse(R"({"preset":"qplane","N":3})"));
  RunOptions o;
  o.m = 3;
  o.n = 2;
  CHECK(run_command("oracle", qp, o).pass());
  o.action = "build";
  CHECK(run_command("retraction", qp, o).pass());
  CHECK(run_command("check", qp, {}).pass());
  JobConfig qls = parse_config(json::parse(R"({"preset":"qls","N":3,"f_values":{"z_21":2,"z_3":1}})"));
  CHECK(run_command("prop36", qls, {}).pass());
  CHECK_THROWS_AS(run_command("prop36", qp, {}), ConfigError);
  CHECK_THROWS_AS(run_command("dance", qp, {}), ConfigError);
  JobConfig a2 = parse_config(json::parse(R"({"preset":"a2","N":3})"));
  CHECK(run_command("selftest", a2, {}).pass());
}

TEST_CASE("reports: empty, failing, text and json agree") {
  std::ostringstream os;
  emit_report(Report{}, "json", false, os);
  json e = json::parse(os.str());
  CHECK(e["checks"].empty());
  CHECK(e["pass"] == true);

  Report r{"demo", {{Check{"a", true, ""}, 0.5}, {Check{"b", false, "x ⊗ y ⊗ z"}, 0.25}}, {"out.json"}, {"n"}};
  json j = report_to_json(r, false);
  CHECK(j["pass"] == false);
  CHECK(j["checks"][1]["witness"] == "x ⊗ y ⊗ z");
  CHECK_FALSE(j["checks"][0].contains("seconds"));
  CHECK(report_to_json(r, true)["checks"][0]["seconds"] == 0.5);
  std::string text = report_to_text(r, false);
  for (const auto& rec : j["checks"]) {
    std::string line = std::string(rec["pass"] ? "[PASS] " : "[FAIL] ") + rec["name"].get<std::string>();
    CHECK(text.find(line) != std::string::npos);
  }
  CHECK(text.find("x ⊗ y ⊗ z") != std::string::npos);
  CHECK(text.find("result: FAIL") != std::string::npos);
  std::ostringstream bad;
  CHECK_THROWS_AS(emit_report(r, "yaml", false, bad), ConfigError);
}

TEST_CASE("reports: identical runs give identical bytes") {
  JobConfig c = parse_config(json::parse(R"({"preset":"qplane","N":3,"f_values":{"z_1":1,"z_2":2,"z_21":1}})"));
  RunOptions o;
  o.out = tmp_path("det1.json");
  std::ostringstream a, b;
  emit_report(run_command("lift", c, o), "json", false, a);
  std::string art1 = slurp(*o.out);
  o.out = tmp_path("det2.json");
  emit_report(run_command("lift", c, o), "json", false, b);
  std::string art2 = slurp(*o.out);
  CHECK(art1 == art2);
  CHECK(!art1.empty());
  // Reports differ only in the artifact path.
  json ja = json::parse(a.str()), jb = json::parse(b.str());
  ja.erase("artifacts");
  jb.erase("artifacts");
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("executable: exit codes") {
  CHECK(run_cli("--preset qplane --N 3 oracle lemma31 --m 3 --n 2") == 0);
  CHECK(run_cli("--preset a1 --N 3 lift --f z=1") == 0);
  // The q-exponential in the stated order does not match for mixed d.
  CHECK(run_cli("--preset qplane --N 3 theorem33 --f z_1=1 --f z_2=2 --f z_21=1") == 1);
  CHECK(run_cli("--preset qplane --N 3 theorem33 --f z_1=1 --f z_2=2") == 0);
  CHECK(run_cli("--preset nope lift") == 2);
  CHECK(run_cli("--preset qplane lift --f z_21") == 2);
  CHECK(run_cli("--config /nonexistent/x.json check") == 2);
  CHECK(run_cli("--preset qplane retraction sideways") == 2);

  std::string cfg = tmp_path("cfg.json");
  std::ofstream(cfg) << R"({"preset":"qplane"})";
  CHECK(run_cli("--config " + cfg + " check") == 2);

  std::string out = tmp_path("empty.json");
  CHECK(run_cli("--format json", out) == 0);
  CHECK(json::parse(slurp(out))["checks"].empty());

  std::ofstream(cfg) << R"({"preset":"a1","N":3,"f_values":{"z":1},"commands":["lift","check"]})";
  CHECK(run_cli("--config " + cfg + " --format json", out) == 0);
  CHECK(json::parse(slurp(out)).size() == 2);
}
