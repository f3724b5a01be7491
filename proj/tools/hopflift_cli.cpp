// Command-line front end: hopflift [flags] <command> [args].
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hopflift/cli.hpp"
#include "hopflift/errors.hpp"

namespace {

struct Flags {
  std::string config, preset, format = "text", out;
  int N = -1, cutoff = -1;
  bool timings = false;
  std::vector<std::string> f;
};

hopflift::JobConfig assemble(const Flags& fl) {
  hopflift::JobConfig cfg;
  if (!fl.config.empty()) cfg = hopflift::load_config(fl.config);
  if (!fl.preset.empty()) {
    cfg.preset = fl.preset;
    cfg.datum.reset();
  }
  if (fl.N >= 0) {
    if (cfg.datum) throw hopflift::ConfigError("/N", "--N only applies to presets");
    cfg.N = fl.N;
  }
  if (fl.cutoff >= 0) cfg.cutoff = fl.cutoff;
  for (const auto& kv : fl.f) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw hopflift::ConfigError("/f_values", "--f expects NAME=VALUE, got " + kv);
    std::string name = kv.substr(0, eq);
    try {
      cfg.f_values[name] = nlohmann::json(kv.substr(eq + 1)).get<hopflift::CycNum>();
    } catch (const std::exception& e) {
      throw hopflift::ConfigError("/f_values/" + name, e.what());
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact 2-cocycles and lifted Hopf algebras"};
  app.set_help_all_flag("--help-all");
  app.fallthrough();
  Flags fl;
  hopflift::RunOptions opt;
  app.add_option("--config", fl.config, "JSON job config");
  app.add_option("--preset", fl.preset, "a1 | qplane | a2 | qls");
  app.add_option("--N", fl.N, "order of q for a preset");
  app.add_option("--out", fl.out, "artifact path");
  app.add_option("--format", fl.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cutoff", fl.cutoff, "height cutoff");
  app.add_option("--f", fl.f, "generator value NAME=VALUE (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_flag("--timings", fl.timings, "include elapsed times");

  std::string verb;
  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&verb, name] { verb = name; });
    return s;
  };
  sub("lift", "build the cocycle, bosonize, deform and emit the table");
  sub("check", "cocycle and Hopf-axiom suites for the datum");
  auto* oracle = sub("oracle", "independent oracles");
  std::string which;
  oracle->add_option("which", which, "lemma31")->required()->check(CLI::IsMember({"lemma31"}));
  oracle->add_option("--m", opt.m, "power of the first letter");
  oracle->add_option("--n", opt.n, "power of the second letter");
  auto* retr = sub("retraction", "build or verify the coalgebra retraction");
  retr->add_option("action", opt.action, "build | verify")->required()->check(CLI::IsMember({"build", "verify"}));
  retr->add_option("--height", opt.max_height, "largest height to verify");
  sub("theorem33", "compare the q-exponential with the connecting map");
  sub("prop36", "factorization over a vertex split");
  sub("selftest", "acceptance suite, or the datum suite when a datum is given");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    hopflift::JobConfig cfg = assemble(fl);
    if (verb == "selftest" && fl.config.empty() && fl.preset.empty()) cfg = hopflift::JobConfig{};
    opt.timings = fl.timings;
    if (!fl.out.empty()) opt.out = fl.out;
    std::vector<std::string> verbs;
    if (!verb.empty())
      verbs.push_back(verb);
    else
      verbs = cfg.commands;

    std::vector<hopflift::Report> reports;
    for (const auto& v : verbs) reports.push_back(hopflift::run_command(v, cfg, opt));
    bool ok = true;
    if (reports.empty()) {
      hopflift::emit_report(hopflift::Report{}, fl.format, fl.timings, std::cout);
    } else if (fl.format == "json" && reports.size() > 1) {
      nlohmann::json all = nlohmann::json::array();
      for (const auto& r : reports) all.push_back(hopflift::report_to_json(r, fl.timings));
      std::cout << all.dump(2) << "\n";
    } else {
      for (const auto& r : reports) hopflift::emit_report(r, fl.format, fl.timings, std::cout);
    }
    for (const auto& r : reports) ok = ok && r.pass();
    return ok ? 0 : 1;
  } catch (const hopflift::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
