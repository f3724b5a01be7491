#include "hopflift/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "hopflift/acceptance.hpp"
#include "hopflift/cocycle.hpp"
#include "hopflift/errors.hpp"
#include "hopflift/freehopf.hpp"

namespace hopflift {

namespace {

const std::set<std::string> kVerbs{"lift", "check", "oracle", "retraction", "theorem33", "prop36", "selftest"};

template <class T>
T field(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("/" + key, e.what());
  }
}

std::vector<int> one_based(const nlohmann::json& j, const std::string& ptr) {
  std::vector<int> out;
  try {
    for (int v : j.get<std::vector<int>>()) {
      if (v < 1) throw ConfigError(ptr, "vertices are numbered from 1");
      out.push_back(v - 1);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(ptr, e.what());
  }
  return out;
}

std::vector<CycNum> generator_values(const JobConfig& c, const CartanDatum& d) {
  const auto& roots = d.positive_roots();
  std::vector<CycNum> vals(roots.size());
  for (const auto& [name, v] : c.f_values) {
    auto it = std::find_if(roots.begin(), roots.end(), [&](const RootVector& r) { return r.z_name == name; });
    if (it == roots.end()) {
      std::string known;
      for (const auto& r : roots) known += (known.empty() ? "" : ", ") + r.z_name;
      throw ConfigError("/f_values/" + name, "unknown generator (expected one of " + known + ")");
    }
    vals[it - roots.begin()] = v;
  }
  return vals;
}

class Runner {
 public:
  Runner(Report& r, bool timings) : r_(r), timings_(timings) {}

  /// Runs f, records its check with the elapsed time, returns the check.
  Check add(const std::function<Check()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    Check c = f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r_.checks.push_back({c, timings_ ? s : 0.0});
    return c;
  }
  void add_all(const std::function<std::vector<Check>()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto cs = f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& c : cs) r_.checks.push_back({c, timings_ ? s / static_cast<double>(cs.size()) : 0.0});
  }

 private:
  Report& r_;
  bool timings_;
};

void write_artifact(Report& r, const RunOptions& opt, const nlohmann::json& doc) {
  if (!opt.out) return;
  std::ofstream f(*opt.out);
  if (!f) throw Error("cannot write " + *opt.out);
  f << doc.dump(2) << "\n";
  if (!f) throw Error("cannot write " + *opt.out);
  r.artifacts.push_back(*opt.out);
}

Functional functional_from(const Workspace& ws, const std::vector<CycNum>& vals) {
  try {
    return alg_functional_K(ws.K, vals);
  } catch (const InvarianceViolation& e) {
    throw ConfigError("/f_values", e.what());
  }
}

Retraction coalgebra_retraction(const Workspace& ws, Runner& run) {
  if (ws.datum->family() != Family::A2) return retraction_u(ws.alg);
  Retraction u2 = retraction_u2(ws.alg);
  Check law = run.add([&] { return check_coalgebra_law(u2, ws.alg->cutoff()); });
  u2.coalgebra = law.pass;
  return u2;
}

Report lift(const JobConfig& cfg, const RunOptions& opt) {
  Report r{"lift", {}, {}, {}};
  Runner run(r, opt.timings);
  CartanDatum d = make_datum(cfg);
  Workspace ws = Workspace::make(d, cfg.cutoff);
  auto vals = generator_values(cfg, d);
  Functional f = functional_from(ws, vals);
  Retraction u = coalgebra_retraction(ws, run);
  if (!u.coalgebra) return r;
  Functional s = delta_connecting(ws, f, u);
  run.add([&] { return check_factorization(ws, f, u, 4); });
  Check braided = run.add([&] { return check_cocycle_braided(ws, s); });
  auto Y = std::make_shared<const YAlgebra>(ws);
  run.add([&] { return check_cocycle_ordinary(*Y, bosonize_cocycle(Y, s), sample_triples(*Y, 500, 1)); });
  if (!braided.pass) return r;
  LiftedAlgebra A = deform_multiplication(ws, Y, s);
  run.add_all([&] { return A.verify(2, 300); });
  if (d.family() == Family::A1) {
    run.add([&] {
      Check c{"table matches fs(z) x^{m+n-N}(1 - g^N) for m+n >= N", true, ""};
      const std::size_t N = static_cast<std::size_t>(d.N());
      std::size_t e = Y->unit().second, gN = d.group_index({d.N()});
      CycNum fs = -vals[0];
      for (std::size_t m = 0; m < N; ++m)
        for (std::size_t n = 0; n < N; ++n) {
          YElt want;
          if (m + n < N) {
            want.add({m + n, e}, CycNum(1));
          } else {
            want.add({m + n - N, e}, fs);
            want.add({m + n - N, gN}, -fs);
          }
          if (!(A.mul({m, e}, {n, e}) == want)) {
            c.pass = false;
            c.witness = "x^" + std::to_string(m) + " · x^" + std::to_string(n);
            return c;
          }
        }
      return c;
    });
  }
  write_artifact(r, opt, {{"config", config_to_json(cfg)}, {"cocycle", cocycle_to_json(ws, s)},
                          {"lifted", lifted_to_json(A)}});
  return r;
}

Report oracle(const JobConfig& cfg, const RunOptions& opt) {
  Report r{"oracle lemma31", {}, {}, {}};
  Runner run(r, opt.timings);
  CartanDatum d = make_datum(cfg);
  if (d.linking().empty()) throw ConfigError("/datum", "the oracle needs a linked pair");
  if (opt.m < 0 || opt.n < 0) throw ConfigError("", "--m and --n must be nonnegative");
  Lemma31Result res;
  run.add([&] {
    res = lemma31_oracle(opt.m, opt.n, d, d.linking().front());
    Check c{"straightening remainder for (m, n) = (" + std::to_string(opt.m) + ", " + std::to_string(opt.n) +
                ") lies in the ideal of [x_i, z_ji], [x_j, z_ji]",
            res.member, ""};
    if (!res.member) c.witness = std::to_string(res.membership.residual.size()) + " residual terms";
    return c;
  });
  nlohmann::json rem;
  to_json(rem, res.remainder);
  write_artifact(r, opt, {{"m", opt.m}, {"n", opt.n}, {"member", res.member}, {"remainder", rem}});
  return r;
}

Report retraction(const JobConfig& cfg, const RunOptions& opt) {
  if (opt.action != "build" && opt.action != "verify")
    throw ConfigError("", "retraction needs 'build' or 'verify'");
  Report r{"retraction " + opt.action, {}, {}, {}};
  Runner run(r, opt.timings);
  CartanDatum d = make_datum(cfg);
  Workspace ws = Workspace::make(d, cfg.cutoff);
  int h = opt.max_height >= 0 ? opt.max_height : std::min(12, ws.alg->cutoff());
  std::optional<Retraction> u;
  if (opt.action == "build") {
    run.add([&] {
      auto b = build_coalgebra_retraction(ws.alg);
      Check c{"coalgebra retraction solved height by height", bool(b.retraction), b.note};
      if (b.failure) c.witness = "no solution at " + ws.alg->str(*b.failure) + (b.note.empty() ? "" : ": " + b.note);
      u = b.retraction;
      return c;
    });
  } else {
    u = d.family() == Family::A2 ? retraction_u2(ws.alg) : retraction_u(ws.alg);
  }
  if (!u) return r;
  run.add_all([&] { return verify_retraction(*u, h); });
  write_artifact(r, opt, retraction_to_json(*u));
  return r;
}

Report theorem33(const JobConfig& cfg, const RunOptions& opt) {
  Report r{"theorem33", {}, {}, {}};
  Runner run(r, opt.timings);
  CartanDatum d = make_datum(cfg);
  if (d.family() != Family::QPLANE) throw ConfigError("/preset", "theorem33 needs the quantum plane");
  Workspace ws = Workspace::make(d, cfg.cutoff);
  DerivationK der;
  try {
    der = derivation_K(*ws.alg, generator_values(cfg, d));
  } catch (const InvarianceViolation& e) {
    throw ConfigError("/f_values", e.what());
  }
  Theorem33Report t;
  run.add([&] {
    t = theorem33_check(ws, der);
    return t.equal;
  });
  run.add([&] { return t.reversed; });
  r.notes.push_back("level: " + t.level);
  if (!t.note.empty()) r.notes.push_back(t.note);
  write_artifact(r, opt, {{"delta_exp", cocycle_to_json(ws, t.delta_exp)}, {"exp_q", cocycle_to_json(ws, t.exp_q)},
                          {"level", t.level}});
  return r;
}

Report prop36(const JobConfig& cfg, const RunOptions& opt) {
  Report r{"prop36", {}, {}, {}};
  Runner run(r, opt.timings);
  CartanDatum d = make_datum(cfg);
  std::vector<int> S = cfg.S, T = cfg.T;
  if (S.empty() && T.empty()) {
    if (d.linking().empty()) throw ConfigError("/split", "give a split or use a datum with a linked pair");
    S = {d.linking().front().first, d.linking().front().second};
    for (int v = 0; v < d.theta(); ++v)
      if (std::find(S.begin(), S.end(), v) == S.end()) T.push_back(v);
  }
  if (S.empty() || T.empty()) throw ConfigError("/split", "S and T must both be nonempty (the default split puts the first linked pair in S and the other vertices in T)");
  auto vals = generator_values(cfg, d);
  try {
    run.add([&] { return prop36_check(d, S, T, vals); });
  } catch (const InvarianceViolation& e) {
    throw ConfigError("/f_values", e.what());
  }
  return r;
}

Report selftest(const JobConfig& cfg, const RunOptions& opt) {
  Report r{"selftest", {}, {}, {}};
  Runner run(r, opt.timings);
  if (cfg.preset || cfg.datum) {
    CartanDatum d = make_datum(cfg);
    run.add_all([&] { return preset_suite(d); });
    return r;
  }
  for (int id = 1; id <= criterion_count(); ++id) {
    CriterionResult c = run_criterion(id);
    r.checks.push_back({Check{std::to_string(id) + ". " + c.title, c.pass, c.pass ? "" : c.detail},
                        opt.timings ? c.seconds : 0.0});
  }
  return r;
}

}  // namespace

JobConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  static const std::set<std::string> known{"preset", "N", "datum", "f_values", "cutoff", "commands", "split"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("/" + k, "unknown field");
  JobConfig c;
  if (j.contains("datum")) {
    if (j.contains("preset")) throw ConfigError("/preset", "give either 'preset' or 'datum', not both");
    try {
      c.datum = j.at("datum").get<DatumSpec>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("/datum", e.what());
    } catch (const InvalidArgument& e) {
      throw ConfigError("/datum", e.what());
    }
    c.N = c.datum->N;
  } else if (j.contains("preset")) {
    c.preset = field<std::string>(j, "preset");
    if (!j.contains("N")) throw ConfigError("/N", "missing field 'N'");
    c.N = field<int>(j, "N");
  } else {
    throw ConfigError("/preset", "missing field 'preset' (or 'datum')");
  }
  if (j.contains("f_values")) {
    const auto& f = j.at("f_values");
    if (!f.is_object()) throw ConfigError("/f_values", "must be an object of generator values");
    for (const auto& [name, v] : f.items()) {
      try {
        c.f_values[name] = v.get<CycNum>();
      } catch (const std::exception& e) {
        throw ConfigError("/f_values/" + name, e.what());
      }
    }
  }
  if (j.contains("cutoff")) c.cutoff = field<int>(j, "cutoff");
  if (j.contains("commands")) {
    c.commands = field<std::vector<std::string>>(j, "commands");
    for (std::size_t i = 0; i < c.commands.size(); ++i)
      if (!kVerbs.count(c.commands[i])) throw ConfigError("/commands/" + std::to_string(i), "unknown command");
  }
  if (j.contains("split")) {
    const auto& s = j.at("split");
    if (!s.is_object() || !s.contains("S") || !s.contains("T"))
      throw ConfigError("/split", "needs arrays 'S' and 'T'");
    c.S = one_based(s.at("S"), "/split/S");
    c.T = one_based(s.at("T"), "/split/T");
  }
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("", "cannot open " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("", path + ": " + e.what());
  }
  return parse_config(j);
}

nlohmann::json config_to_json(const JobConfig& c) {
  nlohmann::json j = nlohmann::json::object();
  if (c.datum) {
    j["datum"] = *c.datum;
  } else {
    if (c.preset) j["preset"] = *c.preset;
    j["N"] = c.N;
  }
  if (!c.f_values.empty()) {
    nlohmann::json f = nlohmann::json::object();
    for (const auto& [k, v] : c.f_values) f[k] = v;
    j["f_values"] = f;
  }
  if (c.cutoff >= 0) j["cutoff"] = c.cutoff;
  if (!c.commands.empty()) j["commands"] = c.commands;
  if (!c.S.empty() || !c.T.empty()) {
    auto plus1 = [](std::vector<int> v) {
      for (int& x : v) ++x;
      return v;
    };
    j["split"] = {{"S", plus1(c.S)}, {"T", plus1(c.T)}};
  }
  return j;
}

CartanDatum make_datum(const JobConfig& c) {
  std::optional<CartanDatum> d;
  try {
    d = c.datum ? CartanDatum(*c.datum) : CartanDatum::preset(c.preset.value_or(""), c.N);
  } catch (const InvalidArgument& e) {
    throw ConfigError(c.datum ? "/datum" : "/preset", e.what());
  }
  for (const auto& chk : validate_datum(*d))
    if (!chk.pass) throw ConfigError("/datum", chk.name + ": " + chk.witness);
  return *d;
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.check.pass; });
}

Report run_command(const std::string& cmd, const JobConfig& cfg, const RunOptions& opt) {
  if (cmd == "lift") return lift(cfg, opt);
  if (cmd == "check") {
    Report r{"check", {}, {}, {}};
    Runner run(r, opt.timings);
    CartanDatum d = make_datum(cfg);
    run.add_all([&] { return preset_suite(d); });
    return r;
  }
  if (cmd == "oracle") return oracle(cfg, opt);
  if (cmd == "retraction") return retraction(cfg, opt);
  if (cmd == "theorem33") return theorem33(cfg, opt);
  if (cmd == "prop36") return prop36(cfg, opt);
  if (cmd == "selftest") return selftest(cfg, opt);
  throw ConfigError("", "unknown command '" + cmd + "'");
}

nlohmann::json report_to_json(const Report& r, bool timings) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json e{{"name", c.check.name}, {"pass", c.check.pass}, {"witness", c.check.witness}};
    if (timings) e["seconds"] = c.seconds;
    checks.push_back(e);
  }
  return nlohmann::json{{"command", r.command}, {"checks", checks}, {"artifacts", r.artifacts},
                        {"notes", r.notes}, {"pass", r.pass()}};
}

std::string report_to_text(const Report& r, bool timings) {
  std::ostringstream os;
  if (!r.command.empty()) os << "command: " << r.command << "\n";
  for (const auto& c : r.checks) {
    os << (c.check.pass ? "[PASS] " : "[FAIL] ") << c.check.name;
    if (!c.check.witness.empty()) os << ": " << c.check.witness;
    if (timings) os << std::fixed << std::setprecision(3) << " (" << c.seconds << " s)";
    os << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  for (const auto& a : r.artifacts) os << "artifact: " << a << "\n";
  os << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

void emit_report(const Report& r, const std::string& format, bool timings, std::ostream& os) {
  if (format == "json")
    os << report_to_json(r, timings).dump(2) << "\n";
  else if (format == "text")
    os << report_to_text(r, timings);
  else
    throw ConfigError("", "unknown format '" + format + "'");
}

}  // namespace hopflift
