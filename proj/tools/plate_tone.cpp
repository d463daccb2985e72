// plate_tone: fundamental tones of free plates on disks and perturbed disks.

#include "plate/ball.hpp"
#include "plate/domain.hpp"
#include "plate/profile.hpp"
#include "plate/quant.hpp"
#include "plate/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

using nlohmann::json;
using namespace plate;

namespace {

struct ConfigError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct RunConfig
{
  std::string command;
  double tau = 1.0;
  int dim = 2;
  std::string problem = "neumann";
  json psi = "cos3";
  std::string eps = "0.02:0.1:5";
  int degree = 20;
  int random = 0;
  std::uint64_t seed = 42;
  std::string out, csv, svg;
};

json to_json(RunConfig const &c)
{
  return {{"schema", kSchema}, {"command", c.command}, {"tau", c.tau},       {"dim", c.dim},
          {"problem", c.problem}, {"psi", c.psi},     {"eps", c.eps},       {"degree", c.degree},
          {"random", c.random},   {"seed", c.seed},   {"out", c.out},       {"csv", c.csv},
          {"svg", c.svg}};
}

std::vector<double> parse_eps(std::string const &text)
{
  auto number = [&](std::string const &s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (std::exception const &) {
      used = 0;
    }
    if (used != s.size() || s.empty()) {
      throw ConfigError("bad number in --eps: '" + s + "'");
    }
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) {
    parts.push_back(item);
  }
  if (parts.size() == 1) {
    return {number(parts[0])};
  }
  if (parts.size() != 3) {
    throw ConfigError("--eps expects a value or start:stop:count");
  }
  double const a = number(parts[0]), b = number(parts[1]);
  double const n = number(parts[2]);
  if (n < 1 || n != std::floor(n)) {
    throw ConfigError("--eps count must be a positive integer");
  }
  int const count = static_cast<int>(n);
  if (count == 1) {
    return {a};
  }
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(a + (b - a) * i / (count - 1));
  }
  return out;
}

// "cosK" / "sinK" presets, or {"cos": [...], "sin": [...]}.
StarDomain parse_psi(json const &value)
{
  if (value.is_string()) {
    std::smatch m;
    std::string const s = value.get<std::string>();
    static std::regex const preset("(cos|sin)([0-9]+)");
    if (!std::regex_match(s, m, preset)) {
      throw ConfigError("unknown psi preset '" + s + "'");
    }
    int const k = std::stoi(m[2]);
    if (k > kMaxMode) {
      throw ConfigError("psi mode exceeds 64");
    }
    StarDomain d(0.0, std::vector<double>(k + 1, 0.0), std::vector<double>(k, 0.0));
    if (m[1] == "cos") {
      d.cos[k] = 1.0;
    } else if (k > 0) {
      d.sin[k - 1] = 1.0;
    }
    return d;
  }
  if (value.is_object()) {
    StarDomain d(0.0, value.value("cos", std::vector<double>{}), value.value("sin", std::vector<double>{}));
    return d;
  }
  throw ConfigError("psi must be a preset name or an object with cos/sin arrays");
}

Problem parse_problem(std::string const &s)
{
  if (s == "neumann") {
    return Problem::Neumann;
  }
  if (s == "steklov") {
    return Problem::Steklov;
  }
  throw ConfigError("problem must be neumann or steklov");
}

void emit(RunConfig const &cfg, json const &doc)
{
  std::string const text = doc.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(cfg.out, text);
  }
}

int ball_tone(RunConfig const &cfg)
{
  SpectralParams const p = solve_ball_params(cfg.dim, cfg.tau);
  double const r2 = radial_part(p, 1.0, 2);
  double const w = boundary_residual(cfg.dim, cfg.tau, p.a);
  bool const ok = std::abs(p.b * p.b - p.a * p.a - p.tau) <= 1e-10 * std::max(1.0, p.tau) &&
                  std::abs(p.a * p.a * p.b * p.b - p.lambda2) <= 1e-10 * p.lambda2 && std::abs(r2) <= 1e-8 &&
                  std::abs(w) <= 1e-8;
  json res = report_json(p);
  res["R2_at_one"] = r2;
  res["boundary_residual"] = w;
  res["invariants_hold"] = ok;
  emit(cfg, document("ball-tone", res));
  return ok ? 0 : 1;
}

int properties(RunConfig const &cfg)
{
  RadialProfile const p = make_profile(cfg.dim, cfg.tau);
  LemmaCheck const c = check_lemma(p);
  json res = report_json(c);
  res["params"] = report_json(p.params);
  res["C1"] = c1_constant(p);
  res["C2"] = c2_constant(p);
  res["cN"] = cN_constant(cfg.dim);
  res["eta"] = eta_constant(cfg.dim, cfg.tau, unit_ball_volume(cfg.dim));
  emit(cfg, document("properties", res));
  return c.all() ? 0 : 1;
}

int bound(RunConfig const &cfg)
{
  std::vector<BoundReport> reports;
  BoundOptions opts;
  opts.degree = cfg.degree;
  if (cfg.random > 0) {
    reports = random_bound_suite(cfg.random, cfg.seed, cfg.tau, opts);
  } else {
    StarDomain d = parse_psi(cfg.psi);
    for (double e : parse_eps(cfg.eps)) {
      d.eps = e;
      reports.push_back(theorem_bound(d, cfg.tau, opts));
    }
  }
  bool ok = true;
  json arr = json::array();
  for (auto const &r : reports) {
    ok = ok && r.holds && r.trial_ordered;
    arr.push_back(report_json(r));
  }
  json res = reports.size() == 1 ? arr[0] : json{{"reports", arr}, {"all_hold", ok}};
  if (cfg.random > 0) {
    res["seed"] = cfg.seed;
  }
  emit(cfg, document("bound", res));
  return ok ? 0 : 1;
}

int asymmetry(RunConfig const &cfg)
{
  StarDomain d = parse_psi(cfg.psi);
  json arr = json::array();
  for (double e : parse_eps(cfg.eps)) {
    d.eps = e;
    d.validate();
    FraenkelResult const f = fraenkel_search(d);
    double const a = area(d);
    arr.push_back({{"eps", e},
                   {"area", a},
                   {"area_gap", std::abs(a - 3.14159265358979323846)},
                   {"asymmetry", f.asymmetry},
                   {"center", {f.center.x(), f.center.y()}},
                   {"class_P", d.is_class_P(1e-14)}});
  }
  emit(cfg, document("asymmetry", json{{"psi", parse_psi(cfg.psi)}, {"records", arr}}));
  return 0;
}

std::string sibling(std::string const &path, std::string const &ext)
{
  auto const dot = path.find_last_of('.');
  auto const slash = path.find_last_of('/');
  bool const has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? path.substr(0, dot) : path) + ext;
}

int sharpness(RunConfig const &cfg)
{
  StarDomain const psi = parse_psi(cfg.psi);
  if (!psi.is_class_P(1e-14)) {
    throw ClassPError("psi has modes 0, 1 or 2; it is outside the perturbation class");
  }
  SharpnessOptions opts;
  opts.degree = cfg.degree;
  SharpnessReport const rep = sharpness_sweep(psi, parse_eps(cfg.eps), cfg.tau, parse_problem(cfg.problem), opts);

  bool chain = true;
  for (auto const &r : rep.records) {
    chain = chain && r.chain_ordered;
  }
  bool const slope_ok = std::isfinite(rep.slope) && rep.slope >= 1.8 && rep.slope <= 2.2;
  json res = report_json(rep);
  res["slope_in_window"] = slope_ok;
  res["chain_ordered"] = chain;
  emit(cfg, document("sharpness", res));

  std::string csv = cfg.csv, svg = cfg.svg;
  if (!cfg.out.empty()) {
    if (csv.empty()) {
      csv = sibling(cfg.out, ".csv");
    }
    if (svg.empty()) {
      svg = sibling(cfg.out, ".svg");
    }
  }
  if (!csv.empty()) {
    write_file_atomic(csv, sharpness_csv(rep));
  } else {
    std::cout << sharpness_csv(rep);
  }
  if (!svg.empty()) {
    write_file_atomic(svg, sharpness_svg(rep));
  }
  return slope_ok && chain ? 0 : 1;
}

void fail(std::string const &kind, std::string const &message)
{
  std::cerr << json{{"schema", kSchema}, {"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Fundamental tones of free plates on disks and perturbed disks"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_file, dump_config, psi_flag;
  std::uint64_t seed = 42;
  std::vector<CLI::Option *> overrides;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--config", config_file, "JSON configuration file; flags override it");
    sub->add_option("--dump-config", dump_config, "write the resolved configuration as JSON");
    sub->add_option("--out", cfg.out, "JSON report path (stdout when omitted)");
  };
  auto add = [&](CLI::App *sub, std::string const &name, auto &target, std::string const &help) {
    overrides.push_back(sub->add_option(name, target, help));
  };

  auto *ball = app.add_subcommand("ball-tone", "tone and parameters of the unit ball");
  auto *props = app.add_subcommand("properties", "structural checks of the trial profile and the constants");
  auto *bnd = app.add_subcommand("bound", "quantitative inequality on a domain or a seeded random suite");
  auto *asym = app.add_subcommand("asymmetry", "area and Fraenkel asymmetry of perturbed disks");
  auto *sharp = app.add_subcommand("sharpness", "eps sweep of the tone gap with a log-log slope fit");

  for (auto *sub : {ball, props, bnd, asym, sharp}) {
    common(sub);
    add(sub, "--tau", cfg.tau, "tension parameter");
  }
  for (auto *sub : {ball, props}) {
    add(sub, "--dim", cfg.dim, "dimension (2 or 3)");
  }
  for (auto *sub : {bnd, asym, sharp}) {
    add(sub, "--psi", psi_flag, "perturbation: cosK, sinK, or a JSON object {\"cos\": [...], \"sin\": [...]}");
    add(sub, "--eps", cfg.eps, "eps value or start:stop:count");
  }
  for (auto *sub : {bnd, sharp}) {
    add(sub, "--degree", cfg.degree, "polynomial degree of the Galerkin space");
  }
  add(bnd, "--random", cfg.random, "number of seeded random class-P domains");
  add(bnd, "--seed", seed, "random seed");
  add(sharp, "--problem", cfg.problem, "neumann or steklov");
  add(sharp, "--csv", cfg.csv, "CSV output path");
  add(sharp, "--svg", cfg.svg, "SVG plot path");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    fail("config", e.what());
    return 2;
  }

  CLI::App *sub = app.get_subcommands().front();
  std::string const command = sub->get_name();

  try {
    RunConfig resolved;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) {
        throw ConfigError("cannot read config file " + config_file);
      }
      json j;
      try {
        j = json::parse(in);
      } catch (json::exception const &e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
      }
      if (j.contains("command") && j["command"] != command) {
        throw ConfigError("config file is for command " + j["command"].dump());
      }
      resolved.tau = j.value("tau", resolved.tau);
      resolved.dim = j.value("dim", resolved.dim);
      resolved.problem = j.value("problem", resolved.problem);
      resolved.psi = j.value("psi", resolved.psi);
      resolved.eps = j.value("eps", resolved.eps);
      resolved.degree = j.value("degree", resolved.degree);
      resolved.random = j.value("random", resolved.random);
      resolved.seed = j.value("seed", resolved.seed);
      resolved.out = j.value("out", resolved.out);
      resolved.csv = j.value("csv", resolved.csv);
      resolved.svg = j.value("svg", resolved.svg);
    }
    auto given = [&](std::string const &name) {
      for (auto *o : overrides) {
        if (o->check_lname(name.substr(2)) && o->count() > 0) {
          return true;
        }
      }
      return false;
    };
    resolved.command = command;
    if (given("--tau")) resolved.tau = cfg.tau;
    if (given("--dim")) resolved.dim = cfg.dim;
    if (given("--problem")) resolved.problem = cfg.problem;
    if (given("--eps")) resolved.eps = cfg.eps;
    if (given("--degree")) resolved.degree = cfg.degree;
    if (given("--random")) resolved.random = cfg.random;
    if (given("--seed")) resolved.seed = seed;
    if (given("--csv")) resolved.csv = cfg.csv;
    if (given("--svg")) resolved.svg = cfg.svg;
    if (sub->get_option("--out")->count() > 0) resolved.out = cfg.out;
    if (given("--psi")) {
      json p = json::parse(psi_flag, nullptr, false);
      resolved.psi = p.is_object() ? p : json(psi_flag);
    }
    if (resolved.random < 0) {
      throw ConfigError("--random must be non-negative");
    }
    parse_problem(resolved.problem);

    if (!dump_config.empty()) {
      write_file_atomic(dump_config, to_json(resolved).dump(2) + "\n");
    }

    if (command == "ball-tone") return ball_tone(resolved);
    if (command == "properties") return properties(resolved);
    if (command == "bound") return bound(resolved);
    if (command == "asymmetry") return asymmetry(resolved);
    return sharpness(resolved);
  } catch (ConfigError const &e) {
    fail("config", e.what());
    return 2;
  } catch (DomainError const &e) {
    fail(e.kind(), e.what());
    return 2;
  } catch (ClassPError const &e) {
    fail(e.kind(), e.what());
    return 2;
  } catch (Error const &e) {
    fail(e.kind(), e.what());
    return 1;
  } catch (std::exception const &e) {
    fail("internal", e.what());
    return 1;
  }
}
