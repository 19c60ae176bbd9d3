// kirchnorm: normalized solutions of the Kirchhoff equation from the command line.
//
// Exit codes: 0 success, 2 inadmissible input, 3 no solution exists,
// 4 numerical failure or a violated verification tolerance.

#include "kirchhoff/bounds.hpp"
#include "kirchhoff/functional.hpp"
#include "kirchhoff/gradient_flow.hpp"
#include "kirchhoff/hypotheses.hpp"
#include "kirchhoff/limit_solver.hpp"
#include "kirchhoff/serialize.hpp"
#include "kirchhoff/verify.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace kirchhoff;

namespace {

enum Exit { kOk = 0, kInadmissible = 2, kNoSolution = 3, kNumerical = 4 };

struct NoSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double a = 1, b = 1, c = 1;
  int N = 3;
  std::string p = "5";
  std::string format = "auto";
  std::string output;
  std::string logPath;
  std::string potential = "zero";
  int workers = 1;
};

double parse_real(const std::string& text, const std::string& name) {
  auto one = [&](std::string_view s) {
    double x = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw InadmissibleError(name, "cannot parse '" + text + "'");
    return x;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return one(text);
  return one(std::string_view(text).substr(0, slash)) / one(std::string_view(text).substr(slash + 1));
}

// "lo:hi:n" (linear), "lo:hi:n:log" or a comma list.
std::vector<double> parse_grid(const std::string& text, const std::string& name) {
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  std::vector<double> grid;
  if (sep == ',') {
    for (const auto& s : parts) grid.push_back(parse_real(s, name));
    return grid;
  }
  if (parts.size() < 3 || parts.size() > 4) throw InadmissibleError(name, "grid must be lo:hi:n or lo:hi:n:log");
  const double lo = parse_real(parts[0], name), hi = parse_real(parts[1], name);
  const int n = static_cast<int>(parse_real(parts[2], name));
  const bool logScale = parts.size() == 4 && parts[3] == "log";
  if (n < 1) throw InadmissibleError(name, "grid needs at least one point");
  if (logScale && !(lo > 0 && hi > 0)) throw InadmissibleError(name, "log grid needs positive end points");
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    grid.push_back(logScale ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
  }
  return grid;
}

fs::path resolve(const std::string& path) {
  fs::path p(path);
  if (p.is_relative())
    if (const char* dir = std::getenv("KIRCHNORM_OUTPUT_DIR"); dir && *dir) p = fs::path(dir) / p;
  return p;
}

void write_file(const std::string& path, const std::string& text) {
  const fs::path p = resolve(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
  out << text;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
  } else {
    write_file(o.output, text);
  }
}

// Flattens a JSON report into key,value rows.
void flatten(const Json& j, const std::string& prefix, CsvTable& csv) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), csv);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), csv);
  } else if (j.is_number_float()) {
    csv.add({prefix, format_number(j.get<double>())});
  } else if (j.is_string()) {
    csv.add({prefix, j.get<std::string>()});
  } else {
    csv.add({prefix, j.dump()});
  }
}

bool want_csv(const Options& o, bool tabular) { return o.format == "csv" || (o.format == "auto" && tabular); }

void emit_report(const Options& o, std::string_view kind, const Json& payload, const Meta& meta) {
  if (want_csv(o, false)) {
    CsvTable csv{{"key", "value"}, {}};
    flatten(payload, "", csv);
    emit(o, csv.str(kind, meta));
    return;
  }
  Json j = envelope(kind);
  for (auto it = payload.begin(); it != payload.end(); ++it) j[it.key()] = it.value();
  emit(o, j.dump(2) + "\n");
}

ModelParams model_of(const Options& o) { return {o.a, o.b, o.N, parse_real(o.p, "p")}; }
ProblemParams problem_of(const Options& o) { return at_mass(model_of(o), o.c); }

double profile_p(int N, double p) { return is_kirchhoff_critical(N, p) ? kirchhoff_critical_exponent(N) : p; }

// The unique solution for the critical and supercritical regimes.
std::pair<LimitBranch, RadialField> unique_solution(const ProblemParams& pr) {
  if (regime_tag(pr.N, pr.p) == RegimeTag::TwoBranch) throw InadmissibleError("p", "this command needs p >= 2 + 8/N");
  const auto roots = root_equation_solve(pr);
  if (roots.empty()) throw NoSolution("no normalized solution: c is at or below the threshold c0");
  return {roots[0], build_solution(roots[0], pr, *qp_profile(pr.N, profile_p(pr.N, pr.p)))};
}

std::pair<LimitBranch, LimitBranch> two_branches(const ProblemParams& pr) {
  if (regime_tag(pr.N, pr.p) != RegimeTag::TwoBranch) throw InadmissibleError("p", "this command needs p < 2 + 8/N");
  const auto roots = root_equation_solve(pr);
  if (roots.size() != 2) throw NoSolution("fewer than two solutions: c is at or below c1");
  return {roots[1], roots[0]};  // upper (m_{c,1}), lower (m_{c,2})
}

// --------------------------------------------------------------------------

int cmd_classify(const Options& o) {
  const ModelParams m = model_of(o);
  const Regime reg = classify(m);
  const auto e = derived_exponents(m.N, m.p);
  Json j;
  j["model"] = to_json(m);
  j["regime"] = to_string(reg.tag);
  j["cStar"] = reg.cStar;
  j["exponents"] = {{"theta", e.theta}, {"eta", e.eta}, {"q", e.q}, {"zeta", e.zeta}};
  emit_report(o, "classification", j, model_meta(m));
  return kOk;
}

int cmd_profile(const Options& o, const ShootingConfig& cfg) {
  const int N = o.N;
  const double p = parse_real(o.p, "p");
  check_exponent(N, p);
  const QpProfile qp = qp_from_standard(standard_ground_state(N, p, cfg), N, p);
  Meta meta{{"N", std::to_string(N)},           {"p", format_number(p)},
            {"intervals", std::to_string(cfg.intervals)}, {"decayTol", format_number(cfg.decayTol)},
            {"matchTol", format_number(cfg.matchTol)},    {"substeps", std::to_string(cfg.substeps)}};
  if (want_csv(o, true)) {
    Meta m = meta;
    m.emplace_back("l2sq", format_number(qp.l2sq));
    m.emplace_back("gradl2sq", format_number(qp.gradl2sq));
    m.emplace_back("lpp", format_number(qp.lpp));
    emit(o, field_csv(qp.field, "gn_profile", m));
    return kOk;
  }
  Json j{{"N", N},
         {"p", p},
         {"rMax", qp.field.radius()},
         {"intervals", cfg.intervals},
         {"decayTol", cfg.decayTol},
         {"l2sq", qp.l2sq},
         {"gradl2sq", qp.gradl2sq},
         {"lpp", qp.lpp},
         {"gnConstant", gn_best_constant(qp)},
         {"Q0", qp.field.values[0]}};
  emit_report(o, "gn_profile", j, meta);
  return kOk;
}

int cmd_solve(const Options& o, const std::string& dumpPath) {
  const ProblemParams pr = problem_of(o);
  const VerifyReport rep = verify_instance(pr);
  if (rep.branches.empty()) {
    std::cerr << "kirchnorm: no normalized solution for c = " << pr.c << " (" << to_string(rep.regime)
              << ", threshold c* = " << rep.cStar << ")\n";
    return kNoSolution;
  }
  if (!dumpPath.empty()) {
    const auto qp = qp_profile(pr.N, profile_p(pr.N, pr.p));
    for (const auto& bv : rep.branches) {
      std::string path = dumpPath;
      if (rep.branches.size() > 1) {
        const fs::path fp(dumpPath);
        path = (fp.parent_path() / (fp.stem().string() + "_" + std::string(to_string(bv.branch.branch)) + fp.extension().string())).string();
      }
      Meta meta = problem_meta(pr);
      meta.emplace_back("branch", std::string(to_string(bv.branch.branch)));
      write_file(path, field_csv(build_solution(bv.branch, pr, *qp), "limit_solution", meta));
    }
  }
  if (want_csv(o, true)) {
    CsvTable csv{{"branch", "Dsq", "lambda", "energy"}, {}};
    for (const auto& c : rep.branches.front().checks) csv.columns.push_back(c.name);
    for (const auto& bv : rep.branches) {
      std::vector<std::string> row{std::string(to_string(bv.branch.branch)), format_number(bv.branch.Dsq),
                                   format_number(bv.branch.lambda), format_number(bv.branch.energy)};
      for (const auto& c : bv.checks) row.push_back(format_number(c.value));
      csv.add(std::move(row));
    }
    Meta meta = problem_meta(pr);
    meta.emplace_back("regime", std::string(to_string(rep.regime)));
    meta.emplace_back("cStar", format_number(rep.cStar));
    emit(o, csv.str("limit_solutions", meta));
  } else {
    Json j = to_json(rep);
    emit_report(o, "limit_solutions", j, problem_meta(pr));
  }
  return kOk;
}

int cmd_sweep(const Options& o, const std::string& grid) {
  const ModelParams m = model_of(o);
  const BifurcationTable t = sweep(m, parse_grid(grid, "c-grid"), o.workers);
  if (want_csv(o, true)) emit(o, table_csv(t));
  else emit(o, table_json(t).dump(2) + "\n");
  return kOk;
}

int cmd_fold(const Options& o) {
  const ModelParams m = model_of(o);
  emit_report(o, "fold_point", to_json(fold_point(m)), model_meta(m));
  return kOk;
}

int cmd_blimit(const Options& o, const std::string& grid) {
  const ProblemParams pr = problem_of(o);
  const BLimitReport rep = b_limit_check(pr, parse_grid(grid, "b-grid"));
  emit_report(o, "b_limit", to_json(rep), problem_meta(pr));
  return rep.monotone ? kOk : kNumerical;
}

int cmd_ratio(const Options& o, double alpha, double beta) {
  const ModelParams m = model_of(o);
  const EnergyRatioReport r = energy_ratio_check(alpha, beta, m);
  emit_report(o, "energy_ratio", to_json(r), model_meta(m));
  return r.holds ? kOk : kNumerical;
}

int cmd_verify(const Options& o) {
  const ProblemParams pr = problem_of(o);
  const VerifyReport rep = verify_instance(pr);
  if (rep.branches.empty()) {
    std::cerr << "kirchnorm: no normalized solution to verify (c <= c* = " << rep.cStar << ")\n";
    return kNoSolution;
  }
  emit_report(o, "verification", to_json(rep), problem_meta(pr));
  if (!rep.passed) std::cerr << "kirchnorm: verification failed, see the report\n";
  return rep.passed ? kOk : kNumerical;
}

int cmd_hypo(const Options& o, const std::string& which) {
  const ProblemParams pr = problem_of(o);
  const PotentialSpec V = parse_potential(o.potential);
  HypothesisReport rep;
  if (which == "V1") {
    rep = validate_V1(V, pr, unique_solution(pr).first.energy);
  } else if (which == "V2") {
    rep = validate_V2(V, pr);
  } else {
    const auto [up, lo] = two_branches(pr);
    rep = validate_V5(V, pr, up.energy, lo.energy);
  }
  Json j = to_json(rep);
  j["potential"] = V.describe();
  emit_report(o, "hypothesis", j, problem_meta(pr));
  return kOk;
}

int cmd_bounds(const Options& o, const std::string& translations, int samples) {
  const ProblemParams pr = problem_of(o);
  const PotentialSpec V = parse_potential(o.potential);
  const auto [br, u] = unique_solution(pr);
  DilationScan scan;
  scan.samples = samples;
  if (!translations.empty()) scan.translations = parse_grid(translations, "translations");
  const DilationBound bound = dilation_path_bound(u, V, pr, br.energy, scan);
  Json j;
  j["potential"] = V.describe();
  j["bound"] = to_json(bound);
  if (pr.N <= 3) j["V1"] = to_json(validate_V1(V, pr, br.energy));
  if (pr.N == 3) j["V2"] = to_json(validate_V2(V, pr));
  j["potentialPohozaev"] = potential_pohozaev(u, V, pr.model());
  emit_report(o, "dilation_bounds", j, problem_meta(pr));
  return kOk;
}

int cmd_flow(const Options& o, const FlowSchedule& sch, int intervals, double radiusFactor, const std::string& tracePath) {
  const ProblemParams pr = problem_of(o);
  const PotentialSpec V = parse_potential(o.potential);
  const auto [up, lo] = two_branches(pr);
  const auto qp = qp_profile(pr.N, pr.p);
  const RadialField u1 = build_solution(up, pr, *qp);
  const RadialField init = gaussian_initial(pr.N, pr.c, up.Dsq, radiusFactor * u1.radius(), intervals);
  const FlowResult res = normalized_gradient_flow(init, V, pr, sch);
  const auto n = norms(res.state.u, pr.p);
  const double kin = pr.a * n.gradl2sq + pr.b * n.gradl2sq * n.gradl2sq;
  Json j;
  j["potential"] = V.describe();
  j["state"] = to_json(res.state);
  j["reference"] = {{"m_c1", up.energy}, {"lambda_c1", up.lambda}, {"m_c2", lo.energy}};
  j["energyRelativeError"] = std::abs(res.state.energy - up.energy) / std::abs(up.energy);
  j["multiplierRelativeError"] = std::abs(res.state.multiplierEstimate - up.lambda) / std::abs(up.lambda);
  j["potentialPohozaevRelative"] = potential_pohozaev(res.state.u, V, pr.model()) / kin;
  j["V5"] = to_json(validate_V5(V, pr, up.energy, lo.energy));
  Meta meta = problem_meta(pr);
  meta.emplace_back("potential", V.describe());
  meta.emplace_back("intervals", std::to_string(intervals));
  if (!tracePath.empty()) write_file(tracePath, flow_trace_csv(res, meta));
  emit_report(o, "flow", j, meta);
  return kOk;
}

void log_line(const Options& o, const std::string& sub, int code, const std::string& message) {
  if (o.logPath.empty()) return;
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::ofstream log(resolve(o.logPath), std::ios::app);
  log << stamp << ' ' << sub << " exit=" << code << (message.empty() ? "" : " " + message) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kirchnorm: normalized solutions of the Kirchhoff equation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; flags override it");

  Options o;
  app.add_option("-a", o.a, "dispersion coefficient a > 0");
  app.add_option("-b", o.b, "Kirchhoff coefficient b >= 0");
  app.add_option("-c", o.c, "prescribed L2 norm c > 0");
  app.add_option("-N", o.N, "dimension 1..4");
  app.add_option("-p", o.p, "exponent p (decimal or fraction like 14/3)");
  app.add_option("--format", o.format, "csv, json or auto")->check(CLI::IsMember({"auto", "csv", "json"}));
  app.add_option("-o,--output", o.output, "output file (default stdout)");
  app.add_option("--log", o.logPath, "sidecar log file, the only output with timestamps");
  app.add_option("--potential", o.potential, "potential, e.g. gaussian:V0=0.01,w=1");
  app.add_option("--workers", o.workers, "threads for sweep")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "regime, threshold and exponents");
  auto* profile = app.add_subcommand("profile", "GN optimizer Q_p by shooting");
  ShootingConfig shoot;
  profile->add_option("--intervals", shoot.intervals, "grid intervals (even)");
  profile->add_option("--decay-tol", shoot.decayTol, "truncation threshold relative to Q(0)");
  profile->add_option("--r-max", shoot.rMax, "truncation radius of the standard profile (0 = adaptive)");

  auto* solve = app.add_subcommand("solve", "solution branches of the limit problem with residuals");
  std::string dumpPath;
  solve->add_option("--dump-profile", dumpPath, "write u_c as CSV (one file per branch)");

  auto* sweepCmd = app.add_subcommand("sweep", "bifurcation table over a c grid");
  std::string cGrid = "1:10:50";
  sweepCmd->add_option("--c-grid", cGrid, "lo:hi:n, lo:hi:n:log or a comma list");

  auto* fold = app.add_subcommand("fold", "fold point c1, Upsilon, Lambda");
  auto* blimit = app.add_subcommand("blimit", "b -> 0 convergence to the local problem");
  std::string bGrid = "1e-1,1e-2,1e-3,1e-4";
  blimit->add_option("--b-grid", bGrid, "decreasing b values");

  auto* ratio = app.add_subcommand("ratio", "energy ratio inequality for masses alpha >= beta");
  double alpha = 2, beta = 1;
  ratio->add_option("--alpha", alpha)->required();
  ratio->add_option("--beta", beta)->required();

  auto* verify = app.add_subcommand("verify", "identity suite on a solved instance");
  auto* hypo = app.add_subcommand("hypo", "validate (V1), (V2) or (V5) for a potential");
  std::string which = "V1";
  hypo->add_option("--hypothesis", which)->check(CLI::IsMember({"V1", "V2", "V5"}));

  auto* bounds = app.add_subcommand("bounds", "dilation-path upper bounds with a potential");
  std::string translations;
  int samples = 401;
  bounds->add_option("--translations", translations, "translation lengths |y| besides 0");
  bounds->add_option("--h-samples", samples, "log-spaced dilation samples on [1e-2, 1e2]");

  auto* flow = app.add_subcommand("flow", "normalized gradient flow in the two-branch regime");
  FlowSchedule sch;
  int flowIntervals = 8192;
  double radiusFactor = 0.75;
  std::string tracePath;
  flow->add_option("--intervals", flowIntervals, "grid intervals (even)");
  flow->add_option("--radius-factor", radiusFactor, "grid radius relative to the built u_c1 support");
  flow->add_option("--tol", sch.tol, "tolerance on the projected gradient norm");
  flow->add_option("--max-steps", sch.maxSteps, "step cap");
  flow->add_option("--trace", tracePath, "write the flow trace CSV");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInadmissible;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  int code = kOk;
  std::string message;
  try {
    if (sub == "classify") code = cmd_classify(o);
    else if (sub == "profile") code = cmd_profile(o, shoot);
    else if (sub == "solve") code = cmd_solve(o, dumpPath);
    else if (sub == "sweep") code = cmd_sweep(o, cGrid);
    else if (sub == "fold") code = cmd_fold(o);
    else if (sub == "blimit") code = cmd_blimit(o, bGrid);
    else if (sub == "ratio") code = cmd_ratio(o, alpha, beta);
    else if (sub == "verify") code = cmd_verify(o);
    else if (sub == "hypo") code = cmd_hypo(o, which);
    else if (sub == "bounds") code = cmd_bounds(o, translations, samples);
    else if (sub == "flow") code = cmd_flow(o, sch, flowIntervals, radiusFactor, tracePath);
  } catch (const InadmissibleError& e) {
    message = "inadmissible " + e.parameter() + ": " + e.what();
    code = kInadmissible;
  } catch (const NoSolution& e) {
    message = e.what();
    code = kNoSolution;
  } catch (const NumericalFailure& e) {
    message = std::string("numerical failure: ") + e.what();
    code = kNumerical;
  } catch (const std::invalid_argument& e) {
    message = std::string("invalid argument: ") + e.what();
    code = kInadmissible;
  } catch (const std::exception& e) {
    message = std::string("error: ") + e.what();
    code = kNumerical;
  }
  if (!message.empty()) std::cerr << "kirchnorm: " << message << '\n';
  log_line(o, sub, code, message);
  (void)classify, (void)fold, (void)verify;
  return code;
}
