#include "fraclab/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "fraclab/theorem_lab.hpp"

namespace fraclab {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

uint64_t fnv1a(const void* data, size_t len, uint64_t h = 1469598103934665603ull) {
  const auto* b = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= b[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::Validation, msg); }

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const char* where) {
  if (!j.is_object()) bad(std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok) bad("unknown key '" + key + "' in " + where);
  }
}

const json& need(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string(where) + " is missing required key '" + key + "'");
  return *it;
}

double num(const json& j, const char* key, const char* where) {
  const json& v = need(j, key, where);
  if (!v.is_number()) bad(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

double num_or(const json& j, const char* key, double fallback, const char* where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) bad(std::string(where) + "." + key + " must be a number");
  return it->get<double>();
}

Point parse_point(const json& v, int n, const char* where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    bad(std::string(where) + " must be an array of " + std::to_string(n) + " numbers");
  Point p{0.0, 0.0};
  for (int d = 0; d < n; ++d) {
    if (!v[static_cast<size_t>(d)].is_number()) bad(std::string(where) + " must hold numbers");
    p[static_cast<size_t>(d)] = v[static_cast<size_t>(d)].get<double>();
  }
  return p;
}

Shape parse_shape(const json& j, int n) {
  check_keys(j, {"type", "a", "b", "center", "radius", "lo", "hi"}, "domain.shape");
  const json& tv = need(j, "type", "domain.shape");
  if (!tv.is_string()) bad("domain.shape.type must be a string");
  const std::string type = tv.get<std::string>();
  if (type == "interval") {
    check_keys(j, {"type", "a", "b"}, "interval shape");
    if (n != 1) bad("interval shapes need n = 1");
    return Shape{Interval{num(j, "a", "interval"), num(j, "b", "interval")}};
  }
  if (type == "ball") {
    check_keys(j, {"type", "center", "radius"}, "ball shape");
    return Shape{Ball{parse_point(need(j, "center", "ball"), n, "ball.center"),
                      num(j, "radius", "ball")}};
  }
  if (type == "rectangle") {
    check_keys(j, {"type", "lo", "hi"}, "rectangle shape");
    return Shape{Rectangle{parse_point(need(j, "lo", "rectangle"), n, "rectangle.lo"),
                           parse_point(need(j, "hi", "rectangle"), n, "rectangle.hi")}};
  }
  if (type == "union" || type == "difference") {
    check_keys(j, {"type", "a", "b"}, "composite shape");
    auto a = std::make_shared<Shape>(parse_shape(need(j, "a", "composite"), n));
    auto b = std::make_shared<Shape>(parse_shape(need(j, "b", "composite"), n));
    if (type == "union") return Shape{ShapeUnion{std::move(a), std::move(b)}};
    return Shape{ShapeDifference{std::move(a), std::move(b)}};
  }
  throw Error(ErrorCode::UnsupportedShape, "unsupported shape type '" + type + "'");
}

struct RunConfig {
  Params params;
  Shape shape;
  double collar_delta = 0.0;
  double trunc_radius = 0.0;
  double h = 0.0;
  SolverConfig solver;
  json experiment;
  uint64_t seed = 0;
  std::string prefix;
};

RunConfig parse_run_config(const json& j) {
  check_keys(j, {"params", "domain", "grid", "solver", "experiment", "output", "seed"},
             "config");
  RunConfig cfg;

  const json& jp = need(j, "params", "config");
  check_keys(jp, {"n", "s", "p", "q"}, "params");
  const json& jn = need(jp, "n", "params");
  if (!jn.is_number_integer()) bad("params.n must be an integer");
  cfg.params.n = jn.get<int>();
  cfg.params.s = num(jp, "s", "params");
  cfg.params.p = num(jp, "p", "params");
  cfg.params.q = num_or(jp, "q", 2.0, "params");
  cfg.params.validate();

  const json& jd = need(j, "domain", "config");
  check_keys(jd, {"shape"}, "domain");
  cfg.shape = parse_shape(need(jd, "shape", "domain"), cfg.params.n);

  const json& jg = need(j, "grid", "config");
  check_keys(jg, {"h", "collar_delta", "trunc_radius"}, "grid");
  cfg.h = num(jg, "h", "grid");
  cfg.collar_delta = num_or(jg, "collar_delta", 0.0, "grid");
  cfg.trunc_radius = num_or(jg, "trunc_radius", 0.0, "grid");

  if (auto it = j.find("solver"); it != j.end()) {
    check_keys(*it, {"max_iters", "tol_grad", "tol_step", "armijo_c", "backtrack", "verbosity"},
               "solver");
    cfg.solver.max_iters = static_cast<int>(num_or(*it, "max_iters", cfg.solver.max_iters, "solver"));
    cfg.solver.tol_grad = num_or(*it, "tol_grad", cfg.solver.tol_grad, "solver");
    cfg.solver.tol_step = num_or(*it, "tol_step", cfg.solver.tol_step, "solver");
    cfg.solver.armijo_c = num_or(*it, "armijo_c", cfg.solver.armijo_c, "solver");
    cfg.solver.backtrack = num_or(*it, "backtrack", cfg.solver.backtrack, "solver");
    cfg.solver.verbosity = static_cast<int>(num_or(*it, "verbosity", 0.0, "solver"));
  }
  cfg.solver.validate();

  if (auto it = j.find("experiment"); it != j.end()) cfg.experiment = *it;
  if (auto it = j.find("output"); it != j.end()) {
    check_keys(*it, {"prefix"}, "output");
    if (auto pit = it->find("prefix"); pit != it->end()) {
      if (!pit->is_string()) bad("output.prefix must be a string");
      cfg.prefix = pit->get<std::string>();
    }
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) bad("seed must be a nonnegative integer");
    cfg.seed = it->get<uint64_t>();
  }
  return cfg;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to " + path.string());
}

struct Reporter {
  fs::path outdir;
  std::string prefix;
  std::string config_hash;
  uint64_t seed;
  std::string subcommand;

  std::ostringstream csv;

  void csv_begin(std::initializer_list<const char*> header) {
    csv.str("");
    csv << "# config_hash=" << config_hash << '\n';
    bool first = true;
    for (const char* h : header) {
      if (!first) csv << ',';
      csv << h;
      first = false;
    }
    csv << '\n';
  }
  void csv_row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) csv << ',';
      csv << c;
      first = false;
    }
    csv << '\n';
  }
  void flush_csv() { write_text(outdir / (prefix + ".csv"), csv.str()); }
  void write_summary(json j) {
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["subcommand"] = subcommand;
    write_text(outdir / (prefix + ".json"), j.dump(2) + "\n");
  }
};

std::string ff(double v) { return format_float(v); }

void csv_nodes(Reporter& rep, const Grid& grid, const std::vector<int>& rows,
               std::initializer_list<std::pair<const char*, const GridFunction*>> cols) {
  std::vector<const char*> header;
  header.push_back("x");
  if (grid.n == 2) header.push_back("y");
  for (const auto& [name, _] : cols) header.push_back(name);
  rep.csv.str("");
  rep.csv << "# config_hash=" << rep.config_hash << '\n';
  for (size_t k = 0; k < header.size(); ++k) rep.csv << (k ? "," : "") << header[k];
  rep.csv << '\n';
  for (int i : rows) {
    const Point& x = grid.nodes[static_cast<size_t>(i)];
    rep.csv << ff(x[0]);
    if (grid.n == 2) rep.csv << ',' << ff(x[1]);
    for (const auto& [_, f] : cols) rep.csv << ',' << ff((*f)[i]);
    rep.csv << '\n';
  }
  rep.flush_csv();
}

struct Ctx {
  RunConfig cfg;
  Domain domain;
  Reporter rep;
};

int run_torsion(Ctx& ctx) {
  Grid grid = build_grid(ctx.domain, ctx.cfg.h, ctx.cfg.params);
  KernelMatrix K = assemble_kernel(grid, ctx.cfg.params);
  DirichletResult r = solve_torsion(K, ctx.cfg.solver);
  double sup = 0.0;
  for (int i : grid.interior) sup = std::max(sup, r.u[i]);
  csv_nodes(ctx.rep, grid, grid.interior, {{"u", &r.u}});
  ctx.rep.write_summary({{"converged", r.converged},
                         {"iters", r.iters},
                         {"residual", r.residual},
                         {"energy", gagliardo_energy(K, r.u)},
                         {"sup_u", sup},
                         {"nodes", grid.size()},
                         {"interior_nodes", static_cast<int>(grid.interior.size())}});
  return r.converged ? 0 : 3;
}

int run_dirichlet(Ctx& ctx) {
  check_keys(ctx.cfg.experiment.is_null() ? json::object() : ctx.cfg.experiment,
             {"f_const", "g_const"}, "experiment");
  const json& ex = ctx.cfg.experiment.is_null() ? json::object() : ctx.cfg.experiment;
  const double fc = num_or(ex, "f_const", 1.0, "experiment");
  const double gc = num_or(ex, "g_const", 0.0, "experiment");

  Grid grid = build_grid(ctx.domain, ctx.cfg.h, ctx.cfg.params);
  KernelMatrix K = assemble_kernel(grid, ctx.cfg.params);
  GridFunction f = GridFunction::constant(grid, fc);
  GridFunction g = GridFunction::constant(grid, gc);
  DirichletResult r = solve_dirichlet(K, f, g, ctx.cfg.solver);
  csv_nodes(ctx.rep, grid, grid.interior, {{"u", &r.u}});
  ctx.rep.write_summary({{"converged", r.converged},
                         {"iters", r.iters},
                         {"residual", r.residual},
                         {"f_const", fc},
                         {"g_const", gc},
                         {"energy", gagliardo_energy(K, r.u)}});
  return r.converged ? 0 : 3;
}

int run_eigen(Ctx& ctx) {
  check_keys(ctx.cfg.experiment.is_null() ? json::object() : ctx.cfg.experiment, {},
             "experiment");
  Grid grid = build_grid(ctx.domain, ctx.cfg.h, ctx.cfg.params);
  KernelMatrix K = assemble_kernel(grid, ctx.cfg.params);
  EigenResult r = solve_first_eigenpair(K, ctx.cfg.params.q, ctx.cfg.solver);
  csv_nodes(ctx.rep, grid, grid.interior, {{"u", &r.u}});
  ctx.rep.write_summary({{"lambda", r.lambda},
                         {"residual", r.residual},
                         {"converged", r.converged},
                         {"iters", r.iters},
                         {"sign_definite", r.sign_definite},
                         {"q", ctx.cfg.params.q}});
  return r.converged ? 0 : 3;
}

int run_capacity(Ctx& ctx) {
  if (ctx.cfg.experiment.is_null()) bad("capacity needs an experiment block");
  const json& ex = ctx.cfg.experiment;
  check_keys(ex, {"xi0", "r", "E_radius"}, "experiment");
  const Point xi0 = parse_point(need(ex, "xi0", "experiment"), ctx.cfg.params.n, "experiment.xi0");
  const double r = num(ex, "r", "experiment");
  const double Er = num(ex, "E_radius", "experiment");
  if (!(Er > 0.0 && Er <= 2.0 * r)) bad("experiment.E_radius must lie in (0, 2r]");

  Grid grid = build_grid(ctx.domain, ctx.cfg.h, ctx.cfg.params);
  KernelMatrix K = assemble_kernel(grid, ctx.cfg.params);
  std::vector<int> E;
  for (int i = 0; i < grid.size(); ++i)
    if (dist(grid.nodes[static_cast<size_t>(i)], xi0) <= Er) E.push_back(i);
  CapacityResult res = capacity(grid, E, xi0, r, K, ctx.cfg.solver);

  std::vector<int> shown;
  for (int i = 0; i < grid.size(); ++i)
    if (dist(grid.nodes[static_cast<size_t>(i)], xi0) <= 2.0 * r) shown.push_back(i);
  csv_nodes(ctx.rep, grid, shown, {{"v", &res.potential}});
  ctx.rep.write_summary({{"value", res.value},
                         {"r", res.r},
                         {"E_radius", Er},
                         {"E_nodes", static_cast<int>(E.size())},
                         {"converged", res.converged},
                         {"iters", res.iters},
                         {"residual", res.residual}});
  return res.converged ? 0 : 3;
}

int run_wiener(Ctx& ctx) {
  if (ctx.cfg.experiment.is_null()) bad("wiener needs an experiment block");
  const json& ex = ctx.cfg.experiment;
  check_keys(ex, {"xi0", "r0", "k_max", "cells_per_radius"}, "experiment");
  const Point xi0 = parse_point(need(ex, "xi0", "experiment"), ctx.cfg.params.n, "experiment.xi0");
  const double r0 = num(ex, "r0", "experiment");
  const int k_max = static_cast<int>(num(ex, "k_max", "experiment"));
  WienerOptions opts;
  opts.cells_per_radius = static_cast<int>(num_or(ex, "cells_per_radius", 16.0, "experiment"));

  WienerReport rep =
      wiener_integrand(ctx.domain, xi0, r0, k_max, ctx.cfg.params, ctx.cfg.solver, opts);

  ctx.rep.csv_begin({"k", "r", "cap", "integrand", "partial_sum", "usable"});
  bool all_usable = true;
  for (size_t k = 0; k < rep.radii.size(); ++k) {
    all_usable = all_usable && rep.usable[k];
    ctx.rep.csv_row({std::to_string(k), ff(rep.radii[k]), ff(rep.cap[k]), ff(rep.integrand[k]),
                     ff(rep.partial_sum[k]), rep.usable[k] ? "1" : "0"});
  }
  ctx.rep.flush_csv();
  ctx.rep.write_summary({{"dyadic_sum", rep.dyadic_sum},
                         {"diverging", rep.diverging},
                         {"growth_slope", rep.growth_slope},
                         {"k_max", k_max},
                         {"r0", r0}});
  return all_usable ? 0 : 3;
}

int run_hopf(Ctx& ctx) {
  check_keys(ctx.cfg.experiment.is_null() ? json::object() : ctx.cfg.experiment, {},
             "experiment");
  Grid grid = build_grid(ctx.domain, ctx.cfg.h, ctx.cfg.params);
  KernelMatrix K = assemble_kernel(grid, ctx.cfg.params);
  DirichletResult tor = solve_torsion(K, ctx.cfg.solver);
  EigenResult eig = solve_first_eigenpair(K, ctx.cfg.params.q, ctx.cfg.solver);
  HopfReport rep = hopf_constant(K, eig.u, tor.u);

  GridFunction ratio = GridFunction::zeros(grid);
  for (int i : grid.interior) ratio[i] = eig.u[i] / tor.u[i];
  csv_nodes(ctx.rep, grid, grid.interior, {{"u", &eig.u}, {"u_tor", &tor.u}, {"ratio", &ratio}});
  ctx.rep.write_summary({{"C", rep.C},
                         {"argmin_node", rep.argmin_node},
                         {"positive", rep.positive},
                         {"lambda", eig.lambda},
                         {"torsion_converged", tor.converged},
                         {"eigen_converged", eig.converged}});
  return (tor.converged && eig.converged) ? 0 : 3;
}

int run_harnack(Ctx& ctx) {
  check_keys(ctx.cfg.experiment.is_null() ? json::object() : ctx.cfg.experiment, {},
             "experiment");
  Grid grid = build_grid(ctx.domain, ctx.cfg.h, ctx.cfg.params);
  KernelMatrix K = assemble_kernel(grid, ctx.cfg.params);
  DirichletResult tor = solve_torsion(K, ctx.cfg.solver);
  EigenResult eig = solve_first_eigenpair(K, ctx.cfg.params.q, ctx.cfg.solver);
  HarnackReport rep = harnack_bounds(K, grid, ctx.domain, tor.u, eig.u);

  GridFunction ratio = GridFunction::zeros(grid);
  for (int i : grid.interior) ratio[i] = tor.u[i] / eig.u[i];
  csv_nodes(ctx.rep, grid, grid.interior, {{"u", &tor.u}, {"v", &eig.u}, {"ratio", &ratio}});
  ctx.rep.write_summary({{"C1", rep.C1},
                         {"C2", rep.C2},
                         {"audit_u", rep.audit_u},
                         {"audit_v", rep.audit_v},
                         {"core_nodes", static_cast<int>(rep.K_core.size())},
                         {"lambda", eig.lambda},
                         {"torsion_converged", tor.converged},
                         {"eigen_converged", eig.converged}});
  return (tor.converged && eig.converged) ? 0 : 3;
}

int run_isolation(Ctx& ctx) {
  const json& ex = ctx.cfg.experiment.is_null() ? json::object() : ctx.cfg.experiment;
  check_keys(ex, {"trials", "gap_frac"}, "experiment");
  const int trials = static_cast<int>(num_or(ex, "trials", 50.0, "experiment"));
  const double gap_frac = num_or(ex, "gap_frac", 0.10, "experiment");

  Grid grid = build_grid(ctx.domain, ctx.cfg.h, ctx.cfg.params);
  KernelMatrix K = assemble_kernel(grid, ctx.cfg.params);
  IsolationReport rep =
      isolation_experiment(K, grid, ctx.cfg.params.q, trials, ctx.cfg.solver, gap_frac);

  ctx.rep.csv_begin({"run", "lambda", "sign_definite"});
  for (size_t k = 0; k < rep.lambdas.size(); ++k)
    ctx.rep.csv_row({std::to_string(k), ff(rep.lambdas[k]), rep.sign_definite[k] ? "1" : "0"});
  ctx.rep.flush_csv();

  json offenders = json::array();
  for (const auto& o : rep.offenders)
    offenders.push_back({{"trial", o.trial}, {"lambda", o.lambda}, {"residual", o.residual}});
  ctx.rep.write_summary({{"trials", rep.trials},
                         {"converged_count", rep.converged_count},
                         {"lambda_min", rep.lambda_min},
                         {"gap", rep.gap},
                         {"gap_defined", rep.gap_defined},
                         {"gap_frac", rep.gap_frac},
                         {"offenders", offenders}});
  return rep.converged_count == rep.trials ? 0 : 3;
}

int run_selftest(std::ostream& diag) {
  int failures = 0;
  auto check = [&](bool ok, const char* name) {
    diag << (ok ? "ok" : "FAIL") << ": " << name << '\n';
    if (!ok) ++failures;
  };

  check(phi_p(0.0, 1.5) == 0.0, "phi_p vanishes at zero");
  check(phi_p(3.0, 2.0) == 3.0, "phi_p is the identity at p = 2");

  bool threw = false;
  try {
    Params bad_params;
    bad_params.s = 1.5;
    bad_params.validate();
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::Validation;
  }
  check(threw, "params validation rejects s outside (0,1)");

  Params pr;
  Domain dom(1, Shape{Interval{-1.0, 1.0}});
  Grid grid = build_grid(dom, 1.0 / 16.0, pr);
  KernelMatrix K = assemble_kernel(grid, pr);

  GridFunction c = GridFunction::constant(grid, 3.25);
  GridFunction Lc = apply_operator(K, c, c.far_value);
  double sup = 0.0;
  for (int i : grid.interior) sup = std::max(sup, std::abs(Lc[i]));
  check(sup == 0.0, "constants are annihilated exactly");

  GridFunction u = GridFunction::zeros(grid);
  for (int i : grid.interior)
    u[i] = std::sin(3.0 * grid.nodes[static_cast<size_t>(i)][0]);
  const double E = gagliardo_energy(K, u);
  GridFunction u2 = u;
  for (double& v : u2.values) v *= 2.0;
  check(std::abs(gagliardo_energy(K, u2) - std::pow(2.0, pr.p) * E) <= 1e-10 * E,
        "energy is p-homogeneous");

  SolverConfig scfg;
  CapacityResult cap = capacity(grid, {}, {0.0, 0.0}, 0.5, K, scfg);
  check(cap.value == 0.0 && cap.converged, "capacity of the empty set is zero");

  check(grid.reflection_map().has_value(), "symmetric grid has a reflection map");

  diag << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 2;
}

}  // namespace

int run_subcommand(const std::string& subcommand, const std::string& config_path,
                   const std::string& outdir, std::optional<uint64_t> seed_override,
                   int threads, std::ostream& diag) {
  try {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    if (subcommand == "selftest") return run_selftest(diag);

    static const char* known[] = {"torsion", "dirichlet", "eigen",   "capacity",
                                  "wiener",  "hopf",      "harnack", "isolation"};
    bool ok = false;
    for (const char* k : known) ok = ok || subcommand == k;
    if (!ok) bad("unknown subcommand '" + subcommand + "'");

    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read config file " + config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string raw = buf.str();

    json j;
    try {
      j = json::parse(raw);
    } catch (const json::parse_error& e) {
      bad(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg = parse_run_config(j);
    if (seed_override) cfg.seed = *seed_override;
    cfg.solver.seed = cfg.seed;
    if (cfg.prefix.empty()) cfg.prefix = subcommand;

    uint64_t hash = fnv1a(raw.data(), raw.size());
    hash = fnv1a(&cfg.seed, sizeof(cfg.seed), hash);

    fs::path out = outdir.empty() ? fs::path(".") : fs::path(outdir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create output directory " + out.string());

    Domain domain(cfg.params.n, cfg.shape, cfg.collar_delta, cfg.trunc_radius);
    Ctx ctx{std::move(cfg), std::move(domain), Reporter{}};
    ctx.rep.outdir = out;
    ctx.rep.prefix = ctx.cfg.prefix;
    ctx.rep.config_hash = hex64(hash);
    ctx.rep.seed = ctx.cfg.seed;
    ctx.rep.subcommand = subcommand;

    int code = 0;
    if (subcommand == "torsion")
      code = run_torsion(ctx);
    else if (subcommand == "dirichlet")
      code = run_dirichlet(ctx);
    else if (subcommand == "eigen")
      code = run_eigen(ctx);
    else if (subcommand == "capacity")
      code = run_capacity(ctx);
    else if (subcommand == "wiener")
      code = run_wiener(ctx);
    else if (subcommand == "hopf")
      code = run_hopf(ctx);
    else if (subcommand == "harnack")
      code = run_harnack(ctx);
    else
      code = run_isolation(ctx);
    if (code == 3) diag << "error: NO_CONVERGENCE: a solve hit max_iters; reports written\n";
    return code;
  } catch (const Error& e) {
    diag << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::Io: return 4;
      case ErrorCode::NoConvergence: return 3;
      default: return 2;
    }
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace fraclab
