#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpztail/airyprocess.hpp"
#include "kpztail/cli.hpp"
#include "kpztail/error.hpp"
#include "kpztail/fredholm.hpp"
#include "kpztail/painleve.hpp"
#include "kpztail/ratefn.hpp"
#include "kpztail/tailbounds.hpp"

namespace kpztail::cli {

namespace {

struct Options {
  std::string format = "csv";
  std::string output = kStdout;
  std::uint64_t seed = kDefaultSeed;
  int order = 0;
  bool dry_run = false;

  std::string s, x, v, z, T;
  double T_single = 1e3;
  double gamma = 1.0, v_single = 0.0;
  double x_min = -20.0, x_start = painleve::kDefaultXStart, tol = 1e-12;
  int every = 20;
  std::string method = "fredholm";
  int samples = 2000, n = 1000, workers = 0;
  double h = 0.02, beta = 2.0;
};

Cell real(double v) { return v; }

int fermi_order(int order) { return order > 0 ? order : fredholm::kDefaultOrder; }

// Smallest k with lambda_k >= s + 40/T^(1/3), from the asymptotic zero formula with margin.
int heuristic_k_max(double s, double T) {
  const double need = std::max(s + 40.0 / std::cbrt(T), 1.0);
  const double k = (std::pow(need, 1.5) * 8.0 / (3.0 * std::numbers::pi) + 1.0) / 4.0;
  return static_cast<int>(std::ceil(k)) + 2;
}

Table run_tw(const Options& o) {
  Table t{{"s", "F"}, {}};
  for (double s : parse_grid(o.s)) t.rows.push_back({s, fredholm::tracy_widom_cdf(s, o.order)});
  return t;
}

Table run_thinned(const Options& o) {
  const auto xs = parse_grid(o.x), vs = parse_grid(o.v);
  Table t{{"x", "v", "log_F"}, {}};
  for (double x : xs)
    for (double v : vs)
      t.rows.push_back({x, v, o.method == "painleve" ? painleve::f_via_integral(x, v)
                                                      : fredholm::thinned_log_cdf(x, v, o.order)});
  return t;
}

Table run_kpz(const Options& o) {
  const auto ss = parse_grid(o.s), Ts = parse_grid(o.T);
  Table t{{"s", "T", "log_Q"}, {}};
  for (double T : Ts)
    for (double s : ss) t.rows.push_back({s, T, fredholm::kpz_log_laplace(s, T, fermi_order(o.order))});
  return t;
}

Table run_crossover(const Options& o) {
  const double T = o.T_single;
  const auto c = tailbounds::crossover_curve(T, parse_grid(o.s), fermi_order(o.order), o.workers);
  Table t{{"s", "neg_log_q", "local_exponent", "prefactor_5_2", "prefactor_3", "heuristic_sum"}, {}};
  for (std::size_t i = 0; i < c.s_grid.size(); ++i) {
    const double s = c.s_grid[i], L = c.neg_log_q[i];
    const Cell slope = (i == 0 || i + 1 == c.s_grid.size()) ? Cell{} : real(c.local_exponent[i - 1]);
    t.rows.push_back({s, L, slope, L / (std::cbrt(T) * std::pow(s, 2.5)), L / (s * s * s),
                      tailbounds::heuristic_sum(s, T, heuristic_k_max(s, T))});
  }
  return t;
}

Table run_sao(const Options& o, std::uint64_t seed) {
  const airyprocess::SaoMesh mesh{o.h, o.n, o.beta};
  const auto stats = airyprocess::counting_statistics_grid(parse_grid(o.s), o.samples, mesh, seed, o.workers);
  Table t{{"s", "samples", "mean", "variance", "mean_ci_halfwidth", "empty_fraction", "seed"}, {}};
  for (const auto& c : stats)
    t.rows.push_back({c.s, static_cast<long long>(c.n_samples), c.mean, c.variance, c.mean_ci_halfwidth,
                      c.empty_fraction, std::to_string(seed)});
  return t;
}

Table run_rate(const Options& o) {
  Table t{{"z", "phi_minus", "phi_tilde", "ratio"}, {}};
  for (double z : parse_grid(o.z, true)) {
    const auto p = ratefn::rate_point(z);
    t.rows.push_back({p.z, p.phi_minus, p.phi_tilde, p.ratio});
  }
  return t;
}

Table run_painleve(const Options& o, bool v_given) {
  const double gamma = v_given ? -std::expm1(-o.v_single) : o.gamma;
  if (o.every < 1) raise(ErrorKind::Usage, "--every must be positive");
  const auto sol = painleve::solve_painleve2(gamma, o.x_min, o.x_start, o.tol);
  Table t{{"x", "u", "u_prime", "log_F"}, {}};
  for (std::size_t i = 0; i < sol.grid.size(); i += static_cast<std::size_t>(o.every))
    t.rows.push_back({sol.grid[i], sol.u[i], sol.u_prime[i], sol.log_f(i)});
  return t;
}

Table run_validate(const Options& o, bool& all_passed) {
  Table t{{"check", "parameters", "measured", "tolerance", "passed"}, {}};
  all_passed = true;
  auto add = [&](const std::string& check, const std::string& params, double measured, double tol) {
    const bool ok = std::isfinite(measured) && measured <= tol;
    all_passed = all_passed && ok;
    t.rows.push_back({check, params, measured, tol, static_cast<long long>(ok)});
  };
  for (double x : {-10.0, -6.0, -2.0, 0.0, 2.0})
    for (double v : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      std::ostringstream p;
      p << "x=" << x << ",v=" << v;
      add("fredholm_vs_painleve", p.str(),
          std::fabs(fredholm::thinned_log_cdf(x, v, o.order) - painleve::f_via_integral(x, v)), 1e-6);
    }
  const double lq = fredholm::kpz_log_laplace(6.0, 1e6, o.order > 0 ? o.order : fredholm::kAcceptanceOrder);
  const double lf = fredholm::log_tracy_widom_cdf(-6.0);
  add("fermi_limit", "s=6,T=1e6", std::fabs(lq - lf) / std::fabs(lf), 0.05);
  for (double z : {-1.0, -5.0, -10.0}) {
    std::ostringstream p;
    p << "z=" << z;
    add("variational_minimizer", p.str(),
        std::fabs(ratefn::variational_min(z).r_star - ratefn::variational_argmin_closed(z)), 1e-6);
  }
  return t;
}

void report_error(const Error& e, const std::string& command, std::ostream& err) {
  nlohmann::ordered_json j;
  j["error"] = to_string(e.kind());
  j["command"] = command;
  j["message"] = e.what();
  auto params = nlohmann::ordered_json::array();
  for (const auto& [k, v] : e.context()) params.push_back({{"name", k}, {"value", v}});
  j["parameters"] = params;
  err << j.dump() << "\n";
}

}  // namespace

int parse_and_run(const std::vector<std::string>& argv, const Env& env, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Fredholm determinants, Painleve II, Airy-process sampling and rate functions for the KPZ lower tail."};
  app.name(argv.empty() ? "kpztail" : argv.front());
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file for global options; [command] sections set command options");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", o.output, "Output path, - for standard output");
  auto* seed_opt = app.add_option("--seed", o.seed, "Random seed (default 0, env KPZTAIL_SEED)");
  auto* order_opt = app.add_option("--order", o.order, "Quadrature order (env KPZTAIL_QUAD_ORDER)");
  app.add_flag("--dry-run", o.dry_run, "Print the resolved settings instead of running");

  auto* tw = app.add_subcommand("tw", "Tracy-Widom GUE distribution. Columns: s,F");
  tw->add_option("--s", o.s, "Grid of s values")->required();

  auto* th = app.add_subcommand("thinned", "Thinned Airy determinant log F(x;v). Columns: x,v,log_F");
  th->add_option("--x", o.x, "Grid of x values")->required();
  th->add_option("--v", o.v, "Grid of v values")->required();
  th->add_option("--method", o.method, "fredholm or painleve")->check(CLI::IsMember({"fredholm", "painleve"}));

  auto* kpz = app.add_subcommand("kpz", "KPZ Laplace functional log Q(s;T). Columns: s,T,log_Q");
  kpz->add_option("--s", o.s, "Grid of s values")->required();
  kpz->add_option("--T", o.T, "Grid of T values")->required();

  auto* cr = app.add_subcommand(
      "crossover", "Tail curve with local exponents. Columns: s,neg_log_q,local_exponent,prefactor_5_2,prefactor_3,heuristic_sum");
  cr->add_option("--T", o.T_single, "Time T")->required();
  cr->add_option("--s", o.s, "Increasing positive grid of s values")->required();
  cr->add_option("--workers", o.workers, "Threads (0 = all cores)");

  auto* sao = app.add_subcommand(
      "sao", "Stochastic Airy operator counting statistics. Columns: s,samples,mean,variance,mean_ci_halfwidth,empty_fraction,seed");
  sao->add_option("--s", o.s, "Grid of s values")->required();
  sao->add_option("--samples", o.samples, "Monte Carlo samples");
  sao->add_option("--spacing", o.h, "Mesh spacing h");
  sao->add_option("--points", o.n, "Mesh points n");
  sao->add_option("--beta", o.beta, "Dyson index (inf for the noiseless operator)");
  sao->add_option("--workers", o.workers, "Threads (0 = all cores)");

  auto* rate = app.add_subcommand("rate", "Rate functions; triples with same-sign ends are log-spaced. Columns: z,phi_minus,phi_tilde,ratio");
  rate->add_option("--z", o.z, "Grid of z <= 0 values")->required();

  auto* pii = app.add_subcommand("painleve", "Painleve II solution u ~ sqrt(gamma) Ai. Columns: x,u,u_prime,log_F");
  auto* gamma_opt = pii->add_option("--gamma", o.gamma, "Boundary coefficient in [0,1]");
  auto* v_opt = pii->add_option("--v", o.v_single, "Set gamma = 1 - exp(-v)");
  gamma_opt->excludes(v_opt);
  pii->add_option("--x-min", o.x_min, "Left end of the grid");
  pii->add_option("--x-start", o.x_start, "Right anchoring point");
  pii->add_option("--tol", o.tol, "Relative tolerance");
  pii->add_option("--every", o.every, "Emit every k-th grid point");

  auto* val = app.add_subcommand("validate", "Cross-representation checks; exits 1 on a breach. Columns: check,parameters,measured,tolerance,passed");

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].empty() || args[i][0] == '-') {
      // Global options taking a value are skipped together with it.
      if ((args[i] == "--format" || args[i] == "--output" || args[i] == "--seed" || args[i] == "--order" ||
           args[i] == "--config") && i + 1 < args.size())
        ++i;
      continue;
    }
    if (!app.get_subcommand_no_throw(args[i])) {
      err << app.get_name() << ": unknown command '" << args[i] << "' (see --help)\n";
      return 2;
    }
    break;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << app.get_name() << ": " << e.what() << " (see --help)\n";
    return 2;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    Overrides given;
    if (seed_opt->count() > 0) given.seed = o.seed;
    if (order_opt->count() > 0) given.order = o.order;
    const auto settings = resolve(given, env, 0);
    o.order = settings.order;
    if (o.order != 0 && (o.order < 8 || o.order > 400))
      raise(ErrorKind::Usage, "quadrature order must lie in [8, 400]", {{"order", static_cast<double>(o.order)}});
    const Format format = o.format == "json" ? Format::Json : Format::Csv;

    if (o.dry_run) {
      Table t{{"command", "seed", "order", "format", "output"},
              {{command, std::to_string(settings.seed), static_cast<long long>(settings.order), o.format, o.output}}};
      emit_table(t, format, o.output, out);
      return 0;
    }

    Table t;
    bool passed = true;
    if (sub == tw) t = run_tw(o);
    else if (sub == th) t = run_thinned(o);
    else if (sub == kpz) t = run_kpz(o);
    else if (sub == cr) t = run_crossover(o);
    else if (sub == sao) t = run_sao(o, settings.seed);
    else if (sub == rate) t = run_rate(o);
    else if (sub == pii) t = run_painleve(o, v_opt->count() > 0);
    else if (sub == val) t = run_validate(o, passed);
    emit_table(t, format, o.output, out);
    if (!passed) {
      err << app.get_name() << ": validate: tolerance breached\n";
      return 1;
    }
    return 0;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Usage) {
      err << app.get_name() << ": " << e.what() << "\n";
      return 2;
    }
    report_error(e, command, err);
    return 1;
  } catch (const std::exception& e) {
    report_error(Error(ErrorKind::Numeric, e.what()), command, err);
    return 1;
  }
}

}  // namespace kpztail::cli
