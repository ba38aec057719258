// Command-line front end: feasibility queries, phi diagnostics, simulation,
// Harnack/classical/wave verification, parameter sweeps and convergence
// studies. Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or
// configuration error.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fisher/classical.hpp"
#include "fisher/config.hpp"
#include "fisher/field_io.hpp"
#include "fisher/harnack.hpp"
#include "fisher/phi.hpp"
#include "fisher/solver.hpp"
#include "fisher/waves.hpp"

using namespace fisher;

namespace {

struct Cli {
  std::string command;
  std::string subcommand;
  RunConfig cfg;
  std::string out_dir = "out";
};

void usage(std::ostream& os) {
  os << "usage: fisher_harnack <command> [options]\n";
  os << "commands:\n"
        "  feasible                      feasibility verdicts for a parameter tuple\n"
        "  sweep                         (alpha, beta) feasibility sweep -> CSV\n"
        "  simulate                      integrate and archive a trajectory\n"
        "  verify phi                    profile identities, positivity, limits\n"
        "  verify harnack                differential Harnack check on a trajectory\n"
        "  verify classical              ratio-bound checks on space-time pairs\n"
        "  verify waves                  minimal speed and wave-speed bounds\n"
        "  verify cutoff                 barrier derivative bounds\n"
        "  verify identity               evolution-identity refinement check\n"
        "  converge                      residual/order study -> CSV\n"
        "options:\n"
        "  --config PATH      load section.key = value configuration\n"
        "  --set K=V          override one key (repeatable)\n"
        "  --out DIR          output directory (default: out)\n"
        "  --seed N           initial-data seed\n";
}

Cli parse_cli(int argc, char** argv) {
  Cli cli;
  std::vector<std::string> args(argv + 1, argv + argc);
  size_t i = 0;
  if (i < args.size() && args[i][0] != '-') cli.command = args[i++];
  if (cli.command == "verify" && i < args.size() && args[i][0] != '-')
    cli.subcommand = args[i++];
  std::vector<std::string> sets;
  for (; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto need_value = [&]() -> std::string {
      if (i + 1 >= args.size()) throw ConfigError(a + " expects a value");
      return args[++i];
    };
    if (a == "--config") cli.cfg.load_file(need_value());
    else if (a == "--set") sets.push_back(need_value());
    else if (a == "--out") cli.out_dir = need_value();
    else if (a == "--seed") cli.cfg.set("init.seed", need_value());
    else throw ConfigError("unknown option: " + a);
  }
  for (const auto& s : sets) cli.cfg.set_line(s);
  return cli;
}

void write_manifest(const Cli& cli) {
  std::filesystem::create_directories(cli.out_dir);
  std::ofstream out(cli.out_dir + "/manifest.txt");
  out << "command = " << cli.command
      << (cli.subcommand.empty() ? "" : " " + cli.subcommand) << '\n';
  for (const auto& line : cli.cfg.manifest_lines()) out << line << '\n';
}

std::string verdict_line(const FeasibilityVerdict& v) {
  std::ostringstream os;
  if (v.feasible) {
    os << "feasible regime=" << regime_name(v.regime);
  } else {
    os << "infeasible (";
    for (size_t i = 0; i < v.violated_conditions.size(); ++i)
      os << (i ? "," : "") << v.violated_conditions[i];
    os << ")";
  }
  os << "  margins:";
  for (const auto& [k, m] : v.margins) os << ' ' << k << '=' << fmt17(m);
  return os.str();
}

int cmd_feasible(Cli& cli) {
  const ParamSet p = cli.cfg.params();
  std::cout << "params: n=" << p.n << " c=" << fmt17(p.c) << " alpha=" << fmt17(p.alpha)
            << " beta=" << fmt17(p.beta) << '\n';
  std::cout << "compact:    " << verdict_line(validate_compact(p)) << '\n';
  std::cout << "noncompact: " << verdict_line(validate_noncompact(p)) << '\n';
  write_manifest(cli);
  return 0;
}

int cmd_sweep(Cli& cli) {
  const RunConfig& cfg = cli.cfg;
  const int n = cfg.get_int("params.n", 1);
  const double c = cfg.get_double("params.c", 1.0);
  const int na = cfg.get_int("sweep.alpha_count", 50);
  const int nb = cfg.get_int("sweep.beta_count", 50);
  const double a0 = cfg.get_double("sweep.alpha_min", 0.01);
  const double a1 = cfg.get_double("sweep.alpha_max", 0.99);
  const double b0 = cfg.get_double("sweep.beta_min", -3.0);
  const double b1 = cfg.get_double("sweep.beta_max", -0.01);
  if (na < 1 || nb < 1) throw ConfigError("sweep counts must be positive");
  std::vector<std::string> rows(size_t(na) * size_t(nb));
  // Iterations are independent; rows land at their input index.
#pragma omp parallel for collapse(2) schedule(static)
  for (int ia = 0; ia < na; ++ia)
    for (int ib = 0; ib < nb; ++ib) {
      const double alpha = na == 1 ? a0 : a0 + (a1 - a0) * ia / (na - 1);
      const double beta = nb == 1 ? b0 : b0 + (b1 - b0) * ib / (nb - 1);
      const auto v = validate_compact({n, c, alpha, beta});
      std::ostringstream os;
      os << fmt17(alpha) << ',' << fmt17(beta) << ','
         << (v.feasible ? (v.regime == Regime::CompactCaseIII ? "iii" : "iv") : "infeasible")
         << ',' << fmt17(v.margins.at("ii")) << ',' << fmt17(v.margins.at("iii"));
      rows[size_t(ia) * size_t(nb) + size_t(ib)] = os.str();
    }
  write_manifest(cli);
  std::ofstream csv(cli.out_dir + "/sweep.csv");
  csv << "alpha,beta,regime,margin_ii,margin_iii\n";
  for (const auto& r : rows) csv << r << '\n';
  std::cout << "sweep: " << rows.size() << " rows -> " << cli.out_dir << "/sweep.csv\n";
  return 0;
}

std::vector<double> sample_times(const RunConfig& cfg, const ParamSet& p) {
  const double t_end = cfg.get_double("solver.t_end", 5.0);
  const double t_min = cfg.get_double("check.t_min", 0.05 / p.c);
  const int count = cfg.get_int("check.samples", 40);
  std::vector<double> times;
  for (int i = 0; i < count; ++i)
    times.push_back(count == 1 ? t_end : t_min + (t_end - t_min) * i / (count - 1));
  return times;
}

int cmd_simulate(Cli& cli) {
  const ParamSet p = cli.cfg.params();
  const TorusGrid g = cli.cfg.grid();
  const ScalarField f0 = make_initial(g, cli.cfg.init(0));
  const auto times = sample_times(cli.cfg, p);
  const auto traj =
      simulate(f0, p, cli.cfg.get_double("solver.t_end", 5.0), times,
               cli.cfg.get_double("solver.safety", 0.5));
  write_manifest(cli);
  write_trajectory_archive(cli.out_dir + "/trajectory", traj.times, traj.fields);
  std::cout << "simulate: " << traj.times.size() << " snapshots, dt=" << fmt17(traj.dt_used)
            << " -> " << cli.out_dir << "/trajectory\n";
  return 0;
}

struct CheckPrinter {
  bool all_pass = true;
  void line(bool pass, const std::string& name, const std::string& detail) {
    all_pass = all_pass && pass;
    std::cout << (pass ? "[ok]   " : "[FAIL] ") << name << ": " << detail << '\n';
  }
};

int cmd_verify_phi(Cli& cli) {
  const ParamSet p = cli.cfg.params();
  const auto compact = validate_compact(p);
  const auto noncompact = validate_noncompact(p);
  if (!compact.feasible && !noncompact.feasible)
    throw InfeasibleParams("verify phi: parameters are infeasible for every profile family");
  CheckPrinter out;

  std::vector<PhiProfile> eps_families, limit_families;
  if (compact.feasible) {
    eps_families.push_back(make_compact_profile(p));
    limit_families.push_back(make_compact_limit_profile(p));
  }
  if (noncompact.feasible) {
    eps_families.push_back(make_noncompact_profile(p));
    limit_families.push_back(make_noncompact_limit_profile(p));
  }

  for (const auto& prof : eps_families) {
    double worst = 0.0, worst_un = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double t = std::pow(10.0, -3.0 + 5.0 * i / 199.0) / p.c;
      if (prof.family == PhiFamily::CompactIV && t <= prof.T2) continue;
      const double phi = eval(prof, t);
      worst = std::max(worst, std::abs(riccati_residual(prof, t)) / (1.0 + phi * phi));
      const double want = (2.0 * prof.eps * prof.omega - prof.eps * prof.eps) * phi * phi;
      worst_un = std::max(worst_un, std::abs(riccati_residual_unshifted(prof, t) - want) /
                                        (1.0 + std::abs(want)));
    }
    out.line(worst <= 1e-10, "riccati[" + phi_family_name(prof.family) + "]",
             "max |residual|/(1+phi^2) = " + fmt17(worst));
    out.line(worst_un <= 1e-10, "riccati-unshifted[" + phi_family_name(prof.family) + "]",
             "max relative mismatch = " + fmt17(worst_un));
  }

  for (const auto& prof : limit_families) {
    bool positive = true;
    for (int i = 0; i < 200; ++i) {
      const double t = std::pow(10.0, -4.0 + 6.0 * i / 199.0) / p.c;
      positive = positive && eval(prof, t) > 0.0;
    }
    out.line(positive, "positivity[" + phi_family_name(prof.family) + "]",
             "phi(t) > 0 on 200 log-spaced samples");
    out.line(eval(prof, 1e-8 / p.c) > 1e6, "blow-up[" + phi_family_name(prof.family) + "]",
             "phi(1e-8/c) = " + fmt17(eval(prof, 1e-8 / p.c)));
    const double lim = long_time_limit(prof);
    const double got = eval(prof, 100.0 / p.c);
    out.line(std::abs(got - lim) <= 1e-3 * std::max(1.0, std::abs(lim)),
             "limit[" + phi_family_name(prof.family) + "]",
             "phi(100/c) = " + fmt17(got) + ", limit = " + fmt17(lim));
  }

  if (compact.feasible && compact.regime == Regime::CompactCaseIV) {
    const auto prof = make_compact_limit_profile(p);
    const double gap = continuity_gap_at_T2(prof);
    const double value = eval(prof, prof.T2);
    out.line(gap <= 1e-12 * value, "continuity-at-T2",
             "gap = " + fmt17(gap) + " at T2 = " + fmt17(prof.T2));
  }

  if (compact.feasible) {
    // eps -> 0 convergence toward the limit profile
    const auto limit = make_compact_limit_profile(p);
    const double t = 1.0 / p.c;
    double prev = 1e300;
    bool monotone = true;
    for (int k = 4; k <= 20; ++k) {
      const double diff = std::abs(eval(make_compact_profile(p, std::ldexp(1.0, -k)), t) -
                                   eval(limit, t));
      monotone = monotone && diff <= prev * (1.0 + 1e-9) + 1e-15;
      prev = diff;
    }
    out.line(monotone && prev <= 1e-4, "eps-to-0",
             "final |phi_eps - phi_0| = " + fmt17(prev));
    // additivity of the integral of phi~ (closed-form consistency)
    const double T2 = std::max(0.0, switch_time_T2(p, 0.0));
    const double t1 = T2 + 0.5 / p.c, t2 = T2 + 2.0 / p.c, t3 = T2 + 4.7 / p.c;
    const double split = tilde_integral(p, t1, t2) + tilde_integral(p, t2, t3);
    const double whole = tilde_integral(p, t1, t3);
    out.line(std::abs(split - whole) <= 1e-12 * std::max(1.0, std::abs(whole)),
             "tilde-integral-additivity", "|split - whole| = " + fmt17(std::abs(split - whole)));
    out.line(std::abs(phi_tilde(p, 80.0 / p.c)) <= 1e-10, "tilde-vanishes",
             "phi~(80/c) = " + fmt17(phi_tilde(p, 80.0 / p.c)));
  }

  if (noncompact.feasible) {
    // The nu-denominator form of phi1 solves the defining identity; the
    // mu-denominator variant does not. Reported, not asserted.
    const auto prof = make_noncompact_limit_profile(p);
    const double t = 1.0 / p.c, h = 1e-6 / p.c;
    const double vphi = phi1_mu_denominator_variant(p, t);
    const double vphi_t = (phi1_mu_denominator_variant(p, t + h) -
                           phi1_mu_denominator_variant(p, t - h)) / (2.0 * h);
    const double vres = -(prof.mu + prof.nu * vphi) * (prof.mu + prof.nu * vphi) +
                        prof.omega * vphi * prof.omega * vphi + vphi_t;
    std::cout << "note: phi1 uses the 1/(nu+omega) denominator; the 1/(mu+omega) variant "
                 "leaves residual "
              << fmt17(vres) << " at t=1/c\n";
  }

  write_manifest(cli);
  std::cout << (out.all_pass ? "verify phi: PASS\n" : "verify phi: FAIL\n");
  return out.all_pass ? 0 : 1;
}

int cmd_verify_harnack(Cli& cli) {
  const ParamSet p = cli.cfg.params();
  const auto verdict = validate_compact(p);
  PhiProfile prof;
  const std::string family = cli.cfg.get("check.family", "auto");
  if (family == "noncompact") prof = make_noncompact_limit_profile(p);
  else prof = make_compact_limit_profile(p);
  const TorusGrid g = cli.cfg.grid();
  const ScalarField f0 = make_initial(g, cli.cfg.init(0));
  const auto times = sample_times(cli.cfg, p);
  const auto traj = simulate(f0, p, cli.cfg.get_double("solver.t_end", 5.0), times,
                             cli.cfg.get_double("solver.safety", 0.5));
  const auto rep = check_trajectory(traj, prof, cli.cfg.get_double("check.tol_factor", 10.0),
                                    cli.cfg.get_double("check.t_min", -1.0));
  write_manifest(cli);

  std::ofstream txt(cli.out_dir + "/harnack_report.txt");
  txt << "differential Harnack check\n";
  txt << "profile: " << phi_family_name(prof.family) << "  regime: "
      << regime_name(verdict.regime) << '\n';
  txt << "params: n=" << p.n << " c=" << fmt17(p.c) << " alpha=" << fmt17(p.alpha)
      << " beta=" << fmt17(p.beta) << '\n';
  txt << "grid: dx=" << fmt17(rep.dx) << " dt=" << fmt17(rep.dt)
      << "  tol = " << fmt17(rep.tol_factor) << "*(dx^2+dt)*max(1,|beta|,phi(t))\n";
  std::ofstream csv(cli.out_dir + "/harnack_report.csv");
  csv << "time,min_h,argmin,tol,pass,identity_residual\n";
  for (const auto& s : rep.samples) {
    std::ostringstream arg;
    for (int a = 0; a < g.n; ++a) arg << (a ? ":" : "") << s.argmin[a];
    txt << "t=" << fmt17(s.t) << " min_h=" << fmt17(s.min_h) << " argmin=" << arg.str()
        << " tol=" << fmt17(s.tol) << " identity_residual=" << fmt17(s.identity_residual)
        << (s.pass ? " pass" : " FAIL") << '\n';
    csv << fmt17(s.t) << ',' << fmt17(s.min_h) << ',' << arg.str() << ',' << fmt17(s.tol)
        << ',' << (s.pass ? 1 : 0) << ',' << fmt17(s.identity_residual) << '\n';
  }
  txt << "summary: samples=" << rep.samples.size()
      << " max_identity_residual=" << fmt17(rep.max_identity_residual)
      << " overall_pass=" << (rep.overall_pass ? "true" : "false") << '\n';
  txt << "(identity residuals use centered time differences at the sample spacing)\n";

  double worst = 1e300;
  for (const auto& s : rep.samples) worst = std::min(worst, s.min_h + s.tol);
  std::cout << "verify harnack: " << rep.samples.size() << " samples, worst margin "
            << fmt17(worst) << (rep.overall_pass ? " -> PASS" : " -> FAIL") << '\n';
  return rep.overall_pass ? 0 : 1;
}

int cmd_verify_identity(Cli& cli) {
  const ParamSet p = cli.cfg.params();
  const PhiProfile prof = make_compact_limit_profile(p);
  const double t0 = cli.cfg.get_double("check.t0", 0.5 / p.c);
  const TorusGrid g0 = cli.cfg.grid();
  if (g0.n != 1) throw ConfigError("verify identity expects a 1-D grid");
  const double L = g0.len[0];
  double residual[2] = {0.0, 0.0};
  double dx[2] = {0.0, 0.0};
  for (int r = 0; r < 2; ++r) {
    const int pts = g0.pts[0] * (r + 1);
    const TorusGrid g = make_grid({pts}, {L});
    const double delta = cli.cfg.get_double("check.delta", 0.05) * g0.pts[0] / pts;
    const ScalarField f0 = make_initial(g, cli.cfg.init(0));
    const auto traj = simulate(f0, p, t0 + delta, {t0 - delta, t0, t0 + delta});
    residual[r] = max_abs_reduce(evolution_identity_residual(traj, prof, t0).v).value;
    dx[r] = g.dx(0);
  }
  write_manifest(cli);
  const double ratio = residual[0] / std::max(residual[1], 1e-300);
  const bool pass = ratio >= 3.5;
  std::cout << "verify identity: max residual " << fmt17(residual[0]) << " (dx=" << fmt17(dx[0])
            << ") -> " << fmt17(residual[1]) << " (dx=" << fmt17(dx[1]) << "), ratio "
            << fmt17(ratio) << (pass ? " -> PASS" : " -> FAIL") << '\n';
  return pass ? 0 : 1;
}

std::vector<PairSpec> read_pairs_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pairs file: " + path);
  std::vector<PairSpec> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    PairSpec pr;
    pr.x1.resize(size_t(n));
    pr.x2.resize(size_t(n));
    for (int a = 0; a < n; ++a) ss >> pr.x1[size_t(a)];
    ss >> pr.t1;
    for (int a = 0; a < n; ++a) ss >> pr.x2[size_t(a)];
    ss >> pr.t2;
    if (!ss) throw ConfigError("bad pair line: " + line);
    pairs.push_back(pr);
  }
  return pairs;
}

int cmd_verify_classical(Cli& cli) {
  const ParamSet p = cli.cfg.params();
  const TorusGrid g = cli.cfg.grid();
  const ScalarField f0 = make_initial(g, cli.cfg.init(0));
  const double t_end = cli.cfg.get_double("solver.t_end", 5.0);
  const double t_lo = cli.cfg.get_double("classical.t_lo", 0.5 / p.c);
  const int nt = cli.cfg.get_int("classical.time_samples", 46);
  std::vector<double> times;
  for (int i = 0; i < nt; ++i)
    times.push_back(nt == 1 ? t_end : t_lo + (t_end - t_lo) * i / (nt - 1));
  const auto traj = simulate(f0, p, t_end, times, cli.cfg.get_double("solver.safety", 0.5));

  std::vector<PairSpec> pairs;
  if (cli.cfg.has("classical.pairs_file")) {
    pairs = read_pairs_file(cli.cfg.get("classical.pairs_file", ""), g.n);
  } else {
    const int count = cli.cfg.get_int("classical.pairs", 50);
    std::mt19937_64 rng(std::uint64_t(cli.cfg.get_int("init.seed", 0)) + 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
      size_t a = size_t(rng() % times.size());
      size_t b = size_t(rng() % times.size());
      if (a == b) b = (a + 1 + rng() % (times.size() - 1)) % times.size();
      PairSpec pr;
      pr.t1 = times[std::min(a, b)];
      pr.t2 = times[std::max(a, b)];
      for (int ax = 0; ax < g.n; ++ax) {
        pr.x1.push_back(g.len[ax] * u(rng));
        pr.x2.push_back(g.len[ax] * u(rng));
      }
      pairs.push_back(pr);
    }
  }
  const auto checks = verify_pairs(traj, p, pairs, cli.cfg.get_double("classical.tol_rel", 1e-3));
  write_manifest(cli);
  std::ofstream out(cli.out_dir + "/ratio_checks.txt");
  bool all = true;
  int skipped = 0;
  for (const auto& rc : checks) {
    out << "case=" << ratio_case_name(rc.case_tag);
    out << " x1=";
    for (size_t a = 0; a < rc.pair.x1.size(); ++a) out << (a ? ":" : "") << fmt17(rc.pair.x1[a]);
    out << " t1=" << fmt17(rc.pair.t1) << " x2=";
    for (size_t a = 0; a < rc.pair.x2.size(); ++a) out << (a ? ":" : "") << fmt17(rc.pair.x2[a]);
    out << " t2=" << fmt17(rc.pair.t2);
    if (rc.skipped) {
      out << " skipped\n";
      ++skipped;
      continue;
    }
    out << " d=" << fmt17(rc.distance) << " lhs=" << fmt17(rc.lhs) << " rhs=" << fmt17(rc.rhs)
        << " margin=" << fmt17(rc.margin) << (rc.pass ? " pass" : " FAIL") << '\n';
    all = all && rc.pass;
  }
  std::cout << "verify classical: " << checks.size() - size_t(skipped) << " pairs checked, "
            << skipped << " skipped" << (all ? " -> PASS" : " -> FAIL") << '\n';
  return all ? 0 : 1;
}

int cmd_verify_waves(Cli& cli) {
  const double c = cli.cfg.get_double("params.c", 1.0);
  const int n = cli.cfg.get_int("params.n", 1);
  CheckPrinter out;
  write_manifest(cli);
  std::ofstream rep(cli.out_dir + "/wave_report.txt");

  rep << "speed  classification\n";
  for (double r : {0.5, 0.9, 0.99, 1.0, 1.05, 1.5}) {
    const double eta = 2.0 * std::sqrt(c) * r;
    const auto prof = shoot_profile(eta, c);
    rep << fmt17(eta) << "  " << wave_class_name(prof.classification) << '\n';
  }

  const double eta_min = minimal_speed_search(c, cli.cfg.get_double("waves.tol", 1e-4));
  rep << "eta_min = " << fmt17(eta_min) << " (2 sqrt c = " << fmt17(2.0 * std::sqrt(c)) << ")\n";
  out.line(std::abs(eta_min - 2.0 * std::sqrt(c)) <= 1e-3 * std::sqrt(c), "minimal-speed",
           "eta_min = " + fmt17(eta_min));

  for (int dim = 1; dim <= 3; ++dim) {
    const auto sb = verify_speed_bound(dim, c);
    rep << "n=" << dim << "  eta_min^2 = " << fmt17(sb.eta_min * sb.eta_min)
        << "  bound = " << fmt17(sb.M_triple) << "  margin = " << fmt17(sb.margin) << '\n';
    out.line(sb.pass, "speed-bound[n=" + std::to_string(dim) + "]",
             "margin = " + fmt17(sb.margin));
  }

  // Bound chain along a computed front, far tail at large time.
  ParamSet p = cli.cfg.params();
  if (!validate_noncompact(p).feasible) p = ParamSet{n, c, 0.1, -0.8 * c};
  if (validate_noncompact(p).feasible) {
    auto front = shoot_profile(2.0 * std::sqrt(c), c);
    if (front.classification != WaveClass::MonotoneFront)
      front = shoot_profile(2.05 * std::sqrt(c), c);
    const double z = tail_z_for_value(front, 1e-4);
    const auto chain = speed_bound_chain(p, front, 50.0 / c, z);
    rep << "bound chain at t=50/c, v<=1e-4: M'=" << fmt17(chain.M_prime)
        << " M''=" << fmt17(chain.M_double) << " M'''=" << fmt17(chain.M_triple) << '\n';
    out.line(chain.M_prime > chain.M_double - 1e-3, "chain-M'-vs-M''",
             "M' - M'' = " + fmt17(chain.M_prime - chain.M_double));
    const ParamSet small{1, c, 1e-4, speed_chain_beta(c, 1e-4)};
    const double gap = std::abs(m_double_prime(small) - wave_speed_bound(1, c));
    out.line(gap < 1e-3 * c, "chain-M''-vs-M'''", "|M'' - M'''| = " + fmt17(gap) +
                                                      " at alpha=1e-4");
    rep << "note: the chain's phi is the noncompact limit profile (mu2, nu2, omega2)\n";
    rep << "note: M' multiplies (beta+c) by v(z); the alternate form with phi in that slot "
           "is not used\n";
  }

  std::cout << (out.all_pass ? "verify waves: PASS\n" : "verify waves: FAIL\n");
  return out.all_pass ? 0 : 1;
}

int cmd_verify_cutoff(Cli& cli) {
  const double alpha = cli.cfg.get_double("params.alpha", 0.25);
  const double eps_prime = cli.cfg.get_double("cutoff.eps_prime", 0.05);
  const double k = cli.cfg.get_double("cutoff.k", 1e7);
  const int count = cli.cfg.get_int("cutoff.radii", 1000);
  CheckPrinter out;
  for (int n : {1, 2, 3}) {
    for (double R : {1.0, 2.0, 10.0}) {
      std::vector<double> radii;
      for (int i = 0; i < count; ++i) radii.push_back(0.995 * R * i / (count - 1));
      const auto rep = cutoff_check(n, R, k, radii, alpha, eps_prime);
      out.line(rep.all_pass, "cutoff[n=" + std::to_string(n) + ",R=" + fmt17(R) + "]",
               "both bounds at " + std::to_string(count) + " radii, k_required = " +
                   fmt17(rep.k_required) + (rep.k_ok ? " (k ok)" : " (k too small)"));
    }
  }
  write_manifest(cli);
  std::cout << (out.all_pass ? "verify cutoff: PASS\n" : "verify cutoff: FAIL\n");
  return out.all_pass ? 0 : 1;
}

int cmd_converge(Cli& cli) {
  const ParamSet p = cli.cfg.params();
  const PhiProfile prof = make_compact_limit_profile(p);
  std::vector<int> res = cli.cfg.get_ints("converge.resolutions", {64, 128, 256});
  if (res.size() < 3) throw ConfigError("converge needs at least 3 resolutions");
  for (size_t i = 0; i < res.size(); ++i)
    for (size_t j = i + 1; j < res.size(); ++j)
      if (res[i] == res[j]) throw ConfigError("converge resolutions must be distinct");
  const double L = cli.cfg.get_doubles("grid.lengths", {10.0})[0];
  const double t0 = cli.cfg.get_double("check.t0", 0.5 / p.c);
  const double delta0 = cli.cfg.get_double("check.delta", 0.05);
  const double t_end = cli.cfg.get_double("solver.t_end", 2.0);
  const InitSpec init = cli.cfg.init(0);

  std::vector<double> dxs, dts, residuals, neg_parts;
  for (int N : res) {
    const TorusGrid g = make_grid({N}, {L});
    const double delta = delta0 * res[0] / N;
    std::vector<double> times{t0 - delta, t0, t0 + delta};
    const auto extra = sample_times(cli.cfg, p);
    for (double t : extra)
      if (t > t0 + delta && t <= t_end) times.push_back(t);
    const ScalarField f0 = make_initial(g, init);
    const auto traj = simulate(f0, p, std::max(t_end, times.back()), times);
    const double resid = max_abs_reduce(evolution_identity_residual(traj, prof, t0).v).value;
    const auto rep = check_trajectory(traj, prof, cli.cfg.get_double("check.tol_factor", 10.0));
    double neg = 0.0;
    for (const auto& s : rep.samples) neg = std::max(neg, -std::min(0.0, s.min_h));
    dxs.push_back(g.dx(0));
    dts.push_back(traj.dt_used);
    residuals.push_back(resid);
    neg_parts.push_back(neg);
  }
  write_manifest(cli);
  std::ofstream csv(cli.out_dir + "/converge.csv");
  csv << "dx,dt,max_identity_residual,min_h_negative_part\n";
  for (size_t i = 0; i < dxs.size(); ++i)
    csv << fmt17(dxs[i]) << ',' << fmt17(dts[i]) << ',' << fmt17(residuals[i]) << ','
        << fmt17(neg_parts[i]) << '\n';
  const double order_resid = fitted_order(dxs, residuals);
  csv << "# fitted_order_identity = " << fmt17(order_resid) << '\n';
  const bool neg_all_zero = *std::max_element(neg_parts.begin(), neg_parts.end()) == 0.0;
  if (neg_all_zero)
    csv << "# fitted_order_negative_part = inf (no negative excursions)\n";
  else
    csv << "# fitted_order_negative_part = " << fmt17(fitted_order(dxs, neg_parts)) << '\n';
  std::cout << "converge: identity order " << fmt17(order_resid) << " -> " << cli.out_dir
            << "/converge.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  try {
    cli = parse_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    usage(std::cerr);
    return 2;
  }
  apply_thread_cap();
  try {
    if (cli.command == "feasible") return cmd_feasible(cli);
    if (cli.command == "sweep") return cmd_sweep(cli);
    if (cli.command == "simulate") return cmd_simulate(cli);
    if (cli.command == "converge") return cmd_converge(cli);
    if (cli.command == "verify") {
      if (cli.subcommand == "phi") return cmd_verify_phi(cli);
      if (cli.subcommand == "harnack") return cmd_verify_harnack(cli);
      if (cli.subcommand == "classical") return cmd_verify_classical(cli);
      if (cli.subcommand == "waves") return cmd_verify_waves(cli);
      if (cli.subcommand == "cutoff") return cmd_verify_cutoff(cli);
      if (cli.subcommand == "identity") return cmd_verify_identity(cli);
      std::cerr << "error: unknown verify target: " << cli.subcommand << '\n';
      usage(std::cerr);
      return 2;
    }
    std::cerr << "error: unknown command: " << cli.command << '\n';
    usage(std::cerr);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
