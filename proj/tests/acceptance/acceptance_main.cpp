// Acceptance suite: runs every criterion end to end and prints one pass/fail
// line each. argv[1] = CLI binary (for the determinism criterion), argv[2] =
// shipped configs directory.

#include <cmath>
#include <cstdlib>
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
#include "test_util.hpp"

using namespace fisher;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " -- "
            << detail << std::endl;
}

const ParamSet kIII{1, 1.0, 0.25, -1.0};     // compact case (iii)
const ParamSet kIV1{1, 1.0, 0.9, -1.2};      // compact case (iv), 1-D
const ParamSet kIV3{3, 1.0, 0.9, -2.0};      // compact case (iv), switch time 5.5
const ParamSet kNC{1, 1.0, 0.1, -0.8};       // noncompact feasible

// ---------------------------------------------------------------- criterion 1
void c1_speed_bound_table() {
  const double want[3] = {3.0 - std::sqrt(3.0), 2.0, 7.0 - 3.0 * std::sqrt(3.0)};
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n)
    worst = std::max(worst, std::abs(wave_speed_bound(n, 1.0) - want[n - 1]));
  report(1, worst <= 1e-12, "minimal-speed bound table (n = 1, 2, 3)",
         "max |closed form - table| = " + fmt17(worst));
}

// ---------------------------------------------------------------- criterion 2
void c2_riccati() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, worst_un = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double omega = 0.5 + 2.0 * u(rng);
    const double nu = omega * (1.4 * u(rng) - 0.7);
    const double eps = (omega - std::abs(nu)) * (0.1 + 0.4 * u(rng));
    const double mu = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + u(rng));
    const PhiProfile prof = make_general_profile(mu, nu, omega, eps);
    const double rate = std::abs(2.0 * mu * (omega - eps));
    for (int i = 0; i < 200; ++i) {
      const double t = std::pow(10.0, -2.0 + std::log10(3e3) * i / 199.0) / rate;
      const double phi = eval(prof, t);
      worst = std::max(worst, std::abs(riccati_residual(prof, t)) / (1.0 + phi * phi));
      const double want = (2.0 * eps * omega - eps * eps) * phi * phi;
      worst_un = std::max(worst_un, std::abs(riccati_residual_unshifted(prof, t) - want) /
                                        std::abs(want));
    }
  }
  report(2, worst <= 1e-10 && worst_un <= 1e-10,
         "Riccati identities, 20 random profiles x 200 times",
         "shifted " + fmt17(worst) + ", un-shifted rel " + fmt17(worst_un));
}

// ---------------------------------------------------------------- criterion 3
void c3_continuity_and_limits() {
  const auto limit_iv = make_compact_limit_profile(kIV3);
  const double common = eval(limit_iv, limit_iv.T2);
  const double gap0 = continuity_gap_at_T2(limit_iv);
  const double gap_eps = continuity_gap_at_T2(make_compact_profile(kIV3, 0.05));
  const auto limit_iii = make_compact_limit_profile(kIII);
  const double tail = std::abs(eval(limit_iii, 100.0) + kIII.beta);
  report(3, gap0 <= 1e-12 * common && gap_eps <= 1e-12 * common && tail <= 1e-3,
         "profile continuity at T2 and the t -> inf limit",
         "gap(eps=0) " + fmt17(gap0) + ", gap(eps=0.05) " + fmt17(gap_eps) +
             ", |phi(100/c)+beta| " + fmt17(tail));
}

// ---------------------------------------------------------------- criterion 4
void c4_p2_coefficient() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_boundary = 0.0;
  bool nonneg = true;
  for (int i = 0; i < 10000; ++i) {
    const int n = 1 + int(rng() % 4);
    const double c = 1e-6 + 10.0 * u(rng);
    const double alpha = 1e-9 + (1.0 - 2e-9) * u(rng);
    const double bound = compact_beta_bound(n, c, alpha);
    worst_boundary = std::max(
        worst_boundary, std::abs(p2_gradient_coefficient({n, c, alpha, bound})) / std::max(1.0, c));
    const double beta = bound - 5.0 * u(rng);
    nonneg = nonneg && p2_gradient_coefficient({n, c, alpha, beta}) >= 0.0;
  }
  report(4, nonneg && worst_boundary <= 1e-12,
         "P2 gradient coefficient >= 0 under the beta bound, 10^4 tuples",
         "boundary |coef|/max(1,c) " + fmt17(worst_boundary));
}

// ---------------------------------------------------------------- criterion 5
struct HarnackRun {
  double worst_margin = 1e300;  // min over samples of (min_h + tol)
  double excursion = 0.0;       // max over samples of (-min_h)^+
  bool pass = true;
};

HarnackRun run_harnack(const ParamSet& p, int pts, double L, int band, std::uint64_t seed,
                       int nsamples = 40, double t_end = 5.0) {
  std::vector<int> ppa;
  std::vector<double> len;
  for (int a = 0; a < p.n; ++a) {
    ppa.push_back(pts);
    len.push_back(L);
  }
  const TorusGrid g = make_grid(ppa, len);
  const ScalarField f0 = make_initial(g, {InitKind::SmoothRandom, 0.5, seed, band, 0.05});
  const double t_min = 0.05 / p.c;
  std::vector<double> times;
  for (int i = 0; i < nsamples; ++i)
    times.push_back(t_min + (t_end - t_min) * i / (nsamples - 1));
  const auto traj = simulate(f0, p, t_end, times);
  const auto rep = check_trajectory(traj, make_compact_limit_profile(p));
  HarnackRun out;
  out.pass = rep.overall_pass;
  for (const auto& s : rep.samples) {
    out.worst_margin = std::min(out.worst_margin, s.min_h + s.tol);
    out.excursion = std::max(out.excursion, -std::min(0.0, s.min_h));
  }
  return out;
}

void c5_harnack_on_trajectories() {
  const auto run_iii = run_harnack(kIII, 512, 10.0, 4, 7);
  const auto run_iv = run_harnack(kIV1, 512, 10.0, 4, 7);
  std::vector<double> dxs, excs;
  bool refine_pass = true;
  for (int pts : {128, 256, 512}) {
    const auto r = run_harnack(kIII, pts, 10.0, 4, 7);
    refine_pass = refine_pass && r.pass;
    dxs.push_back(10.0 / pts);
    excs.push_back(r.excursion);
  }
  bool order_ok;
  std::string order_note;
  if (excs[0] == 0.0 && excs[1] == 0.0 && excs[2] == 0.0) {
    order_ok = true;
    order_note = "no negative excursions at any resolution";
  } else if (excs[2] == 0.0) {
    order_ok = excs[0] >= excs[1] && excs[1] >= excs[2];
    order_note = "excursions " + fmt17(excs[0]) + " -> " + fmt17(excs[1]) + " -> 0";
  } else {
    const double order = fitted_order(dxs, excs);
    order_ok = order >= 1.7;
    order_note = "excursions " + fmt17(excs[0]) + " -> " + fmt17(excs[1]) + " -> " +
                 fmt17(excs[2]) + ", fitted order " + fmt17(order);
  }
  const auto run_2d = run_harnack({2, 1.0, 0.25, -1.0}, 128, 6.0, 3, 11, 25);
  report(5, run_iii.pass && run_iv.pass && refine_pass && order_ok && run_2d.pass,
         "differential Harnack on 1-D/2-D trajectories with refinement",
         "worst margins: iii " + fmt17(run_iii.worst_margin) + ", iv " +
             fmt17(run_iv.worst_margin) + ", 2-D " + fmt17(run_2d.worst_margin) + "; " +
             order_note);
}

// ---------------------------------------------------------------- criterion 6
void c6_identity_refinement() {
  const double L = 10.0, t0 = 0.5;
  std::vector<double> dxs, residuals;
  for (int pts : {64, 128, 256}) {
    const TorusGrid g = make_grid({pts}, {L});
    const double delta = 0.05 * 64.0 / pts;
    const ScalarField f0 = make_initial(g, {InitKind::SmoothRandom, 0.5, 7, 4, 0.05});
    const auto traj = simulate(f0, kIII, t0 + delta, {t0 - delta, t0, t0 + delta});
    residuals.push_back(
        max_abs_reduce(evolution_identity_residual(traj, make_compact_limit_profile(kIII), t0).v)
            .value);
    dxs.push_back(g.dx(0));
  }
  const double order = fitted_order(dxs, residuals);
  report(6, order >= 1.9, "evolution-identity residual refinement (3 levels)",
         "residuals " + fmt17(residuals[0]) + " / " + fmt17(residuals[1]) + " / " +
             fmt17(residuals[2]) + ", fitted order " + fmt17(order));
}

// ---------------------------------------------------------------- criterion 7
void c7_cutoff() {
  bool all = true;
  for (int n : {1, 2, 3})
    for (double R : {1.0, 2.0, 10.0}) {
      std::vector<double> radii;
      for (int i = 0; i < 1000; ++i) radii.push_back(0.995 * R * i / 999.0);
      all = all && cutoff_check(n, R, 1e7, radii, 0.25, 0.05).all_pass;
    }
  report(7, all, "barrier derivative bounds at 10^3 radii, n in {1,2,3}, R in {1,2,10}",
         all ? "both inequalities hold everywhere" : "violated");
}

// ---------------------------------------------------------------- criterion 8
void c8_minimal_speed() {
  const double eta = minimal_speed_search(1.0, 1e-4);
  const double margin = eta * eta - wave_speed_bound(1, 1.0);
  report(8, std::abs(eta - 2.0) <= 1e-3 && margin >= 2.7 && margin <= 2.8,
         "minimal speed search at c = 1",
         "eta_min = " + fmt17(eta) + ", eta_min^2 - bound = " + fmt17(margin));
}

// ---------------------------------------------------------------- criterion 9
void c9_bound_chain() {
  auto front = shoot_profile(2.0, 1.0);
  if (front.classification != WaveClass::MonotoneFront) front = shoot_profile(2.05, 1.0);
  const double z = tail_z_for_value(front, 1e-4);
  const auto chain = speed_bound_chain(kNC, front, 50.0, z);
  const bool witness = chain.M_prime > chain.M_double - 1e-3;
  const ParamSet small{1, 1.0, 1e-4, speed_chain_beta(1.0, 1e-4)};
  const double gap = std::abs(m_double_prime(small) - wave_speed_bound(1, 1.0));
  report(9, witness && gap < 1e-3,
         "wave-speed bound chain (tail witness and small-alpha limit)",
         "M' - M'' = " + fmt17(chain.M_prime - chain.M_double) + ", |M'' - M'''| = " +
             fmt17(gap) + " at alpha = 1e-4");
}

// --------------------------------------------------------------- criterion 10
void c10_classical() {
  // canonical case-(i) value against the quadrature oracle
  const double rb = ratio_bound(kIII, 0.0, 1.0, 2.0);
  const double quad = std::exp(
      testutil::integrate([&](double t) { return phi_tilde(kIII, t); }, 1.0, 2.0));
  const bool value_ok = testutil::rel_err(rb, quad) <= 1e-8 &&
                        std::abs(rb - std::exp(-0.37591402502186743)) <= 1e-10;

  // 50 random simulated pairs, tol = 1e-3 rhs
  const TorusGrid g = make_grid({512}, {4.0});
  std::vector<double> times;
  for (int i = 0; i <= 45; ++i) times.push_back(0.5 + 0.1 * i);
  const auto traj = simulate(make_initial(g, {InitKind::SmoothRandom, 0.5, 13, 3, 0.1}), kIII,
                             times.back(), times);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PairSpec> pairs;
  while (pairs.size() < 50) {
    size_t a = size_t(rng() % times.size()), b = size_t(rng() % times.size());
    if (a == b) continue;
    PairSpec pr;
    pr.t1 = times[std::min(a, b)];
    pr.t2 = times[std::max(a, b)];
    pr.x1 = {4.0 * u(rng)};
    pr.x2 = {4.0 * u(rng)};
    pairs.push_back(pr);
  }
  bool sim_ok = true;
  for (const auto& rc : verify_pairs(traj, kIII, pairs, 1e-3))
    sim_ok = sim_ok && (rc.skipped || rc.pass);

  // constant data: both sides closed form, zero tolerance, 100 pairs
  const TorusGrid gc = make_grid({32}, {1.0});
  std::vector<double> tc;
  for (int i = 0; i <= 40; ++i) tc.push_back(0.5 + 0.1 * i);
  const auto ctraj =
      simulate(make_initial(gc, {InitKind::Constant, 0.5}), kIII, tc.back(), tc);
  std::vector<PairSpec> cpairs;
  while (cpairs.size() < 100) {
    size_t a = size_t(rng() % tc.size()), b = size_t(rng() % tc.size());
    if (a == b) continue;
    PairSpec pr;
    pr.t1 = tc[std::min(a, b)];
    pr.t2 = tc[std::max(a, b)];
    pr.x1 = {u(rng)};
    pr.x2 = {u(rng)};
    cpairs.push_back(pr);
  }
  bool const_ok = true;
  for (const auto& rc : verify_pairs(ctraj, kIII, cpairs, 0.0))
    const_ok = const_ok && (rc.skipped || (rc.pass && rc.margin >= 0.0));

  report(10, value_ok && sim_ok && const_ok,
         "ratio bounds: closed form, 50 simulated pairs, 100 exact pairs",
         std::string("value ") + (value_ok ? "ok" : "BAD") + ", simulated " +
             (sim_ok ? "ok" : "BAD") + ", constant-data " + (const_ok ? "ok" : "BAD"));
}

// --------------------------------------------------------------- criterion 11
void c11_determinism(const std::string& cli, const std::string& configs) {
  const auto tmp = std::filesystem::temp_directory_path() / "fisher_acceptance_det";
  std::filesystem::remove_all(tmp);
  std::filesystem::create_directories(tmp);
  const std::string base = cli + " verify harnack --config " + configs +
                           "/compact_iii_1d.cfg --seed 7 --out ";
  const std::string runA =
      "FISHER_HARNACK_THREADS=2 " + base + (tmp / "a").string() + " > /dev/null 2>&1";
  const std::string runB =
      "FISHER_HARNACK_THREADS=1 " + base + (tmp / "b").string() + " > /dev/null 2>&1";
  const int rcA = std::system(runA.c_str());
  const int rcB = std::system(runB.c_str());
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(tmp / "a" / "harnack_report.csv");
  const std::string b = slurp(tmp / "b" / "harnack_report.csv");
  const bool ok = WEXITSTATUS(rcA) == 0 && WEXITSTATUS(rcB) == 0 && !a.empty() && a == b;
  report(11, ok, "byte-identical CSV across reruns and thread counts",
         ok ? std::to_string(a.size()) + " bytes match" : "mismatch or nonzero exit");
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  c1_speed_bound_table();
  c2_riccati();
  c3_continuity_and_limits();
  c4_p2_coefficient();
  c5_harnack_on_trajectories();
  c6_identity_refinement();
  c7_cutoff();
  c8_minimal_speed();
  c9_bound_chain();
  c10_classical();
  if (argc >= 3) {
    c11_determinism(argv[1], argv[2]);
  } else {
    report(11, false, "byte-identical CSV across reruns", "CLI path/configs not supplied");
  }
  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
