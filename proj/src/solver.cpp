#include "fisher/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fisher {

double stable_dt(const TorusGrid& g, double c, double safety) {
  if (!(safety > 0.0 && safety <= 1.0)) throw RangeViolation("stable_dt: safety in (0,1]");
  double s = 0.0;
  for (int a = 0; a < g.n; ++a) s += 1.0 / (g.dx(a) * g.dx(a));
  return safety / (2.0 * s + c);
}

double logistic_exact(double f0, double c, double t) {
  // f0 e^{ct} / (1 - f0 + f0 e^{ct}), evaluated overflow-free.
  return f0 / (f0 + (1.0 - f0) * std::exp(-c * t));
}

namespace {

// Fused RK4 right-hand side: out = lap(f) + c f (1-f).
void rhs(const ScalarField& f, double c, ScalarField& out) {
  out = laplacian(f);
  const std::int64_t N = f.grid.total();
  const double* fv = f.v.data();
  double* o = out.v.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < N; ++i) o[i] += c * fv[i] * (1.0 - fv[i]);
}

void axpy_into(const ScalarField& f, double a, const ScalarField& k, ScalarField& out) {
  const std::int64_t N = f.grid.total();
  const double* fv = f.v.data();
  const double* kv = k.v.data();
  double* o = out.v.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < N; ++i) o[i] = fv[i] + a * kv[i];
}

void rk4_step(ScalarField& f, double c, double dt, ScalarField& k1, ScalarField& k2,
              ScalarField& k3, ScalarField& k4, ScalarField& tmp) {
  rhs(f, c, k1);
  axpy_into(f, 0.5 * dt, k1, tmp);
  rhs(tmp, c, k2);
  axpy_into(f, 0.5 * dt, k2, tmp);
  rhs(tmp, c, k3);
  axpy_into(f, dt, k3, tmp);
  rhs(tmp, c, k4);
  const std::int64_t N = f.grid.total();
  double* fv = f.v.data();
  const double* a = k1.v.data();
  const double* b = k2.v.data();
  const double* cc = k3.v.data();
  const double* d = k4.v.data();
  const double w = dt / 6.0;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < N; ++i)
    fv[i] += w * (a[i] + 2.0 * b[i] + 2.0 * cc[i] + d[i]);
}

constexpr double kRangeSlack = 1e-9;

bool in_range(const ScalarField& f) {
  bool ok = true;
  const std::int64_t N = f.grid.total();
  const double* fv = f.v.data();
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (std::int64_t i = 0; i < N; ++i)
    ok = ok && fv[i] > -kRangeSlack && fv[i] < 1.0 + kRangeSlack;
  return ok;
}

}  // namespace

ScalarField make_initial(const TorusGrid& g, const InitSpec& spec) {
  switch (spec.kind) {
    case InitKind::Constant: {
      if (!(spec.value > 0.0 && spec.value < 1.0))
        throw RangeViolation("Constant initial data must lie in (0,1)");
      return constant_field(g, spec.value);
    }
    case InitKind::Bump: {
      if (!(spec.floor > 0.0) || !(spec.floor + spec.height < 1.0))
        throw RangeViolation("Bump initial data must lie in (0,1)");
      std::vector<double> center = spec.center;
      if (center.empty())
        for (int a = 0; a < g.n; ++a) center.push_back(0.5 * g.len[a]);
      ScalarField f = constant_field(g, 0.0);
      const std::int64_t N = g.total();
#pragma omp parallel for schedule(static)
      for (std::int64_t idx = 0; idx < N; ++idx) {
        const auto mi = g.unflatten(idx);
        std::vector<double> x(size_t(g.n));
        for (int a = 0; a < g.n; ++a) x[size_t(a)] = g.coord(a, mi[a]);
        const double d = geodesic_distance(g, x, center);
        f.v[size_t(idx)] =
            spec.floor + spec.height * std::exp(-d * d / (2.0 * spec.width * spec.width));
      }
      return f;
    }
    case InitKind::SmoothRandom: {
      if (!(spec.floor > 0.0 && spec.floor < 0.5))
        throw RangeViolation("SmoothRandom floor must lie in (0, 0.5)");
      // Band-limited trigonometric polynomial with mode coefficients drawn in
      // a fixed order, then rescaled into (floor, 1-floor).
      struct Mode {
        std::array<int, 3> k;
        double a, b;
      };
      std::vector<Mode> modes;
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      std::array<int, 3> k{0, 0, 0};
      const int B = spec.band;
      for (k[0] = (g.n > 0 ? -B : 0); k[0] <= B; ++k[0])
        for (k[1] = (g.n > 1 ? -B : 0); k[1] <= (g.n > 1 ? B : 0); ++k[1])
          for (k[2] = (g.n > 2 ? -B : 0); k[2] <= (g.n > 2 ? B : 0); ++k[2]) {
            // Keep one representative of each +/-k pair (first nonzero positive).
            int lead = 0;
            for (int a = 0; a < g.n; ++a)
              if (k[a] != 0) { lead = k[a]; break; }
            if (lead <= 0) continue;
            double ksq = 0.0;
            for (int a = 0; a < g.n; ++a) ksq += double(k[a]) * k[a];
            Mode m{k, unit(rng) / (1.0 + ksq), unit(rng) / (1.0 + ksq)};
            modes.push_back(m);
          }
      ScalarField f = constant_field(g, 0.0);
      const std::int64_t N = g.total();
#pragma omp parallel for schedule(static)
      for (std::int64_t idx = 0; idx < N; ++idx) {
        const auto mi = g.unflatten(idx);
        double s = 0.0;
        for (const Mode& m : modes) {
          double phase = 0.0;
          for (int a = 0; a < g.n; ++a)
            phase += 2.0 * M_PI * m.k[a] * g.coord(a, mi[a]) / g.len[a];
          s += m.a * std::cos(phase) + m.b * std::sin(phase);
        }
        f.v[size_t(idx)] = s;
      }
      double lo = f.v[0], hi = f.v[0];
      for (double x : f.v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      if (hi - lo < 1e-12) return constant_field(g, 0.5);
      const double scale = (1.0 - 2.0 * spec.floor) / (hi - lo);
      for (double& x : f.v) x = spec.floor + (x - lo) * scale;
      return f;
    }
  }
  throw RangeViolation("make_initial: unknown kind");
}

Trajectory simulate(const ScalarField& initial, const ParamSet& p, double t_end,
                    const std::vector<double>& sample_times, double safety) {
  if (!(t_end > 0.0)) throw RangeViolation("simulate: t_end must be positive");
  for (double x : initial.v)
    if (!(x > 0.0 && x <= 1.0))
      throw RangeViolation("simulate: initial values must lie in (0,1]");
  std::vector<double> samples = sample_times;
  std::sort(samples.begin(), samples.end());
  for (double s : samples)
    if (!(s > 0.0 && s <= t_end))
      throw RangeViolation("simulate: sample times must lie in (0, t_end]");

  Trajectory traj;
  traj.params = p;
  traj.grid = initial.grid;
  traj.dt_used = stable_dt(initial.grid, p.c, safety);

  ScalarField f = initial;
  ScalarField k1 = f, k2 = f, k3 = f, k4 = f, tmp = f;
  double t = 0.0;
  for (double target : samples) {
    while (t < target) {
      double dt = traj.dt_used;
      if (target - t <= dt * (1.0 + 1e-12)) dt = target - t;
      rk4_step(f, p.c, dt, k1, k2, k3, k4, tmp);
      t = (dt == traj.dt_used) ? t + dt : target;
      if (!in_range(f))
        throw StabilityViolation("simulate: solution left (-1e-9, 1+1e-9) at t=" +
                                 std::to_string(t));
    }
    traj.times.push_back(target);
    traj.fields.push_back(f);
  }
  return traj;
}

}  // namespace fisher
