#include <cmath>
#include <cstdlib>

#include "fisher/grid.hpp"

namespace fisher {

double TorusGrid::max_dx() const {
  double m = 0.0;
  for (int a = 0; a < n; ++a) m = std::max(m, dx(a));
  return m;
}

std::int64_t TorusGrid::total() const {
  std::int64_t t = 1;
  for (int a = 0; a < n; ++a) t *= pts[a];
  return t;
}

std::int64_t TorusGrid::flatten(const std::array<int, 3>& idx) const {
  std::int64_t f = 0;
  for (int a = 0; a < n; ++a) f = f * pts[a] + idx[a];
  return f;
}

std::array<int, 3> TorusGrid::unflatten(std::int64_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = n - 1; a >= 0; --a) {
    idx[a] = int(flat % pts[a]);
    flat /= pts[a];
  }
  return idx;
}

TorusGrid make_grid(const std::vector<int>& points_per_axis, const std::vector<double>& lengths) {
  if (points_per_axis.empty() || points_per_axis.size() > 3 ||
      points_per_axis.size() != lengths.size())
    throw RangeViolation("make_grid: need matching point/length lists for n = 1..3");
  TorusGrid g;
  g.n = int(points_per_axis.size());
  for (int a = 0; a < g.n; ++a) {
    if (points_per_axis[a] < 8) throw RangeViolation("make_grid: need >= 8 points per axis");
    if (!(lengths[a] > 0.0)) throw RangeViolation("make_grid: lengths must be positive");
    g.pts[a] = points_per_axis[a];
    g.len[a] = lengths[a];
  }
  return g;
}

ScalarField constant_field(const TorusGrid& g, double value) {
  return {g, std::vector<double>(size_t(g.total()), value)};
}

namespace {

inline int up(int i, int p) { return i + 1 == p ? 0 : i + 1; }
inline int dn(int i, int p) { return i == 0 ? p - 1 : i - 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Parallel kernels, dimension-specialized. Each output point depends only on
// its own stencil, so results are bitwise identical for any thread count.
// ---------------------------------------------------------------------------

ScalarField laplacian(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  ScalarField out{g, std::vector<double>(f.v.size())};
  const double* in = f.v.data();
  double* o = out.v.data();
  if (g.n == 1) {
    const int p0 = g.pts[0];
    const double ix2 = 1.0 / (g.dx(0) * g.dx(0));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < p0; ++i)
      o[i] = (in[up(i, p0)] - 2.0 * in[i] + in[dn(i, p0)]) * ix2;
  } else if (g.n == 2) {
    const int p0 = g.pts[0], p1 = g.pts[1];
    const double ix2 = 1.0 / (g.dx(0) * g.dx(0)), iy2 = 1.0 / (g.dx(1) * g.dx(1));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < p0; ++i) {
      const double* rm = in + std::int64_t(dn(i, p0)) * p1;
      const double* rc = in + std::int64_t(i) * p1;
      const double* rp = in + std::int64_t(up(i, p0)) * p1;
      double* ro = o + std::int64_t(i) * p1;
      for (int j = 0; j < p1; ++j)
        ro[j] = (rp[j] - 2.0 * rc[j] + rm[j]) * ix2 +
                (rc[up(j, p1)] - 2.0 * rc[j] + rc[dn(j, p1)]) * iy2;
    }
  } else {
    const int p0 = g.pts[0], p1 = g.pts[1], p2 = g.pts[2];
    const double ix2 = 1.0 / (g.dx(0) * g.dx(0)), iy2 = 1.0 / (g.dx(1) * g.dx(1)),
                 iz2 = 1.0 / (g.dx(2) * g.dx(2));
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < p0; ++i)
      for (int j = 0; j < p1; ++j) {
        const std::int64_t base = (std::int64_t(i) * p1 + j) * p2;
        const std::int64_t bim = (std::int64_t(dn(i, p0)) * p1 + j) * p2;
        const std::int64_t bip = (std::int64_t(up(i, p0)) * p1 + j) * p2;
        const std::int64_t bjm = (std::int64_t(i) * p1 + dn(j, p1)) * p2;
        const std::int64_t bjp = (std::int64_t(i) * p1 + up(j, p1)) * p2;
        for (int k = 0; k < p2; ++k)
          o[base + k] = (in[bip + k] - 2.0 * in[base + k] + in[bim + k]) * ix2 +
                        (in[bjp + k] - 2.0 * in[base + k] + in[bjm + k]) * iy2 +
                        (in[base + up(k, p2)] - 2.0 * in[base + k] + in[base + dn(k, p2)]) * iz2;
      }
  }
  return out;
}

std::vector<ScalarField> gradient(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  std::vector<ScalarField> out;
  out.reserve(g.n);
  for (int a = 0; a < g.n; ++a) out.push_back({g, std::vector<double>(f.v.size())});
  const double* in = f.v.data();
  if (g.n == 1) {
    const int p0 = g.pts[0];
    const double h = 0.5 / g.dx(0);
    double* o = out[0].v.data();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < p0; ++i) o[i] = (in[up(i, p0)] - in[dn(i, p0)]) * h;
  } else if (g.n == 2) {
    const int p0 = g.pts[0], p1 = g.pts[1];
    const double h0 = 0.5 / g.dx(0), h1 = 0.5 / g.dx(1);
    double* o0 = out[0].v.data();
    double* o1 = out[1].v.data();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < p0; ++i) {
      const double* rm = in + std::int64_t(dn(i, p0)) * p1;
      const double* rc = in + std::int64_t(i) * p1;
      const double* rp = in + std::int64_t(up(i, p0)) * p1;
      for (int j = 0; j < p1; ++j) {
        o0[std::int64_t(i) * p1 + j] = (rp[j] - rm[j]) * h0;
        o1[std::int64_t(i) * p1 + j] = (rc[up(j, p1)] - rc[dn(j, p1)]) * h1;
      }
    }
  } else {
    const int p0 = g.pts[0], p1 = g.pts[1], p2 = g.pts[2];
    const double h0 = 0.5 / g.dx(0), h1 = 0.5 / g.dx(1), h2 = 0.5 / g.dx(2);
    double* o0 = out[0].v.data();
    double* o1 = out[1].v.data();
    double* o2 = out[2].v.data();
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < p0; ++i)
      for (int j = 0; j < p1; ++j) {
        const std::int64_t base = (std::int64_t(i) * p1 + j) * p2;
        const std::int64_t bim = (std::int64_t(dn(i, p0)) * p1 + j) * p2;
        const std::int64_t bip = (std::int64_t(up(i, p0)) * p1 + j) * p2;
        const std::int64_t bjm = (std::int64_t(i) * p1 + dn(j, p1)) * p2;
        const std::int64_t bjp = (std::int64_t(i) * p1 + up(j, p1)) * p2;
        for (int k = 0; k < p2; ++k) {
          o0[base + k] = (in[bip + k] - in[bim + k]) * h0;
          o1[base + k] = (in[bjp + k] - in[bjm + k]) * h1;
          o2[base + k] = (in[base + up(k, p2)] - in[base + dn(k, p2)]) * h2;
        }
      }
  }
  return out;
}

ScalarField grad_norm_sq(const ScalarField& f) {
  auto gr = gradient(f);
  ScalarField out{f.grid, std::vector<double>(f.v.size(), 0.0)};
  const std::int64_t N = f.grid.total();
  for (int a = 0; a < f.grid.n; ++a) {
    const double* ga = gr[a].v.data();
    double* o = out.v.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < N; ++i) o[i] += ga[i] * ga[i];
  }
  return out;
}

ScalarField hessian_frobenius_sq(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  ScalarField out{g, std::vector<double>(f.v.size(), 0.0)};
  const double* in = f.v.data();
  double* o = out.v.data();
  const std::int64_t N = g.total();
  // Diagonal and cross terms via generic index arithmetic; n <= 3 keeps the
  // neighbor bookkeeping cheap relative to the loads.
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < N; ++idx) {
    const std::array<int, 3> mi = g.unflatten(idx);
    double sum = 0.0;
    for (int a = 0; a < g.n; ++a) {
      std::array<int, 3> ip = mi, im = mi;
      ip[a] = up(mi[a], g.pts[a]);
      im[a] = dn(mi[a], g.pts[a]);
      const double haa =
          (in[g.flatten(ip)] - 2.0 * in[idx] + in[g.flatten(im)]) / (g.dx(a) * g.dx(a));
      sum += haa * haa;
      for (int b = a + 1; b < g.n; ++b) {
        std::array<int, 3> pp = ip, pm = ip, mp = im, mm = im;
        pp[b] = up(mi[b], g.pts[b]);
        pm[b] = dn(mi[b], g.pts[b]);
        mp[b] = up(mi[b], g.pts[b]);
        mm[b] = dn(mi[b], g.pts[b]);
        const double hab = (in[g.flatten(pp)] - in[g.flatten(pm)] - in[g.flatten(mp)] +
                            in[g.flatten(mm)]) /
                           (4.0 * g.dx(a) * g.dx(b));
        sum += 2.0 * hab * hab;
      }
    }
    o[idx] = sum;
  }
  return out;
}

ScalarField log_field(const ScalarField& f) {
  for (double x : f.v)
    if (!(x > 0.0)) throw NonpositiveField("log_field: field must be strictly positive");
  ScalarField out{f.grid, std::vector<double>(f.v.size())};
  const std::int64_t N = f.grid.total();
  const double* in = f.v.data();
  double* o = out.v.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < N; ++i) o[i] = std::log(in[i]);
  return out;
}

double geodesic_distance(const TorusGrid& g, const std::vector<double>& x1,
                         const std::vector<double>& x2) {
  if (int(x1.size()) != g.n || int(x2.size()) != g.n)
    throw RangeViolation("geodesic_distance: point dimension mismatch");
  double s = 0.0;
  for (int a = 0; a < g.n; ++a) {
    double d = std::fmod(std::abs(x1[a] - x2[a]), g.len[a]);
    d = std::min(d, g.len[a] - d);
    s += d * d;
  }
  return std::sqrt(s);
}

std::int64_t nearest_index(const TorusGrid& g, const std::vector<double>& x) {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = 0; a < g.n; ++a) {
    double xa = std::fmod(x[a], g.len[a]);
    if (xa < 0.0) xa += g.len[a];
    int i = int(std::lround(xa / g.dx(a)));
    idx[a] = i % g.pts[a];
  }
  return g.flatten(idx);
}

namespace {

constexpr std::int64_t kBlock = 4096;

}  // namespace

MinLoc min_reduce(const std::vector<double>& v) {
  const std::int64_t N = std::int64_t(v.size());
  const std::int64_t nb = (N + kBlock - 1) / kBlock;
  std::vector<MinLoc> blocks(static_cast<size_t>(nb));
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * kBlock, hi = std::min(N, lo + kBlock);
    MinLoc m{v[size_t(lo)], lo};
    for (std::int64_t i = lo + 1; i < hi; ++i)
      if (v[size_t(i)] < m.value) m = {v[size_t(i)], i};
    blocks[size_t(b)] = m;
  }
  MinLoc m = blocks[0];
  for (std::int64_t b = 1; b < nb; ++b)
    if (blocks[size_t(b)].value < m.value) m = blocks[size_t(b)];
  return m;
}

MinLoc max_abs_reduce(const std::vector<double>& v) {
  const std::int64_t N = std::int64_t(v.size());
  const std::int64_t nb = (N + kBlock - 1) / kBlock;
  std::vector<MinLoc> blocks(static_cast<size_t>(nb));
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::int64_t lo = b * kBlock, hi = std::min(N, lo + kBlock);
    MinLoc m{std::abs(v[size_t(lo)]), lo};
    for (std::int64_t i = lo + 1; i < hi; ++i)
      if (std::abs(v[size_t(i)]) > m.value) m = {std::abs(v[size_t(i)]), i};
    blocks[size_t(b)] = m;
  }
  MinLoc m = blocks[0];
  for (std::int64_t b = 1; b < nb; ++b)
    if (blocks[size_t(b)].value > m.value) m = blocks[size_t(b)];
  return m;
}

// ---------------------------------------------------------------------------
// Serial reference stencils (generic index arithmetic, no pragmas).
// ---------------------------------------------------------------------------

namespace ref {

std::vector<ScalarField> gradient(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  std::vector<ScalarField> out;
  for (int a = 0; a < g.n; ++a) out.push_back({g, std::vector<double>(f.v.size())});
  for (std::int64_t idx = 0; idx < g.total(); ++idx) {
    const std::array<int, 3> mi = g.unflatten(idx);
    for (int a = 0; a < g.n; ++a) {
      std::array<int, 3> ip = mi, im = mi;
      ip[a] = up(mi[a], g.pts[a]);
      im[a] = dn(mi[a], g.pts[a]);
      out[a].v[size_t(idx)] = (f.v[size_t(g.flatten(ip))] - f.v[size_t(g.flatten(im))]) *
                              (0.5 / g.dx(a));
    }
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  ScalarField out{g, std::vector<double>(f.v.size(), 0.0)};
  // Same arithmetic as the parallel kernel (reciprocal then multiply) so the
  // two implementations agree bitwise.
  std::array<double, 3> inv{};
  for (int a = 0; a < g.n; ++a) inv[a] = 1.0 / (g.dx(a) * g.dx(a));
  for (std::int64_t idx = 0; idx < g.total(); ++idx) {
    const std::array<int, 3> mi = g.unflatten(idx);
    double s = 0.0;
    for (int a = 0; a < g.n; ++a) {
      std::array<int, 3> ip = mi, im = mi;
      ip[a] = up(mi[a], g.pts[a]);
      im[a] = dn(mi[a], g.pts[a]);
      s += (f.v[size_t(g.flatten(ip))] - 2.0 * f.v[size_t(idx)] + f.v[size_t(g.flatten(im))]) *
           inv[a];
    }
    out.v[size_t(idx)] = s;
  }
  return out;
}

ScalarField hessian_frobenius_sq(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  ScalarField out{g, std::vector<double>(f.v.size(), 0.0)};
  for (std::int64_t idx = 0; idx < g.total(); ++idx) {
    const std::array<int, 3> mi = g.unflatten(idx);
    double sum = 0.0;
    for (int a = 0; a < g.n; ++a) {
      std::array<int, 3> ip = mi, im = mi;
      ip[a] = up(mi[a], g.pts[a]);
      im[a] = dn(mi[a], g.pts[a]);
      const double haa = (f.v[size_t(g.flatten(ip))] - 2.0 * f.v[size_t(idx)] +
                          f.v[size_t(g.flatten(im))]) /
                         (g.dx(a) * g.dx(a));
      sum += haa * haa;
      for (int b = a + 1; b < g.n; ++b) {
        std::array<int, 3> pp = ip, pm = ip, mp = im, mm = im;
        pp[b] = up(mi[b], g.pts[b]);
        pm[b] = dn(mi[b], g.pts[b]);
        mp[b] = up(mi[b], g.pts[b]);
        mm[b] = dn(mi[b], g.pts[b]);
        const double hab =
            (f.v[size_t(g.flatten(pp))] - f.v[size_t(g.flatten(pm))] -
             f.v[size_t(g.flatten(mp))] + f.v[size_t(g.flatten(mm))]) /
            (4.0 * g.dx(a) * g.dx(b));
        sum += 2.0 * hab * hab;
      }
    }
    out.v[size_t(idx)] = sum;
  }
  return out;
}

}  // namespace ref

}  // namespace fisher
