#include "stab/angle.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace stab {

AngleSpecSub AngleSpecSub::make(const Exponent& e, double xi, double eta) {
  if (e.regime != Regime::Sub) throw std::invalid_argument("sub wedge needs p < 2");
  if (!(xi > 0 && 2.0 * xi < PI_L / e.p))
    throw std::invalid_argument("need 0 < 2 xi < pi/p");
  if (!(eta >= 0 && eta < xi)) throw std::invalid_argument("need 0 <= eta < xi");
  return {e, xi, eta};
}

AngleSpecSuper AngleSpecSuper::make(const Exponent& e, double xi) {
  if (e.regime != Regime::Super) throw std::invalid_argument("super cone needs p > 2");
  if (!(xi > 0 && e.p * xi < PI_L / 2))
    throw std::invalid_argument("need 0 < p xi < pi/2");
  return {e, xi};
}

SuperMoments exit_moments_super(const AngleSpecSuper& s) {
  const double p = s.e.p, xi = s.xi;
  SuperMoments m;
  m.mYp = std::pow(std::cos(xi), p) / std::cos(p * xi);
  m.mYp1 = std::pow(std::cos(xi), p - 1.0) / std::cos((p - 1.0) * xi);
  m.mYp2 = std::pow(std::cos(xi), p - 2.0) / std::cos((p - 2.0) * xi);
  m.mXp = std::pow(std::sin(xi), p) / std::cos(p * xi);
  return m;
}

double wedge_moment(double p, double xi, double eta, double g_up, double g_dn) {
  // boundary data g_up R^p at angle xi - eta, g_dn R^p at -(xi + eta)
  const double det = std::sin(2.0 * p * xi);
  return (g_up * std::sin(p * (xi + eta)) + g_dn * std::sin(p * (xi - eta))) / det;
}

SubMoments exit_moments_sub(const AngleSpecSub& s) {
  const double p = s.e.p, xi = s.xi, eta = s.eta;
  const double tu = xi - eta, td = xi + eta;
  SubMoments m;
  m.mYp = wedge_moment(p, xi, eta, std::pow(std::sin(tu), p), std::pow(std::sin(td), p));
  m.mXp1 = wedge_moment(p, xi, eta, std::pow(std::cos(tu), p), std::pow(std::cos(td), p));
  m.ray_up = wedge_moment(p, xi, eta, std::pow(std::cos(tu), p), 0.0);
  m.ray_dn = wedge_moment(p, xi, eta, 0.0, std::pow(std::cos(td), p));
  return m;
}

double coefficient_a_numerator(const AngleSpecSub& s, double eps) {
  const double p = s.e.p, xi = s.xi, eta = s.eta;
  const double t = std::tan(PI_L / (2.0 * p) - eps);
  const double tu = xi - eta, td = xi + eta;
  const double gu = std::pow(std::sin(tu), p) - std::pow(t, p) * std::pow(std::cos(tu), p);
  const double gd = std::pow(std::sin(td), p) - std::pow(t, p) * std::pow(std::cos(td), p);
  return gu * std::sin(p * td) + gd * std::sin(p * tu);
}

double coefficient_a(const AngleSpecSub& s, double eps) {
  const double num = coefficient_a_numerator(s, eps);
  const double det = std::sin(2.0 * s.e.p * s.xi);
  if (std::fabs(det) < 1e-15)
    return num >= 0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
  return num / det;
}

double gen10_margin(const Exponent& e, double eta) {
  const double p = e.p;
  const double a = PI_L / (2.0 * p);
  const double num = std::pow(std::sin(a + eta), p) + std::pow(std::sin(a - eta), p);
  const double den = std::pow(std::cos(a + eta), p) + std::pow(std::cos(a - eta), p);
  const double dp = 2.0 * std::pow(p, 3.0) / std::pow(p - 1.0, p);
  return num / den - std::pow(std::tan(a), p) + dp * (2.0 - p) * eta * eta;
}

double orth_super_lower_bound(const Exponent& e, double gap, double eps) {
  const double p = e.p;
  const double xi = PI_L / (2.0 * p) - gap;
  const double cot = 1.0 / std::tan(PI_L / (2.0 * p));
  const double s1 = std::pow(std::sin(xi), p) / std::cos(p * xi);
  const double bracket = std::pow(1.0 / std::tan(xi), p) - std::pow(cot - eps, p);
  const double m1 = std::pow(std::cos(xi), p - 1.0) / std::cos((p - 1.0) * xi);
  const double m2 = std::pow(std::cos(xi), p - 2.0) / std::cos((p - 2.0) * xi);
  return s1 * bracket - p / 2.0 * (2.0 * m1 - m2);
}

namespace {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d4a2c1b3967afdULL;
  return x ^ (x >> 31);
}

struct ExitPoint {
  double x, y;
  bool censored;
};

// Half-plane a x + b y + c >= 0 with (a, b) a unit normal.
struct Line {
  double a, b, c;
  double dist(double x, double y) const { return a * x + b * y + c; }
};

// Euler walk with a Brownian-bridge crossing test against each boundary
// line; without it the exit moments carry an O(sqrt(dt)) bias well outside
// the Monte Carlo standard errors.
ExitPoint walk(const Line lines[2], uint64_t seed, uint64_t idx, double dt,
               long max_steps) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(idx + 1)));
  std::normal_distribution<double> nrm(0.0, std::sqrt(dt));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double x = 0, y = 0;
  double d[2] = {lines[0].dist(x, y), lines[1].dist(x, y)};
  for (long k = 0; k < max_steps; k++) {
    const double nx = x + nrm(rng), ny = y + nrm(rng);
    const double nd[2] = {lines[0].dist(nx, ny), lines[1].dist(nx, ny)};
    if (nd[0] <= 0 || nd[1] <= 0) {
      int j = 0;
      double alpha = 2.0;
      for (int i = 0; i < 2; i++) {
        if (nd[i] > 0) continue;
        const double a = d[i] / (d[i] - nd[i]);
        if (a < alpha) {
          alpha = a;
          j = i;
        }
      }
      (void)j;
      return {x + alpha * (nx - x), y + alpha * (ny - y), false};
    }
    for (int i = 0; i < 2; i++) {
      const double pc = std::exp(-2.0 * d[i] * nd[i] / dt);
      if (uni(rng) < pc) {
        const double mx = 0.5 * (x + nx), my = 0.5 * (y + ny);
        const double s = lines[i].dist(mx, my);
        return {mx - lines[i].a * s, my - lines[i].b * s, false};
      }
    }
    x = nx;
    y = ny;
    d[0] = nd[0];
    d[1] = nd[1];
  }
  return {x, y, true};
}

struct PathStat {
  double xp, yp, drift;
  bool small_y, censored;
};

template <class Stat>
McResult run_mc(const Line lines[2], const Stat& stat, long n_paths, double dt,
                uint64_t seed, bool parallel, long max_steps) {
  std::vector<PathStat> ps((size_t)n_paths);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n_paths; i++)
      ps[(size_t)i] = stat(walk(lines, seed, (uint64_t)i, dt, max_steps));
  } else {
    for (long i = 0; i < n_paths; i++)
      ps[(size_t)i] = stat(walk(lines, seed, (uint64_t)i, dt, max_steps));
  }
  long double sx = 0, sx2 = 0, sy = 0, sy2 = 0, sd = 0;
  long nsmall = 0, ncens = 0;
  for (const auto& q : ps) {
    sx += q.xp;
    sx2 += q.xp * (long double)q.xp;
    sy += q.yp;
    sy2 += q.yp * (long double)q.yp;
    sd += q.drift;
    nsmall += q.small_y ? 1 : 0;
    ncens += q.censored ? 1 : 0;
  }
  McResult r;
  r.paths = n_paths;
  const long double n = n_paths;
  r.mXp = (double)(sx / n);
  r.mYp = (double)(sy / n);
  r.se_mXp = (double)std::sqrt(std::max(0.0L, (sx2 / n - (sx / n) * (sx / n)) / n));
  r.se_mYp = (double)std::sqrt(std::max(0.0L, (sy2 / n - (sy / n) * (sy / n)) / n));
  r.mean_drift = (double)(sd / n);
  r.frac_small_y = (double)nsmall / (double)n_paths;
  r.censored = (double)ncens / (double)n_paths;
  return r;
}

} // namespace

McResult mc_exit_super(const AngleSpecSuper& s, long n_paths, double dt,
                       unsigned long long seed, bool parallel) {
  const double p = s.e.p;
  // |x| <= tan(xi) (y+1): intersection of sin(xi)(y+1) -+ cos(xi) x >= 0
  const Line lines[2] = {{-std::cos(s.xi), std::sin(s.xi), std::sin(s.xi)},
                         {std::cos(s.xi), std::sin(s.xi), std::sin(s.xi)}};
  auto stat = [p](const ExitPoint& e) {
    PathStat q;
    q.xp = std::pow(std::fabs(e.x), p);
    q.yp = std::pow(std::fabs(e.y + 1.0), p);
    q.drift = e.y + 1.0;
    q.small_y = std::fabs(e.y) <= 0.01;
    q.censored = e.censored;
    return q;
  };
  return run_mc(lines, stat, n_paths, dt, seed, parallel, (long)2e6);
}

McResult mc_exit_sub(const AngleSpecSub& s, long n_paths, double dt,
                     unsigned long long seed, bool parallel) {
  const double u = s.xi - s.eta, v = s.xi + s.eta;
  const double p = s.e.p;
  // between y = tan(u)(x+1) and y = -tan(v)(x+1)
  const Line lines[2] = {{std::sin(u), -std::cos(u), std::sin(u)},
                         {std::sin(v), std::cos(v), std::sin(v)}};
  auto stat = [p](const ExitPoint& e) {
    PathStat q;
    q.xp = std::pow(std::fabs(e.x + 1.0), p);
    q.yp = std::pow(std::fabs(e.y), p);
    q.drift = e.x + 1.0;
    q.small_y = std::fabs(e.y) <= 0.01;
    q.censored = e.censored;
    return q;
  };
  return run_mc(lines, stat, n_paths, dt, seed, parallel, (long)2e6);
}

OrthSharpness sharpness_orth_report(const Exponent& e, double eps,
                                    unsigned long long seed, long mc_paths) {
  if (e.critical()) throw std::invalid_argument("no sharpness recipe at p = 2");
  const double p = e.p;
  const Constants cs = Constants::make(e);
  OrthSharpness os;
  os.eps = eps;
  if (e.regime == Regime::Sub) {
    const double tanA = std::tan(PI_L / (2.0 * p));
    const double eta = std::sqrt(eps / (2.0 - p));
    double gap = std::min(eps, (double)(0.25 * (PI_L / (2.0 * p) - eta)));
    for (int it = 0; it < 60; it++) {
      const double xi = PI_L / (2.0 * p) - gap;
      AngleSpecSub spec = AngleSpecSub::make(e, xi, eta);
      SubMoments m = exit_moments_sub(spec);
      const double a = coefficient_a(spec, eps);
      const double du = std::fabs(std::tan(xi - eta) - tanA);
      const double dd = std::fabs(std::tan(xi + eta) - tanA);
      const double dsp = std::pow(du, p) * m.ray_up + std::pow(dd, p) * m.ray_dn;
      const double ds = std::pow(dsp, 1.0 / p);
      const double nx1 = std::pow(m.mXp1, 1.0 / p);
      os.pred_ratio = a > 0;
      os.pred_deficit = ds - tanA >= eta / 2.0 * (nx1 + 1.0);
      os.xi = xi;
      os.eta = eta;
      os.retries = it;
      os.deficit_lb = ds - tanA;
      os.norm_x = std::max(nx1 - 1.0, 1e-300);
      if (os.pred_ratio && os.pred_deficit) {
        const double ny = std::pow(m.mYp, 1.0 / p);
        const double ratio_lb = ny / (nx1 + 1.0);
        const double deficit_ub = ds + tanA;
        os.report = build_report(Variant::MartOrth, e, os.norm_x,
                                 ratio_lb * os.norm_x, deficit_ub);
        return os;
      }
      gap /= 2.0;
    }
    const double ny = 1.0;
    os.report = build_report(Variant::MartOrth, e, os.norm_x, ny, os.deficit_lb);
    return os;
  }
  const double cot = 1.0 / std::tan(PI_L / (2.0 * p));
  const double c = std::cos(PI_L / (2.0 * p)), s = std::sin(PI_L / (2.0 * p));
  const double bden = (p - 1.0) * c * c - p / 4.0;
  double b = std::sin(PI_L / p) / (p * (p - 2.0));
  if (bden > 0) b = std::min(b, c * c * s * s / bden);
  double gap = 0.5 * b * eps;
  for (int it = 0; it < 60; it++) {
    if (orth_super_lower_bound(e, gap, eps) >= 0) break;
    gap /= 2.0;
    os.retries = it + 1;
  }
  os.pred_ratio = orth_super_lower_bound(e, gap, eps) >= 0;
  const double xi = PI_L / (2.0 * p) - gap;
  os.xi = xi;
  os.eta = gap;
  AngleSpecSuper spec = AngleSpecSuper::make(e, xi);
  SuperMoments m = exit_moments_super(spec);
  os.norm_x = std::pow(m.mXp, 1.0 / p);
  McResult mc = mc_exit_super(spec, mc_paths, 1e-4, seed, true);
  os.deficit_lb = std::pow(mc.frac_small_y, 1.0 / p) / 2.0;
  const double pointwise = 0.99 * std::tan(xi) * cot - 0.01;
  os.pred_deficit = pointwise >= 0.5 && mc.frac_small_y > 0;
  const double ny_lb = std::max(std::pow(m.mYp, 1.0 / p) - 1.0, 1e-300);
  const double ratio_lb = std::max(ny_lb / os.norm_x, cot - eps);
  const double cdiff = 1.0 / std::tan(xi) - cot;
  const double deficit_ub = std::pow(
      std::pow(2.0, p - 1.0) * (1.0 + std::pow(cdiff, p) * m.mXp), 1.0 / p);
  os.report =
      build_report(Variant::MartOrth, e, os.norm_x, ratio_lb * os.norm_x, deficit_ub);
  (void)cs;
  return os;
}

} // namespace stab
