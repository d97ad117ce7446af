#include "stab/bellman.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace stab {

double norm2(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double eval_U(const Exponent& e, double nx, double ny) {
  const double p = e.p;
  if (e.regime == Regime::Critical) return ny * ny - nx * nx;
  const double up = p * std::pow(1.0 - 1.0 / p, p - 1.0);
  if (e.regime == Regime::Sub)
    return up * ((p - 1.0) * ny - nx) * std::pow(nx + ny, p - 1.0);
  if (ny >= (p - 2.0) * nx)
    return up * (ny - (p - 1.0) * nx) * std::pow(nx + ny, p - 1.0);
  return -std::pow(p - 1.0, 2.0 * p - 2.0) * std::pow(p, 2.0 - p) * std::pow(nx, p);
}

double eval_U_vec(const Exponent& e, std::span<const double> x, std::span<const double> y) {
  return eval_U(e, norm2(x), norm2(y));
}

RegionU region_U(const Exponent& e, double nx, double ny) {
  if (e.regime != Regime::Super) return RegionU::Whole;
  return ny >= (e.p - 2.0) * nx ? RegionU::Upper : RegionU::Lower;
}

double eval_V(const Exponent& e, double x, double y) {
  const double p = e.p;
  if (e.regime == Regime::Critical) return y * y - x * x;
  const Constants c = Constants::make(e);
  const double ax = std::fabs(x), ay = std::fabs(y);
  const double R = std::hypot(ax, ay);
  if (R == 0) return 0;
  if (e.regime == Regime::Sub) {
    const double th = std::atan2(y, ax); // in [-pi/2, pi/2]
    return -(double)c.beta_p * std::pow(R, p) * std::cos(p * th);
  }
  const double th = std::atan2(ay, ax); // in [0, pi/2]
  if (th >= PI_L / 2 - PI_L / (2 * (p - 1.0)))
    return (double)c.beta_p * std::pow(R, p) * std::cos(p * (PI_L / 2 - th));
  return -(double)c.gamma_p * std::pow(ax, p);
}

RegionV region_V(const Exponent& e, double x, double y) {
  if (e.regime != Regime::Super) return RegionV::Whole;
  const double th = std::atan2(std::fabs(y), std::fabs(x));
  return th >= PI_L / 2 - PI_L / (2 * (e.p - 1.0)) ? RegionV::Cone : RegionV::Flat;
}

namespace {

double gap_with(const Exponent& e, const Constants& c, Family fam, double t) {
  const double p = e.p;
  if (fam == Family::NonOrth) {
    const double s = t;
    const double up = p * std::pow(1.0 - 1.0 / p, p - 1.0);
    if (e.regime == Regime::Sub) {
      return -up * (p * s - 1.0) + std::pow((p - 1.0) * s, p) - std::pow(1.0 - s, p) +
             (double)c.ratio_gap * (p * s - 1.0) * (p * s - 1.0);
    }
    const double al = (double)c.alpha_p;
    if (s <= 1.0 / (p - 1.0))
      return -up * (1.0 - p * s) + std::pow(1.0 - s, p) - std::pow((p - 1.0) * s, p) +
             al * std::pow(std::fabs(1.0 - p * s), p);
    return -std::pow(p - 1.0, p) * (1.0 - std::pow(1.0 - 1.0 / p, p - 2.0)) * std::pow(s, p) +
           std::pow(1.0 - s, p) + al * std::pow(p * s - 1.0, p);
  }
  const double th = t, sn = std::sin(th), cs = std::cos(th);
  const double a = PI_L / (2 * p);
  if (e.regime == Regime::Sub) {
    const double tg = std::tan(a);
    const double rhs = std::pow(sn, p) - std::pow(tg, p) * std::pow(cs, p) +
                       (double)c.kappa_p * (sn - tg * cs) * (sn - tg * cs) *
                           std::pow(cs + sn, p - 2.0);
    const double v = -(double)c.beta_p * std::cos(p * th);
    return rhs - v;
  }
  const double ct = 1.0 / std::tan(a);
  const double rhs = std::pow(sn, p) - std::pow(ct, p) * std::pow(cs, p) +
                     (double)c.mu_p * std::pow(std::fabs(sn - ct * cs), p);
  const double v = th >= PI_L / 2 - PI_L / (2 * (p - 1.0))
                       ? (double)c.beta_p * std::cos(p * (PI_L / 2 - th))
                       : -(double)c.gamma_p * std::pow(cs, p);
  return rhs - v;
}

} // namespace

double majorization_gap(const Exponent& e, Family fam, double t) {
  return gap_with(e, Constants::make(e), fam, t);
}

double majorization_tangency_point(const Exponent& e, Family fam) {
  if (fam == Family::NonOrth) return 1.0 / e.p;
  if (e.regime == Regime::Sub) return PI_L / (2 * e.p);
  return PI_L / 2 - PI_L / (2 * e.p);
}

GapSweep sweep_majorization(const Exponent& e, Family fam, long n, bool parallel) {
  const Constants c = Constants::make(e);
  const double hi = fam == Family::NonOrth ? 1.0 : (double)(PI_L / 2);
  GapSweep r;
  r.n = n;
  double best = -1e300, arg = 0;
  if (parallel) {
#pragma omp parallel
    {
      double lbest = -1e300, larg = 0;
#pragma omp for nowait
      for (long i = 0; i < n; i++) {
        const double t = hi * (double)i / (double)(n - 1);
        const double g = gap_with(e, c, fam, t);
        if (g > lbest) {
          lbest = g;
          larg = t;
        }
      }
#pragma omp critical
      if (lbest > best || (lbest == best && larg < arg)) {
        best = lbest;
        arg = larg;
      }
    }
  } else {
    for (long i = 0; i < n; i++) {
      const double t = hi * (double)i / (double)(n - 1);
      const double g = gap_with(e, c, fam, t);
      if (g > best) {
        best = g;
        arg = t;
      }
    }
  }
  r.max_gap = best;
  r.arg_max = arg;
  r.tangency_gap = gap_with(e, c, fam, majorization_tangency_point(e, fam));
  return r;
}

FormResult hessian_form_U(const Exponent& e, std::span<const double> x,
                          std::span<const double> y, std::span<const double> h,
                          std::span<const double> k, double step) {
  const size_t d = x.size();
  std::vector<double> xa(d), ya(d);
  auto at = [&](double t) {
    for (size_t i = 0; i < d; i++) {
      xa[i] = x[i] + t * h[i];
      ya[i] = y[i] + t * k[i];
    }
    return eval_U_vec(e, xa, ya);
  };
  FormResult r;
  r.value = (at(step) - 2.0 * at(0.0) + at(-step)) / (step * step);
  const double nx = norm2(x), ny = norm2(y);
  const double sc = step * (norm2(h) + norm2(k));
  bool sing = nx < 10 * sc || ny < 10 * sc;
  if (e.regime == Regime::Super && std::fabs(ny - (e.p - 2.0) * nx) < 10 * sc * e.p)
    sing = true;
  r.near_singular = sing;
  return r;
}

FormResult superharmonic_defect_V(const Exponent& e, double x, double y, double step) {
  FormResult r;
  r.value = (eval_V(e, x + step, y) + eval_V(e, x - step, y) + eval_V(e, x, y + step) +
             eval_V(e, x, y - step) - 4.0 * eval_V(e, x, y)) /
            (step * step);
  const double R = std::hypot(x, y);
  bool sing = std::fabs(x) < 10 * step || R < 10 * step;
  if (e.regime == Regime::Super) {
    const double th = std::atan2(std::fabs(y), std::fabs(x));
    const double bd = PI_L / 2 - PI_L / (2 * (e.p - 1.0));
    if (std::fabs(th - bd) * R < 10 * step) sing = true;
    if (std::fabs(y) < 10 * step) sing = true;
  }
  r.near_singular = sing;
  return r;
}

FormResult y_convexity_defect_U(const Exponent& e, std::span<const double> x,
                                std::span<const double> y, std::span<const double> k,
                                double step) {
  const size_t d = x.size();
  std::vector<double> ya(d);
  auto at = [&](double t) {
    for (size_t i = 0; i < d; i++) ya[i] = y[i] + t * k[i];
    return eval_U_vec(e, x, ya);
  };
  FormResult r;
  r.value = (at(step) - 2.0 * at(0.0) + at(-step)) / (step * step);
  const double nx = norm2(x), ny = norm2(y), sc = step * norm2(k);
  bool sing = nx < 10 * sc || ny < 10 * sc;
  if (e.regime == Regime::Super && std::fabs(ny - (e.p - 2.0) * nx) < 10 * sc * e.p)
    sing = true;
  r.near_singular = sing;
  return r;
}

FormResult y_convexity_defect_V(const Exponent& e, double x, double y, double step) {
  FormResult r;
  r.value = (eval_V(e, x, y + step) - 2.0 * eval_V(e, x, y) + eval_V(e, x, y - step)) /
            (step * step);
  const double R = std::hypot(x, y);
  bool sing = std::fabs(x) < 10 * step || R < 10 * step;
  if (e.regime == Regime::Super) {
    const double th = std::atan2(std::fabs(y), std::fabs(x));
    const double bd = PI_L / 2 - PI_L / (2 * (e.p - 1.0));
    if (std::fabs(th - bd) * R < 10 * step || std::fabs(y) < 10 * step) sing = true;
  }
  r.near_singular = sing;
  return r;
}

namespace {

double PIp(double p) { return (double)(PI_L / 2) / p; }

double margin_impl(const std::string& id, double p) {
  const double a = PIp(p);
  const double e1 = std::exp(1.0);
  if (id == "tech2")
    return std::pow(p, 2.0 - p) * std::pow(p - 1.0, p - 1.0) * (2.0 - p) / 2.0 -
           (double)extremal_ratio_gap(p);
  if (id == "te1") return std::pow(1.0 - 1.0 / p, p - 1.0) - 2.0 / (p + 2.0);
  if (id == "te2")
    return p * std::pow(1.0 - 1.0 / p, p - 1.0) - 1.0 -
           (p - 2.0) / (p - 1.0) * (0.5 - 1.0 / e1);
  if (id == "te3") return 0.5 - std::pow(1.0 - 1.0 / p, p - 1.0);
  if (id == "te4") return 1.0 / e1 - std::pow(1.0 - 1.0 / (p - 1.0), p - 1.0);
  if (id == "te5")
    return 1.0 - std::pow(1.0 - 1.0 / p, p - 2.0) - (p - 2.0) / (2.0 * (p - 1.0));
  const Constants c = Constants::make(Exponent::make(p));
  if (id == "au1")
    return -p * (p - 1.0) / 2.0 * std::pow(std::tan(a), p - 2.0) * std::cos(2.0 * a) -
           (double)c.kappa_p;
  if (id == "au2")
    return std::pow(std::tan(a), p - 2.0) -
           std::pow(std::sin(a), p - 3.0) * std::cos(a) - (double)c.kappa_p;
  if (id == "au3")
    return -p * (p - 1.0) / 2.0 * std::cos(2.0 * a) - (double)c.kappa_p;
  if (id == "auxx1")
    return 1.0 -
           std::pow(std::sin(a), p - 1.0) /
               (std::cos(a) * std::pow(std::sin((double)(PI_L / 2) / (p - 1.0)), p - 1.0)) -
           (double)c.mu_p;
  if (id == "auxx2")
    return std::pow(std::cos(a) * std::sin(a), p - 2.0) * std::cos(2.0 * a) /
               std::pow(std::sin(a / (p - 1.0)), p - 2.0) -
           (double)c.mu_p;
  if (id == "auxx3")
    return std::pow(std::cos(a), p - 1.0) / std::sin(a) - 1.0 - (double)c.mu_p;
  if (id == "gen0")
    return std::sqrt((p - 1.0) / p) -
           std::sin(a) / std::sin((double)(PI_L / 2) / (p - 1.0));
  if (id == "gen2") return std::pow(std::cos(a), p - 1.0) - std::sqrt(0.5);
  if (id == "ge1") return std::sin(a) - 1.0 + (2.0 - std::sqrt(3.0)) * (p - 1.0);
  if (id == "ge2")
    return 1.0 - std::pow(std::cos(a), p - 1.0) - (2.0 - std::sqrt(2.0)) * (p - 1.0);
  if (id == "ssam1") return std::sin(a) - std::pow(std::cos(a), p - 1.0) - (p - 1.0) / 8.0;
  if (id == "ge3") return std::sin(a) - std::cos(a) + std::cos(2.0 * a) / std::sqrt(2.0);
  if (id == "ge4")
    return std::cos(a) - std::pow(std::cos(a), p - 1.0) +
           4.0 / (double)PI_L * (1.0 - std::sqrt(2.0)) * std::cos(2.0 * a);
  if (id == "ge5a")
    return std::cos(a) - std::pow(std::cos(a), p - 1.0) -
           0.5 * (1.0 - std::pow(2.0, 2.0 - p));
  if (id == "ge5b")
    return 0.5 * (1.0 - std::pow(2.0, 2.0 - p)) - (std::sqrt(2.0) - 1.0) * (p - 2.0);
  if (id == "ssam2")
    return std::sin(a) - std::pow(std::cos(a), p - 1.0) +
           std::sqrt(3.0) / 16.0 * std::cos(2.0 * a);
  throw std::invalid_argument("unknown lemma id: " + id);
}

} // namespace

std::vector<LemmaInfo> lemma_catalog() {
  return {
      {"tech2", 1.0, 2.0}, {"te1", 2.0, 10.0},  {"te2", 2.0, 10.0},
      {"te3", 2.0, 10.0},  {"te4", 2.0, 10.0},  {"te5", 2.0, 10.0},
      {"au1", 1.0, 2.0},   {"au2", 1.0, 2.0},   {"au3", 1.0, 2.0},
      {"auxx1", 2.0, 10.0}, {"auxx2", 2.0, 10.0}, {"auxx3", 2.0, 10.0},
      {"gen0", 2.0, 10.0}, {"gen2", 2.0, 10.0}, {"ge1", 1.0, 1.5},
      {"ge2", 1.0, 1.5},   {"ssam1", 1.0, 1.5}, {"ge3", 1.5, 2.0},
      {"ge4", 1.5, 2.0},   {"ge5a", 1.5, 2.0},  {"ge5b", 1.5, 2.0},
      {"ssam2", 1.5, 2.0},
  };
}

double lemma_margin(const std::string& id, double p) { return margin_impl(id, p); }

std::vector<LemmaMargin> lemma_suite(long grid) {
  std::vector<LemmaMargin> out;
  for (const auto& li : lemma_catalog()) {
    const double lo = li.p_lo + (li.p_hi - li.p_lo) * 1e-6;
    const double hi = li.p_hi - (li.p_hi > 2.0 ? 0.0 : (li.p_hi - li.p_lo) * 1e-9);
    LemmaMargin m{li.id, 1e300, lo};
    for (long i = 0; i < grid; i++) {
      const double p = lo + (hi - lo) * (double)i / (double)(grid - 1);
      const double v = margin_impl(li.id, p);
      if (v < m.min_margin) {
        m.min_margin = v;
        m.arg_min = p;
      }
    }
    out.push_back(m);
  }
  return out;
}

} // namespace stab
