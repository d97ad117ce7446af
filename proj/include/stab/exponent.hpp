#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stab {

using real = long double;

inline constexpr real PI_L = 3.14159265358979323846264338327950288L;

enum class Regime { Sub, Critical, Super };

struct Exponent {
  double p = 2.0;
  Regime regime = Regime::Critical;
  double p_star = 1.0;

  static Exponent make(double p) {
    if (!std::isfinite(p) || p <= 1.0)
      throw std::invalid_argument("exponent p must be finite and > 1");
    Exponent e;
    e.p = p;
    e.regime = p < 2.0 ? Regime::Sub : (p > 2.0 ? Regime::Super : Regime::Critical);
    e.p_star = std::max(p, p / (p - 1.0));
    return e;
  }

  bool critical() const { return regime == Regime::Critical; }
};

// 1 - p (1 - 1/p)^{p-1}; computed in log form to stay accurate near p = 2.
inline real extremal_ratio_gap(real p) {
  return -std::expm1(std::log(p) + (p - 1.0L) * std::log1p(-1.0L / p));
}

struct Constants {
  double p = 2.0;
  real ratio_gap = 0;      // 1 - p(1-1/p)^{p-1}
  real c_nonorth = 0;     // stability factor, non-orthogonal variant
  real c_orth = 0;        // stability factor, orthogonal variant
  real alpha_p = 0;       // (p-2)/(p-1) (1/2 - 1/e), p > 2
  real kappa_p = 0;       // -(p-1)/8 tan^{p-2}(pi/2p) cos(pi/p), p < 2
  real beta_p = 0;        // sin^{p-1}/cos (p<2) or cos^{p-1}/sin (p>2) at pi/2p
  real gamma_p = 0;       // beta_p / sin^{p-1}(pi/(2(p-1))), p > 2
  real mu_p = 0;          // (1 - sqrt(2)/2)(p-2)/p, p > 2
  real sharp_nonorth = 1; // p* - 1
  real sharp_orth = 1;    // cot(pi/(2 p*))

  static Constants make(const Exponent& e) {
    Constants c;
    const real p = e.p;
    c.p = e.p;
    c.ratio_gap = extremal_ratio_gap(p);
    c.sharp_nonorth = (real)e.p_star - 1.0L;
    c.sharp_orth = 1.0L / std::tan(PI_L / (2.0L * (real)e.p_star));
    const real a = PI_L / (2.0L * p);
    if (e.regime == Regime::Sub) {
      c.c_nonorth = std::pow(p / (p - 1.0L), (3.0L - p) / 2.0L) / std::sqrt(c.ratio_gap);
      c.c_orth = std::sqrt(32.0L / PI_L) * std::pow(p, (3.0L - p) / 2.0L) /
                 (std::pow(p - 1.0L, (4.0L - p) / 2.0L) * std::sqrt(2.0L - p));
      c.kappa_p = -(p - 1.0L) / 8.0L * std::pow(std::tan(a), p - 2.0L) * std::cos(PI_L / p);
      c.beta_p = std::pow(std::sin(a), p - 1.0L) / std::cos(a);
    } else if (e.regime == Regime::Super) {
      const real ee = std::exp((real)1);
      c.c_nonorth = (p - 1.0L) *
                    std::pow(2.0L * p * ee / ((p - 2.0L) * (ee - 2.0L)), 1.0L / p);
      c.c_orth = (p - 1.0L) *
                 std::pow((2.0L + std::sqrt((real)2)) * p * p / ((p - 1.0L) * (p - 2.0L)),
                          1.0L / p);
      c.alpha_p = (p - 2.0L) / (p - 1.0L) * (0.5L - 1.0L / std::exp((real)1));
      c.beta_p = std::pow(std::cos(a), p - 1.0L) / std::sin(a);
      c.gamma_p = c.beta_p / std::pow(std::sin(PI_L / (2.0L * (p - 1.0L))), p - 1.0L);
      c.mu_p = (1.0L - std::sqrt((real)2) / 2.0L) * (p - 2.0L) / p;
    }
    return c;
  }
};

} // namespace stab
