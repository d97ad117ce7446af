#pragma once

#include "stab/exponent.hpp"
#include "stab/stability.hpp"

namespace stab {

// Planar Brownian motion started at the origin, killed on the boundary of a
// wedge. Two shapes are used:
//   Sub   (p < 2): apex (-1, 0), rays y = tan(xi - eta)(x+1) and
//                  y = -tan(xi + eta)(x+1); needs 2 xi < pi/p.
//   Super (p > 2): apex (0, -1), cone |x| <= tan(xi)(y+1); needs p xi < pi/2.

struct AngleSpecSub {
  Exponent e;
  double xi, eta;
  static AngleSpecSub make(const Exponent& e, double xi, double eta);
};

struct AngleSpecSuper {
  Exponent e;
  double xi;
  static AngleSpecSuper make(const Exponent& e, double xi);
};

struct SuperMoments {
  double mYp;  // E|Y+1|^p   = cos^p(xi) / cos(p xi)
  double mYp1; // E|Y+1|^{p-1}
  double mYp2; // E|Y+1|^{p-2}
  double mXp;  // E|X|^p     = sin^p(xi) / cos(p xi)
};
SuperMoments exit_moments_super(const AngleSpecSuper& s);

struct SubMoments {
  double mYp;     // E|Y|^p
  double mXp1;    // E|X+1|^p
  double ray_up;  // E[(X+1)^p ; exit on the upper ray]
  double ray_dn;  // E[(X+1)^p ; exit on the lower ray]
};
SubMoments exit_moments_sub(const AngleSpecSub& s);

// A in the harmonic solve A cos(p t) + B sin(p t) matching boundary data
// g_up R^p at t = xi - eta and g_dn R^p at t = -(xi + eta).
double wedge_moment(double p, double xi, double eta, double g_up, double g_dn);

// E|Y|^p - tan^p(pi/(2p) - eps) E|X+1|^p for the sub wedge; +/-inf when
// sin(2 p xi) = 0. coefficient_a_numerator is the same without the 1/sin factor.
double coefficient_a(const AngleSpecSub& s, double eps);
double coefficient_a_numerator(const AngleSpecSub& s, double eps);

// Two-point ratio lower bound near the diagonal of the sub wedge:
//   [sin^p(a+eta)+sin^p(a-eta)] / [cos^p(a+eta)+cos^p(a-eta)]
//     - tan^p(a) + d_p (2-p) eta^2,   a = pi/(2p), d_p = 2 p^3/(p-1)^p.
// Must be >= 0 for small eta (p < 2).
double gen10_margin(const Exponent& e, double eta);

// Exact lower bound for ||Y||_p^p - (cot(pi/2p) - eps)^p ||X||_p^p at the
// near-critical opening xi = pi/(2p) - gap (p > 2).
double orth_super_lower_bound(const Exponent& e, double gap, double eps);

struct McResult {
  double mXp = 0, mYp = 0;      // E|X|^p and E|Y+1|^p (super) or E|X+1|^p, E|Y|^p (sub)
  double se_mXp = 0, se_mYp = 0;
  double mean_drift = 0;        // E(Y+1) (super) or E(X+1) (sub); 1 by optional stopping
  double frac_small_y = 0;      // P(|Y_exit| <= 1/100), super shape only
  double censored = 0;          // fraction of paths stopped by the step cap
  long paths = 0;
};
McResult mc_exit_super(const AngleSpecSuper& s, long n_paths, double dt,
                       unsigned long long seed, bool parallel);
McResult mc_exit_sub(const AngleSpecSub& s, long n_paths, double dt,
                     unsigned long long seed, bool parallel);

struct OrthSharpness {
  double eps;
  double xi, eta;
  bool pred_ratio = false;
  bool pred_deficit = false;
  double deficit_lb = 0;
  double norm_x = 0;
  int retries = 0;
  StabilityReport report;
};
// p < 2: exact wedge moments; p > 2: exact moments plus a Monte Carlo lower
// bound on the deficit (paths/seed used only in that regime).
OrthSharpness sharpness_orth_report(const Exponent& e, double eps,
                                    unsigned long long seed, long mc_paths);

} // namespace stab
