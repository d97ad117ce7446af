#pragma once

#include "stab/exponent.hpp"

#include <span>
#include <string>
#include <vector>

namespace stab {

enum class Family { NonOrth, Orth };
enum class RegionU { Whole, Upper, Lower };
enum class RegionV { Whole, Cone, Flat };

double norm2(std::span<const double> v);

// Bellman function for the non-orthogonal inequality; depends on (|x|, |y|).
double eval_U(const Exponent& e, double nx, double ny);
double eval_U_vec(const Exponent& e, std::span<const double> x, std::span<const double> y);
RegionU region_U(const Exponent& e, double nx, double ny);

// Bellman function for the orthogonal inequality on the plane (x, y), y scalar.
double eval_V(const Exponent& e, double x, double y);
RegionV region_V(const Exponent& e, double x, double y);

// Majorization gap in reduced coordinates: RHS - Bellman, must be <= 0.
// NonOrth: t = s in [0,1] (p<2: s = |y|/(|x|+|y|), p>2: s = |x|/(|x|+|y|)).
// Orth:    t = theta in [0, pi/2] on the unit circle.
double majorization_gap(const Exponent& e, Family fam, double t);
double majorization_tangency_point(const Exponent& e, Family fam);

struct GapSweep {
  double max_gap = 0;       // max over grid, should be <= ~0
  double tangency_gap = 0;  // gap at the touching point, should be ~0
  double arg_max = 0;
  long n = 0;
};
GapSweep sweep_majorization(const Exponent& e, Family fam, long n, bool parallel);

struct FormResult {
  double value = 0;
  bool near_singular = false;
};

// Second derivative of t -> U(x + t h, y + t k) at t = 0, |k| <= |h| expected.
FormResult hessian_form_U(const Exponent& e, std::span<const double> x,
                          std::span<const double> y, std::span<const double> h,
                          std::span<const double> k, double step);
// Five-point discrete Laplacian of V, should be <= ~0 away from the fold lines.
FormResult superharmonic_defect_V(const Exponent& e, double x, double y, double step);
// Second derivative in the y direction; >= ~0 (convexity in y).
FormResult y_convexity_defect_U(const Exponent& e, std::span<const double> x,
                                std::span<const double> y, std::span<const double> k,
                                double step);
FormResult y_convexity_defect_V(const Exponent& e, double x, double y, double step);

struct LemmaInfo {
  std::string id;
  double p_lo, p_hi;
};
std::vector<LemmaInfo> lemma_catalog();
// Margin of the named scalar inequality at exponent p; >= ~0 when valid.
double lemma_margin(const std::string& id, double p);

struct LemmaMargin {
  std::string id;
  double min_margin;
  double arg_min;
};
std::vector<LemmaMargin> lemma_suite(long grid_per_lemma = 1000);

} // namespace stab
