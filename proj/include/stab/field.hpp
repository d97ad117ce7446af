#pragma once

#include "stab/symbols.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace stab {

struct Field2D {
  long n = 0;   // power of two
  double L = 0; // domain [-L, L]^2
  std::vector<cplx> v; // row-major, v[ix * n + iy]

  double h() const { return 2.0 * L / (double)n; }
  double coord(long i) const { return -L + (i + 0.5) * h(); }
  cplx& at(long ix, long iy) { return v[ix * n + iy]; }
  const cplx& at(long ix, long iy) const { return v[ix * n + iy]; }

  static Field2D make(long n, double L);
};

using SymbolFn = std::function<cplx(double, double)>;

// Forward DFT, multiply by symbol at the signed frequency pi*k'/L, inverse DFT.
Field2D apply_multiplier(const Field2D& f, const SymbolFn& m);

enum class FBetaRegime { Sub, Super };

cplx f_beta_value(double beta, FBetaRegime r, cplx z);
cplx closed_form_Bf_beta(double beta, FBetaRegime r, cplx z);

// Sampled field; cells with center within 4h of the origin take subcell
// averages to tame the |z|^beta singularity.
Field2D f_beta_field(double beta, FBetaRegime r, long n, double L);
// average_near_circle > 0 additionally averages cells within 2h of that
// modulus, where the sampled functions jump.
Field2D sample_field(long n, double L, const std::function<cplx(cplx)>& fn,
                     bool average_near_origin, double average_near_circle = -1.0);

double lp_norm_grid(const Field2D& f, double p, bool parallel = true);
double l2_rel_error(const Field2D& a, const Field2D& b);
// Error restricted to rmin <= |z| and max(|x|,|y|) <= boxmax; used when the
// reference has a non-square-integrable singularity or box periodization
// would dominate.
double l2_rel_error_windowed(const Field2D& a, const Field2D& b, double rmin,
                             double boxmax);

void write_field(const Field2D& f, const std::string& path);
Field2D read_field(const std::string& path);

enum class Angular { One, Unimodular, Cos2, AbsCos2, AffineAbsCos2 };

struct RadialTerm {
  double coef = 1;   // nonnegative amplitude
  double rpow = 0;   // modulus coef * r^rpow * |angular(phi)| on [r0, r1)
  double r0 = 0;
  double r1 = 1;     // may be +infinity when rpow*p + 2 < 0
  Angular ang = Angular::One;
  double a = 0, b = 0; // AffineAbsCos2: |a + b |cos 2phi||
};

struct RadialProfile {
  std::vector<RadialTerm> terms; // radially disjoint pieces
};

// Exact-to-quadrature L^p norm: closed-form radial integral times an adaptive
// Simpson angular integral (1e-10).
double lp_norm_radial(const RadialProfile& prof, double p);

RadialProfile f_beta_profile(double beta, FBetaRegime r);
RadialProfile bf_beta_profile(double beta, FBetaRegime r);
// | |Bf_beta| - sharp |f_beta| | as a radial profile.
RadialProfile deficit_profile(double beta, FBetaRegime r, double sharp);

} // namespace stab
