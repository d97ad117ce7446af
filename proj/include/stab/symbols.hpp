#pragma once

#include <complex>
#include <span>
#include <vector>

namespace stab {

using cplx = std::complex<double>;

struct SymbolAtom {
  std::vector<double> theta; // unit vector
  double weight;             // > 0
  cplx psi;                  // |psi| <= 1
};

struct SymbolSpec {
  int dim = 2;
  std::vector<SymbolAtom> atoms;
  static SymbolSpec make(int dim, std::vector<SymbolAtom> atoms);
};

struct LevyAtom {
  std::vector<double> z;
  double mass; // > 0
  cplx phi;    // |phi| <= 1
};

struct LevySymbolSpec {
  int dim = 2;
  double s = 0; // time parameter, s < 0; -infinity selects the limit symbol
  std::vector<LevyAtom> atoms;
  static LevySymbolSpec make(int dim, double s, std::vector<LevyAtom> atoms);
};

// m(xi) = sum w <xi,theta>^2 psi / sum w <xi,theta>^2, 0 when the denominator
// vanishes relative to sum(w) |xi|^2.
cplx eval_m(const SymbolSpec& s, std::span<const double> xi);

// D(xi) = sum mass (1 - cos<xi,z>).
double levy_D(const LevySymbolSpec& s, std::span<const double> xi);

// M_s(xi) = (1 - exp(2 s D(xi))) num/den with num, den the (1-cos) averages;
// s = -infinity gives the pure jump-average symbol.
cplx eval_M_s(const LevySymbolSpec& s, std::span<const double> xi);

// Discretized measure: atoms kappa*theta with mass kappa^{-2} w; its limit
// symbol converges to eval_m at rate O(kappa^2).
LevySymbolSpec nu_kappa(const SymbolSpec& s, double kappa);
cplx nu_kappa_symbol(const SymbolSpec& s, double kappa, std::span<const double> xi);

enum class NamedSymbol { Riesz1, Riesz2, Hilbert, ReB, ImB };
cplx named_symbol(NamedSymbol which, std::span<const double> xi);

// Atomic specs reproducing the second order Riesz combinations.
SymbolSpec reb_spec();
SymbolSpec imb_spec();

} // namespace stab
