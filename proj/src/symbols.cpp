#include "stab/symbols.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
  return s;
}

double nrm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

} // namespace

SymbolSpec SymbolSpec::make(int dim, std::vector<SymbolAtom> atoms) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  for (const auto& a : atoms) {
    if ((int)a.theta.size() != dim) throw std::invalid_argument("atom dimension mismatch");
    if (!(a.weight > 0)) throw std::invalid_argument("weights must be positive");
    if (std::abs(a.psi) > 1.0 + 1e-12) throw std::invalid_argument("|psi| must be <= 1");
    if (std::fabs(nrm2(a.theta) - 1.0) > 1e-12)
      throw std::invalid_argument("theta must be a unit vector");
  }
  SymbolSpec s;
  s.dim = dim;
  s.atoms = std::move(atoms);
  return s;
}

LevySymbolSpec LevySymbolSpec::make(int dim, double s, std::vector<LevyAtom> atoms) {
  if (s >= 0) throw std::invalid_argument("time parameter must be negative");
  for (const auto& a : atoms) {
    if ((int)a.z.size() != dim) throw std::invalid_argument("atom dimension mismatch");
    if (!(a.mass > 0)) throw std::invalid_argument("masses must be positive");
    if (std::abs(a.phi) > 1.0 + 1e-12) throw std::invalid_argument("|phi| must be <= 1");
  }
  LevySymbolSpec l;
  l.dim = dim;
  l.s = s;
  l.atoms = std::move(atoms);
  return l;
}

cplx eval_m(const SymbolSpec& s, std::span<const double> xi) {
  cplx num = 0;
  double den = 0, wsum = 0;
  for (const auto& a : s.atoms) {
    const double q = dot(a.theta, xi);
    num += a.weight * q * q * a.psi;
    den += a.weight * q * q;
    wsum += a.weight;
  }
  const double n2 = dot(xi, xi);
  if (den <= 1e-14 * wsum * n2 || n2 == 0) return 0;
  return num / den;
}

double levy_D(const LevySymbolSpec& s, std::span<const double> xi) {
  double d = 0;
  for (const auto& a : s.atoms) d += a.mass * (1.0 - std::cos(dot(a.z, xi)));
  return d;
}

cplx eval_M_s(const LevySymbolSpec& s, std::span<const double> xi) {
  cplx num = 0;
  double den = 0, msum = 0;
  for (const auto& a : s.atoms) {
    const double q = 1.0 - std::cos(dot(a.z, xi));
    num += a.mass * q * a.phi;
    den += a.mass * q;
    msum += a.mass;
  }
  if (den <= 1e-14 * 2.0 * msum) return 0;
  double factor = 1.0;
  if (std::isfinite(s.s)) factor = -std::expm1(2.0 * s.s * levy_D(s, xi));
  return factor * num / den;
}

LevySymbolSpec nu_kappa(const SymbolSpec& s, double kappa) {
  if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
  std::vector<LevyAtom> atoms;
  for (const auto& a : s.atoms) {
    LevyAtom la;
    la.z.resize(a.theta.size());
    for (size_t i = 0; i < a.theta.size(); i++) la.z[i] = kappa * a.theta[i];
    la.mass = a.weight / (kappa * kappa);
    la.phi = a.psi;
    atoms.push_back(la);
  }
  LevySymbolSpec l;
  l.dim = s.dim;
  l.s = -std::numeric_limits<double>::infinity();
  l.atoms = std::move(atoms);
  return l;
}

cplx nu_kappa_symbol(const SymbolSpec& s, double kappa, std::span<const double> xi) {
  return eval_M_s(nu_kappa(s, kappa), xi);
}

cplx named_symbol(NamedSymbol which, std::span<const double> xi) {
  const double n = nrm2(xi);
  if (n == 0) return 0;
  const cplx mi(0, -1);
  switch (which) {
    case NamedSymbol::Riesz1: return mi * (xi[0] / n);
    case NamedSymbol::Riesz2: return mi * (xi[1] / n);
    case NamedSymbol::Hilbert: return xi[0] > 0 ? mi : (xi[0] < 0 ? -mi : cplx(0));
    case NamedSymbol::ReB: return (xi[0] * xi[0] - xi[1] * xi[1]) / (n * n);
    case NamedSymbol::ImB: return -2.0 * xi[0] * xi[1] / (n * n);
  }
  return 0;
}

SymbolSpec reb_spec() {
  return SymbolSpec::make(
      2, {{{1.0, 0.0}, 1.0, cplx(1, 0)}, {{0.0, 1.0}, 1.0, cplx(-1, 0)}});
}

SymbolSpec imb_spec() {
  const double r = std::sqrt(0.5);
  return SymbolSpec::make(
      2, {{{r, r}, 1.0, cplx(-1, 0)}, {{r, -r}, 1.0, cplx(1, 0)}});
}

} // namespace stab
