#include "stab/stability.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace stab {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::MartNonOrth: return "MartNonOrth";
    case Variant::MartOrth: return "MartOrth";
    case Variant::Multiplier: return "Multiplier";
    case Variant::Riesz: return "Riesz";
  }
  return "?";
}

StabilityReport build_report(Variant v, const Exponent& e, double norm_f,
                             double norm_Tf, double deficit) {
  if (!(norm_f > 0)) throw std::invalid_argument("norm_f must be positive");
  const Constants c = Constants::make(e);
  const bool orth = v == Variant::MartOrth || v == Variant::Riesz;
  StabilityReport r;
  r.variant = v;
  r.p = e.p;
  r.sharp_const = (double)(orth ? c.sharp_orth : c.sharp_nonorth);
  r.ratio_raw = norm_Tf / norm_f;
  r.deficit = deficit;
  if (e.critical()) {
    r.no_stability = true;
    r.eps = std::max(0.0, r.sharp_const - r.ratio_raw);
    r.bound = std::nan("");
    r.margin = std::nan("");
    r.pass = true;
    return r;
  }
  r.eps = std::max(0.0, r.sharp_const - r.ratio_raw);
  const double cp = (double)(orth ? c.c_orth : c.c_nonorth);
  const double expo = e.regime == Regime::Sub ? 0.5 : 1.0 / e.p;
  r.bound = cp * std::pow(r.eps, expo) * norm_f;
  r.margin = r.bound - r.deficit;
  r.pass = r.deficit <= r.bound;
  return r;
}

std::string csv_header() { return "variant,p,eps,ratio_raw,deficit,bound,margin,pass"; }

std::string csv_row(const StabilityReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d",
                variant_name(r.variant), r.p, r.eps, r.ratio_raw, r.deficit, r.bound,
                r.margin, r.pass ? 1 : 0);
  return buf;
}

SweepResult sweep(Variant v, const Exponent& e, const std::vector<Experiment>& xs) {
  SweepResult out;
  out.worst_margin = std::nan("");
  for (const auto& x : xs) {
    StabilityReport r = build_report(v, e, x.norm_f, x.norm_Tf, x.deficit);
    if (!r.pass) out.all_pass = false;
    if (std::isnan(out.worst_margin) || r.margin < out.worst_margin)
      out.worst_margin = r.margin;
    out.rows.push_back(r);
  }
  return out;
}

} // namespace stab
