#pragma once

#include "stab/exponent.hpp"

#include <string>
#include <vector>

namespace stab {

enum class Variant { MartNonOrth, MartOrth, Multiplier, Riesz };

const char* variant_name(Variant v);

struct StabilityReport {
  Variant variant = Variant::MartNonOrth;
  double p = 2;
  double sharp_const = 1;
  double ratio_raw = 0;   // norm_Tf / norm_f
  double eps = 0;         // max(0, sharp - ratio)
  double deficit = 0;     // ||(|Tf| - sharp |f|)||_p or martingale analogue
  double bound = 0;       // c_p eps^{1/2 or 1/p} norm_f
  double margin = 0;      // bound - deficit
  bool pass = false;
  bool no_stability = false; // p == 2 marker
};

StabilityReport build_report(Variant v, const Exponent& e, double norm_f,
                             double norm_Tf, double deficit);

std::string csv_header();
std::string csv_row(const StabilityReport& r);

struct Experiment {
  double norm_f, norm_Tf, deficit;
};

struct SweepResult {
  std::vector<StabilityReport> rows;
  double worst_margin = 0;
  bool all_pass = true;
};
SweepResult sweep(Variant v, const Exponent& e, const std::vector<Experiment>& xs);

} // namespace stab
