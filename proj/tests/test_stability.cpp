#include "stab/field.hpp"
#include "stab/stability.hpp"

#include <doctest.h>

#include <cmath>

using namespace stab;

TEST_CASE("degenerate experiment gives eps = 0 and a zero bound") {
  Exponent e = Exponent::make(1.5);
  StabilityReport r = build_report(Variant::MartNonOrth, e, 1.0, 2.0, 0.0);
  CHECK(r.eps == 0.0);
  CHECK(r.bound == 0.0);
  CHECK(r.pass);
  // ratio above the sharp constant still clamps at zero
  StabilityReport s = build_report(Variant::MartNonOrth, e, 1.0, 2.5, 0.0);
  CHECK(s.eps == 0.0);
}

TEST_CASE("singular density experiment at p = 3/2") {
  const double b = -1.32, p = 1.5;
  Exponent e = Exponent::make(p);
  const double nf = lp_norm_radial(f_beta_profile(b, FBetaRegime::Sub), p);
  const double nt = lp_norm_radial(bf_beta_profile(b, FBetaRegime::Sub), p);
  const double df = lp_norm_radial(deficit_profile(b, FBetaRegime::Sub, 2.0), p);
  CHECK(std::pow(nf, p) == doctest::Approx(100.0 * M_PI).epsilon(1e-9));
  CHECK(std::pow(nt, p) == doctest::Approx(280.51 * M_PI).epsilon(1e-3));
  StabilityReport r = build_report(Variant::Multiplier, e, nf, nt, df);
  CHECK(r.ratio_raw == doctest::Approx(1.98895).epsilon(1e-4));
  CHECK(r.deficit / nf == doctest::Approx(0.2368).epsilon(1e-3));
  CHECK(r.bound / nf == doctest::Approx(0.6547).epsilon(1e-2));
  CHECK(r.pass);
  CHECK(r.margin > 0);
}

TEST_CASE("quadratic exponent reports no stability") {
  Exponent e2 = Exponent::make(2.0);
  StabilityReport r = build_report(Variant::Riesz, e2, 1.0, 0.9, 0.5);
  CHECK(r.no_stability);
  CHECK(r.pass);
  CHECK(std::isnan(r.bound));
  CHECK(std::isnan(r.margin));
}

TEST_CASE("csv layout") {
  CHECK(csv_header() == "variant,p,eps,ratio_raw,deficit,bound,margin,pass");
  Exponent e = Exponent::make(4.0);
  StabilityReport r = build_report(Variant::Riesz, e, 2.0, 3.0, 0.1);
  std::string row = csv_row(r);
  CHECK(row.substr(0, 6) == "Riesz,");
  CHECK(row.find("nan") == std::string::npos);
}

TEST_CASE("sweep aggregation") {
  Exponent e = Exponent::make(4.0);
  SweepResult empty = sweep(Variant::Multiplier, e, {});
  CHECK(std::isnan(empty.worst_margin));
  CHECK(empty.all_pass);
  std::vector<Experiment> xs = {{1.0, 2.0, 0.05}, {1.0, 2.5, 0.2}};
  SweepResult r = sweep(Variant::Multiplier, e, xs);
  CHECK(r.rows.size() == 2);
  CHECK(r.worst_margin ==
        doctest::Approx(std::min(r.rows[0].margin, r.rows[1].margin)));
}

TEST_CASE("pass flips as the deficit crosses the bound") {
  Exponent e = Exponent::make(1.5);
  StabilityReport lo = build_report(Variant::MartOrth, e, 1.0, 1.5, 0.01);
  CHECK(lo.pass);
  StabilityReport hi = build_report(Variant::MartOrth, e, 1.0, 1.5,
                                    lo.bound + 1e-6);
  CHECK(!hi.pass);
  CHECK(hi.bound == lo.bound);
}
