#include "stab/angle.hpp"
#include "stab/bellman.hpp"
#include "stab/chain.hpp"
#include "stab/field.hpp"
#include "stab/stability.hpp"
#include "stab/symbols.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace stab;

namespace {

double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

bool criterion1(std::string& note) {
  const double t0 = now_s();
  double worst_gap = -1e300, worst_tan = 0;
  bool ok = true;
  std::vector<int> idx;
  for (int i = 21; i <= 39; i++) idx.push_back(i);
  for (int i = 41; i <= 120; i++) idx.push_back(i);
  for (int i : idx) {
    Exponent e = Exponent::make(0.05 * i);
    for (Family f : {Family::NonOrth, Family::Orth}) {
      GapSweep g = sweep_majorization(e, f, 1000000, true);
      worst_gap = std::max(worst_gap, g.max_gap);
      worst_tan = std::max(worst_tan, std::fabs(g.tangency_gap));
      ok = ok && g.max_gap <= 1e-10 && std::fabs(g.tangency_gap) <= 1e-8;
    }
  }
  const double dt = now_s() - t0;
  ok = ok && dt < 120.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "99 exponents x 2 families, max gap %.3e, worst tangency %.3e, %.1f s",
                worst_gap, worst_tan, dt);
  note = buf;
  return ok;
}

bool criterion2(std::string& note) {
  const std::vector<std::string> wanted = {
      "tech2", "te1", "te2", "te3", "te4", "te5", "au1",   "au2",
      "au3",   "auxx1", "auxx2", "auxx3", "gen0", "gen2"};
  double worst = 1e300;
  int found = 0;
  for (const auto& m : lemma_suite(1000)) {
    bool in = false;
    for (const auto& w : wanted) in = in || m.id == w;
    if (!in) continue;
    found++;
    worst = std::min(worst, m.min_margin);
  }
  const double end1 = std::fabs(lemma_margin("te1", 2.0));
  const double end2 = std::fabs(lemma_margin("gen2", 2.0));
  const bool ok = found == (int)wanted.size() && worst >= -1e-12 &&
                  end1 <= 1e-10 && end2 <= 1e-10;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d lemmas on 1000-point grids, min margin %.3e, endpoints %.1e/%.1e",
                found, worst, end1, end2);
  note = buf;
  return ok;
}

bool criterion3(std::string& note) {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_h = -1e300, worst_s = -1e300;
  for (double p : {1.25, 1.5, 3.0, 4.0}) {
    Exponent e = Exponent::make(p);
    int done = 0;
    while (done < 10000) {
      double x[2] = {u(rng), u(rng)}, y[2] = {u(rng), u(rng)};
      double h[2] = {u(rng), u(rng)}, k[2] = {u(rng), u(rng)};
      const double s =
          0.5 * (u(rng) + 1.0) * norm2(h) / std::max(norm2(k), 1e-12);
      k[0] *= s;
      k[1] *= s;
      FormResult r = hessian_form_U(e, x, y, h, k, 1e-4);
      if (r.near_singular) continue;
      worst_h = std::max(worst_h, r.value);
      done++;
    }
  }
  for (double p : {1.5, 4.0}) {
    Exponent e = Exponent::make(p);
    int done = 0;
    while (done < 10000) {
      const double x = 2.0 * u(rng), y = 2.0 * u(rng);
      if (std::hypot(x, y) < 0.2) continue;
      // 1e-3 balances truncation against roundoff in the second differences
      FormResult r = superharmonic_defect_V(e, x, y, 1e-3);
      if (r.near_singular) continue;
      worst_s = std::max(worst_s, r.value);
      done++;
    }
  }
  const bool ok = worst_h <= 1e-6 && worst_s <= 1e-5;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "10^4 points per exponent, max hessian form %.3e, max laplacian %.3e",
                worst_h, worst_s);
  note = buf;
  return ok;
}

bool check_nodes(const ChainSpec& c, double& worst) {
  std::vector<ChainState> stack{ChainState{}};
  bool ok = true;
  while (!stack.empty()) {
    ChainState s = stack.back();
    stack.pop_back();
    auto ts = transitions(c, s);
    if (ts.empty()) continue;
    double psum = 0, ef = 0, eg = 0;
    for (const auto& t : ts) {
      psum += t.prob;
      const double df = t.to.f - s.f, dg = t.to.g - s.g;
      ef += t.prob * df;
      eg += t.prob * dg;
      const double scale = std::max({std::fabs(s.f), std::fabs(s.g), 1.0});
      worst = std::max(worst, std::fabs(std::fabs(dg) - std::fabs(df)) / scale);
      stack.push_back(t.to);
    }
    const double scale = std::max({std::fabs(s.f), std::fabs(s.g), 1.0});
    worst = std::max({worst, std::fabs(psum - 1.0), std::fabs(ef) / scale,
                      std::fabs(eg) / scale});
    ok = ok && worst <= 1e-12;
  }
  return ok;
}

bool criterion4(std::string& note) {
  bool ok = true;
  double worst = 0;
  int ran = 0, skipped = 0;
  for (double p : {1.5, 4.0})
    for (double K : {4.0, std::exp(2.0)})
      for (long N : {2L, 6L, 12L}) {
        Exponent e = Exponent::make(p);
        const double delta = std::expm1(std::log(K) / (double)N) / 2.0;
        if (p > 2 && (p - 2.0) * delta > 1.0) {
          skipped++; // ladder probabilities would leave [0,1]
          continue;
        }
        ran++;
        ChainSpec c = ChainSpec::make(e, K, N, 0.0);
        ok = check_nodes(c, worst) && ok;
        TerminalDistribution d = terminal_distribution(c);
        worst = std::max(worst, std::fabs(d.total_prob - 1.0));
        const double s = 1.0 + 2.0 * c.delta;
        struct Want {
          double aF, aG, prob;
        };
        std::vector<Want> want = {{1.0, 0.0, 0.5}, {0.0, K, top_atom_prob(c)}};
        for (long k = 0; k <= N; k++)
          want.push_back({std::pow(s, (double)k) / p,
                          (p - 1.0) * std::pow(s, (double)k) / p,
                          line_atom_prob(c, k)});
        for (const auto& w : want) {
          bool matched = false;
          for (const auto& a : d.atoms) {
            const double sc = std::max({w.aF, w.aG, 1.0});
            if (std::fabs(a.absF - w.aF) <= 1e-9 * sc &&
                std::fabs(a.absG - w.aG) <= 1e-9 * sc) {
              matched = true;
              worst = std::max(worst, std::fabs(a.prob - w.prob));
            }
          }
          ok = ok && matched;
        }
        ok = ok && d.atoms.size() == (size_t)(N + 3);
      }
  ok = ok && worst <= 1e-12;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d specs enumerated (%d with invalid ladder probabilities skipped), "
                "worst defect %.3e",
                ran, skipped, worst);
  note = buf;
  return ok;
}

bool criterion5(std::string& note) {
  const double t0 = now_s();
  bool ok = true;
  double worst = 0;
  for (double p : {1.5, 4.0}) {
    Exponent e = Exponent::make(p);
    Asymptotics a = asymptotic_summary(e, 2.0, 0.0);
    LpSummary s = closed_form_norms(e, 2.0, 1 << 12, 0.0);
    worst = std::max({worst, std::fabs(s.normFp - a.limFp) / a.limFp,
                      std::fabs(s.normGp - a.limGp) / a.limGp});
  }
  Asymptotics a15 = asymptotic_summary(Exponent::make(1.5), 2.0, 0.0);
  ok = ok && std::fabs(a15.limFp - 1.31650) <= 5e-6 && worst <= 0.01;
  const double dt = now_s() - t0;
  ok = ok && dt < 5.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "N = 2^12 at log K = 2, worst relative gap %.3e, p=1.5 target %.6f, %.2f s",
                worst, a15.limFp, dt);
  note = buf;
  return ok;
}

bool criterion6(std::string& note) {
  bool ok = true;
  double worst_ratio = 1e300;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    SharpnessResult s = sharpness_report(Exponent::make(1.5), eps);
    ok = ok && s.pred_ratio && s.pred_deficit;
    const double r = std::pow(s.norms.deficitp, 1.0 / 1.5) /
                     (std::sqrt(eps) * std::pow(s.norms.normGp, 1.0 / 1.5));
    worst_ratio = std::min(worst_ratio, r);
    ok = ok && r >= 0.1;
  }
  SharpnessResult t = sharpness_report(Exponent::make(4.0), 1e-2);
  ok = ok && t.pred_ratio && t.pred_deficit;
  ok = ok && t.norms.deficitp / (1e-2 * t.norms.normFp) >= std::pow(3.0, 4.0) / 4.0;
  // the fixed-size recipe log K = 8(p-2)/eps certifies both predicates where
  // it exceeds the equality threshold; p = 2.2 is such a case
  {
    const double p = 2.2, eps = 1e-2, logK = 8.0 * (p - 2.0) / eps;
    Exponent e = Exponent::make(p);
    const long N = std::max(4096L, 128L * (long)std::ceil(logK));
    LpSummary n = closed_form_norms(e, logK, N, 0.0);
    const double c = p - 1.0 - eps;
    ok = ok && n.normGp >= std::pow(c, p) * n.normFp;
    ok = ok && n.deficitp >= std::pow(p - 1.0, p) * eps / 2.0 * n.normFp;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "p=1.5 eps sweep min deficit ratio %.3f; p=4 adaptive log K %.1f; "
                "fixed-size recipe verified at p=2.2",
                worst_ratio, t.logK);
  note = buf;
  return ok;
}

bool criterion7(std::string& note) {
  Exponent e4 = Exponent::make(4.0);
  AngleSpecSuper s = AngleSpecSuper::make(e4, 0.36);
  SuperMoments m = exit_moments_super(s);
  // |X|^p has an infinite-variance estimator here (boundary tail exponent
  // pi/(2 xi) is barely above p), so apply the 2-of-3-seed policy
  int seeds_ok = 0, seeds_run = 0;
  double zx = 0, zy = 0;
  bool ok = true;
  for (unsigned long long seed : {42ULL, 43ULL, 44ULL}) {
    if (seeds_ok >= 2) break;
    McResult mc = mc_exit_super(s, 100000, 1e-4, seed, true);
    zx = std::fabs(mc.mXp - m.mXp) / mc.se_mXp;
    zy = std::fabs(mc.mYp - m.mYp) / mc.se_mYp;
    ok = ok && mc.censored == 0.0;
    seeds_run++;
    if (zx <= 3.0 && zy <= 3.0) seeds_ok++;
  }
  ok = ok && seeds_ok >= 2;

  const double eps = 1e-4;
  const double b = std::sin(M_PI / 4.0) / 8.0;
  AngleSpecSuper near = AngleSpecSuper::make(e4, M_PI / 8.0 - b * eps);
  const double nx = std::pow(exit_moments_super(near).mXp, 0.25);
  const double want =
      std::sin(M_PI / 8.0) * std::pow(std::sin(M_PI / 4.0) * eps / 2.0, -0.25);
  ok = ok && std::fabs(nx - want) <= 0.05 * want;

  Exponent e15 = Exponent::make(1.5);
  const double eta = std::sqrt(1e-3 / 0.5);
  AngleSpecSub rec{e15, M_PI / 3.0 - 1e-9, eta};
  ok = ok && coefficient_a(rec, 1e-3) > 0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d/%d seeds within 3 SE on 10^5 paths (last z %.2f/%.2f), "
                "norm asymptote off by %.2f%%, a > 0",
                seeds_ok, seeds_run, zx, zy,
                100.0 * std::fabs(nx - want) / want);
  note = buf;
  return ok;
}

bool criterion8(std::string& note) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  SymbolSpec generic = SymbolSpec::make(
      2, {{{1.0, 0.0}, 0.7, cplx(0.3, 0.4)}, {{0.6, 0.8}, 1.1, cplx(-0.5, 0.5)}});
  std::vector<SymbolSpec> specs = {reb_spec(), imb_spec(), generic};
  bool ok = true;
  double xi[2], sc[2];
  for (int i = 0; i < 100000; i++) {
    xi[0] = u(rng);
    xi[1] = u(rng);
    if (std::hypot(xi[0], xi[1]) < 1e-6) continue;
    const double t = 0.5 * (u(rng) + 3.5);
    sc[0] = t * xi[0];
    sc[1] = t * xi[1];
    const SymbolSpec& s = specs[i % 3];
    cplx m = eval_m(s, xi);
    ok = ok && std::abs(m) <= 1.0 + 1e-14 && std::abs(eval_m(s, sc) - m) <= 1e-12;
  }
  xi[0] = 0.7;
  xi[1] = 0.3;
  double worst_rich = 0;
  for (const SymbolSpec& s : specs) {
    cplx exact = eval_m(s, xi);
    const double e1 = std::abs(nu_kappa_symbol(s, 0.1, xi) - exact);
    const double e2 = std::abs(nu_kappa_symbol(s, 0.05, xi) - exact);
    worst_rich = std::max(worst_rich, std::fabs(e1 / e2 - 4.0));
    ok = ok && std::fabs(e1 / e2 - 4.0) <= 0.4;
  }
  LevySymbolSpec inf = LevySymbolSpec::make(
      2, -std::numeric_limits<double>::infinity(),
      {{{0.4, 0.9}, 1.3, cplx(0.2, -0.6)}, {{-1.1, 0.3}, 0.8, cplx(0.9, 0.1)}});
  cplx limit = eval_M_s(inf, xi);
  const double D = levy_D(inf, xi);
  const double d1 =
      std::abs(eval_M_s(LevySymbolSpec::make(2, -1.0, inf.atoms), xi) - limit);
  const double d2 =
      std::abs(eval_M_s(LevySymbolSpec::make(2, -2.0, inf.atoms), xi) - limit);
  const double rate = std::log(d1 / d2);
  ok = ok && std::fabs(rate - 2.0 * D) <= 0.01 * 2.0 * D;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "10^5 bounded/homogeneous checks, Richardson ratio within %.3f of 4, "
                "fitted rate %.6f vs 2D %.6f",
                worst_rich, rate, 2.0 * D);
  note = buf;
  return ok;
}

bool criterion9(std::string& note) {
  const double b = -1.2;
  const long n = 1024;
  const double L = 4.0;
  Field2D f = f_beta_field(b, FBetaRegime::Sub, n, L);
  auto named = [](NamedSymbol w) {
    return [w](double x1, double x2) {
      double xi[2] = {x1, x2};
      return named_symbol(w, xi);
    };
  };
  Field2D re = apply_multiplier(f, named(NamedSymbol::ReB));
  Field2D im = apply_multiplier(f, named(NamedSymbol::ImB));
  Field2D want_re = sample_field(
      n, L,
      [b](cplx z) {
        return cplx(std::real(closed_form_Bf_beta(b, FBetaRegime::Sub, z)), 0.0);
      },
      true, 1.0);
  Field2D want_im = sample_field(
      n, L,
      [b](cplx z) {
        return cplx(std::imag(closed_form_Bf_beta(b, FBetaRegime::Sub, z)), 0.0);
      },
      true, 1.0);
  // windowed: the closed form is not square integrable at the origin and the
  // finite box periodizes its quadratic tail
  const double err_re = l2_rel_error_windowed(want_re, re, 8.0 * f.h(), L / 2.0);
  const double err_im = l2_rel_error_windowed(want_im, im, 8.0 * f.h(), L / 2.0);
  bool ok = err_re < 0.02 && err_im < 0.02;

  Field2D g = Field2D::make(256, 2.0);
  const double k = M_PI / 2.0;
  for (long i = 0; i < 256; i++)
    for (long j = 0; j < 256; j++)
      g.at(i, j) = cplx(std::sin(k * g.coord(i)) * (1.0 + 0.5 * std::cos(k * g.coord(j))),
                        0.3 * std::sin(2.0 * k * g.coord(i)));
  Field2D r11 = apply_multiplier(apply_multiplier(g, named(NamedSymbol::Riesz1)),
                                 named(NamedSymbol::Riesz1));
  Field2D r22 = apply_multiplier(apply_multiplier(g, named(NamedSymbol::Riesz2)),
                                 named(NamedSymbol::Riesz2));
  Field2D sum = r11;
  for (size_t i = 0; i < sum.v.size(); i++) sum.v[i] = -(r11.v[i] + r22.v[i]);
  const double err_riesz = l2_rel_error(g, sum);
  ok = ok && err_riesz <= 1e-8;

  Field2D hh = apply_multiplier(apply_multiplier(g, named(NamedSymbol::Hilbert)),
                                named(NamedSymbol::Hilbert));
  for (auto& z : hh.v) z = -z;
  const double err_h = l2_rel_error(g, hh);
  ok = ok && err_h <= 1e-10;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "windowed closed-form errors %.4f/%.4f, Riesz squares %.2e, "
                "involution %.2e",
                err_re, err_im, err_riesz, err_h);
  note = buf;
  return ok;
}

bool criterion10(std::string& note) {
  bool ok = true;
  double ratio_gap_15 = 0, ratio_4 = 0;
  int experiments = 0, passing = 0;
  for (double p : {1.5, 4.0}) {
    Exponent e = Exponent::make(p);
    FBetaRegime reg = p < 2 ? FBetaRegime::Sub : FBetaRegime::Super;
    const double sharp = (double)Constants::make(e).sharp_nonorth;
    double prev = 1e300;
    bool monotone = true;
    for (int j = 0; j < 10; j++) {
      const double b = -2.0 / p + 0.4 * std::pow(2.0, -(double)j);
      const double nf = lp_norm_radial(f_beta_profile(b, reg), p);
      const double nt = lp_norm_radial(bf_beta_profile(b, reg), p);
      const double df = lp_norm_radial(deficit_profile(b, reg, sharp), p);
      StabilityReport r = build_report(Variant::Multiplier, e, nf, nt, df);
      experiments++;
      passing += r.pass;
      ok = ok && r.pass;
      monotone = monotone && df / nf < prev;
      prev = df / nf;
    }
    ok = ok && monotone;
    const double b = -2.0 / p + 1e-4;
    const double ratio = lp_norm_radial(bf_beta_profile(b, reg), p) /
                         lp_norm_radial(f_beta_profile(b, reg), p);
    if (p < 2) {
      ratio_gap_15 = std::fabs(ratio - sharp);
      ok = ok && ratio_gap_15 <= 1e-3;
    } else {
      ratio_4 = ratio; // approaches 3 from below at first order in -log(beta + 2/p)
    }
  }
  for (double p : {1.5, 4.0})
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      SharpnessResult s = sharpness_report(Exponent::make(p), eps);
      experiments++;
      passing += s.report.pass;
      ok = ok && s.report.pass;
    }
  for (double eps : {1e-2, 1e-3}) {
    OrthSharpness a = sharpness_orth_report(Exponent::make(1.5), eps, 3, 0);
    experiments++;
    passing += a.report.pass;
    ok = ok && a.report.pass;
  }
  OrthSharpness b4 = sharpness_orth_report(Exponent::make(4.0), 1e-3, 3, 20000);
  experiments++;
  passing += b4.report.pass;
  ok = ok && b4.report.pass;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d/%d experiments pass; p=1.5 limit ratio gap %.2e; p=4 ratio %.5f "
                "(slow logarithmic approach to 3)",
                passing, experiments, ratio_gap_15, ratio_4);
  note = buf;
  return ok;
}

bool criterion11(std::string& note) {
  CriticalPair c = critical_counterexample();
  const bool ok = std::fabs(c.ratio - std::sqrt(2.0)) <= 1e-12 &&
                  c.normX == c.normY;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "equal quadratic norms %.6f with deficit/norm ratio %.15f", c.normX,
                c.ratio);
  note = buf;
  return ok;
}

} // namespace

int main() {
  using Fn = bool (*)(std::string&);
  const Fn fns[] = {criterion1, criterion2, criterion3, criterion4,
                    criterion5, criterion6, criterion7, criterion8,
                    criterion9, criterion10, criterion11};
  int failures = 0;
  for (int i = 0; i < 11; i++) {
    std::string note;
    bool ok = false;
    try {
      ok = fns[i](note);
    } catch (const std::exception& ex) {
      note = std::string("exception: ") + ex.what();
    }
    std::printf("criterion %d: %s - %s\n", i + 1, ok ? "PASS" : "FAIL",
                note.c_str());
    std::fflush(stdout);
    failures += !ok;
  }
  return failures;
}
