#include "stab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stab {

namespace {

bool rel_eq(double a, double b, double tol = 1e-9) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

} // namespace

ChainSpec ChainSpec::make(const Exponent& e, double K, long N, double eta) {
  if (!(K > 1)) throw std::invalid_argument("K must exceed 1");
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (eta < 0 || eta >= std::min(1.0, e.p - 1.0))
    throw std::invalid_argument("eta out of range");
  ChainSpec c;
  c.e = e;
  c.K = K;
  c.N = N;
  c.eta = eta;
  c.delta = std::expm1(std::log(K) / (double)N) / 2.0;
  return c;
}

std::vector<Transition> transitions(const ChainSpec& c, const ChainState& s) {
  const double p = c.e.p, d = c.delta, eta = c.eta;
  const int np = (s.step_parity + 1) % 2;
  std::vector<Transition> out;
  auto add = [&](double f, double g, double prob, Phase ph = Phase::Moving) {
    out.push_back({{f, g, np, ph}, prob});
  };
  if (s.phase == Phase::Absorbed) return out;
  if (s.phase == Phase::WaitSplit) {
    const double y = std::fabs(s.f), sg = sgn(s.g);
    add(s.f * (1.0 - eta), s.g + eta * y * sg, 0.5, Phase::Absorbed);
    add(s.f * (1.0 + eta), s.g - eta * y * sg, 0.5, Phase::Absorbed);
    return out;
  }
  if (s.f == 0 && s.g == 0) {
    add(0.5, -0.5, 0.5);
    add(-0.5, 0.5, 0.5);
    return out;
  }
  if (s.g == 0) return out; // (+-1, 0) is terminal
  if (s.f == 0) {
    if (std::fabs(s.g) >= c.K * (1.0 - 1e-9)) return out; // absorbed at (0, K)
    const double y = s.g;
    add(y / p, (p - 1.0) * y / p, p * d / (1.0 + p * d));
    add(-d * y, y + d * y, 1.0 / (1.0 + p * d));
    return out;
  }
  const bool on_line = rel_eq(std::fabs(s.g), (p - 1.0) * std::fabs(s.f));
  if (on_line && (s.step_parity == 0 || sgn(s.f) == sgn(s.g))) {
    if (eta == 0) return out; // terminal without the split stage
    add(s.f, s.g, 1.0, Phase::WaitSplit);
    return out;
  }
  if (s.f == -s.g) { // the states (1/2, -1/2) and (-1/2, 1/2)
    add(2.0 * s.f, 0.0, 0.5);
    add(0.0, 2.0 * s.g, 0.5);
    return out;
  }
  if (rel_eq(-s.f / s.g, d / (1.0 + d))) {
    const double y2 = s.g / (1.0 + d) * (1.0 + 2.0 * d);
    add(0.0, y2, (1.0 - (p - 2.0) * d) / (1.0 + 2.0 * d));
    add(-y2 / p, (p - 1.0) * y2 / p, p * d / (1.0 + 2.0 * d));
    return out;
  }
  throw std::logic_error("unreachable chain state");
}

TerminalDistribution terminal_distribution(const ChainSpec& c) {
  struct Node {
    ChainState s;
    double prob;
  };
  std::vector<Node> stack{{ChainState{}, 1.0}};
  std::vector<Atom> raw;
  const long guard = 64 * (c.N + 4);
  long visited = 0;
  while (!stack.empty()) {
    if (++visited > guard * (c.N + 4)) throw std::runtime_error("state explosion");
    Node nd = stack.back();
    stack.pop_back();
    auto ts = transitions(c, nd.s);
    if (ts.empty() || nd.s.phase == Phase::Absorbed) {
      raw.push_back({std::fabs(nd.s.f), std::fabs(nd.s.g), nd.prob});
      continue;
    }
    for (const auto& t : ts) {
      if (t.to.phase == Phase::Absorbed)
        raw.push_back({std::fabs(t.to.f), std::fabs(t.to.g), nd.prob * t.prob});
      else
        stack.push_back({t.to, nd.prob * t.prob});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Atom& a, const Atom& b) {
    if (a.absF != b.absF) return a.absF < b.absF;
    return a.absG < b.absG;
  });
  TerminalDistribution td;
  long double tot = 0;
  for (const auto& a : raw) {
    tot += a.prob;
    if (!td.atoms.empty() && rel_eq(td.atoms.back().absF, a.absF) &&
        (rel_eq(td.atoms.back().absG, a.absG) ||
         (td.atoms.back().absG == 0 && a.absG == 0)))
      td.atoms.back().prob += a.prob;
    else
      td.atoms.push_back(a);
  }
  td.total_prob = (double)tot;
  return td;
}

namespace {

double ratio_r(const ChainSpec& c) {
  const double p = c.e.p, d = c.delta;
  return (1.0 - (p - 2.0) * d) / ((1.0 + p * d) * (1.0 + 2.0 * d));
}

} // namespace

double closed_form_prob(const ChainSpec& c, long k) {
  return 0.5 * std::pow(ratio_r(c), (double)k);
}

double line_atom_prob(const ChainSpec& c, long k) {
  const double p = c.e.p, d = c.delta, r = ratio_r(c);
  if (k == 0) return 0.5 * p * d / (1.0 + p * d);
  const double base = 0.5 * (p * d / ((1.0 + p * d) * (1.0 + 2.0 * d)));
  if (k == c.N) return base * std::pow(r, (double)(c.N - 1));
  return base * (1.0 + (1.0 - (p - 2.0) * d) / (1.0 + p * d)) * std::pow(r, (double)(k - 1));
}

double top_atom_prob(const ChainSpec& c) {
  return 0.5 * std::pow(ratio_r(c), (double)c.N);
}

LpSummary lp_summary(const TerminalDistribution& d, const Exponent& e) {
  const double p = e.p;
  long double f = 0, g = 0, df = 0;
  for (const auto& a : d.atoms) {
    f += (long double)a.prob * std::pow((long double)a.absF, (long double)p);
    g += (long double)a.prob * std::pow((long double)a.absG, (long double)p);
    df += (long double)a.prob *
          std::pow(std::fabs((long double)a.absG - (p - 1.0L) * a.absF), (long double)p);
  }
  return {(double)f, (double)g, (double)df};
}

LpSummary closed_form_norms(const Exponent& e, double logK, long N, double eta) {
  const long double p = e.p;
  const long double l2d = (long double)logK / N; // log(1 + 2 delta)
  const long double d = std::expm1(l2d) / 2.0L;
  const long double lr = std::log1p(-(p - 2.0L) * d) - std::log1p(p * d) - l2d;
  const long double lq = std::log1p(-(p - 2.0L) * d) + (p - 1.0L) * l2d - std::log1p(p * d);
  const long double p0 = 0.5L * p * d / (1.0L + p * d);
  const long double C = 0.5L * (p * d / ((1.0L + p * d) * (1.0L + 2.0L * d))) *
                        (1.0L + (1.0L - (p - 2.0L) * d) / (1.0L + p * d));
  const long double lp_ = std::log(p);
  long double G;
  if (std::fabs(lq) < 1e-17L)
    G = (long double)(N - 1);
  else
    G = std::expm1((N - 1) * lq) / std::expm1(lq);
  const long double log_qN = std::log(0.5L * p * d) - std::log1p(p * d) -
                             std::log1p(2.0L * d) + (N - 1) * lr;
  long double Sline = p0 * std::exp(-p * lp_) + C * std::exp(p * (l2d - lp_)) * G +
                      std::exp(log_qN + p * ((long double)logK - lp_));
  const long double top = 0.5L * std::exp(N * lr + p * (long double)logK);
  const long double et = eta;
  const long double uF =
      0.5L * (std::pow(1.0L - et, p) + std::pow(1.0L + et, p));
  const long double uG = 0.5L * (std::pow(1.0L - et / (p - 1.0L), p) +
                                 std::pow(1.0L + et / (p - 1.0L), p));
  LpSummary s;
  s.normFp = (double)(0.5L + uF * Sline);
  s.normGp = (double)(std::pow(p - 1.0L, p) * uG * Sline + top);
  s.deficitp = (double)(0.5L * std::pow(p - 1.0L, p) +
                        std::pow(p * et, p) * Sline + top);
  return s;
}

Asymptotics asymptotic_summary(const Exponent& e, double logK, double eta) {
  const long double p = e.p;
  const long double et = eta;
  const long double uF = 0.5L * (std::pow(1.0L - et, p) + std::pow(1.0L + et, p));
  const long double uG = 0.5L * (std::pow(1.0L - et / (p - 1.0L), p) +
                                 std::pow(1.0L + et / (p - 1.0L), p));
  const long double slope = (long double)logK / (2.0L * std::pow(p, p - 1.0L));
  Asymptotics a;
  a.limFp = (double)(0.5L + uF * slope);
  a.limGp = (double)(std::pow(p - 1.0L, p) * uG * slope + 0.5L);
  a.liminf_deficitp = (double)(0.5L * std::pow(p - 1.0L, p) + 0.5L +
                               std::pow(p * et, p) * slope);
  return a;
}

SharpnessResult sharpness_report(const Exponent& e, double eps) {
  if (e.critical()) throw std::invalid_argument("no sharpness recipe at p = 2");
  const double p = e.p;
  SharpnessResult sr;
  sr.eps = eps;
  if (e.regime == Regime::Sub) {
    if (!(eps > 0 && eps < 1.0 / (p - 1.0) - 1.0))
      throw std::invalid_argument("eps out of range for p < 2");
    const double eta = (p - 1.0) * std::sqrt(eps / (2.0 - p)) / 2.0;
    const double uF = 0.5 * (std::pow(1.0 - eta, p) + std::pow(1.0 + eta, p));
    const double uG = 0.5 * (std::pow(1.0 - eta / (p - 1.0), p) +
                             std::pow(1.0 + eta / (p - 1.0), p));
    const double c = 1.0 / (p - 1.0) - eps;
    const double denom = uF - std::pow(c, p) * std::pow(p - 1.0, p) * uG;
    double l = denom > 0
                   ? 1.5 * (std::pow(c, p) - 1.0) * std::pow(p, p - 1.0) / denom
                   : 64.0 / eps;
    l = std::max(l, 8.0);
    const double dc = std::pow(p / 4.0 * std::sqrt(eps / (2.0 - p)), p);
    for (int it = 0; it < 60; it++) {
      const long N = std::max(4096L, 128L * (long)std::ceil(l));
      LpSummary n = closed_form_norms(e, l, N, eta);
      sr.pred_ratio = n.normFp >= std::pow(c, p) * n.normGp;
      sr.pred_deficit = n.deficitp >= dc * n.normGp;
      sr.logK = l;
      sr.N = N;
      sr.eta = eta;
      sr.norms = n;
      sr.retries = it;
      if (sr.pred_ratio && sr.pred_deficit) break;
      l *= 1.5;
    }
    const double nG = std::pow(sr.norms.normGp, 1.0 / p);
    const double nF = std::pow(sr.norms.normFp, 1.0 / p);
    const double dfc = std::pow(sr.norms.deficitp, 1.0 / p) / (p - 1.0);
    sr.report = build_report(Variant::MartNonOrth, e, nG, nF, dfc);
    return sr;
  }
  if (!(eps > 0 && eps < p - 1.0))
    throw std::invalid_argument("eps out of range for p > 2");
  const double c = p - 1.0 - eps;
  double l = 1.5 * std::pow(p, p - 1.0) / std::expm1(p * std::log((p - 1.0) / c));
  l = std::max(l, 8.0);
  for (int it = 0; it < 60; it++) {
    const long N = std::max(4096L, 128L * (long)std::ceil(l));
    LpSummary n = closed_form_norms(e, l, N, 0.0);
    sr.pred_ratio = n.normGp >= std::pow(c, p) * n.normFp;
    sr.pred_deficit = n.deficitp >= std::pow(p - 1.0, p) * eps / 2.0 * n.normFp;
    sr.logK = l;
    sr.N = N;
    sr.eta = 0;
    sr.norms = n;
    sr.retries = it;
    if (sr.pred_ratio && sr.pred_deficit) break;
    if (!sr.pred_ratio)
      l *= 1.4;
    else
      l /= 1.2;
  }
  const double nF = std::pow(sr.norms.normFp, 1.0 / p);
  const double nG = std::pow(sr.norms.normGp, 1.0 / p);
  const double dfc = std::pow(sr.norms.deficitp, 1.0 / p);
  sr.report = build_report(Variant::MartNonOrth, e, nF, nG, dfc);
  return sr;
}

CriticalPair critical_counterexample() {
  // X takes value 2 on half the space, Y takes 2 on the other half.
  const double normX = std::sqrt(0.5 * 4.0);
  const double normY = std::sqrt(0.5 * 4.0);
  const double deficit = std::sqrt(0.5 * 4.0 + 0.5 * 4.0);
  return {normX, normY, deficit, deficit / normX};
}

} // namespace stab
