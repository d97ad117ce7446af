#pragma once

#include "stab/exponent.hpp"
#include "stab/stability.hpp"

#include <vector>

namespace stab {

struct ChainSpec {
  Exponent e;
  double K = 4;    // absorbing level, K > 1
  long N = 2;      // ladder depth, K^{1/N} = 1 + 2 delta
  double eta = 0;  // terminal split size, 0 <= eta < min(1, p-1)
  double delta = 0;

  static ChainSpec make(const Exponent& e, double K, long N, double eta);
};

enum class Phase { Moving, WaitSplit, Absorbed };

struct ChainState {
  double f = 0, g = 0;
  int step_parity = 0; // steps taken so far, mod 2
  Phase phase = Phase::Moving;
};

struct Transition {
  ChainState to;
  double prob;
};
std::vector<Transition> transitions(const ChainSpec& c, const ChainState& s);

struct Atom {
  double absF, absG;
  double prob;
};
struct TerminalDistribution {
  std::vector<Atom> atoms;
  double total_prob = 0;
};
TerminalDistribution terminal_distribution(const ChainSpec& c);

// P(the walk reaches the ladder point (0, y_k)) = r^k / 2, k = 0..N.
double closed_form_prob(const ChainSpec& c, long k);
// Terminal line-atom probability at scale (1+2delta)^k, k = 0..N.
double line_atom_prob(const ChainSpec& c, long k);
// Terminal probability of the (0, K) atom, r^N / 2.
double top_atom_prob(const ChainSpec& c);

struct LpSummary {
  double normFp, normGp, deficitp; // p-th powers of ||F||, ||G||, || |G|-(p-1)|F| ||
};
LpSummary lp_summary(const TerminalDistribution& d, const Exponent& e);

// Same three numbers from geometric-series closed forms; log-domain arithmetic,
// valid for logK far beyond floating point range of K^p itself.
LpSummary closed_form_norms(const Exponent& e, double logK, long N, double eta);

struct Asymptotics {
  double limFp, limGp, liminf_deficitp; // N -> infinity at fixed K
};
Asymptotics asymptotic_summary(const Exponent& e, double logK, double eta);

struct SharpnessResult {
  double eps;
  double logK;
  long N;
  double eta;
  LpSummary norms;
  bool pred_ratio = false;   // ||F|| vs ((p-1)^{-1}-eps)||G||, or ||G|| vs (p-1-eps)||F||
  bool pred_deficit = false; // deficit against the stability lower bound
  int retries = 0;
  StabilityReport report;
};
SharpnessResult sharpness_report(const Exponent& e, double eps);

struct CriticalPair {
  double normX, normY, deficit, ratio; // ratio = deficit / normX = sqrt(2)
};
CriticalPair critical_counterexample();

} // namespace stab
