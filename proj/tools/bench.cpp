#include "stab/angle.hpp"
#include "stab/bellman.hpp"
#include "stab/field.hpp"

#include <chrono>
#include <cstdio>

using namespace stab;

namespace {

template <class F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
  const Exponent e15 = Exponent::make(1.5), e4 = Exponent::make(4.0);

  volatile double sink = 0;
  double s = time_ms([&] {
    sink = sink + sweep_majorization(e15, Family::Orth, 4000000, false).max_gap;
    sink = sink + sweep_majorization(e4, Family::NonOrth, 4000000, false).max_gap;
  });
  double par = time_ms([&] {
    sink = sink + sweep_majorization(e15, Family::Orth, 4000000, true).max_gap;
    sink = sink + sweep_majorization(e4, Family::NonOrth, 4000000, true).max_gap;
  });
  report("majorization sweep", s, par);

  Field2D f = f_beta_field(-1.0, FBetaRegime::Sub, 2048, 2.0);
  s = time_ms([&] { sink = sink + lp_norm_grid(f, 1.5, false); });
  par = time_ms([&] { sink = sink + lp_norm_grid(f, 1.5, true); });
  report("grid Lp norm", s, par);

  AngleSpecSuper sp = AngleSpecSuper::make(e4, 0.36);
  s = time_ms([&] { sink = sink + mc_exit_super(sp, 20000, 1e-4, 7, false).mXp; });
  par = time_ms([&] { sink = sink + mc_exit_super(sp, 20000, 1e-4, 7, true).mXp; });
  report("exit-time Monte Carlo", s, par);

  (void)sink;
  return 0;
}
