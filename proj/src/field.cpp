#include "stab/field.hpp"

#include "stab/exponent.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace stab {

Field2D Field2D::make(long n, double L) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("n must be a power of two");
  if (!(L > 0)) throw std::invalid_argument("L must be positive");
  Field2D f;
  f.n = n;
  f.L = L;
  f.v.assign((size_t)n * (size_t)n, cplx(0, 0));
  return f;
}

Field2D apply_multiplier(const Field2D& f, const SymbolFn& m) {
  const long n = f.n;
  Field2D out = Field2D::make(n, f.L);
  std::vector<cplx> buf = f.v;
  fftw_plan fwd = fftw_plan_dft_2d((int)n, (int)n,
                                   reinterpret_cast<fftw_complex*>(buf.data()),
                                   reinterpret_cast<fftw_complex*>(buf.data()),
                                   FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  const double w = PI_L / f.L;
  for (long kx = 0; kx < n; kx++) {
    const double x1 = w * (double)(kx < n / 2 ? kx : kx - n);
    for (long ky = 0; ky < n; ky++) {
      const double x2 = w * (double)(ky < n / 2 ? ky : ky - n);
      buf[(size_t)(kx * n + ky)] *= m(x1, x2);
    }
  }
  fftw_plan bwd = fftw_plan_dft_2d((int)n, (int)n,
                                   reinterpret_cast<fftw_complex*>(buf.data()),
                                   reinterpret_cast<fftw_complex*>(buf.data()),
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);
  const double scale = 1.0 / ((double)n * (double)n);
  for (size_t i = 0; i < buf.size(); i++) out.v[i] = buf[i] * scale;
  return out;
}

cplx f_beta_value(double beta, FBetaRegime r, cplx z) {
  const double az = std::abs(z);
  if (r == FBetaRegime::Sub) {
    if (az >= 1.0 || az == 0.0) return az == 0.0 ? cplx(0) : cplx(0);
    return std::pow(az, beta);
  }
  if (az == 0.0) return 0;
  if (az < 1.0) return beta * std::pow(az, beta) * (z / std::conj(z)) / (beta + 2.0);
  return -2.0 / (std::conj(z) * std::conj(z)) / (beta + 2.0);
}

cplx closed_form_Bf_beta(double beta, FBetaRegime r, cplx z) {
  const double az = std::abs(z);
  if (az == 0.0) throw std::invalid_argument("Bf_beta undefined at z = 0");
  if (r == FBetaRegime::Sub) {
    if (az < 1.0) return beta * (std::conj(z) / z) * std::pow(az, beta) / (beta + 2.0);
    return -2.0 / (z * z) / (beta + 2.0);
  }
  return az < 1.0 ? cplx(std::pow(az, beta)) : cplx(0);
}

Field2D sample_field(long n, double L, const std::function<cplx(cplx)>& fn,
                     bool average_near_origin, double average_near_circle) {
  Field2D f = Field2D::make(n, L);
  const double h = f.h();
#pragma omp parallel for schedule(static)
  for (long ix = 0; ix < n; ix++) {
    const double x = f.coord(ix);
    for (long iy = 0; iy < n; iy++) {
      const double y = f.coord(iy);
      const cplx z(x, y);
      const bool near_jump =
          average_near_circle > 0 &&
          std::fabs(std::abs(z) - average_near_circle) < 2.0 * h;
      if ((average_near_origin && std::abs(z) < 4.0 * h) || near_jump) {
        const int q = 16;
        cplx acc = 0;
        for (int a = 0; a < q; a++)
          for (int b = 0; b < q; b++) {
            const cplx zz(x + (a + 0.5) / q * h - 0.5 * h,
                          y + (b + 0.5) / q * h - 0.5 * h);
            if (std::abs(zz) > 0) acc += fn(zz);
          }
        f.at(ix, iy) = acc / (double)(q * q);
      } else {
        f.at(ix, iy) = fn(z);
      }
    }
  }
  return f;
}

Field2D f_beta_field(double beta, FBetaRegime r, long n, double L) {
  if (!(beta > -2.0)) throw std::invalid_argument("beta out of range");
  return sample_field(n, L, [beta, r](cplx z) { return f_beta_value(beta, r, z); },
                      true, 1.0);
}

double lp_norm_grid(const Field2D& f, double p, bool parallel) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  const size_t n2 = f.v.size();
  const size_t block = 4096;
  const size_t nb = (n2 + block - 1) / block;
  std::vector<long double> partial(nb, 0.0L);
  auto do_block = [&](size_t b) {
    long double s = 0, comp = 0;
    const size_t end = std::min(n2, (b + 1) * block);
    for (size_t i = b * block; i < end; i++) {
      const long double t = std::pow((long double)std::abs(f.v[i]), (long double)p);
      const long double y = t - comp;
      const long double u = s + y;
      comp = (u - s) - y;
      s = u;
    }
    partial[b] = s;
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long b = 0; b < (long)nb; b++) do_block((size_t)b);
  } else {
    for (size_t b = 0; b < nb; b++) do_block(b);
  }
  long double tot = 0;
  for (long double s : partial) tot += s;
  const long double cell = (long double)f.h() * f.h();
  return (double)std::pow(tot * cell, 1.0L / (long double)p);
}

double l2_rel_error(const Field2D& a, const Field2D& b) {
  if (a.n != b.n) throw std::invalid_argument("grid mismatch");
  long double num = 0, den = 0;
  for (size_t i = 0; i < a.v.size(); i++) {
    num += std::norm(a.v[i] - b.v[i]);
    den += std::norm(b.v[i]);
  }
  return (double)std::sqrt(num / den);
}

double l2_rel_error_windowed(const Field2D& a, const Field2D& b, double rmin,
                             double boxmax) {
  if (a.n != b.n) throw std::invalid_argument("grid mismatch");
  long double num = 0, den = 0;
  for (long ix = 0; ix < a.n; ix++) {
    const double x = a.coord(ix);
    for (long iy = 0; iy < a.n; iy++) {
      const double y = a.coord(iy);
      if (std::hypot(x, y) < rmin) continue;
      if (std::max(std::fabs(x), std::fabs(y)) > boxmax) continue;
      num += std::norm(a.at(ix, iy) - b.at(ix, iy));
      den += std::norm(b.at(ix, iy));
    }
  }
  return (double)std::sqrt(num / den);
}

void write_field(const Field2D& f, const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot open " + path);
  const int64_t n = f.n;
  std::fwrite(&n, sizeof n, 1, fp);
  std::fwrite(&f.L, sizeof f.L, 1, fp);
  for (const cplx& c : f.v) {
    const double re = c.real(), im = c.imag();
    std::fwrite(&re, sizeof re, 1, fp);
    std::fwrite(&im, sizeof im, 1, fp);
  }
  std::fclose(fp);
}

Field2D read_field(const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("cannot open " + path);
  int64_t n = 0;
  double L = 0;
  if (std::fread(&n, sizeof n, 1, fp) != 1 || std::fread(&L, sizeof L, 1, fp) != 1) {
    std::fclose(fp);
    throw std::runtime_error("truncated field file");
  }
  Field2D f = Field2D::make((long)n, L);
  for (cplx& c : f.v) {
    double re, im;
    if (std::fread(&re, sizeof re, 1, fp) != 1 || std::fread(&im, sizeof im, 1, fp) != 1) {
      std::fclose(fp);
      throw std::runtime_error("truncated field file");
    }
    c = cplx(re, im);
  }
  std::fclose(fp);
  return f;
}

namespace {

double angular_abs(Angular a, double aa, double bb, double phi, double p) {
  switch (a) {
    case Angular::One:
    case Angular::Unimodular: return 1.0;
    case Angular::Cos2:
    case Angular::AbsCos2: return std::pow(std::fabs(std::cos(2.0 * phi)), p);
    case Angular::AffineAbsCos2:
      return std::pow(std::fabs(aa + bb * std::fabs(std::cos(2.0 * phi))), p);
  }
  return 1.0;
}

double simpson(const std::function<double(double)>& g, double a, double b) {
  return (b - a) / 6.0 * (g(a) + 4.0 * g(0.5 * (a + b)) + g(b));
}

double adaptive(const std::function<double(double)>& g, double a, double b, double whole,
                double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(g, a, m), right = simpson(g, m, b);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(g, a, m, left, tol / 2.0, depth - 1) +
         adaptive(g, m, b, right, tol / 2.0, depth - 1);
}

double angular_integral(Angular a, double aa, double bb, double p) {
  if (a == Angular::One || a == Angular::Unimodular) return 2.0 * (double)PI_L;
  auto g = [&](double phi) { return angular_abs(a, aa, bb, phi, p); };
  // |cos 2phi| has period pi/2 and is symmetric about pi/4 within the period.
  const double q = (double)PI_L / 4.0;
  const double v = adaptive(g, 0.0, q, simpson(g, 0.0, q), 1e-12, 40);
  return 8.0 * v;
}

double radial_integral(double q, double r0, double r1) {
  // integral of r^q * r dr over [r0, r1]
  const double e = q + 2.0;
  if (std::isinf(r1)) {
    if (e >= 0) throw std::invalid_argument("divergent radial tail");
    return -std::pow(r0, e) / e;
  }
  if (std::fabs(e) < 1e-14) return std::log(r1 / r0);
  return (std::pow(r1, e) - std::pow(r0, e)) / e;
}

} // namespace

double lp_norm_radial(const RadialProfile& prof, double p) {
  long double tot = 0;
  for (const auto& t : prof.terms) {
    const double rad = radial_integral(t.rpow * p, t.r0, t.r1);
    const double ang = angular_integral(t.ang, t.a, t.b, p);
    tot += (long double)std::pow(t.coef, p) * rad * ang;
  }
  return (double)std::pow(tot, 1.0L / (long double)p);
}

RadialProfile f_beta_profile(double beta, FBetaRegime r) {
  RadialProfile pr;
  if (r == FBetaRegime::Sub) {
    pr.terms.push_back({1.0, beta, 0.0, 1.0, Angular::One, 0, 0});
  } else {
    pr.terms.push_back({std::fabs(beta / (beta + 2.0)), beta, 0.0, 1.0,
                        Angular::Unimodular, 0, 0});
    pr.terms.push_back({2.0 / (beta + 2.0), -2.0, 1.0,
                        std::numeric_limits<double>::infinity(), Angular::Unimodular, 0,
                        0});
  }
  return pr;
}

RadialProfile bf_beta_profile(double beta, FBetaRegime r) {
  RadialProfile pr;
  if (r == FBetaRegime::Sub) {
    pr.terms.push_back({std::fabs(beta / (beta + 2.0)), beta, 0.0, 1.0,
                        Angular::Unimodular, 0, 0});
    pr.terms.push_back({2.0 / (beta + 2.0), -2.0, 1.0,
                        std::numeric_limits<double>::infinity(), Angular::Unimodular, 0,
                        0});
  } else {
    pr.terms.push_back({1.0, beta, 0.0, 1.0, Angular::One, 0, 0});
  }
  return pr;
}

RadialProfile deficit_profile(double beta, FBetaRegime r, double sharp) {
  RadialProfile pr;
  const double q = std::fabs(beta / (beta + 2.0));
  if (r == FBetaRegime::Sub) {
    // | |Bf| - sharp |f| | = |q - sharp| r^beta inside, (2/(beta+2)) r^-2 outside
    pr.terms.push_back({std::fabs(q - sharp), beta, 0.0, 1.0, Angular::One, 0, 0});
    pr.terms.push_back({2.0 / (beta + 2.0), -2.0, 1.0,
                        std::numeric_limits<double>::infinity(), Angular::One, 0, 0});
  } else {
    pr.terms.push_back({std::fabs(1.0 - sharp * q), beta, 0.0, 1.0, Angular::One, 0, 0});
    pr.terms.push_back({sharp * 2.0 / (beta + 2.0), -2.0, 1.0,
                        std::numeric_limits<double>::infinity(), Angular::One, 0, 0});
  }
  return pr;
}

} // namespace stab
