#include "mid/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "mid/errors.hpp"

namespace mid {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-12;
constexpr unsigned kQuadDepth = 15;
// Fraction of [0, t1] handled by plain quadrature before the endpoint substitution.
constexpr double kEndpointSplit = 0.99;

double integrand_t(double t, double g) {
  const double t2 = t * t;
  const double w = 1.0 - g * t2 + t2 * t2;
  return 4.0 * t2 / std::sqrt(w);
}

double gk(auto f, double a, double b) {
  if (b <= a) return 0.0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, kQuadDepth, kQuadTol);
}

// 4 (atanh T - T); the series avoids cancellation for small T.
double critical_I(double T) {
  if (T >= 0.5) return 4.0 * (std::atanh(T) - T);
  const double T2 = T * T;
  double term = T * T2;
  double sum = 0.0;
  for (int n = 1; n < 80; ++n) {
    const double add = term / (2 * n + 1);
    sum += add;
    if (add < 1e-18 * sum) break;
    term *= T2;
  }
  return 4.0 * sum;
}

struct Super {
  double t1;  // s11^{1/4}
  double r2;  // sqrt(s12)
};

Super super_data(double g) {
  const double h = std::sqrt(g * g / 4.0 - 1.0);
  const double r12 = g / 2.0 + h;
  const double r11 = 1.0 / r12;
  return {std::sqrt(r11), r12};
}

// int_0^T of the t-integrand. t = t1 - w^2 near the W1 zero.
double I_of_T(double T, double g) {
  if (T <= 0.0) return 0.0;
  if (g == 2.0) return critical_I(T);
  if (g < 2.0) return gk([g](double t) { return integrand_t(t, g); }, 0.0, T);
  const Super s = super_data(g);
  const double tm = kEndpointSplit * s.t1;
  if (T <= tm) return gk([g](double t) { return integrand_t(t, g); }, 0.0, T);
  // The head integral depends on gamma only; remember the last one per thread.
  thread_local double cached_gamma = std::numeric_limits<double>::quiet_NaN();
  thread_local double cached_head = 0.0;
  if (g != cached_gamma) {
    cached_head = gk([g](double t) { return integrand_t(t, g); }, 0.0, tm);
    cached_gamma = g;
  }
  const double head = cached_head;
  const double wT = std::sqrt(std::max(0.0, s.t1 - T));
  const double wm = std::sqrt(s.t1 - tm);
  const double tail = gk(
      [s](double w) {
        const double t = s.t1 - w * w;
        return 8.0 * t * t / std::sqrt((t + s.t1) * (s.r2 - t * t));
      },
      wT, wm);
  return head + tail;
}

double dI_dT(double T, double g) {
  if (g > 2.0) {
    const Super s = super_data(g);
    if (T >= s.t1) return std::numeric_limits<double>::infinity();
  }
  return integrand_t(T, g);
}

// Largest T the inversion may return.
double T_max(double g) {
  if (g < 2.0) return std::numeric_limits<double>::infinity();
  if (g == 2.0) return std::nextafter(1.0, 0.0);
  return super_data(g).t1;
}

double invert_T(double c, double g, double guess) {
  if (c <= 0.0) return 0.0;
  double hi = T_max(g);
  if (std::isinf(hi)) {
    hi = std::max(1.0, guess);
    while (I_of_T(hi, g) < c) hi *= 2.0;
  } else if (I_of_T(hi, g) <= c) {
    return hi;
  }
  const double lo = 0.0;
  if (!(guess > lo && guess < hi)) {
    // Small-z seed from I ~ (4/3) T^3.
    guess = std::min(std::cbrt(0.75 * c), 0.5 * hi);
  }
  std::uintmax_t iters = 200;
  auto f = [g, c](double T) { return std::make_pair(I_of_T(T, g) - c, dI_dT(T, g)); };
  const double T = boost::math::tools::newton_raphson_iterate(f, guess, lo, hi, 52, iters);
  if (iters >= 200) throw NumericalError("invert_D: inversion did not converge");
  return T;
}

double sqrt8j(double j) { return std::sqrt(8.0 * j); }

void check_j(double j_x) {
  if (!(j_x > 0.0)) throw DomainError("potential: j_x must be positive");
}

}  // namespace

GammaCase gamma_case(double gamma) {
  if (gamma < 2.0) return GammaCase::Subcritical;
  if (gamma == 2.0) return GammaCase::Critical;
  return GammaCase::Supercritical;
}

const char* to_string(GammaCase c) {
  switch (c) {
    case GammaCase::Subcritical: return "subcritical";
    case GammaCase::Critical: return "critical";
    case GammaCase::Supercritical: return "supercritical";
  }
  return "unknown";
}

double w1(double s, double gamma) { return 1.0 - gamma * std::sqrt(s) + s; }
double w2(double s, double gamma) { return 1.0 / 3.0 - 2.0 / 3.0 * gamma * std::sqrt(s) + s; }

WZeros w_zeros(double gamma) {
  WZeros z;
  constexpr double slack = 1e-14;
  // Roots in sqrt(s) are g/2 -+ h with product 1, and g/3 -+ h with product 1/3.
  double d1 = gamma * gamma / 4.0 - 1.0;
  if (d1 > -slack && gamma > 0.0) {
    const double r12 = gamma / 2.0 + std::sqrt(std::max(0.0, d1));
    const double r11 = 1.0 / r12;
    z.s11 = r11 * r11;
    z.s12 = r12 * r12;
  }
  double d2 = gamma * gamma / 9.0 - 1.0 / 3.0;
  if (d2 > -slack && gamma > 0.0) {
    const double r22 = gamma / 3.0 + std::sqrt(std::max(0.0, d2));
    const double r21 = 1.0 / (3.0 * r22);
    z.s21 = r21 * r21;
    z.s22 = r22 * r22;
  }
  return z;
}

double upper_limit_b(double gamma) {
  switch (gamma_case(gamma)) {
    case GammaCase::Subcritical: return std::numeric_limits<double>::infinity();
    case GammaCase::Critical: return 1.0;
    case GammaCase::Supercritical: return *w_zeros(gamma).s11;
  }
  return 0.0;
}

double integral_I(double z, double gamma) {
  const double b = upper_limit_b(gamma);
  const bool closed = gamma > 2.0;
  if (!(z >= 0.0) || (closed ? z > b : z >= b)) {
    throw DomainError("integral_I: z outside the domain of I");
  }
  if (closed && z == b) return I_of_T(super_data(gamma).t1, gamma);
  return I_of_T(std::sqrt(std::sqrt(z)), gamma);
}

double integral_I_prime(double z, double gamma) {
  return 1.0 / (std::sqrt(std::sqrt(z)) * std::sqrt(w1(z, gamma)));
}

double invert_D(double x, double j_x, double gamma) {
  check_j(j_x);
  if (!(x >= 0.0)) throw DomainError("invert_D: x must be non-negative");
  if (x == 0.0) return 0.0;
  const double c = sqrt8j(j_x) * x;
  if (gamma > 2.0) {
    const Super s = super_data(gamma);
    const double Ib = I_of_T(s.t1, gamma);
    if (c > Ib * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
      throw DomainError("invert_D: x beyond the half period, use extend_D");
    }
    if (c >= Ib) return *w_zeros(gamma).s11;
  }
  const double T = invert_T(c, gamma, -1.0);
  return T * T * T * T;
}

double asymptotic_prefactor() { return std::pow(3.0 / std::numbers::sqrt2, 4.0 / 3.0); }

double asymptotic_D(double x, double j_x) {
  if (!(x >= 0.0)) throw DomainError("asymptotic_D: x must be non-negative");
  return asymptotic_prefactor() * std::pow(j_x, 2.0 / 3.0) * std::pow(x, 4.0 / 3.0);
}

double half_period(double gamma, double j_x) {
  check_j(j_x);
  if (!(gamma > 2.0)) throw DomainError("half_period: only defined for gamma > 2");
  return I_of_T(super_data(gamma).t1, gamma) / sqrt8j(j_x);
}

double default_x_end(double gamma, double j_x) {
  return gamma > 2.0 ? half_period(gamma, j_x) : 5.0;
}

double extend_D(const PotentialProfile& p, double x) {
  if (!(p.gamma > 2.0) || !p.a_half_period) throw DomainError("extend_D: only defined for gamma > 2");
  if (!(x >= 0.0)) throw DomainError("extend_D: x must be non-negative");
  const double a = *p.a_half_period;
  double xr = std::fmod(x, 2.0 * a);
  // a - (x - a) rather than 2a - x: both sides of the mirror then map to the same double
  if (xr > a) xr = a - (xr - a);
  return invert_D(xr, p.j_x, p.gamma);
}

double PotentialProfile::D(double x) const {
  if (gamma > 2.0) return extend_D(*this, x);
  return invert_D(x, j_x, gamma);
}

double PotentialProfile::dD(double x) const {
  const double d = D(x);
  const double slope = sqrt8j(j_x) * std::sqrt(std::sqrt(d)) * std::sqrt(std::max(0.0, w1(d, gamma)));
  if (gamma > 2.0 && a_half_period) {
    const double a = *a_half_period;
    if (std::fmod(x, 2.0 * a) > a) return -slope;
  }
  return slope;
}

PotentialProfile build_profile(double gamma, double j_x, const ProfileOptions& opt) {
  check_j(j_x);
  if (!(gamma >= 0.0)) throw DomainError("build_profile: gamma must be non-negative");
  if (opt.n_samples < 8) throw DomainError("build_profile: need at least 8 samples");
  PotentialProfile p;
  p.gamma = gamma;
  p.j_x = j_x;
  p.gcase = gamma_case(gamma);
  p.b = upper_limit_b(gamma);
  p.s_zeros = w_zeros(gamma);
  if (gamma > 2.0) p.a_half_period = half_period(gamma, j_x);

  double x_end = opt.x_end > 0.0 ? opt.x_end : default_x_end(gamma, j_x);
  if (p.a_half_period && x_end > *p.a_half_period) {
    throw DomainError("build_profile: samples cover the fundamental interval only");
  }

  // Geometric spacing resolves the x^{4/3} start, uniform spacing the rest.
  const int n = opt.n_samples;
  const int n_geo = n / 2;
  const int n_uni = n - 1 - n_geo;
  const double g0 = 1e-6 * x_end;
  const double g1 = 0.05 * x_end;
  std::vector<double> xs;
  xs.reserve(n);
  xs.push_back(0.0);
  for (int i = 0; i < n_geo; ++i) xs.push_back(g0 * std::pow(g1 / g0, double(i) / n_geo));
  for (int i = 0; i < n_uni; ++i) xs.push_back(g1 + (x_end - g1) * double(i + 1) / n_uni);
  xs.back() = x_end;

  const double s8 = sqrt8j(j_x);
  double T = -1.0;
  p.samples.reserve(n);
  for (double x : xs) {
    double D = 0.0;
    if (x > 0.0) {
      if (p.a_half_period && x >= *p.a_half_period) {
        D = *p.s_zeros.s11;
      } else {
        T = invert_T(s8 * x, gamma, T);
        D = T * T * T * T;
      }
    }
    const double dD = s8 * std::sqrt(std::sqrt(D)) * std::sqrt(std::max(0.0, w1(D, gamma)));
    p.samples.push_back({x, D, dD});
  }
  return p;
}

std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& z, int m) {
  // Fornberg's recursion.
  const int n = static_cast<int>(z.size());
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = z[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = z[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = z[i] - z[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

Residuals residuals(const PotentialProfile& p, double x_min) {
  Residuals r;
  const auto& s = p.samples;
  const int n = static_cast<int>(s.size());
  const double j = p.j_x;
  for (int i = 2; i + 2 < n; ++i) {
    if (s[i].x < x_min) continue;
    std::vector<double> nodes{s[i - 2].x, s[i - 1].x, s[i].x, s[i + 1].x, s[i + 2].x};
    const auto w = fd_weights(s[i].x, nodes, 2);
    double d1 = 0.0;
    double d2 = 0.0;
    for (int k = 0; k < 5; ++k) {
      d1 += w[1][k] * s[i - 2 + k].D;
      d2 += w[2][k] * s[i - 2 + k].D;
    }
    const double D = s[i].D;
    const double sq = std::sqrt(D);
    const double rhs1 = 8.0 * j * sq * w1(D, p.gamma);
    const double rhs2 = j * (6.0 * sq + 2.0 / sq - 4.0 * p.gamma);
    r.first_integral_max = std::max(r.first_integral_max, std::abs(d1 * d1 - rhs1) / std::max(1.0, std::abs(rhs1)));
    r.ode_max = std::max(r.ode_max, std::abs(d2 - rhs2) / std::max(1.0, std::abs(rhs2)));
  }
  return r;
}

}  // namespace mid
