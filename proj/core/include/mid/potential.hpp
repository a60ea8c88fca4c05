#pragma once

#include <optional>
#include <vector>

namespace mid {

enum class GammaCase { Subcritical, Critical, Supercritical };

GammaCase gamma_case(double gamma);
const char* to_string(GammaCase c);

double w1(double s, double gamma);  // 1 - gamma sqrt(s) + s
double w2(double s, double gamma);  // 1/3 - (2/3) gamma sqrt(s) + s

// Zeros of W1 (gamma >= 2) and W2 (gamma >= sqrt 3), each pair ascending.
struct WZeros {
  std::optional<double> s11, s12, s21, s22;
};
WZeros w_zeros(double gamma);

// Right end of the domain of I: infinity, 1 or s11.
double upper_limit_b(double gamma);

// I(z) = int_0^z ds / (s^{1/4} sqrt(W1(s))), evaluated as int_0^{z^{1/4}} 4t^2/sqrt(1 - gamma t^2 + t^4) dt.
// z = s11 is accepted for gamma > 2 (the integral is finite there).
double integral_I(double z, double gamma);
double integral_I_prime(double z, double gamma);

// D with I(D) = sqrt(8 j_x) x on the fundamental interval.
double invert_D(double x, double j_x, double gamma);

// (3/sqrt 2)^{4/3} j_x^{2/3} x^{4/3}
double asymptotic_D(double x, double j_x);
double asymptotic_prefactor();

// a = I(s11)/sqrt(8 j_x). Throws DomainError for gamma <= 2.
double half_period(double gamma, double j_x);

struct PotentialSample {
  double x = 0.0;
  double D = 0.0;
  double dD = 0.0;
};

struct ProfileOptions {
  double x_end = 0.0;  // 0 picks the default for the gamma case
  int n_samples = 2048;
};

struct PotentialProfile {
  double gamma = 0.0;
  double j_x = 1.0;
  GammaCase gcase = GammaCase::Subcritical;
  double b = 0.0;
  std::optional<double> a_half_period;
  WZeros s_zeros;
  std::vector<PotentialSample> samples;

  // Exact evaluation at any x >= 0 (periodic extension for gamma > 2).
  double D(double x) const;
  double dD(double x) const;
};

PotentialProfile build_profile(double gamma, double j_x, const ProfileOptions& opt = {});

// Default end of the tabulated interval: 5 for gamma <= 2, a for gamma > 2.
double default_x_end(double gamma, double j_x);

// Reflection about a then 2a-periodicity. Throws DomainError for gamma <= 2.
double extend_D(const PotentialProfile& profile, double x);

// Residuals of the first integral and of the second-order equation, with
// D' and D'' from 5-point finite differences on the sample grid. Each pointwise
// residual is divided by max(1, |right-hand side|).
struct Residuals {
  double first_integral_max = 0.0;
  double ode_max = 0.0;
};
Residuals residuals(const PotentialProfile& profile, double x_min = 1e-3);

// Finite-difference weights for derivatives 0..m at x0 on arbitrary nodes.
// w[d][i] multiplies f(nodes[i]) in the d-th derivative.
std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& nodes, int m);

}  // namespace mid
