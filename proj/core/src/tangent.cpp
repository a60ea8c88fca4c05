#include "mid/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mid/cubic.hpp"

namespace mid {

namespace {

constexpr double kPi = std::numbers::pi;

double radicand(double theta, double j, double k1, double k2) {
  return 8.0 * j * std::sqrt(theta) * (theta + 1.0) + 2.0 * k1 * theta + k2;
}

double poly_eval(const std::array<double, 4>& q, double x) { return ((q[3] * x + q[2]) * x + q[1]) * x + q[0]; }

double poly_deriv(const std::array<double, 4>& q, double x) { return (3.0 * q[3] * x + 2.0 * q[2]) * x + q[1]; }

double newton_polish(const std::array<double, 4>& q, double x) {
  for (int it = 0; it < 8; ++it) {
    const double f = poly_eval(q, x);
    const double d = poly_deriv(q, x);
    if (d == 0.0) break;
    const double xn = x - f / d;
    if (!(std::abs(poly_eval(q, xn)) < std::abs(f))) break;
    x = xn;
  }
  return x;
}

}  // namespace

std::string_view to_string(Requirement r) {
  switch (r) {
    case Requirement::FNonzero: return "f_nonzero";
    case Requirement::CurvatureNonzero: return "curvature_nonzero";
    case Requirement::PoleFree: return "pole_free";
    case Requirement::RealFrequency: return "real_frequency";
    case Requirement::OmegaDefined: return "omega_defined";
    case Requirement::TangentRegular: return "tangent_regular";
  }
  return "unknown";
}

FEval f_eval(double theta, double j, double k1, double k2, int sign) {
  if (theta == 0.0) throw DomainError("f_eval: derivatives are singular at theta = 0");
  if (!(theta > 0.0)) throw DomainError("f_eval: theta must be positive");
  const double F = radicand(theta, j, k1, k2);
  if (!(F > 0.0)) throw DomainError("f_eval: radicand is not positive");
  const double st = std::sqrt(theta);
  const double f = (sign < 0 ? -1.0 : 1.0) * std::sqrt(F);
  const double P = 2.0 * j * (3.0 * theta + 1.0) / st + k1;
  const double dP = j * (3.0 * theta - 1.0) / (theta * st);
  const double fp = P / f;
  const double fpp = (dP - P * P / F) / f;
  return {f, fp, fpp};
}

TangentModel build_model(double theta_L, double j, double k1, double k2, int f_sign, RBranch r_branch) {
  if (!(theta_L > 0.0)) throw DomainError("build_model: theta_L must be positive");
  if (!(j > 0.0)) throw DomainError("build_model: j_x must be positive");
  if (!(radicand(theta_L, j, k1, k2) > 0.0)) {
    throw RequirementViolation(Requirement::FNonzero, "build_model: f(theta_L) is not real and non-zero");
  }
  TangentModel m;
  m.theta_L = theta_L;
  m.j_x = j;
  m.k1 = k1;
  m.k2 = k2;
  m.K1 = k1 / j;
  m.K2 = k2 / j;
  m.f_sign = f_sign < 0 ? -1 : 1;
  const FEval e = f_eval(theta_L, j, k1, k2, m.f_sign);
  m.f_L = e.f;
  m.fp_L = e.fp;
  m.fpp_L = e.fpp;
  if (m.fpp_L == 0.0) throw RequirementViolation(Requirement::CurvatureNonzero, "build_model: f''(0) vanishes");
  const double t = theta_L;
  m.f0 = 0.5 * t * t * m.fpp_L - t * m.fp_L + m.f_L;
  m.fp0 = m.fp_L - t * m.fpp_L;
  m.fpp0 = m.fpp_L;
  const double rad = 2.0 * m.f_L * m.fpp_L - m.fp_L * m.fp_L;
  if (!(rad > 0.0)) {
    throw RequirementViolation(Requirement::RealFrequency, "build_model: 2 f f'' - f'^2 is not positive");
  }
  m.R_L = (r_branch == RBranch::Insulated ? -1.0 : 1.0) * std::sqrt(rad);
  m.A = m.R_L / m.fpp0;
  m.B = 0.5 * m.R_L;
  m.C = std::atan(m.fp0 / m.R_L);
  m.Dshift = -m.fp0 / m.fpp0;
  return m;
}

double theta_tangent(const TangentModel& m, double x) {
  if (x == 0.0) return 0.0;
  const double a = 0.5 * m.R_L * x;
  const double s = std::sin(a);
  if (s == 0.0) return 0.0;
  const double den = m.R_L * std::cos(a) / s - m.fp0;
  const double tol = 1e-8 * (m.fp0 != 0.0 ? std::abs(m.fp0) : std::abs(m.R_L));
  if (std::abs(den) < tol) {
    const auto p = poles(m, x - 1e-6 * std::max(1.0, std::abs(x)), x + 1e-6 * std::max(1.0, std::abs(x)));
    throw PoleError("theta_tangent: x is at a pole", p.empty() ? x : p.front());
  }
  return 2.0 * m.f0 / den;
}

double theta_tangent_tan_form(const TangentModel& m, double x) {
  return m.A * std::tan(m.B * x + m.C) + m.Dshift;
}

std::vector<double> poles(const TangentModel& m, double x0, double x1) {
  // R cot(R x/2) = f'0  <=>  R x/2 = atan(R/f'0) + l pi.
  std::vector<double> out;
  const double base = m.fp0 != 0.0 ? std::atan(m.R_L / m.fp0) : std::copysign(kPi / 2.0, m.R_L);
  const double scale = 2.0 / m.R_L;
  const double l0 = std::floor((std::min(x0, x1) / scale - base) / kPi) - 1.0;
  const double l1 = std::ceil((std::max(x0, x1) / scale - base) / kPi) + 1.0;
  for (double l = std::min(l0, l1) - 2.0; l <= std::max(l0, l1) + 2.0; l += 1.0) {
    const double x = scale * (base + l * kPi);
    if (x > x0 && x <= x1) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ZCoeffs z_coeffs(double t) {
  if (std::abs(3.0 * t - 1.0) < 1e-14) throw DomainError("z_coeffs: undefined at theta_L = 1/3");
  const double st = std::sqrt(t);
  const double den = 3.0 * t - 1.0;
  return {2.0 * st * (15.0 * t * t + 10.0 * t + 7.0) / den, 4.0 * t * (3.0 * t + 2.0) / den,
          3.0 * t * st / (2.0 * den)};
}

RequirementFlags requirements(double t, double K1, double K2) {
  if (!(t > 0.0)) throw DomainError("requirements: theta_L must be positive");
  RequirementFlags r;
  const double st = std::sqrt(t);
  const double F = 8.0 * st * (t + 1.0) + 2.0 * K1 * t + K2;  // f_L^2 / j
  r.f_real = F > 0.0;
  r.f_nonzero = F != 0.0;
  const double P = 2.0 * (3.0 * t + 1.0) / st + K1;  // f_L f'_L / j
  if (std::abs(3.0 * t - 1.0) >= 1e-14) {
    r.curvature_nonzero = (3.0 * t - 1.0) * F != t * st * P * P;
    const ZCoeffs z = z_coeffs(t);
    r.Z = z.z0 + z.z1 * K1 + z.z2 * K1 * K1;
    r.real_frequency = t > 1.0 / 3.0 && K2 > *r.Z;
  }
  return r;
}

bool satisfies_all(const TangentModel& m) {
  const auto r = requirements(m.theta_L, m.K1, m.K2);
  return r.f_real && r.f_nonzero && r.curvature_nonzero.value_or(false) && r.real_frequency &&
         poles(m, 0.0, 1.0).empty();
}

double omega(const TangentModel& m) {
  const double den = 2.0 * m.f_L - m.theta_L * m.fp_L;
  if (std::abs(den) <= 1e-14 * std::max(std::abs(2.0 * m.f_L), std::abs(m.theta_L * m.fp_L))) {
    throw RequirementViolation(Requirement::OmegaDefined, "omega: 2 f_L = theta_L f'_L");
  }
  return 2.0 * m.theta_L / den;
}

double anode_residual(const TangentModel& m) {
  const double Om = omega(m);
  if (std::abs(std::cos(m.B)) < 1e-12) {
    throw RequirementViolation(Requirement::TangentRegular, "anode_residual: R_L is an odd multiple of pi");
  }
  return std::tan(m.B) - Om * m.B;
}

std::array<double, 4> q_polynomial(double t, double K1) {
  if (!(t > 0.0)) throw DomainError("q_polynomial: theta_L must be positive");
  const double s = std::sqrt(t);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double inner = 3.0 * t * K1 * K1 + 2.0 * s * (17.0 + 9.0 * t) * K1 + 4.0 * (21.0 + 30.0 * t + 5.0 * t2);
  const double q0 = t2 * inner * inner;
  const double q1 = 4.0 * t3 * K1 * K1 * K1 + 6.0 * t2 * s * (31.0 - 5.0 * t) * K1 * K1 +
                    4.0 * t2 * (327.0 + 226.0 * t - 117.0 * t2) * K1 +
                    8.0 * t * s * (311.0 + 525.0 * t + 57.0 * t2 - 141.0 * t3);
  const double q2 = 4.0 * t * s * (19.0 - 9.0 * t) * K1 + 3.0 * t * (99.0 + 62.0 * t - 53.0 * t2);
  const double q3 = 4.0 * s * (3.0 - t);
  return {q0, q1, q2, q3};
}

double q_value(double t, double K1, double K2) { return poly_eval(q_polynomial(t, K1), K2); }

std::vector<double> q_roots(double t, double K1) {
  const auto q = q_polynomial(t, K1);
  const double qmax = std::max({std::abs(q[0]), std::abs(q[1]), std::abs(q[2]), std::abs(q[3])});
  std::vector<double> out;
  if (std::abs(q[3]) <= 1e-14 * qmax) {
    // Degree drop at theta_L = 3.
    const double a = q[2], b = q[1], c = q[0];
    if (a == 0.0) {
      if (b != 0.0) out.push_back(-c / b);
    } else {
      const double disc = b * b - 4.0 * a * c;
      if (disc >= 0.0) {
        const double h = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        out.push_back(h / a);
        if (h != 0.0) out.push_back(c / h);
      }
    }
  } else {
    // x^3 + a x^2 + b x + c; shift x = y + s until the linear coefficient is
    // positive, then scale y = lambda u to reach u^3 + k u^2 + u + beta.
    const double a = q[2] / q[3], b = q[1] / q[3], c = q[0] / q[3];
    const double lin0 = b - a * a / 3.0;
    const double tt = std::sqrt(std::max(0.0, (1.0 - lin0) / 3.0));
    const double s = -a / 3.0 + tt;
    const double a1 = a + 3.0 * s;
    const double b1 = (3.0 * s + 2.0 * a) * s + b;
    const double c1 = ((s + a) * s + b) * s + c;
    const double lam = std::sqrt(b1);
    const CubicRoots cr = solve({a1 / lam, c1 / (lam * lam * lam)});
    for (const auto& u : cr.roots) {
      if (u.imag() == 0.0) out.push_back(lam * u.real() + s);
    }
  }
  for (double& x : out) x = newton_polish(q, x);
  std::sort(out.begin(), out.end());
  return out;
}

std::array<double, 3> sigma_coeffs(double t) {
  const double s = std::sqrt(t);
  return {4.0 * s * (15.0 * t * t + 10.0 * t + 7.0), 2.0 * (12.0 * t * t + 5.0 * t + 1.0), 3.0 * t * s};
}

double zeta(double t, double K) {
  const auto sg = sigma_coeffs(t);
  return sg[0] + sg[1] * K + sg[2] * K * K;
}

CaseII case_ii(double t) {
  if (!(t > 0.0)) throw DomainError("case_ii: theta_L must be positive");
  const double d = 3.0 * t * std::sqrt(t);
  const double t2 = t * t;
  return {-(12.0 * t2 + 5.0 * t + 1.0) / d, (36.0 * t2 * t2 + 35.0 * t2 - 10.0 * t - 1.0) / d};
}

}  // namespace mid
