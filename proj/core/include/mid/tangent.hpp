#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "mid/errors.hpp"

namespace mid {

// Conditions the tangent approximation depends on.
enum class Requirement {
  FNonzero,          // f(theta_L) real and non-zero
  CurvatureNonzero,  // f''(0) != 0
  PoleFree,          // no pole of theta(x) on (0, 1]
  RealFrequency,     // 2 f f'' - f'^2 > 0 at theta_L
  OmegaDefined,      // 2 f_L != theta_L f'_L
  TangentRegular,    // cos(R_L/2) != 0
};

std::string_view to_string(Requirement r);

class RequirementViolation : public DomainError {
 public:
  RequirementViolation(Requirement r, const std::string& what) : DomainError(what), which(r) {}
  Requirement which;
};

struct FEval {
  double f = 0.0;
  double fp = 0.0;
  double fpp = 0.0;
};

// f = sign sqrt(8 j theta^{1/2}(theta + 1) + 2 k1 theta + k2) and two theta-derivatives.
FEval f_eval(double theta, double j_x, double k1, double k2, int sign = +1);

enum class RBranch { Positive, Insulated };

struct TangentModel {
  double theta_L = 0.0;
  double j_x = 1.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  int f_sign = +1;
  double f_L = 0.0, fp_L = 0.0, fpp_L = 0.0;
  double f0 = 0.0, fp0 = 0.0, fpp0 = 0.0;
  double R_L = 0.0;
  double A = 0.0, B = 0.0, C = 0.0, Dshift = 0.0;
};

TangentModel build_model(double theta_L, double j_x, double k1, double k2, int f_sign = +1,
                         RBranch r_branch = RBranch::Positive);

// 2 f0 / (R cot(R x / 2) - f'0); zero at x = 0.
double theta_tangent(const TangentModel& m, double x);

// A tan(B x + C) + Dshift, the same curve written through the coefficients.
double theta_tangent_tan_form(const TangentModel& m, double x);

// Poles of theta(x) in (x0, x1], ascending.
std::vector<double> poles(const TangentModel& m, double x0, double x1);

struct ZCoeffs {
  double z0 = 0.0, z1 = 0.0, z2 = 0.0;
};

// Z = z0 + z1 K1 + z2 K1^2; needs theta_L != 1/3.
ZCoeffs z_coeffs(double theta_L);

struct RequirementFlags {
  bool f_real = false;
  bool f_nonzero = false;
  std::optional<bool> curvature_nonzero;  // empty at theta_L = 1/3
  bool real_frequency = false;            // K2 > Z with theta_L > 1/3
  std::optional<double> Z;
};

RequirementFlags requirements(double theta_L, double K1, double K2);

// Checks requirements 1-4 for a built model (pole test over (0, 1]).
bool satisfies_all(const TangentModel& m);

double omega(const TangentModel& m);

// tan B - Omega B; zero exactly when theta(1) = theta_L.
double anode_residual(const TangentModel& m);

// Q(K2) = q0 + q1 K2 + q2 K2^2 + q3 K2^3, zero when f0^2 = k2.
std::array<double, 4> q_polynomial(double theta_L, double K1);
double q_value(double theta_L, double K1, double K2);

// Real roots of Q in K2, ascending.
std::vector<double> q_roots(double theta_L, double K1);

struct CaseII {
  double K_min = 0.0;
  double zeta_min = 0.0;
};

std::array<double, 3> sigma_coeffs(double theta_L);
double zeta(double theta_L, double K);
CaseII case_ii(double theta_L);

}  // namespace mid
