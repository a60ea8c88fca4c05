#pragma once

namespace mid {

enum class CLMode { Physical, Dimensionless };

struct CLResult {
  double delta = 0.0;
  double K_delta = 0.0;
  double j_cl = 0.0;
  CLMode mode = CLMode::Dimensionless;
};

namespace constants {
inline constexpr double epsilon0 = 8.8541878128e-12;        // F/m
inline constexpr double electron_charge_to_mass = 1.75882001076e11;  // C/kg
}  // namespace constants

// (4/9) eps0 sqrt(2 e/m), about 2.334e-6 A V^{-3/2}.
double perveance_constant();

// (1 + d^2)/sqrt(2 + d^2)
double k_factor(double delta);

// Positive root of d^3 sqrt(2 + d^2) = (9/4) j_x (1 + d^2).
double solve_delta(double j_x);

// (4/9) V^{3/2} / (K(delta) gap^2)
double jcl_dimensionless(double V, double gap, double delta);

// SI current density in A/m^2.
double jcl_physical(double V, double gap);

CLResult child_langmuir(double j_x, double V, double gap);

struct CLBounds {
  bool lower_ok = false;
  bool upper_ok = false;
};

// 4 d^3 >= 9 j (1 + d^2)/sqrt(2 + d^2) and phi_L >= d^2.
CLBounds bounds_check(double j_x_max, double delta, double phi_L);

}  // namespace mid
