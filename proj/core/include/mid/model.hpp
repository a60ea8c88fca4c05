#pragma once

namespace mid {

// Raw diode parameters. beta_a is v'(0) (magnetic slope), beta_phi is the
// electric slope used by the turning-point cubic. They are kept apart on
// purpose, the two sections of the model reuse the same letter.
struct DiodeParams {
  double j_x = 1.0;
  double beta_a = 0.0;
  double beta_phi = 0.0;
  double k = 0.0;
  double phi_L = 0.0;
  double a_L = 0.0;
};

struct ScaledParams {
  double k_hat = 0.0;
  double beta_hat = 0.0;
};

struct GammaParam {
  double gamma = 0.0;
};

// k_hat = k/(8 j_x), beta_hat = 4 beta_phi^2/(8 j_x).
// Throws ScalingUndefined for j_x == 0.
ScaledParams scale_params(const DiodeParams& p);

// gamma = beta_a^2/(2 j_x). Throws DomainError for j_x <= 0.
GammaParam gamma_of(const DiodeParams& p);

// (1+phi_L)^2 - 1 - a_L^2. Negative means the anode is insulated.
double theta_anode(double phi_L, double a_L);

}  // namespace mid
