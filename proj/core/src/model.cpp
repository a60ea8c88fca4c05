#include "mid/model.hpp"

#include "mid/errors.hpp"

namespace mid {

ScaledParams scale_params(const DiodeParams& p) {
  if (p.j_x == 0.0) throw ScalingUndefined("scale_params: j_x must be non-zero");
  const double d = 8.0 * p.j_x;
  return {p.k / d, 4.0 * p.beta_phi * p.beta_phi / d};
}

GammaParam gamma_of(const DiodeParams& p) {
  if (!(p.j_x > 0.0)) throw DomainError("gamma_of: j_x must be positive");
  return {p.beta_a * p.beta_a / (2.0 * p.j_x)};
}

double theta_anode(double phi_L, double a_L) {
  const double u = 1.0 + phi_L;
  return u * u - 1.0 - a_L * a_L;
}

}  // namespace mid
