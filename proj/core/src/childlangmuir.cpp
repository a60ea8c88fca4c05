#include "mid/childlangmuir.hpp"

#include <algorithm>
#include <cmath>
#include <boost/math/tools/roots.hpp>

#include "mid/errors.hpp"

namespace mid {

double perveance_constant() {
  return 4.0 / 9.0 * constants::epsilon0 * std::sqrt(2.0 * constants::electron_charge_to_mass);
}

double k_factor(double d) { return (1.0 + d * d) / std::sqrt(2.0 + d * d); }

double solve_delta(double j_x) {
  if (!(j_x > 0.0)) throw DomainError("solve_delta: j_x must be positive");
  const double c = 2.25 * j_x;
  // d^3 / K(d) is increasing, so the root is unique.
  auto g = [c](double d) { return d * d * d * std::sqrt(2.0 + d * d) - c * (1.0 + d * d); };
  double hi = std::max(1.0, std::cbrt(c));
  while (g(hi) < 0.0) hi *= 2.0;
  std::uintmax_t iters = 200;
  const auto br = boost::math::tools::toms748_solve(g, 0.0, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  const double d = 0.5 * (br.first + br.second);
  return std::abs(g(br.first)) < std::abs(g(d)) ? br.first : d;
}

double jcl_dimensionless(double V, double gap, double delta) {
  if (!(gap > 0.0)) throw DomainError("jcl_dimensionless: gap must be positive");
  if (!(V >= 0.0)) throw DomainError("jcl_dimensionless: V must be non-negative");
  return 4.0 / 9.0 * V * std::sqrt(V) / (k_factor(delta) * gap * gap);
}

double jcl_physical(double V, double gap) {
  if (!(gap > 0.0)) throw DomainError("jcl_physical: gap must be positive");
  if (!(V >= 0.0)) throw DomainError("jcl_physical: V must be non-negative");
  return perveance_constant() * V * std::sqrt(V) / (gap * gap);
}

CLResult child_langmuir(double j_x, double V, double gap) {
  CLResult r;
  r.delta = solve_delta(j_x);
  r.K_delta = k_factor(r.delta);
  r.j_cl = jcl_dimensionless(V, gap, r.delta);
  r.mode = CLMode::Dimensionless;
  return r;
}

CLBounds bounds_check(double j_x_max, double delta, double phi_L) {
  CLBounds b;
  b.lower_ok = 4.0 * delta * delta * delta >= 9.0 * j_x_max * (1.0 + delta * delta) / std::sqrt(2.0 + delta * delta);
  b.upper_ok = phi_L >= delta * delta;
  return b;
}

}  // namespace mid
