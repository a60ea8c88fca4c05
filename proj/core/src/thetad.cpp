#include "mid/thetad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mid/errors.hpp"

namespace mid {

namespace {

const double kCbrt4 = std::cbrt(4.0);

}  // namespace

ThetaBranches theta_branches(const CubicRoots& roots) {
  ThetaBranches out;
  for (int i = 0; i < 3; ++i) {
    const cplx u = roots.roots[i];
    if (u.real() < 0.0) continue;
    out.admissible.push_back({u * u, i});
    if (u.imag() == 0.0) out.physical.push_back({u.real() * u.real(), i});
  }
  std::stable_sort(out.physical.begin(), out.physical.end(),
                   [](const PhysicalTheta& a, const PhysicalTheta& b) { return a.theta < b.theta; });
  return out;
}

std::optional<std::pair<double, double>> delta_zero_boundary(double k_hat) {
  const double k = k_hat;
  double d = k * k - 3.0;
  // k_hat = +-sqrt(3) in double precision may land a rounding step below 3.
  if (d < 0.0) {
    if (d < -8.0 * std::numeric_limits<double>::epsilon() * 3.0) return std::nullopt;
    d = 0.0;
  }
  const double base = k * (9.0 - 2.0 * k * k);
  const double rad = 2.0 * d * std::sqrt(d);
  return std::make_pair((base - rad) / 27.0, (base + rad) / 27.0);
}

RegionClass classify_region(const ScaledParams& sp) {
  RegionClass rc;
  rc.delta_sign = delta_sign(sp);
  const CubicRoots cr = solve(sp);
  for (const auto& u : cr.roots) {
    if (u.imag() == 0.0) ++rc.n_real_roots;
  }
  rc.n_physical = static_cast<int>(theta_branches(cr).physical.size());

  const double k = sp.k_hat;
  if (rc.delta_sign < 0) {
    double u_real = 0.0;
    for (const auto& u : cr.roots) {
      if (u.imag() == 0.0) u_real = u.real();
    }
    const double S = cardano_sum(sp, u_real);
    rc.s_value = S;
    const double s8 = 6.0 * k / kCbrt4;
    const double s9 = -12.0 * k / kCbrt4;
    const double m8 = 1e-12 * std::max({1.0, std::abs(S), std::abs(s8)});
    const double m9 = 1e-12 * std::max({1.0, std::abs(S), std::abs(s9)});
    rc.prop8_applies = S - s8 > m8;
    rc.prop9_applies = s9 - S > m9;
  } else if (rc.delta_sign > 0) {
    // arccos(U) = arccos(V)/3 written as the triple-angle identity V = 4U^3 - 3U.
    const double root = std::sqrt(k * k - 3.0);
    const double U = k / (2.0 * root);
    const double V = (2.0 * k * k * k - 9.0 * k + 27.0 * sp.beta_hat) / (18.0 - 6.0 * k * k) * (3.0 / root);
    rc.prop10_boundary = std::abs(sp.beta_hat) <= 1e-9 && std::abs(U) <= 1.0 && std::abs(V) <= 1.0 + 1e-12 &&
                         std::abs(4.0 * U * U * U - 3.0 * U - V) <= 1e-8;
  }
  return rc;
}

ThetaBranches ivp_consistency_roots(double gamma) {
  if (!(gamma >= 2.0)) throw DomainError("ivp_consistency_roots: gamma < 2 has no non-zero real branch");
  return theta_branches(solve({-gamma, 0.0}));
}

}  // namespace mid
