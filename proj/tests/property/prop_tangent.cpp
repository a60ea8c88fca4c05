#include <doctest.h>

#include <cmath>
#include <vector>

#include "gen.hpp"
#include "mid/tangent.hpp"

using namespace mid;
using midtest::Gen;

namespace {

// Random models that build and have no pole within [0, 1.2].
std::vector<TangentModel> random_models(std::uint64_t seed, int want, bool q_root) {
  Gen g(seed);
  std::vector<TangentModel> out;
  for (int tries = 0; tries < 20000 && static_cast<int>(out.size()) < want; ++tries) {
    const double t = g.uniform(0.4, 4.0);
    const double K1 = g.uniform(-10.0, 10.0);
    const double j = g.uniform(0.2, 2.2);
    double K2 = g.uniform(0.0, 200.0);
    if (q_root) {
      const auto roots = q_roots(t, K1);
      if (roots.empty()) continue;
      K2 = roots[g.integer(0, static_cast<int>(roots.size()) - 1)];
      if (!(K2 > 0.0)) continue;
    }
    try {
      const auto m = build_model(t, j, K1 * j, K2 * j, g.coin() ? 1 : -1,
                                 g.coin() ? RBranch::Positive : RBranch::Insulated);
      if (!poles(m, -1e-9, 1.2).empty()) continue;
      // Q also vanishes where f_L does; those roots are not slope matches
      if (q_root && std::abs(m.f_L) < 1e-3) continue;
      out.push_back(m);
    } catch (const DomainError&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("tangent form matches the cotangent form") {
  const auto ms = random_models(301, 200, false);
  REQUIRE(ms.size() == 200);
  Gen g(302);
  for (const auto& m : ms) {
    for (int i = 0; i < 10; ++i) {
      const double x = g.uniform(0.0, 1.2);
      const double a = theta_tangent(m, x), b = theta_tangent_tan_form(m, x);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("theta satisfies the Riccati slope relation") {
  const auto ms = random_models(303, 100, false);
  Gen g(304);
  for (const auto& m : ms) {
    const double x = g.uniform(0.1, 1.1);
    double err_h = 0.0;
    for (double h : {1e-3, 5e-4}) {
      const double fd = (theta_tangent(m, x + h) - theta_tangent(m, x - h)) / (2.0 * h);
      const double th = theta_tangent(m, x);
      const double rhs = m.B / m.A * (m.A * m.A + (th - m.Dshift) * (th - m.Dshift));
      const double err = std::abs(fd - rhs) / std::max(1.0, std::abs(rhs));
      if (h == 1e-3) {
        err_h = err;
      } else {
        // second order: halving h cuts the error by about four
        CHECK(err <= std::max(0.3 * err_h, 1e-9));
      }
    }
  }
}

TEST_CASE("slope at the cathode is sqrt(k2) on Q roots") {
  const auto ms = random_models(305, 10, true);
  REQUIRE(ms.size() == 10);
  for (const auto& m : ms) {
    const double h = 1e-4;
    const double slope = (-theta_tangent(m, 2 * h) + 8 * theta_tangent(m, h) - 8 * theta_tangent(m, -h) +
                          theta_tangent(m, -2 * h)) / (12 * h);
    CHECK(std::abs(std::abs(slope) - std::sqrt(m.k2)) <= 1e-6 * std::sqrt(m.k2));
    CHECK(std::abs(q_value(m.theta_L, m.K1, m.K2)) <=
          1e-8 * std::max({1.0, std::abs(q_polynomial(m.theta_L, m.K1)[0])}));
  }
}

TEST_CASE("case ii vertex and sign structure") {
  Gen g(306);
  for (int i = 0; i < 1000; ++i) {
    const double t = g.uniform(0.01, 2.0);
    const auto c = case_ii(t);
    CHECK(std::abs(zeta(t, c.K_min) - c.zeta_min) <= 1e-12 * std::max(1.0, std::abs(c.zeta_min)));
    for (double v : sigma_coeffs(t)) CHECK(v > 0.0);
    if (std::abs(t - 1.0 / 3.0) > 1e-9) {
      CAPTURE(t);
      CHECK((c.zeta_min > 0.0) == (t > 1.0 / 3.0));
    }
  }
}

TEST_CASE("insulated branch mirrors the positive branch") {
  const auto ms = random_models(307, 50, false);
  for (const auto& m : ms) {
    const auto other = build_model(m.theta_L, m.j_x, m.k1, m.k2, m.f_sign,
                                   m.R_L > 0.0 ? RBranch::Insulated : RBranch::Positive);
    CHECK(other.R_L == -m.R_L);
    // theta depends on R only through R cot(R x/2), which is even in R
    for (double x : {0.2, 0.5, 0.9}) {
      if (!poles(other, 0.0, 1.2).empty()) break;
      CHECK(theta_tangent(other, x) == doctest::Approx(theta_tangent(m, x)).epsilon(1e-12));
    }
  }
}
