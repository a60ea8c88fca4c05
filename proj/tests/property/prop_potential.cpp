#include <doctest.h>

#include <cmath>
#include <memory>

#include "gen.hpp"
#include "mid/potential.hpp"
#include "mid/uvsolve.hpp"

using namespace mid;
using midtest::Gen;

TEST_CASE("W identities and root products") {
  Gen g(201);
  for (int i = 0; i < 1000; ++i) {
    const double gamma = g.uniform(0.0, 10.0);
    const double s = g.uniform(0.0, 20.0);
    CHECK(w1(0.0, gamma) == 1.0);
    CHECK(w2(0.0, gamma) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(3.0 * w2(s, gamma) == doctest::Approx(1.0 - 2.0 * gamma * std::sqrt(s) + 3.0 * s).epsilon(1e-12));
    const auto z = w_zeros(gamma);
    if (z.s11) {
      CHECK(std::abs(*z.s11 * *z.s12 - 1.0) <= 1e-12);
      CHECK(std::abs(w1(*z.s11, gamma)) <= 1e-12 * gamma * gamma);
    }
    if (z.s21) CHECK(std::abs(*z.s21 * *z.s22 - 1.0 / 9.0) <= 1e-12);
    CHECK(z.s11.has_value() == (gamma >= 2.0));
    CHECK(z.s21.has_value() == (gamma >= std::sqrt(3.0)));
  }
}

TEST_CASE("invert_D is increasing and round-trips") {
  Gen g(202);
  for (int c = 0; c < 60; ++c) {
    const double gamma = c % 3 == 0 ? g.uniform(0.0, 2.0) : c % 3 == 1 ? g.uniform(2.0001, 6.0) : 2.0;
    const double j = g.log_uniform(0.1, 10.0);
    // I has a square-root endpoint at s11 (gamma > 2) and a logarithmic one at
    // 1 (gamma = 2); the last few ulps of D there carry no information about x.
    double xmax = 5.0;
    if (gamma > 2.0) xmax = half_period(gamma, j) * (1.0 - 1e-6);
    if (gamma == 2.0) xmax = std::min(xmax, integral_I(1.0 - 1e-6, 2.0) / std::sqrt(8.0 * j));
    double prev = -1.0;
    for (int i = 0; i <= 40; ++i) {
      const double x = xmax * i / 40.0;
      const double D = invert_D(x, j, gamma);
      CAPTURE(gamma);
      CAPTURE(x);
      CHECK(D > prev);
      prev = D;
      CHECK(std::abs(integral_I(D, gamma) / std::sqrt(8.0 * j) - x) <= 1e-9 * std::max(1.0, x));
    }
  }
}

TEST_CASE("I increases with gamma") {
  Gen g(203);
  for (int i = 0; i < 500; ++i) {
    const double gamma = g.uniform(0.0, 1.9);
    const double z = g.uniform(1e-3, 0.9);
    const double h = 1e-5;
    CHECK(integral_I(z, gamma + h) - integral_I(z, gamma - h) > 0.0);
  }
}

TEST_CASE("convexity changes at the zeros of W2") {
  Gen g(204);
  for (int c = 0; c < 12; ++c) {
    const double gamma = c < 6 ? g.uniform(1.75, 1.99) : g.uniform(2.05, 4.0);
    const double j = g.log_uniform(0.3, 3.0);
    const auto z = w_zeros(gamma);
    const double s8 = std::sqrt(8.0 * j);
    std::vector<double> expect{integral_I(*z.s21, gamma) / s8};
    if (gamma < 2.0) expect.push_back(integral_I(*z.s22, gamma) / s8);
    const double xmax = gamma > 2.0 ? half_period(gamma, j) * 0.999 : 5.0;
    const int n = 4000;
    const double h = xmax / n;
    std::vector<double> changes;
    int prev = 0;
    for (int i = 1; i < n; ++i) {
      const double x = i * h;
      const double d2 = invert_D(x + h, j, gamma) - 2.0 * invert_D(x, j, gamma) + invert_D(x - h, j, gamma);
      const int s = d2 > 0.0 ? 1 : -1;
      if (prev != 0 && s != prev) changes.push_back(x);
      prev = s;
    }
    CAPTURE(gamma);
    REQUIRE(changes.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k) CHECK(std::abs(changes[k] - expect[k]) <= 2.0 * h);
  }
}

TEST_CASE("gamma = 2 saturates below one") {
  Gen g(205);
  for (int i = 0; i < 20; ++i) {
    const double j = g.log_uniform(0.1, 10.0);
    const double x = g.log_uniform(1e-2, 1e3);
    CHECK(invert_D(x, j, 2.0) < 1.0);
  }
  CHECK(1.0 - invert_D(1e3, 1.0, 2.0) <= 1e-2);
}

TEST_CASE("profile residuals") {
  Gen g(206);
  for (int c = 0; c < 8; ++c) {
    const double gamma = g.uniform(0.0, 4.0);
    const double j = g.log_uniform(0.2, 5.0);
    const auto p = build_profile(gamma, j);
    const auto r = residuals(p);
    CAPTURE(gamma);
    CHECK(r.first_integral_max <= 1e-6);
    CHECK(r.ode_max <= 1e-4);
    CHECK(p.samples.front().D == 0.0);
    CHECK(p.samples.front().dD == 0.0);
  }
}

namespace {

std::shared_ptr<const PotentialProfile> pot_for(double gamma, double j) {
  return std::make_shared<const PotentialProfile>(build_profile(gamma, j));
}

}  // namespace

TEST_CASE("picard increments contract at least as fast as L") {
  Gen g(207);
  for (int c = 0; c < 10; ++c) {
    const double gamma = g.uniform(0.0, 3.0);
    const double j = g.log_uniform(0.2, 5.0);
    const auto pot = pot_for(gamma, j);
    const double delta = choose_delta(*pot, g.uniform(0.1, 0.4));
    const auto uv = picard_solve_local(pot, g.uniform(-1, 1), g.uniform(0, 2), delta);
    const auto& inc = uv.picard_increments;
    for (std::size_t k = 1; k < inc.size(); ++k) {
      if (inc[k - 1] < 1e-12) break;
      CHECK(inc[k] <= uv.contraction_constant * inc[k - 1] * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("solutions superpose") {
  Gen g(208);
  for (int c = 0; c < 6; ++c) {
    const double gamma = g.uniform(0.0, 3.0);
    const double j = g.log_uniform(0.2, 5.0);
    const auto pot = pot_for(gamma, j);
    const double delta = choose_delta(*pot);
    const double a1 = g.uniform(-1, 1), a2 = g.uniform(-1, 1), b1 = g.uniform(0, 2), b2 = g.uniform(0, 2);
    auto run = [&](double a, double b) { return continue_solution(picard_solve_local(pot, a, b, delta), 1.0); };
    const auto s1 = run(a1, b1), s2 = run(a2, b2), s0 = run(0.0, 0.0), s12 = run(a1 + a2, b1 + b2);
    REQUIRE(s1.samples.size() == s12.samples.size());
    for (std::size_t i = 0; i < s1.samples.size(); ++i) {
      // u - u0 is linear in alpha and v is linear in beta
      const double du = (s1.samples[i].u - s0.samples[i].u) + (s2.samples[i].u - s0.samples[i].u);
      CHECK(std::abs(s12.samples[i].u - s0.samples[i].u - du) <= 1e-9);
      CHECK(std::abs(s12.samples[i].v - s1.samples[i].v - s2.samples[i].v) <= 1e-9);
    }
  }
}

TEST_CASE("energy identity and identity residual") {
  Gen g(209);
  for (int c = 0; c < 8; ++c) {
    const double gamma = g.uniform(0.0, 2.0);
    const double j = g.log_uniform(0.3, 3.0);
    const auto pot = pot_for(gamma, j);
    const double beta = std::sqrt(2.0 * j * gamma);
    const auto uv = continue_solution(picard_solve_local(pot, 0.0, beta, choose_delta(*pot)), 2.0);
    CAPTURE(gamma);
    CAPTURE(j);
    CHECK(energy_residual(uv) <= 1e-6);
    CHECK(identity_residual(uv) <= 1e-6);
  }
}

TEST_CASE("identity residual shrinks under panel refinement") {
  const auto pot = pot_for(1.0, 1.0);
  const double beta = std::sqrt(2.0);
  const double delta = choose_delta(*pot);
  double prev = INFINITY;
  for (int panels : {1, 2, 4, 8, 24}) {
    PicardOptions opt;
    opt.n_panels = panels;
    const double r = identity_residual(picard_solve_local(pot, 0.0, beta, delta, opt));
    CAPTURE(panels);
    CHECK(r <= std::max(prev, 1e-13));
    prev = r;
  }
  CHECK(prev <= 1e-12);
}
