#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mid/errors.hpp"
#include "mid/sweep.hpp"
#include "mid/thetad.hpp"

using namespace mid;

namespace {

SweepSpec spec_from(const char* text) { return parse_spec_text(text); }

}  // namespace

TEST_CASE("parse_spec") {
  const auto s = spec_from(R"({"mode": "branch_1d", "fixed": {"k_hat": 0},
                               "range": {"beta_hat": [-1, 1, 5]}, "outputs": ["csv", "json"]})");
  CHECK(s.mode == SweepMode::Branch1D);
  CHECK(s.get_or("k_hat", 9.0) == 0.0);
  REQUIRE(s.range("beta_hat"));
  CHECK(s.range("beta_hat")->count == 5);
  CHECK(s.range("beta_hat")->at(4) == 1.0);
  CHECK(s.range("beta_hat")->at(2) == 0.0);
  CHECK(s.outputs.size() == 2);
  CHECK(s.quantity == Quantity::U);
}

TEST_CASE("validation errors") {
  const char* bad[] = {
      R"({"mode": "nope"})",
      R"({"mode": "branch_1d", "fixed": {"k_hat": 0}, "range": {"beta_hat": [1, -1, 5]}})",
      R"({"mode": "branch_1d", "fixed": {"k_hat": 0}, "range": {"beta_hat": [-1, 1, 1]}})",
      R"({"mode": "branch_1d", "fixed": {"k_hat": 0}, "range": {"k_hat": [-1, 1, 5]}})",
      R"({"mode": "branch_1d", "fixed": {"gamma": 0}, "range": {"k_hat": [-1, 1, 5]}})",
      R"({"mode": "branch_1d", "fixed": {"k_hat": 0}, "range": {"beta_hat": [-1, 1, 2.5]}})",
      R"({"mode": "region_map", "fixed": {"k_hat": 0}})",
      R"({"mode": "region_map", "view": "colourful"})",
      R"({"mode": "potential_profile"})",
      R"({"mode": "uv_profile", "fixed": {"gamma": 1}, "range": {"x": [1, 2, 5]}})",
      R"({"mode": "branch_1d", "fixed": {"k_hat": 0}, "outputs": []})",
      R"({"mode": "branch_1d", "fixed": {"k_hat": 0}, "outputs": ["xml"]})",
      R"([1, 2])",
      R"({"mode": )",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(run_sweep(spec_from(text)), DomainError);
  }
}

TEST_CASE("defaults") {
  const auto s = with_defaults(spec_from(R"({"mode": "region_map"})"));
  REQUIRE(s.range("k_hat"));
  CHECK(s.range("k_hat")->count == kDefaultGrid2D);
  CHECK(s.range("beta_hat")->min == -5.0);
  const auto b = with_defaults(spec_from(R"({"mode": "branch_1d", "fixed": {"beta_hat": 0}})"));
  REQUIRE(b.range("k_hat"));
  CHECK(b.range("k_hat")->count == kDefaultGrid1D);
}

TEST_CASE("branch table at the origin") {
  const auto d = run_sweep(spec_from(R"({"mode": "branch_1d", "fixed": {"k_hat": 0},
                                          "range": {"beta_hat": [-1, 1, 3]}})"));
  CHECK(d.kind == "branch_table");
  REQUIRE(d.rows.size() == 9);
  const auto re = d.column("re"), im = d.column("im");
  // rows 3..5 are beta_hat = 0: roots 0 and +-i
  double ims[3];
  for (int b = 0; b < 3; ++b) {
    CHECK(d.rows[3 + b][d.column("sweep_value")] == 0.0);
    CHECK(std::abs(d.rows[3 + b][re]) <= 1e-15);
    ims[b] = d.rows[3 + b][im];
  }
  std::sort(ims, ims + 3);
  CHECK(ims[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(ims[1] == 0.0);
  CHECK(ims[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("collisions along beta_hat = 0") {
  auto s = spec_from(R"({"mode": "branch_1d", "fixed": {"beta_hat": 0},
                         "range": {"k_hat": [-5, 5, 1001]}})");
  const auto d = run_sweep(s);
  const auto& col = d.metadata["collisions"];
  REQUIRE(col.size() == 2);
  CHECK(col[0]["value"].get<double>() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(col[1]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(col[0]["kind"] == "zero");
  const auto zeros = delta_zero_along("k_hat", 0.0, -5.0, 5.0);
  REQUIRE(zeros.size() == 2);
  CHECK(zeros[0] == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("delta_zero_along beta_hat") {
  const auto z = delta_zero_along("beta_hat", 3.0, -5.0, 5.0);
  const auto bd = delta_zero_boundary(3.0);
  REQUIRE(bd);
  REQUIRE(z.size() == 2);
  CHECK(z[0] == doctest::Approx(bd->first));
  CHECK(z[1] == doctest::Approx(bd->second));
  CHECK(delta_zero_along("beta_hat", 1.0, -5.0, 5.0).empty());
  CHECK_THROWS_AS(delta_zero_along("gamma", 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("best_matching") {
  const std::array<cplx, 3> a{cplx(0, 0), cplx(1, 0), cplx(2, 0)};
  const std::array<cplx, 3> b{cplx(2.1, 0), cplx(0.1, 0), cplx(1.1, 0)};
  const auto [cost, perm] = best_matching(a, b);
  CHECK(cost == doctest::Approx(0.3));
  CHECK(perm == std::array<int, 3>{1, 2, 0});
}

TEST_CASE("tracked branches are continuous away from collisions") {
  std::vector<ScaledParams> path;
  std::vector<double> p;
  for (int i = 0; i <= 400; ++i) {
    const double k = -1.0 + 2.0 * i / 400.0;
    path.push_back({k, 0.3});
    p.push_back(k);
  }
  const auto t = track_branches(path, p);
  CHECK(t.collisions.empty());
  for (std::size_t i = 1; i < t.u.size(); ++i) {
    for (int b = 0; b < 3; ++b) CHECK(std::abs(t.u[i][b] - t.u[i - 1][b]) < 0.05);
  }
}

TEST_CASE("region map and boundary") {
  const auto d = run_sweep(spec_from(R"({"mode": "region_map",
      "range": {"k_hat": [-5, 5, 11], "beta_hat": [-5, 5, 11]}})"));
  CHECK(d.kind == "region_map");
  CHECK(d.rows.size() == 121);
  const auto b = run_sweep(spec_from(R"({"mode": "boundary_curve", "range": {"k_hat": [-5, 5, 11]}})"));
  CHECK(b.rows.size() == 11);
  CHECK(std::isnan(b.rows[5][b.column("beta_lower")]));
  const auto bd = delta_zero_boundary(5.0);
  CHECK(b.rows[10][b.column("beta_upper")] == doctest::Approx(bd->second));
}

TEST_CASE("profiles") {
  const auto p = run_sweep(spec_from(R"({"mode": "potential_profile", "fixed": {"gamma": 1},
                                         "range": {"x": [0, 2, 21]}})"));
  CHECK(p.rows.size() == 21);
  CHECK(p.rows[0][p.column("D")] == 0.0);
  const auto uv = run_sweep(spec_from(R"({"mode": "uv_profile", "fixed": {"gamma": 0, "alpha": 1, "beta": 0},
                                          "range": {"x": [0, 1, 11]}})"));
  // Picard nodes on [0, delta] followed by the 11-point continuation grid
  REQUIRE(uv.rows.size() > 11);
  CHECK(uv.rows.front()[uv.column("x")] == 0.0);
  CHECK(uv.rows.back()[uv.column("x")] == 1.0);
  for (std::size_t i = 0; i < uv.rows.size(); ++i) {
    CHECK(uv.rows[i][uv.column("v")] == 0.0);
    if (i > 0) CHECK(uv.rows[i][0] > uv.rows[i - 1][0]);
  }
  const auto tg = run_sweep(spec_from(R"({"mode": "tangent_scan",
      "fixed": {"theta_L": 1, "k1": 0, "k2": 40}, "range": {"x": [0, 0.5, 6]}})"));
  CHECK(tg.rows[0][tg.column("theta")] == 0.0);
}

TEST_CASE("figure presets") {
  const auto names = figure_names();
  CHECK(names.front() == "fig02");
  CHECK(names.back() == "fig15");
  const auto s = figure_spec("fig02");
  CHECK(s.get("k_hat").value() == doctest::Approx(-std::numbers::sqrt3));
  CHECK_THROWS_AS(figure_spec("fig99"), DomainError);
  const auto d = run_sweep(figure_spec("fig05"));
  CHECK(emit(d, Format::Csv) == emit(run_sweep(figure_spec("fig05")), Format::Csv));
  const auto svg = emit(d, Format::Svg);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("class=\"series\"") != std::string::npos);
}
