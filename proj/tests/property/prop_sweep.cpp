#include <doctest.h>

#include <cmath>
#include <string>

#include "gen.hpp"
#include "mid/dataset.hpp"
#include "mid/sweep.hpp"
#include "mid/thetad.hpp"

using namespace mid;
using midtest::Gen;

namespace {

SweepSpec line_spec(const char* fixed, double v, const char* swept, double lo, double hi, int n) {
  SweepSpec s;
  s.mode = SweepMode::Branch1D;
  s.fixed = {{fixed, v}};
  s.ranges = {{swept, lo, hi, n}};
  s.outputs = {Format::Csv, Format::Json};
  return s;
}

std::vector<ScaledParams> path_of(const SweepSpec& s, std::vector<double>& param) {
  const auto& r = s.ranges.front();
  std::vector<ScaledParams> out;
  for (int i = 0; i < r.count; ++i) {
    const double x = r.at(i);
    param.push_back(x);
    const double f = s.fixed.front().second;
    out.push_back(r.name == "k_hat" ? ScaledParams{x, f} : ScaledParams{f, x});
  }
  return out;
}

}  // namespace

TEST_CASE("identical specs give identical bytes") {
  Gen g(401);
  for (int c = 0; c < 10; ++c) {
    const bool k = g.coin();
    const auto s = line_spec(k ? "beta_hat" : "k_hat", g.uniform(-3, 3), k ? "k_hat" : "beta_hat",
                             g.uniform(-5, -1), g.uniform(1, 5), g.integer(50, 400));
    const auto a = run_sweep(s), b = run_sweep(s);
    CHECK(emit(a, Format::Csv) == emit(b, Format::Csv));
    CHECK(emit(a, Format::Json) == emit(b, Format::Json));
    CHECK(emit(a, Format::Svg) == emit(b, Format::Svg));
  }
}

TEST_CASE("pairing distance is invariant under reversal") {
  Gen g(402);
  for (int c = 0; c < 40; ++c) {
    const bool k = g.coin();
    const auto s = line_spec(k ? "beta_hat" : "k_hat", g.uniform(-3, 3), k ? "k_hat" : "beta_hat",
                             g.uniform(-5, -1), g.uniform(1, 5), g.integer(50, 600));
    std::vector<double> p;
    auto path = path_of(s, p);
    const auto fwd = track_branches(path, p);
    std::reverse(path.begin(), path.end());
    std::reverse(p.begin(), p.end());
    const auto bwd = track_branches(path, p);
    CHECK(bwd.pairing_distance == doctest::Approx(fwd.pairing_distance).epsilon(1e-12));
    CHECK(fwd.collisions.size() == bwd.collisions.size());
  }
}

TEST_CASE("branch tables have three rows per value and continuous labels") {
  Gen g(403);
  for (int c = 0; c < 20; ++c) {
    const bool k = g.coin();
    const int n = g.integer(200, 800);
    const auto s = line_spec(k ? "beta_hat" : "k_hat", g.uniform(-3, 3), k ? "k_hat" : "beta_hat", -5.0, 5.0, n);
    const auto d = run_sweep(s);
    REQUIRE(d.rows.size() == static_cast<std::size_t>(3 * n));
    const auto sv = d.column("sweep_value"), id = d.column("branch_id"), re = d.column("re"), im = d.column("im");
    std::vector<int> reseed;
    for (const auto& col : d.metadata["collisions"]) reseed.push_back(col["index"].get<int>());
    for (int i = 0; i < n; ++i) {
      for (int b = 0; b < 3; ++b) {
        const auto& row = d.rows[3 * i + b];
        CHECK(row[sv] == s.ranges.front().at(i));
        CHECK(row[id] == b);
      }
      if (i == 0 || std::find(reseed.begin(), reseed.end(), i) != reseed.end()) continue;
      // each labelled step is the nearest-neighbour assignment
      std::array<cplx, 3> prev, cur;
      for (int b = 0; b < 3; ++b) {
        prev[b] = {d.rows[3 * (i - 1) + b][re], d.rows[3 * (i - 1) + b][im]};
        cur[b] = {d.rows[3 * i + b][re], d.rows[3 * i + b][im]};
      }
      const auto [cost, perm] = best_matching(prev, cur);
      double kept = 0.0;
      for (int b = 0; b < 3; ++b) kept += std::abs(prev[b] - cur[b]);
      CHECK(kept <= cost * (1.0 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("region map boundary lies within one cell of the analytic curve") {
  for (int n : {200, 257}) {
    SweepSpec s;
    s.mode = SweepMode::RegionMap;
    s.ranges = {{"k_hat", -5.0, 5.0, n}, {"beta_hat", -5.0, 5.0, n}};
    const auto d = run_sweep(s);
    const auto ds = d.column("delta_sign");
    const double hk = s.ranges[0].step(), hb = s.ranges[1].step();
    auto sign_at = [&](int i, int j) { return d.rows[static_cast<std::size_t>(i) * n + j][ds]; };
    for (int i = 0; i < n; ++i) {
      const double k = s.ranges[0].at(i);
      for (int j = 0; j + 1 < n; ++j) {
        if (sign_at(i, j) == sign_at(i, j + 1)) continue;
        // a sign change between neighbours must sit next to the analytic curve
        const double b = s.ranges[1].at(j);
        bool near = false;
        for (double dk : {-hk, 0.0, hk}) {
          const auto bd = delta_zero_boundary(k + dk);
          if (!bd) continue;
          near = near || std::abs(bd->first - b) <= 2.0 * hb || std::abs(bd->second - b) <= 2.0 * hb;
        }
        if (std::abs(k * k - 3.0) <= 2.0 * hk * std::abs(k) + hk * hk) near = true;
        CAPTURE(k);
        CAPTURE(b);
        CHECK(near);
      }
    }
  }
}

TEST_CASE("odd symmetry of sweeps through the origin") {
  Gen g(404);
  for (int c = 0; c < 10; ++c) {
    const double b = g.uniform(0.1, 3.0);
    auto a = track_branches({{0.0, b}}, {0.0});
    auto m = track_branches({{0.0, -b}}, {0.0});
    CHECK(multiset_distance(midtest::negated(a.u[0]), m.u[0]) <= 1e-14);
  }
}

TEST_CASE("json round trip of random tables") {
  Gen g(405);
  for (int c = 0; c < 50; ++c) {
    Dataset d;
    d.kind = "random";
    d.metadata["seed"] = c;
    const int nc = g.integer(1, 6), nr = g.integer(0, 40);
    for (int k = 0; k < nc; ++k) d.columns.push_back("c" + std::to_string(k));
    for (int r = 0; r < nr; ++r) {
      std::vector<double> row;
      for (int k = 0; k < nc; ++k) {
        const int kind = g.integer(0, 9);
        row.push_back(kind == 0 ? std::nan("") : kind == 1 ? 0.0 : g.uniform(-1, 1) * std::pow(10.0, g.integer(-300, 300)));
      }
      d.rows.push_back(row);
    }
    const auto back = dataset_from_json(to_json(d));
    CHECK(same_data(d, back));
    CHECK(to_csv(back) == to_csv(d));
  }
}
