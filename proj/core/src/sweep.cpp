#include "mid/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "mid/errors.hpp"
#include "mid/potential.hpp"
#include "mid/tangent.hpp"
#include "mid/thetad.hpp"
#include "mid/uvsolve.hpp"

namespace mid {
namespace {

using ojson = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kSqrt3 = std::sqrt(3.0);

const char* const kModeNames[] = {"branch_1d",         "surface_2d", "region_map",  "boundary_curve",
                                  "potential_profile", "uv_profile", "tangent_scan"};

ojson finite_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson base_metadata(const SweepSpec& s) {
  ojson m;
  m["mode"] = to_string(s.mode);
  if (!s.title.empty()) m["title"] = s.title;
  ojson fixed = ojson::object();
  for (const auto& [k, v] : s.fixed) fixed[k] = v;
  m["fixed"] = fixed;
  ojson ranges = ojson::object();
  for (const auto& r : s.ranges) ranges[r.name] = {r.min, r.max, r.count};
  m["range"] = ranges;
  m["default_grid"] = {{"1d", kDefaultGrid1D}, {"2d", {kDefaultGrid2D, kDefaultGrid2D}}};
  m["default_range"] = {-5.0, 5.0};
  return m;
}

double flag(bool b) { return b ? 1.0 : 0.0; }

bool is_admissible(cplx u) { return u.real() >= 0.0; }
bool is_physical(cplx u) { return u.imag() == 0.0 && u.real() >= 0.0; }

cplx quantity_value(Quantity q, cplx u) { return q == Quantity::Theta ? u * u : u; }

void require_fixed(const SweepSpec& s, std::string_view name) {
  if (!s.get(name)) throw DomainError("sweep: mode " + std::string(to_string(s.mode)) + " needs fixed '" + std::string(name) + "'");
}

void allow_only(const SweepSpec& s, std::initializer_list<std::string_view> names) {
  auto ok = [&](const std::string& n) {
    return std::find(names.begin(), names.end(), n) != names.end();
  };
  for (const auto& [n, v] : s.fixed) {
    if (!ok(n)) throw DomainError("sweep: parameter '" + n + "' is not used by mode " + std::string(to_string(s.mode)));
    if (!std::isfinite(v)) throw DomainError("sweep: parameter '" + n + "' is not finite");
  }
  for (const auto& r : s.ranges) {
    if (!ok(r.name)) throw DomainError("sweep: range '" + r.name + "' is not used by mode " + std::string(to_string(s.mode)));
  }
}

// k_hat along the columns, beta_hat along the rows.
std::pair<const SweepRange*, const SweepRange*> plane_ranges(const SweepSpec& s) {
  const SweepRange* k = s.range("k_hat");
  const SweepRange* b = s.range("beta_hat");
  if (!k || !b) throw DomainError("sweep: mode needs ranges k_hat and beta_hat");
  return {k, b};
}

}  // namespace

std::string_view to_string(SweepMode m) { return kModeNames[static_cast<int>(m)]; }

SweepMode parse_mode(std::string_view s) {
  for (int i = 0; i < 7; ++i) {
    if (s == kModeNames[i]) return static_cast<SweepMode>(i);
  }
  throw DomainError("unknown sweep mode '" + std::string(s) + "'");
}

std::string_view to_string(CollisionKind k) {
  switch (k) {
    case CollisionKind::Zero: return "zero";
    case CollisionKind::SignChange: return "sign_change";
    case CollisionKind::Touch: return "touch";
  }
  return "zero";
}

double SweepRange::at(int i) const {
  if (i == 0) return min;
  if (i == count - 1) return max;
  return min + (max - min) * i / (count - 1);
}

std::optional<double> SweepSpec::get(std::string_view name) const {
  for (const auto& [k, v] : fixed) {
    if (k == name) return v;
  }
  return std::nullopt;
}

double SweepSpec::get_or(std::string_view name, double fallback) const {
  return get(name).value_or(fallback);
}

const SweepRange* SweepSpec::range(std::string_view name) const {
  for (const auto& r : ranges) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

SweepSpec parse_spec(const ojson& j) {
  SweepSpec s;
  try {
    if (!j.is_object()) throw DomainError("sweep config must be a JSON object");
    s.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("fixed")) {
      for (const auto& [k, v] : j.at("fixed").items()) s.fixed.emplace_back(k, v.get<double>());
    }
    if (j.contains("range")) {
      for (const auto& [k, v] : j.at("range").items()) {
        if (!v.is_array() || v.size() != 3) throw DomainError("range '" + k + "' must be [min, max, count]");
        const double c = v[2].get<double>();
        if (c != std::floor(c) || c > 1e8) throw DomainError("range '" + k + "': count must be an integer");
        s.ranges.push_back({k, v[0].get<double>(), v[1].get<double>(), static_cast<int>(c)});
      }
    }
    if (j.contains("outputs")) {
      s.outputs.clear();
      for (const auto& o : j.at("outputs")) s.outputs.push_back(parse_format(o.get<std::string>()));
    }
    if (j.contains("quantity")) {
      const auto q = j.at("quantity").get<std::string>();
      if (q == "u") {
        s.quantity = Quantity::U;
      } else if (q == "theta") {
        s.quantity = Quantity::Theta;
      } else {
        throw DomainError("quantity must be 'u' or 'theta'");
      }
    }
    if (j.contains("view")) s.view = j.at("view").get<std::string>();
    if (j.contains("title")) s.title = j.at("title").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("sweep config: ") + e.what());
  }
  validate(s);
  return s;
}

SweepSpec parse_spec_text(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("sweep config: ") + e.what());
  }
  return parse_spec(j);
}

void validate(const SweepSpec& s) {
  for (const auto& r : s.ranges) {
    if (r.count < 2) throw DomainError("range '" + r.name + "': count must be at least 2");
    if (!(r.min < r.max)) throw DomainError("range '" + r.name + "': min must be below max");
    if (!std::isfinite(r.min) || !std::isfinite(r.max)) throw DomainError("range '" + r.name + "' is not finite");
    if (s.get(r.name)) throw DomainError("parameter '" + r.name + "' is both fixed and swept");
    int seen = 0;
    for (const auto& q : s.ranges) seen += q.name == r.name;
    if (seen > 1) throw DomainError("range '" + r.name + "' given twice");
  }
  for (std::size_t i = 0; i < s.fixed.size(); ++i) {
    for (std::size_t k = i + 1; k < s.fixed.size(); ++k) {
      if (s.fixed[i].first == s.fixed[k].first) throw DomainError("parameter '" + s.fixed[i].first + "' fixed twice");
    }
  }
  if (s.outputs.empty()) throw DomainError("sweep: outputs must not be empty");

  switch (s.mode) {
    case SweepMode::Branch1D: {
      allow_only(s, {"k_hat", "beta_hat"});
      if (s.ranges.size() > 1) throw DomainError("branch_1d sweeps exactly one parameter");
      if (!s.ranges.empty()) {
        const auto& n = s.ranges[0].name;
        require_fixed(s, n == "k_hat" ? "beta_hat" : "k_hat");
      } else if (s.fixed.size() != 1) {
        throw DomainError("branch_1d needs one swept and one fixed parameter");
      }
      break;
    }
    case SweepMode::Surface2D:
    case SweepMode::RegionMap:
      allow_only(s, {"k_hat", "beta_hat"});
      if (!s.fixed.empty()) throw DomainError("2-D modes sweep both k_hat and beta_hat");
      if (s.mode == SweepMode::RegionMap && s.view != "delta_sign" && s.view != "n_physical" &&
          s.view != "delta_negative" && s.view != "delta_positive") {
        throw DomainError("unknown region view '" + s.view + "'");
      }
      break;
    case SweepMode::BoundaryCurve:
      allow_only(s, {"k_hat"});
      break;
    case SweepMode::PotentialProfile:
      allow_only(s, {"gamma", "j_x", "n_samples", "x"});
      require_fixed(s, "gamma");
      break;
    case SweepMode::UVProfile:
      allow_only(s, {"gamma", "j_x", "alpha", "beta", "x"});
      require_fixed(s, "gamma");
      if (const auto* r = s.range("x"); r && r->min != 0.0) throw DomainError("uv_profile: the x range starts at 0");
      break;
    case SweepMode::TangentScan:
      allow_only(s, {"theta_L", "j_x", "k1", "k2", "f_sign", "insulated", "x"});
      require_fixed(s, "theta_L");
      require_fixed(s, "k1");
      require_fixed(s, "k2");
      break;
  }
}

SweepSpec with_defaults(SweepSpec s) {
  auto add = [&](const std::string& name, double lo, double hi, int n) {
    if (!s.range(name) && !s.get(name)) s.ranges.push_back({name, lo, hi, n});
  };
  switch (s.mode) {
    case SweepMode::Branch1D:
      if (s.ranges.empty() && s.fixed.size() == 1) {
        add(s.fixed[0].first == "k_hat" ? "beta_hat" : "k_hat", -5.0, 5.0, kDefaultGrid1D);
      }
      break;
    case SweepMode::Surface2D:
    case SweepMode::RegionMap:
      add("k_hat", -5.0, 5.0, kDefaultGrid2D);
      add("beta_hat", -5.0, 5.0, kDefaultGrid2D);
      break;
    case SweepMode::BoundaryCurve:
      add("k_hat", -5.0, 5.0, kDefaultGrid1D);
      break;
    case SweepMode::PotentialProfile:
    case SweepMode::UVProfile: {
      const auto g = s.get("gamma");
      if (g && !s.range("x")) {
        const double j = s.get_or("j_x", 1.0);
        double x_end = 5.0;
        if (s.mode == SweepMode::PotentialProfile && *g > 2.0) x_end = default_x_end(*g, j);
        add("x", 0.0, x_end, kDefaultGrid1D);
      }
      break;
    }
    case SweepMode::TangentScan:
      add("x", 0.0, 1.0, kDefaultGrid1D);
      break;
  }
  return s;
}

std::pair<double, std::array<int, 3>> best_matching(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
  std::array<int, 3> perm{0, 1, 2};
  std::array<int, 3> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    const double c = std::abs(a[0] - b[perm[0]]) + std::abs(a[1] - b[perm[1]]) + std::abs(a[2] - b[perm[2]]);
    if (c < best_cost) {
      best_cost = c;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best_cost, best};
}

TrackedBranches track_branches(const std::vector<ScaledParams>& path, const std::vector<double>& param) {
  const std::size_t n = path.size();
  if (param.size() != n) throw DomainError("track_branches: path and parameter sizes differ");
  TrackedBranches tb;
  if (n == 0) return tb;

  std::vector<std::array<cplx, 3>> sorted(n);
  std::vector<int> sign(n);
  tb.delta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CubicRoots cr = solve(path[i]);
    sorted[i] = cr.roots;
    tb.delta[i] = cr.discriminant;
    sign[i] = delta_sign(path[i]);
  }

  std::vector<char> hit(n, 0), near_change(n, 0);
  auto mark = [&](std::size_t i, double value, CollisionKind kind) {
    if (hit[i]) return;
    hit[i] = 1;
    tb.collisions.push_back({static_cast<int>(i), value, kind});
  };
  const auto& D = tb.delta;
  for (std::size_t i = 0; i < n; ++i) {
    if (sign[i] == 0) mark(i, param[i], CollisionKind::Zero);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sign[i] * sign[i + 1] >= 0) continue;
    near_change[i] = near_change[i + 1] = 1;
    const double a = std::abs(D[i]), b = std::abs(D[i + 1]);
    std::size_t at = i;
    if (b < a || (b == a && param[i + 1] < param[i])) at = i + 1;
    const double x = param[i] + (param[i + 1] - param[i]) * D[i] / (D[i] - D[i + 1]);
    mark(at, x, CollisionKind::SignChange);
  }
  // Repeated root touched between grid points without a sign change: |delta|
  // has a local minimum no larger than the local second difference.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (sign[i] == 0 || near_change[i] || hit[i]) continue;
    if (sign[i - 1] != sign[i] || sign[i + 1] != sign[i]) continue;
    const double a = std::abs(D[i - 1]), m = std::abs(D[i]), b = std::abs(D[i + 1]);
    const double curv = D[i + 1] - 2.0 * D[i] + D[i - 1];
    if (m <= a && m <= b && m <= std::abs(curv)) {
      const double h = 0.5 * (param[i + 1] - param[i - 1]);
      const double x = param[i] - h * (D[i + 1] - D[i - 1]) / (2.0 * curv);
      mark(i, x, CollisionKind::Touch);
    }
  }
  std::sort(tb.collisions.begin(), tb.collisions.end(),
            [](const Collision& x, const Collision& y) { return x.index < y.index; });

  tb.u.resize(n);
  tb.u[0] = sorted[0];
  for (std::size_t i = 1; i < n; ++i) {
    const auto [cost, perm] = best_matching(tb.u[i - 1], sorted[i]);
    tb.pairing_distance += cost;
    if (hit[i]) {
      tb.u[i] = sorted[i];
    } else {
      for (int b = 0; b < 3; ++b) tb.u[i][b] = sorted[i][perm[b]];
    }
  }
  return tb;
}

std::vector<double> delta_zero_along(std::string_view swept, double fixed_value, double lo, double hi) {
  std::vector<double> out;
  auto push = [&](double v) {
    if (v < lo || v > hi) return;
    for (double w : out) {
      if (std::abs(w - v) <= 1e-9) return;
    }
    out.push_back(v);
  };
  if (swept == "beta_hat") {
    if (const auto bd = delta_zero_boundary(fixed_value)) {
      push(bd->first);
      push(bd->second);
    }
  } else if (swept == "k_hat") {
    const double beta = fixed_value;
    const std::pair<double, double> pieces[] = {{lo, std::min(hi, -kSqrt3)}, {std::max(lo, kSqrt3), hi}};
    for (const auto& [a, b] : pieces) {
      if (!(a < b)) continue;
      for (int side = 0; side < 2; ++side) {
        auto g = [&](double k) {
          const auto bd = delta_zero_boundary(k);
          return (side == 0 ? bd->first : bd->second) - beta;
        };
        const int m = 4000;
        double x0 = a, g0 = g(a);
        if (std::abs(g0) <= 1e-12) push(x0);
        for (int i = 1; i <= m; ++i) {
          const double x1 = i == m ? b : a + (b - a) * i / m;
          const double g1 = g(x1);
          if (std::abs(g1) <= 1e-12) {
            push(x1);
          } else if (g0 * g1 < 0.0 && std::abs(g0) > 1e-12) {
            double l = x0, r = x1, gl = g0;
            for (int it = 0; it < 200 && r - l > 1e-15 * std::max(1.0, std::abs(l)); ++it) {
              const double mid = 0.5 * (l + r);
              const double gm = g(mid);
              if ((gm < 0.0) == (gl < 0.0)) {
                l = mid;
                gl = gm;
              } else {
                r = mid;
              }
            }
            push(0.5 * (l + r));
          }
          x0 = x1;
          g0 = g1;
        }
      }
    }
  } else {
    throw DomainError("delta_zero_along: swept parameter must be k_hat or beta_hat");
  }
  std::sort(out.begin(), out.end());
  return out;
}

Dataset sweep_1d(const SweepSpec& spec) {
  const SweepRange& r = spec.ranges.at(0);
  const bool along_k = r.name == "k_hat";
  const double fixed_v = *spec.get(along_k ? "beta_hat" : "k_hat");

  std::vector<ScaledParams> path(r.count);
  std::vector<double> param(r.count);
  for (int i = 0; i < r.count; ++i) {
    param[i] = r.at(i);
    path[i] = along_k ? ScaledParams{param[i], fixed_v} : ScaledParams{fixed_v, param[i]};
  }
  const TrackedBranches tb = track_branches(path, param);

  Dataset d;
  d.kind = "branch_table";
  d.columns = {"sweep_value", "branch_id", "re", "im", "admissible", "physical"};
  d.rows.reserve(3 * static_cast<std::size_t>(r.count));
  for (int i = 0; i < r.count; ++i) {
    for (int b = 0; b < 3; ++b) {
      const cplx u = tb.u[i][b];
      const cplx q = quantity_value(spec.quantity, u);
      d.rows.push_back({param[i], double(b), q.real(), q.imag(), flag(is_admissible(u)), flag(is_physical(u))});
    }
  }
  d.metadata = base_metadata(spec);
  d.metadata["quantity"] = spec.quantity == Quantity::Theta ? "theta" : "u";
  d.metadata["swept"] = r.name;
  ojson col = ojson::array();
  for (const auto& c : tb.collisions) {
    col.push_back({{"index", c.index}, {"value", c.value}, {"kind", to_string(c.kind)}});
  }
  d.metadata["collisions"] = col;
  d.metadata["delta_zero"] = delta_zero_along(r.name, fixed_v, r.min, r.max);
  d.metadata["pairing_distance"] = tb.pairing_distance;
  return d;
}

Dataset sweep_2d(const SweepSpec& spec) {
  const auto [kr, br] = plane_ranges(spec);
  Dataset d;
  d.kind = "surface";
  d.columns = {"k_hat", "beta_hat", "branch_id", "re", "im", "admissible", "physical"};
  d.rows.reserve(3 * static_cast<std::size_t>(kr->count) * br->count);
  for (int ik = 0; ik < kr->count; ++ik) {
    const double k = kr->at(ik);
    for (int ib = 0; ib < br->count; ++ib) {
      const double b = br->at(ib);
      const CubicRoots cr = solve({k, b});
      for (int s = 0; s < 3; ++s) {
        const cplx u = cr.roots[s];
        const cplx q = quantity_value(spec.quantity, u);
        d.rows.push_back({k, b, double(s), q.real(), q.imag(), flag(is_admissible(u)), flag(is_physical(u))});
      }
    }
  }
  d.metadata = base_metadata(spec);
  d.metadata["quantity"] = spec.quantity == Quantity::Theta ? "theta" : "u";
  d.metadata["sheets"] = "sorted by (re, im) at each grid point";
  return d;
}

Dataset region_map(const SweepSpec& spec) {
  const auto [kr, br] = plane_ranges(spec);
  Dataset d;
  d.kind = "region_map";
  d.columns = {"k_hat", "beta_hat", "delta_sign", "n_real", "n_physical", "prop8", "prop9", "prop10", "s_value"};
  d.rows.reserve(static_cast<std::size_t>(kr->count) * br->count);
  for (int ik = 0; ik < kr->count; ++ik) {
    const double k = kr->at(ik);
    for (int ib = 0; ib < br->count; ++ib) {
      const double b = br->at(ib);
      const RegionClass rc = classify_region({k, b});
      d.rows.push_back({k, b, double(rc.delta_sign), double(rc.n_real_roots), double(rc.n_physical),
                        flag(rc.prop8_applies), flag(rc.prop9_applies), flag(rc.prop10_boundary),
                        rc.s_value.value_or(kNaN)});
    }
  }
  d.metadata = base_metadata(spec);
  d.metadata["view"] = spec.view;
  return d;
}

Dataset boundary_curve(const SweepSpec& spec) {
  const SweepRange& r = *spec.range("k_hat");
  Dataset d;
  d.kind = "boundary_curve";
  d.columns = {"k_hat", "beta_lower", "beta_upper"};
  for (int i = 0; i < r.count; ++i) {
    const double k = r.at(i);
    const auto bd = delta_zero_boundary(k);
    d.rows.push_back({k, bd ? bd->first : kNaN, bd ? bd->second : kNaN});
  }
  d.metadata = base_metadata(spec);
  return d;
}

Dataset potential_scan(const SweepSpec& spec) {
  const double gamma = *spec.get("gamma");
  const double j = spec.get_or("j_x", 1.0);
  const SweepRange& r = *spec.range("x");
  if (r.min < 0.0) throw DomainError("potential_profile: x must be non-negative");
  ProfileOptions opt;
  opt.n_samples = static_cast<int>(spec.get_or("n_samples", 2048));
  if (gamma <= 2.0) opt.x_end = r.max;
  const PotentialProfile prof = build_profile(gamma, j, opt);

  Dataset d;
  d.kind = "potential_profile";
  d.columns = {"x", "D", "dD"};
  for (int i = 0; i < r.count; ++i) {
    const double x = r.at(i);
    d.rows.push_back({x, prof.D(x), prof.dD(x)});
  }
  const Residuals res = residuals(prof);
  d.metadata = base_metadata(spec);
  d.metadata["gamma_case"] = to_string(prof.gcase);
  d.metadata["b"] = finite_or_null(prof.b);
  d.metadata["half_period"] = prof.a_half_period ? ojson(*prof.a_half_period) : ojson(nullptr);
  ojson z = ojson::object();
  const auto put = [&](const char* name, const std::optional<double>& v) { z[name] = v ? ojson(*v) : ojson(nullptr); };
  put("s11", prof.s_zeros.s11);
  put("s12", prof.s_zeros.s12);
  put("s21", prof.s_zeros.s21);
  put("s22", prof.s_zeros.s22);
  d.metadata["w_zeros"] = z;
  d.metadata["first_integral_residual"] = res.first_integral_max;
  d.metadata["ode_residual"] = res.ode_max;
  return d;
}

Dataset uv_scan(const SweepSpec& spec) {
  const double gamma = *spec.get("gamma");
  const double j = spec.get_or("j_x", 1.0);
  if (!(j > 0.0)) throw DomainError("uv_profile: j_x must be positive");
  if (gamma < 0.0) throw DomainError("uv_profile: gamma must be non-negative");
  const double alpha = spec.get_or("alpha", 0.0);
  const double beta = spec.get_or("beta", std::sqrt(2.0 * j * gamma));
  const SweepRange& r = *spec.range("x");

  ProfileOptions opt;
  if (gamma <= 2.0) opt.x_end = r.max;
  auto pot = std::make_shared<const PotentialProfile>(build_profile(gamma, j, opt));
  const double delta = choose_delta(*pot);
  const UVProfile local = picard_solve_local(pot, alpha, beta, delta);
  UVProfile uv;
  std::optional<double> domain_end;
  ContinuationOptions copt;
  copt.n_out = r.count;
  try {
    uv = continue_solution(local, r.max, copt);
  } catch (const DomainEndError& e) {
    uv = e.partial;
    domain_end = e.reachable_x;
  }

  const double b2 = 2.0 * j * gamma;
  const bool identity = alpha == 0.0 && std::abs(beta * beta - b2) <= 1e-12 * std::max(1.0, b2);
  Dataset d;
  d.kind = "uv_profile";
  d.columns = {"x", "u", "v", "du", "dv", "identity"};
  for (const auto& s : uv.samples) {
    const double id = identity ? s.u * s.u - 1.0 - s.v * s.v - pot->D(s.x) : kNaN;
    d.rows.push_back({s.x, s.u, s.v, s.du, s.dv, id});
  }
  d.metadata = base_metadata(spec);
  d.metadata["alpha"] = alpha;
  d.metadata["beta"] = beta;
  d.metadata["delta"] = uv.delta_contraction;
  d.metadata["contraction_constant"] = uv.contraction_constant;
  d.metadata["picard_increments"] = uv.picard_increments;
  d.metadata["domain_end"] = domain_end ? ojson(*domain_end) : ojson(nullptr);
  d.metadata["identity_residual"] = identity ? ojson(identity_residual(uv)) : ojson(nullptr);
  d.metadata["energy_residual"] = energy_residual(uv);
  return d;
}

Dataset tangent_scan(const SweepSpec& spec) {
  const double theta_L = *spec.get("theta_L");
  const double j = spec.get_or("j_x", 1.0);
  const double fs = spec.get_or("f_sign", 1.0);
  if (fs != 1.0 && fs != -1.0) throw DomainError("tangent_scan: f_sign must be +1 or -1");
  const RBranch rb = spec.get_or("insulated", 0.0) != 0.0 ? RBranch::Insulated : RBranch::Positive;
  const TangentModel m = build_model(theta_L, j, *spec.get("k1"), *spec.get("k2"), static_cast<int>(fs), rb);
  const SweepRange& r = *spec.range("x");

  Dataset d;
  d.kind = "tangent_profile";
  d.columns = {"x", "theta", "theta_tan"};
  for (int i = 0; i < r.count; ++i) {
    const double x = r.at(i);
    double t = kNaN, tt = kNaN;
    try {
      t = theta_tangent(m, x);
      tt = theta_tangent_tan_form(m, x);
    } catch (const PoleError&) {
    }
    d.rows.push_back({x, t, tt});
  }
  const RequirementFlags rf = requirements(theta_L, m.K1, m.K2);
  d.metadata = base_metadata(spec);
  d.metadata["K1"] = m.K1;
  d.metadata["K2"] = m.K2;
  d.metadata["R_L"] = m.R_L;
  d.metadata["coefficients"] = {m.A, m.B, m.C, m.Dshift};
  d.metadata["omega"] = finite_or_null(omega(m));
  d.metadata["anode_residual"] = finite_or_null(anode_residual(m));
  d.metadata["requirements"] = {{"f_nonzero", rf.f_nonzero},
                                {"curvature_nonzero", rf.curvature_nonzero ? ojson(*rf.curvature_nonzero) : ojson(nullptr)},
                                {"real_frequency", rf.real_frequency},
                                {"satisfies_all", satisfies_all(m)}};
  const auto p = poles(m, std::max(r.min, 0.0), r.max);
  d.metadata["poles"] = p;
  return d;
}

Dataset run_sweep(const SweepSpec& in) {
  const SweepSpec s = with_defaults(in);
  validate(s);
  switch (s.mode) {
    case SweepMode::Branch1D: return sweep_1d(s);
    case SweepMode::Surface2D: return sweep_2d(s);
    case SweepMode::RegionMap: return region_map(s);
    case SweepMode::BoundaryCurve: return boundary_curve(s);
    case SweepMode::PotentialProfile: return potential_scan(s);
    case SweepMode::UVProfile: return uv_scan(s);
    case SweepMode::TangentScan: return tangent_scan(s);
  }
  throw DomainError("unknown sweep mode");
}

namespace {

std::vector<Polyline> boundary_lines(double k_lo, double k_hi) {
  std::vector<Polyline> out;
  const std::pair<double, double> pieces[] = {{k_lo, std::min(k_hi, -kSqrt3)}, {std::max(k_lo, kSqrt3), k_hi}};
  for (const auto& [a, b] : pieces) {
    if (!(a < b)) continue;
    Polyline lo{"boundary lower", {}, {}}, hi{"boundary upper", {}, {}};
    for (int i = 0; i <= 200; ++i) {
      const double k = a + (b - a) * i / 200.0;
      const auto bd = delta_zero_boundary(k);
      if (!bd) continue;
      lo.x.push_back(k);
      lo.y.push_back(bd->first);
      hi.x.push_back(k);
      hi.y.push_back(bd->second);
    }
    out.push_back(std::move(lo));
    out.push_back(std::move(hi));
  }
  return out;
}

// Grid shape of a k_hat-major plane dataset.
void plane_raster(const Dataset& d, Raster& r) {
  const ojson& rg = d.metadata.at("range");
  const auto kr = rg.at("k_hat"), br = rg.at("beta_hat");
  r.nx = kr[2].get<int>();
  r.ny = br[2].get<int>();
  const double hk = (kr[1].get<double>() - kr[0].get<double>()) / (r.nx - 1);
  const double hb = (br[1].get<double>() - br[0].get<double>()) / (r.ny - 1);
  r.x_min = kr[0].get<double>() - hk / 2;
  r.x_max = kr[1].get<double>() + hk / 2;
  r.y_min = br[0].get<double>() - hb / 2;
  r.y_max = br[1].get<double>() + hb / 2;
  r.cells.assign(static_cast<std::size_t>(r.nx) * r.ny, -1);
}

}  // namespace

Figure figure_for(const Dataset& d) {
  Figure f;
  f.title = d.metadata.contains("title") ? d.metadata["title"].get<std::string>() : d.kind;
  if (d.kind == "branch_table") {
    const bool theta = d.metadata.value("quantity", "u") == "theta";
    f.x_label = d.metadata.value("swept", "parameter");
    f.y_label = theta ? "Theta_d" : "u";
    for (int b = 0; b < 3; ++b) {
      Polyline re{"branch " + std::to_string(b) + " re", {}, {}};
      Polyline im{"branch " + std::to_string(b) + " im", {}, {}};
      for (const auto& row : d.rows) {
        if (row[1] != b) continue;
        re.x.push_back(row[0]);
        re.y.push_back(row[2]);
        im.x.push_back(row[0]);
        im.y.push_back(row[3]);
      }
      f.lines.push_back(std::move(re));
      f.lines.push_back(std::move(im));
    }
    return f;
  }
  if (d.kind == "surface" || d.kind == "region_map") {
    f.x_label = "k_hat";
    f.y_label = "beta_hat";
    Raster& r = f.raster;
    plane_raster(d, r);
    if (d.kind == "surface") {
      r.legend = {"1 real root", "3 real roots"};
      std::vector<int> n_real(r.cells.size(), 0);
      for (std::size_t i = 0; i < d.rows.size(); ++i) {
        const std::size_t cell = i / 3;
        const std::size_t ik = cell / r.ny, ib = cell % r.ny;
        if (d.rows[i][4] == 0.0) ++n_real[ib * r.nx + ik];
      }
      for (std::size_t c = 0; c < r.cells.size(); ++c) r.cells[c] = n_real[c] >= 2 ? 1 : 0;
    } else {
      const std::string view = d.metadata.value("view", "delta_sign");
      if (view == "delta_sign") {
        r.legend = {"delta < 0", "delta = 0", "delta > 0"};
      } else {
        r.legend = {"0 physical", "1 physical", "2 physical", "3 physical"};
      }
      for (std::size_t i = 0; i < d.rows.size(); ++i) {
        const auto& row = d.rows[i];
        const std::size_t ik = i / r.ny, ib = i % r.ny;
        const int sign = static_cast<int>(row[2]);
        const int nphys = static_cast<int>(row[4]);
        int v = nphys;
        if (view == "delta_sign") {
          v = sign + 1;
        } else if (view == "delta_negative") {
          v = sign < 0 ? nphys : -1;
        } else if (view == "delta_positive") {
          v = sign > 0 ? nphys : -1;
        }
        r.cells[ib * r.nx + ik] = v;
      }
    }
    for (auto& l : boundary_lines(r.x_min, r.x_max)) f.lines.push_back(std::move(l));
    return f;
  }
  // Generic table: first column against every other column.
  f.x_label = d.columns.empty() ? "" : d.columns[0];
  f.y_label = d.kind;
  for (std::size_t c = 1; c < d.columns.size(); ++c) {
    Polyline l{d.columns[c], {}, {}};
    for (const auto& row : d.rows) {
      l.x.push_back(row[0]);
      l.y.push_back(row[c]);
    }
    f.lines.push_back(std::move(l));
  }
  return f;
}

std::string emit(const Dataset& d, Format f) {
  switch (f) {
    case Format::Csv: return to_csv(d);
    case Format::Json: return to_json(d);
    case Format::Svg: return render_svg(figure_for(d));
  }
  return to_csv(d);
}

void emit_to_file(const Dataset& d, Format f, const std::string& path) { write_text(path, emit(d, f)); }

std::vector<std::string> figure_names() {
  std::vector<std::string> out;
  for (int i = 2; i <= 15; ++i) out.push_back((i < 10 ? "fig0" : "fig") + std::to_string(i));
  return out;
}

SweepSpec figure_spec(std::string_view name) {
  const double k_triple = -kSqrt3;
  const double b_triple = -kSqrt3 / 9.0;
  SweepSpec s;
  s.outputs = {Format::Csv, Format::Json, Format::Svg};
  auto line = [&](Quantity q, const char* fixed, double v, const char* swept, const std::string& title) {
    s.mode = SweepMode::Branch1D;
    s.quantity = q;
    s.fixed = {{fixed, v}};
    s.ranges = {{swept, -5.0, 5.0, kDefaultGrid1D}};
    s.title = title;
  };
  auto plane = [&](SweepMode m, Quantity q, const std::string& view, const std::string& title) {
    s.mode = m;
    s.quantity = q;
    s.view = view;
    s.ranges = {{"k_hat", -5.0, 5.0, kDefaultGrid2D}, {"beta_hat", -5.0, 5.0, kDefaultGrid2D}};
    s.title = title;
  };
  const Quantity U = Quantity::U, T = Quantity::Theta;
  if (name == "fig02") line(U, "k_hat", k_triple, "beta_hat", "u roots, k_hat = -sqrt(3)");
  else if (name == "fig03") line(U, "beta_hat", b_triple, "k_hat", "u roots, beta_hat = -sqrt(3)/9");
  else if (name == "fig04") line(U, "k_hat", 0.0, "beta_hat", "u roots, k_hat = 0");
  else if (name == "fig05") line(U, "beta_hat", 0.0, "k_hat", "u roots, beta_hat = 0");
  else if (name == "fig06") plane(SweepMode::Surface2D, U, "delta_sign", "u root surface");
  else if (name == "fig07") line(T, "k_hat", k_triple, "beta_hat", "Theta_d, k_hat = -sqrt(3)");
  else if (name == "fig08") line(T, "beta_hat", b_triple, "k_hat", "Theta_d, beta_hat = -sqrt(3)/9");
  else if (name == "fig09") line(T, "k_hat", 0.0, "beta_hat", "Theta_d, k_hat = 0");
  else if (name == "fig10") line(T, "beta_hat", 0.0, "k_hat", "Theta_d, beta_hat = 0");
  else if (name == "fig11") plane(SweepMode::Surface2D, T, "delta_sign", "Theta_d surface");
  else if (name == "fig12") plane(SweepMode::RegionMap, U, "delta_sign", "discriminant sign");
  else if (name == "fig13") plane(SweepMode::RegionMap, U, "delta_negative", "physical Theta_d, delta < 0");
  else if (name == "fig14") plane(SweepMode::RegionMap, U, "delta_positive", "physical Theta_d, delta > 0");
  else if (name == "fig15") plane(SweepMode::RegionMap, U, "n_physical", "physical Theta_d count");
  else throw DomainError("unknown figure '" + std::string(name) + "'");
  return s;
}

}  // namespace mid
