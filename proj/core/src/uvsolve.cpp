#include "mid/uvsolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

namespace mid {

namespace {

constexpr int kNodes = 16;

// Gauss-Legendre rule on [0, 1] with its spectral integration matrix
// S[i][l] = int_0^{tau_i} ell_l(tau) d tau, built in the Legendre basis.
struct PanelRule {
  std::array<double, kNodes> tau{}, w{};
  std::array<std::array<double, kNodes>, kNodes> S{};
  PanelRule() {
    using G = boost::math::quadrature::gauss<double, kNodes>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    std::vector<std::pair<double, double>> nodes;
    for (std::size_t i = 0; i < a.size(); ++i) {
      nodes.push_back({0.5 * (1.0 - a[i]), 0.5 * wt[i]});
      if (a[i] != 0.0) nodes.push_back({0.5 * (1.0 + a[i]), 0.5 * wt[i]});
    }
    std::sort(nodes.begin(), nodes.end());
    for (int i = 0; i < kNodes; ++i) {
      tau[i] = nodes[i].first;
      w[i] = nodes[i].second;
    }
    // ell_l(tau) = w_l sum_n (2n+1) P_n(t_l) P_n(t), t = 2 tau - 1, and
    // int_0^tau P_n = (P_{n+1}(t) - P_{n-1}(t)) / (2(2n+1)) for n >= 1.
    for (int i = 0; i < kNodes; ++i) {
      const double ti = 2.0 * tau[i] - 1.0;
      for (int l = 0; l < kNodes; ++l) {
        const double tl = 2.0 * tau[l] - 1.0;
        double s = tau[i];
        for (int n = 1; n < kNodes; ++n) {
          const double pn = boost::math::legendre_p(n, tl);
          s += pn * (boost::math::legendre_p(n + 1, ti) - boost::math::legendre_p(n - 1, ti)) / 2.0;
        }
        S[i][l] = w[l] * s;
      }
    }
  }
};

const PanelRule& panel_rule() {
  static const PanelRule r;
  return r;
}

// Quadrature nodes of the local interval. Panels halve towards x = 0; the
// first panel uses s = h tau^3 so that D^{-1/2} ds is smooth in tau.
struct Nodes {
  int n_panels = 0;
  std::vector<double> edge;  // n_panels + 1
  std::vector<double> s;     // n_panels * kNodes
  std::vector<double> q;     // jacobian / sqrt(D) at each node
};

Nodes make_nodes(const PotentialProfile& pot, double delta, int n_panels) {
  const auto& r = panel_rule();
  Nodes nd;
  nd.n_panels = n_panels;
  nd.edge.resize(n_panels + 1);
  nd.edge[0] = 0.0;
  for (int k = 1; k <= n_panels; ++k) nd.edge[k] = std::ldexp(delta, k - n_panels);
  for (int k = 0; k < n_panels; ++k) {
    const double e0 = nd.edge[k];
    const double h = nd.edge[k + 1] - e0;
    for (int l = 0; l < kNodes; ++l) {
      const double t = r.tau[l];
      double s;
      double jac;
      if (k == 0) {
        s = h * t * t * t;
        jac = 3.0 * h * t * t;
      } else {
        s = e0 + h * t;
        jac = h;
      }
      nd.s.push_back(s);
      nd.q.push_back(jac / std::sqrt(pot.D(s)));
    }
  }
  return nd;
}

// K w = j int_0^x (x - s) w(s) D^{-1/2} ds at every node and panel edge,
// together with its derivative j int_0^x w D^{-1/2} ds.
struct KernelOut {
  std::vector<double> node_val, node_der, edge_val, edge_der;
};

void apply_kernel(const Nodes& nd, const std::vector<double>& w, double j, KernelOut& o) {
  const auto& r = panel_rule();
  const std::size_t nn = nd.s.size();
  o.node_val.assign(nn, 0.0);
  o.node_der.assign(nn, 0.0);
  o.edge_val.assign(nd.n_panels + 1, 0.0);
  o.edge_der.assign(nd.n_panels + 1, 0.0);
  double A = 0.0;
  double B = 0.0;
  std::array<double, kNodes> g{}, gs{};
  for (int k = 0; k < nd.n_panels; ++k) {
    const std::size_t base = static_cast<std::size_t>(k) * kNodes;
    for (int l = 0; l < kNodes; ++l) {
      g[l] = nd.q[base + l] * w[base + l];
      gs[l] = g[l] * nd.s[base + l];
    }
    for (int i = 0; i < kNodes; ++i) {
      double a = 0.0;
      double b = 0.0;
      for (int l = 0; l < kNodes; ++l) {
        a += r.S[i][l] * g[l];
        b += r.S[i][l] * gs[l];
      }
      const double x = nd.s[base + i];
      o.node_val[base + i] = j * (x * (A + a) - (B + b));
      o.node_der[base + i] = j * (A + a);
    }
    for (int l = 0; l < kNodes; ++l) {
      A += r.w[l] * g[l];
      B += r.w[l] * gs[l];
    }
    const double x = nd.edge[k + 1];
    o.edge_val[k + 1] = j * (x * A - B);
    o.edge_der[k + 1] = j * A;
  }
}

}  // namespace

double kernel_integral(const PotentialProfile& pot, double delta) {
  if (!(delta > 0.0)) return 0.0;
  if (pot.a_half_period && delta > *pot.a_half_period) {
    throw DomainError("kernel_integral: delta beyond the half period");
  }
  const double T = std::sqrt(std::sqrt(pot.D(delta)));
  const double g = pot.gamma;
  auto f = [g](double t) {
    const double t2 = t * t;
    return 1.0 / std::sqrt(1.0 - g * t2 + t2 * t2);
  };
  double I = 0.0;
  if (g == 2.0) {
    I = std::atanh(T);
  } else {
    I = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, T, 15, 1e-12);
  }
  return 4.0 / std::sqrt(8.0 * pot.j_x) * I;
}

double contraction_constant(const PotentialProfile& pot, double delta) {
  return pot.j_x * delta * kernel_integral(pot, delta);
}

double choose_delta(const PotentialProfile& pot, double target_L) {
  if (!(target_L > 0.0 && target_L <= 0.5)) throw DomainError("choose_delta: target must lie in (0, 1/2]");
  double hi = pot.a_half_period ? 0.5 * *pot.a_half_period : 1.0;
  if (contraction_constant(pot, hi) <= target_L) return hi;
  double lo = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (contraction_constant(pot, mid) < target_L ? lo : hi) = mid;
  }
  return lo;
}

UVProfile picard_solve_local(std::shared_ptr<const PotentialProfile> pot, double alpha, double beta,
                             double delta, const PicardOptions& opt) {
  if (!pot) throw DomainError("picard_solve_local: missing potential profile");
  if (!(delta > 0.0)) throw DomainError("picard_solve_local: delta must be positive");
  if (opt.n_panels < 1) throw DomainError("picard_solve_local: need at least one panel");
  const double L = contraction_constant(*pot, delta);
  if (L > 0.5) throw ContractionFailure("picard_solve_local: contraction constant above 1/2, reduce delta", L);

  const Nodes nd = make_nodes(*pot, delta, opt.n_panels);
  const std::size_t nn = nd.s.size();
  const double j = pot->j_x;

  UVProfile out;
  out.alpha = alpha;
  out.beta_a = beta;
  out.delta_contraction = delta;
  out.contraction_constant = L;
  out.source_potential = pot;

  // T1 starts from w = 1, T2 from w = 0.
  std::vector<double> u(nn, 1.0), v(nn, 0.0);
  KernelOut ku, kv;
  const double Leff = std::max(L, 1e-3);
  const int max_iter =
      opt.max_iter > 0 ? opt.max_iter : static_cast<int>(std::ceil(std::log(opt.tol) / std::log(Leff))) + 20;
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    apply_kernel(nd, u, j, ku);
    apply_kernel(nd, v, j, kv);
    double diff = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
      const double un = 1.0 + alpha * nd.s[i] + ku.node_val[i];
      const double vn = beta * nd.s[i] + kv.node_val[i];
      diff = std::max({diff, std::abs(un - u[i]), std::abs(vn - v[i])});
      u[i] = un;
      v[i] = vn;
    }
    out.picard_increments.push_back(diff);
    if (diff < opt.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw IterationError("picard_solve_local: no convergence within the iteration limit");

  apply_kernel(nd, u, j, ku);
  apply_kernel(nd, v, j, kv);
  out.samples.push_back({0.0, 1.0, 0.0, alpha, beta});
  for (std::size_t i = 0; i < nn; ++i) {
    out.samples.push_back({nd.s[i], 1.0 + alpha * nd.s[i] + ku.node_val[i], beta * nd.s[i] + kv.node_val[i],
                           alpha + ku.node_der[i], beta + kv.node_der[i]});
  }
  for (int k = 1; k <= nd.n_panels; ++k) {
    const double x = nd.edge[k];
    out.samples.push_back({x, 1.0 + alpha * x + ku.edge_val[k], beta * x + kv.edge_val[k],
                           alpha + ku.edge_der[k], beta + kv.edge_der[k]});
  }
  std::sort(out.samples.begin(), out.samples.end(),
            [](const UVSample& a, const UVSample& b) { return a.x < b.x; });
  return out;
}

UVProfile continue_solution(const UVProfile& local, double x_end, const ContinuationOptions& opt) {
  if (local.samples.empty() || !local.source_potential) {
    throw DomainError("continue_solution: local profile is empty");
  }
  UVProfile out = local;
  const UVSample start = local.samples.back();
  if (!(x_end > start.x)) return out;
  const PotentialProfile& pot = *local.source_potential;
  const double j = pot.j_x;

  // First zero of D after the start, pulled back to where D reaches the floor.
  double x_stop = x_end;
  bool truncated = false;
  if (pot.a_half_period) {
    const double a = *pot.a_half_period;
    const double zero = 2.0 * a * (std::floor(start.x / (2.0 * a)) + 1.0);
    const double back = integral_I(opt.d_floor, pot.gamma) / std::sqrt(8.0 * j);
    if (x_end > zero - back) {
      x_stop = zero - back;
      truncated = true;
    }
  }

  // Extended precision: the growing solution of u'' = j u / sqrt(D) amplifies
  // step errors in u^2 - v^2 roughly like exp(2 sqrt(j) x) once D is O(1).
  using Real = long double;
  using State = std::array<Real, 4>;
  auto rhs = [&pot, j](const State& y, State& dy, Real x) {
    const Real k = j / std::sqrt(static_cast<Real>(pot.D(static_cast<double>(x))));
    dy = {y[1], k * y[0], y[3], k * y[2]};
  };
  std::vector<Real> times{start.x};
  const int n = std::max(opt.n_out, 2);
  for (int i = 1; i <= n; ++i) times.push_back(start.x + (Real(x_stop) - start.x) * Real(i) / n);
  times.back() = x_stop;

  State y{start.u, start.du, start.v, start.dv};
  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled(Real(opt.tol), Real(opt.tol), ode::runge_kutta_dopri5<State, Real>());
  bool first = true;
  ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), (Real(x_stop) - start.x) / n,
                       [&](const State& s, Real x) {
                         if (first) {
                           first = false;
                           return;
                         }
                         out.samples.push_back({static_cast<double>(x), static_cast<double>(s[0]),
                                                static_cast<double>(s[2]), static_cast<double>(s[1]),
                                                static_cast<double>(s[3])});
                       });
  if (truncated) {
    throw DomainEndError("continue_solution: D vanishes, continuation stops", x_stop, std::move(out));
  }
  return out;
}

double identity_residual(const UVProfile& uv) {
  if (!uv.source_potential) throw DomainError("identity_residual: missing potential profile");
  const auto& pot = *uv.source_potential;
  const double b2 = 2.0 * pot.j_x * pot.gamma;
  if (uv.alpha != 0.0 || std::abs(uv.beta_a * uv.beta_a - b2) > 1e-12 * std::max(1.0, b2)) {
    throw DomainError("identity_residual: needs alpha = 0 and beta^2 = 2 j_x gamma");
  }
  double r = 0.0;
  for (const auto& s : uv.samples) {
    const double D = s.x == 0.0 ? 0.0 : pot.D(s.x);
    r = std::max(r, std::abs(s.u * s.u - 1.0 - s.v * s.v - D));
  }
  return r;
}

double energy_residual(const UVProfile& uv) {
  if (!uv.source_potential) throw DomainError("energy_residual: missing potential profile");
  const auto& pot = *uv.source_potential;
  const double c = uv.alpha * uv.alpha - uv.beta_a * uv.beta_a;
  double r = 0.0;
  for (const auto& s : uv.samples) {
    const double D = s.x == 0.0 ? 0.0 : pot.D(s.x);
    r = std::max(r, std::abs(s.du * s.du - s.dv * s.dv - 2.0 * pot.j_x * std::sqrt(D) - c));
  }
  return r;
}

VacuumExtension vacuum_extension(double x_star, double u, double du, double v, double dv) {
  if (!(x_star > 0.0 && x_star <= 1.0)) throw DomainError("vacuum_extension: x_star must lie in (0, 1]");
  VacuumExtension e;
  e.phi = {x_star, u - 1.0, du};
  e.a = {x_star, v, dv};
  e.phi_L = e.phi(1.0);
  e.a_L = e.a(1.0);
  return e;
}

}  // namespace mid
