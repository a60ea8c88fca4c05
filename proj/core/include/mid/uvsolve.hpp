#pragma once

#include <memory>
#include <vector>

#include "mid/errors.hpp"
#include "mid/potential.hpp"

namespace mid {

struct UVSample {
  double x = 0.0;
  double u = 1.0;
  double v = 0.0;
  double du = 0.0;
  double dv = 0.0;
};

struct UVProfile {
  std::vector<UVSample> samples;
  double alpha = 0.0;
  double beta_a = 0.0;
  double delta_contraction = 0.0;
  double contraction_constant = 0.0;
  // Sup-norm change of (u, v) per Picard sweep.
  std::vector<double> picard_increments;
  std::shared_ptr<const PotentialProfile> source_potential;
};

// Continuation stopped where D vanishes; carries what was computed.
class DomainEndError : public DomainError {
 public:
  DomainEndError(const std::string& what, double x, UVProfile partial_profile)
      : DomainError(what), reachable_x(x), partial(std::move(partial_profile)) {}
  double reachable_x;
  UVProfile partial;
};

// int_0^delta D^{-1/2} ds, computed in the variable t = D^{1/4}.
double kernel_integral(const PotentialProfile& pot, double delta);

// L = j_x delta int_0^delta D^{-1/2} ds.
double contraction_constant(const PotentialProfile& pot, double delta);

// delta with L(delta) = target, found by bisection.
double choose_delta(const PotentialProfile& pot, double target_L = 0.25);

struct PicardOptions {
  int n_panels = 24;  // panels halve towards x = 0
  double tol = 1e-13;
  int max_iter = 0;  // 0: ceil(log(tol)/log(L)) + 20
};

UVProfile picard_solve_local(std::shared_ptr<const PotentialProfile> pot, double alpha, double beta,
                             double delta, const PicardOptions& opt = {});

// Integration runs in long double; tol is the local error target of the
// adaptive Dormand-Prince stepper.
struct ContinuationOptions {
  double tol = 1e-15;
  int n_out = 1001;
  double d_floor = 1e-8;  // continuation stops before D drops below this
};

UVProfile continue_solution(const UVProfile& local, double x_end, const ContinuationOptions& opt = {});

// max |u^2 - 1 - v^2 - D|. Requires alpha = 0 and beta^2 = 2 j_x gamma.
double identity_residual(const UVProfile& uv);

// max |u'^2 - v'^2 - 2 j_x sqrt(D) - alpha^2 + beta^2|.
double energy_residual(const UVProfile& uv);

struct Line {
  double x0 = 0.0;
  double value = 0.0;
  double slope = 0.0;
  double operator()(double x) const { return value + slope * (x - x0); }
};

struct VacuumExtension {
  double phi_L = 0.0;
  double a_L = 0.0;
  Line phi;
  Line a;
};

// Linear potentials on (x_star, 1]; phi = u - 1 and a = v at x_star.
VacuumExtension vacuum_extension(double x_star, double u, double du, double v, double dv);

}  // namespace mid
