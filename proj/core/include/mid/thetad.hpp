#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mid/cubic.hpp"
#include "mid/model.hpp"

namespace mid {

struct AdmissibleTheta {
  cplx theta;
  int source_root = 0;  // index into CubicRoots::roots
};

struct PhysicalTheta {
  double theta = 0.0;
  int source_root = 0;
};

// Theta_d = u^2 for roots with Re(u) >= 0; physical entries come from real
// roots u >= 0 and keep root multiplicity. Physical values are ascending.
struct ThetaBranches {
  std::vector<AdmissibleTheta> admissible;
  std::vector<PhysicalTheta> physical;
};

struct RegionClass {
  int delta_sign = 0;
  int n_real_roots = 0;
  int n_physical = 0;
  bool prop8_applies = false;
  bool prop9_applies = false;
  bool prop10_boundary = false;
  std::optional<double> s_value;  // only when delta < 0
};

ThetaBranches theta_branches(const CubicRoots& roots);

// beta_hat where the discriminant vanishes at this k_hat, (lower, upper).
// None for k_hat^2 < 3.
std::optional<std::pair<double, double>> delta_zero_boundary(double k_hat);

RegionClass classify_region(const ScaledParams& sp);

// Turning-point cubic with k_hat = -gamma, beta_hat = 0. Throws DomainError
// for gamma < 2 (no non-zero real branch); gamma = 2 gives the double root.
ThetaBranches ivp_consistency_roots(double gamma);

}  // namespace mid
