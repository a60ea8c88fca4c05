#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "mid/model.hpp"

namespace mid {

using cplx = std::complex<double>;

enum class CubicCase { OneRealTwoComplex, TripleRoot, DoubleRoot, ThreeReal };

std::string_view to_string(CubicCase c);

// Roots of u^3 + k_hat u^2 + u + beta_hat = 0, sorted by (re, im).
// Real roots carry an imaginary part of exactly zero and the complex pair is
// stored as exact conjugates.
struct CubicRoots {
  std::array<cplx, 3> roots{};
  double discriminant = 0.0;
  CubicCase case_tag = CubicCase::OneRealTwoComplex;
};

struct Depressed {
  double p = 0.0;
  double q = 0.0;
};

double discriminant(const ScaledParams& sp);
Depressed depress(const ScaledParams& sp);

// |delta| below 1e-12 max(1, k^6, beta^2) counts as a repeated root.
double zero_band(const ScaledParams& sp);
int delta_sign(const ScaledParams& sp);

cplx cubic_value(const ScaledParams& sp, cplx u);

// Closed-form solution (Cardano / repeated roots / Viete) with Newton polish.
// Throws DegenerateDenominator if the repeated-root formulas are singular.
CubicRoots solve(const ScaledParams& sp);

// Bisection for a real root, quadratic deflation and Newton refinement.
// Shares nothing with solve() beyond the discriminant used for the tag.
CubicRoots oracle_roots(const ScaledParams& sp);

// Smallest max-distance over the six pairings of two root triples.
double multiset_distance(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b);

// c_plus + c_minus of the Cardano radicals, i.e. (18/cbrt 4)(u_real + k_hat/3).
// Only meaningful when the discriminant is negative.
double cardano_sum(const ScaledParams& sp, double u_real);

}  // namespace mid
