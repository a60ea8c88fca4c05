#include "mid/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mid/errors.hpp"

namespace mid {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
const double kCbrt4 = std::cbrt(4.0);

// Newton moves beyond this are treated as a failed polish.
constexpr double kMaxPolishMove = 1e-4;
constexpr int kPolishIters = 5;

double eval_real(const ScaledParams& sp, double u, double& dp) {
  dp = (3.0 * u + 2.0 * sp.k_hat) * u + 1.0;
  return ((u + sp.k_hat) * u + 1.0) * u + sp.beta_hat;
}

cplx eval_cplx(const ScaledParams& sp, cplx u, cplx& dp) {
  dp = (3.0 * u + 2.0 * sp.k_hat) * u + 1.0;
  return ((u + sp.k_hat) * u + 1.0) * u + sp.beta_hat;
}

double polish_real(const ScaledParams& sp, double u0) {
  double u = u0;
  double dp = 0.0;
  double r = std::abs(eval_real(sp, u, dp));
  for (int it = 0; it < kPolishIters && r > 0.0; ++it) {
    if (dp == 0.0) break;
    double dpn = 0.0;
    const double un = u - eval_real(sp, u, dp) / dp;
    const double rn = std::abs(eval_real(sp, un, dpn));
    if (!(rn < r)) break;
    u = un;
    r = rn;
    dp = dpn;
  }
  return std::abs(u - u0) <= kMaxPolishMove ? u : u0;
}

cplx polish_cplx(const ScaledParams& sp, cplx z0) {
  cplx z = z0;
  cplx dp;
  double r = std::abs(eval_cplx(sp, z, dp));
  for (int it = 0; it < kPolishIters && r > 0.0; ++it) {
    if (dp == 0.0) break;
    cplx dpn;
    const cplx zn = z - eval_cplx(sp, z, dp) / dp;
    const double rn = std::abs(eval_cplx(sp, zn, dpn));
    if (!(rn < r)) break;
    z = zn;
    r = rn;
    dp = dpn;
  }
  return std::abs(z - z0) <= kMaxPolishMove ? z : z0;
}

void sort_roots(std::array<cplx, 3>& r) {
  std::sort(r.begin(), r.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// beta_hat == 0 factors off u = 0 exactly.
void snap_zero_root(const ScaledParams& sp, std::array<cplx, 3>& r) {
  if (sp.beta_hat != 0.0) return;
  auto it = std::min_element(r.begin(), r.end(),
                             [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
  *it = 0.0;
}

CubicCase tag_from_delta(const ScaledParams& sp, double delta, bool triple) {
  if (std::abs(delta) < zero_band(sp)) return triple ? CubicCase::TripleRoot : CubicCase::DoubleRoot;
  return delta < 0.0 ? CubicCase::OneRealTwoComplex : CubicCase::ThreeReal;
}

bool near_triple_point(const ScaledParams& sp, double& sign) {
  constexpr double tol = 1e-6;
  for (double s : {1.0, -1.0}) {
    if (std::abs(sp.k_hat - s * kSqrt3) <= tol && std::abs(sp.beta_hat - s * kSqrt3 / 9.0) <= tol) {
      sign = s;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(CubicCase c) {
  switch (c) {
    case CubicCase::OneRealTwoComplex: return "one_real_two_complex";
    case CubicCase::TripleRoot: return "triple_root";
    case CubicCase::DoubleRoot: return "double_root";
    case CubicCase::ThreeReal: return "three_real";
  }
  return "unknown";
}

double discriminant(const ScaledParams& sp) {
  const double k = sp.k_hat;
  const double b = sp.beta_hat;
  return 18.0 * k * b + k * k - 4.0 - 4.0 * k * k * k * b - 27.0 * b * b;
}

Depressed depress(const ScaledParams& sp) {
  const double k = sp.k_hat;
  return {(3.0 - k * k) / 3.0, (2.0 * k * k * k - 9.0 * k + 27.0 * sp.beta_hat) / 27.0};
}

double zero_band(const ScaledParams& sp) {
  const double k3 = sp.k_hat * sp.k_hat * sp.k_hat;
  return 1e-12 * std::max({1.0, k3 * k3, sp.beta_hat * sp.beta_hat});
}

int delta_sign(const ScaledParams& sp) {
  const double d = discriminant(sp);
  if (std::abs(d) < zero_band(sp)) return 0;
  return d < 0.0 ? -1 : 1;
}

cplx cubic_value(const ScaledParams& sp, cplx u) {
  return ((u + sp.k_hat) * u + 1.0) * u + sp.beta_hat;
}

double cardano_sum(const ScaledParams& sp, double u_real) {
  return 18.0 / kCbrt4 * (u_real + sp.k_hat / 3.0);
}

CubicRoots solve(const ScaledParams& sp) {
  const double k = sp.k_hat;
  const double b = sp.beta_hat;
  CubicRoots out;
  out.discriminant = discriminant(sp);
  const double delta = out.discriminant;
  auto& r = out.roots;

  if (std::abs(delta) < zero_band(sp)) {
    double s = 0.0;
    if (near_triple_point(sp, s)) {
      // Exact closed form; polishing a triple root only chases rounding noise.
      const double u = -s * kSqrt3 / 3.0;
      r = {u, u, u};
      out.case_tag = CubicCase::TripleRoot;
      return out;
    }
    const double den = 3.0 - k * k;
    if (std::abs(den) <= 1e-12 * std::max(1.0, k * k)) {
      throw DegenerateDenominator("solve: repeated root with k_hat^2 = 3 off the triple point");
    }
    const double u1 = (k * k * k - 4.0 * k + 9.0 * b) / den;
    const double u2 = (-k + 9.0 * b) / (2.0 * k * k - 6.0);
    r = {polish_real(sp, u1), u2, u2};
    out.case_tag = CubicCase::DoubleRoot;
  } else if (delta < 0.0) {
    const double A1 = -(54.0 * k * k * k - 243.0 * k + 729.0 * b);
    const double t = 3.0 - k * k;
    // A1^2 + 2916 (3 - k^2)^3 equals -19683 delta; the latter avoids cancellation.
    const double A2 = std::sqrt(-19683.0 * delta);
    const double big = std::cbrt(A1 >= 0.0 ? A1 + A2 : A1 - A2);
    const double small = big != 0.0 ? -9.0 * kCbrt4 * t / big : 0.0;
    const double cp = A1 >= 0.0 ? big : small;
    const double cm = A1 >= 0.0 ? small : big;
    const double u1 = -k / 3.0 + kCbrt4 / 18.0 * (cp + cm);
    const double re = -k / 3.0 - kCbrt4 / 36.0 * (cp + cm);
    const double im = kSqrt3 * kCbrt4 / 36.0 * std::abs(cp - cm);
    const double ur = polish_real(sp, u1);
    const cplx z = polish_cplx(sp, cplx(re, im));
    r = {ur, cplx(z.real(), std::abs(z.imag())), cplx(z.real(), -std::abs(z.imag()))};
    out.case_tag = CubicCase::OneRealTwoComplex;
  } else {
    const double k2m3 = k * k - 3.0;
    if (!(k2m3 > 0.0)) throw NumericalError("solve: positive discriminant with k_hat^2 <= 3");
    const double A3 = 2.0 / 3.0 * std::sqrt(k2m3);
    double A4 = (2.0 * k * k * k - 9.0 * k + 27.0 * b) / (18.0 - 6.0 * k * k) * std::sqrt(9.0 / k2m3);
    A4 = std::clamp(A4, -1.0, 1.0);
    const double phi = std::acos(A4) / 3.0;
    for (int i = 0; i < 3; ++i) {
      const double u = A3 * std::cos(phi + 2.0 * std::numbers::pi * i / 3.0) - k / 3.0;
      r[i] = polish_real(sp, u);
    }
    out.case_tag = CubicCase::ThreeReal;
  }
  snap_zero_root(sp, r);
  sort_roots(r);
  return out;
}

CubicRoots oracle_roots(const ScaledParams& sp) {
  const double k = sp.k_hat;
  const double b = sp.beta_hat;
  auto p = [&](double u) { return ((u + k) * u + 1.0) * u + b; };

  // Cauchy bound brackets every real root.
  const double R = 1.0 + std::max({std::abs(k), 1.0, std::abs(b)});
  double lo = -R;
  double hi = R;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double pm = p(mid);
    if (pm == 0.0) {
      lo = hi = mid;
      break;
    }
    (pm < 0.0 ? lo : hi) = mid;
  }
  const double r = std::abs(p(lo)) <= std::abs(p(hi)) ? lo : hi;

  // Synthetic division by (u - r).
  const double c1 = k + r;
  const double c0 = 1.0 + r * c1;
  const double disc = c1 * c1 - 4.0 * c0;
  std::array<cplx, 3> z;
  z[0] = r;
  if (disc >= 0.0) {
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    z[1] = q;
    z[2] = q != 0.0 ? c0 / q : 0.0;
  } else {
    const double s = 0.5 * std::sqrt(-disc);
    z[1] = cplx(-0.5 * c1, s);
    z[2] = cplx(-0.5 * c1, -s);
  }

  // Newton refinement against the undeflated cubic.
  auto refine = [&](cplx w) {
    for (int it = 0; it < 8; ++it) {
      const cplx f = ((w + k) * w + 1.0) * w + b;
      const cplx d = (3.0 * w + 2.0 * k) * w + 1.0;
      if (d == 0.0) break;
      const cplx wn = w - f / d;
      const cplx fn = ((wn + k) * wn + 1.0) * wn + b;
      if (!(std::abs(fn) < std::abs(f))) break;
      w = wn;
    }
    return w;
  };
  if (disc >= 0.0) {
    z[1] = refine(z[1]).real();
    z[2] = refine(z[2]).real();
  } else {
    const cplx w = refine(z[1]);
    z[1] = cplx(w.real(), std::abs(w.imag()));
    z[2] = std::conj(z[1]);
  }

  CubicRoots out;
  out.discriminant = discriminant(sp);
  double s = 0.0;
  out.case_tag = tag_from_delta(sp, out.discriminant, near_triple_point(sp, s));
  out.roots = z;
  sort_roots(out.roots);
  return out;
}

double multiset_distance(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
  std::array<int, 3> perm{0, 1, 2};
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace mid
