#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mid/cubic.hpp"
#include "mid/dataset.hpp"
#include "mid/svg.hpp"

namespace mid {

enum class SweepMode {
  Branch1D,
  Surface2D,
  RegionMap,
  BoundaryCurve,
  PotentialProfile,
  UVProfile,
  TangentScan,
};

std::string_view to_string(SweepMode m);
SweepMode parse_mode(std::string_view s);  // throws DomainError

enum class Quantity { U, Theta };

struct SweepRange {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  double at(int i) const;  // min + (max - min) i/(count - 1), endpoints exact
  double step() const { return (max - min) / (count - 1); }
};

inline constexpr int kDefaultGrid1D = 1001;
inline constexpr int kDefaultGrid2D = 400;

struct SweepSpec {
  SweepMode mode = SweepMode::Branch1D;
  std::vector<std::pair<std::string, double>> fixed;
  std::vector<SweepRange> ranges;
  std::vector<Format> outputs{Format::Csv};
  Quantity quantity = Quantity::U;
  // Region-map colouring: delta_sign, n_physical, delta_negative, delta_positive.
  std::string view = "delta_sign";
  std::string title;

  std::optional<double> get(std::string_view name) const;
  double get_or(std::string_view name, double fallback) const;
  const SweepRange* range(std::string_view name) const;
};

// Config keys: mode, fixed {name: value}, range {name: [min, max, count]},
// outputs [csv|json|svg], optional quantity (u|theta), view and title.
SweepSpec parse_spec(const nlohmann::ordered_json& j);
SweepSpec parse_spec_text(std::string_view text);

// count >= 2, min < max, swept names disjoint from fixed, mode-specific names.
void validate(const SweepSpec& spec);

// Fills in the default ranges a mode needs when none are given.
SweepSpec with_defaults(SweepSpec spec);

enum class CollisionKind { Zero, SignChange, Touch };
std::string_view to_string(CollisionKind k);

struct Collision {
  int index = 0;        // grid point where labels are re-seeded
  double value = 0.0;   // interpolated parameter value of the repeated root
  CollisionKind kind = CollisionKind::Zero;
};

// Roots along a path of parameter points, labels carried by minimum-cost
// matching and re-seeded by sort order at collisions.
struct TrackedBranches {
  std::vector<std::array<cplx, 3>> u;  // u[i][branch]
  std::vector<double> delta;
  std::vector<Collision> collisions;
  double pairing_distance = 0.0;  // sum over steps of the minimal matching cost
};

TrackedBranches track_branches(const std::vector<ScaledParams>& path, const std::vector<double>& param);

// Minimal total distance over the six pairings, and the permutation reaching it:
// b[perm[i]] is paired with a[i].
std::pair<double, std::array<int, 3>> best_matching(const std::array<cplx, 3>& a,
                                                    const std::array<cplx, 3>& b);

// Parameter values in [lo, hi] where the discriminant vanishes along the line
// with the other scaled parameter fixed. swept is "k_hat" or "beta_hat".
std::vector<double> delta_zero_along(std::string_view swept, double fixed_value, double lo, double hi);

Dataset sweep_1d(const SweepSpec& spec);
Dataset sweep_2d(const SweepSpec& spec);
Dataset region_map(const SweepSpec& spec);
Dataset boundary_curve(const SweepSpec& spec);
Dataset potential_scan(const SweepSpec& spec);
Dataset uv_scan(const SweepSpec& spec);
Dataset tangent_scan(const SweepSpec& spec);

// Validates, applies defaults and dispatches on the mode.
Dataset run_sweep(const SweepSpec& spec);

Figure figure_for(const Dataset& d);
std::string emit(const Dataset& d, Format f);
void emit_to_file(const Dataset& d, Format f, const std::string& path);

// Presets "fig02" ... "fig15".
std::vector<std::string> figure_names();
SweepSpec figure_spec(std::string_view name);

}  // namespace mid
