// midiode: command line front end for the diode model library.
//
//   midiode cubic --k-hat -1.7320508 --beta-hat -0.19245 --format json
//   midiode regions --grid 200 --view n_physical --out regions.csv
//   midiode sweep --figure fig02 --out fig02        (writes fig02.csv/.json/.svg)
//   midiode sweep --all-figures --out figures/
//   midiode sweep --config my_sweep.json --out run1
//
// Exit status: 0 success, 2 bad input or domain error, 3 numerical failure, 4 I/O.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mid/childlangmuir.hpp"
#include "mid/cubic.hpp"
#include "mid/dataset.hpp"
#include "mid/errors.hpp"
#include "mid/sweep.hpp"
#include "mid/thetad.hpp"

namespace {

struct Common {
  std::string out = "-";
  std::string format;
  std::vector<int> grid;
};

void add_common(CLI::App* cmd, Common& c, bool with_grid) {
  cmd->add_option("--out", c.out, "Output path, '-' for stdout");
  cmd->add_option("--format", c.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  if (with_grid) cmd->add_option("--grid", c.grid, "Grid size N or N,M")->delimiter(',')->expected(1, 2);
}

mid::Format format_of(const Common& c, mid::Format fallback = mid::Format::Csv) {
  return c.format.empty() ? fallback : mid::parse_format(c.format);
}

void write(const mid::Dataset& d, mid::Format f, const std::string& out) {
  const std::string text = mid::emit(d, f);
  if (out == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw mid::IoError("failed writing to stdout");
  } else {
    mid::write_text(out, text);
  }
}

void apply_grid(mid::SweepSpec& s, const std::vector<int>& grid) {
  if (grid.empty()) return;
  for (std::size_t i = 0; i < s.ranges.size(); ++i) {
    s.ranges[i].count = grid[std::min(i, grid.size() - 1)];
  }
}

mid::Dataset cubic_table(double k_hat, double beta_hat) {
  const mid::ScaledParams sp{k_hat, beta_hat};
  const mid::CubicRoots cr = mid::solve(sp);
  const mid::RegionClass rc = mid::classify_region(sp);
  mid::Dataset d;
  d.kind = "cubic_roots";
  d.columns = {"root_id", "re", "im", "theta_re", "theta_im", "admissible", "physical"};
  for (int i = 0; i < 3; ++i) {
    const mid::cplx u = cr.roots[i];
    const mid::cplx t = u * u;
    const bool adm = u.real() >= 0.0;
    const bool phys = adm && u.imag() == 0.0;
    d.rows.push_back({double(i), u.real(), u.imag(), t.real(), t.imag(), adm ? 1.0 : 0.0, phys ? 1.0 : 0.0});
  }
  auto& m = d.metadata;
  m["k_hat"] = k_hat;
  m["beta_hat"] = beta_hat;
  m["discriminant"] = cr.discriminant;
  m["case"] = mid::to_string(cr.case_tag);
  m["n_physical"] = rc.n_physical;
  m["prop8"] = rc.prop8_applies;
  m["prop9"] = rc.prop9_applies;
  m["prop10"] = rc.prop10_boundary;
  return d;
}

mid::Dataset cl_table(double j_x, double V, double gap) {
  const mid::CLResult r = mid::child_langmuir(j_x, V, gap);
  mid::Dataset d;
  d.kind = "child_langmuir";
  d.columns = {"j_x", "delta", "K_delta", "j_cl_dimensionless", "j_cl_physical"};
  d.rows.push_back({j_x, r.delta, r.K_delta, r.j_cl, mid::jcl_physical(V, gap)});
  d.metadata["voltage"] = V;
  d.metadata["gap"] = gap;
  d.metadata["perveance_constant"] = mid::perveance_constant();
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw mid::IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Writes every requested output of a sweep. Several outputs need a base path.
void write_sweep(const mid::Dataset& d, const std::vector<mid::Format>& outputs, const std::string& base) {
  if (base == "-") {
    if (outputs.size() != 1) throw mid::DomainError("several outputs need --out <base path>");
    write(d, outputs[0], "-");
    return;
  }
  for (auto f : outputs) write(d, f, base + "." + std::string(mid::extension(f)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnetically insulated diode model: roots, regions, profiles and figure datasets"};
  app.require_subcommand(1);

  Common common;

  double k_hat = 0.0, beta_hat = 0.0;
  auto* cubic = app.add_subcommand("cubic", "Roots of the turning-point cubic at one (k_hat, beta_hat)");
  cubic->add_option("--k-hat", k_hat)->required();
  cubic->add_option("--beta-hat", beta_hat)->required();
  add_common(cubic, common, false);

  std::vector<double> k_range{-5.0, 5.0}, b_range{-5.0, 5.0};
  std::string view = "delta_sign";
  auto* regions = app.add_subcommand("regions", "Region map over the (k_hat, beta_hat) plane");
  regions->add_option("--k-range", k_range)->delimiter(',')->expected(2);
  regions->add_option("--beta-range", b_range)->delimiter(',')->expected(2);
  regions->add_option("--view", view)->check(CLI::IsMember({"delta_sign", "n_physical", "delta_negative", "delta_positive"}));
  add_common(regions, common, true);

  auto* boundary = app.add_subcommand("boundary", "Zero-discriminant curves beta_hat(k_hat)");
  boundary->add_option("--k-range", k_range)->delimiter(',')->expected(2);
  add_common(boundary, common, true);

  double gamma = 0.0, j_x = 1.0, x_end = 0.0;
  auto* potential = app.add_subcommand("potential", "Effective potential D(x)");
  potential->add_option("--gamma", gamma)->required();
  potential->add_option("--j-x", j_x);
  potential->add_option("--x-end", x_end, "End of the x grid (default 5, or the half period for gamma > 2)");
  add_common(potential, common, true);

  double alpha = 0.0, beta = std::nan("");
  auto* uv = app.add_subcommand("uv", "Picard solution (u, v) with continuation");
  uv->add_option("--gamma", gamma)->required();
  uv->add_option("--j-x", j_x);
  uv->add_option("--x-end", x_end, "End of the x grid (default 5)");
  uv->add_option("--alpha", alpha);
  uv->add_option("--beta", beta, "Default sqrt(2 j_x gamma)");
  add_common(uv, common, true);

  double voltage = 0.0, gap = 0.0;
  auto* cl = app.add_subcommand("cl", "Child-Langmuir current and correction factor");
  cl->add_option("--j-x", j_x);
  cl->add_option("--voltage", voltage, "Anode voltage in V")->required();
  cl->add_option("--gap", gap, "Gap in m")->required();
  add_common(cl, common, false);

  double theta_L = 0.0, k1 = 0.0, k2 = 0.0;
  int f_sign = 1;
  bool insulated = false;
  auto* tangent = app.add_subcommand("tangent", "Tangent-function approximation theta(x) on [0, 1]");
  tangent->add_option("--theta-L", theta_L)->required();
  tangent->add_option("--j-x", j_x);
  tangent->add_option("--k1", k1)->required();
  tangent->add_option("--k2", k2)->required();
  tangent->add_option("--f-sign", f_sign)->check(CLI::IsMember({-1, 1}));
  tangent->add_flag("--insulated", insulated, "Use the insulated branch of R");
  add_common(tangent, common, true);

  std::string config, figure;
  bool all_figures = false;
  auto* sweep = app.add_subcommand("sweep", "Run a sweep from a JSON config or a figure preset");
  auto* g_cfg = sweep->add_option("--config", config, "JSON sweep configuration");
  auto* g_fig = sweep->add_option("--figure", figure, "Figure preset fig02 ... fig15");
  auto* g_all = sweep->add_flag("--all-figures", all_figures, "Every preset, written into the --out directory");
  g_cfg->excludes(g_fig)->excludes(g_all);
  g_fig->excludes(g_all);
  add_common(sweep, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cubic->parsed()) {
      write(cubic_table(k_hat, beta_hat), format_of(common), common.out);
    } else if (regions->parsed() || boundary->parsed()) {
      mid::SweepSpec s;
      s.outputs = {format_of(common)};
      if (regions->parsed()) {
        s.mode = mid::SweepMode::RegionMap;
        s.view = view;
        s.ranges = {{"k_hat", k_range[0], k_range[1], mid::kDefaultGrid2D},
                    {"beta_hat", b_range[0], b_range[1], mid::kDefaultGrid2D}};
      } else {
        s.mode = mid::SweepMode::BoundaryCurve;
        s.ranges = {{"k_hat", k_range[0], k_range[1], mid::kDefaultGrid1D}};
      }
      apply_grid(s, common.grid);
      write(mid::run_sweep(s), s.outputs[0], common.out);
    } else if (potential->parsed() || uv->parsed()) {
      mid::SweepSpec s;
      s.mode = potential->parsed() ? mid::SweepMode::PotentialProfile : mid::SweepMode::UVProfile;
      s.outputs = {format_of(common)};
      s.fixed = {{"gamma", gamma}, {"j_x", j_x}};
      if (uv->parsed()) {
        s.fixed.emplace_back("alpha", alpha);
        if (!std::isnan(beta)) s.fixed.emplace_back("beta", beta);
      }
      if (x_end > 0.0) s.ranges = {{"x", 0.0, x_end, mid::kDefaultGrid1D}};
      s = mid::with_defaults(s);
      apply_grid(s, common.grid);
      write(mid::run_sweep(s), s.outputs[0], common.out);
    } else if (cl->parsed()) {
      write(cl_table(j_x, voltage, gap), format_of(common), common.out);
    } else if (tangent->parsed()) {
      mid::SweepSpec s;
      s.mode = mid::SweepMode::TangentScan;
      s.outputs = {format_of(common)};
      s.fixed = {{"theta_L", theta_L}, {"j_x", j_x}, {"k1", k1},
                 {"k2", k2},           {"f_sign", double(f_sign)}, {"insulated", insulated ? 1.0 : 0.0}};
      s = mid::with_defaults(s);
      apply_grid(s, common.grid);
      write(mid::run_sweep(s), s.outputs[0], common.out);
    } else if (sweep->parsed()) {
      if (all_figures) {
        const std::string dir = common.out == "-" ? "figures" : common.out;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw mid::IoError("cannot create '" + dir + "': " + ec.message());
        for (const auto& name : mid::figure_names()) {
          mid::SweepSpec s = mid::figure_spec(name);
          if (!common.format.empty()) s.outputs = {format_of(common)};
          apply_grid(s, common.grid);
          write_sweep(mid::run_sweep(s), s.outputs, (std::filesystem::path(dir) / name).string());
        }
      } else {
        mid::SweepSpec s;
        if (!config.empty()) {
          s = mid::parse_spec_text(read_file(config));
        } else if (!figure.empty()) {
          s = mid::figure_spec(figure);
        } else {
          throw mid::DomainError("sweep needs --config, --figure or --all-figures");
        }
        if (!common.format.empty()) s.outputs = {format_of(common)};
        s = mid::with_defaults(s);
        apply_grid(s, common.grid);
        write_sweep(mid::run_sweep(s), s.outputs, common.out);
      }
    }
  } catch (const mid::Error& e) {
    std::cerr << "midiode: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "midiode: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
