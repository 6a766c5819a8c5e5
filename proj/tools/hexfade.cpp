// Command-line front end: emits deployment point clouds, analytic density
// curves, acceptance-rate sweeps and Monte-Carlo validation reports as CSV
// or JSON, with the IEEE 802.20 urban-macrocell parameters built in as the
// default preset.
//
// Exit codes: 0 success, 2 invalid arguments or model, 3 validation failure
// under --strict.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hexfade/hexfade.hpp"

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to the given path, or stdout when the path is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct ModelOptions {
  double cell_radius = 600.0;
  double close_in = 35.0;
  double alpha = 34.5;
  double beta = 35.0;
  double sigma_psi = 10.0;
};

void add_geometry_options(CLI::App* cmd, ModelOptions& opts) {
  cmd->add_option("--cell-radius", opts.cell_radius,
                  "Cell circumradius L in meters")
      ->capture_default_str();
  cmd->add_option("--close-in", opts.close_in,
                  "Far-field close-in distance r0 in meters")
      ->capture_default_str();
}

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
  add_geometry_options(cmd, opts);
  cmd->add_option("--alpha", opts.alpha, "Path-loss intercept alpha in dB")
      ->capture_default_str();
  cmd->add_option("--beta", opts.beta, "Path-loss slope beta in dB/decade")
      ->capture_default_str();
  cmd->add_option("--sigma-psi", opts.sigma_psi,
                  "Shadowing standard deviation in dB")
      ->capture_default_str();
}

// The preset flag is declarative: defaults already carry the IEEE 802.20
// values, explicit flags override them either way.
void add_preset_option(CLI::App* cmd, std::string& preset) {
  cmd->add_option("--preset", preset,
                  "Named parameter preset (ieee80220: alpha 34.5, beta 35, "
                  "sigma 10, close-in 35)")
      ->check(CLI::IsMember({"ieee80220"}));
}

hexfade::ChannelModel make_model(const ModelOptions& o) {
  hexfade::ChannelModel m{hexfade::NetworkGeometry(o.cell_radius, o.close_in),
                          hexfade::PathLossParams(o.alpha, o.beta),
                          hexfade::ShadowingParams(o.sigma_psi)};
  if (m.pathloss.below_typical_exponent())
    std::cerr << "warning: beta <= 10 dB/decade implies a path-loss exponent"
                 " of at most 1\n";
  return m;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HEXFADE_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw std::runtime_error("HEXFADE_SEED is not an unsigned integer");
    return v;
  }
  return 1;
}

void write_curve(const std::string& path, const char* header,
                 const std::vector<double>& xs,
                 const std::vector<double>& ys) {
  Output out(path);
  out.stream() << header << "\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.stream() << fmt(xs[i]) << "," << fmt(ys[i]) << "\n";
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) /
                     static_cast<double>(n - 1);
  return xs;
}

// rep.json -> rep_L600.json
std::string with_suffix(const std::string& path, const std::string& tag) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
    return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

int cmd_deploy(const ModelOptions& opts, std::size_t n,
               const std::optional<std::uint64_t>& seed_flag,
               const std::string& shape, const std::string& output) {
  const hexfade::NetworkGeometry geom(opts.cell_radius, opts.close_in);
  hexfade::RngStream rng(resolve_seed(seed_flag));
  const auto batch = shape == "hexagon"
                         ? hexfade::sample_hexagon_points(geom, rng, n)
                         : hexfade::sample_sector_points(geom, rng, n);
  Output out(output);
  out.stream() << "x_m,y_m\n";
  for (const auto& p : batch.samples)
    out.stream() << fmt(p.x) << "," << fmt(p.y) << "\n";
  return 0;
}

int cmd_pdf_x(const ModelOptions& opts, std::size_t grid,
              const std::string& output) {
  const hexfade::NetworkGeometry geom(opts.cell_radius, opts.close_in);
  const auto xs = uniform_grid(0.5 * geom.close_in(), geom.cell_radius(), grid);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    ys[i] = geom.marginal_pdf_x(xs[i]);
  write_curve(output, "abscissa,density", xs, ys);
  return 0;
}

int cmd_pdf_r(const ModelOptions& opts, std::size_t grid,
              const std::string& output) {
  const hexfade::NetworkGeometry geom(opts.cell_radius, opts.close_in);
  const auto xs = uniform_grid(geom.close_in(), geom.cell_radius(), grid);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = geom.radial_pdf(xs[i]);
  write_curve(output, "abscissa,density", xs, ys);
  return 0;
}

int cmd_pdf_meanpl(const ModelOptions& opts, std::size_t grid,
                   const std::string& output) {
  const hexfade::ChannelModel model = make_model(opts);
  const auto bp = hexfade::breakpoints_db(model);
  const auto xs = uniform_grid(bp.w0, bp.wL, grid);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    ys[i] = hexfade::mean_pl_pdf(model, xs[i]);
  write_curve(output, "abscissa,density", xs, ys);
  return 0;
}

int cmd_pdf_lsf(const ModelOptions& opts, std::size_t grid,
                const std::string& output) {
  const hexfade::ChannelModel model = make_model(opts);
  const hexfade::LsfDensity density(model);
  const auto sb = density.support();
  const auto xs = uniform_grid(sb.lower_db, sb.upper_db, grid);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = density.pdf(xs[i]);
  write_curve(output, "abscissa,density", xs, ys);
  return 0;
}

int cmd_ar_curve(double mu_min, double mu_max, std::size_t grid,
                 std::size_t n,
                 const std::optional<std::uint64_t>& seed_flag,
                 const std::string& output) {
  if (!(mu_min > 2.0) || !(mu_max > mu_min))
    throw std::runtime_error("the RCR grid must lie in (2, inf)");
  const std::uint64_t seed = resolve_seed(seed_flag);
  Output out(output);
  out.stream() << "mu,ar_cartesian,ar_radial,ar_empirical_cartesian,"
                  "ar_empirical_radial\n";
  for (std::size_t i = 0; i < grid; ++i) {
    const double mu = mu_min + (mu_max - mu_min) * static_cast<double>(i) /
                                   static_cast<double>(grid - 1);
    const hexfade::NetworkGeometry geom(mu, 1.0);
    hexfade::RngStream rng = hexfade::RngStream::substream(seed, i);
    const auto cart = hexfade::sample_x(geom, rng, n);
    const auto rad = hexfade::sample_radius(geom, rng, n);
    out.stream() << fmt(mu) << ","
                 << fmt(hexfade::acceptance_rate_cartesian(mu)) << ","
                 << fmt(hexfade::acceptance_rate_radial(mu)) << ","
                 << fmt(cart.acceptance_ratio()) << ","
                 << fmt(rad.acceptance_ratio()) << "\n";
  }
  return 0;
}

int cmd_validate(const ModelOptions& opts, std::size_t n, std::size_t bins,
                 const std::optional<std::uint64_t>& seed_flag,
                 unsigned workers, bool strict, const std::string& sweep,
                 const std::string& scatter, const std::string& output) {
  const std::uint64_t seed = resolve_seed(seed_flag);

  std::vector<double> cell_radii;
  if (sweep.empty()) {
    cell_radii.push_back(opts.cell_radius);
  } else {
    std::string item;
    std::stringstream ss(sweep);
    while (std::getline(ss, item, ','))
      cell_radii.push_back(std::stod(item));
    if (cell_radii.empty()) throw std::runtime_error("empty --sweep-L list");
  }

  bool all_pass = true;
  for (double L : cell_radii) {
    ModelOptions local = opts;
    local.cell_radius = L;
    const hexfade::ChannelModel model = make_model(local);
    const hexfade::ValidationReport rep =
        hexfade::validate(model, seed, n, bins, workers);
    all_pass = all_pass && rep.ks_pass();

    const std::string tag =
        cell_radii.size() > 1 ? "_L" + std::to_string(std::lround(L)) : "";
    {
      Output out(output.empty() ? output : with_suffix(output, tag));
      out.stream() << hexfade::to_json(rep).dump(2) << "\n";
    }
    if (!scatter.empty()) {
      Output sc(cell_radii.size() > 1 ? with_suffix(scatter, tag) : scatter);
      sc.stream() << "r_m,lsf_db\n";
      for (const auto& s : rep.samples)
        sc.stream() << fmt(s.distance_m) << "," << fmt(s.lsf_db) << "\n";
    }
  }
  if (strict && !all_pass) {
    std::cerr << "validation failed: KS distance at or above the 1% critical"
                 " value\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hexagonal-cell large-scale fading model: spatial sampling, "
               "analytic densities and Monte-Carlo validation"};
  app.require_subcommand(1);

  std::string preset;  // parsed for interface symmetry; defaults match it

  // deploy
  ModelOptions deploy_opts;
  std::size_t deploy_n = 1000;
  std::optional<std::uint64_t> deploy_seed;
  std::string deploy_shape = "sector";
  std::string deploy_out;
  CLI::App* deploy = app.add_subcommand(
      "deploy", "Emit random node positions as CSV (x_m,y_m)");
  add_geometry_options(deploy, deploy_opts);
  add_preset_option(deploy, preset);
  deploy->add_option("-n,--samples", deploy_n, "Number of accepted points")
      ->capture_default_str();
  deploy->add_option("--seed", deploy_seed, "RNG seed");
  deploy->add_option("--shape", deploy_shape, "sector or hexagon")
      ->check(CLI::IsMember({"sector", "hexagon"}));
  deploy->add_option("-o,--output", deploy_out, "Output file (default stdout)");

  // pdf curves
  ModelOptions pdf_opts;
  std::size_t pdf_grid = 500;
  std::string pdf_out;
  CLI::App* pdf_x = app.add_subcommand(
      "pdf-x", "Marginal density of the node abscissa over [r0/2, L]");
  CLI::App* pdf_r = app.add_subcommand(
      "pdf-r", "Radial density of the node distance over [r0, L]");
  CLI::App* pdf_meanpl = app.add_subcommand(
      "pdf-meanpl", "Density of the mean path loss over [w0, wL]");
  CLI::App* pdf_lsf = app.add_subcommand(
      "pdf-lsf", "Closed-form large-scale fading density over its support");
  for (CLI::App* cmd : {pdf_x, pdf_r, pdf_meanpl, pdf_lsf}) {
    add_model_options(cmd, pdf_opts);
    add_preset_option(cmd, preset);
    cmd->add_option("--grid-points", pdf_grid, "Curve resolution")
        ->check(CLI::Range(std::size_t(2), std::size_t(1000000)))
        ->capture_default_str();
    cmd->add_option("-o,--output", pdf_out, "Output file (default stdout)");
  }

  // ar-curve
  double mu_min = 2.1, mu_max = 30.0;
  std::size_t ar_grid = 500, ar_n = 10000;
  std::optional<std::uint64_t> ar_seed;
  std::string ar_out;
  CLI::App* ar = app.add_subcommand(
      "ar-curve",
      "Analytic and empirical acceptance rates over an RCR grid");
  ar->add_option("--mu-min", mu_min, "Grid start (must exceed 2)")
      ->capture_default_str();
  ar->add_option("--mu-max", mu_max, "Grid end")->capture_default_str();
  ar->add_option("--grid-points", ar_grid, "Grid resolution")
      ->check(CLI::Range(std::size_t(2), std::size_t(100000)))
      ->capture_default_str();
  ar->add_option("-n,--samples", ar_n,
                 "Accepted samples per grid point and sampler")
      ->capture_default_str();
  ar->add_option("--seed", ar_seed, "RNG seed");
  ar->add_option("-o,--output", ar_out, "Output file (default stdout)");

  // validate
  ModelOptions val_opts;
  std::size_t val_n = 10000, val_bins = 100;
  std::optional<std::uint64_t> val_seed;
  unsigned val_workers = 1;
  bool val_strict = false;
  std::string val_sweep, val_scatter, val_out;
  CLI::App* val = app.add_subcommand(
      "validate",
      "Monte-Carlo validation of the fading density (JSON report)");
  add_model_options(val, val_opts);
  add_preset_option(val, preset);
  val->add_option("-n,--samples", val_n, "Number of fading samples")
      ->capture_default_str();
  val->add_option("--bins", val_bins, "Histogram bins")->capture_default_str();
  val->add_option("--seed", val_seed, "RNG seed");
  val->add_option("--workers", val_workers, "Sampling substreams")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  val->add_flag("--strict", val_strict,
                "Exit 3 when the KS distance reaches the 1% critical value");
  val->add_option("--sweep-L", val_sweep,
                  "Comma-separated cell radii; one report per value");
  val->add_option("--scatter", val_scatter,
                  "Also write a scatter CSV (r_m,lsf_db)");
  val->add_option("-o,--output", val_out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (deploy->parsed())
      return cmd_deploy(deploy_opts, deploy_n, deploy_seed, deploy_shape,
                        deploy_out);
    if (pdf_x->parsed()) return cmd_pdf_x(pdf_opts, pdf_grid, pdf_out);
    if (pdf_r->parsed()) return cmd_pdf_r(pdf_opts, pdf_grid, pdf_out);
    if (pdf_meanpl->parsed())
      return cmd_pdf_meanpl(pdf_opts, pdf_grid, pdf_out);
    if (pdf_lsf->parsed()) return cmd_pdf_lsf(pdf_opts, pdf_grid, pdf_out);
    if (ar->parsed())
      return cmd_ar_curve(mu_min, mu_max, ar_grid, ar_n, ar_seed, ar_out);
    if (val->parsed())
      return cmd_validate(val_opts, val_n, val_bins, val_seed, val_workers,
                          val_strict, val_sweep, val_scatter, val_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
