#pragma once

// Large-scale fading: mean path loss of a uniformly random node plus
// zero-mean Gaussian dB shadowing. The density of the sum has an exact
// closed form built from Q-function differences and one smooth
// one-dimensional integral; a direct numerical convolution of the mean
// path-loss density with the Gaussian is kept alongside as an independent
// cross-check.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hexfade/channel.hpp"
#include "hexfade/quadrature.hpp"

namespace hexfade {

/// Upper-tail standard normal probability Q(z) = erfc(z / sqrt 2) / 2.
inline double q_function(double z) {
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

/// Q(a) - Q(b) for a <= b, evaluated without the catastrophic cancellation
/// the naive difference suffers when both arguments sit in the same tail.
inline double q_difference(double a, double b) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  if (a > 0.0 && b > 0.0)
    return 0.5 * (std::erfc(a * inv_sqrt2) - std::erfc(b * inv_sqrt2));
  if (a < 0.0 && b < 0.0)
    return 0.5 * (std::erfc(-b * inv_sqrt2) - std::erfc(-a * inv_sqrt2));
  return 0.5 * (std::erf(b * inv_sqrt2) - std::erf(a * inv_sqrt2));
}

/// Standardized images of the three dB breakpoints at fading level l:
/// z = (w - l - 2 ln10 sigma^2 / beta) / sigma for w in {w0, wI, wL}.
struct ZBreakpoints {
  double z0;
  double zI;
  double zL;
};

inline ZBreakpoints z_breakpoints(const ChannelModel& m, double l) {
  const double sigma = m.shadowing.sigma_psi_db;
  if (sigma <= 0.0)
    throw std::domain_error(
        "z breakpoints are undefined for zero shadowing; use the "
        "mean path-loss density directly");
  const Breakpoints bp = breakpoints_db(m);
  const double shift =
      l + 2.0 * std::numbers::ln10 * sigma * sigma / m.pathloss.beta_db;
  return {(bp.w0 - shift) / sigma, (bp.wI - shift) / sigma,
          (bp.wL - shift) / sigma};
}

/// Practical support of the fading law: mean path loss at the close-in and
/// cell-edge distances widened by three shadowing deviations. A reporting
/// window, not a truncation; the exact support is unbounded.
struct SupportBounds {
  double lower_db;
  double upper_db;
};

inline SupportBounds support_bounds(const ChannelModel& m) {
  const double sigma = m.shadowing.sigma_psi_db;
  return {mean_path_loss_db(m.pathloss, m.geometry.close_in()) - 3.0 * sigma,
          mean_path_loss_db(m.pathloss, m.geometry.cell_radius()) +
              3.0 * sigma};
}

/// Exact closed-form density of the large-scale fading level in dB.
///
/// pdf(l) = 4 ln10 10^{2(l-alpha)/beta} / (beta (3 sqrt3 L^2 - 2 pi r0^2))
///          * exp((sqrt2 ln10 sigma / beta)^2)
///          * { pi [Q(z0) - 3 Q(zI) + 2 Q(zL)]
///              + 3 sqrt(2/pi) * Int_{zI}^{zL} e^{-z^2/2}
///                asin( sqrt3 L 10^{-sigma z/beta}
///                      / (2 * 10^{(beta(l-alpha)+2 ln10 sigma^2)/beta^2}) ) dz }
///
/// The one-dimensional integral is evaluated adaptively to the configured
/// relative tolerance. Zero shadowing short-circuits to the mean path-loss
/// density, of which this law is the Gaussian smoothing.
class LsfDensity {
 public:
  explicit LsfDensity(ChannelModel model, double rel_tol = 1e-9)
      : model_(std::move(model)), rel_tol_(rel_tol), w_(breakpoints_db(model_)) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-3)
      throw std::domain_error("quadrature tolerance must be in (0, 1e-3]");
    const double beta = model_.pathloss.beta_db;
    const double sigma = model_.shadowing.sigma_psi_db;
    const double t = std::numbers::sqrt2 * std::numbers::ln10 * sigma / beta;
    k0_ = std::exp(t * t);
    prefactor_ = 4.0 * std::numbers::ln10 *
                 std::pow(10.0, -2.0 * model_.pathloss.alpha_db / beta) /
                 (beta * model_.geometry.density_norm());
  }

  const ChannelModel& model() const { return model_; }
  double tolerance() const { return rel_tol_; }
  double k0() const { return k0_; }

  SupportBounds support() const { return support_bounds(model_); }

  double pdf(double l) const {
    const double beta = model_.pathloss.beta_db;
    const double sigma = model_.shadowing.sigma_psi_db;
    if (sigma == 0.0) return mean_pl_pdf(model_, l);

    const ZBreakpoints z = z_breakpoints(model_, l);
    const double bracket =
        q_difference(z.z0, z.zI) - 2.0 * q_difference(z.zI, z.zL);

    // asin argument: base * 10^{-sigma z / beta}, equal to 1 at z = zI and
    // sqrt3/2 at z = zL up to roundoff.
    const double alpha = model_.pathloss.alpha_db;
    const double base =
        0.5 * std::numbers::sqrt3 * model_.geometry.cell_radius() /
        std::pow(10.0, (beta * (l - alpha) +
                        2.0 * std::numbers::ln10 * sigma * sigma) /
                           (beta * beta));
    const double decay = sigma * std::numbers::ln10 / beta;
    const double integral = integrate(
        [&](double zz) {
          const double arg =
              std::clamp(base * std::exp(-decay * zz), 0.0, 1.0);
          return std::exp(-0.5 * zz * zz) * std::asin(arg);
        },
        z.zI, z.zL, rel_tol_);

    const double braces =
        std::numbers::pi * bracket +
        3.0 * std::sqrt(2.0 / std::numbers::pi) * integral;
    const double value =
        prefactor_ * std::pow(10.0, 2.0 * l / beta) * k0_ * braces;
    return std::max(0.0, value);
  }

  /// Lower-tail probability, integrated numerically from six shadowing
  /// deviations below the practical support.
  double cdf(double l) const {
    const double sigma = model_.shadowing.sigma_psi_db;
    const double lo = support().lower_db - 6.0 * sigma;
    if (l <= lo) return 0.0;
    // Split at the breakpoint images so each panel is smooth.
    std::vector<double> knots{lo};
    for (double k : {w_.w0, w_.wI, w_.wL, support().lower_db,
                     support().upper_db})
      if (k > lo && k < l) knots.push_back(k);
    knots.push_back(l);
    std::sort(knots.begin(), knots.end());
    double total = 0.0;
    for (std::size_t i = 1; i < knots.size(); ++i)
      total += integrate([&](double x) { return pdf(x); }, knots[i - 1],
                         knots[i], std::min(rel_tol_, 1e-9), 1e-14);
    return total;
  }

 private:
  ChannelModel model_;
  double rel_tol_;
  Breakpoints w_;
  double k0_;         // exp((sqrt2 ln10 sigma / beta)^2)
  double prefactor_;  // 4 ln10 10^{-2 alpha/beta} / (beta (3 sqrt3 L^2 - 2 pi r0^2))
};

/// Ground-truth fading density by direct numerical convolution of the mean
/// path-loss density with the Gaussian shadowing kernel. Independent of the
/// closed form above; used to verify it.
inline double convolution_oracle(const ChannelModel& m, double l) {
  const double sigma = m.shadowing.sigma_psi_db;
  if (sigma <= 0.0)
    throw std::domain_error("convolution requires positive shadowing sigma");
  const Breakpoints bp = breakpoints_db(m);
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  const auto integrand = [&](double tau) {
    const double d = (l - tau) / sigma;
    return mean_pl_pdf(m, tau) * norm * std::exp(-0.5 * d * d);
  };
  // Split at the interior kink and at the Gaussian window so the adaptive
  // pass cannot overlook a narrow kernel.
  std::vector<double> knots{bp.w0};
  for (double k : {bp.wI, l - 8.0 * sigma, l, l + 8.0 * sigma})
    if (k > bp.w0 && k < bp.wL) knots.push_back(k);
  knots.push_back(bp.wL);
  std::sort(knots.begin(), knots.end());
  double total = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i)
    total += integrate(integrand, knots[i - 1], knots[i], 1e-10);
  return total;
}

/// Precomputed cumulative table of an LsfDensity over its 6-sigma-widened
/// window, with cubic Hermite interpolation between nodes (the stored pdf
/// values are the exact derivatives). Built once, then evaluated cheaply;
/// the workhorse behind goodness-of-fit sweeps over many samples.
class LsfCdfTable {
 public:
  explicit LsfCdfTable(const LsfDensity& density, std::size_t n_panels = 2048)
      : density_(&density) {
    const ChannelModel& m = density.model();
    const double sigma = m.shadowing.sigma_psi_db;
    const SupportBounds sb = density.support();
    const double lo = sb.lower_db - 6.0 * sigma;
    const double hi = sb.upper_db + 6.0 * sigma;
    const Breakpoints bp = breakpoints_db(m);

    grid_.reserve(n_panels + 4);
    for (std::size_t i = 0; i <= n_panels; ++i)
      grid_.push_back(lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(n_panels));
    for (double k : {bp.w0, bp.wI, bp.wL})
      if (k > lo && k < hi) grid_.push_back(k);
    std::sort(grid_.begin(), grid_.end());
    grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());

    cdf_.resize(grid_.size());
    pdf_.resize(grid_.size());
    cdf_[0] = 0.0;
    pdf_[0] = density.pdf(grid_[0]);
    for (std::size_t i = 1; i < grid_.size(); ++i) {
      pdf_[i] = density.pdf(grid_[i]);
      const auto f = [&](double x) { return density.pdf(x); };
      cdf_[i] = cdf_[i - 1] +
                detail::gk15_panel(f, grid_[i - 1], grid_[i]).kronrod;
    }
  }

  double operator()(double l) const {
    if (l <= grid_.front()) return 0.0;
    if (l >= grid_.back()) return cdf_.back();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), l);
    const std::size_t j = static_cast<std::size_t>(it - grid_.begin());
    const double x0 = grid_[j - 1], x1 = grid_[j];
    const double h = x1 - x0;
    const double t = (l - x0) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double value = cdf_[j - 1] * (2.0 * t3 - 3.0 * t2 + 1.0) +
                         h * pdf_[j - 1] * (t3 - 2.0 * t2 + t) +
                         cdf_[j] * (-2.0 * t3 + 3.0 * t2) +
                         h * pdf_[j] * (t3 - t2);
    return std::clamp(value, 0.0, 1.0);
  }

  const LsfDensity& density() const { return *density_; }

 private:
  const LsfDensity* density_;
  std::vector<double> grid_;
  std::vector<double> cdf_;
  std::vector<double> pdf_;
};

}  // namespace hexfade
