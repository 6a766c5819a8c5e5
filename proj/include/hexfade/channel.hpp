#pragma once

// Deterministic channel pieces: the log-distance mean path-loss law
// w(r) = alpha + beta log10(r) in dB, its inverse, the dB breakpoints
// where the distance densities switch analytic form, and the density of
// the mean path loss seen by a uniformly random node.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hexfade/geometry.hpp"

namespace hexfade {

struct PathLossParams {
  double alpha_db;  // intercept, dB
  double beta_db;   // slope, dB per decade of distance

  PathLossParams(double alpha, double beta) : alpha_db(alpha), beta_db(beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw std::domain_error("path-loss slope beta must be positive");
    if (!std::isfinite(alpha))
      throw std::domain_error("path-loss intercept alpha must be finite");
  }

  /// Slopes of 10 dB/decade or less mean a path-loss exponent of at most 1,
  /// unusual for terrestrial links. Callers may warn; it is not an error.
  bool below_typical_exponent() const { return beta_db <= 10.0; }
};

struct ShadowingParams {
  double sigma_psi_db;  // standard deviation of the dB shadowing term

  explicit ShadowingParams(double sigma_psi) : sigma_psi_db(sigma_psi) {
    if (!(sigma_psi >= 0.0) || !std::isfinite(sigma_psi))
      throw std::domain_error("shadowing sigma must be nonnegative");
  }
};

struct ChannelModel {
  NetworkGeometry geometry;
  PathLossParams pathloss;
  ShadowingParams shadowing;
};

/// Mean path loss in dB at distance r > 0 meters.
inline double mean_path_loss_db(const PathLossParams& pl, double r) {
  if (!(r > 0.0)) throw std::domain_error("distance must be positive");
  return pl.alpha_db + pl.beta_db * std::log10(r);
}

/// Distance at which the mean path loss equals w dB; exact inverse of
/// mean_path_loss_db.
inline double inverse_distance(const PathLossParams& pl, double w) {
  return std::pow(10.0, (w - pl.alpha_db) / pl.beta_db);
}

/// Mean path loss at the three geometric pivots r0 < sqrt(3)L/2 < L;
/// strictly increasing since beta > 0.
struct Breakpoints {
  double w0;
  double wI;
  double wL;
};

inline Breakpoints breakpoints_db(const ChannelModel& m) {
  const double L = m.geometry.cell_radius();
  return {mean_path_loss_db(m.pathloss, m.geometry.close_in()),
          mean_path_loss_db(m.pathloss, 0.5 * std::numbers::sqrt3 * L),
          mean_path_loss_db(m.pathloss, L)};
}

/// Density of the mean path loss W = w(R) of a uniformly random node,
/// supported on [w0, wL]; the radial law pushed through the log-distance
/// map. Continuous at wI and zero at wL.
inline double mean_pl_pdf(const ChannelModel& m, double w) {
  const Breakpoints bp = breakpoints_db(m);
  if (w < bp.w0 || w > bp.wL) return 0.0;
  const double alpha = m.pathloss.alpha_db;
  const double beta = m.pathloss.beta_db;
  const double prefactor = 4.0 * std::numbers::ln10 *
                           std::pow(10.0, 2.0 * (w - alpha) / beta) /
                           (beta * m.geometry.density_norm());
  if (w <= bp.wI) return prefactor * std::numbers::pi;
  const double r = std::pow(10.0, (w - alpha) / beta);
  const double arg = std::clamp(
      0.5 * std::numbers::sqrt3 * m.geometry.cell_radius() / r, -1.0, 1.0);
  return prefactor * (6.0 * std::asin(arg) - 2.0 * std::numbers::pi);
}

/// IEEE 802.20 urban-macrocell preset (COST-231 Hata at 1.9 GHz folded
/// into the intercept): alpha 34.5 dB, beta 35 dB/decade, sigma 10 dB,
/// close-in 35 m. Cell radii of 600 m to 3500 m are the intended range.
inline ChannelModel ieee80220_urban_macrocell(double cell_radius_m = 600.0) {
  return {NetworkGeometry(cell_radius_m, 35.0), PathLossParams(34.5, 35.0),
          ShadowingParams(10.0)};
}

}  // namespace hexfade
