#pragma once

// Random node deployment. The marginal law of x has no closed-form inverse
// CDF, so generation runs a modified acceptance-rejection scheme with a
// uniform proposal scaled to the density peak; the same trick drives the
// radial sampler. Closed-form acceptance-rate analytics decide which of the
// two routes is cheaper for a given cell-to-close-in ratio.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hexfade/geometry.hpp"
#include "hexfade/rng.hpp"

namespace hexfade {

/// Accepted samples plus the proposal count behind them.
template <class T>
struct SampleBatch {
  std::vector<T> samples;
  std::uint64_t n_accepted = 0;
  std::uint64_t n_total = 0;

  double acceptance_ratio() const {
    return n_total == 0 ? 0.0
                        : static_cast<double>(n_accepted) /
                              static_cast<double>(n_total);
  }
};

/// Draws n_s abscissae distributed as the marginal f_X by rejection from
/// U(r0/2, L); the acceptance tests are the per-branch density ratios
/// against the peak at x = L/2.
inline SampleBatch<double> sample_x(const NetworkGeometry& geom,
                                    RngStream& rng, std::size_t n_s) {
  const double L = geom.cell_radius();
  const double r0 = geom.close_in();
  SampleBatch<double> batch;
  batch.samples.reserve(n_s);
  while (batch.samples.size() < n_s) {
    ++batch.n_total;
    const double u0 = rng.next_uniform();
    const double v = rng.next_uniform(0.5 * r0, L);
    bool accept;
    if (v <= r0) {
      const double rad = std::max(0.0, (r0 * r0 - v * v) / 3.0);
      accept = v - std::sqrt(rad) > 0.5 * u0 * L;
    } else if (v <= 0.5 * L) {
      accept = v > 0.5 * u0 * L;
    } else {
      accept = v < L * (1.0 - 0.5 * u0);
    }
    if (accept) batch.samples.push_back(v);
  }
  batch.n_accepted = batch.samples.size();
  return batch;
}

/// Uniform draw over the conditional support of y given x = x_hat.
inline double sample_y_given_x(const NetworkGeometry& geom, RngStream& rng,
                               double x_hat) {
  const Interval iv = geom.conditional_y_support(x_hat);
  return rng.next_uniform(iv.lo, iv.hi);
}

/// Uniform points on the far-field sector: the x batch first, then one
/// conditional y per abscissa. Cost is linear in n_s.
inline SampleBatch<CartesianPoint> sample_sector_points(
    const NetworkGeometry& geom, RngStream& rng, std::size_t n_s) {
  SampleBatch<CartesianPoint> out;
  out.samples.reserve(n_s);
  SampleBatch<double> xs = sample_x(geom, rng, n_s);
  for (double x : xs.samples)
    out.samples.push_back({x, sample_y_given_x(geom, rng, x)});
  out.n_accepted = xs.n_accepted;
  out.n_total = xs.n_total;
  return out;
}

/// Uniform points on the full hexagonal cell minus the exclusion disk:
/// each sector point is rotated about the origin by a uniformly chosen
/// multiple of 60 degrees.
inline SampleBatch<CartesianPoint> sample_hexagon_points(
    const NetworkGeometry& geom, RngStream& rng, std::size_t n_s) {
  static constexpr double kCos[6] = {1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
  static constexpr double kSin[6] = {0.0,  0.86602540378443865,
                                     0.86602540378443865,  0.0,
                                     -0.86602540378443865, -0.86602540378443865};
  SampleBatch<CartesianPoint> out = sample_sector_points(geom, rng, n_s);
  for (CartesianPoint& p : out.samples) {
    const std::uint32_t k = rng.next_index(6);
    p = {p.x * kCos[k] - p.y * kSin[k], p.x * kSin[k] + p.y * kCos[k]};
  }
  return out;
}

/// Draws n_s node distances distributed as the radial density f_R by
/// rejection from U(r0, L) against the peak at the inradius.
inline SampleBatch<double> sample_radius(const NetworkGeometry& geom,
                                         RngStream& rng, std::size_t n_s) {
  const double L = geom.cell_radius();
  const double r0 = geom.close_in();
  const double pdf_max = geom.radial_pdf_max();
  SampleBatch<double> batch;
  batch.samples.reserve(n_s);
  while (batch.samples.size() < n_s) {
    ++batch.n_total;
    const double u0 = rng.next_uniform();
    const double v = rng.next_uniform(r0, L);
    if (geom.radial_pdf(v) > u0 * pdf_max) batch.samples.push_back(v);
  }
  batch.n_accepted = batch.samples.size();
  return batch;
}

namespace detail {
inline constexpr double kThirdCircleOverArea =
    2.0 * std::numbers::pi / (3.0 * std::numbers::sqrt3);

inline void require_rcr(double mu) {
  if (!(mu > 2.0)) throw std::domain_error("RCR must exceed 2");
}
}  // namespace detail

/// Acceptance rate of the Cartesian x sampler as a function of the RCR:
/// (mu^2 - 2pi/(3 sqrt 3)) / (mu (2 mu - 1)), for mu > 2.
inline double acceptance_rate_cartesian(double mu) {
  detail::require_rcr(mu);
  return (mu * mu - detail::kThirdCircleOverArea) / (mu * (2.0 * mu - 1.0));
}

/// RCR that maximizes the Cartesian acceptance rate,
/// (4 pi + sqrt(2 pi (8 pi - 3 sqrt 3))) / (3 sqrt 3), about 4.572.
inline double optimal_rcr() {
  const double pi = std::numbers::pi;
  const double s3 = std::numbers::sqrt3;
  return (4.0 * pi + std::sqrt(2.0 * pi * (8.0 * pi - 3.0 * s3))) / (3.0 * s3);
}

struct ArEstimatorStats {
  double mean;
  double variance;
};

/// Mean and variance of the empirical acceptance-rate estimator n_S/n_T
/// for n_T proposals: the estimator is unbiased with binomial variance
/// p(1-p)/n_T.
inline ArEstimatorStats ar_estimator_stats(double mu, std::uint64_t n_total) {
  if (n_total < 1) throw std::domain_error("need at least one proposal");
  const double p = acceptance_rate_cartesian(mu);
  return {p, p * (1.0 - p) / static_cast<double>(n_total)};
}

/// Acceptance rate of the radial sampler:
/// 3 (mu^2 - 2pi/(3 sqrt 3)) / (2 pi mu (mu - 1)), strictly decreasing.
inline double acceptance_rate_radial(double mu) {
  detail::require_rcr(mu);
  return 3.0 * (mu * mu - detail::kThirdCircleOverArea) /
         (2.0 * std::numbers::pi * mu * (mu - 1.0));
}

/// RCR where the Cartesian and radial acceptance rates intersect,
/// (2 pi - 3) / (2 (pi - 3)), about 11.594.
inline double crossover_rcr() {
  const double pi = std::numbers::pi;
  return (2.0 * pi - 3.0) / (2.0 * (pi - 3.0));
}

enum class SamplingStrategy { Radial, Cartesian };

/// Radial generation wins below the crossover RCR (inclusive), Cartesian
/// above it.
inline SamplingStrategy choose_strategy(double mu) {
  detail::require_rcr(mu);
  return mu <= crossover_rcr() ? SamplingStrategy::Radial
                               : SamplingStrategy::Cartesian;
}

/// Node distances via whichever sampler is cheaper for this geometry:
/// direct radial draws, or sector points reduced to their norm.
inline SampleBatch<double> sample_distances(const NetworkGeometry& geom,
                                            RngStream& rng, std::size_t n_s) {
  if (choose_strategy(geom.rcr()) == SamplingStrategy::Radial)
    return sample_radius(geom, rng, n_s);
  SampleBatch<CartesianPoint> pts = sample_sector_points(geom, rng, n_s);
  SampleBatch<double> out;
  out.samples.reserve(n_s);
  for (const CartesianPoint& p : pts.samples)
    out.samples.push_back(std::hypot(p.x, p.y));
  out.n_accepted = pts.n_accepted;
  out.n_total = pts.n_total;
  return out;
}

/// Sector points via the strategy choice. Under the radial route the
/// azimuth is drawn uniformly over the admissible theta set of each radius
/// (the joint polar density does not depend on theta).
inline SampleBatch<CartesianPoint> sample_points(const NetworkGeometry& geom,
                                                 RngStream& rng,
                                                 std::size_t n_s) {
  if (choose_strategy(geom.rcr()) == SamplingStrategy::Cartesian)
    return sample_sector_points(geom, rng, n_s);
  SampleBatch<double> radii = sample_radius(geom, rng, n_s);
  SampleBatch<CartesianPoint> out;
  out.samples.reserve(n_s);
  for (double r : radii.samples) {
    const ThetaRanges ranges = geom.theta_range_given_r(r);
    double pos = rng.next_uniform() * ranges.total_measure();
    double theta = ranges.parts[0].lo;
    for (int i = 0; i < ranges.count; ++i) {
      if (pos <= ranges.parts[i].length() || i == ranges.count - 1) {
        theta = std::min(ranges.parts[i].lo + pos, ranges.parts[i].hi);
        break;
      }
      pos -= ranges.parts[i].length();
    }
    out.samples.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  out.n_accepted = radii.n_accepted;
  out.n_total = radii.n_total;
  return out;
}

}  // namespace hexfade
