#pragma once

// Spatial model of one triangular sector of a hexagonal cell with the
// base station at the origin and a circular far-field exclusion of radius
// r0 around it. The sector is the equilateral triangle with vertices
// (0,0), (L,0), (L/2, sqrt(3)L/2); nodes are uniform on the triangle minus
// the exclusion disk. All exact densities of the node position live here:
// joint and marginal Cartesian laws, the conditional law of y given x, and
// the polar/radial laws used by the channel analysis.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hexfade {

struct CartesianPoint {
  double x = 0.0;  // meters
  double y = 0.0;  // meters
};

struct PolarPoint {
  double r = 0.0;      // meters, >= 0
  double theta = 0.0;  // radians
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Admissible azimuth set for a given radius: one interval below the
/// inradius, two symmetric intervals (about pi/6) beyond it.
struct ThetaRanges {
  std::array<Interval, 2> parts{};
  int count = 0;
  double total_measure() const {
    double m = 0.0;
    for (int i = 0; i < count; ++i) m += parts[i].length();
    return m;
  }
  bool contains(double theta) const {
    for (int i = 0; i < count; ++i)
      if (parts[i].contains(theta)) return true;
    return false;
  }
};

class NetworkGeometry {
 public:
  /// cell_radius_m is the cell circumradius L (also the sector side),
  /// close_in_m the far-field radius r0. Requires L/r0 > 2 so that the
  /// exclusion disk stays strictly inside the sector fan.
  NetworkGeometry(double cell_radius_m, double close_in_m)
      : cell_radius_m_(cell_radius_m), close_in_m_(close_in_m) {
    if (!(cell_radius_m > 0.0) || !std::isfinite(cell_radius_m))
      throw std::domain_error("cell radius must be a positive real");
    if (!(close_in_m > 0.0) || !std::isfinite(close_in_m))
      throw std::domain_error("close-in distance must be a positive real");
    if (!(rcr() > 2.0))
      throw std::domain_error(
          "RCR must exceed 2 (cell_radius/close_in = " +
          std::to_string(rcr()) + ")");
  }

  double cell_radius() const { return cell_radius_m_; }
  double close_in() const { return close_in_m_; }

  /// Cell-radius-to-close-in ratio, mu = L/r0.
  double rcr() const { return cell_radius_m_ / close_in_m_; }

  /// 3*sqrt(3)*L^2 - 2*pi*r0^2: the normalizer shared by every spatial
  /// density here (equal to 12x the far-field sector area).
  double density_norm() const {
    return 3.0 * std::numbers::sqrt3 * cell_radius_m_ * cell_radius_m_ -
           2.0 * std::numbers::pi * close_in_m_ * close_in_m_;
  }

  /// Sector area with the exclusion disk removed, in m^2.
  double far_field_area() const { return density_norm() / 12.0; }

  /// Constant value of the uniform spatial law, 1/far_field_area().
  double uniform_density() const { return 12.0 / density_norm(); }

  /// True iff p lies in the closed sector triangle and outside the open
  /// exclusion disk. Boundary points count as inside.
  bool contains(const CartesianPoint& p) const {
    const double L = cell_radius_m_;
    if (p.y < 0.0) return false;
    if (p.y > std::numbers::sqrt3 * p.x) return false;
    if (p.y > std::numbers::sqrt3 * (L - p.x)) return false;
    return p.x * p.x + p.y * p.y >= close_in_m_ * close_in_m_;
  }

  /// Joint density f_XY(x, y): uniform_density() on the domain, 0 outside.
  double joint_pdf_xy(const CartesianPoint& p) const {
    return contains(p) ? uniform_density() : 0.0;
  }

  /// Marginal density f_X(x) of the node abscissa, supported on [r0/2, L].
  double marginal_pdf_x(double x) const {
    const double L = cell_radius_m_;
    const double r0 = close_in_m_;
    if (x < 0.5 * r0 || x > L) return 0.0;
    const double c = uniform_density();
    if (x <= r0) {
      // Radicand can dip a hair below zero when x is a rounding away
      // from r0; clamp it.
      const double rad = std::max(0.0, r0 * r0 - x * x);
      return c * (std::numbers::sqrt3 * x - std::sqrt(rad));
    }
    if (x <= 0.5 * L) return c * std::numbers::sqrt3 * x;
    return c * std::numbers::sqrt3 * (L - x);
  }

  /// Support of the conditional law of Y given X = x_hat; the conditional
  /// density is uniform over the returned interval. Degenerates to [0, 0]
  /// at x_hat = L.
  Interval conditional_y_support(double x_hat) const {
    const double L = cell_radius_m_;
    const double r0 = close_in_m_;
    if (x_hat < 0.5 * r0 || x_hat > L)
      throw std::domain_error("x outside the marginal support [r0/2, L]");
    if (x_hat <= r0) {
      const double rad = std::max(0.0, r0 * r0 - x_hat * x_hat);
      return {std::sqrt(rad), std::numbers::sqrt3 * x_hat};
    }
    if (x_hat <= 0.5 * L) return {0.0, std::numbers::sqrt3 * x_hat};
    return {0.0, std::numbers::sqrt3 * (L - x_hat)};
  }

  /// Distance from the origin to the far sector edge along azimuth theta,
  /// r(theta) = sqrt(3)L / (2 sin(2pi/3 - theta)) for theta in [0, pi/3].
  /// Ranges over [sqrt(3)L/2, L], with the minimum at theta = pi/6.
  double coverage_radius(double theta) const {
    if (theta < 0.0 || theta > std::numbers::pi / 3.0)
      throw std::domain_error("theta outside the sector [0, pi/3]");
    return std::numbers::sqrt3 * cell_radius_m_ /
           (2.0 * std::sin(2.0 * std::numbers::pi / 3.0 - theta));
  }

  /// Joint polar density f_RTheta(r, theta) = 12 r / density_norm() on the
  /// polar domain {r0 <= r <= r(theta), 0 <= theta <= pi/3}, 0 outside.
  double polar_joint_pdf(const PolarPoint& q) const {
    if (q.r < close_in_m_) return 0.0;
    if (q.theta < 0.0 || q.theta > std::numbers::pi / 3.0) return 0.0;
    if (q.r > coverage_radius(q.theta)) return 0.0;
    return 12.0 * q.r / density_norm();
  }

  /// Admissible azimuths at radius r: the full [0, pi/3] up to the inradius
  /// sqrt(3)L/2, then two corner intervals that shrink to the points 0 and
  /// pi/3 as r reaches L.
  ThetaRanges theta_range_given_r(double r) const {
    const double L = cell_radius_m_;
    if (r < close_in_m_ || r > L)
      throw std::domain_error("r outside the radial support [r0, L]");
    const double third = std::numbers::pi / 3.0;
    ThetaRanges out;
    const double inradius = 0.5 * std::numbers::sqrt3 * L;
    if (r <= inradius) {
      out.parts[0] = {0.0, third};
      out.count = 1;
      return out;
    }
    const double s =
        std::asin(std::min(1.0, 0.5 * std::numbers::sqrt3 * L / r));
    const double half_width = std::clamp(s - third, 0.0, 0.5 * third);
    out.parts[0] = {0.0, half_width};
    out.parts[1] = {third - half_width, third};
    out.count = 2;
    return out;
  }

  /// Radial density f_R(r) of the node distance, supported on [r0, L]:
  /// 4 pi r / norm up to the inradius, then 8 r (3 asin(sqrt(3)L/2r) - pi)
  /// / norm, falling to 0 at r = L.
  double radial_pdf(double r) const {
    const double L = cell_radius_m_;
    if (r < close_in_m_ || r > L) return 0.0;
    const double norm = density_norm();
    if (r <= 0.5 * std::numbers::sqrt3 * L)
      return 4.0 * std::numbers::pi * r / norm;
    const double s =
        std::asin(std::min(1.0, 0.5 * std::numbers::sqrt3 * L / r));
    return 8.0 * r * (3.0 * s - std::numbers::pi) / norm;
  }

  /// Maximum of the radial density, attained at the inradius sqrt(3)L/2.
  double radial_pdf_max() const {
    return 2.0 * std::numbers::sqrt3 * std::numbers::pi * cell_radius_m_ /
           density_norm();
  }

 private:
  double cell_radius_m_;
  double close_in_m_;
};

}  // namespace hexfade
