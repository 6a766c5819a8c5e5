#pragma once

// Adaptive quadrature on finite intervals built on the classic (G7, K15)
// Gauss-Kronrod pair: the 15-point Kronrod value is the panel estimate and
// |K15 - G7| drives interval bisection.

#include <algorithm>
#include <cmath>
#include <utility>

namespace hexfade {
namespace detail {

// Abscissae and weights of the (G7, K15) pair on [-1, 1], positive half.
// Odd-indexed abscissae are the embedded 7-point Gauss nodes.
inline constexpr double gk15_nodes[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0,
};
inline constexpr double gk15_weights[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801,
};
inline constexpr double gauss7_weights[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776,
};

struct PanelEstimate {
  double kronrod;
  double error;  // |K15 - G7|
};

template <class F>
PanelEstimate gk15_panel(F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_mid = f(mid);
  double kronrod = gk15_weights[7] * f_mid;
  double gauss = gauss7_weights[3] * f_mid;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * gk15_nodes[j];
    const double pair_sum = f(mid - dx) + f(mid + dx);
    kronrod += gk15_weights[j] * pair_sum;
    if (j % 2 == 1) gauss += gauss7_weights[j / 2] * pair_sum;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::fabs(kronrod - gauss)};
}

template <class F>
double integrate_adaptive(F& f, double a, double b, PanelEstimate est,
                          double tol, int depth) {
  if (est.error <= tol || depth >= 52) return est.kronrod;
  const double mid = 0.5 * (a + b);
  const PanelEstimate left = gk15_panel(f, a, mid);
  const PanelEstimate right = gk15_panel(f, mid, b);
  return integrate_adaptive(f, a, mid, left, 0.5 * tol, depth + 1) +
         integrate_adaptive(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Integrates f over [a, b] (orientation-aware) until the estimated error of
/// each panel falls below max(abs_tol, rel_tol * |integral|).
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 0.0) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(std::forward<F>(f), b, a, rel_tol, abs_tol);

  const detail::PanelEstimate whole = detail::gk15_panel(f, a, b);
  double tol = std::max(abs_tol, rel_tol * std::fabs(whole.kronrod));
  if (whole.error <= tol) return whole.kronrod;

  // One forced split to get a sturdier magnitude for the relative tolerance.
  const double mid = 0.5 * (a + b);
  const detail::PanelEstimate left = detail::gk15_panel(f, a, mid);
  const detail::PanelEstimate right = detail::gk15_panel(f, mid, b);
  tol = std::max(abs_tol, rel_tol * (std::fabs(left.kronrod) +
                                     std::fabs(right.kronrod)));
  return detail::integrate_adaptive(f, a, mid, left, 0.5 * tol, 1) +
         detail::integrate_adaptive(f, mid, b, right, 0.5 * tol, 1);
}

}  // namespace hexfade
