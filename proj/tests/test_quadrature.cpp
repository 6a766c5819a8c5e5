#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hexfade/quadrature.hpp"
#include "oracles.hpp"

using hexfade::integrate;

TEST_CASE("polynomials are integrated to machine accuracy", "[quadrature]") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        Catch::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return 3.0 * x * x - 2.0 * x + 1.0; }, -2.0,
                  5.0) == Catch::Approx(119.0).epsilon(1e-14));
}

TEST_CASE("gaussian kernel matches the erf closed form", "[quadrature]") {
  const double got =
      integrate([](double z) { return std::exp(-0.5 * z * z); }, -1.0, 1.0,
                1e-12);
  // sqrt(2 pi) (1 - 2 Q(1))
  CHECK(got == Catch::Approx(1.7112487837842976).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity converges", "[quadrature]") {
  const double got =
      integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9);
  CHECK(got == Catch::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("step discontinuity converges", "[quadrature]") {
  const double got = integrate(
      [](double x) { return x > 1.0 / 3.0 ? 1.0 : 0.0; }, 0.0, 1.0, 1e-9);
  CHECK(got == Catch::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("orientation and degenerate interval", "[quadrature]") {
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0) ==
        Catch::Approx(-0.5).epsilon(1e-14));
  CHECK(integrate([](double x) { return x; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("agrees with the independent Simpson oracle", "[quadrature]") {
  const auto f = [](double x) { return std::sin(x) * std::exp(-x); };
  const double gk = integrate(f, 0.0, std::numbers::pi, 1e-11);
  const double simp = oracles::simpson(f, 0.0, std::numbers::pi, 1e-12);
  CHECK(gk == Catch::Approx(simp).epsilon(1e-9));
}
