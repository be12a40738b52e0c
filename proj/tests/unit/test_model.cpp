#include <doctest.h>

#include <cmath>

#include "solitwave/errors.hpp"
#include "solitwave/model.hpp"
#include "solitwave/profile.hpp"

using namespace solitwave;

namespace {

ModelParams symmetric(double b, double b2, double a, double a2, double omega) {
  return ModelParams({a, b, a, b, a2, b2, a2, b2}, omega, RegimeCheck::Theoretical);
}

}  // namespace

TEST_CASE("admissible velocity bound") {
  CHECK(admissible_velocity_bound(symmetric(4, 2, -4, 0.5, 0.4)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(admissible_velocity_bound(symmetric(4, 3, -4, 1, 0.4)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(admissible_velocity_bound(symmetric(2, 5, -2, 20, 0.8)) == 1.0);
}

TEST_CASE("velocity regime check") {
  CHECK(check_velocity_in_regime(symmetric(2, 5, -2, 20, 0.8)));
  CHECK_FALSE(check_velocity_in_regime(symmetric(4, 2, -4, 0.5, 0.4)));
  CHECK_FALSE(check_velocity_in_regime(symmetric(2, 5, -2, 20, 0.0)));
  CHECK_FALSE(check_velocity_in_regime(symmetric(2, 5, -2, 20, 1.0)));
}

TEST_CASE("regime check is even in omega") {
  for (double w : {0.1, 0.24, 0.25, 0.3, 0.9}) {
    const ModelParams p = symmetric(4, 2, -4, 0.5, w);
    CHECK(check_velocity_in_regime(p) == check_velocity_in_regime(p.with_omega(-w)));
  }
}

TEST_CASE("bound is invariant under scaling of coefficient pairs") {
  const DispersionCoefficients base{-3, 2, -1.5, 2, 7, 4, 5, 4};
  const double ref = admissible_velocity_bound(ModelParams(base, 0.1));
  for (double lam : {0.3, 2.0, 11.0}) {
    for (double mu : {0.5, 3.0}) {
      DispersionCoefficients s = base;
      s.a *= lam;
      s.b *= lam;
      s.c *= lam;
      s.d *= lam;
      s.a2 *= mu;
      s.b2 *= mu;
      s.c2 *= mu;
      s.d2 *= mu;
      CHECK(admissible_velocity_bound(ModelParams(s, 0.1)) == doctest::Approx(ref).epsilon(1e-14));
    }
  }
}

TEST_CASE("parameter validation") {
  const DispersionCoefficients good{-2, 2, -2, 2, 20, 5, 20, 5};
  CHECK_NOTHROW(ModelParams(good, 0.8));

  DispersionCoefficients bad = good;
  bad.a = 1.0;
  CHECK_THROWS_AS(ModelParams(bad, 0.8), ValidationError);
  bad = good;
  bad.b2 = 0.0;
  CHECK_THROWS_AS(ModelParams(bad, 0.8), ValidationError);
  bad = good;
  bad.c = NAN;
  CHECK_THROWS_AS(ModelParams(bad, 0.8), ValidationError);
  CHECK_THROWS_AS(ModelParams(good, INFINITY), ValidationError);

  DispersionCoefficients asym = good;
  asym.d = 3.0;
  CHECK_NOTHROW(ModelParams(asym, 0.8));
  CHECK_THROWS_AS(ModelParams(asym, 0.8, RegimeCheck::Theoretical), ValidationError);
}

TEST_CASE("grid") {
  const Grid g(200.0, 4096);
  CHECK(g.spacing() == 200.0 / 4096);
  CHECK(g.x(0) == 0.0);
  CHECK(g.n_modes() == 2049);
  CHECK_THROWS_AS(Grid(200.0, 100), ValidationError);
  CHECK_THROWS_AS(Grid(-1.0, 64), ValidationError);
  CHECK_THROWS_AS(Grid(1.0, 1), ValidationError);
}

TEST_CASE("gaussian initial data") {
  const Grid g(200.0, 4096);
  const WaveProfile w = gaussian_initial(g, 100.0, 0.5, 1.0);
  CHECK(w.psi[2048] == 1.0);
  CHECK(w.v[2048] == 1.0);
  CHECK(w.psi == w.v);

  const double s = std::sqrt(std::log(2.0) / 0.05);
  const GaussianPulse pulse{50.0, 0.05, 1.0};
  CHECK(pulse(50.0 + s) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pulse(50.0 - s) == doctest::Approx(0.5).epsilon(1e-14));

  const WaveProfile z = gaussian_initial(g, 100.0, 0.5, 0.0);
  CHECK(z.max_norm() == 0.0);

  CHECK_THROWS_AS(gaussian_initial(g, 250.0, 0.5, 1.0), ValidationError);
  CHECK_THROWS_AS(gaussian_initial(g, -1.0, 0.5, 1.0), ValidationError);
}
