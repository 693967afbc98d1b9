#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "magsq/errors.hpp"
#include "magsq/states.hpp"

using namespace magsq;

namespace {
constexpr double kPi = std::numbers::pi;

CompositeTransform real_transform(double r) {
  BogoliubovPair bare{{std::cosh(r), 0.0}, {std::sinh(r), 0.0}, r};
  return composite_transform(bare, HybridPair{1.0, 0.0, 0.0});
}

RenormalizedPoint synthetic_point(double eps_sum, double g) {
  RenormalizedPoint pt;
  pt.eps_bare = eps_sum;
  pt.eps_tilde = 0.0;
  pt.g = {g, 0.0};
  pt.E = std::sqrt(eps_sum * eps_sum - g * g);
  return pt;
}
}  // namespace

TEST_CASE("hybridize") {
  SUBCASE("no interband coupling") {
    const HybridPair h = hybridize(synthetic_point(1.3, 0.0));
    CHECK(h.u_tilde == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.v_tilde == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("worked values") {
    const HybridPair h = hybridize(synthetic_point(1.0, 0.6));
    CHECK(h.u_tilde == doctest::Approx(1.06066).epsilon(1e-5));
    CHECK(h.v_tilde == doctest::Approx(0.35355).epsilon(1e-5));
    CHECK(h.phi == 0.0);
    const HybridPair hneg = hybridize(synthetic_point(1.0, -0.6));
    CHECK(hneg.phi == doctest::Approx(kPi));
  }
  SUBCASE("hyperbolic identity on random points") {
    for (double g : {0.0, 0.2, 0.5, 0.9}) {
      const HybridPair h = hybridize(synthetic_point(1.1, g));
      CHECK(h.u_tilde * h.u_tilde - h.v_tilde * h.v_tilde == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  SUBCASE("degenerate point") {
    RenormalizedPoint pt = synthetic_point(1.0, 0.6);
    pt.E = 0.0;
    CHECK_THROWS_AS(hybridize(pt), DegeneratePointError);
  }
}

TEST_CASE("composite transform") {
  SUBCASE("hybridization off") {
    BogoliubovPair bare{{2.0, 0.0}, {std::sqrt(3.0), 0.0}, 0.0};
    const CompositeTransform ct = composite_transform(bare, {1.0, 0.0, 0.0});
    CHECK(ct.w.real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ct.nu.real() == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
  }
  SUBCASE("worked product") {
    BogoliubovPair bare{{1.0, 0.0}, {0.0, 0.0}, 0.0};
    const CompositeTransform ct = composite_transform(bare, {1.06066, 0.35355, 0.0});
    CHECK(ct.w.real() == doctest::Approx(1.06066).epsilon(1e-6));
    CHECK(ct.nu.real() == doctest::Approx(-0.35355).epsilon(1e-6));
    CHECK(ct.r == doctest::Approx(std::atanh(0.35355 / 1.06066)).epsilon(1e-9));
    CHECK(ct.r == doctest::Approx(0.34657).epsilon(1e-4));
  }
  SUBCASE("bare zone-center pair") {
    BogoliubovPair bare{{2.34919, 0.0}, {2.12572, 0.0}, 0.0};
    const CompositeTransform ct = composite_transform(bare, {1.0, 0.0, 0.0});
    CHECK(std::abs(ct.nu) / std::abs(ct.w) == doctest::Approx(0.904873).epsilon(1e-6));
    CHECK(ct.r == doctest::Approx(1.49839).epsilon(1e-5));
    CHECK(ct.varphi == doctest::Approx(kPi));
  }
  SUBCASE("symplectic identity survives the product") {
    for (double th1 : {0.3, 1.0, 1.8}) {
      for (double th2 : {0.0, 0.4, 0.9}) {
        for (double phi : {0.0, 0.7, kPi}) {
          BogoliubovPair bare{{std::cosh(th1), 0.0},
                              std::polar(std::sinh(th1), 0.3),
                              th1};
          const CompositeTransform ct =
              composite_transform(bare, {std::cosh(th2), std::sinh(th2), phi});
          CHECK(std::norm(ct.w) - std::norm(ct.nu) == doctest::Approx(1.0).epsilon(1e-10));
          CHECK(std::tanh(ct.r) ==
                doctest::Approx(std::abs(ct.nu) / std::abs(ct.w)).epsilon(1e-12));
        }
      }
    }
  }
  SUBCASE("numeric drift guard") {
    BogoliubovPair bad{{0.5, 0.0}, {1.5, 0.0}, 0.0};  // not symplectic
    CHECK_THROWS_AS(composite_transform(bad, {1.0, 0.0, 0.0}), InvalidTransformError);
  }
}

TEST_CASE("ground-state amplitudes") {
  SUBCASE("vacuum") {
    const StateAmplitudes amps = ground_amplitudes(real_transform(0.0), 1e-12);
    REQUIRE(amps.L == 0);
    CHECK(std::abs(amps.p[0] - std::complex<double>{1.0, 0.0}) < 1e-14);
    CHECK(amps.tail_bound == 0.0);
  }
  SUBCASE("geometric weights at tanh r = 1/2") {
    const double r = std::atanh(0.5);
    CompositeTransform ct;
    ct.w = std::cosh(r);
    ct.nu = std::sinh(r);  // varphi = 0
    ct.r = r;
    ct.varphi = 0.0;
    const StateAmplitudes amps = ground_amplitudes(ct, 1e-12);
    double sum = 0.0;
    for (int l = 0; l <= amps.L; ++l) {
      const double expect = 0.75 * std::pow(0.25, l);
      CHECK(std::norm(amps.p[static_cast<size_t>(l)]) == doctest::Approx(expect).epsilon(1e-9));
      sum += std::norm(amps.p[static_cast<size_t>(l)]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(amps.tail_bound <= 1e-12);
  }
  SUBCASE("alternating signs at varphi = pi") {
    const StateAmplitudes amps = ground_amplitudes(real_transform(1.49839), 1e-12);
    CHECK(std::abs(amps.p[0]) == doctest::Approx(0.42570).epsilon(1e-4));
    for (int l = 0; l + 1 <= amps.L && l < 6; ++l)
      CHECK(amps.p[static_cast<size_t>(l)].real() *
                amps.p[static_cast<size_t>(l) + 1].real() <
            0.0);
  }
}

TEST_CASE("f recursion") {
  SUBCASE("initial condition") {
    const auto f = f_recursion(0, 0, 0.9, 12);
    for (double val : f) CHECK(val == 1.0);
  }
  SUBCASE("delta = 1 collapses to sqrt(l + 1)") {
    for (double r : {0.0, 0.4, 1.1, 2.0}) {
      const auto f = f_recursion(0, 1, r, 20);
      for (int l = 0; l <= 20; ++l)
        CHECK(f[static_cast<size_t>(l)] == doctest::Approx(std::sqrt(l + 1.0)).epsilon(1e-14));
    }
  }
  SUBCASE("first mu step has closed form l - sinh^2 r") {
    for (double r : {0.3, 0.8814, 1.5}) {  // sinh^2(0.8814) ~ 1
      const double s2 = std::sinh(r) * std::sinh(r);
      const auto f = f_recursion(1, 0, r, 15);
      for (int l = 0; l <= 15; ++l)
        CHECK(f[static_cast<size_t>(l)] ==
              doctest::Approx(l - s2).epsilon(1e-12).scale(std::max(1.0, s2)));
    }
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(f_recursion(-1, 0, 0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(f_recursion(0, -2, 0.5, 4), std::invalid_argument);
  }
}

TEST_CASE("eigenstate amplitudes") {
  const CompositeTransform ct = real_transform(0.8);

  SUBCASE("(0,0) reduces to the ground table") {
    const StateAmplitudes a = eigenstate_amplitudes(ct, 0, 0, 1e-12);
    const StateAmplitudes g = ground_amplitudes(ct, 1e-12);
    REQUIRE(a.L == g.L);
    for (int l = 0; l <= a.L; ++l)
      CHECK(std::abs(a.p[static_cast<size_t>(l)] - g.p[static_cast<size_t>(l)]) < 1e-15);
  }

  SUBCASE("normalization and bookkeeping up to (2,2)") {
    for (double r : {0.4, 1.2, 2.0}) {
      const CompositeTransform t = real_transform(r);
      for (int n = 0; n <= 2; ++n) {
        for (int m = 0; m <= 2; ++m) {
          if (n == 0 && m == 0) continue;
          const StateAmplitudes a = eigenstate_amplitudes(t, n, m, 1e-10);
          CHECK(a.delta == std::abs(n - m));
          CHECK(a.mu == std::min(n, m));
          CHECK(a.offset_on_a == (n >= m));
          CHECK(a.tail_bound <= 1e-10);
          double sum = 0.0;
          for (const auto& c : a.p) sum += std::norm(c);
          CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
          CHECK(a.raw_norm == doctest::Approx(1.0).epsilon(1e-9));
        }
      }
    }
  }

  SUBCASE("swap symmetry |p(n,m)| = |p(m,n)|") {
    const StateAmplitudes a = eigenstate_amplitudes(ct, 2, 1, 1e-10);
    const StateAmplitudes b = eigenstate_amplitudes(ct, 1, 2, 1e-10);
    REQUIRE(a.L == b.L);
    for (int l = 0; l <= a.L; ++l)
      CHECK(std::abs(a.p[static_cast<size_t>(l)]) ==
            doctest::Approx(std::abs(b.p[static_cast<size_t>(l)])).epsilon(1e-12));
    CHECK(a.offset_on_a);
    CHECK_FALSE(b.offset_on_a);
  }

  SUBCASE("(1,1) overlap with the ground state vanishes") {
    const StateAmplitudes a = eigenstate_amplitudes(ct, 1, 1, 1e-12);
    const StateAmplitudes g = ground_amplitudes(ct, 1e-12);
    std::complex<double> overlap{0.0, 0.0};
    for (int l = 0; l <= std::min(a.L, g.L); ++l)
      overlap += std::conj(a.p[static_cast<size_t>(l)]) * g.p[static_cast<size_t>(l)];
    CHECK(std::abs(overlap) <= 1e-8);
  }

  SUBCASE("degenerate limit") {
    CHECK_THROWS_AS(eigenstate_amplitudes(real_transform(0.0), 1, 1, 1e-10),
                    DegeneratePointError);
    // delta-only states are fine at r = 0
    const StateAmplitudes a = eigenstate_amplitudes(real_transform(0.0), 1, 0, 1e-10);
    CHECK(std::abs(std::abs(a.p[0]) - 1.0) < 1e-14);
  }

  SUBCASE("invalid occupation labels") {
    CHECK_THROWS_AS(eigenstate_amplitudes(ct, -1, 0, 1e-10), std::invalid_argument);
  }
}
