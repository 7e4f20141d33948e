#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fockgauge/errors.hpp"
#include "fockgauge/moments.hpp"
#include "fockgauge/states.hpp"
#include "support.hpp"

using namespace fockgauge;
using fockgauge::testing::Gen;
using fockgauge::testing::eigen_residual;

namespace {

// L_n^a(x) = sum_k binom(n+a, n-k) (-x)^k / k!, with the binomial taken as a
// polynomial in its upper argument so negative a is allowed.
long double laguerre_sum(int n, int a, long double x) {
  long double total = 0.0L;
  for (int k = 0; k <= n; ++k) {
    const int j = n - k;
    long double binom = 1.0L;
    for (int i = 0; i < j; ++i) binom *= static_cast<long double>(n + a - i) / (i + 1);
    long double power = 1.0L;
    for (int i = 1; i <= k; ++i) power *= -x / i;
    total += binom * power;
  }
  return total;
}

}  // namespace

TEST_CASE("laguerre base cases and explicit-sum oracle") {
  CHECK(laguerre(0, 5, 2.3) == 1.0);
  CHECK(laguerre(1, -2, 0.5) == doctest::Approx(-1.5));
  CHECK(laguerre(2, -1, 1.0) == doctest::Approx(-0.5));
  for (int n = 0; n <= 20; ++n) {
    for (int a = -n; a <= 6; ++a) {
      for (double x : {-4.0, -1.0, -0.09, 0.0, 0.7, 3.0}) {
        const long double ref = laguerre_sum(n, a, x);
        const double got = laguerre(static_cast<std::size_t>(n), a, x);
        CHECK(std::abs(got - static_cast<double>(ref)) <=
              1e-11 * std::max(1.0L, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("coherent states") {
  const auto vac = coherent(0.0);
  CHECK(vac.cutoff() == 0);
  CHECK(vac.origin() == Origin::exact);
  const auto one = coherent(1.0);
  CHECK(one.origin() == Origin::truncated);
  CHECK(std::abs(one[0] - std::exp(-0.5)) < 1e-14);
  const auto s = summarize(one);
  CHECK(s.mean_n == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.var_n == doctest::Approx(1.0).epsilon(1e-12));
  // Requested tail: discarded mass below eps^2.
  TruncationPolicy policy{1e-8, kDefaultMaxCutoff};
  const auto loose = coherent(Complex{2.0, 1.0}, policy);
  const auto tight = coherent(Complex{2.0, 1.0});
  CHECK(loose.cutoff() < tight.cutoff());
  CHECK(1.0 - fidelity(loose, tight) < 1e-15);
}

TEST_CASE("truncation policy limits") {
  CHECK_THROWS_AS(coherent(1.0, {0.0, 4096}), std::invalid_argument);
  CHECK_THROWS_AS(coherent(1.0, {1e-5, 4096}), std::invalid_argument);
  CHECK_THROWS_AS(coherent(30.0, {1e-14, 256}), CutoffExplosionError);
  CHECK_NOTHROW(coherent(30.0, {1e-14, 4096}));
  CHECK_THROWS_AS(fock(10, 5), CutoffExplosionError);
}

TEST_CASE("fock states") {
  const auto s2 = summarize(fock(2));
  CHECK(s2.mean_n == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(s2.var_n) < 1e-14);
  CHECK(std::abs(summarize(fock(1)).mean_a) == 0.0);
  CHECK(fock(0).cutoff() == 0);
}

TEST_CASE("squeezed coherent states") {
  const Complex alpha{0.7, -0.4};
  CHECK(fidelity(squeezed_coherent(alpha, 0.0, 1.3), coherent(alpha)) >= 1.0 - 1e-12);

  const auto sv = squeezed_coherent(0.0, 0.5, 0.0);
  const auto e = ellipse(summarize(sv));
  CHECK(e.lambda_minus_sq == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-12));
  CHECK(e.lambda_plus_sq == doctest::Approx(std::exp(1.0) / 2.0).epsilon(1e-12));
  // phi_s = 0 stretches x at theta = 0.
  CHECK(quadrature_stats(sv, 0.0).var_x == doctest::Approx(std::exp(1.0) / 2.0).epsilon(1e-12));

  // Even amplitudes: (tanh r / 2)^m sqrt((2m)!) / m! / sqrt(cosh r), odd ones vanish.
  const double r = 0.5;
  for (std::size_t m = 0; m < 10; ++m) {
    const double ref = std::pow(std::tanh(r) / 2.0, static_cast<double>(m)) *
                       std::exp(0.5 * std::lgamma(2.0 * m + 1.0) - std::lgamma(m + 1.0)) /
                       std::sqrt(std::cosh(r));
    CHECK(std::abs(sv[2 * m] - ref) < 1e-14);
    CHECK(std::abs(sv[2 * m + 1]) == 0.0);
  }

  const auto s = summarize(sv);
  CHECK(std::abs(std::norm(s.var_a) - (s.cov_ada * s.cov_ada - 0.25)) < 1e-10);
  CHECK_THROWS_AS(squeezed_coherent(0.0, 3.5, 0.0), std::invalid_argument);
}

TEST_CASE("displaced squeezed states are minimum-area Gaussians") {
  Gen gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Complex alpha = gen.disc(2.0);
    const double r = gen.uniform(-1.5, 1.5);
    const double phi = gen.uniform(0.0, 2.0 * std::numbers::pi);
    const auto s = summarize(squeezed_coherent(alpha, r, phi));
    CHECK(std::abs(s.mean_a - alpha) < 1e-10);
    CHECK(s.cov_ada == doctest::Approx(std::cosh(2.0 * r) / 2.0).epsilon(1e-10));
    CHECK(std::abs(s.var_a - std::polar(std::sinh(2.0 * r) / 2.0, phi)) < 1e-10);
  }
}

TEST_CASE("crescent states") {
  for (auto method : {CrescentMethod::operator_form, CrescentMethod::laguerre}) {
    const auto c1 = crescent(0.0, 1, method);
    CHECK(c1.origin() == Origin::exact);
    CHECK(c1.cutoff() == 1);
    CHECK(std::abs(c1[1]) == doctest::Approx(1.0));
    const auto c3 = crescent(0.0, 3, method);
    CHECK(c3.cutoff() == 3);
    CHECK(std::abs(c3[3]) == doctest::Approx(1.0));
  }
  CHECK(fidelity(crescent(1.0, 2, CrescentMethod::operator_form),
                 crescent(1.0, 2, CrescentMethod::laguerre)) >= 1.0 - 1e-10);
  CHECK_THROWS_AS(crescent(1.0, 17), std::invalid_argument);
  CHECK(fidelity(crescent(Complex{0.3, 0.2}, 0), coherent(Complex{0.3, 0.2})) >= 1.0 - 1e-14);
}

TEST_CASE("property: crescent constructions agree") {
  Gen gen(23);
  for (int trial = 0; trial < 150; ++trial) {
    const Complex alpha = gen.disc(2.0);
    const int M = static_cast<int>(gen.index(0, 5));
    const double f = fidelity(crescent(alpha, M, CrescentMethod::operator_form),
                              crescent(alpha, M, CrescentMethod::laguerre));
    CHECK(f >= 1.0 - 1e-10);
  }
}

TEST_CASE("property: crescent states are eigenvectors of n - i r x_theta") {
  // The eigenproblem matches (a^+ + alpha^*)(a - alpha) for
  // alpha = i r e^{-i theta} / sqrt(2).
  Gen gen(29);
  for (int trial = 0; trial < 60; ++trial) {
    const Complex alpha = gen.disc(2.0) + Complex{0.05, 0.0};
    const int M = static_cast<int>(gen.index(0, 6));
    const double r = std::sqrt(2.0) * std::abs(alpha);
    const double theta = std::numbers::pi / 2.0 - std::arg(alpha);
    CHECK(eigen_residual(crescent(alpha, M), r, theta) <= 1e-8);
  }
}

TEST_CASE("photon-added coherent states") {
  const auto p1 = photon_added(0.0, 1);
  CHECK(p1.cutoff() == 1);
  CHECK(std::abs(p1[1]) == doctest::Approx(1.0));
  // (|a|^4 + 3|a|^2 + 1) / (|a|^2 + 1) at alpha = 1
  CHECK(summarize(photon_added(1.0, 1)).mean_n == doctest::Approx(2.5).epsilon(1e-12));
  // Leading order: 1 - F = M |alpha|^2.
  for (int M = 1; M <= 3; ++M) {
    const double infidelity = 1.0 - fidelity(photon_added(0.01, M), crescent(0.01, M));
    CHECK(infidelity == doctest::Approx(M * 1e-4).epsilon(0.01));
  }
}

TEST_CASE("property: weak-field limit is monotone") {
  for (int M = 1; M <= 3; ++M) {
    for (double phase : {0.0, 1.1}) {
      double last = 0.0;
      for (double mod : {0.2, 0.1, 0.05, 0.01}) {
        const Complex alpha = std::polar(mod, phase);
        const double f = fidelity(crescent(alpha, M), photon_added(alpha, M));
        CHECK(f > last);
        last = f;
      }
    }
  }
}

TEST_CASE("strong-field approximation") {
  const Complex alpha{1.2, -0.5};
  const auto g0 = approx_strong_field(alpha, 0.0);
  CHECK(fidelity(g0.state, coherent(alpha)) >= 1.0 - 1e-14);
  CHECK(fidelity(approx_strong_field(3.0, 1.0 / 3.0).state, crescent(3.0, 1)) >= 0.99);

  const Complex a{2.0, 0.0}, gamma{0.5, 0.0};
  const auto sf = approx_strong_field(a, gamma);
  const double inv_norm = 1.0 + 2.0 * std::real(std::conj(gamma) * a) +
                          std::norm(gamma) * (1.0 + std::norm(a));
  CHECK(sf.inverse_norm_analytic == doctest::Approx(inv_norm));
  CHECK(sf.inverse_norm_numeric == doctest::Approx(inv_norm).epsilon(1e-12));
  const Complex mean_a = a + (gamma + std::norm(gamma) * a) / inv_norm;
  CHECK(std::abs(summarize(sf.state).mean_a - mean_a) < 1e-10);

  Gen gen(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex al = gen.disc(3.0);
    const Complex ga = gen.disc(1.0);
    const auto s = approx_strong_field(al, ga);
    CHECK(s.inverse_norm_numeric ==
          doctest::Approx(s.inverse_norm_analytic).epsilon(1e-12));
  }
}

TEST_CASE("cat states") {
  const auto even = cat(1.0, 0.0);
  CHECK(std::abs(summarize(even).mean_a) < 1e-14);
  // ||(a^2 - alpha^2) psi||
  const auto a2 = apply_ladder(apply_ladder(even, Ladder::lower), Ladder::lower);
  double res = 0.0;
  for (std::size_t n = 0; n <= even.cutoff(); ++n) res += std::norm(a2[n] - even[n]);
  CHECK(std::sqrt(res) <= 1e-10);

  const auto odd = cat(0.5, std::numbers::pi);
  for (std::size_t n = 0; n <= odd.cutoff(); n += 2) CHECK(std::abs(odd[n]) < 1e-15);
  CHECK_THROWS_AS(cat(0.0, std::numbers::pi), ZeroNormError);
}

TEST_CASE("random states") {
  const auto a = random_state(32, RandomKind::pure, 1, 7);
  const auto b = random_state(32, RandomKind::pure, 1, 7);
  const auto& va = std::get<FockVector>(a);
  const auto& vb = std::get<FockVector>(b);
  for (std::size_t n = 0; n <= 32; ++n) CHECK(va[n] == vb[n]);
  CHECK(va.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));

  const auto m = random_state(16, RandomKind::mixed, 4, 11);
  const auto& rho = std::get<DensityMatrix>(m).matrix();
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  // Rank 4 on 17 levels.
  int small = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) small += es.eigenvalues()(i) < 1e-12;
  CHECK(small == 13);
  CHECK_THROWS_AS(random_state(300, RandomKind::pure, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_state(4, RandomKind::mixed, 6, 1), std::invalid_argument);
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("property: coherent states sit on the covariance floor") {
  Gen gen(37);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = summarize(coherent(gen.disc(4.0)));
    CHECK(std::abs(s.cov_ada - 0.5) < 1e-12);
  }
}

TEST_CASE("build_state dispatch") {
  StateSpec spec;
  spec.kind = StateKind::crescent;
  spec.alpha = {0.5, 0.5};
  spec.M = 2;
  spec.method = CrescentMethod::laguerre;
  const auto s = build_state(spec);
  CHECK(fidelity(s, crescent(spec.alpha, 2)) >= 1.0 - 1e-12);
  spec.kind = StateKind::random_mixed;
  spec.cutoff = 5;
  spec.rank = 2;
  spec.seed = 9;
  CHECK(std::holds_alternative<DensityMatrix>(build_state(spec)));
}
