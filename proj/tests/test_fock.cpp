#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fockgauge/errors.hpp"
#include "fockgauge/fock.hpp"
#include "fockgauge/states.hpp"
#include "support.hpp"

using namespace fockgauge;
using fockgauge::testing::Gen;
using fockgauge::testing::unit;

namespace {

// Dense lowering operator on levels 0..n.
ComplexMatrix lowering(Eigen::Index dim) {
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// tr(rho a^{+j} a^k) with operators built on a space large enough that the
// truncation never clips a^k acting on the support.
Complex dense_moment(const ComplexMatrix& rho, int j, int k) {
  const Eigen::Index n = rho.rows();
  const Eigen::Index big = n + 8;
  ComplexMatrix r = ComplexMatrix::Zero(big, big);
  r.topLeftCorner(n, n) = rho;
  const ComplexMatrix a = lowering(big);
  ComplexMatrix op = ComplexMatrix::Identity(big, big);
  for (int i = 0; i < j; ++i) op = op * a.adjoint();
  for (int i = 0; i < k; ++i) op = op * a;
  return (r * op).trace();
}

ComplexMatrix as_matrix(const QuantumState& s) {
  if (const auto* psi = std::get_if<FockVector>(&s)) return DensityMatrix::from_pure(*psi).matrix();
  return std::get<DensityMatrix>(s).matrix();
}

}  // namespace

TEST_CASE("ladder operators act on amplitudes") {
  const auto vac = FockVector::normalized(unit(0, 1));
  const auto down = apply_ladder(vac, Ladder::lower);
  CHECK(down.is_zero());
  CHECK_FALSE(down.is_normalized());

  const auto one = apply_ladder(FockVector::normalized(unit(1, 2)), Ladder::lower);
  CHECK(one[0] == Complex{1.0, 0.0});
  CHECK(one[1] == Complex{});

  const auto up = apply_ladder(FockVector::normalized(unit(2, 3)), Ladder::raise);
  CHECK(up.cutoff() == 3);
  CHECK(std::abs(up[3] - std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("normally ordered moments on basis and coherent states") {
  CHECK(std::abs(normally_ordered_moment(fock(3), 1, 1) - 3.0) < 1e-14);
  CHECK(std::abs(normally_ordered_moment(coherent(1.0), 0, 1) - 1.0) < 1e-12);
  CHECK(std::abs(normally_ordered_moment(fock(1), 2, 2)) < 1e-15);
  CHECK_THROWS_AS(normally_ordered_moment(fock(1), 5, 0), OrderTooHighError);
  CHECK_THROWS_AS(normally_ordered_moment(fock(1), 0, 5), OrderTooHighError);
}

TEST_CASE("fidelity") {
  CHECK(fidelity(fock(0), fock(0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fidelity(fock(0), fock(1)) == doctest::Approx(0.0));
  // |<0|alpha>|^2 = e^{-|alpha|^2}
  CHECK(std::abs(fidelity(coherent(1.0), fock(0)) - std::exp(-1.0)) < 1e-12);

  const auto rho = random_state(6, RandomKind::mixed, 3, 5);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
  const QuantumState pure_rho = DensityMatrix::from_pure(coherent(Complex{0.4, -0.3}));
  CHECK(fidelity(pure_rho, coherent(Complex{0.4, -0.3})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(pure_rho, fock(0)) ==
        doctest::Approx(std::exp(-0.25)).epsilon(1e-10));
}

TEST_CASE("tail mass") {
  CHECK(tail_mass(fock(0), 1) == 0.0);
  CHECK(tail_mass(fock(1), 1) == doctest::Approx(1.0));
  // Independent Poisson tail: 1 - sum_{n<8} e^{-1}/n!.
  double head = 0.0, term = std::exp(-1.0);
  for (int n = 0; n < 8; ++n) {
    head += term;
    term /= n + 1;
  }
  const double tail = tail_mass(coherent(1.0), 8);
  CHECK(tail == doctest::Approx(1.0 - head).epsilon(1e-9));
  CHECK(tail == doctest::Approx(1.1e-5).epsilon(0.05));
}

TEST_CASE("density matrix validation") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.6;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvalidStateError);
  m(1, 1) = 0.5;
  m(0, 1) = 0.7;
  m(1, 0) = 0.7;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvalidStateError);  // negative eigenvalue
  m(0, 1) = Complex{0.1, 0.2};
  m(1, 0) = Complex{0.1, 0.2};
  CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvalidStateError);  // not Hermitian
  CHECK_THROWS_AS(FockVector::normalized({Complex{1e-14, 0.0}}), ZeroNormError);
}

TEST_CASE("property: commutator expectation is one on well-truncated vectors") {
  Gen gen(101);
  for (int trial = 0; trial < 200; ++trial) {
    const QuantumState s = gen.state();
    const auto* psi = std::get_if<FockVector>(&s);
    if (psi == nullptr || tail_mass(s, psi->cutoff()) >= 1e-14) continue;
    const double raised = apply_ladder(*psi, Ladder::raise).norm_sq();
    const double lowered = apply_ladder(*psi, Ladder::lower).norm_sq();
    CHECK(std::abs(raised - lowered - 1.0) < 1e-10);
  }
}

TEST_CASE("property: moments are Hermitian and match dense evaluation") {
  Gen gen(202);
  for (int trial = 0; trial < 60; ++trial) {
    const QuantumState s = gen.state();
    const ComplexMatrix rho = as_matrix(s);
    for (int j = 0; j <= 2; ++j) {
      for (int k = 0; k <= 2; ++k) {
        const Complex m = normally_ordered_moment(s, j, k);
        CHECK(std::abs(m - std::conj(normally_ordered_moment(s, k, j))) < 1e-12);
        const Complex dense = dense_moment(rho, j, k);
        CHECK(std::abs(m - dense) < 1e-9 * (1.0 + std::abs(dense)));
      }
    }
  }
}

TEST_CASE("property: pure and rank-one mixed moments agree") {
  Gen gen(303);
  for (int trial = 0; trial < 100; ++trial) {
    const QuantumState s = gen.state();
    const auto* psi = std::get_if<FockVector>(&s);
    if (psi == nullptr) continue;
    const QuantumState rho = DensityMatrix::from_pure(*psi);
    for (int j = 0; j <= kMaxMomentOrder; ++j) {
      for (int k = 0; k <= kMaxMomentOrder; ++k) {
        const Complex a = normally_ordered_moment(s, j, k);
        const Complex b = normally_ordered_moment(rho, j, k);
        CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }
}
