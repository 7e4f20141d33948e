#include "fockgauge/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fockgauge/errors.hpp"

namespace fockgauge {

namespace {

constexpr double kZeroNormThreshold = 1e-13;
constexpr double kHermiticityTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPositivityTol = 1e-10;

// sqrt((p + j)! / p!)
double sqrt_falling_ratio(std::size_t p, int j) {
  double f = 1.0;
  for (int i = 1; i <= j; ++i) f *= std::sqrt(static_cast<double>(p + i));
  return f;
}

Eigen::VectorXcd to_eigen(const FockVector& psi, std::size_t cutoff) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoff + 1));
  for (std::size_t n = 0; n <= psi.cutoff(); ++n) v[static_cast<Eigen::Index>(n)] = psi[n];
  return v;
}

// Hermitian square root with negative round-off eigenvalues clipped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

FockVector FockVector::normalized(std::vector<Complex> amplitudes, Origin origin) {
  if (amplitudes.empty()) throw std::invalid_argument("FockVector: empty amplitude sequence");
  double sum = 0.0;
  for (const auto& c : amplitudes) sum += std::norm(c);
  const double norm = std::sqrt(sum);
  if (!(norm >= kZeroNormThreshold)) {
    throw ZeroNormError("FockVector: norm " + std::to_string(norm) + " below 1e-13");
  }
  for (auto& c : amplitudes) c /= norm;
  return FockVector(std::move(amplitudes), true, origin);
}

FockVector FockVector::unnormalized(std::vector<Complex> amplitudes, Origin origin) {
  if (amplitudes.empty()) throw std::invalid_argument("FockVector: empty amplitude sequence");
  return FockVector(std::move(amplitudes), false, origin);
}

double FockVector::norm_sq() const {
  double sum = 0.0;
  for (const auto& c : amplitudes_) sum += std::norm(c);
  return sum;
}

FockVector FockVector::padded(std::size_t cutoff) const {
  if (cutoff <= this->cutoff()) return *this;
  std::vector<Complex> amps = amplitudes_;
  amps.resize(cutoff + 1);
  return FockVector(std::move(amps), normalized_, origin_);
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix rho, Origin origin) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    throw InvalidStateError("DensityMatrix: matrix must be square and non-empty");
  }
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermiticityTol) {
    throw InvalidStateError("DensityMatrix: not Hermitian (max |rho - rho^+| = " +
                            std::to_string(asym) + ")");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InvalidStateError("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  // Symmetrize so downstream eigen-solvers see an exactly Hermitian matrix.
  ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPositivityTol) {
    throw InvalidStateError("DensityMatrix: negative eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()));
  }
  return DensityMatrix(std::move(herm), origin);
}

DensityMatrix DensityMatrix::from_pure(const FockVector& psi) {
  const Eigen::VectorXcd v = to_eigen(psi, psi.cutoff());
  return DensityMatrix(v * v.adjoint(), psi.origin());
}

DensityMatrix DensityMatrix::padded(std::size_t cutoff) const {
  if (cutoff <= this->cutoff()) return *this;
  const auto dim = static_cast<Eigen::Index>(cutoff + 1);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  out.topLeftCorner(rho_.rows(), rho_.cols()) = rho_;
  return DensityMatrix(std::move(out), origin_);
}

std::size_t cutoff(const QuantumState& state) {
  return std::visit([](const auto& s) { return s.cutoff(); }, state);
}

Origin origin(const QuantumState& state) {
  return std::visit([](const auto& s) { return s.origin(); }, state);
}

std::vector<double> populations(const QuantumState& state) {
  std::vector<double> p(cutoff(state) + 1);
  if (const auto* psi = std::get_if<FockVector>(&state)) {
    for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::norm((*psi)[n]);
  } else {
    const auto& rho = std::get<DensityMatrix>(state).matrix();
    for (std::size_t n = 0; n < p.size(); ++n) {
      p[n] = rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)).real();
    }
  }
  return p;
}

FockVector apply_ladder(const FockVector& psi, Ladder kind) {
  const std::size_t n_max = psi.cutoff();
  if (kind == Ladder::lower) {
    if (n_max == 0) return FockVector::unnormalized({Complex{}}, psi.origin());
    std::vector<Complex> out(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
      out[n - 1] = psi[n] * std::sqrt(static_cast<double>(n));
    }
    return FockVector::unnormalized(std::move(out), psi.origin());
  }
  std::vector<Complex> out(n_max + 2);
  for (std::size_t n = 0; n <= n_max; ++n) {
    out[n + 1] = psi[n] * std::sqrt(static_cast<double>(n + 1));
  }
  return FockVector::unnormalized(std::move(out), psi.origin());
}

Complex normally_ordered_moment(const QuantumState& state, int j, int k) {
  if (j < 0 || k < 0) throw std::invalid_argument("normally_ordered_moment: negative order");
  if (j > kMaxMomentOrder || k > kMaxMomentOrder) {
    throw OrderTooHighError("normally_ordered_moment: order (" + std::to_string(j) + ", " +
                            std::to_string(k) + ") exceeds " + std::to_string(kMaxMomentOrder));
  }
  if (const auto* psi = std::get_if<FockVector>(&state)) {
    // <a^j psi | a^k psi>
    FockVector left = *psi;
    for (int i = 0; i < j; ++i) left = apply_ladder(left, Ladder::lower);
    FockVector right = *psi;
    for (int i = 0; i < k; ++i) right = apply_ladder(right, Ladder::lower);
    const std::size_t n = std::min(left.cutoff(), right.cutoff());
    Complex sum{};
    for (std::size_t p = 0; p <= n; ++p) sum += std::conj(left[p]) * right[p];
    return sum;
  }
  // tr(rho a^{+j} a^k) = sum_p rho_{p+k, p+j} sqrt((p+j)!/p!) sqrt((p+k)!/p!)
  const auto& rho = std::get<DensityMatrix>(state).matrix();
  const auto dim = static_cast<std::size_t>(rho.rows());
  const std::size_t shift = static_cast<std::size_t>(std::max(j, k));
  Complex sum{};
  for (std::size_t p = 0; p + shift < dim; ++p) {
    sum += rho(static_cast<Eigen::Index>(p + k), static_cast<Eigen::Index>(p + j)) *
           (sqrt_falling_ratio(p, j) * sqrt_falling_ratio(p, k));
  }
  return sum;
}

double fidelity(const QuantumState& s1, const QuantumState& s2) {
  const std::size_t n = std::max(cutoff(s1), cutoff(s2));
  const auto* p1 = std::get_if<FockVector>(&s1);
  const auto* p2 = std::get_if<FockVector>(&s2);
  double f = 0.0;
  if (p1 && p2) {
    f = std::norm(to_eigen(*p1, n).dot(to_eigen(*p2, n)));
  } else if (p1 || p2) {
    const FockVector& psi = p1 ? *p1 : *p2;
    const DensityMatrix& rho = std::get<DensityMatrix>(p1 ? s2 : s1);
    const Eigen::VectorXcd v = to_eigen(psi, n);
    f = v.dot(rho.padded(n).matrix() * v).real();
  } else {
    const ComplexMatrix r = std::get<DensityMatrix>(s1).padded(n).matrix();
    const ComplexMatrix s = std::get<DensityMatrix>(s2).padded(n).matrix();
    const ComplexMatrix sr = psd_sqrt(r);
    const ComplexMatrix inner = sr * s * sr;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (inner + inner.adjoint()),
                                                    Eigen::EigenvaluesOnly);
    const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    f = t * t;
  }
  return std::clamp(f, 0.0, 1.0);
}

double tail_mass(const QuantumState& state, std::size_t m) {
  const auto p = populations(state);
  double sum = 0.0;
  // Smallest terms first.
  for (std::size_t n = p.size(); n-- > m;) sum += p[n];
  return sum;
}

}  // namespace fockgauge
