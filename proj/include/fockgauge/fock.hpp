#pragma once

// Truncated Fock-space representation of single-mode states.
//
// A FockVector stores amplitudes c_0..c_N of |psi> = sum_n c_n |n>. Ladder
// operators act exactly on the stored amplitudes, so any moment of a vector
// with finite support is exact; truncation only matters for vectors that
// approximate an infinite expansion (coherent, squeezed, ...), which carry the
// `truncated` origin flag. Mixed states are dense Hermitian matrices.

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace fockgauge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Whether the stored amplitudes are the complete state (finite support) or a
// cut-off approximation of an infinite Fock expansion.
enum class Origin { exact, truncated };

enum class Ladder { lower, raise };

class FockVector {
 public:
  // Normalizes the amplitudes. Throws ZeroNormError when the norm is below
  // 1e-13 and std::invalid_argument on an empty sequence.
  static FockVector normalized(std::vector<Complex> amplitudes,
                               Origin origin = Origin::exact);

  // Keeps the amplitudes as given; zero vectors are legal values.
  static FockVector unnormalized(std::vector<Complex> amplitudes,
                                 Origin origin = Origin::exact);

  std::size_t cutoff() const { return amplitudes_.size() - 1; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  // Zero beyond the cutoff.
  Complex operator[](std::size_t n) const {
    return n < amplitudes_.size() ? amplitudes_[n] : Complex{};
  }

  double norm_sq() const;
  bool is_normalized() const { return normalized_; }
  bool is_zero() const { return norm_sq() == 0.0; }
  Origin origin() const { return origin_; }

  // Copy zero-extended to `cutoff` (no-op when already at least that large).
  FockVector padded(std::size_t cutoff) const;

 private:
  FockVector(std::vector<Complex> amplitudes, bool normalized, Origin origin)
      : amplitudes_(std::move(amplitudes)),
        normalized_(normalized),
        origin_(origin) {}

  std::vector<Complex> amplitudes_;
  bool normalized_;
  Origin origin_;
};

class DensityMatrix {
 public:
  // Validates rho = rho^+ (1e-12), trace 1 (1e-12) and smallest eigenvalue
  // >= -1e-10; throws InvalidStateError otherwise.
  static DensityMatrix from_matrix(ComplexMatrix rho,
                                   Origin origin = Origin::exact);
  // |psi><psi| of a normalized vector.
  static DensityMatrix from_pure(const FockVector& psi);

  std::size_t cutoff() const { return static_cast<std::size_t>(rho_.rows()) - 1; }
  const ComplexMatrix& matrix() const { return rho_; }
  Origin origin() const { return origin_; }

  DensityMatrix padded(std::size_t cutoff) const;

 private:
  DensityMatrix(ComplexMatrix rho, Origin origin)
      : rho_(std::move(rho)), origin_(origin) {}

  ComplexMatrix rho_;
  Origin origin_;
};

using QuantumState = std::variant<FockVector, DensityMatrix>;

std::size_t cutoff(const QuantumState& state);
Origin origin(const QuantumState& state);
// Occupation probabilities p_0..p_N.
std::vector<double> populations(const QuantumState& state);

// a or a^+ applied to the amplitudes; never renormalized. Raising grows the
// cutoff by one; lowering the vacuum gives the zero vector.
FockVector apply_ladder(const FockVector& psi, Ladder kind);

// Highest supported j, k in normally_ordered_moment.
inline constexpr int kMaxMomentOrder = 4;

// <a^{+j} a^k>, exact on the stored state. Throws OrderTooHighError for
// j or k above kMaxMomentOrder. <n> = moment(1,1), <n^2> = moment(2,2) +
// moment(1,1).
Complex normally_ordered_moment(const QuantumState& state, int j, int k);

// |<s1|s2>|^2 for pure pairs, Uhlmann fidelity (tr sqrt(sqrt(r) s sqrt(r)))^2
// otherwise. States are zero-extended to a common cutoff.
double fidelity(const QuantumState& s1, const QuantumState& s2);

// sum_{n >= m} p_n; zero when m exceeds the cutoff.
double tail_mass(const QuantumState& state, std::size_t m);

}  // namespace fockgauge
