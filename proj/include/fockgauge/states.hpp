#pragma once

// Factories for the state families: coherent, Fock, displaced squeezed,
// crescent (intelligent) states in two independent constructions,
// photon-added coherent states, the strong-field two-term approximation,
// two-component cats and seeded random ensembles.

#include <cstdint>
#include <optional>

#include "fockgauge/fock.hpp"

namespace fockgauge {

inline constexpr double kDefaultEpsTail = 1e-14;
inline constexpr std::size_t kDefaultMaxCutoff = 4096;

// Cutoff selection for states that approximate an infinite Fock expansion.
// The cutoff is the smallest N0 for which the discarded amplitude tail has
// norm below eps_tail (probability mass below eps_tail^2), plus a margin of
// four levels so that moments up to a^{+2}a^2 never touch the boundary.
struct TruncationPolicy {
  double eps_tail = kDefaultEpsTail;
  std::size_t max_cutoff = kDefaultMaxCutoff;

  // Throws std::invalid_argument unless eps_tail is in (0, 1e-6].
  void validate() const;
};

enum class CrescentMethod { operator_form, laguerre };

FockVector coherent(Complex alpha, const TruncationPolicy& policy = {});

FockVector fock(std::size_t n, std::size_t max_cutoff = kDefaultMaxCutoff);

// D(alpha) S(xi) |0> with xi = r e^{i phi_s}. The squeezing convention is
// S^+ a S = a cosh r + a^+ e^{i phi_s} sinh r, so phi_s = 0 stretches the
// theta = 0 quadrature x and squeezes p. Requires |r| <= 3.
FockVector squeezed_coherent(Complex alpha, double r, double phi_s,
                             const TruncationPolicy& policy = {});

// N (a^+ + alpha^*)^M |alpha>. Requires M <= 16.
FockVector crescent(Complex alpha, int M,
                    CrescentMethod method = CrescentMethod::operator_form,
                    const TruncationPolicy& policy = {});

// N a^{+M} |alpha>. Requires M <= 16.
FockVector photon_added(Complex alpha, int M, const TruncationPolicy& policy = {});

struct StrongFieldState {
  FockVector state;
  // 1 + gamma^* alpha + gamma alpha^* + |gamma|^2 (1 + |alpha|^2)
  double inverse_norm_analytic;
  // || |alpha> + gamma a^+ |alpha> ||^2 from the constructed amplitudes
  double inverse_norm_numeric;
};

// N (|alpha> + gamma a^+ |alpha>). Throws ZeroNormError on cancellation.
StrongFieldState approx_strong_field(Complex alpha, Complex gamma,
                                     const TruncationPolicy& policy = {});

// N (|alpha> + e^{i beta} |-alpha>). Throws ZeroNormError on cancellation.
FockVector cat(Complex alpha, double beta, const TruncationPolicy& policy = {});

enum class RandomKind { pure, mixed };

// pure: iid complex Gaussian amplitudes, normalized (unitarily invariant on
// the truncated sphere). mixed: G G^+ / tr(G G^+) with G an
// (cutoff+1) x rank complex Ginibre matrix. Deterministic in `seed`.
QuantumState random_state(std::size_t cutoff, RandomKind kind, std::size_t rank,
                          std::uint64_t seed);

// Derives a well-mixed per-item seed from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Generalized Laguerre polynomial L_n^a(x) for integer a. Three-term
// recurrence in n; for -n <= a < 0 the recurrence cancels catastrophically,
// so the value is taken from L_n^a(x) = (-x)^{-a} (n+a)!/n! L_{n+a}^{-a}(x),
// which runs the same recurrence with a positive upper index.
double laguerre(std::size_t n, int a, double x);

enum class StateKind {
  coherent,
  fock,
  squeezed_coherent,
  crescent,
  photon_added,
  approx_strong_field,
  cat,
  random_pure,
  random_mixed
};

// Parameter record for one state family; only the fields relevant to `kind`
// are consulted (the JSON reader rejects the rest).
struct StateSpec {
  StateKind kind = StateKind::coherent;
  Complex alpha{};
  std::size_t n = 0;
  int M = 0;
  double r = 0.0;
  double phi_s = 0.0;
  Complex gamma{};
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::size_t rank = 1;
  std::size_t cutoff = 0;
  CrescentMethod method = CrescentMethod::operator_form;
  double eps_tail = kDefaultEpsTail;
};

QuantumState build_state(const StateSpec& spec, std::size_t max_cutoff = kDefaultMaxCutoff);

}  // namespace fockgauge
