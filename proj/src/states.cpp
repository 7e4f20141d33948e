#include "fockgauge/states.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "fockgauge/errors.hpp"

namespace fockgauge {

namespace {

constexpr int kMaxPhotonAddition = 16;
constexpr double kMaxSqueezing = 3.0;
constexpr std::size_t kMaxRandomCutoff = 256;
// Levels kept beyond the eps_tail point.
constexpr std::size_t kBoundaryMargin = 4;
constexpr std::size_t kInitialProbe = 32;
// Rescale threshold for recurrences that can grow without bound.
constexpr double kRescaleAbove = 1e250;

using Generator = std::function<std::vector<Complex>(std::size_t)>;

struct Truncated {
  FockVector state;
  // Retained sum |c_n|^2 in the generator's own scale.
  double raw_norm_sq;
};

// Evaluates `gen` on growing probe lengths until the expansion has visibly
// decayed, then cuts it at the eps_tail point plus kBoundaryMargin.
Truncated truncate_expansion(const Generator& gen, const TruncationPolicy& policy,
                             const char* what) {
  policy.validate();
  const double tail_budget = policy.eps_tail * policy.eps_tail;
  std::size_t probe = std::min(kInitialProbe, policy.max_cutoff);
  // Support end seen on the previous probe; a zero tail is trusted only once
  // a longer probe reproduces it.
  std::optional<std::size_t> support_end;
  for (;;) {
    std::vector<Complex> amps = gen(probe);
    const std::size_t len = amps.size();
    std::vector<double> suffix(len + 1, 0.0);
    for (std::size_t n = len; n-- > 0;) suffix[n] = suffix[n + 1] + std::norm(amps[n]);
    const double total = suffix[0];
    if (!std::isfinite(total)) {
      throw std::overflow_error(std::string(what) + ": amplitude overflow");
    }
    std::size_t n0 = 0;
    while (suffix[n0 + 1] > tail_budget * total) ++n0;
    const std::size_t cut = n0 + kBoundaryMargin;
    const std::size_t headroom = std::max<std::size_t>(8, (len - 1) / 4);
    const bool decayed = cut + headroom <= len - 1;

    if (!(std::sqrt(total) >= 1e-13)) {
      // A vanishing window is either a cancellation or the near side of an
      // expansion whose bulk lies beyond the probe.
      if (total > 0.0 && decayed) {
        throw ZeroNormError(std::string(what) + ": superposition cancels (norm below 1e-13)");
      }
      if (probe < policy.max_cutoff) {
        probe = std::min(probe * 2, policy.max_cutoff);
        continue;
      }
      if (total > 0.0) {
        throw CutoffExplosionError(std::string(what) + ": required cutoff exceeds " +
                                   std::to_string(policy.max_cutoff));
      }
      throw ZeroNormError(std::string(what) + ": superposition cancels (norm below 1e-13)");
    }
    const bool zero_tail = n0 + 1 < len && suffix[n0 + 1] == 0.0;
    if (zero_tail && (support_end == n0 || probe >= policy.max_cutoff)) {
      // Finite support: nothing was discarded.
      amps.resize(n0 + 1);
      const double kept = suffix[0] - suffix[n0 + 1];
      return {FockVector::normalized(std::move(amps), Origin::exact), kept};
    }
    if (zero_tail) {
      support_end = n0;
      probe = std::min(probe * 2, policy.max_cutoff);
      continue;
    }
    support_end.reset();
    if (decayed || probe >= policy.max_cutoff) {
      if (cut > policy.max_cutoff || cut > len - 1) {
        throw CutoffExplosionError(std::string(what) + ": required cutoff exceeds " +
                                   std::to_string(policy.max_cutoff));
      }
      amps.resize(cut + 1);
      const double kept = suffix[0] - suffix[cut + 1];
      return {FockVector::normalized(std::move(amps), Origin::truncated), kept};
    }
    probe = std::min(probe * 2, policy.max_cutoff);
  }
}

// e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n = 0..len-1, in log space so the
// bulk near n ~ |alpha|^2 never under- or overflows.
std::vector<Complex> coherent_amplitudes(Complex alpha, std::size_t len) {
  std::vector<Complex> c(len);
  const double mod = std::abs(alpha);
  if (mod == 0.0) {
    if (len > 0) c[0] = 1.0;
    return c;
  }
  const double log_mod = std::log(mod);
  const double phase = std::arg(alpha);
  const double half_mean = 0.5 * mod * mod;
  for (std::size_t n = 0; n < len; ++n) {
    const double nd = static_cast<double>(n);
    const double log_mag = nd * log_mod - 0.5 * std::lgamma(nd + 1.0) - half_mean;
    c[n] = std::polar(std::exp(log_mag), nd * phase);
  }
  return c;
}

FockVector add_scaled(const FockVector& a, const FockVector& b, Complex scale_b) {
  const std::size_t n = std::max(a.cutoff(), b.cutoff());
  std::vector<Complex> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a[i] + scale_b * b[i];
  return FockVector::unnormalized(std::move(out));
}

void check_photon_count(int M, const char* what) {
  if (M < 0 || M > kMaxPhotonAddition) {
    throw std::invalid_argument(std::string(what) + ": M must be in [0, 16]");
  }
}

std::vector<Complex> to_vector(const FockVector& v) {
  return {v.amplitudes().begin(), v.amplitudes().end()};
}

double laguerre_recurrence(std::size_t n, int a, double x) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + a - x;
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = ((2.0 * kd + 1.0 + a - x) * cur - (kd + a) * prev) / (kd + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

void TruncationPolicy::validate() const {
  if (!(eps_tail > 0.0 && eps_tail <= 1e-6)) {
    throw std::invalid_argument("eps_tail must lie in (0, 1e-6], got " + std::to_string(eps_tail));
  }
  if (max_cutoff == 0) throw std::invalid_argument("max_cutoff must be positive");
}

FockVector coherent(Complex alpha, const TruncationPolicy& policy) {
  return truncate_expansion([&](std::size_t len) { return coherent_amplitudes(alpha, len + 1); },
                            policy, "coherent")
      .state;
}

FockVector fock(std::size_t n, std::size_t max_cutoff) {
  if (n > max_cutoff) {
    throw CutoffExplosionError("fock: n = " + std::to_string(n) + " exceeds maximum cutoff " +
                               std::to_string(max_cutoff));
  }
  std::vector<Complex> amps(n + 1);
  amps[n] = 1.0;
  return FockVector::normalized(std::move(amps));
}

FockVector squeezed_coherent(Complex alpha, double r, double phi_s,
                             const TruncationPolicy& policy) {
  if (!(std::abs(r) <= kMaxSqueezing)) {
    throw std::invalid_argument("squeezed_coherent: |r| must not exceed 3");
  }
  const double mu = std::cosh(r);
  const Complex nu = std::polar(std::sinh(r), phi_s);
  const Complex ratio = nu / mu;
  const Complex drive = alpha - ratio * std::conj(alpha);
  // Phase of <0|D(alpha)S(xi)|0> = e^{-|alpha|^2/2 + nu alpha^*2 / (2 mu)} / sqrt(mu).
  const Complex vacuum_phase = std::polar(1.0, 0.5 * std::imag(ratio * std::conj(alpha) * std::conj(alpha)));

  auto gen = [&](std::size_t cutoff) {
    // Annihilated by mu (a - alpha) - nu (a^+ - alpha^*):
    // sqrt(n+1) c_{n+1} = drive c_n + (nu/mu) sqrt(n) c_{n-1}
    std::vector<Complex> c(cutoff + 1);
    c[0] = vacuum_phase;
    for (std::size_t n = 0; n < cutoff; ++n) {
      const double nd = static_cast<double>(n);
      Complex next = drive * c[n];
      if (n > 0) next += ratio * std::sqrt(nd) * c[n - 1];
      c[n + 1] = next / std::sqrt(nd + 1.0);
      if (std::abs(c[n + 1]) > kRescaleAbove) {
        for (std::size_t i = 0; i <= n + 1; ++i) c[i] /= kRescaleAbove;
      }
    }
    return c;
  };
  return truncate_expansion(gen, policy, "squeezed_coherent").state;
}

FockVector crescent(Complex alpha, int M, CrescentMethod method, const TruncationPolicy& policy) {
  check_photon_count(M, "crescent");
  if (method == CrescentMethod::operator_form) {
    auto gen = [&](std::size_t cutoff) {
      FockVector psi = FockVector::unnormalized(coherent_amplitudes(alpha, cutoff + 1));
      for (int i = 0; i < M; ++i) {
        psi = add_scaled(apply_ladder(psi, Ladder::raise), psi, std::conj(alpha));
      }
      return to_vector(psi);
    };
    return truncate_expansion(gen, policy, "crescent").state;
  }

  // Fock expansion: c_n = sqrt(n!)/M! alpha^{*(M-n)} L_n^{M-n}(-|alpha|^2) e^{-|alpha|^2/2}.
  // For n > M the reflected form alpha^{n-M}/sqrt(n!) L_M^{n-M}(-|alpha|^2) is
  // used directly so that the small-alpha prefactors never under/overflow.
  const double mod = std::abs(alpha);
  const double x = -mod * mod;
  const double log_mod = mod > 0.0 ? std::log(mod) : -std::numeric_limits<double>::infinity();
  const double phase = std::arg(alpha);
  const double log_m_fact = std::lgamma(M + 1.0);
  auto gen = [&](std::size_t cutoff) {
    std::vector<Complex> c(cutoff + 1);
    for (std::size_t n = 0; n <= cutoff; ++n) {
      const double nd = static_cast<double>(n);
      const int power = M - static_cast<int>(n);
      const double log_pow = power == 0 ? 0.0 : std::abs(power) * log_mod;
      if (power >= 0) {
        const double log_mag = 0.5 * std::lgamma(nd + 1.0) - log_m_fact + log_pow + 0.5 * x;
        // alpha^{*power} carries phase -power * arg(alpha)
        c[n] = std::polar(std::exp(log_mag), -power * phase) * laguerre(n, power, x);
      } else {
        const double log_mag = log_pow - 0.5 * std::lgamma(nd + 1.0) + 0.5 * x;
        c[n] = std::polar(std::exp(log_mag), -power * phase) *
               laguerre(static_cast<std::size_t>(M), -power, x);
      }
    }
    return c;
  };
  return truncate_expansion(gen, policy, "crescent").state;
}

FockVector photon_added(Complex alpha, int M, const TruncationPolicy& policy) {
  check_photon_count(M, "photon_added");
  auto gen = [&](std::size_t cutoff) {
    FockVector psi = FockVector::unnormalized(coherent_amplitudes(alpha, cutoff + 1));
    for (int i = 0; i < M; ++i) psi = apply_ladder(psi, Ladder::raise);
    return to_vector(psi);
  };
  return truncate_expansion(gen, policy, "photon_added").state;
}

StrongFieldState approx_strong_field(Complex alpha, Complex gamma, const TruncationPolicy& policy) {
  auto gen = [&](std::size_t cutoff) {
    const FockVector coh = FockVector::unnormalized(coherent_amplitudes(alpha, cutoff + 1));
    return to_vector(add_scaled(coh, apply_ladder(coh, Ladder::raise), gamma));
  };
  Truncated t = truncate_expansion(gen, policy, "approx_strong_field");
  const double analytic = 1.0 + 2.0 * std::real(std::conj(gamma) * alpha) +
                          std::norm(gamma) * (1.0 + std::norm(alpha));
  return {std::move(t.state), analytic, t.raw_norm_sq};
}

FockVector cat(Complex alpha, double beta, const TruncationPolicy& policy) {
  const Complex rel = std::polar(1.0, beta);
  auto gen = [&](std::size_t cutoff) {
    std::vector<Complex> c = coherent_amplitudes(alpha, cutoff + 1);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] *= 1.0 + (n % 2 == 0 ? rel : -rel);
    return c;
  };
  return truncate_expansion(gen, policy, "cat").state;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

QuantumState random_state(std::size_t cutoff, RandomKind kind, std::size_t rank,
                          std::uint64_t seed) {
  if (cutoff > kMaxRandomCutoff) {
    throw std::invalid_argument("random_state: cutoff must not exceed 256");
  }
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  auto draw = [&] {
    const double re = normal(engine);
    const double im = normal(engine);
    return Complex{re, im};
  };
  if (kind == RandomKind::pure) {
    std::vector<Complex> amps(cutoff + 1);
    for (auto& c : amps) c = draw();
    return FockVector::normalized(std::move(amps));
  }
  if (rank < 1 || rank > cutoff + 1) {
    throw std::invalid_argument("random_state: rank must lie in [1, cutoff + 1]");
  }
  const auto dim = static_cast<Eigen::Index>(cutoff + 1);
  ComplexMatrix g(dim, static_cast<Eigen::Index>(rank));
  for (Eigen::Index col = 0; col < g.cols(); ++col) {
    for (Eigen::Index row = 0; row < dim; ++row) g(row, col) = draw();
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(std::move(rho));
}

double laguerre(std::size_t n, int a, double x) {
  const long long upper = static_cast<long long>(n) + a;
  if (a < 0 && upper >= 0) {
    if (x == 0.0) return 0.0;
    const auto m = static_cast<std::size_t>(upper);
    const int k = -a;
    const double base = -x;
    const double sign = (base < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
    const double log_pref = k * std::log(std::abs(base)) + std::lgamma(static_cast<double>(m) + 1.0) -
                            std::lgamma(static_cast<double>(n) + 1.0);
    return sign * std::exp(log_pref) * laguerre_recurrence(m, k, x);
  }
  return laguerre_recurrence(n, a, x);
}

QuantumState build_state(const StateSpec& spec, std::size_t max_cutoff) {
  const TruncationPolicy policy{spec.eps_tail, max_cutoff};
  switch (spec.kind) {
    case StateKind::coherent:
      return coherent(spec.alpha, policy);
    case StateKind::fock:
      return fock(spec.n, max_cutoff);
    case StateKind::squeezed_coherent:
      return squeezed_coherent(spec.alpha, spec.r, spec.phi_s, policy);
    case StateKind::crescent:
      return crescent(spec.alpha, spec.M, spec.method, policy);
    case StateKind::photon_added:
      return photon_added(spec.alpha, spec.M, policy);
    case StateKind::approx_strong_field:
      return approx_strong_field(spec.alpha, spec.gamma, policy).state;
    case StateKind::cat:
      return cat(spec.alpha, spec.beta, policy);
    case StateKind::random_pure:
      return random_state(spec.cutoff, RandomKind::pure, 1, spec.seed);
    case StateKind::random_mixed:
      return random_state(spec.cutoff, RandomKind::mixed, spec.rank, spec.seed);
  }
  throw std::invalid_argument("build_state: unknown kind");
}

}  // namespace fockgauge
