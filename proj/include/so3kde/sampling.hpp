#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "so3kde/rotation.hpp"
#include "so3kde/spectra.hpp"

namespace so3kde {

using RotationSample = std::vector<Rotationd>;

/// Reproducible random stream: std::mt19937_64 seeded through a std::seed_seq
/// filled by SplitMix64 from (seed, stream). Distinct stream indices give
/// independent streams for the same seed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) from the top 53 bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Haar-uniform rotation (Shoemake's construction).
Rotationd draw_uniform(RandomStream& rng);

RotationSample sample_uniform(std::size_t K, std::uint64_t seed, std::uint64_t stream = 0);

/// Thrown when a spectrum synthesizes to a function too negative to be a density.
class NegativeDensityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SamplerStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  /// Proposals where the target exceeded the envelope.
  std::uint64_t envelope_violations = 0;
  double acceptance_rate() const { return proposals ? double(accepted) / double(proposals) : 0.0; }
};

/// Rejection sampler for the zonal density sum_l (2l+1) a_l chi^l: axis uniform
/// on the sphere, angle from p(w) = (2/pi) f(w) sin^2(w/2) on [0, pi] against a
/// uniform proposal with envelope 1.01 max p over a 4096-point grid.
class ZonalSampler {
 public:
  static constexpr int kEnvelopeGrid = 4096;
  static constexpr double kEnvelopeSafety = 1.01;
  static constexpr double kNegativityLimit = -1e-6;

  /// Throws NegativeDensityError if the grid minimum of f is below -1e-6.
  /// Negative values above that limit are clamped to 0.
  explicit ZonalSampler(ZonalSpectrumd s);

  Rotationd draw(RandomStream& rng);
  double angle_density(double omega) const;
  double envelope() const { return envelope_; }
  /// Acceptance rate implied by the envelope, 1 / (pi envelope).
  double expected_acceptance() const;
  const SamplerStats& stats() const { return stats_; }
  const ZonalSpectrumd& spectrum() const { return s_; }

 private:
  ZonalSpectrumd s_;
  double envelope_ = 0;
  SamplerStats stats_;
};

RotationSample sample_zonal(const ZonalSpectrumd& s, std::size_t K, std::uint64_t seed,
                            std::uint64_t stream = 0, SamplerStats* stats = nullptr);

/// Draws from the mixture: a component is chosen by weight (label 0 is the
/// uniform part, label i+1 component i), and a zonal draw Y becomes center * Y.
RotationSample sample_mixture(const ZonalMixture& m, std::size_t K, std::uint64_t seed,
                              std::uint64_t stream = 0, std::vector<int>* labels = nullptr);

struct PropertyCheck {
  std::string name;
  int ell = 0;
  double observed = 0;
  double expected = 0;
  double standard_error = 0;
  /// |observed - expected| / standard_error, or the raw statistic for bounds.
  double z = 0;
  double limit = 3;
  bool passed = false;
};

struct CharacteristicReport {
  std::vector<PropertyCheck> checks;
  bool all_passed() const;
};

/// Monte-Carlo checks of characteristic-function properties on heat-kernel
/// samples: products of independent draws multiply coefficients, n-fold
/// products raise them to the n-th power, a uniform factor gives a uniform
/// product, and zonal samples have diagonal characteristic matrices.
CharacteristicReport validate_characteristic_properties(std::uint64_t seed, std::size_t K = 100000,
                                                        double rho = 0.1, double sigma = 0.2, int L = 5);

// "w,x,y,z" with a header row and 17 significant digits.
void write_sample_csv(std::ostream& os, const RotationSample& sample);
/// Rejects malformed rows and quaternions whose norm is off by more than
/// norm_tolerance, naming the line.
RotationSample read_sample_csv(std::istream& is, double norm_tolerance = 1e-6);

}  // namespace so3kde
