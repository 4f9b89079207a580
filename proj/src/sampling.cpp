#include "so3kde/sampling.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "so3kde/estimators.hpp"
#include "so3kde/kernels.hpp"

namespace so3kde {
namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Eigen::Vector3d draw_axis(RandomStream& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double a = 2.0 * kPi * rng.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(a), r * std::sin(a), z};
}

struct RunningMean {
  double sum = 0, sum_sq = 0;
  std::size_t n = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / double(n); }
  double standard_error() const {
    const double m = mean();
    const double var = std::max(0.0, (sum_sq / double(n) - m * m) * double(n) / double(n - 1));
    return std::sqrt(var / double(n));
  }
};

PropertyCheck z_check(std::string name, int ell, const RunningMean& r, double expected) {
  PropertyCheck c;
  c.name = std::move(name);
  c.ell = ell;
  c.observed = r.mean();
  c.expected = expected;
  c.standard_error = r.standard_error();
  c.z = std::abs(c.observed - expected) / c.standard_error;
  c.limit = 3;
  c.passed = c.z <= c.limit;
  return c;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); i += 2) {
    const std::uint64_t v = splitmix64(state);
    words[i] = std::uint32_t(v);
    words[i + 1] = std::uint32_t(v >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

Rotationd draw_uniform(RandomStream& rng) {
  const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double t2 = 2.0 * kPi * u2, t3 = 2.0 * kPi * u3;
  return Rotationd::from_wxyz(b * std::cos(t3), a * std::sin(t2), a * std::cos(t2), b * std::sin(t3));
}

RotationSample sample_uniform(std::size_t K, std::uint64_t seed, std::uint64_t stream) {
  if (K < 1) throw std::invalid_argument("sample_uniform: need K >= 1");
  RandomStream rng(seed, stream);
  RotationSample out;
  out.reserve(K);
  for (std::size_t k = 0; k < K; ++k) out.push_back(draw_uniform(rng));
  return out;
}

ZonalSampler::ZonalSampler(ZonalSpectrumd s) : s_(std::move(s)) {
  if (s_.empty()) throw std::invalid_argument("ZonalSampler: empty spectrum");
  double lo = 1e300, hi = 0;
  for (int i = 0; i < kEnvelopeGrid; ++i) {
    const double w = kPi * i / (kEnvelopeGrid - 1);
    lo = std::min(lo, zonal_synthesize(s_, w));
    hi = std::max(hi, angle_density(w));
  }
  if (lo < kNegativityLimit) {
    std::ostringstream os;
    os << "zonal spectrum is not a density: minimum " << lo << " below " << kNegativityLimit;
    throw NegativeDensityError(os.str());
  }
  if (!(hi > 0)) throw NegativeDensityError("zonal spectrum has no positive mass");
  envelope_ = kEnvelopeSafety * hi;
}

double ZonalSampler::angle_density(double omega) const {
  const double f = std::max(0.0, zonal_synthesize(s_, omega));
  const double s = std::sin(0.5 * omega);
  return 2.0 / kPi * f * s * s;
}

double ZonalSampler::expected_acceptance() const { return 1.0 / (kPi * envelope_); }

Rotationd ZonalSampler::draw(RandomStream& rng) {
  for (;;) {
    const double w = kPi * rng.uniform();
    const double u = rng.uniform();
    const double p = angle_density(w);
    ++stats_.proposals;
    if (p > envelope_) ++stats_.envelope_violations;
    if (u * envelope_ < p) {
      ++stats_.accepted;
      return from_axis_angle(draw_axis(rng), w);
    }
  }
}

RotationSample sample_zonal(const ZonalSpectrumd& s, std::size_t K, std::uint64_t seed, std::uint64_t stream,
                            SamplerStats* stats) {
  if (K < 1) throw std::invalid_argument("sample_zonal: need K >= 1");
  ZonalSampler sampler(s);
  RandomStream rng(seed, stream);
  RotationSample out;
  out.reserve(K);
  for (std::size_t k = 0; k < K; ++k) out.push_back(sampler.draw(rng));
  if (stats) *stats = sampler.stats();
  return out;
}

RotationSample sample_mixture(const ZonalMixture& m, std::size_t K, std::uint64_t seed, std::uint64_t stream,
                              std::vector<int>* labels) {
  if (K < 1) throw std::invalid_argument("sample_mixture: need K >= 1");
  std::vector<ZonalSampler> samplers;
  std::vector<double> cumulative{m.uniform_weight()};
  for (const auto& c : m.components()) {
    samplers.emplace_back(c.kernel);
    cumulative.push_back(cumulative.back() + c.weight);
  }
  RandomStream rng(seed, stream);
  RotationSample out;
  out.reserve(K);
  if (labels) {
    labels->clear();
    labels->reserve(K);
  }
  for (std::size_t k = 0; k < K; ++k) {
    const double u = rng.uniform() * cumulative.back();
    const auto pos = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    const int label = int(std::min<std::ptrdiff_t>(pos, std::ptrdiff_t(cumulative.size()) - 1));
    if (label == 0) {
      out.push_back(draw_uniform(rng));
    } else {
      out.push_back(compose(m.components()[label - 1].center, samplers[label - 1].draw(rng)));
    }
    if (labels) labels->push_back(label);
  }
  return out;
}

bool CharacteristicReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

CharacteristicReport validate_characteristic_properties(std::uint64_t seed, std::size_t K, double rho,
                                                        double sigma, int L) {
  ZonalSampler heat_rho(heat_coefficients(rho, heat_series_degree(rho, kDefaultMaxDegree)));
  ZonalSampler heat_sigma(heat_coefficients(sigma, heat_series_degree(sigma, kDefaultMaxDegree)));
  RandomStream rng(seed, 0);

  std::vector<RunningMean> product(L + 1), power(L + 1), with_uniform(L + 1);
  RotationSample zonal;
  zonal.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    const Rotationd x = heat_rho.draw(rng);
    const Rotationd y = heat_sigma.draw(rng);
    const Rotationd x2 = heat_rho.draw(rng), x3 = heat_rho.draw(rng);
    const Rotationd u = draw_uniform(rng);
    const auto chi_xy = characters(L, angle(compose(x, y)));
    const auto chi_pow = characters(L, angle(compose(compose(x, x2), x3)));
    const auto chi_u = characters(L, angle(compose(u, y)));
    for (int l = 1; l <= L; ++l) {
      product[l].add(chi_xy[l] / (2.0 * l + 1.0));
      power[l].add(chi_pow[l] / (2.0 * l + 1.0));
      with_uniform[l].add(chi_u[l]);
    }
    zonal.push_back(x);
  }

  CharacteristicReport report;
  const auto phi = characteristic_spectrum(zonal, L);
  for (int l = 1; l <= L; ++l) {
    const double lam = double(l) * (l + 1);
    report.checks.push_back(z_check("independent_product", l, product[l], std::exp(-lam * (rho + sigma))));
    report.checks.push_back(z_check("threefold_power", l, power[l], std::exp(-3.0 * lam * rho)));

    // Under Haar, chi^l has mean 0 and variance 1.
    PropertyCheck u;
    u.name = "uniform_factor";
    u.ell = l;
    u.observed = with_uniform[l].mean();
    u.standard_error = 1.0 / std::sqrt(double(K));
    u.z = std::abs(u.observed) / u.standard_error;
    u.limit = 4;
    u.passed = u.z <= u.limit;
    report.checks.push_back(u);

    PropertyCheck d;
    d.name = "zonal_offdiagonal";
    d.ell = l;
    Eigen::MatrixXcd off = phi[l];
    off.diagonal().setZero();
    d.observed = off.cwiseAbs().maxCoeff();
    d.standard_error = 1.0 / std::sqrt(double(K));
    d.z = d.observed / d.standard_error;
    d.limit = 5;
    d.passed = d.z <= d.limit;
    report.checks.push_back(d);
  }
  return report;
}

void write_sample_csv(std::ostream& os, const RotationSample& sample) {
  os << "w,x,y,z\n" << std::setprecision(17);
  for (const auto& r : sample) os << r.w() << ',' << r.x() << ',' << r.y() << ',' << r.z() << '\n';
}

RotationSample read_sample_csv(std::istream& is, double norm_tolerance) {
  RotationSample out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.find_first_of("wW") == 0) continue;
    try {
      out.push_back(parse_rotation(line, norm_tolerance));
    } catch (const std::exception& e) {
      throw std::invalid_argument("sample csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace so3kde
