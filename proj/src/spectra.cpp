#include "so3kde/spectra.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace so3kde {

FullSpectrum::FullSpectrum(int bandlimit) {
  if (bandlimit < 0) throw std::invalid_argument("FullSpectrum: negative bandlimit");
  blocks_.resize(bandlimit + 1);
  for (int l = 0; l <= bandlimit; ++l) blocks_[l].setZero(2 * l + 1, 2 * l + 1);
}

FullSpectrum::FullSpectrum(std::vector<Eigen::MatrixXcd> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    const auto n = static_cast<Eigen::Index>(2 * l + 1);
    if (blocks_[l].rows() != n || blocks_[l].cols() != n) {
      throw std::invalid_argument("FullSpectrum: block " + std::to_string(l) + " has wrong shape");
    }
  }
}

std::size_t FullSpectrum::coefficient_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += static_cast<std::size_t>(b.size());
  return n;
}

FullSpectrum FullSpectrum::truncated(int L) const {
  std::vector<Eigen::MatrixXcd> out(blocks_.begin(),
                                    blocks_.begin() + std::min<int>(L + 1, blocks_.size()));
  return FullSpectrum(std::move(out));
}

FullSpectrum apply_zonal(const FullSpectrum& f, const ZonalSpectrumd& s) {
  FullSpectrum out = f;
  for (int l = 0; l <= f.bandlimit(); ++l) out[l] *= s[l];
  return out;
}

Eigen::VectorXd energy_per_degree(const FullSpectrum& f) {
  Eigen::VectorXd e(f.bandlimit() + 1);
  for (int l = 0; l <= f.bandlimit(); ++l) e[l] = f[l].squaredNorm() / (2.0 * l + 1.0);
  return e;
}

FullSpectrum translated_spectrum(const ZonalSpectrumd& s, const Rotationd& g, int L) {
  auto d = wigner_d_matrices(L, g);
  for (int l = 0; l <= L; ++l) d[l] = s[l] * d[l].conjugate();
  return FullSpectrum(std::move(d));
}

ZonalMixture::ZonalMixture(double uniform_weight, std::vector<MixtureComponent> components)
    : uniform_weight_(uniform_weight), components_(std::move(components)) {
  if (uniform_weight_ < 0) throw std::invalid_argument("mixture: negative uniform weight");
  double total = uniform_weight_;
  for (const auto& c : components_) {
    if (!(c.weight > 0)) throw std::invalid_argument("mixture: component weights must be positive");
    if (c.kernel.empty() || std::abs(c.kernel[0] - 1.0) > 1e-12) {
      throw std::invalid_argument("mixture: component kernel must have a_0 = 1");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "mixture: weights sum to " << std::setprecision(17) << total << ", expected 1";
    throw std::invalid_argument(os.str());
  }
}

int ZonalMixture::bandlimit() const {
  int L = 0;
  for (const auto& c : components_) L = std::max(L, c.kernel.degree());
  return L;
}

Eigen::VectorXd mixture_energy_per_degree(const ZonalMixture& m, int L) {
  check_degree(L);
  const auto& comps = m.components();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(L + 1);
  e[0] = 1.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (int l = 1; l <= L; ++l) {
      const double t = comps[i].weight * comps[i].kernel[l];
      e[l] += t * t;
    }
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      const double omega = distance(comps[i].center, comps[j].center);
      const auto chi = characters(L, omega);
      const double wij = 2.0 * comps[i].weight * comps[j].weight;
      for (int l = 1; l <= L; ++l) {
        e[l] += wij * comps[i].kernel[l] * comps[j].kernel[l] * chi[l] / (2.0 * l + 1.0);
      }
    }
  }
  return e;
}

FullSpectrum mixture_spectrum(const ZonalMixture& m, int L) {
  FullSpectrum f(L);
  f[0](0, 0) = m.uniform_weight();
  for (const auto& c : m.components()) {
    const auto d = wigner_d_matrices(L, c.center);
    for (int l = 0; l <= L; ++l) f[l] += (c.weight * c.kernel[l]) * d[l].conjugate();
  }
  return f;
}

double mixture_evaluate(const ZonalMixture& m, const Rotationd& x) {
  double v = m.uniform_weight();
  for (const auto& c : m.components()) v += c.weight * zonal_synthesize(c.kernel, distance(c.center, x));
  return v;
}

void write_zonal_spectrum_csv(std::ostream& os, const ZonalSpectrumd& s) {
  os << "ell,coeff\n" << std::setprecision(17);
  for (int l = 0; l <= s.degree(); ++l) os << l << ',' << s[l] << '\n';
}

ZonalSpectrumd read_zonal_spectrum_csv(std::istream& is) {
  std::string line;
  std::vector<double> values;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line_no == 1 && line.rfind("ell", 0) == 0) continue;
    std::istringstream ls(line);
    int ell = -1;
    char comma = 0;
    double v = 0;
    if (!(ls >> ell >> comma >> v) || comma != ',') {
      throw std::invalid_argument("zonal spectrum csv: malformed line " + std::to_string(line_no));
    }
    if (ell != static_cast<int>(values.size())) {
      throw std::invalid_argument("zonal spectrum csv: degrees must be consecutive from 0 (line " +
                                  std::to_string(line_no) + ")");
    }
    values.push_back(v);
  }
  return ZonalSpectrumd(Eigen::Map<Eigen::VectorXd>(values.data(), Eigen::Index(values.size())));
}

}  // namespace so3kde
