#include "so3kde/transform.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "so3kde/quadrature.hpp"

namespace so3kde {
namespace {

using cd = std::complex<double>;

// E(i, n + L) = exp(sign * i n x_i).
Eigen::MatrixXcd fourier_matrix(const Eigen::VectorXd& x, int L, double sign) {
  Eigen::MatrixXcd e(x.size(), 2 * L + 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (int n = -L; n <= L; ++n) e(i, n + L) = std::polar(1.0, sign * n * x[i]);
  }
  return e;
}

Eigen::Map<const Eigen::MatrixXd> slab(const Eigen::VectorXd& values, const QuadratureGrid& grid, int j) {
  return {values.data() + std::size_t(j) * grid.slab_size(), grid.n_phi(), grid.n_psi()};
}

// Complex grid synthesis: slab j is conj(E_phi) H_j conj(E_psi)^T.
template <typename Sink>
void synthesize_slabs(const FullSpectrum& f, const QuadratureGrid& grid, Sink&& sink) {
  const int L = f.bandlimit();
  if (L < 0) throw std::invalid_argument("synthesize_on_grid: empty spectrum");
  const Eigen::MatrixXcd e_phi = fourier_matrix(grid.phi(), L, -1.0);
  const Eigen::MatrixXcd e_psi_t = fourier_matrix(grid.psi(), L, -1.0).transpose();
  Eigen::MatrixXcd h(2 * L + 1, 2 * L + 1);
  for (int j = 0; j < grid.n_theta(); ++j) {
    const WignerSmallD d(L, grid.theta()[j], std::max(L, kDefaultMaxDegree));
    h.setZero();
    for (int l = 0; l <= L; ++l) {
      const int size = 2 * l + 1;
      h.block(L - l, L - l, size, size) += (2.0 * l + 1.0) * f[l].cwiseProduct(d.degree_matrix(l).cast<cd>());
    }
    sink(j, Eigen::MatrixXcd(e_phi * h * e_psi_t));
  }
}

}  // namespace

QuadratureGrid::QuadratureGrid(int L, std::size_t max_nodes) : L_(L) {
  if (L < 0) throw std::invalid_argument("QuadratureGrid: negative bandlimit");
  const std::size_t n_angle = std::size_t(2 * L + 2);
  const std::size_t nodes = n_angle * n_angle * std::size_t(L + 1);
  if (nodes > max_nodes) {
    throw std::length_error("QuadratureGrid: bandlimit " + std::to_string(L) + " needs " +
                            std::to_string(nodes) + " nodes, limit is " + std::to_string(max_nodes));
  }
  const double two_pi = 2.0 * std::numbers::pi;
  phi_.resize(Eigen::Index(n_angle));
  for (std::size_t i = 0; i < n_angle; ++i) phi_[Eigen::Index(i)] = two_pi * double(i) / double(n_angle);
  psi_ = phi_;

  const auto rule = gauss_legendre(L + 1);
  theta_.resize(L + 1);
  theta_weight_.resize(L + 1);
  for (int j = 0; j <= L; ++j) {
    // Ascending theta: largest cos first.
    theta_[j] = std::acos(rule.nodes[L - j]);
    theta_weight_[j] = 0.5 * rule.weights[L - j];
  }
}

double integrate(const QuadratureGrid& grid, const Eigen::VectorXd& values) {
  if (std::size_t(values.size()) != grid.size()) {
    throw std::invalid_argument("integrate: value count does not match the grid");
  }
  double sum = 0;
  for (int j = 0; j < grid.n_theta(); ++j) sum += grid.node_weight(j) * slab(values, grid, j).sum();
  return sum;
}

double grid_orthogonality_error(const QuadratureGrid& grid, int L) {
  check_degree(L);
  // Equispaced sums of exp(i k x) for k != 0 must vanish.
  double err = 0;
  for (int k = 1; k <= 2 * L; ++k) {
    cd s_phi = 0, s_psi = 0;
    for (int i = 0; i < grid.n_phi(); ++i) s_phi += std::polar(1.0, k * grid.phi()[i]);
    for (int i = 0; i < grid.n_psi(); ++i) s_psi += std::polar(1.0, k * grid.psi()[i]);
    err = std::max({err, std::abs(s_phi) / grid.n_phi(), std::abs(s_psi) / grid.n_psi()});
  }
  // With n, m matched, the polar sums must give delta_{ll'} / (2l+1).
  std::vector<WignerSmallD> tables;
  tables.reserve(grid.n_theta());
  for (int j = 0; j < grid.n_theta(); ++j) tables.emplace_back(L, grid.theta()[j]);
  for (int n = -L; n <= L; ++n) {
    for (int m = -L; m <= L; ++m) {
      const int lo = std::max(std::abs(n), std::abs(m));
      for (int l = lo; l <= L; ++l) {
        for (int lp = l; lp <= L; ++lp) {
          double s = 0;
          for (int j = 0; j < grid.n_theta(); ++j) {
            s += grid.theta_weights()[j] * tables[j](l, n, m) * tables[j](lp, n, m);
          }
          const double expected = (l == lp) ? 1.0 / (2.0 * l + 1.0) : 0.0;
          err = std::max(err, std::abs(s - expected));
        }
      }
    }
  }
  return err;
}

FullSpectrum forward(const Eigen::VectorXd& values, const QuadratureGrid& grid, int L) {
  if (L < 0) L = grid.bandlimit();
  if (L > grid.bandlimit()) {
    throw std::invalid_argument("forward: degree " + std::to_string(L) + " exceeds grid bandlimit " +
                                std::to_string(grid.bandlimit()));
  }
  if (std::size_t(values.size()) != grid.size()) {
    throw std::invalid_argument("forward: value count does not match the grid");
  }
  const Eigen::MatrixXcd e_phi_t = fourier_matrix(grid.phi(), L, 1.0).transpose();
  const Eigen::MatrixXcd e_psi = fourier_matrix(grid.psi(), L, 1.0);
  FullSpectrum out(L);
  for (int j = 0; j < grid.n_theta(); ++j) {
    const Eigen::MatrixXcd g = e_phi_t * slab(values, grid, j).cast<cd>() * e_psi;
    const WignerSmallD d(L, grid.theta()[j]);
    const double w = grid.node_weight(j);
    for (int l = 0; l <= L; ++l) {
      const int size = 2 * l + 1;
      out[l] += w * g.block(L - l, L - l, size, size).cwiseProduct(d.degree_matrix(l).cast<cd>());
    }
  }
  return out;
}

std::complex<double> synthesize_complex(const FullSpectrum& f, const Rotationd& x) {
  const auto d = wigner_d_matrices(f.bandlimit(), x, std::max(f.bandlimit(), kDefaultMaxDegree));
  cd v = 0;
  for (int l = 0; l <= f.bandlimit(); ++l) v += (2.0 * l + 1.0) * f[l].cwiseProduct(d[l]).sum();
  return v;
}

double synthesize(const FullSpectrum& f, const Rotationd& x) { return synthesize_complex(f, x).real(); }

Eigen::VectorXd synthesize_on_grid(const FullSpectrum& f, const QuadratureGrid& grid) {
  Eigen::VectorXd out(Eigen::Index(grid.size()));
  synthesize_slabs(f, grid, [&](int j, const Eigen::MatrixXcd& s) {
    Eigen::Map<Eigen::MatrixXd>(out.data() + std::size_t(j) * grid.slab_size(), grid.n_phi(), grid.n_psi()) =
        s.real();
  });
  return out;
}

double synthesis_imaginary_residue(const FullSpectrum& f, const QuadratureGrid& grid) {
  double r = 0;
  synthesize_slabs(f, grid, [&](int, const Eigen::MatrixXcd& s) { r = std::max(r, s.imag().cwiseAbs().maxCoeff()); });
  return r;
}

FullSpectrum wavelet_transform_spectrum(const FullSpectrum& f, const WaveletFamily& w) {
  return apply_zonal(f, wavelet_coefficients(w));
}

Eigen::VectorXd wavelet_transform_on_grid(const FullSpectrum& f, const WaveletFamily& w,
                                          const QuadratureGrid& grid) {
  return synthesize_on_grid(wavelet_transform_spectrum(f, w), grid);
}

ScaleGrid log_scale_grid(double t_min, double tail, int per_octave) {
  if (!(t_min > 0)) throw std::invalid_argument("log_scale_grid: t_min must be positive");
  if (!(tail > 0 && tail < 1)) throw std::invalid_argument("log_scale_grid: tail must be in (0, 1)");
  if (per_octave < 1) throw std::invalid_argument("log_scale_grid: per_octave must be positive");
  const double t_max = -std::log(tail) / 2.0;
  int K = std::max(2, int(std::ceil(per_octave * std::log2(std::max(t_max / t_min, 1.0)))));
  if (K % 2) ++K;
  const double h = std::log(2.0) / per_octave;
  ScaleGrid g;
  g.t.resize(K + 1);
  g.weights.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    g.t[k] = t_min * std::exp2(double(k) / per_octave);
    const double simpson = (k == 0 || k == K) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    g.weights[k] = h / 3.0 * simpson * g.t[k];
  }
  return g;
}

FullSpectrum wavelet_inverse_spectrum(const std::vector<Eigen::VectorXd>& wt, const ScaleGrid& scales,
                                      const QuadratureGrid& grid, int truncation) {
  if (wt.size() != std::size_t(scales.t.size())) {
    throw std::invalid_argument("wavelet_inverse: one coefficient set per scale required");
  }
  FullSpectrum acc(grid.bandlimit());
  for (std::size_t k = 0; k < wt.size(); ++k) {
    const double t = scales.t[Eigen::Index(k)];
    const auto psi = wavelet_coefficients({t, truncation});
    const double a = alpha(t, truncation);
    const FullSpectrum s = forward(wt[k], grid);
    const double w = scales.weights[Eigen::Index(k)] * a;
    for (int l = 1; l <= grid.bandlimit(); ++l) acc[l] += (w * psi[l]) * s[l];
  }
  acc[0](0, 0) = 1.0;
  return acc;
}

Eigen::VectorXd wavelet_inverse(const std::vector<Eigen::VectorXd>& wt, const ScaleGrid& scales,
                                const QuadratureGrid& grid, int truncation) {
  return synthesize_on_grid(wavelet_inverse_spectrum(wt, scales, grid, truncation), grid);
}

void write_full_spectrum_csv(std::ostream& os, const FullSpectrum& f) {
  os << "ell,n,m,re,im\n" << std::setprecision(17);
  for (int l = 0; l <= f.bandlimit(); ++l) {
    for (int n = -l; n <= l; ++n) {
      for (int m = -l; m <= l; ++m) {
        const cd v = f[l](n + l, m + l);
        os << l << ',' << n << ',' << m << ',' << v.real() << ',' << v.imag() << '\n';
      }
    }
  }
}

FullSpectrum read_full_spectrum_csv(std::istream& is) {
  struct Row {
    int l, n, m;
    cd v;
  };
  std::vector<Row> rows;
  std::string line;
  int line_no = 0, L = -1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line_no == 1 && line.rfind("ell", 0) == 0) continue;
    std::istringstream ls(line);
    Row r{};
    double re = 0, im = 0;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    if (!(ls >> r.l >> c1 >> r.n >> c2 >> r.m >> c3 >> re >> c4 >> im) || c1 != ',' || c2 != ',' ||
        c3 != ',' || c4 != ',') {
      throw std::invalid_argument("full spectrum csv: malformed line " + std::to_string(line_no));
    }
    if (r.l < 0 || std::abs(r.n) > r.l || std::abs(r.m) > r.l) {
      throw std::invalid_argument("full spectrum csv: index out of range on line " + std::to_string(line_no));
    }
    check_degree(r.l);
    r.v = cd(re, im);
    L = std::max(L, r.l);
    rows.push_back(r);
  }
  if (L < 0) throw std::invalid_argument("full spectrum csv: no coefficients");
  FullSpectrum f(L);
  std::vector<std::vector<bool>> seen(L + 1);
  for (int l = 0; l <= L; ++l) seen[l].assign(std::size_t((2 * l + 1) * (2 * l + 1)), false);
  for (const auto& r : rows) {
    auto slot = seen[r.l][std::size_t((r.n + r.l) * (2 * r.l + 1) + r.m + r.l)];
    if (slot) throw std::invalid_argument("full spectrum csv: duplicate coefficient");
    slot = true;
    f[r.l](r.n + r.l, r.m + r.l) = r.v;
  }
  if (rows.size() != f.coefficient_count()) {
    throw std::invalid_argument("full spectrum csv: expected " + std::to_string(f.coefficient_count()) +
                                " coefficients, found " + std::to_string(rows.size()));
  }
  return f;
}

}  // namespace so3kde
