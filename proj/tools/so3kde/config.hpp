#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "so3kde/estimators.hpp"
#include "so3kde/kernels.hpp"
#include "so3kde/spectra.hpp"

namespace so3kde::app {

/// Bad command line or config file; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComponentConfig {
  double weight = 0;
  KernelSpec kernel;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
  double angle = 0;  // radians; the component is centered at R(axis, angle)^-1
};

struct ExperimentConfig {
  int bandlimit = 49;
  std::uint64_t seed = 1;
  std::filesystem::path output = "so3kde_out";

  double uniform_weight = 0.2;
  std::vector<ComponentConfig> components;

  std::vector<int> vp_kappa{1, 8, 17, 22, 29, 36, 43};
  std::vector<int> heat_j{1, 2, 3, 4, 5, 6, 7, 8, 9};  // rho = 2^-j; j = 0 allowed
  std::vector<int> char_L{1, 2, 3, 4, 5, 6, 7, 8, 9};
  double k_min = 10, k_max = 1e5;
  int k_per_decade = 4;

  int profile_points = 1024;

  std::size_t mc_sample_size = 200;
  int mc_trials = 300;
  int mc_grid = 49;
  std::vector<std::string> mc_cases{"wavelet:0.0625", "char:5", "vp:29"};

  std::size_t sample_size = 1000;

  std::string estimator = "wavelet:0.0625";
  int estimate_grid = 24;
  std::filesystem::path estimate_input;  // empty: draw sample_size rotations

  ZonalMixture mixture() const;
  std::vector<KernelSpec> kernels() const;
  std::vector<double> sample_sizes() const;
};

/// Default experiment, including the three-part test mixture.
ExperimentConfig default_config();

/// INI-style text (see README for the grammar); JSON when the first
/// non-blank character is '{'. Unknown keys and bad values throw UsageError
/// naming the section.key (and the line, for syntax errors).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// "wavelet:t" (heat wavelet estimator), "char:L" (characteristic function
/// estimator), or a general kernel "heat:rho" / "vp:kappa".
EstimatorSpec parse_estimator_spec(const std::string& text);
std::string to_string(const EstimatorSpec& spec);

}  // namespace so3kde::app
