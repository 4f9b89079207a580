#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

namespace so3kde::app {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& field, const std::string& value, const std::string& what) {
  throw UsageError("config " + field + ": " + what + ", got '" + value + "'");
}

template <typename T>
T parse_number(const std::string& field, const std::string& text) {
  const std::string v = trim(text);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    bad_value(field, v, std::is_integral_v<T> ? "expected an integer" : "expected a number");
  }
  return out;
}

double parse_positive(const std::string& field, const std::string& text) {
  const double v = parse_number<double>(field, text);
  if (!(v > 0)) bad_value(field, text, "expected a positive number");
  return v;
}

int parse_nonnegative_int(const std::string& field, const std::string& text) {
  const int v = parse_number<int>(field, text);
  if (v < 0) bad_value(field, text, "expected a nonnegative integer");
  return v;
}

template <typename T>
std::vector<T> parse_list(const std::string& field, const std::string& text) {
  std::vector<T> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_number<T>(field, item));
  if (out.empty()) bad_value(field, text, "expected a comma-separated list");
  return out;
}

// Number, or "[a *] pi [/ b]" so that angles like 4*pi/9 are written exactly.
double parse_angle(const std::string& field, const std::string& text) {
  std::string v;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) v += c;
  }
  const auto p = v.find("pi");
  if (p == std::string::npos) return parse_number<double>(field, v);
  double a = 1, b = 1;
  if (p > 0) {
    if (v[p - 1] != '*') bad_value(field, text, "expected [a*]pi[/b]");
    a = parse_number<double>(field, v.substr(0, p - 1));
  }
  const std::string rest = v.substr(p + 2);
  if (!rest.empty()) {
    if (rest[0] != '/') bad_value(field, text, "expected [a*]pi[/b]");
    b = parse_number<double>(field, rest.substr(1));
  }
  const double pi = std::numbers::pi;
  return p > 0 ? a * pi / b : pi / b;
}

KernelSpec parse_kernel(const std::string& field, const std::string& text) {
  try {
    return parse_kernel_spec(trim(text));
  } catch (const std::exception& e) {
    bad_value(field, text, e.what());
  }
}

ComponentConfig parse_component(const std::string& section, const pt::ptree& node) {
  ComponentConfig c;
  bool has_weight = false, has_kernel = false;
  for (const auto& [key, child] : node) {
    const std::string field = section + "." + key;
    const std::string value = child.data();
    if (key == "weight") {
      c.weight = parse_number<double>(field, value);
      has_weight = true;
    } else if (key == "kernel") {
      c.kernel = parse_kernel(field, value);
      has_kernel = true;
    } else if (key == "axis") {
      const auto xs = parse_list<double>(field, value);
      if (xs.size() != 3) bad_value(field, value, "expected three components");
      c.axis = Eigen::Vector3d(xs[0], xs[1], xs[2]);
      if (!(c.axis.norm() > 0)) bad_value(field, value, "axis must be nonzero");
    } else if (key == "angle") {
      c.angle = parse_angle(field, value);
    } else {
      throw UsageError("config: unknown key " + field);
    }
  }
  if (!has_weight || !has_kernel) throw UsageError("config " + section + ": needs weight and kernel");
  return c;
}

void apply_section(ExperimentConfig& cfg, const std::string& section, const pt::ptree& node) {
  for (const auto& [key, child] : node) {
    const std::string field = section + "." + key;
    const std::string value = child.data();
    if (section == "experiment") {
      if (key == "bandlimit") {
        cfg.bandlimit = parse_nonnegative_int(field, value);
      } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(field, value);
      } else if (key == "output") {
        cfg.output = trim(value);
      } else {
        throw UsageError("config: unknown key " + field);
      }
    } else if (section == "mixture") {
      if (key == "uniform") {
        cfg.uniform_weight = parse_number<double>(field, value);
      } else if (key == "components" && trim(value) == "none") {
        cfg.components.clear();
      } else {
        throw UsageError("config: unknown key " + field);
      }
    } else if (section == "grids") {
      if (key == "vp") {
        cfg.vp_kappa = parse_list<int>(field, value);
      } else if (key == "heat_j") {
        cfg.heat_j = parse_list<int>(field, value);
      } else if (key == "char") {
        cfg.char_L = parse_list<int>(field, value);
      } else if (key == "k_min") {
        cfg.k_min = parse_positive(field, value);
      } else if (key == "k_max") {
        cfg.k_max = parse_positive(field, value);
      } else if (key == "k_per_decade") {
        cfg.k_per_decade = parse_nonnegative_int(field, value);
        if (cfg.k_per_decade < 1) bad_value(field, value, "expected at least 1");
      } else if (key == "profile_points") {
        cfg.profile_points = parse_nonnegative_int(field, value);
        if (cfg.profile_points < 2) bad_value(field, value, "expected at least 2");
      } else {
        throw UsageError("config: unknown key " + field);
      }
    } else if (section == "montecarlo") {
      if (key == "K") {
        cfg.mc_sample_size = parse_number<std::size_t>(field, value);
      } else if (key == "trials") {
        cfg.mc_trials = parse_nonnegative_int(field, value);
        if (cfg.mc_trials < 2) bad_value(field, value, "expected at least 2");
      } else if (key == "grid") {
        cfg.mc_grid = parse_nonnegative_int(field, value);
      } else if (key == "cases") {
        cfg.mc_cases = split(value, ',');
        for (const auto& c : cfg.mc_cases) {
          try {
            parse_estimator_spec(c);
          } catch (const UsageError& e) {
            bad_value(field, c, e.what());
          }
        }
      } else {
        throw UsageError("config: unknown key " + field);
      }
    } else if (section == "sample") {
      if (key == "K") {
        cfg.sample_size = parse_number<std::size_t>(field, value);
        if (cfg.sample_size < 1) bad_value(field, value, "expected at least 1");
      } else {
        throw UsageError("config: unknown key " + field);
      }
    } else if (section == "estimate") {
      if (key == "estimator") {
        try {
          parse_estimator_spec(value);
        } catch (const UsageError& e) {
          bad_value(field, value, e.what());
        }
        cfg.estimator = trim(value);
      } else if (key == "grid") {
        cfg.estimate_grid = parse_nonnegative_int(field, value);
      } else if (key == "input") {
        cfg.estimate_input = trim(value);
      } else {
        throw UsageError("config: unknown key " + field);
      }
    } else {
      throw UsageError("config: unknown section [" + section + "]");
    }
  }
}

ExperimentConfig interpret(const pt::ptree& tree) {
  ExperimentConfig cfg = default_config();
  // Component sections replace the default components wherever they appear.
  std::vector<ComponentConfig> components;
  for (const auto& [section, node] : tree) {
    if (section.rfind("component.", 0) == 0) {
      components.push_back(parse_component(section, node));
    } else if (!node.data().empty() && node.empty()) {
      throw UsageError("config: key '" + section + "' outside a section");
    } else {
      apply_section(cfg, section, node);
    }
  }
  if (!components.empty()) cfg.components = std::move(components);
  try {
    cfg.mixture();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("config mixture: ") + e.what());
  }
  if (cfg.k_max < cfg.k_min) throw UsageError("config grids: k_max below k_min");
  return cfg;
}

std::string json_scalar(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

pt::ptree json_to_tree(const nlohmann::json& doc) {
  if (!doc.is_object()) throw UsageError("config: JSON root must be an object");
  pt::ptree tree;
  for (const auto& [section, body] : doc.items()) {
    if (!body.is_object()) throw UsageError("config: JSON section '" + section + "' must be an object");
    pt::ptree node;
    for (const auto& [key, value] : body.items()) {
      if (section == "mixture" && key == "components") {
        if (!value.is_array()) throw UsageError("config mixture.components: expected an array");
        node.push_back({"components", pt::ptree("none")});
        int i = 0;
        for (const auto& comp : value) {
          pt::ptree c;
          for (const auto& [ck, cv] : comp.items()) {
            std::string text;
            if (cv.is_array()) {
              for (const auto& x : cv) text += (text.empty() ? "" : ",") + json_scalar(x);
            } else {
              text = json_scalar(cv);
            }
            c.push_back({ck, pt::ptree(text)});
          }
          tree.push_back({"component." + std::to_string(i++), c});
        }
        continue;
      }
      std::string text;
      if (value.is_array()) {
        for (const auto& x : value) text += (text.empty() ? "" : ",") + json_scalar(x);
      } else {
        text = json_scalar(value);
      }
      node.push_back({key, pt::ptree(text)});
    }
    tree.push_back({section, node});
  }
  return tree;
}

}  // namespace

ZonalMixture ExperimentConfig::mixture() const {
  std::vector<MixtureComponent> comps;
  for (const auto& c : components) {
    comps.push_back({c.weight, kernel_series(c.kernel), inverse(from_axis_angle(c.axis, c.angle))});
  }
  return ZonalMixture(uniform_weight, std::move(comps));
}

std::vector<KernelSpec> ExperimentConfig::kernels() const {
  std::vector<KernelSpec> out;
  for (int k : vp_kappa) out.push_back(vp_kernel(k));
  for (int j : heat_j) out.push_back(heat_kernel(std::ldexp(1.0, -j)));
  for (int L : char_L) out.push_back(characteristic_kernel(L));
  return out;
}

std::vector<double> ExperimentConfig::sample_sizes() const {
  // round(10^(e / k_per_decade)) on the integer exponent grid; the integer
  // exponents keep the values free of accumulated rounding.
  std::vector<double> out;
  const int lo = int(std::ceil(std::log10(k_min) * k_per_decade - 1e-9));
  const int hi = int(std::floor(std::log10(k_max) * k_per_decade + 1e-9));
  for (int e = lo; e <= hi; ++e) out.push_back(std::round(std::pow(10.0, double(e) / k_per_decade)));
  return out;
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  const double pi = std::numbers::pi;
  cfg.components = {{0.7, vp_kernel(30), Eigen::Vector3d(1, 0, 0), pi / 6},
                    {0.1, vp_kernel(45), Eigen::Vector3d(0, 1, 0), 4 * pi / 9}};
  return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  pt::ptree tree;
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("config JSON: ") + e.what());
    }
    tree = json_to_tree(doc);
  } else {
    std::istringstream is(text);
    try {
      pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
      throw UsageError("config line " + std::to_string(e.line()) + ": " + e.message());
    }
  }
  return interpret(tree);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

EstimatorSpec parse_estimator_spec(const std::string& raw) {
  const std::string text = trim(raw);
  const auto colon = text.find(':');
  const std::string family = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (family == "wavelet") return HeatWavelet{parse_positive("estimator", arg)};
    if (family == "char") return CharacteristicFunction{parse_nonnegative_int("estimator", arg)};
    return GeneralKernel{parse_kernel_spec(text)};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("estimator '" + text + "': " + e.what());
  }
}

std::string to_string(const EstimatorSpec& spec) {
  if (const auto* g = std::get_if<GeneralKernel>(&spec)) return so3kde::to_string(g->kernel);
  if (const auto* c = std::get_if<CharacteristicFunction>(&spec)) return "char:" + std::to_string(c->L);
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, std::get<HeatWavelet>(spec).t);
  return "wavelet:" + std::string(buf, r.ptr);
}

}  // namespace so3kde::app
