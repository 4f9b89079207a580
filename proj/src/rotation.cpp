#include "so3kde/rotation.hpp"

#include <charconv>
#include <vector>

namespace so3kde {
namespace {

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    double v = 0;
    const char* first = text.data() + i;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) {
      throw std::invalid_argument("malformed number near '" +
                                  std::string(text.substr(i, 16)) + "'");
    }
    out.push_back(v);
    i += static_cast<std::size_t>(ptr - first);
  }
  return out;
}

}  // namespace

Rotationd parse_rotation(std::string_view text, double norm_tolerance) {
  const auto v = parse_numbers(text);
  if (v.size() != 4) {
    throw std::invalid_argument("expected 4 quaternion components, got " +
                                std::to_string(v.size()));
  }
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  if (std::abs(n - 1.0) > norm_tolerance) {
    std::ostringstream os;
    os << "quaternion norm " << std::setprecision(17) << n << " deviates from 1 by more than "
       << norm_tolerance;
    throw std::invalid_argument(os.str());
  }
  return Rotationd::from_wxyz(v[0], v[1], v[2], v[3]);
}

std::string to_euler_csv_row(const EulerZYZd& e) {
  std::ostringstream os;
  os << std::setprecision(17) << e.phi << ',' << e.theta << ',' << e.psi;
  return os.str();
}

EulerZYZd parse_euler_csv_row(std::string_view row) {
  const auto v = parse_numbers(row);
  if (v.size() != 3) throw std::invalid_argument("expected phi,theta,psi");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (v[0] < 0 || v[0] >= two_pi || v[1] < 0 || v[1] > std::numbers::pi || v[2] < 0 ||
      v[2] >= two_pi) {
    throw std::invalid_argument("Euler angles out of range");
  }
  return {v[0], v[1], v[2]};
}

}  // namespace so3kde
