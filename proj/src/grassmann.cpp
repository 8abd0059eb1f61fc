#include "blmp/grassmann.hpp"

#include <algorithm>
#include <cmath>

namespace blmp {

GeneratorSet::GeneratorSet(const std::vector<std::string>& odd_constants) {
  names_.reserve(odd_constants.size() + 1);
  names_.emplace_back("theta");
  for (const auto& n : odd_constants) {
    if (n.empty()) throw InvalidArgument("empty generator label");
    if (std::find(names_.begin(), names_.end(), n) != names_.end()) {
      throw InvalidArgument("duplicate generator label '" + n + "'");
    }
    names_.push_back(n);
  }
  if (names_.size() > kCapacity) throw InvalidArgument("more than 16 generators");
}

std::size_t GeneratorSet::index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InvalidArgument("unknown generator '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

bool GeneratorSet::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::string GeneratorSet::label(Mask m) const {
  if (m == 0) return "1";
  std::string out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (m & (Mask{1} << i)) {
      if (!out.empty()) out += ' ';
      out += names_[i];
    }
  }
  return out;
}

double max_abs(const GrassmannScalar& e) {
  double m = 0.0;
  for (const auto& [mask, c] : e.terms()) m = std::max(m, std::abs(c));
  return m;
}

GrassmannScalar partial(const GrassmannJet& e, int i, int j, int k) {
  return e.transform([&](const Jet& c) { return c.partial(i, j, k); });
}

GrassmannJet derivative(const GrassmannJet& e, Axis which) {
  return e.transform([&](const Jet& c) { return c.derivative(which); });
}

}  // namespace blmp
