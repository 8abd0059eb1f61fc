#include "blmp/functions.hpp"

#include <sstream>

namespace blmp {

Jet NamedFunction::operator()(const Jet& y) const {
  switch (kind) {
    case Kind::zero: return Jet::constant(0.0, y.order());
    case Kind::identity: return y;
    case Kind::poly: {
      Jet r = Jet::constant(0.0, y.order());
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * y + Complex(*it);
      return r;
    }
    case Kind::sin: return sin(Complex(a) * y);
    case Kind::exp: return exp(Complex(a) * y);
  }
  return Jet::constant(0.0, y.order());
}

Complex NamedFunction::operator()(double y) const {
  return (*this)(Jet::constant(y, {0, 0, 0})).value();
}

Complex NamedFunction::derivative(double y) const {
  return (*this)(Jet::variable(Axis::y, y, {0, 1, 0})).partial(0, 1, 0);
}

bool NamedFunction::is_constant() const {
  if (kind == Kind::zero) return true;
  if (kind == Kind::poly) {
    for (std::size_t i = 1; i < coeffs.size(); ++i)
      if (coeffs[i] != 0.0) return false;
    return true;
  }
  return a == 0.0 && kind != Kind::identity;
}

const char* NamedFunction::kind_name(Kind k) {
  switch (k) {
    case Kind::zero: return "zero";
    case Kind::identity: return "identity";
    case Kind::poly: return "poly";
    case Kind::sin: return "sin";
    case Kind::exp: return "exp";
  }
  return "?";
}

std::string NamedFunction::to_string() const {
  std::ostringstream os;
  os << kind_name(kind);
  if (kind == Kind::poly) {
    os << "[";
    for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
    os << "]";
  } else if (kind == Kind::sin || kind == Kind::exp) {
    os << "(" << a << "y)";
  }
  return os.str();
}

}  // namespace blmp
