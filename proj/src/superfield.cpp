#include "blmp/superfield.hpp"

namespace blmp {

namespace {

void require_theta_free(const GrassmannJet& e, const char* what) {
  for (const auto& [m, c] : e.terms()) {
    if (m & kThetaBit) throw InvalidArgument(std::string(what) + " component contains theta");
  }
}

GeneratorSetPtr pick(const GrassmannJet& a, const GrassmannJet& b) {
  detail::check_same(a.generators(), b.generators());
  return a.generators() ? a.generators() : b.generators();
}

}  // namespace

Superfield Superfield::from_components(const GrassmannJet& lower, const GrassmannJet& upper) {
  require_theta_free(lower, "lower");
  require_theta_free(upper, "upper");
  GrassmannJet v(pick(lower, upper));
  for (const auto& [m, c] : lower.terms()) v.add_term(m, c);
  // theta * e_S with theta first in the ordering needs no sign.
  for (const auto& [m, c] : upper.terms()) v.add_term(m | kThetaBit, c);
  return Superfield(std::move(v));
}

Superfield Superfield::fermionic(const GrassmannJet& xi, const GrassmannJet& u) {
  if (xi.require_parity("xi") != 1 && !xi.empty()) throw ParityMismatch("xi must be odd");
  if (u.require_parity("u") != 0) throw ParityMismatch("u must be even");
  return from_components(xi, u);
}

Superfield Superfield::bosonic(const GrassmannJet& body, const GrassmannJet& soul) {
  if (body.require_parity("body") != 0) throw ParityMismatch("bosonic body must be even");
  if (soul.require_parity("soul") != 1 && !soul.empty()) throw ParityMismatch("bosonic soul must be odd");
  return from_components(body, soul);
}

Superfield Superfield::classical(const GeneratorSetPtr& gens, const Jet& f) {
  return Superfield(GrassmannJet(gens, f));
}

GrassmannJet Superfield::lower() const {
  return value_.filter([](Mask m) { return (m & kThetaBit) == 0; });
}

GrassmannJet Superfield::upper() const {
  GrassmannJet u(value_.generators());
  for (const auto& [m, c] : value_.terms())
    if (m & kThetaBit) u.add_term(m & ~kThetaBit, c);
  return u;
}

Superfield Superfield::D(Axis which) const {
  if (which == Axis::t) throw InvalidArgument("no supercovariant derivative along t");
  GrassmannJet r(value_.generators());
  for (const auto& [m, c] : value_.terms()) {
    if (m & kThetaBit) {
      r.add_term(m & ~kThetaBit, c);  // d_theta (theta e_S) = e_S
    } else {
      r.add_term(m | kThetaBit, c.derivative(which));  // theta d(e_S c)
    }
  }
  return Superfield(std::move(r));
}

Coordinates coordinates(const Point& p, JetOrder order) {
  return {Jet::variable(Axis::x, p.x, order), Jet::variable(Axis::y, p.y, order),
          Jet::variable(Axis::t, p.t, order)};
}

}  // namespace blmp
