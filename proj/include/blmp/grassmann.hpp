#pragma once

// Finite Grassmann algebra with an explicit generator ordering.
//
// A basis monomial is a subset of generators stored as a bitmask and read in
// increasing index order; the product of two monomials is zero when they share
// a generator and otherwise carries the sign of the permutation that sorts the
// concatenation. Coefficients are any commutative ring type (Complex or Jet).

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blmp/errors.hpp"
#include "blmp/jet.hpp"

namespace blmp {

using Mask = std::uint32_t;

/// Ordered odd generators. Index 0 is always the superspace coordinate theta.
class GeneratorSet {
 public:
  static constexpr std::size_t kCapacity = 16;
  static constexpr std::size_t kTheta = 0;

  explicit GeneratorSet(const std::vector<std::string>& odd_constants);

  static std::shared_ptr<const GeneratorSet> make(const std::vector<std::string>& odd_constants) {
    return std::make_shared<const GeneratorSet>(odd_constants);
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t index(std::string_view name) const;
  bool contains(std::string_view name) const;

  /// "1", "theta", "zeta1 zeta2", ... for reports.
  std::string label(Mask m) const;

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

inline constexpr Mask kThetaBit = 1u;

/// Sign of e_a * e_b relative to e_{a|b}; zero when the monomials overlap.
constexpr int monomial_sign(Mask a, Mask b) {
  if ((a & b) != 0) return 0;
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const Mask above = j >= 31 ? 0u : ~((Mask{2} << j) - 1u);
    swaps += std::popcount(a & above);
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

constexpr int grade(Mask m) { return std::popcount(m); }

namespace detail {
inline void check_same(const GeneratorSetPtr& a, const GeneratorSetPtr& b) {
  if (a != b && !(a && b && *a == *b)) throw GeneratorSetMismatch("operands use different generator sets");
}
}  // namespace detail

template <class Coeff>
class GrassmannElement {
 public:
  using Terms = std::map<Mask, Coeff>;

  GrassmannElement() = default;
  explicit GrassmannElement(GeneratorSetPtr gens) : gens_(std::move(gens)) {}
  GrassmannElement(GeneratorSetPtr gens, Coeff body) : gens_(std::move(gens)) {
    terms_.emplace(0u, std::move(body));
  }

  /// coeff * (named generator).
  static GrassmannElement generator(GeneratorSetPtr gens, std::string_view name, Coeff coeff) {
    const Mask bit = Mask{1} << gens->index(name);
    GrassmannElement e(std::move(gens));
    e.terms_.emplace(bit, std::move(coeff));
    return e;
  }

  static GrassmannElement monomial(GeneratorSetPtr gens, Mask m, Coeff coeff) {
    GrassmannElement e(std::move(gens));
    e.terms_.emplace(m, std::move(coeff));
    return e;
  }

  const GeneratorSetPtr& generators() const { return gens_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of a monomial, or nullopt when absent.
  std::optional<Coeff> component(Mask m) const {
    auto it = terms_.find(m);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  /// 0 even, 1 odd, nullopt for mixed parity. The empty element is even.
  std::optional<int> parity() const {
    std::optional<int> p;
    for (const auto& [m, c] : terms_) {
      const int g = grade(m) % 2;
      if (p && *p != g) return std::nullopt;
      p = g;
    }
    return p.value_or(0);
  }

  int require_parity(const char* context) const {
    auto p = parity();
    if (!p) throw ParityUndefined(std::string(context) + ": element has mixed parity");
    return *p;
  }

  void add_term(Mask m, const Coeff& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
    }
  }

  GrassmannElement& operator+=(const GrassmannElement& rhs) {
    adopt(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
  }

  GrassmannElement& operator-=(const GrassmannElement& rhs) {
    adopt(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c * Complex(-1.0));
    return *this;
  }

  GrassmannElement& operator*=(Complex s) {
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator-(GrassmannElement a) { return a *= Complex(-1.0); }
  friend GrassmannElement operator*(GrassmannElement a, Complex s) { return a *= s; }
  friend GrassmannElement operator*(Complex s, GrassmannElement a) { return a *= s; }

  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    detail::check_same(a.gens_, b.gens_);
    GrassmannElement r(a.gens_ ? a.gens_ : b.gens_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        const int s = monomial_sign(ma, mb);
        if (s == 0) continue;
        r.add_term(ma | mb, s > 0 ? ca * cb : (ca * cb) * Complex(-1.0));
      }
    }
    return r;
  }

  /// Multiply every coefficient by an even scalar-like value (commutes with everything).
  friend GrassmannElement operator*(GrassmannElement a, const Coeff& s)
    requires(!std::is_same_v<Coeff, Complex>)
  {
    for (auto& [m, c] : a.terms_) c = c * s;
    return a;
  }

  /// Apply f to every coefficient, producing an element over another ring.
  template <class F>
  auto transform(F&& f) const {
    using Out = std::decay_t<decltype(f(std::declval<const Coeff&>()))>;
    GrassmannElement<Out> out(gens_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  /// Terms whose monomial satisfies pred.
  template <class Pred>
  GrassmannElement filter(Pred&& pred) const {
    GrassmannElement out(gens_);
    for (const auto& [m, c] : terms_)
      if (pred(m)) out.terms_.emplace(m, c);
    return out;
  }

  /// Body (coefficient of the empty monomial) split from the nilpotent rest.
  std::pair<std::optional<Coeff>, GrassmannElement> split_body() const {
    GrassmannElement soul(gens_);
    std::optional<Coeff> body;
    for (const auto& [m, c] : terms_) {
      if (m == 0) {
        body = c;
      } else {
        soul.terms_.emplace(m, c);
      }
    }
    return {body, soul};
  }

 private:
  void adopt(const GrassmannElement& rhs) {
    if (!gens_) {
      gens_ = rhs.gens_;
      return;
    }
    detail::check_same(gens_, rhs.gens_);
  }

  GeneratorSetPtr gens_;
  Terms terms_;
};

using GrassmannScalar = GrassmannElement<Complex>;
using GrassmannJet = GrassmannElement<Jet>;

/// Largest |coefficient| in the element (0 for the empty element).
double max_abs(const GrassmannScalar& e);

/// d^i_x d^j_y d^k_t of every coefficient at the expansion point.
GrassmannScalar partial(const GrassmannJet& e, int i, int j, int k);

/// Coefficientwise classical derivative.
GrassmannJet derivative(const GrassmannJet& e, Axis which);

// Functions of even elements with an invertible body. The nilpotent part n
// satisfies n^(size+1) = 0, so the series below terminate exactly.
namespace detail {

template <class Coeff>
Coeff unit_like(const Coeff& c) {
  if constexpr (std::is_same_v<Coeff, Complex>) {
    return Complex(1.0);
  } else {
    return Coeff::constant(1.0, c.order());
  }
}

template <class Coeff>
std::pair<Coeff, GrassmannElement<Coeff>> body_and_soul(const GrassmannElement<Coeff>& a,
                                                          const char* fn) {
  auto [body, soul] = a.split_body();
  if (!body) throw DivisionNearSingularity(std::string(fn) + ": element has no body");
  return {*body, soul};
}

}  // namespace detail

template <class Coeff>
GrassmannElement<Coeff> inverse(const GrassmannElement<Coeff>& a) {
  a.require_parity("inverse");
  auto [b, n] = detail::body_and_soul(a, "inverse");
  const Coeff inv_b = Complex(1.0) / b;
  const GrassmannElement<Coeff> x = n * inv_b * Complex(-1.0);
  GrassmannElement<Coeff> sum(a.generators(), detail::unit_like(b));
  GrassmannElement<Coeff> power = sum;
  for (std::size_t k = 1; k <= a.generators()->size(); ++k) {
    power = power * x;
    if (power.empty()) break;
    sum += power;
  }
  return sum * inv_b;
}

template <class Coeff>
GrassmannElement<Coeff> exp(const GrassmannElement<Coeff>& a) {
  if (a.require_parity("exp") != 0) throw ParityMismatch("exp of an odd element");
  auto [b, n] = detail::body_and_soul(a, "exp");
  using std::exp;
  const Coeff eb = exp(b);
  GrassmannElement<Coeff> sum(a.generators(), detail::unit_like(b));
  GrassmannElement<Coeff> power = sum;
  double fact = 1.0;
  for (std::size_t k = 1; k <= a.generators()->size(); ++k) {
    power = power * n;
    if (power.empty()) break;
    fact *= double(k);
    sum += power * Complex(1.0 / fact);
  }
  return sum * eb;
}

template <class Coeff>
GrassmannElement<Coeff> log(const GrassmannElement<Coeff>& a) {
  if (a.require_parity("log") != 0) throw ParityMismatch("log of an odd element");
  auto [b, n] = detail::body_and_soul(a, "log");
  using std::log;
  const Coeff inv_b = Complex(1.0) / b;
  const GrassmannElement<Coeff> x = n * inv_b;
  GrassmannElement<Coeff> sum(a.generators(), log(b));
  GrassmannElement<Coeff> power(a.generators(), detail::unit_like(b));
  for (std::size_t k = 1; k <= a.generators()->size(); ++k) {
    power = power * x;
    if (power.empty()) break;
    sum += power * Complex((k % 2 == 1 ? 1.0 : -1.0) / double(k));
  }
  return sum;
}

template <class Coeff>
GrassmannElement<Coeff> operator/(const GrassmannElement<Coeff>& a, const GrassmannElement<Coeff>& b) {
  return a * inverse(b);
}

}  // namespace blmp
