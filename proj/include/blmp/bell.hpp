#pragma once

// Super Bell polynomials Y = e^{-A} D_x^kx D_y^ky d_x^lx d_y^ly d_t^lt e^{A},
// their binary (v, w) form, and the P-polynomials obtained at v = 0.
//
// Polynomials are kept in a normal form over derivative symbols
// D_x^nx D_y^ny d^s A. Two gradings are in play and must not be confused:
//   * Grassmann parity nx + ny (mod 2) decides anticommutation;
//   * weight sx + sy + st + nx + ny (mod 2) decides the binary host v/w.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blmp/grassmann.hpp"
#include "blmp/superfield.hpp"

namespace blmp {

enum class Host : std::uint8_t { A = 0, v = 1, w = 2 };

struct DerivSymbol {
  int sx = 0, sy = 0, st = 0;
  int nx = 0, ny = 0;
  Host host = Host::A;

  int grassmann_parity() const { return (nx + ny) % 2; }
  int weight() const { return sx + sy + st + nx + ny; }

  /// Sort key: even symbols first, then host, then derivative orders.
  auto key() const { return std::tuple(grassmann_parity(), host, sx, sy, st, nx, ny); }
  friend bool operator<(const DerivSymbol& a, const DerivSymbol& b) { return a.key() < b.key(); }
  friend bool operator==(const DerivSymbol& a, const DerivSymbol& b) { return a.key() == b.key(); }

  std::string to_string() const;
};

using BellTerm = std::vector<DerivSymbol>;  // canonical order

struct BellTermLess {
  bool operator()(const BellTerm& a, const BellTerm& b) const;
};

class BellPolynomial {
 public:
  using Terms = std::map<BellTerm, long long, BellTermLess>;

  BellPolynomial() = default;
  static BellPolynomial one();

  /// Adds coeff * (s_1 s_2 ... s_n) in the given order, normalizing signs.
  void add_product(const std::vector<DerivSymbol>& factors, long long coeff);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long long coefficient(const BellTerm& canonical) const;

  friend bool operator==(const BellPolynomial& a, const BellPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// "A_xxx + 3 A_x A_xx + A_x^3"; "0" and "1" for the trivial cases.
  std::string to_string() const;

 private:
  Terms terms_;
};

struct BellOrder {
  int lx = 0, ly = 0, lt = 0, kx = 0, ky = 0;
  int total() const { return lx + ly + lt + kx + ky; }
  /// "3x", "x,y,t", "0"
  std::string label() const;
};

inline constexpr int kDefaultBellCap = 6;

/// Y_{l.X,(kx,ky)}(A). Throws OrderCapExceeded when total() > cap.
BellPolynomial bell_generate(const BellOrder& order, int cap = kDefaultBellCap);

/// Re-hosts every A-symbol to v (odd weight) or w (even weight).
BellPolynomial bell_binary(const BellPolynomial& p);

/// Binary polynomial at v = 0; the zero polynomial for odd total order.
BellPolynomial bell_p_polynomial(const BellOrder& order, int cap = kDefaultBellCap);

/// Drops every term containing a v-symbol (no parity shortcut).
BellPolynomial drop_v_terms(const BellPolynomial& p);

using SymbolTable = std::map<DerivSymbol, GrassmannScalar>;

/// Graded evaluation. Throws MissingSymbol or ParityMismatch.
GrassmannScalar bell_evaluate(const BellPolynomial& p, const SymbolTable& table,
                              const GeneratorSetPtr& gens);

/// D_x^nx D_y^ny d^s applied to a superfield and read off at its expansion point.
GrassmannScalar symbol_value(const DerivSymbol& s, const Superfield& field);

/// Table for every symbol in p, with each host bound to a superfield.
SymbolTable symbol_table(const BellPolynomial& p, const std::map<Host, Superfield>& hosts);

/// "Y[3x;(0,0)] = A_xxx + 3 A_x A_xx + A_x^3"
std::string render(char kind, const BellOrder& order, const BellPolynomial& p);

}  // namespace blmp
