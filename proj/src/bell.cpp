#include "blmp/bell.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace blmp {

namespace {

enum class Derivation { dx, dy, dt, Dx, Dy };

int parity_of(Derivation d) { return (d == Derivation::Dx || d == Derivation::Dy) ? 1 : 0; }

using LinearSymbols = std::vector<std::pair<long long, DerivSymbol>>;

// Derivation applied to one canonical symbol D_x^nx D_y^ny d^s A. Uses
// D_x^2 = d_x, D_y^2 = d_y and D_y D_x = d_x + d_y - D_x D_y.
LinearSymbols apply_to_symbol(Derivation d, const DerivSymbol& s) {
  DerivSymbol r = s;
  switch (d) {
    case Derivation::dx: ++r.sx; return {{1, r}};
    case Derivation::dy: ++r.sy; return {{1, r}};
    case Derivation::dt: ++r.st; return {{1, r}};
    case Derivation::Dx:
      if (s.nx == 0) {
        r.nx = 1;
      } else {
        r.nx = 0;
        ++r.sx;
      }
      return {{1, r}};
    case Derivation::Dy:
      if (s.nx == 0) {
        if (s.ny == 0) {
          r.ny = 1;
        } else {
          r.ny = 0;
          ++r.sy;
        }
        return {{1, r}};
      } else {
        // D_y (D_x X) = (d_x + d_y) X - D_x (D_y X), X = D_y^ny d^s A
        DerivSymbol x = s;
        x.nx = 0;
        LinearSymbols out;
        DerivSymbol a = x, b = x;
        ++a.sx;
        ++b.sy;
        out.push_back({1, a});
        out.push_back({1, b});
        for (const auto& [c, dy] : apply_to_symbol(Derivation::Dy, x)) {
          for (const auto& [c2, dxdy] : apply_to_symbol(Derivation::Dx, dy)) {
            out.push_back({-c * c2, dxdy});
          }
        }
        return out;
      }
  }
  return {};
}

DerivSymbol base_symbol() { return DerivSymbol{}; }

BellPolynomial apply_derivation(Derivation d, const BellPolynomial& p) {
  BellPolynomial out;
  const int dp = parity_of(d);
  for (const auto& [term, coeff] : p.terms()) {
    // d(term) by the graded Leibniz rule
    int before = 0;
    for (std::size_t i = 0; i < term.size(); ++i) {
      const long long sign = (dp * before) % 2 == 0 ? 1 : -1;
      for (const auto& [c, sym] : apply_to_symbol(d, term[i])) {
        std::vector<DerivSymbol> factors = term;
        factors[i] = sym;
        out.add_product(factors, sign * c * coeff);
      }
      before += term[i].grassmann_parity();
    }
    // (-1)^{|d| |term|} term * (d A)
    const long long sign = (dp * before) % 2 == 0 ? 1 : -1;
    for (const auto& [c, sym] : apply_to_symbol(d, base_symbol())) {
      std::vector<DerivSymbol> factors = term;
      factors.push_back(sym);
      out.add_product(factors, sign * c * coeff);
    }
  }
  return out;
}

std::string symbol_suffix(const DerivSymbol& s) {
  std::string out;
  out.append(static_cast<std::size_t>(s.sx), 'x');
  out.append(static_cast<std::size_t>(s.sy), 'y');
  out.append(static_cast<std::size_t>(s.st), 't');
  return out;
}

}  // namespace

std::string DerivSymbol::to_string() const {
  std::string out;
  if (nx) out += "D_x ";
  if (ny) out += "D_y ";
  out += host == Host::A ? 'A' : (host == Host::v ? 'v' : 'w');
  const std::string suffix = symbol_suffix(*this);
  if (!suffix.empty()) out += "_" + suffix;
  return out;
}

bool BellTermLess::operator()(const BellTerm& a, const BellTerm& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

BellPolynomial BellPolynomial::one() {
  BellPolynomial p;
  p.terms_[BellTerm{}] = 1;
  return p;
}

void BellPolynomial::add_product(const std::vector<DerivSymbol>& factors, long long coeff) {
  if (coeff == 0) return;
  BellTerm t = factors;
  long long sign = 1;
  // insertion sort; swapping two odd symbols flips the sign
  for (std::size_t i = 1; i < t.size(); ++i) {
    for (std::size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
      if (t[j].grassmann_parity() == 1 && t[j - 1].grassmann_parity() == 1) sign = -sign;
      std::swap(t[j], t[j - 1]);
    }
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] == t[i - 1] && t[i].grassmann_parity() == 1) return;  // nilpotent
  }
  auto& slot = terms_[t];
  slot += sign * coeff;
  if (slot == 0) terms_.erase(t);
}

long long BellPolynomial::coefficient(const BellTerm& canonical) const {
  auto it = terms_.find(canonical);
  return it == terms_.end() ? 0 : it->second;
}

std::string BellPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [term, coeff] : terms_) {
    long long mag = coeff < 0 ? -coeff : coeff;
    if (first) {
      if (coeff < 0) os << "-";
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> parts;
    if (mag != 1 || term.empty()) parts.push_back(std::to_string(mag));
    for (std::size_t i = 0; i < term.size();) {
      std::size_t j = i;
      while (j < term.size() && term[j] == term[i]) ++j;
      std::string s = term[i].to_string();
      if (j - i > 1) s += "^" + std::to_string(j - i);
      parts.push_back(s);
      i = j;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " " : "") << parts[i];
  }
  return os.str();
}

std::string BellOrder::label() const {
  std::vector<std::string> parts;
  auto put = [&](int n, char c) {
    if (n == 0) return;
    parts.push_back((n == 1 ? std::string() : std::to_string(n)) + c);
  };
  put(lx, 'x');
  put(ly, 'y');
  put(lt, 't');
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "," + parts[i];
  return out;
}

BellPolynomial bell_generate(const BellOrder& order, int cap) {
  if (order.lx < 0 || order.ly < 0 || order.lt < 0 || order.kx < 0 || order.ky < 0 ||
      order.kx > 1 || order.ky > 1) {
    throw InvalidArgument("invalid Bell order");
  }
  if (order.total() > cap) {
    throw OrderCapExceeded("total order " + std::to_string(order.total()) + " exceeds cap " +
                           std::to_string(cap));
  }
  BellPolynomial p = BellPolynomial::one();
  for (int i = 0; i < order.lt; ++i) p = apply_derivation(Derivation::dt, p);
  for (int i = 0; i < order.ly; ++i) p = apply_derivation(Derivation::dy, p);
  for (int i = 0; i < order.lx; ++i) p = apply_derivation(Derivation::dx, p);
  if (order.ky) p = apply_derivation(Derivation::Dy, p);
  if (order.kx) p = apply_derivation(Derivation::Dx, p);
  return p;
}

BellPolynomial bell_binary(const BellPolynomial& p) {
  BellPolynomial out;
  for (const auto& [term, coeff] : p.terms()) {
    std::vector<DerivSymbol> factors = term;
    for (auto& s : factors) {
      if (s.host != Host::A) throw InvalidArgument("binary substitution expects A-symbols");
      s.host = s.weight() % 2 == 1 ? Host::v : Host::w;
    }
    out.add_product(factors, coeff);
  }
  return out;
}

BellPolynomial drop_v_terms(const BellPolynomial& p) {
  BellPolynomial out;
  for (const auto& [term, coeff] : p.terms()) {
    if (std::any_of(term.begin(), term.end(), [](const DerivSymbol& s) { return s.host == Host::v; }))
      continue;
    out.add_product(term, coeff);
  }
  return out;
}

BellPolynomial bell_p_polynomial(const BellOrder& order, int cap) {
  BellPolynomial binary = bell_binary(bell_generate(order, cap));
  if (order.total() % 2 == 1) return BellPolynomial{};
  return drop_v_terms(binary);
}

GrassmannScalar bell_evaluate(const BellPolynomial& p, const SymbolTable& table,
                              const GeneratorSetPtr& gens) {
  GrassmannScalar sum(gens);
  for (const auto& [term, coeff] : p.terms()) {
    GrassmannScalar prod(gens, Complex(double(coeff)));
    for (const auto& s : term) {
      auto it = table.find(s);
      if (it == table.end()) throw MissingSymbol(s.to_string());
      const auto parity = it->second.parity();
      if (!parity || (*parity != s.grassmann_parity() && !it->second.empty())) {
        throw ParityMismatch(s.to_string() + " bound to an element of the wrong parity");
      }
      prod = prod * it->second;
    }
    sum += prod;
  }
  return sum;
}

GrassmannScalar symbol_value(const DerivSymbol& s, const Superfield& field) {
  Superfield f = field;
  if (s.ny) f = f.D(Axis::y);
  if (s.nx) f = f.D(Axis::x);
  return f.at(s.sx, s.sy, s.st);
}

SymbolTable symbol_table(const BellPolynomial& p, const std::map<Host, Superfield>& hosts) {
  SymbolTable table;
  for (const auto& [term, coeff] : p.terms()) {
    for (const auto& s : term) {
      if (table.count(s)) continue;
      auto it = hosts.find(s.host);
      if (it == hosts.end()) throw MissingSymbol("no field bound for host of " + s.to_string());
      table.emplace(s, symbol_value(s, it->second));
    }
  }
  return table;
}

std::string render(char kind, const BellOrder& order, const BellPolynomial& p) {
  std::ostringstream os;
  os << kind << "[" << order.label() << ";(" << order.kx << "," << order.ky << ")] = "
     << p.to_string();
  return os.str();
}

}  // namespace blmp
