#include "blmp/solutions.hpp"

#include <cmath>
#include <sstream>

#include "blmp/errors.hpp"
#include "blmp/expsum.hpp"

namespace blmp {

const char* family_name(Family f) {
  switch (f) {
    case Family::RationalSimilarity: return "rational_similarity";
    case Family::NSoliton: return "n_soliton";
    case Family::Wronskian: return "wronskian";
    case Family::WronskianNegaton: return "negaton2";
    case Family::WronskianPositon: return "positon2";
    case Family::Complexiton: return "complexiton";
    case Family::RationalSoliton: return "rational_soliton";
    case Family::RationalPositon: return "rational_positon";
    case Family::TravelingWave: return "traveling_wave";
    case Family::Kink: return "kink";
    case Family::Custom: return "custom";
  }
  return "?";
}

Jet log_derivative_field(const Jet& f) {
  if (std::abs(f.value()) <= division_floor())
    throw SingularPoint("tau vanishes at the evaluation point");
  return -2.0 * log_derivative(f, Axis::x);
}

namespace {

template <class F>
Jet guarded(F&& f) {
  try {
    return f();
  } catch (const DivisionNearSingularity& e) {
    throw SingularPoint(e.what());
  }
}

Jet truncate_to(const Jet& j, JetOrder order) { return j.truncated(min(order, j.order())); }

Field profile_field(const Profile& p, const NamedFunction& q, const NamedFunction* m) {
  return [p, q, m = m ? std::optional<NamedFunction>(*m) : std::nullopt](const Point& pt, JetOrder order) {
    return guarded([&] {
      Coordinates c = coordinates(pt, raised(order, p.headroom));
      Jet z = c.x + q(c.y);
      Jet v = p(z, c.t);
      if (m) v -= (*m)(c.y);
      return truncate_to(v, order);
    });
  };
}

struct ExpProfile {
  std::function<ExpSum(const Jet&, const Jet&)> f;
  int headroom = 0;
};

Profile value_profile(const ExpProfile& e) {
  return {[e](const Jet& z, const Jet& t) { return e.f(z, t).value(); }, e.headroom};
}

Profile log_profile(const ExpProfile& e) {
  return {[e](const Jet& z, const Jet& t) { return -2.0 * log_derivative(e.f(z, t), Axis::x); }, e.headroom + 1};
}

SolutionField reduction_solution(Family fam, std::string name, Profile p, Profile tau, const ReductionSpec& red) {
  SolutionField s;
  s.family = fam;
  s.name = std::move(name);
  s.profile = p;
  s.tau_profile = tau;
  s.reduction = red;
  s.m = red.m;
  s.u = profile_field(p, red.q, &red.m);
  if (tau) s.tau = profile_field(tau, red.q, nullptr);
  return s;
}

// ---- integer polynomials

IntPolynomial trim(IntPolynomial p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  if (p.empty()) p.push_back(0);
  return p;
}

IntPolynomial mul(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(r);
}

IntPolynomial sub(IntPolynomial a, const IntPolynomial& b) {
  if (a.size() < b.size()) a.resize(b.size(), BigInt(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return trim(a);
}

IntPolynomial scale(IntPolynomial a, const BigInt& s) {
  for (auto& c : a) c *= s;
  return trim(a);
}

IntPolynomial diff(const IntPolynomial& a) {
  if (a.size() <= 1) return {BigInt(0)};
  IntPolynomial r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
  return trim(r);
}

IntPolynomial exact_div(IntPolynomial num, const IntPolynomial& den) {
  num = trim(num);
  const std::size_t dn = den.size();
  if (num.size() < dn) {
    if (num.size() == 1 && num[0] == 0) return {BigInt(0)};
    throw NonExactDivision("numerator degree below divisor degree");
  }
  IntPolynomial q(num.size() - dn + 1, BigInt(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const BigInt& lead = num[k + dn - 1];
    if (lead % den.back() != 0) throw NonExactDivision("non-integral quotient coefficient");
    q[k] = lead / den.back();
    for (std::size_t j = 0; j < dn; ++j) num[k + j] -= q[k] * den[j];
  }
  for (const auto& c : num)
    if (c != 0) throw NonExactDivision("non-zero remainder");
  return trim(q);
}

Jet horner(const IntPolynomial& q, const Jet& s) {
  Jet r = Jet::constant(0.0, s.order());
  for (auto it = q.rbegin(); it != q.rend(); ++it) r = r * s + Complex(it->convert_to<double>());
  return r;
}

}  // namespace

// ---------------------------------------------------------------- rational

IntPolynomial yablonskii(int n, int cap) {
  if (n < 0) throw InvalidArgument("yablonskii index must be non-negative");
  if (n > cap) throw CapExceeded("yablonskii index " + std::to_string(n) + " above cap " + std::to_string(cap));
  IntPolynomial prev{BigInt(1)};
  if (n == 0) return prev;
  IntPolynomial cur{BigInt(0), BigInt(1)};
  const IntPolynomial z{BigInt(0), BigInt(1)};
  for (int k = 1; k < n; ++k) {
    IntPolynomial d1 = diff(cur), d2 = diff(d1);
    IntPolynomial bracket = sub(mul(cur, d2), mul(d1, d1));
    IntPolynomial num = sub(mul(z, mul(cur, cur)), scale(bracket, 4));
    IntPolynomial next = exact_div(num, prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::string to_string(const IntPolynomial& p) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    const BigInt& c = p[i];
    if (c == 0) continue;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << "z";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

Jet yablonskii_homogeneous(const IntPolynomial& q, const Jet& z, const Jet& t) {
  const int deg = static_cast<int>(q.size()) - 1;
  JetOrder o = min(z.order(), t.order());
  Jet r = Jet::constant(0.0, o);
  Jet three_t = 3.0 * t;
  for (int j = 0; j <= deg; ++j) {
    const BigInt& c = q[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    if ((deg - j) % 3 != 0) throw InvalidArgument("polynomial is not weighted-homogeneous");
    r += Complex(c.convert_to<double>()) * pow(z, j) * pow(three_t, (deg - j) / 3);
  }
  return r;
}

Jet rational_similarity_scaled(int n, const Jet& z, const Jet& t) {
  IntPolynomial q = yablonskii(n);
  return guarded([&] {
    Jet s = z * pow(3.0 * t, Complex(-1.0 / 3.0));
    return log_derivative_field(horner(q, s));
  });
}

SolutionField rational_similarity(int n, const ReductionSpec& red) {
  IntPolynomial q = yablonskii(n);
  ExpProfile tau{[q](const Jet& z, const Jet& t) { return ExpSum::plain(yablonskii_homogeneous(q, z, t)); }, 0};
  return reduction_solution(Family::RationalSimilarity, "rational_similarity(" + std::to_string(n) + ")",
                            log_profile(tau), value_profile(tau), red);
}

// ---------------------------------------------------------------- solitons

Complex soliton_coupling(Complex ki, Complex kj) {
  Complex r = (ki - kj) / (ki + kj);
  return r * r;
}

namespace {
void validate(const SolitonParams& p) {
  if (p.kappa.size() > 16) throw InvalidArgument("at most 16 solitons");
  for (std::size_t i = 0; i < p.kappa.size(); ++i)
    for (std::size_t j = i + 1; j < p.kappa.size(); ++j)
      if (std::abs(p.kappa[i] + p.kappa[j]) <= 1e-12 * std::max(1.0, std::abs(p.kappa[i])))
        throw InvalidKappa("kappa_" + std::to_string(i + 1) + " + kappa_" + std::to_string(j + 1) + " = 0");
}
}  // namespace

namespace {
ExpSum n_soliton_expsum(const SolitonParams& p, const Jet& z, const Jet& t) {
  validate(p);
  const std::size_t n = p.kappa.size();
  std::vector<Jet> psi;
  for (Complex k : p.kappa) psi.push_back(k * z - k * k * k * t);
  JetOrder o = min(z.order(), t.order());
  ExpSum tau;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Complex coeff = 1.0;
    Jet e = Jet::constant(0.0, o);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      e += psi[i];
      for (std::size_t j = i + 1; j < n; ++j)
        if (mask >> j & 1) coeff *= soliton_coupling(p.kappa[i], p.kappa[j]);
    }
    tau += ExpSum::exponential(e, coeff);
  }
  return tau;
}
}  // namespace

Jet n_soliton_tau(const SolitonParams& p, const Jet& z, const Jet& t) { return n_soliton_expsum(p, z, t).value(); }

SolutionField n_soliton(const SolitonParams& p, const ReductionSpec& red) {
  validate(p);
  ExpProfile tau{[p](const Jet& z, const Jet& t) { return n_soliton_expsum(p, z, t); }, 0};
  return reduction_solution(Family::NSoliton, "n_soliton(N=" + std::to_string(p.kappa.size()) + ")",
                            log_profile(tau), value_profile(tau), red);
}

// ---------------------------------------------------------------- Wronskian

const char* basis_kind_name(BasisKind k) {
  switch (k) {
    case BasisKind::rational: return "rational";
    case BasisKind::positon: return "positon";
    case BasisKind::negaton: return "negaton";
    case BasisKind::complexiton: return "complexiton";
  }
  return "?";
}

BasisKind classify_eigenvalue(Complex lambda) {
  const double tol = 1e-14 * std::max(1.0, std::abs(lambda));
  if (std::abs(lambda) <= 1e-14) return BasisKind::rational;
  if (std::abs(lambda.imag()) > tol) return BasisKind::complexiton;
  return lambda.real() > 0 ? BasisKind::positon : BasisKind::negaton;
}

WronskianEntry WronskianEntry::rational(int jordan) {
  return {0.0, BasisKind::rational, jordan, 1.0, 0.0};
}

WronskianEntry WronskianEntry::exponential(Complex lambda, int jordan, Complex c1, Complex c2) {
  return {lambda, classify_eigenvalue(lambda), jordan, c1, c2};
}

WronskianSpec WronskianSpec::negaton2(double g) {
  return {{WronskianEntry::exponential(-g * g), WronskianEntry::exponential(-g * g, 1)}};
}

WronskianSpec WronskianSpec::positon2(double g) {
  return {{WronskianEntry::exponential(g * g), WronskianEntry::exponential(g * g, 1)}};
}

WronskianSpec WronskianSpec::complexiton(Complex eta) {
  return {{WronskianEntry::exponential(-eta), WronskianEntry::exponential(-std::conj(eta))}};
}

WronskianSpec WronskianSpec::rational_soliton(double g) {
  return {{WronskianEntry::rational(), WronskianEntry::exponential(-g * g)}};
}

WronskianSpec WronskianSpec::rational_positon(double g) {
  return {{WronskianEntry::rational(), WronskianEntry::exponential(g * g)}};
}

namespace {
void validate(const WronskianSpec& s) {
  if (s.entries.size() > 4) throw InvalidArgument("Wronskian order above 4");
  for (const auto& e : s.entries) {
    if (e.kind != classify_eigenvalue(e.lambda))
      throw InvalidArgument(std::string("basis kind ") + basis_kind_name(e.kind) + " inconsistent with eigenvalue");
    if (e.jordan < 0 || e.jordan > 1) throw InvalidArgument("jordan index must be 0 or 1");
  }
}

ExpSum det(const std::vector<std::vector<ExpSum>>& m, std::vector<int>& cols, std::size_t row, const ExpSum& one) {
  if (row == m.size()) return one;
  ExpSum acc;
  int sign = 1;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0) continue;
    int c = cols[j];
    cols[j] = -1;
    ExpSum term = m[row][static_cast<std::size_t>(c)] * det(m, cols, row + 1, one);
    cols[j] = c;
    if (sign < 0) acc -= term;
    else acc += term;
    sign = -sign;
  }
  return acc;
}

ExpSum basis_expsum(const WronskianEntry& e, const Jet& z, const Jet& t) {
  if (e.kind == BasisKind::rational) {
    Jet base = e.jordan ? pow(z, 3) - 24.0 * t : z;
    return ExpSum::plain(e.c1 * base + e.c2);
  }
  Complex k = std::sqrt(-e.lambda);
  Jet xi = k * z - 4.0 * k * k * k * t;
  if (e.jordan == 0) return ExpSum::exponential(xi, 0.5 * e.c1) + ExpSum::exponential(-xi, 0.5 * e.c2);
  return (ExpSum::exponential(xi, 0.5 * e.c1) + ExpSum::exponential(-xi, -0.5 * e.c2)) * (z - 12.0 * k * k * t);
}

ExpSum wronskian_expsum(const WronskianSpec& spec, const Jet& z, const Jet& t) {
  validate(spec);
  const std::size_t n = spec.entries.size();
  ExpSum one = ExpSum::plain(Jet::constant(1.0, min(z.order(), t.order())));
  if (n == 0) return one;
  std::vector<std::vector<ExpSum>> m(n);
  for (std::size_t j = 0; j < n; ++j) {
    ExpSum h = basis_expsum(spec.entries[j], z, t);
    for (std::size_t i = 0; i < n; ++i) {
      m[i].push_back(h);
      if (i + 1 < n) h = h.derivative(Axis::x);
    }
  }
  std::vector<int> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = static_cast<int>(j);
  ExpSum w = det(m, cols, 0, one);
  if (w.empty()) throw DegenerateWronskian("Wronskian vanishes identically");
  ExpSum::Factored f = w.factored();
  if (std::abs(f.g.value()) <= division_floor()) throw DegenerateWronskian("Wronskian vanishes at the point");
  return w;
}
}  // namespace

Jet wronskian_basis(const WronskianEntry& e, const Jet& z, const Jet& t) { return basis_expsum(e, z, t).value(); }

Jet wronskian_tau(const WronskianSpec& spec, const Jet& z, const Jet& t) {
  return wronskian_expsum(spec, z, t).value();
}

SolutionField wronskian_solution(const WronskianSpec& spec, const ReductionSpec& red) {
  validate(spec);
  const int n = static_cast<int>(spec.entries.size());
  ExpProfile tau{[spec](const Jet& z, const Jet& t) { return wronskian_expsum(spec, z, t); }, n > 0 ? n - 1 : 0};
  return reduction_solution(Family::Wronskian, "wronskian(N=" + std::to_string(n) + ")", log_profile(tau),
                            value_profile(tau), red);
}

// ---------------------------------------------------------------- closed forms

const char* closed_form_name(ClosedForm c) {
  switch (c) {
    case ClosedForm::negaton2: return "negaton2";
    case ClosedForm::positon2: return "positon2";
    case ClosedForm::complexiton: return "complexiton";
    case ClosedForm::complexiton_displayed: return "complexiton_displayed";
    case ClosedForm::rational_soliton: return "rational_soliton";
    case ClosedForm::rational_positon: return "rational_positon";
  }
  return "?";
}

namespace {
void validate(ClosedForm c, const ClosedFormParams& p) {
  if (c == ClosedForm::complexiton || c == ClosedForm::complexiton_displayed) {
    if (p.eta.imag() == 0.0) throw InvalidArgument("complexiton needs Im(eta) != 0");
  } else if (p.gamma == 0.0 || !std::isfinite(p.gamma)) {
    throw InvalidArgument("gamma must be a non-zero real number");
  }
}

// The displayed formulas with tanh and tan multiplied through by cosh and cos.
Jet complexiton_displayed(Complex eta, const Jet& z, const Jet& t) {
  Complex se = std::sqrt(eta), seb = std::sqrt(std::conj(eta));
  Jet chi = se * (z - 4.0 * eta * t);
  Jet chib = seb * (z - 4.0 * std::conj(eta) * t);
  ExpSum num = Complex(0.0, 4.0 * eta.imag()) * (exp_cosh(chib) * exp_cosh(chi));
  ExpSum den = se * (exp_cosh(chib) * exp_sinh(chi)) - seb * (exp_cosh(chi) * exp_sinh(chib));
  return ratio(num, den);
}
}  // namespace

Jet closed_form_profile(ClosedForm c, const ClosedFormParams& p, const Jet& z, const Jet& t) {
  validate(c, p);
  const double g = p.gamma;
  return guarded([&]() -> Jet {
    switch (c) {
      case ClosedForm::negaton2: {
        Jet a = g * (z - 4.0 * g * g * t);
        ExpSum ch = exp_cosh(a);
        return ratio(8.0 * g * (ch * ch), ExpSum::plain(2.0 * g * (12.0 * g * g * t - z)) - exp_sinh(2.0 * a));
      }
      case ClosedForm::positon2: {
        Jet a = g * (z + 4.0 * g * g * t);
        ExpSum co = exp_cos(a);
        return ratio(-8.0 * g * (co * co), ExpSum::plain(2.0 * g * (12.0 * g * g * t + z)) + exp_sin(2.0 * a));
      }
      case ClosedForm::complexiton: return -complexiton_displayed(p.eta, z, t);
      case ClosedForm::complexiton_displayed: return complexiton_displayed(p.eta, z, t);
      case ClosedForm::rational_soliton: {
        Jet b = g * (z - 4.0 * g * g * t);
        return ratio(-2.0 * g * g * z * exp_cosh(b), g * z * exp_sinh(b) - exp_cosh(b));
      }
      case ClosedForm::rational_positon: {
        Jet b = g * (z + 4.0 * g * g * t);
        return ratio(-2.0 * g * g * z * exp_cos(b), g * z * exp_sin(b) + exp_cos(b));
      }
    }
    throw InvalidArgument("unknown closed form");
  });
}

SolutionField closed_form(ClosedForm c, const ClosedFormParams& p, const ReductionSpec& red) {
  validate(c, p);
  Profile prof{[c, p](const Jet& z, const Jet& t) { return closed_form_profile(c, p, z, t); }, 0};
  Family fam = Family::Custom;
  std::optional<WronskianSpec> ws;
  switch (c) {
    case ClosedForm::negaton2: fam = Family::WronskianNegaton; ws = WronskianSpec::negaton2(p.gamma); break;
    case ClosedForm::positon2: fam = Family::WronskianPositon; ws = WronskianSpec::positon2(p.gamma); break;
    case ClosedForm::complexiton: fam = Family::Complexiton; ws = WronskianSpec::complexiton(p.eta); break;
    case ClosedForm::complexiton_displayed: fam = Family::Complexiton; break;
    case ClosedForm::rational_soliton:
      fam = Family::RationalSoliton;
      ws = WronskianSpec::rational_soliton(p.gamma);
      break;
    case ClosedForm::rational_positon:
      fam = Family::RationalPositon;
      ws = WronskianSpec::rational_positon(p.gamma);
      break;
  }
  Profile tau;
  if (ws) {
    const int n = static_cast<int>(ws->entries.size());
    tau = value_profile({[spec = *ws](const Jet& z, const Jet& t) { return wronskian_expsum(spec, z, t); }, n - 1});
  }
  return reduction_solution(fam, closed_form_name(c), prof, tau, red);
}

// ---------------------------------------------------------------- traveling waves

Jet traveling_phase(const TravelingWaveParams& p, const Jet& x, const Jet& y, const Jet& t) {
  return p.a * x + p.m(y) / p.a - 4.0 * p.a * p.a * p.a * t;
}

namespace {
ExpSum traveling_expsum(const TravelingWaveParams& p, const Jet& w) {
  return ExpSum::exponential(0.5 * (1.0 + p.alpha) * w, p.c1) + ExpSum::exponential(0.5 * (p.alpha - 1.0) * w, p.c2);
}
}  // namespace

Jet traveling_tau(const TravelingWaveParams& p, const Jet& w) { return traveling_expsum(p, w).value(); }

SolutionField traveling_wave(const TravelingWaveParams& p) {
  if (p.a == 0.0) throw InvalidArgument("traveling wave needs a != 0");
  if (p.c1 == 0.0 && p.c2 == 0.0) throw InvalidArgument("traveling wave needs (c1, c2) != (0, 0)");
  SolutionField s;
  s.family = Family::TravelingWave;
  s.name = "traveling_wave";
  s.m = p.m;
  s.tau = [p](const Point& pt, JetOrder order) {
    return guarded([&] {
      Coordinates c = coordinates(pt, order);
      return traveling_tau(p, traveling_phase(p, c.x, c.y, c.t));
    });
  };
  s.u = [p](const Point& pt, JetOrder order) {
    return guarded([&] {
      Coordinates c = coordinates(pt, raised(order, 1));
      ExpSum f = traveling_expsum(p, traveling_phase(p, c.x, c.y, c.t));
      Jet u = -2.0 * log_derivative(f, Axis::x);
      return truncate_to(u - p.m(c.y), order);
    });
  };
  return s;
}

SolutionField kink(Complex a, const NamedFunction& m) {
  TravelingWaveParams p;
  p.a = a;
  p.m = m;
  SolutionField s = traveling_wave(p);
  s.family = Family::Kink;
  s.name = "kink";
  return s;
}

// ---------------------------------------------------------------- custom

SolutionField custom_field(std::string name, Field u) {
  SolutionField s;
  s.family = Family::Custom;
  s.name = std::move(name);
  s.u = std::move(u);
  return s;
}

Field field_from_profile(const Profile& p, const ReductionSpec& red) { return profile_field(p, red.q, &red.m); }

}  // namespace blmp
