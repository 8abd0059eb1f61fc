#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <map>
#include <random>

#include "blmp/errors.hpp"
#include "blmp/jet.hpp"
#include "support/expr.hpp"
#include "support/fd.hpp"

using namespace blmp;
using Catch::Matchers::WithinAbs;

namespace {

Jet random_jet(std::mt19937_64& rng, JetOrder order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet j(order);
  for (int i = 0; i <= order.x; ++i)
    for (int k = 0; k <= order.y; ++k)
      for (int m = 0; m <= order.t; ++m) j.coeff_ref(i, k, m) = Complex(u(rng), u(rng));
  return j;
}

double max_rel_diff(const Jet& a, const Jet& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const double scale = std::max({std::abs(a.coeffs()[i]), std::abs(b.coeffs()[i]), 1.0});
    worst = std::max(worst, std::abs(a.coeffs()[i] - b.coeffs()[i]) / scale);
  }
  return worst;
}

}  // namespace

TEST_CASE("coordinate jets") {
  const Jet x = Jet::variable(Axis::x, 2.0, {4, 2, 2});
  CHECK(x.coeff(0, 0, 0) == Complex(2.0));
  CHECK(x.coeff(1, 0, 0) == Complex(1.0));
  int nonzero = 0;
  for (const auto& c : x.coeffs()) nonzero += c != Complex(0.0);
  CHECK(nonzero == 2);

  const Jet t = Jet::variable(Axis::t, 0.0, {4, 2, 2});
  CHECK(t.coeff(0, 0, 1) == Complex(1.0));
  CHECK(t.coeff(0, 0, 0) == Complex(0.0));

  CHECK(Jet::variable(Axis::x, 5.0).partial(1, 0, 0) == Complex(1.0));
}

TEST_CASE("arithmetic examples") {
  const Jet x = Jet::variable(Axis::x, 3.0);
  const Jet sq = x * x;
  CHECK(sq.partial(0, 0, 0) == Complex(9.0));
  CHECK(sq.partial(1, 0, 0) == Complex(6.0));
  CHECK(sq.partial(2, 0, 0) == Complex(2.0));

  const Jet x1 = Jet::variable(Axis::x, 1.0);
  CHECK(std::abs((x1 * x1 * x1).partial(3, 0, 0) - 6.0) < 1e-15);

  std::mt19937_64 rng(7);
  const Jet a = random_jet(rng, kDefaultOrder) + 3.0;
  const Jet one = a / a;
  CHECK_THAT(std::abs(one.value() - 1.0), WithinAbs(0.0, 1e-14));
  for (std::size_t i = 1; i < one.coeffs().size(); ++i) CHECK(std::abs(one.coeffs()[i]) < 1e-13);

  const Jet b = random_jet(rng, kDefaultOrder) + 2.0;
  CHECK(max_rel_diff((a / b) * b, a) < 1e-12);
}

TEST_CASE("division near zero is rejected") {
  Jet b = Jet::variable(Axis::x, 0.0);
  CHECK_THROWS_AS(Jet::constant(1.0) / b, DivisionNearSingularity);
  {
    ScopedDivisionFloor guard(1e-3);
    CHECK_THROWS_AS(Jet::constant(1.0) / (b + 1e-4), DivisionNearSingularity);
  }
  CHECK_NOTHROW(Jet::constant(1.0) / (b + 1e-4));
}

TEST_CASE("elementary function examples") {
  const Jet e = exp(Jet::variable(Axis::x, 0.0));
  double fact = 1.0;
  for (int n = 0; n <= 4; ++n) {
    if (n > 0) fact *= n;
    CHECK(std::abs(e.coeff(n, 0, 0) - 1.0 / fact) < 1e-15);
  }
  CHECK(std::abs(e.partial(3, 0, 0) - 1.0) < 1e-14);

  const Jet th = tanh(Jet::variable(Axis::x, 0.0) * 0.5);
  CHECK(std::abs(th.partial(1, 0, 0) - 0.5) < 1e-15);

  const Jet r = sqrt(Jet::constant(Complex(1.0, 1.0)));
  CHECK(std::abs(r.value() - std::sqrt(Complex(1.0, 1.0))) < 1e-15);
  // principal root of 1+i has positive real part
  CHECK(r.value().real() > 0.0);

  CHECK(Jet::constant(4.0).partial(1, 0, 0) == Complex(0.0));

  const Jet x = Jet::variable(Axis::x, 1.0);
  const Jet y = Jet::variable(Axis::y, 1.0);
  CHECK(std::abs((x * x * y).partial(2, 1, 0) - 2.0) < 1e-15);
}

TEST_CASE("branch cuts and order limits") {
  CHECK_THROWS_AS(log(Jet::constant(-1.0)), BranchCutViolation);
  CHECK_THROWS_AS(sqrt(Jet::constant(-4.0)), BranchCutViolation);
  CHECK_THROWS_AS(log(Jet::constant(0.0)), BranchCutViolation);
  CHECK_THROWS_AS(coth(Jet::constant(0.0)), DivisionNearSingularity);
  CHECK_THROWS_AS(Jet::constant(1.0).partial(5, 0, 0), OrderExceeded);
  CHECK_NOTHROW(log(Jet::constant(Complex(-1.0, 1e-3))));
}

TEST_CASE("jet partials agree with finite differences on random expressions") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto result = testing::fd_sweep(rng, 200);
  INFO("worst relative error " << result.worst << " at expression " << result.worst_index);
  CHECK(result.compared > 200 * 10);
  CHECK(result.worst <= 1e-6);
}

TEST_CASE("distributivity on random jets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Jet a = random_jet(rng, kDefaultOrder);
    const Jet b = random_jet(rng, kDefaultOrder);
    const Jet c = random_jet(rng, kDefaultOrder);
    CHECK(max_rel_diff(a * (b + c), a * b + a * c) <= 1e-12);
  }
}

TEST_CASE("multiplication commutes") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Jet a = random_jet(rng, kDefaultOrder);
    const Jet b = random_jet(rng, kDefaultOrder);
    CHECK(max_rel_diff(a * b, b * a) <= 1e-13);
  }
}

TEST_CASE("log inverts exp") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int trial = 0; trial < 50; ++trial) {
    Jet a = random_jet(rng, kDefaultOrder);
    a.coeff_ref(0, 0, 0) = Complex(u(rng), u(rng));
    const Jet back = log(exp(a));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
      worst = std::max(worst, std::abs(back.coeffs()[i] - a.coeffs()[i]));
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("mixed orders truncate to the common order") {
  const Jet a = Jet::variable(Axis::x, 1.0, {4, 2, 2});
  const Jet b = Jet::variable(Axis::x, 1.0, {3, 1, 1});
  const Jet p = a * b;
  CHECK(p.order() == JetOrder{3, 1, 1});
  CHECK(std::abs(p.partial(2, 0, 0) - 2.0) < 1e-15);
  const Jet d = a.derivative(Axis::x);
  CHECK(d.order() == JetOrder{3, 2, 2});
}
