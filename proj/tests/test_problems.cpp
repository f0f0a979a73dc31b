#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "aim/errors.hpp"
#include "aim/potential.hpp"
#include "aim/problems.hpp"
#include "doctest.h"

using aim::Jet;
using aim::PotentialExpression;
using aim::ProblemKind;
using aim::ProblemSpec;

namespace {

bool jets_equal(const Jet& a, const Jet& b) {
  if (a.x0() != b.x0() || a.order() != b.order()) return false;
  for (int j = 0; j <= a.order(); ++j)
    if (a.coeff(j) != b.coeff(j)) return false;
  return true;
}

/// Second derivative by the 5-point central stencil.
double second_derivative(const std::function<double(double)>& f, double x,
                         double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) -
          f(x + 2 * h)) /
         (12 * h * h);
}

/// Checks -psi'' + V psi - E psi == -envelope * (y'' - lambda0 y' - s0 y)
/// pointwise for a smooth polynomial y, with lambda0/s0 evaluated through
/// the built jets. (Substituting psi = envelope * y into the Schrodinger
/// form flips the orientation of the base-equation residual.)
void check_substitution_identity(const ProblemSpec& p, double E, double x0,
                                 double lo, double hi) {
  const int order = 40;
  auto [lambda0, s0] = p.build_coefficients(E, x0, order);

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> poly(7);
  for (double& c : poly) c = dist(rng);
  auto y = [&poly](double x) {
    double acc = 0.0;
    for (std::size_t j = poly.size(); j-- > 0;) acc = acc * x + poly[j];
    return acc;
  };
  auto y1 = [&poly](double x) {
    double acc = 0.0;
    for (std::size_t j = poly.size() - 1; j-- > 0;)
      acc = acc * x + poly[j + 1] * static_cast<double>(j + 1);
    return acc;
  };
  auto psi = [&](double x) { return p.envelope(x) * y(x); };

  const double h = 1e-3;
  for (int i = 0; i <= 40; ++i) {
    const double x = lo + (hi - lo) * i / 40.0;
    const double lhs =
        -second_derivative(psi, x, h) + (p.potential(x) - E) * psi(x);
    const double rhs =
        -p.envelope(x) * (second_derivative(y, x, h) -
                          lambda0.eval(x) * y1(x) - s0.eval(x) * y(x));
    const double scale =
        std::max({std::abs(lhs), std::abs(rhs), std::abs(psi(x)), 1.0});
    CHECK(std::abs(lhs - rhs) <= 1e-8 * scale);
  }
}

}  // namespace

TEST_CASE("harmonic ground state zeroes s0") {
  auto [lambda0, s0] = ProblemSpec::harmonic1d().build_coefficients(1.0, 0.0, 4);
  CHECK(lambda0.coeff(0) == 0.0);
  CHECK(lambda0.coeff(1) == 2.0);
  for (int j = 0; j <= 4; ++j) CHECK(s0.coeff(j) == 0.0);
}

TEST_CASE("gk lambda0 series about 1") {
  auto [lambda0, s0] =
      ProblemSpec::goldman_krivchenkov(0.0).build_coefficients(5.0, 1.0, 4);
  CHECK(lambda0.coeff(0) == 0.0);
  CHECK(lambda0.coeff(1) == 4.0);
  CHECK(lambda0.coeff(2) == -2.0);
  CHECK(lambda0.coeff(3) == 2.0);
  CHECK(lambda0.coeff(4) == -2.0);
  CHECK(s0.coeff(0) == 3.0 - 5.0);  // 2g + 3 - E
}

TEST_CASE("spiked s0 vanishes at the closed-form point") {
  // gamma = 3, A = 0.001, E close to the table row: x0 from the s0 = 0
  // construction.
  const double gamma = 3.0, A = 0.001, E = 9.0001;
  const double pv = gamma * (gamma + 1.0) / (2.0 * (E - 1.0));
  const double x0 = std::sqrt(pv + std::sqrt(pv * pv + A / (E - 1.0)));
  auto [lambda0, s0] =
      ProblemSpec::spiked(gamma, A, 4.0).build_coefficients(E, x0, 8);
  CHECK(std::abs(s0.coeff(0)) <= 1e-12 * E);
  CHECK(lambda0.coeff(1) == 2.0);
}

TEST_CASE("hermite ignores the energy argument") {
  const auto p = ProblemSpec::hermite(3);
  auto [l1, s1] = p.build_coefficients(0.0, 0.5, 4);
  auto [l2, s2] = p.build_coefficients(42.0, 0.5, 4);
  CHECK(jets_equal(l1, l2));
  CHECK(jets_equal(s1, s2));
  CHECK(s1.coeff(0) == -6.0);
  CHECK_FALSE(p.eigenproblem());
}

TEST_CASE("custom expression promoting and building") {
  // A pure quartic-form text builds the same jets as the native kind.
  const auto custom =
      ProblemSpec::custom(PotentialExpression::parse("x^2 + 0.1*x^4"));
  CHECK(custom.kind() == ProblemKind::custom);
  const auto native = ProblemSpec::quartic(0.1);
  auto [cl, cs] = custom.build_coefficients(2.5, 0.0, 12);
  auto [nl, ns] = native.build_coefficients(2.5, 0.0, 12);
  CHECK(jets_equal(cl, nl));
  CHECK(jets_equal(cs, ns));

  // Spiked-pattern text is promoted to the spiked kind.
  const auto spiked =
      ProblemSpec::custom(PotentialExpression::parse("x^2 + 0.001*x^-4 + 12*x^-2"));
  CHECK(spiked.kind() == ProblemKind::spiked);
  CHECK(spiked.gamma() == doctest::Approx(3.0));
  CHECK(spiked.coupling() == 0.001);
  CHECK(spiked.alpha_exp() == 4.0);

  // Pattern without the spike collapses to goldman_krivchenkov.
  const auto gk = ProblemSpec::custom(PotentialExpression::parse("x^2 + 2*x^-2"));
  CHECK(gk.kind() == ProblemKind::goldman_krivchenkov);
  CHECK(gk.gamma() == doctest::Approx(1.0));
}

TEST_CASE("stronger singularities are rejected") {
  CHECK_THROWS_AS(ProblemSpec::custom(
                      PotentialExpression::parse("x^2 + x^-2.5 + x^-4")),
                  aim::DomainError);
}

TEST_CASE("singular problems demand x0 > 0") {
  CHECK_THROWS_AS(
      ProblemSpec::spiked(3, 0.001, 4).build_coefficients(9.0, 0.0, 4),
      aim::DomainError);
  CHECK_THROWS_AS(
      ProblemSpec::goldman_krivchenkov(1).build_coefficients(5.0, -1.0, 4),
      aim::DomainError);
  // gamma = -1 removes the singular term entirely.
  const auto p = ProblemSpec::goldman_krivchenkov(-1.0);
  auto [lambda0, s0] = p.build_coefficients(2.0, 0.0, 4);
  CHECK(lambda0.coeff(1) == 2.0);
  CHECK(lambda0.coeff(2) == 0.0);
}

TEST_CASE("dimension reduction maps exactly") {
  const double coupling = 0.37, alpha = 1.9;
  // N = 3, l = 0 is the plain spiked oscillator.
  const auto p3 = ProblemSpec::spiked_ndim(3, 0, coupling, alpha);
  const auto flat = ProblemSpec::spiked(0.0, coupling, alpha);
  auto [l3, s3] = p3.build_coefficients(4.2, 1.1, 16);
  auto [lf, sf] = flat.build_coefficients(4.2, 1.1, 16);
  CHECK(jets_equal(l3, lf));
  CHECK(jets_equal(s3, sf));

  for (int n_dim : {2, 4, 5, 8}) {
    for (int l : {0, 1, 3}) {
      const double gamma = l + (n_dim - 3) / 2.0;
      const auto nd = ProblemSpec::spiked_ndim(n_dim, l, coupling, alpha);
      const auto direct = ProblemSpec::spiked(gamma, coupling, alpha);
      auto [la, sa] = nd.build_coefficients(6.0, 1.3, 12);
      auto [lb, sb] = direct.build_coefficients(6.0, 1.3, 12);
      CHECK(jets_equal(la, lb));
      CHECK(jets_equal(sa, sb));
    }
  }
}

TEST_CASE("asymptotic factors") {
  CHECK(ProblemSpec::goldman_krivchenkov(2).asymptotic_factor() ==
        std::pair<double, bool>(3.0, true));
  CHECK(ProblemSpec::spiked(3, 0.1, 4).asymptotic_factor() ==
        std::pair<double, bool>(0.0, true));
  CHECK(ProblemSpec::hermite(2).asymptotic_factor() ==
        std::pair<double, bool>(0.0, false));
  CHECK(ProblemSpec::harmonic1d().envelope(1.5) ==
        doctest::Approx(std::exp(-1.125)));
  CHECK(ProblemSpec::goldman_krivchenkov(2).envelope(2.0) ==
        doctest::Approx(8.0 * std::exp(-2.0)));
}

TEST_CASE("substitution identity certifies the builders") {
  check_substitution_identity(ProblemSpec::harmonic1d(), 2.3, 0.0, -1.2, 1.2);
  check_substitution_identity(ProblemSpec::quartic(0.1), 1.7, 0.0, -1.2, 1.2);
  check_substitution_identity(ProblemSpec::goldman_krivchenkov(1.3), 6.1, 1.0,
                              0.6, 1.4);
  check_substitution_identity(ProblemSpec::spiked(2.2, 0.3, 1.9), 8.0, 1.2,
                              0.75, 1.65);
  check_substitution_identity(
      ProblemSpec::custom(PotentialExpression::parse("x^2 + 0.05*x^4 + 1.5*x^-2")),
      5.0, 1.0, 0.65, 1.35);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ProblemSpec::hermite(-1), aim::UsageError);
  CHECK_THROWS_AS(ProblemSpec::goldman_krivchenkov(-1.5), aim::UsageError);
  CHECK_THROWS_AS(ProblemSpec::spiked(1, -0.5, 4), aim::UsageError);
  CHECK_THROWS_AS(ProblemSpec::spiked(1, 0.5, 0.0), aim::UsageError);
  CHECK_THROWS_AS(ProblemSpec::spiked_ndim(1, 0, 1, 4), aim::UsageError);
  CHECK_THROWS_AS(ProblemSpec::quartic(-1), aim::UsageError);
  CHECK_THROWS_AS(ProblemSpec::hermite(2).potential(1.0), aim::UsageError);
}

TEST_CASE("parameter json is stable") {
  CHECK(ProblemSpec::quartic(0.1).param_json() == "{\"A\":0.1}");
  CHECK(ProblemSpec::spiked(3, 0.001, 4).param_json() ==
        "{\"gamma\":3,\"A\":0.001,\"alpha_exp\":4}");
  CHECK(ProblemSpec::harmonic1d().param_json() == "{}");
}
