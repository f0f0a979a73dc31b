#include "aim/problems.hpp"

#include <charconv>
#include <cmath>

#include "aim/errors.hpp"

namespace aim {

namespace {

std::string num(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

Jet linear_2x(double x0, int order) {
  return Jet::power(1.0, 2.0, x0, order);
}

}  // namespace

ProblemSpec ProblemSpec::hermite(int k) {
  if (k < 0) throw UsageError("hermite order k must be >= 0");
  ProblemSpec p;
  p.kind_ = ProblemKind::hermite;
  p.k_ = k;
  return p;
}

ProblemSpec ProblemSpec::harmonic1d() {
  ProblemSpec p;
  p.kind_ = ProblemKind::harmonic1d;
  return p;
}

ProblemSpec ProblemSpec::goldman_krivchenkov(double gamma) {
  if (!(gamma >= -1.0))
    throw UsageError("gamma must be >= -1");
  ProblemSpec p;
  p.kind_ = ProblemKind::goldman_krivchenkov;
  p.gamma_ = gamma;
  return p;
}

ProblemSpec ProblemSpec::spiked(double gamma, double coupling,
                                double alpha_exp) {
  if (!(gamma >= -1.0)) throw UsageError("gamma must be >= -1");
  if (!(coupling >= 0.0)) throw UsageError("coupling A must be >= 0");
  if (!(alpha_exp > 0.0)) throw UsageError("exponent alpha must be > 0");
  ProblemSpec p;
  p.kind_ = ProblemKind::spiked;
  p.gamma_ = gamma;
  p.coupling_ = coupling;
  p.alpha_exp_ = alpha_exp;
  return p;
}

ProblemSpec ProblemSpec::spiked_ndim(int n_dim, int l, double coupling,
                                     double alpha_exp) {
  if (n_dim < 2) throw UsageError("dimension N must be >= 2");
  if (l < 0) throw UsageError("angular momentum l must be >= 0");
  ProblemSpec p = spiked(l + (n_dim - 3) / 2.0, coupling, alpha_exp);
  p.ndim_l_ = std::make_pair(n_dim, l);
  return p;
}

ProblemSpec ProblemSpec::custom(const PotentialExpression& v) {
  if (v.empty()) throw UsageError("custom potential must not be empty");
  // Expressions matching the spiked pattern are promoted so the known
  // factorization (and exact energies for A = 0) apply.
  if (v.singular_or_fractional()) {
    if (auto form = spiked_form_from_potential(v)) {
      if (form->coupling == 0.0) return goldman_krivchenkov(form->gamma);
      return spiked(form->gamma, form->coupling, form->alpha_exp);
    }
  }
  if (v.min_exponent() < -2.0)
    throw DomainError(
        "potential terms x^beta with beta < -2 are outside the implemented "
        "asymptotic factorization");
  ProblemSpec p;
  p.kind_ = ProblemKind::custom;
  p.expr_ = v;
  return p;
}

bool ProblemSpec::half_line() const {
  switch (kind_) {
    case ProblemKind::goldman_krivchenkov:
    case ProblemKind::spiked:
      return true;
    case ProblemKind::custom:
      return expr_.singular_or_fractional();
    default:
      return false;
  }
}

bool ProblemSpec::singular_origin() const {
  switch (kind_) {
    case ProblemKind::goldman_krivchenkov:
      return gamma_ != -1.0;
    case ProblemKind::spiked:
      return coupling_ != 0.0 || gamma_ * (gamma_ + 1.0) != 0.0;
    case ProblemKind::custom:
      return expr_.singular_or_fractional();
    default:
      return false;
  }
}

std::pair<Jet, Jet> ProblemSpec::build_coefficients(double E, double x0,
                                                    int order) const {
  if (order < 0) throw UsageError("jet order must be >= 0");
  if (singular_origin() && x0 <= 0.0)
    throw DomainError(name() +
                      " has a singular term; jets require x0 > 0");
  switch (kind_) {
    case ProblemKind::hermite:
      return {linear_2x(x0, order),
              Jet::constant(-2.0 * k_, x0, order)};
    case ProblemKind::harmonic1d:
      return {linear_2x(x0, order), Jet::constant(1.0 - E, x0, order)};
    case ProblemKind::goldman_krivchenkov: {
      Jet lambda0 = linear_2x(x0, order);
      if (gamma_ != -1.0)
        lambda0 = lambda0 +
                  Jet::power(-1.0, -2.0 * (gamma_ + 1.0), x0, order);
      return {std::move(lambda0),
              Jet::constant(2.0 * gamma_ + 3.0 - E, x0, order)};
    }
    case ProblemKind::spiked: {
      Jet s0 = Jet::constant(1.0 - E, x0, order);
      if (coupling_ != 0.0)
        s0 = s0 + Jet::power(-alpha_exp_, coupling_, x0, order);
      const double strength = gamma_ * (gamma_ + 1.0);
      if (strength != 0.0)
        s0 = s0 + Jet::power(-2.0, strength, x0, order);
      return {linear_2x(x0, order), std::move(s0)};
    }
    case ProblemKind::quartic: {
      Jet s0 = Jet::constant(1.0 - E, x0, order);
      if (coupling_ != 0.0)
        s0 = s0 + Jet::power(4.0, coupling_, x0, order);
      return {linear_2x(x0, order), std::move(s0)};
    }
    case ProblemKind::custom: {
      // s0 = 1 - E + V(x) - x^2 for the Gaussian envelope.
      Jet s0 = Jet::constant(1.0 - E, x0, order);
      bool removed_x2 = false;
      for (const auto& t : expr_.terms()) {
        double c = t.coefficient;
        if (t.exponent == 2.0) {
          c -= 1.0;
          removed_x2 = true;
        }
        if (c != 0.0) s0 = s0 + Jet::power(t.exponent, c, x0, order);
      }
      if (!removed_x2) s0 = s0 + Jet::power(2.0, -1.0, x0, order);
      return {linear_2x(x0, order), std::move(s0)};
    }
  }
  throw UsageError("unknown problem kind");
}

std::pair<double, bool> ProblemSpec::asymptotic_factor() const {
  switch (kind_) {
    case ProblemKind::hermite:
      return {0.0, false};  // equation already in base form
    case ProblemKind::goldman_krivchenkov:
      return {gamma_ + 1.0, true};
    default:
      return {0.0, true};
  }
}

double ProblemSpec::envelope(double x) const {
  auto [pe, gaussian] = asymptotic_factor();
  double f = pe == 0.0 ? 1.0 : std::pow(x, pe);
  if (gaussian) f *= std::exp(-0.5 * x * x);
  return f;
}

double ProblemSpec::potential(double x) const {
  switch (kind_) {
    case ProblemKind::hermite:
      throw UsageError("hermite is not a Schrodinger problem");
    case ProblemKind::harmonic1d:
      return x * x;
    case ProblemKind::goldman_krivchenkov:
      return x * x + gamma_ * (gamma_ + 1.0) / (x * x);
    case ProblemKind::spiked:
      return x * x + gamma_ * (gamma_ + 1.0) / (x * x) +
             coupling_ * std::pow(x, -alpha_exp_);
    case ProblemKind::quartic:
      return x * x + coupling_ * std::pow(x, 4);
    case ProblemKind::custom:
      return expr_.eval(x);
  }
  throw UsageError("unknown problem kind");
}

std::string ProblemSpec::name() const {
  switch (kind_) {
    case ProblemKind::hermite:
      return "hermite";
    case ProblemKind::harmonic1d:
      return "harmonic1d";
    case ProblemKind::goldman_krivchenkov:
      return "gk";
    case ProblemKind::spiked:
      return "spiked";
    case ProblemKind::quartic:
      return "quartic";
    case ProblemKind::custom:
      return "custom";
  }
  return "unknown";
}

std::string ProblemSpec::param_json() const {
  std::string j = "{";
  switch (kind_) {
    case ProblemKind::hermite:
      j += "\"k\":" + std::to_string(k_);
      break;
    case ProblemKind::harmonic1d:
      break;
    case ProblemKind::goldman_krivchenkov:
      j += "\"gamma\":" + num(gamma_);
      break;
    case ProblemKind::spiked:
      j += "\"gamma\":" + num(gamma_) + ",\"A\":" + num(coupling_) +
           ",\"alpha_exp\":" + num(alpha_exp_);
      if (ndim_l_)
        j += ",\"N\":" + std::to_string(ndim_l_->first) +
             ",\"l\":" + std::to_string(ndim_l_->second);
      break;
    case ProblemKind::quartic:
      j += "\"A\":" + num(coupling_);
      break;
    case ProblemKind::custom:
      j += "\"potential\":\"" + expr_.serialize() + "\"";
      break;
  }
  j += "}";
  return j;
}

ProblemSpec ProblemSpec::quartic(double coupling) {
  if (!(coupling >= 0.0)) throw UsageError("coupling A must be >= 0");
  ProblemSpec p;
  p.kind_ = ProblemKind::quartic;
  p.coupling_ = coupling;
  return p;
}

}  // namespace aim
