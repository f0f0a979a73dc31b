#include "aim/jet.hpp"

#include <cmath>
#include <cstdlib>

#include "aim/errors.hpp"

namespace aim {

Jet::Jet(double x0, std::vector<double> coeffs)
    : x0_(x0), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw UsageError("jet needs at least one coefficient");
  if (!all_finite()) throw UsageError("jet coefficients must be finite");
}

Jet Jet::constant(double v, double x0, int order) {
  if (order < 0) throw UsageError("jet order must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = v;
  return Jet(x0, std::move(c));
}

Jet Jet::power(double exponent, double coefficient, double x0, int order) {
  if (order < 0) throw UsageError("jet order must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  const bool integral =
      exponent >= 0.0 && exponent == std::floor(exponent);
  if (x0 == 0.0 || (integral && x0 <= 0.0)) {
    if (!integral)
      throw DomainError(
          "x^beta with fractional or negative beta is singular at the "
          "expansion point x0 <= 0");
    // Monomial about 0 (or any x0 via the recurrence below, but x0 == 0
    // must place the coefficient directly to avoid dividing by x0).
    if (x0 == 0.0) {
      auto k = static_cast<std::size_t>(exponent);
      if (k <= static_cast<std::size_t>(order)) c[k] = coefficient;
      return Jet(x0, std::move(c));
    }
  }
  if (x0 <= 0.0 && !integral)
    throw DomainError(
        "x^beta with fractional or negative beta requires x0 > 0");
  c[0] = coefficient * std::pow(x0, exponent);
  for (int j = 1; j <= order; ++j)
    c[static_cast<std::size_t>(j)] =
        c[static_cast<std::size_t>(j - 1)] * (exponent - j + 1) / (j * x0);
  return Jet(x0, std::move(c));
}

double Jet::eval(double x) const {
  const double h = x - x0_;
  double acc = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * h + coeffs_[j];
  return acc;
}

Jet Jet::derivative() const {
  std::vector<double> out(coeffs_.size(), 0.0);
  for (std::size_t j = 0; j + 1 < coeffs_.size(); ++j)
    out[j] = static_cast<double>(j + 1) * coeffs_[j + 1];
  return Jet(x0_, std::move(out));
}

Jet Jet::scaled(double c) const {
  std::vector<double> out(coeffs_);
  for (double& v : out) v *= c;
  return Jet(x0_, std::move(out));
}

double Jet::max_abs_coeff() const {
  double m = 0.0;
  for (double v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

bool Jet::all_finite() const {
  for (double v : coeffs_)
    if (!std::isfinite(v)) return false;
  return true;
}

void Jet::require_compatible(const Jet& a, const Jet& b) {
  if (a.x0_ != b.x0_)
    throw UsageError("jet operands expanded about different points");
  if (a.coeffs_.size() != b.coeffs_.size())
    throw UsageError("jet operands have different truncation orders");
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet::require_compatible(a, b);
  std::vector<double> out(a.coeffs_);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += b.coeffs_[j];
  return Jet(a.x0_, std::move(out));
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet::require_compatible(a, b);
  std::vector<double> out(a.coeffs_);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= b.coeffs_[j];
  return Jet(a.x0_, std::move(out));
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet::require_compatible(a, b);
  std::vector<double> out(a.coeffs_.size(), 0.0);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = a.coeffs_[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] += ai * b.coeffs_[j];
  }
  return Jet(a.x0_, std::move(out));
}

}  // namespace aim
