#ifndef AIM_POTENTIAL_HPP
#define AIM_POTENTIAL_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aim {

/// One power term c * x^beta of a potential.
struct PotentialTerm {
  double coefficient = 0.0;
  double exponent = 0.0;
  bool operator==(const PotentialTerm&) const = default;
};

/// A potential given as a sum of real-power terms, e.g. "x^2 + 0.1*x^4".
///
/// Grammar (whitespace optional everywhere):
///
///     expr     := term (('+' | '-') term)*
///     term     := sign? (number '*' xpart | xpart | number)
///     xpart    := 'x' ('^' sign? number)?
///
/// A bare number is a constant term (exponent 0). A coefficient must be
/// joined to x with '*': "2x" is a syntax error. Terms with equal
/// exponents are merged by coefficient addition; exact zero coefficients
/// are dropped. The canonical serialization lists terms by ascending
/// exponent and round-trips through parse() exactly.
class PotentialExpression {
 public:
  PotentialExpression() = default;
  explicit PotentialExpression(std::vector<PotentialTerm> terms);

  /// Throws ParseError carrying the byte offset of the failure.
  static PotentialExpression parse(std::string_view text);

  std::string serialize() const;

  double eval(double x) const;

  std::span<const PotentialTerm> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  double min_exponent() const;
  /// True when some term has a negative or non-integer exponent, i.e. the
  /// potential only makes sense on the half line x > 0.
  bool singular_or_fractional() const;
  /// True when V(-x) == V(x): every exponent is a non-negative even
  /// integer.
  bool even_symmetric() const;

  bool operator==(const PotentialExpression&) const = default;

 private:
  std::vector<PotentialTerm> terms_;  // ascending exponent, merged, no zeros

  void canonicalize();
};

/// Parameters recovered when a potential matches the spiked-oscillator
/// pattern x^2 + A/x^alpha + g/x^2 (with A >= 0). gamma solves
/// gamma*(gamma+1) = g with the root gamma >= -1/2.
struct SpikedForm {
  double gamma = 0.0;
  double coupling = 0.0;
  double alpha_exp = 0.0;
};

std::optional<SpikedForm> spiked_form_from_potential(
    const PotentialExpression& v);

}  // namespace aim

#endif
