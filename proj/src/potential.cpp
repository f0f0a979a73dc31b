#include "aim/potential.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

#include "aim/errors.hpp"

namespace aim {

namespace {

std::string format_double(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  std::vector<PotentialTerm> run() {
    std::vector<PotentialTerm> terms;
    skip_ws();
    if (eof()) throw ParseError("empty potential expression", pos_);
    bool first = true;
    while (true) {
      double sign = 1.0;
      if (!first) {
        skip_ws();
        if (eof()) break;
        const char c = peek();
        if (c == '+') {
          ++pos_;
        } else if (c == '-') {
          sign = -1.0;
          ++pos_;
        } else {
          throw ParseError("expected '+' or '-' between terms", pos_);
        }
      }
      terms.push_back(term(sign));
      first = false;
      skip_ws();
      if (eof()) break;
    }
    return terms;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  double number(const char* what) {
    skip_ws();
    if (eof() ||
        !(std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
      throw ParseError(std::string("expected ") + what, pos_);
    double v = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [p, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc())
      throw ParseError(std::string("malformed ") + what, pos_);
    pos_ = static_cast<std::size_t>(p - text_.data());
    return v;
  }

  PotentialTerm term(double sign) {
    skip_ws();
    // Unary sign inside the term ("3 + -x^2").
    if (!eof() && (peek() == '+' || peek() == '-')) {
      if (peek() == '-') sign = -sign;
      ++pos_;
      skip_ws();
    }
    double coef = 1.0;
    bool have_x = false;
    if (!eof() && peek() == 'x') {
      have_x = true;
      ++pos_;
    } else {
      coef = number("a number or 'x'");
      skip_ws();
      if (!eof() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (eof() || peek() != 'x')
          throw ParseError("expected 'x' after '*'", pos_);
        ++pos_;
        have_x = true;
      } else if (!eof() && peek() == 'x') {
        throw ParseError("expected '*' between coefficient and x", pos_);
      }
      // Otherwise a bare constant term (exponent 0).
    }
    double expn = 0.0;
    if (have_x) {
      expn = 1.0;
      skip_ws();
      if (!eof() && peek() == '^') {
        ++pos_;
        skip_ws();
        double esign = 1.0;
        if (!eof() && (peek() == '+' || peek() == '-')) {
          if (peek() == '-') esign = -1.0;
          ++pos_;
        }
        expn = esign * number("an exponent");
      }
    }
    return PotentialTerm{sign * coef, expn};
  }
};

}  // namespace

PotentialExpression::PotentialExpression(std::vector<PotentialTerm> terms)
    : terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent))
      throw UsageError("potential terms must be finite");
  canonicalize();
}

PotentialExpression PotentialExpression::parse(std::string_view text) {
  TermParser parser(text);
  return PotentialExpression(parser.run());
}

void PotentialExpression::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PotentialTerm& a, const PotentialTerm& b) {
              return a.exponent < b.exponent;
            });
  std::vector<PotentialTerm> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().exponent == t.exponent)
      merged.back().coefficient += t.coefficient;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const PotentialTerm& t) {
    return t.coefficient == 0.0;
  });
  terms_ = std::move(merged);
}

std::string PotentialExpression::serialize() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = t.coefficient < 0.0;
    const double mag = std::abs(t.coefficient);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (t.exponent == 0.0) {
      out += format_double(mag);
    } else {
      if (mag != 1.0) {
        out += format_double(mag);
        out += '*';
      }
      out += 'x';
      if (t.exponent != 1.0) {
        out += '^';
        out += format_double(t.exponent);
      }
    }
    first = false;
  }
  return out;
}

double PotentialExpression::eval(double x) const {
  double acc = 0.0;
  for (const auto& t : terms_) {
    if (t.exponent == 0.0)
      acc += t.coefficient;
    else
      acc += t.coefficient * std::pow(x, t.exponent);
  }
  return acc;
}

double PotentialExpression::min_exponent() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::min(m, t.exponent);
  return m;
}

bool PotentialExpression::singular_or_fractional() const {
  for (const auto& t : terms_)
    if (t.exponent < 0.0 || t.exponent != std::floor(t.exponent)) return true;
  return false;
}

bool PotentialExpression::even_symmetric() const {
  for (const auto& t : terms_) {
    if (t.exponent < 0.0 || t.exponent != std::floor(t.exponent))
      return false;
    if (std::fmod(t.exponent, 2.0) != 0.0) return false;
  }
  return true;
}

std::optional<SpikedForm> spiked_form_from_potential(
    const PotentialExpression& v) {
  bool have_x2 = false;
  double strength = 0.0;       // coefficient of x^-2
  bool have_spike = false;
  double coupling = 0.0, alpha_exp = 0.0;
  for (const auto& t : v.terms()) {
    if (t.exponent == 2.0) {
      if (std::abs(t.coefficient - 1.0) > 1e-12) return std::nullopt;
      have_x2 = true;
    } else if (t.exponent == -2.0) {
      strength = t.coefficient;
    } else if (t.exponent < 0.0) {
      if (have_spike) return std::nullopt;
      have_spike = true;
      coupling = t.coefficient;
      alpha_exp = -t.exponent;
    } else {
      return std::nullopt;  // extra non-negative-power term
    }
  }
  if (!have_x2) return std::nullopt;
  if (have_spike && coupling < 0.0) return std::nullopt;
  const double disc = 1.0 + 4.0 * strength;
  if (disc < 0.0) return std::nullopt;  // no real gamma
  SpikedForm form;
  form.gamma = 0.5 * (-1.0 + std::sqrt(disc));  // root gamma >= -1/2
  form.coupling = have_spike ? coupling : 0.0;
  form.alpha_exp = have_spike ? alpha_exp : 4.0;
  return form;
}

}  // namespace aim
