#ifndef AIM_PROBLEMS_HPP
#define AIM_PROBLEMS_HPP

#include <optional>
#include <string>
#include <utility>

#include "aim/jet.hpp"
#include "aim/potential.hpp"

namespace aim {

enum class ProblemKind {
  hermite,
  harmonic1d,
  goldman_krivchenkov,
  spiked,
  quartic,
  custom,
};

/// A Schrodinger-type problem factored as psi = f_asym * y, where
/// f_asym = x^pe * exp(-x^2/2) is the large-x envelope and y satisfies the
/// base equation y'' = lambda0 y' + s0 y.  The spec captures everything
/// needed to build the (lambda0, s0) jets for a trial energy E:
///
///   harmonic1d            lambda0 = 2x            s0 = 1 - E
///   goldman_krivchenkov   lambda0 = 2(r-(g+1)/r)  s0 = 2g + 3 - E
///   spiked                lambda0 = 2x            s0 = 1 - E + A x^-a + g(g+1) x^-2
///   quartic               lambda0 = 2x            s0 = 1 - E + A x^4
///   hermite               lambda0 = 2x            s0 = -2k           (no E)
///   custom                lambda0 = 2x            s0 = 1 - E + V(x) - x^2
///
/// The custom route keeps the Gaussian envelope; expressions that match
/// the spiked pattern are promoted to the spiked/goldman_krivchenkov
/// kinds, and any remaining term with exponent < -2 is rejected (the
/// factorization does not cover stronger singularities).
class ProblemSpec {
 public:
  static ProblemSpec hermite(int k);
  static ProblemSpec harmonic1d();
  static ProblemSpec goldman_krivchenkov(double gamma);
  static ProblemSpec spiked(double gamma, double coupling, double alpha_exp);
  /// N-dimensional reduction: gamma = l + (N-3)/2, N >= 2, l >= 0.
  static ProblemSpec spiked_ndim(int n_dim, int l, double coupling,
                                 double alpha_exp);
  static ProblemSpec quartic(double coupling);
  static ProblemSpec custom(const PotentialExpression& v);

  ProblemKind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double coupling() const { return coupling_; }
  double alpha_exp() const { return alpha_exp_; }
  int hermite_k() const { return k_; }
  const PotentialExpression& expression() const { return expr_; }
  std::optional<std::pair<int, int>> ndim_l() const { return ndim_l_; }

  /// False for the hermite kind, which has no energy parameter.
  bool eigenproblem() const { return kind_ != ProblemKind::hermite; }

  /// Problems living on (0, inf) with a Dirichlet condition at the origin.
  bool half_line() const;

  /// True when building jets requires x0 > 0.
  bool singular_origin() const;

  /// (lambda0, s0) jets about x0 at the given truncation order.
  /// Throws DomainError when x0 is outside the problem's domain.
  std::pair<Jet, Jet> build_coefficients(double E, double x0,
                                         int order) const;

  /// The envelope f_asym as (power exponent, gaussian flag).
  std::pair<double, bool> asymptotic_factor() const;
  double envelope(double x) const;

  /// V(x) for the direct-integration oracle. Throws UsageError for
  /// hermite, which is not a Schrodinger problem.
  double potential(double x) const;

  std::string name() const;
  std::string param_json() const;

 private:
  ProblemKind kind_ = ProblemKind::harmonic1d;
  double gamma_ = 0.0;
  double coupling_ = 0.0;
  double alpha_exp_ = 0.0;
  int k_ = 0;
  PotentialExpression expr_;
  std::optional<std::pair<int, int>> ndim_l_;

  ProblemSpec() = default;
};

}  // namespace aim

#endif
