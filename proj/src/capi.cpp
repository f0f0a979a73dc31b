#include "aim.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "aim/closed_form.hpp"
#include "aim/eigensolver.hpp"
#include "aim/errors.hpp"
#include "aim/oracle.hpp"
#include "aim/potential.hpp"
#include "aim/problems.hpp"

struct aim_problem {
  aim::ProblemSpec spec;
};

namespace {

thread_local std::string t_last_error;
thread_local long t_last_offset = -1;

void clear_error() {
  t_last_error.clear();
  t_last_offset = -1;
}

aim_status fail(aim_status code, const std::string& message,
                long offset = -1) {
  t_last_error = message;
  t_last_offset = offset;
  return code;
}

/// Runs the body and maps library exceptions onto status codes.
template <typename Fn>
aim_status guarded(Fn&& body) {
  clear_error();
  try {
    body();
    return AIM_OK;
  } catch (const aim::ParseError& e) {
    return fail(AIM_ERR_PARSE, e.what(), static_cast<long>(e.offset));
  } catch (const aim::UsageError& e) {
    return fail(AIM_ERR_USAGE, e.what());
  } catch (const aim::DomainError& e) {
    return fail(AIM_ERR_DOMAIN, e.what());
  } catch (const aim::OverflowError& e) {
    return fail(AIM_ERR_OVERFLOW, e.what());
  } catch (const aim::DegeneracyError& e) {
    return fail(AIM_ERR_DEGENERATE, e.what());
  } catch (const aim::ConvergenceError& e) {
    return fail(AIM_ERR_NO_CONVERGENCE, e.what());
  } catch (const aim::NoBracketError& e) {
    return fail(AIM_ERR_NO_BRACKET, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AIM_ERR_INTERNAL, "unknown error");
  }
}

aim_status copy_out(const std::string& s, char* buf, size_t cap) {
  if (buf == nullptr || cap == 0)
    return fail(AIM_ERR_USAGE, "output buffer required");
  const size_t n = std::min(s.size(), cap - 1);
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
  if (n < s.size())
    return fail(AIM_ERR_BUFFER,
                "buffer too small (" + std::to_string(s.size() + 1) +
                    " bytes needed)");
  return AIM_OK;
}

void make_problem(aim::ProblemSpec spec, aim_problem** out) {
  if (out == nullptr) throw aim::UsageError("output handle required");
  *out = new aim_problem{std::move(spec)};
}

aim::SolverConfig to_config(const aim_solver_options* opts) {
  aim::SolverConfig cfg;
  if (opts == nullptr) return cfg;
  switch (opts->x0_policy) {
    case AIM_X0_FIXED:
      cfg.x0_policy = aim::X0Policy::fixed;
      break;
    case AIM_X0_POTENTIAL_MIN:
      cfg.x0_policy = aim::X0Policy::potential_min;
      break;
    case AIM_X0_S0_ZERO:
      cfg.x0_policy = aim::X0Policy::s0_zero;
      break;
    case AIM_X0_ZERO:
      cfg.x0_policy = aim::X0Policy::zero;
      break;
    default:
      cfg.x0_policy = aim::X0Policy::automatic;
      break;
  }
  cfg.x0_value = opts->x0_value;
  cfg.max_iter = opts->max_iter;
  cfg.jet_order = opts->jet_order;
  cfg.e_min = opts->e_min;
  cfg.e_max = opts->e_max;
  cfg.e_step = opts->e_step;
  cfg.stab_window = opts->stab_window;
  cfg.root_tol = opts->root_tol;
  cfg.max_threads = opts->max_threads;
  return cfg;
}

const aim::ProblemSpec& spec_of(const aim_problem* p) {
  if (p == nullptr) throw aim::UsageError("null problem handle");
  return p->spec;
}

}  // namespace

extern "C" {

void aim_solver_options_init(aim_solver_options* opts) {
  if (opts == nullptr) return;
  const aim::SolverConfig cfg;
  opts->x0_policy = AIM_X0_AUTO;
  opts->x0_value = cfg.x0_value;
  opts->max_iter = cfg.max_iter;
  opts->jet_order = cfg.jet_order;
  opts->e_min = cfg.e_min;
  opts->e_max = cfg.e_max;
  opts->e_step = cfg.e_step;
  opts->stab_window = cfg.stab_window;
  opts->root_tol = cfg.root_tol;
  opts->max_threads = cfg.max_threads;
}

aim_status aim_problem_create_hermite(int k, aim_problem** out) {
  return guarded([&] { make_problem(aim::ProblemSpec::hermite(k), out); });
}

aim_status aim_problem_create_harmonic1d(aim_problem** out) {
  return guarded([&] { make_problem(aim::ProblemSpec::harmonic1d(), out); });
}

aim_status aim_problem_create_gk(double gamma, aim_problem** out) {
  return guarded(
      [&] { make_problem(aim::ProblemSpec::goldman_krivchenkov(gamma), out); });
}

aim_status aim_problem_create_spiked(double gamma, double coupling,
                                     double alpha_exp, aim_problem** out) {
  return guarded([&] {
    make_problem(aim::ProblemSpec::spiked(gamma, coupling, alpha_exp), out);
  });
}

aim_status aim_problem_create_spiked_ndim(int n_dim, int l, double coupling,
                                          double alpha_exp,
                                          aim_problem** out) {
  return guarded([&] {
    make_problem(aim::ProblemSpec::spiked_ndim(n_dim, l, coupling, alpha_exp),
                 out);
  });
}

aim_status aim_problem_create_quartic(double coupling, aim_problem** out) {
  return guarded(
      [&] { make_problem(aim::ProblemSpec::quartic(coupling), out); });
}

aim_status aim_problem_create_custom(const char* potential_text,
                                     aim_problem** out) {
  return guarded([&] {
    if (potential_text == nullptr)
      throw aim::UsageError("potential text required");
    auto expr = aim::PotentialExpression::parse(potential_text);
    make_problem(aim::ProblemSpec::custom(expr), out);
  });
}

void aim_problem_free(aim_problem* p) { delete p; }

aim_status aim_problem_name(const aim_problem* p, char* buf, size_t cap) {
  std::string name;
  const aim_status st = guarded([&] { name = spec_of(p).name(); });
  if (st != AIM_OK) return st;
  return copy_out(name, buf, cap);
}

aim_status aim_problem_param_json(const aim_problem* p, char* buf,
                                  size_t cap) {
  std::string json;
  const aim_status st = guarded([&] { json = spec_of(p).param_json(); });
  if (st != AIM_OK) return st;
  return copy_out(json, buf, cap);
}

int aim_problem_is_eigenproblem(const aim_problem* p) {
  return p != nullptr && p->spec.eigenproblem() ? 1 : 0;
}

int aim_problem_is_half_line(const aim_problem* p) {
  return p != nullptr && p->spec.half_line() ? 1 : 0;
}

aim_status aim_problem_potential(const aim_problem* p, double x,
                                 double* out) {
  return guarded([&] {
    if (out == nullptr) throw aim::UsageError("output pointer required");
    *out = spec_of(p).potential(x);
  });
}

aim_status aim_problem_envelope(const aim_problem* p, double x, double* out) {
  return guarded([&] {
    if (out == nullptr) throw aim::UsageError("output pointer required");
    *out = spec_of(p).envelope(x);
  });
}

aim_status aim_exact_energy(const aim_problem* p, int level, int* has_exact,
                            double* out) {
  return guarded([&] {
    if (has_exact == nullptr || out == nullptr)
      throw aim::UsageError("output pointers required");
    const auto e = aim::exact_energy(spec_of(p), level);
    *has_exact = e.has_value() ? 1 : 0;
    *out = e.value_or(0.0);
  });
}

aim_status aim_resolve_x0(const aim_problem* p, const aim_solver_options* opts,
                          double e_guess, double* out) {
  return guarded([&] {
    if (out == nullptr) throw aim::UsageError("output pointer required");
    *out = aim::resolve_x0(spec_of(p), to_config(opts), e_guess);
  });
}

aim_status aim_delta(const aim_problem* p, double energy, double x0,
                     int depth, int order, double* out) {
  return guarded([&] {
    if (out == nullptr) throw aim::UsageError("output pointer required");
    const int effective_order = order > 0 ? order : 2 * depth + 8;
    *out = aim::solver_delta(spec_of(p), energy, x0, depth, effective_order);
  });
}

aim_status aim_solve_spectrum(const aim_problem* p,
                              const aim_solver_options* opts, int count,
                              aim_eigenvalue* results, int* found) {
  return guarded([&] {
    if (results == nullptr || found == nullptr)
      throw aim::UsageError("output pointers required");
    const auto got = aim::solve_spectrum(spec_of(p), to_config(opts), count);
    *found = static_cast<int>(got.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      results[i].energy = got[i].E;
      results[i].n_used = got[i].n_used;
      results[i].delta_residual = got[i].delta_residual;
      results[i].x0_used = got[i].x0_used;
      results[i].stabilized = got[i].stabilized ? 1 : 0;
    }
  });
}

aim_status aim_scan_brackets(const aim_problem* p,
                             const aim_solver_options* opts, double* lo,
                             double* hi, int cap, int* found, int* skipped) {
  int total = 0;
  const aim_status st = guarded([&] {
    if (lo == nullptr || hi == nullptr || found == nullptr ||
        skipped == nullptr)
      throw aim::UsageError("output pointers required");
    const auto sc = aim::scan(spec_of(p), to_config(opts));
    *skipped = static_cast<int>(sc.skipped.size());
    total = static_cast<int>(sc.brackets.size());
    *found = total;
    const int n = std::min(cap, total);
    for (int i = 0; i < n; ++i) {
      lo[i] = sc.brackets[static_cast<std::size_t>(i)].lo;
      hi[i] = sc.brackets[static_cast<std::size_t>(i)].hi;
    }
  });
  if (st != AIM_OK) return st;
  if (total > cap)
    return fail(AIM_ERR_BUFFER, "bracket buffer holds " + std::to_string(cap) +
                                    " of " + std::to_string(total));
  return AIM_OK;
}

aim_status aim_oracle_spectrum(const aim_problem* p, int count, double r_max,
                               int m, double* out) {
  return guarded([&] {
    if (out == nullptr) throw aim::UsageError("output pointer required");
    const double rm = r_max > 0.0 ? r_max : 12.0;
    const int gm = m > 0 ? m : 4000;
    const auto eigs = aim::oracle_spectrum(spec_of(p), count, rm, gm);
    for (std::size_t i = 0; i < eigs.size(); ++i) out[i] = eigs[i];
  });
}

aim_status aim_reconstruct(const aim_problem* p, int level,
                           const aim_solver_options* opts, double x_lo,
                           double x_hi, int n_points, double c1, double c2,
                           double* y_out, double* psi_out) {
  return guarded([&] {
    const auto res = aim::reconstruct_level(
        spec_of(p), level, to_config(opts), x_lo, x_hi, n_points, c1, c2);
    for (std::size_t i = 0; i < res.y_vals.size(); ++i) {
      if (y_out != nullptr) y_out[i] = res.y_vals[i];
      if (psi_out != nullptr) psi_out[i] = res.psi_vals[i];
    }
  });
}

aim_status aim_potential_canonical(const char* text, char* buf, size_t cap) {
  std::string canonical;
  const aim_status st = guarded([&] {
    if (text == nullptr) throw aim::UsageError("potential text required");
    canonical = aim::PotentialExpression::parse(text).serialize();
  });
  if (st != AIM_OK) return st;
  return copy_out(canonical, buf, cap);
}

const char* aim_last_error(void) { return t_last_error.c_str(); }

long aim_last_error_offset(void) { return t_last_offset; }

const char* aim_version(void) { return "1.0.0"; }

}  // extern "C"
