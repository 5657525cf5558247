#pragma once

// Analytic evaluator shared by exact_solutions and schwarz_calculus. All
// functions accept complex theta so that S(z, t) can be continued off the
// curve (needed for partial derivatives at fixed z).

#include <complex>

#include "schwarzflow/exact_solutions.hpp"

namespace schwarzflow::detail {

struct EvalOptions {
  /// Multiplies a-dot wherever it enters S_t. Only the mutation self-test of
  /// the verification suite sets this to anything but 1.
  double adot_scale = 1.0;
};

/// The four Schwarz-function derivatives at one parameter value.
struct RawJet {
  Complex S, S_z, S_zz, S_t;
  Complex z, z_theta;
};

class FamilyEvaluator {
 public:
  FamilyEvaluator(const FamilySpec& spec, double t, EvalOptions opts = {});

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double a_dot() const { return adot_; }
  [[nodiscard]] double g() const { return g_; }
  [[nodiscard]] const FamilySpec& spec() const { return spec_; }
  [[nodiscard]] double t() const { return t_; }

  /// a + e^{i theta}, evaluated without cancellation near theta = pi.
  [[nodiscard]] Complex a_plus_zeta(Complex theta) const;
  /// a e^{i theta} + 1, likewise.
  [[nodiscard]] Complex a_zeta_plus_one(Complex theta) const;

  [[nodiscard]] Complex z(Complex theta) const;
  [[nodiscard]] Complex schwarz(Complex theta) const;
  [[nodiscard]] Complex z_theta(Complex theta) const;
  [[nodiscard]] RawJet jet(Complex theta) const;

  /// Throws SingularParameterError if theta is not an admissible real parameter.
  void check_parameter(double theta) const;

 private:
  // Branch of log(a + e^{i theta}) continuous in theta and principal at 0.
  [[nodiscard]] Complex log_a_plus_zeta(Complex theta) const;

  FamilySpec spec_;
  double t_ = 0.0;
  EvalOptions opts_;
  double a_ = 1.0, adot_ = 0.0, g_ = 0.0;
  double a_minus_1_ = 0.0;   // a - 1 (signed), accurate near a = 1
  double a2_minus_1_ = 0.0;  // a^2 - 1 (signed)
  Complex rot_{1.0, 0.0};    // e^{i rotation}
};

}  // namespace schwarzflow::detail
