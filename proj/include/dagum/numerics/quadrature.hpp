#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace dagum::numerics {

enum class TailStrategy {
  exp_substitution,  // s = lo - log(u) / decay_rate, u in (0, 1]
  truncate_at_T,     // doubling panels until the contribution drops below abs_tol / 10
};

struct QuadConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int max_subdivisions = 400;
  TailStrategy tail_cutoff_strategy = TailStrategy::exp_substitution;
  /// Rate used by the exponential substitution; match it to the integrand's decay.
  double decay_rate = 1.0;

  void validate() const;
};

/// Integration range; hi may be +infinity.
struct Interval {
  double lo;
  double hi;
};

/// Algebraic endpoint behaviour (x - lo)^lo_exponent, (hi - x)^hi_exponent.
/// Exponents in (-1, 0) are removed by a power-law change of variable;
/// any other value is ignored.
struct EndpointBehavior {
  double lo_exponent = 0.0;
  double hi_exponent = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  int evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadResult& partial() const { return partial_; }

 private:
  QuadResult partial_;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (10/21) quadrature.
///
/// Converged when abs_error <= max(abs_tol, rel_tol * |value|).  Throws
/// QuadratureError (carrying the partial estimate) when max_subdivisions is
/// exhausted first, and std::invalid_argument for malformed intervals.
QuadResult integrate(const Integrand& f, Interval range, const QuadConfig& cfg = {},
                     EndpointBehavior endpoints = {});

}  // namespace dagum::numerics
