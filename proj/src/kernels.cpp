#include "dagum/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dagum::kernels {

using numerics::EndpointBehavior;
using numerics::integrate;
using numerics::Interval;
using numerics::QuadConfig;
using numerics::QuadResult;

namespace {

constexpr double kPi = std::numbers::pi;

bool near_one(double beta) { return std::abs(beta - 1.0) < kEndpointBand; }
bool near_two(double beta) { return std::abs(beta - 2.0) < kEndpointBand; }

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

void require_beta_closed(double beta) {
  require(std::isfinite(beta) && beta >= 1.0 - kEndpointBand && beta <= 2.0 + kEndpointBand,
          "beta must lie in [1, 2]");
}

void require_t(double t) { require(std::isfinite(t) && t >= 0.0, "t must be finite and >= 0"); }

// Shared trigonometric constants of a given beta.
struct Trig {
  double beta;
  double sb;  // sin(beta pi)
  double cb;  // cos(beta pi)

  double opc;  // 1 + cos(beta pi)

  explicit Trig(double b)
      : beta(b), sb(std::sin(b * kPi)), cb(std::cos(b * kPi)), opc(2.0 * std::pow(std::cos(0.5 * b * kPi), 2)) {}

  // s^beta + cos(beta pi), accurate where it nearly vanishes at s = 1, beta -> 1.
  double shifted(double s) const { return std::expm1(beta * std::log(s)) + opc; }

  // 1 + 2 s^beta cos(beta pi) + s^(2 beta) as a sum of squares.
  double denom(double s) const {
    const double u = shifted(s);
    return u * u + sb * sb;
  }
};

// exp(t cos(pi/beta)) cos(shift + t sin(pi/beta)), the pole contribution.
double pole_term(double beta, double t, double shift) {
  const double a = kPi / beta;
  return std::exp(t * std::cos(a)) * std::cos(shift + t * std::sin(a));
}

EndpointBehavior lo_hint(double exponent) {
  EndpointBehavior e;
  if (exponent > -1.0 && exponent < 0.0) e.lo_exponent = exponent;
  return e;
}

// int_0^1 h, split at 1/2 so a singular hint only applies near 0.
QuadResult folded(const numerics::Integrand& h, const QuadConfig& cfg, double lo_exponent) {
  QuadConfig half = cfg;
  half.abs_tol = 0.5 * cfg.abs_tol;
  const QuadResult a = integrate(h, Interval{0.0, 0.5}, half, lo_hint(lo_exponent));
  const QuadResult b = integrate(h, Interval{0.5, 1.0}, half);
  return QuadResult{a.value + b.value, a.abs_error + b.abs_error, a.subdivisions + b.subdivisions,
                    a.evaluations + b.evaluations};
}

// exp(-t/s); the folded tails multiply it by powers of s that can overflow.
double damp(double t, double s) { return t / s > 745.0 ? 0.0 : std::exp(-t / s); }

KernelValue closed(double value) { return KernelValue{value, 0.0, Route::closed_form}; }

double tau_closed(double beta, double t) { return near_one(beta) ? std::exp(-t) : 0.0; }

double phi_closed(double beta, double t) { return near_one(beta) ? std::exp(-t) : std::sin(t); }

KernelValue tau_primary(double beta, double t, const QuadConfig& cfg) {
  const Trig tr(beta);
  auto h = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double sbeta = std::pow(s, beta);
    const double w = std::exp(-t * s) + damp(t, s);
    return w * (sbeta / s) / tr.denom(s);
  };
  const QuadResult r = folded(h, cfg, beta - 1.0);
  const double scale = -tr.sb / kPi;
  return KernelValue{scale * r.value, std::abs(scale) * r.abs_error, Route::quadrature_primary};
}

KernelValue tau_alternate(double beta, double t, const QuadConfig& cfg) {
  // theta = phi + (beta - 3/2) pi turns the base into sin(phi) / sin(w - phi).
  const double w = (2.0 - beta) * kPi;
  auto h = [&](double p) {
    const double den = std::sin(w - p);
    if (!(den > 0.0)) return t > 0.0 ? 0.0 : 1.0;
    return std::exp(-t * std::pow(std::sin(p) / den, 1.0 / beta));
  };
  // The base rises from 0 on the scale |sin(beta pi)|, tiny as beta -> 1.
  QuadResult r;
  double lo = 0.0;
  double hi = std::min(w, std::abs(std::sin(beta * kPi)));
  while (lo < w) {
    const QuadResult piece = integrate(h, Interval{lo, hi}, cfg);
    r.value += piece.value;
    r.abs_error += piece.abs_error;
    lo = hi;
    hi = std::min(w, 10.0 * hi);
  }
  const double scale = 1.0 / (beta * kPi);
  return KernelValue{scale * r.value, scale * r.abs_error, Route::quadrature_alternate};
}

KernelValue phi_primary(double beta, double t, const QuadConfig& cfg) {
  const Trig tr(beta);
  auto h = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double sbeta = std::pow(s, beta);
    const double near = std::exp(-t * s) * sbeta;
    const double d = damp(t, s);
    const double far = d == 0.0 ? 0.0 : d * (sbeta / s) / s;
    return (near + far) / tr.denom(s);
  };
  const QuadResult r = folded(h, cfg, t > 0.0 ? 0.0 : beta - 2.0);
  const double scale = tr.sb / kPi;
  const double value = scale * r.value - (2.0 / beta) * pole_term(beta, t, kPi / beta);
  return KernelValue{value, std::abs(scale) * r.abs_error, Route::quadrature_primary};
}

KernelValue phi_alternate(double beta, double t, const QuadConfig& cfg) {
  const Trig tr(beta);
  // arctan((s^beta + cos(beta pi)) / sin(beta pi)) + pi/2 without cancellation.
  auto h = [&](double s) {
    if (s <= 0.0) return std::atan2(-tr.sb, tr.cb);
    const double near = std::atan2(-tr.sb, tr.shifted(s)) * (1.0 - t * s) * std::exp(-t * s);
    const double d = damp(t, s);
    if (d == 0.0) return near;
    // angle at 1/s, scaled through by s^beta > 0.
    const double sbeta = std::pow(s, beta);
    const double far_angle = std::atan2(-tr.sb * sbeta, tr.cb * tr.shifted(s) + tr.sb * tr.sb);
    const double far = (far_angle / s / s) * (1.0 - t / s) * d;
    return near + far;
  };
  const QuadResult r = folded(h, cfg, t > 0.0 ? 0.0 : beta - 2.0);
  const double scale = -1.0 / (beta * kPi);
  const double value = scale * r.value - (2.0 / beta) * pole_term(beta, t, kPi / beta);
  return KernelValue{value, std::abs(scale) * r.abs_error, Route::quadrature_alternate};
}

// eta for 0 < alpha < 1/2.
QuadResult eta_cut_small(double alpha, double beta, double t, const QuadConfig& cfg) {
  const Trig tr(beta);
  const double a = std::sin(alpha * kPi);
  const double b = std::sin((alpha + beta) * kPi);
  auto h = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double sbeta = std::pow(s, beta);
    const double near = std::exp(-t * s) * std::pow(s, -alpha) * (a + sbeta * b);
    const double d = damp(t, s);
    const double far = d == 0.0 ? 0.0 : d * std::pow(s, alpha + beta - 2.0) * (a * sbeta + b);
    return (near + far) / tr.denom(s);
  };
  return folded(h, cfg, -alpha);
}

// eta for 1/2 <= alpha < 1 + beta, t > 0, without the kappa term.
QuadResult eta_cut_large(double alpha, double beta, double t, const QuadConfig& cfg) {
  const Trig tr(beta);
  const double a = std::sin((beta - alpha) * kPi);
  const double b = std::sin(alpha * kPi);
  auto h = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double sbeta = std::pow(s, beta);
    const double near = std::exp(-t * s) * std::pow(s, beta - alpha) * (a - sbeta * b);
    const double d = damp(t, s);
    const double far = d == 0.0 ? 0.0 : d * std::pow(s, alpha - 2.0) * (a * sbeta - b);
    return (near + far) / tr.denom(s);
  };
  return folded(h, cfg, beta - alpha);
}

KernelValue eta_beta_one(double alpha, double t, const QuadConfig& cfg) {
  auto h = [&](double r) { return std::pow(r, alpha - 1.0) * std::exp(r - t); };
  const QuadResult q = integrate(h, Interval{0.0, t}, cfg, lo_hint(alpha - 1.0));
  const double g = std::tgamma(alpha);
  return KernelValue{q.value / g, q.abs_error / g, Route::quadrature_alternate};
}

KernelValue eta_generic(double alpha, double beta, double t, const QuadConfig& cfg) {
  if (alpha >= 1.0 + beta) {
    const KernelValue lower = eta_generic(alpha - beta, beta, t, cfg);
    return KernelValue{kappa(alpha, t) - lower.value, lower.err_estimate, Route::quadrature_alternate};
  }
  const double pole = (2.0 / beta) * pole_term(beta, t, (1.0 - alpha) * kPi / beta);
  if (alpha < 0.5) {
    const QuadResult r = eta_cut_small(alpha, beta, t, cfg);
    return KernelValue{r.value / kPi - pole, r.abs_error / kPi, Route::quadrature_alternate};
  }
  const QuadResult r = eta_cut_large(alpha, beta, t, cfg);
  return KernelValue{kappa(alpha, t) + r.value / kPi - pole, r.abs_error / kPi, Route::quadrature_alternate};
}

}  // namespace

const char* to_string(Route route) {
  switch (route) {
    case Route::closed_form: return "closed_form";
    case Route::quadrature_primary: return "quadrature_primary";
    case Route::quadrature_alternate: return "quadrature_alternate";
  }
  return "unknown";
}

QuadConfig default_kernel_config() {
  QuadConfig cfg;
  cfg.abs_tol = 1e-9;
  cfg.rel_tol = 1e-9;
  cfg.max_subdivisions = 400;
  return cfg;
}

double kappa(double alpha, double t) {
  require(std::isfinite(alpha) && alpha > 0.0, "kappa: alpha must be > 0");
  require(std::isfinite(t) && t > 0.0, "kappa: t must be > 0");
  return std::pow(t, alpha - 1.0) / std::tgamma(alpha);
}

double rho_kernel(double beta, double t) {
  require_beta_closed(beta);
  require_t(t);
  if (near_one(beta)) return 1.0 - 2.0 * std::exp(-t);
  if (near_two(beta)) return 1.0 - std::cos(t);
  return 1.0 - (2.0 / beta) * pole_term(beta, t, 0.0);
}

KernelValue tau_kernel(double beta, double t, Route route, const QuadConfig& cfg) {
  require_beta_closed(beta);
  require_t(t);
  cfg.validate();
  if (near_one(beta) || near_two(beta)) return closed(tau_closed(beta, t));
  return route == Route::quadrature_alternate ? tau_alternate(beta, t, cfg) : tau_primary(beta, t, cfg);
}

KernelValue phi(double beta, double t, Route route, const QuadConfig& cfg) {
  require_beta_closed(beta);
  require_t(t);
  cfg.validate();
  if (near_one(beta) || near_two(beta)) return closed(phi_closed(beta, t));
  if (t == 0.0) return closed(0.0);  // x / (1 + x^beta) -> 0 as x -> inf
  return route == Route::quadrature_alternate ? phi_alternate(beta, t, cfg) : phi_primary(beta, t, cfg);
}

KernelValue psi(double beta, double t, const QuadConfig& cfg) {
  const KernelValue tau = tau_kernel(beta, t, Route::quadrature_primary, cfg);
  return KernelValue{rho_kernel(beta, t) + tau.value, tau.err_estimate, tau.route};
}

KernelValue psi_minus_one(double beta, double t, const QuadConfig& cfg) {
  require_beta_closed(beta);
  require_t(t);
  if (near_one(beta)) return closed(-std::exp(-t));
  if (near_two(beta)) return closed(-std::cos(t));
  const KernelValue tau = tau_kernel(beta, t, Route::quadrature_primary, cfg);
  return KernelValue{tau.value - (2.0 / beta) * pole_term(beta, t, 0.0), tau.err_estimate, tau.route};
}

KernelValue eta(double alpha, double beta, double t, const QuadConfig& cfg) {
  require(std::isfinite(alpha) && alpha > 0.0, "eta: alpha must be > 0");
  require_beta_closed(beta);
  require(std::isfinite(t) && t > 0.0, "eta: t must be > 0");
  cfg.validate();
  if (near_one(beta)) return eta_beta_one(alpha, t, cfg);
  return eta_generic(alpha, std::min(beta, 2.0), t, cfg);
}

KernelValue eta_convolution(double alpha, double beta, double t, const QuadConfig& cfg) {
  require(std::isfinite(alpha) && alpha > 0.0, "eta: alpha must be > 0");
  require_beta_closed(beta);
  require(std::isfinite(t) && t > 0.0, "eta: t must be > 0");
  cfg.validate();
  QuadConfig inner = cfg;
  inner.abs_tol = 0.1 * cfg.abs_tol;
  inner.rel_tol = 0.1 * cfg.rel_tol;
  auto h = [&](double s) {
    if (s >= t) return 0.0;
    return std::pow(t - s, alpha - 1.0) * phi(beta, s, Route::quadrature_primary, inner).value;
  };
  EndpointBehavior ends;
  if (alpha < 1.0) ends.hi_exponent = alpha - 1.0;
  const QuadResult r = integrate(h, Interval{0.0, t}, cfg, ends);
  const double g = std::tgamma(alpha);
  return KernelValue{r.value / g, r.abs_error / g, Route::quadrature_primary};
}

double laplace_check(LaplaceKernel kernel, double beta, double x, double alpha) {
  require(std::isfinite(x) && x > 0.0, "laplace_check: x must be > 0");
  require_beta_closed(beta);
  QuadConfig outer = default_kernel_config();
  outer.abs_tol = 1e-10;
  outer.rel_tol = 1e-10;
  outer.decay_rate = x;
  QuadConfig inner = default_kernel_config();
  inner.abs_tol = 1e-11;
  inner.rel_tol = 1e-11;

  const double xb = std::pow(x, beta);
  double target = 0.0;
  numerics::Integrand k;
  switch (kernel) {
    case LaplaceKernel::phi:
      target = 1.0 / (1.0 + xb);
      k = [&](double t) { return phi(beta, t, Route::quadrature_primary, inner).value; };
      break;
    case LaplaceKernel::psi:
      target = 1.0 / (x * (1.0 + xb));
      k = [&](double t) { return psi(beta, t, inner).value; };
      break;
    case LaplaceKernel::eta:
      require(std::isfinite(alpha) && alpha > 0.0, "laplace_check: alpha must be > 0 for eta");
      target = std::pow(x, -alpha) / (1.0 + xb);
      k = [&](double t) { return t > 0.0 ? eta(alpha, beta, t, inner).value : 0.0; };
      break;
  }
  auto f = [&](double t) { return std::exp(-x * t) * k(t); };
  EndpointBehavior ends;
  if (kernel == LaplaceKernel::eta && alpha < 1.0) ends.lo_exponent = alpha - 1.0;
  const QuadResult r = integrate(f, Interval{0.0, std::numeric_limits<double>::infinity()}, outer, ends);
  return std::abs(r.value - target);
}

}  // namespace dagum::kernels
