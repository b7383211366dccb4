#pragma once

#include "dagum/numerics/quadrature.hpp"

namespace dagum::kernels {

enum class Route { closed_form, quadrature_primary, quadrature_alternate };

const char* to_string(Route route);

struct KernelValue {
  double value = 0.0;
  double err_estimate = 0.0;  // absolute; zero for closed forms
  Route route = Route::closed_form;
};

/// Within this distance of beta = 1 or beta = 2 the closed-form endpoint
/// kernels are used.
inline constexpr double kEndpointBand = 1e-6;

/// Quadrature settings shared by all kernel integrals.
numerics::QuadConfig default_kernel_config();

/// t^(alpha-1) / Gamma(alpha), the Laplace preimage of x^-alpha.
double kappa(double alpha, double t);

/// 1 - (2/beta) exp(t cos(pi/beta)) cos(t sin(pi/beta)), beta in [1, 2].
double rho_kernel(double beta, double t);

/// The completely monotonic part of psi_beta: psi_beta = rho_beta + tau_beta.
///
/// primary: -(sin(beta pi)/pi) int_0^inf e^{-ts} s^{beta-1} / D(s) ds,
///   with D(s) = 1 + 2 s^beta cos(beta pi) + s^{2 beta}, folded onto [0, 1].
/// alternate: (1/(beta pi)) int over u of exp(-t s(u)) / (1 + u^2) with
///   s^beta = -u sin(beta pi) - cos(beta pi), written with u = tan(theta).
KernelValue tau_kernel(double beta, double t, Route route = Route::quadrature_primary,
                       const numerics::QuadConfig& cfg = default_kernel_config());

/// Laplace preimage of 1 / (1 + x^beta).
///
/// primary: (sin(beta pi)/pi) int e^{-ts} s^beta / D(s) ds minus the pole term.
/// alternate: the integrated-by-parts arctan form.
/// Closed forms e^{-t} and sin t near beta = 1 and beta = 2.
KernelValue phi(double beta, double t, Route route = Route::quadrature_primary,
                const numerics::QuadConfig& cfg = default_kernel_config());

/// psi_beta(t) = int_0^t phi_beta, evaluated as rho_beta + tau_beta.
KernelValue psi(double beta, double t, const numerics::QuadConfig& cfg = default_kernel_config());

/// psi_beta(t) - 1 without the cancellation of forming psi first.
KernelValue psi_minus_one(double beta, double t, const numerics::QuadConfig& cfg = default_kernel_config());

/// eta_{alpha,beta}(t) = (kappa_alpha * phi_beta)(t), the Laplace preimage of
/// x^-alpha / (1 + x^beta), from a single-integral (branch cut plus poles)
/// representation.  Route is quadrature_alternate.
KernelValue eta(double alpha, double beta, double t, const numerics::QuadConfig& cfg = default_kernel_config());

/// eta_{alpha,beta}(t) by the defining convolution
/// (1/Gamma(alpha)) int_0^t (t-s)^(alpha-1) phi_beta(s) ds.  Nested
/// quadrature for 1 < beta < 2; route is quadrature_primary.
KernelValue eta_convolution(double alpha, double beta, double t,
                            const numerics::QuadConfig& cfg = default_kernel_config());

enum class LaplaceKernel { phi, psi, eta };

/// |int_0^inf e^{-xt} K(t) dt - target(x)| with targets 1/(1+x^beta),
/// 1/(x(1+x^beta)) and x^-alpha/(1+x^beta).  A validation probe.
double laplace_check(LaplaceKernel kernel, double beta, double x, double alpha = 0.0);

}  // namespace dagum::kernels
