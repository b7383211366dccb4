#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dagum/models.hpp"
#include "dagum/numerics/optimize.hpp"

namespace dagum::classify {

enum class Status { ProvenCM, ProvenNotCM, ProvenLCM, ProvenNotLCM, Undetermined };
enum class Basis { theorem, certificate, none };
enum class CertificateKind { derivative_sign, eta_sign, indefinite_gram };

std::string_view to_string(Status s);
std::string_view to_string(Basis b);
std::string_view to_string(CertificateKind k);

/// Numeric evidence against complete monotonicity.
///
/// derivative_sign: (-1)^order f^(order)(location) = value < 0.
/// eta_sign: eta_{alpha,beta}(location) = value < 0.
/// indefinite_gram: smallest Gram eigenvalue `value` on point set `point_set`.
struct Certificate {
  CertificateKind kind = CertificateKind::derivative_sign;
  double location = 0.0;
  std::optional<int> order;
  double value = 0.0;
  std::string point_set;
};

struct CBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct Verdict {
  Status status = Status::Undetermined;
  Basis basis = Basis::none;
  std::string citation;
  std::optional<Certificate> certificate;
  std::string notes;
  std::optional<CBounds> c_bounds;
};

/// Width of the band around a numerically computed threshold inside which
/// the verdict is Undetermined.
inline constexpr double kThresholdTol = 1e-5;

/// Tolerance of composed quantities (psi_max, l, beta_star).
inline constexpr double kComposedTol = 1e-7;

/// Points of the eta scan on (0, 6 pi / sin(pi/beta)].
inline constexpr int kEtaScanPoints = 4096;

/// Location and value of max_t psi_beta(t); exact at beta = 1 and 2.
numerics::Maximum psi_maximum(double beta);

double psi_max(double beta);

/// beta (psi_max(beta) - 1).
double l_of_beta(double beta);

/// Root of l(beta) = 1 in [1.5, 1.9].
double beta_star(double tol = 1e-6);

/// Most negative eta_{alpha,beta} found on the scan grid, when negative
/// beyond its error estimate.  alpha = 0 scans phi_beta.
std::optional<Certificate> eta_scan(double alpha, double beta);

/// lower <= c(beta) <= upper by bisection over [0, beta/2].  lower rests on
/// eta witnesses; upper only on their absence from the grid.
CBounds c_bounds(double beta, double alpha_tol = 1e-3);

/// With `numeric_refutation` off, only theorem-backed verdicts are returned
/// and everything else is Undetermined.
Verdict classify_aux_cm(double alpha, double beta, bool numeric_refutation = true);
Verdict classify_aux_lcm(double alpha, double beta, double tol = kThresholdTol);
Verdict classify_dagum(double beta, double gamma, bool numeric_refutation = true, double tol = kThresholdTol);
Verdict classify_g(double alpha, double lambda, bool numeric_refutation = true);

/// 241 log-spaced points on [1e-3, 1e3].
std::vector<double> default_scan_grid();
inline constexpr int kDefaultScanOrder = 10;

/// First (n, x), lowest order first, with (-1)^n f^(n)(x) clearly negative.
/// None is not evidence of complete monotonicity.
std::optional<Certificate> cm_scan(const models::Expression& e, int max_order, std::span<const double> x_grid);

/// cm_scan applied to -(log f)'.
std::optional<Certificate> lcm_scan(const models::Expression& e, int max_order, std::span<const double> x_grid);

struct ThresholdTable {
  std::vector<double> beta_grid;
  std::vector<double> psi_max;
  std::vector<double> l_values;
  std::vector<double> c_lower;  // empty unless requested
  std::vector<double> c_upper;
  double beta_star = 0.0;
};

struct TableOptions {
  bool with_c_bounds = false;
  double alpha_tol = 1e-3;
  double beta_star_tol = 1e-6;
};

ThresholdTable build_threshold_table(std::span<const double> beta_grid, const TableOptions& options = {});

/// Human-readable list of broken table invariants; empty when consistent.
std::vector<std::string> table_violations(const ThresholdTable& table);

}  // namespace dagum::classify
