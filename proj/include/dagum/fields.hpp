#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dagum/models.hpp"

namespace dagum::fields {

enum class Convention { squared_distance, plain_distance };

std::string_view to_string(Convention c);
Convention parse_convention(std::string_view s);

/// Relative eigenvalue tolerance: indefinite iff lambda_min < -kEigenTol * lambda_max.
inline constexpr double kEigenTol = 1e-8;
/// Diagonal jitter added before factorization in simulate_profile.
inline constexpr double kJitter = 1e-10;

/// n points in R^d, one per row.
struct PointSet {
  Eigen::MatrixXd points;
  std::string id;

  int dimension() const { return static_cast<int>(points.cols()); }
  int size() const { return static_cast<int>(points.rows()); }

  /// Throws std::invalid_argument for empty sets, d < 1 or repeated points.
  void validate() const;
};

/// n points uniform in [0, side]^d, drawn from stream `stream` of `seed`.
PointSet random_point_set(int d, int n, double side, std::uint64_t seed, std::uint64_t stream);

/// The radial profile placed in Gram matrices.  Correlation models are used
/// as is; aux and g, which diverge at 0, as f(x + 1) / f(1).
double radial_kernel(const models::Model& m, double x);

Eigen::MatrixXd gram_matrix(const models::Model& m, const PointSet& ps, Convention c);

enum class PsdVerdict { psd, indefinite };
std::string_view to_string(PsdVerdict v);

struct PsdReport {
  models::Model model{models::ModelKind::dagum, 1.0, 1.0};
  std::string point_set_id;
  int dimension = 0;
  int n_points = 0;
  Convention convention = Convention::squared_distance;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  PsdVerdict verdict = PsdVerdict::psd;
  double tol = kEigenTol;
};

PsdReport psd_check(const models::Model& m, const PointSet& ps, Convention c);

struct SearchHit {
  PointSet point_set;
  PsdReport report;
  int trial = 0;
};

/// Random configurations, trial k using stream k of `seed`: d uniform on
/// 1..d_max, points uniform in [0, L]^d with L log-uniform on [0.3, 10].
/// Returns the first indefinite configuration.
std::optional<SearchHit> nonpsd_search(const models::Model& m, int d_max, int n_points, int n_trials,
                                       std::uint64_t seed, Convention c = Convention::squared_distance);

class NotPermissible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Profile {
  models::Model model{models::ModelKind::dagum, 1.0, 1.0};
  double spacing = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

/// Zero-mean unit-variance Gaussian profile on the grid k * spacing,
/// k = 0..n-1, via the Cholesky factor of the plain-distance Gram matrix.
/// Throws NotPermissible if the factorization fails.
Profile simulate_profile(const models::Model& m, int n, double spacing, std::uint64_t seed);

struct ExponentEstimate {
  double value = 0.0;
  double err_estimate = 0.0;
  double ls_slope = 0.0;  // plain least-squares log-log slope over the window
};

/// Log-log slope of 1 - rho(t) as t -> 0, from the window [1e-4, 1e-2].
ExponentEstimate estimate_local_exponent(const models::Model& m);

/// Log-log slope of rho(t) as t -> infinity, from the window [1e2, 1e4].
ExponentEstimate estimate_hurst_exponent(const models::Model& m);

/// Least-squares log-log slope of the empirical semivariogram of a profile
/// at lags 1..max_lag.
double estimate_local_exponent(const Profile& p, int max_lag = 4);

}  // namespace dagum::fields
