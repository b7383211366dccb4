#include "dagum/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "dagum/numerics/extrapolate.hpp"
#include "dagum/numerics/optimize.hpp"
#include "dagum/rng.hpp"

namespace dagum::fields {

using models::Model;

namespace {

// Points per estimator window.
constexpr int kWindowPoints = 7;

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (!(sxx > 0.0)) throw std::runtime_error("degenerate log-log fit");
  return sxy / sxx;
}

// t f'(t) / f(t) at each point, extrapolated along the given order.
ExponentEstimate window_slope(const models::Expression& e, const std::vector<double>& ts) {
  std::vector<double> slopes;
  std::vector<double> logt;
  std::vector<double> logf;
  for (double t : ts) {
    const numerics::TaylorSeries s = models::taylor_eval(e, t, 1);
    if (!(s[0] > 0.0)) throw std::runtime_error("degenerate log-log fit: nonpositive value");
    slopes.push_back(t * s[1] / s[0]);
    logt.push_back(std::log(t));
    logf.push_back(std::log(s[0]));
  }
  const numerics::Extrapolation x = numerics::wynn_epsilon(slopes);
  if (!std::isfinite(x.value)) throw std::runtime_error("degenerate log-log fit");
  return ExponentEstimate{x.value, x.err_estimate, least_squares_slope(logt, logf)};
}

void require_correlation(const Model& m) {
  m.validate();
  if (!models::is_correlation(m.kind)) throw std::invalid_argument("exponent estimates need a correlation model");
}

}  // namespace

std::string_view to_string(Convention c) {
  return c == Convention::squared_distance ? "squared_distance" : "plain_distance";
}

Convention parse_convention(std::string_view s) {
  if (s == "squared_distance" || s == "squared") return Convention::squared_distance;
  if (s == "plain_distance" || s == "plain") return Convention::plain_distance;
  throw std::invalid_argument("unknown distance convention '" + std::string(s) + "'");
}

std::string_view to_string(PsdVerdict v) { return v == PsdVerdict::psd ? "psd" : "indefinite"; }

void PointSet::validate() const {
  if (points.rows() < 1 || points.cols() < 1) throw std::invalid_argument("point set needs n >= 1 and d >= 1");
  if (!points.allFinite()) throw std::invalid_argument("point set has non-finite coordinates");
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
      if (points.row(i) == points.row(j)) throw std::invalid_argument("point set has repeated points");
    }
  }
}

PointSet random_point_set(int d, int n, double side, std::uint64_t seed, std::uint64_t stream) {
  if (d < 1 || n < 1) throw std::invalid_argument("random_point_set needs d >= 1 and n >= 1");
  if (!(side > 0.0)) throw std::invalid_argument("random_point_set needs side > 0");
  CounterRng rng(seed, stream);
  PointSet ps;
  ps.points.resize(n, d);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) ps.points(i, k) = rng.uniform(0.0, side);
  }
  ps.id = "uniform(d=" + std::to_string(d) + ",n=" + std::to_string(n) + ",seed=" + std::to_string(seed) +
          ",stream=" + std::to_string(stream) + ")";
  return ps;
}

double radial_kernel(const Model& m, double x) {
  if (models::is_correlation(m.kind)) return models::evaluate(m, x);
  return models::evaluate(m, x + 1.0) / models::evaluate(m, 1.0);
}

Eigen::MatrixXd gram_matrix(const Model& m, const PointSet& ps, Convention c) {
  m.validate();
  ps.validate();
  const Eigen::Index n = ps.points.rows();
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d2 = (ps.points.row(i) - ps.points.row(j)).squaredNorm();
      const double arg = c == Convention::squared_distance ? d2 : std::sqrt(d2);
      g(i, j) = g(j, i) = radial_kernel(m, arg);
    }
  }
  return g;
}

PsdReport psd_check(const Model& m, const PointSet& ps, Convention c) {
  const Eigen::MatrixXd g = gram_matrix(m, ps, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigen-solver failed");
  PsdReport r;
  r.model = m;
  r.point_set_id = ps.id;
  r.dimension = ps.dimension();
  r.n_points = ps.size();
  r.convention = c;
  r.min_eigenvalue = solver.eigenvalues().minCoeff();
  r.max_eigenvalue = solver.eigenvalues().maxCoeff();
  r.verdict = r.min_eigenvalue < -kEigenTol * r.max_eigenvalue ? PsdVerdict::indefinite : PsdVerdict::psd;
  return r;
}

std::optional<SearchHit> nonpsd_search(const Model& m, int d_max, int n_points, int n_trials, std::uint64_t seed,
                                       Convention c) {
  if (d_max < 1 || n_points < 2 || n_trials < 1) throw std::invalid_argument("search budgets must be positive");
  m.validate();
  for (int k = 0; k < n_trials; ++k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    const int d = static_cast<int>(rng.integer(1, d_max));
    const double side = std::exp(rng.uniform(std::log(0.3), std::log(10.0)));
    PointSet ps;
    ps.points.resize(n_points, d);
    for (int i = 0; i < n_points; ++i) {
      for (int j = 0; j < d; ++j) ps.points(i, j) = rng.uniform(0.0, side);
    }
    ps.id = "search(seed=" + std::to_string(seed) + ",trial=" + std::to_string(k) + ",d=" + std::to_string(d) + ")";
    PsdReport r = psd_check(m, ps, c);
    if (r.verdict == PsdVerdict::indefinite) return SearchHit{std::move(ps), std::move(r), k};
  }
  return std::nullopt;
}

Profile simulate_profile(const Model& m, int n, double spacing, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("simulate_profile needs n >= 2");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("spacing must be > 0");
  m.validate();
  if (!models::is_correlation(m.kind)) throw std::invalid_argument("simulate_profile needs a correlation model");

  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) g(i, j) = g(j, i) = i == j ? 1.0 : models::evaluate(m, spacing * (j - i));
  }
  g.diagonal().array() += kJitter;
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) {
    throw NotPermissible("covariance factorization failed: model not permissible at this resolution");
  }

  CounterRng rng(seed, 0);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = rng.normal();
  const Eigen::VectorXd z = llt.matrixL() * w;

  Profile p;
  p.model = m;
  p.spacing = spacing;
  p.seed = seed;
  p.values.assign(z.data(), z.data() + n);
  return p;
}

ExponentEstimate estimate_local_exponent(const Model& m) {
  require_correlation(m);
  const models::Expression e{models::ExprKind::semivariogram, m, false};
  return window_slope(e, numerics::geomspace(1e-2, 1e-4, kWindowPoints));
}

ExponentEstimate estimate_hurst_exponent(const Model& m) {
  require_correlation(m);
  return window_slope(models::Expression::of(m), numerics::geomspace(1e2, 1e4, kWindowPoints));
}

double estimate_local_exponent(const Profile& p, int max_lag) {
  const int n = static_cast<int>(p.values.size());
  if (max_lag < 2 || max_lag >= n) throw std::invalid_argument("max_lag must lie in [2, n)");
  std::vector<double> xs;
  std::vector<double> ys;
  for (int h = 1; h <= max_lag; ++h) {
    double sum = 0.0;
    for (int i = 0; i + h < n; ++i) {
      const double d = p.values[static_cast<std::size_t>(i + h)] - p.values[static_cast<std::size_t>(i)];
      sum += d * d;
    }
    const double gamma = 0.5 * sum / (n - h);
    if (!(gamma > 0.0)) throw std::runtime_error("degenerate log-log fit: zero empirical semivariogram");
    xs.push_back(std::log(h * p.spacing));
    ys.push_back(std::log(gamma));
  }
  return least_squares_slope(xs, ys);
}

}  // namespace dagum::fields
