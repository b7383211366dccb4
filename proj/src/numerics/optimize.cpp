#include "dagum/numerics/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace dagum::numerics {

void Bracket::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument("bracket requires finite lo < hi");
  }
}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw std::invalid_argument("linspace needs count >= 1");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = start;
    return out;
  }
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = stop;
  return out;
}

std::vector<double> geomspace(double start, double stop, int count) {
  if (!(start > 0.0) || !(stop > 0.0)) throw std::invalid_argument("geomspace needs positive limits");
  std::vector<double> out = linspace(std::log(start), std::log(stop), count);
  for (double& v : out) v = std::exp(v);
  out.front() = start;
  if (count > 1) out.back() = stop;
  return out;
}

Maximum maximize_1d(const std::function<double(double)>& f, Bracket bracket, double tol, int grid_points) {
  bracket.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("maximize_1d tolerance must be positive");
  grid_points = std::max(grid_points, 3);

  const std::vector<double> ts = linspace(bracket.lo, bracket.hi, grid_points);
  std::vector<double> fs(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) fs[i] = f(ts[i]);

  // Grid local maxima, best first.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const bool left_ok = i == 0 || fs[i] >= fs[i - 1];
    const bool right_ok = i + 1 == ts.size() || fs[i] >= fs[i + 1];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return fs[a] > fs[b]; });
  if (peaks.size() > 3) peaks.resize(3);

  std::size_t best_index = peaks.front();
  Maximum best{ts[best_index], fs[best_index]};

  const int bits = std::numeric_limits<double>::digits / 2;
  for (std::size_t idx : peaks) {
    const double a = ts[idx == 0 ? 0 : idx - 1];
    const double b = ts[std::min(idx + 1, ts.size() - 1)];
    if (!(a < b)) continue;
    std::uintmax_t max_iter = 200;
    auto [t, neg] = boost::math::tools::brent_find_minima([&f](double x) { return -f(x); }, a, b, bits, max_iter);
    if (-neg > best.f_star) best = Maximum{t, -neg};
  }
  return best;
}

double find_root(const std::function<double(double)>& f, Bracket bracket, double tol) {
  bracket.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("find_root tolerance must be positive");

  // Values within tol of zero count as exact roots, which ends the bisection.
  auto g = [&f, tol](double x) {
    const double v = f(x);
    return std::abs(v) <= tol ? 0.0 : v;
  };
  const double flo = g(bracket.lo);
  const double fhi = g(bracket.hi);
  if (flo == 0.0) return bracket.lo;
  if (fhi == 0.0) return bracket.hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw NoSignChange("find_root: f does not change sign over the bracket");
  }

  std::uintmax_t max_iter = 2000;
  auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  auto [a, b] = boost::math::tools::bisect(g, bracket.lo, bracket.hi, done, max_iter);
  return 0.5 * (a + b);
}

}  // namespace dagum::numerics
