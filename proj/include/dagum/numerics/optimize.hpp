#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dagum::numerics {

struct Bracket {
  double lo;
  double hi;

  /// Throws std::invalid_argument unless lo < hi (both finite).
  void validate() const;
};

struct Maximum {
  double t_star;
  double f_star;
};

class NoSignChange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Points used by the coarse scan of maximize_1d.
inline constexpr int kMaximizeGridPoints = 2048;

/// Global maximum over a bracket: coarse scan of `grid_points` equispaced
/// points (endpoints included), then Brent refinement around the best few
/// grid local maxima.
Maximum maximize_1d(const std::function<double(double)>& f, Bracket bracket, double tol,
                    int grid_points = kMaximizeGridPoints);

/// Bisection.  Stops once |f(r)| <= tol or the bracket is narrower than tol.
/// Throws NoSignChange when f(lo) and f(hi) share a sign.
double find_root(const std::function<double(double)>& f, Bracket bracket, double tol);

/// `count` equispaced points on [start, stop]; count == 1 gives {start}.
std::vector<double> linspace(double start, double stop, int count);

/// `count` geometrically spaced points on [start, stop], start > 0.
std::vector<double> geomspace(double start, double stop, int count);

}  // namespace dagum::numerics
