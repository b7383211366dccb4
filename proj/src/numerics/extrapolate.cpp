#include "dagum/numerics/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dagum::numerics {

Extrapolation wynn_epsilon(std::span<const double> sequence) {
  if (sequence.empty()) throw std::invalid_argument("wynn_epsilon needs a non-empty sequence");
  if (sequence.size() == 1) return {sequence.front(), 0.0};

  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> prev(sequence.size() + 1, 0.0);  // epsilon_{-1}
  std::vector<double> cur(sequence.begin(), sequence.end());

  double best = cur.back();
  double err = std::abs(cur.back() - cur[cur.size() - 2]);
  int column = 0;
  while (cur.size() > 1) {
    std::vector<double> next(cur.size() - 1);
    bool degenerate = false;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double diff = cur[i + 1] - cur[i];
      const double scale = std::max(std::abs(cur[i + 1]), std::abs(cur[i]));
      if (std::abs(diff) <= 16.0 * eps * scale || diff == 0.0) {
        degenerate = true;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (degenerate) break;
    prev = std::move(cur);
    cur = std::move(next);
    ++column;
    if (column % 2 == 0) {
      err = std::abs(cur.back() - best);
      best = cur.back();
    }
  }
  return {best, err};
}

}  // namespace dagum::numerics
