#include "slowlight/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "slowlight/errors.hpp"

namespace slowlight {

double centroid(std::span<const double> x, std::span<const double> weight) {
  if (x.size() != weight.size()) throw DomainError("centroid: abscissa/weight length mismatch");
  double sum = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += weight[i];
    moment += x[i] * weight[i];
  }
  if (!(sum != 0.0) || !std::isfinite(sum)) throw DomainError("centroid: weights integrate to zero");
  return moment / sum;
}

namespace {

double crossing(double x0, double y0, double x1, double y1, double level) {
  if (y1 == y0) return 0.5 * (x0 + x1);
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

double full_width_half_max(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) throw DomainError("fwhm: need at least 3 samples");
  const auto peak_it = std::max_element(y.begin(), y.end());
  const double half = 0.5 * *peak_it;
  if (!(half > 0.0)) throw DomainError("fwhm: curve has no positive maximum");

  // Contiguous runs of samples at or above half maximum.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < y.size();) {
    if (y[i] >= half) {
      std::size_t j = i;
      while (j + 1 < y.size() && y[j + 1] >= half) ++j;
      runs.emplace_back(i, j);
      i = j + 1;
    } else {
      ++i;
    }
  }

  std::vector<double> widths;
  for (auto [first, last] : runs) {
    const double left = first == 0 ? x.front() : crossing(x[first - 1], y[first - 1], x[first], y[first], half);
    const double right = last + 1 == y.size() ? x.back() : crossing(x[last], y[last], x[last + 1], y[last + 1], half);
    widths.push_back(right - left);
  }
  if (widths.size() != 1) {
    std::ostringstream msg;
    msg << "fwhm: " << widths.size() << " separate regions above half maximum (widths:";
    for (double w : widths) msg << ' ' << w;
    msg << ')';
    throw AmbiguityError(msg.str(), widths);
  }
  return widths.front();
}

double interpolate_linear(std::span<const double> x, std::span<const double> y, double at,
                          double outside) {
  if (x.empty() || x.size() != y.size()) throw DomainError("interpolate: bad sample arrays");
  if (at < x.front() || at > x.back()) return outside;
  auto it = std::upper_bound(x.begin(), x.end(), at);
  if (it == x.end()) return y.back();
  const std::size_t hi = static_cast<std::size_t>(it - x.begin());
  if (hi == 0) return y.front();
  const std::size_t lo = hi - 1;
  const double f = (at - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + f * (y[hi] - y[lo]);
}

}  // namespace slowlight
