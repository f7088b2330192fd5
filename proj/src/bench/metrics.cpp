#include "sht/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sht::bench {

double overlap_rate(const Box& a, const Box& b) {
  const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double center_error(const Box& a, const Box& b) {
  return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

SuccessCurve success_curve(std::span<const double> overlaps) {
  if (overlaps.empty()) throw std::invalid_argument("success_curve: no overlaps");
  SuccessCurve c;
  for (int i = 0; i < kSuccessThresholds; ++i) {
    const double tau = i / 10.0;
    c.thresholds[i] = tau;
    const auto hits = std::count_if(overlaps.begin(), overlaps.end(), [tau](double o) { return o >= tau; });
    c.rates[i] = static_cast<double>(hits) / static_cast<double>(overlaps.size());
  }
  return c;
}

MetricsReport evaluate(std::span<const Box> predicted, std::span<const Box> groundtruth) {
  const std::size_t n = std::min(predicted.size(), groundtruth.size());
  if (n == 0) throw std::invalid_argument("evaluate: nothing to score");
  MetricsReport r;
  for (std::size_t i = 0; i < n; ++i) {
    r.overlaps.push_back(overlap_rate(predicted[i], groundtruth[i]));
    r.center_errors.push_back(center_error(predicted[i], groundtruth[i]));
  }
  r.average_overlap = std::accumulate(r.overlaps.begin(), r.overlaps.end(), 0.0) / n;
  r.average_center_error = std::accumulate(r.center_errors.begin(), r.center_errors.end(), 0.0) / n;
  r.success = success_curve(r.overlaps);
  return r;
}

}  // namespace sht::bench
