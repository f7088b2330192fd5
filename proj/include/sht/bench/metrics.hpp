#pragma once

#include <array>
#include <span>
#include <vector>

#include "sht/affine.hpp"

namespace sht::bench {

inline constexpr int kSuccessThresholds = 11;

/// Intersection over union; 0 when the union is empty.
double overlap_rate(const Box& a, const Box& b);

/// Euclidean distance between box centers.
double center_error(const Box& a, const Box& b);

/// Fraction of frames with overlap >= tau for tau = 0, 0.1, ..., 1.
struct SuccessCurve {
  std::array<double, kSuccessThresholds> thresholds{};
  std::array<double, kSuccessThresholds> rates{};
};

SuccessCurve success_curve(std::span<const double> overlaps);

struct MetricsReport {
  std::vector<double> overlaps;
  std::vector<double> center_errors;
  double average_overlap = 0.0;
  double average_center_error = 0.0;
  SuccessCurve success;
};

/// Scores the first min(predicted, groundtruth) frames. Throws when either is empty.
MetricsReport evaluate(std::span<const Box> predicted, std::span<const Box> groundtruth);

}  // namespace sht::bench
