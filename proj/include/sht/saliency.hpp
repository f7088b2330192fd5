#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sht/affine.hpp"
#include "sht/features.hpp"
#include "sht/image.hpp"

namespace sht::saliency {

/// Per-map weights in FeatureStack layout order.
using SaliencyWeights = Eigen::Matrix<double, features::kNumMaps, 1>;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct PixelPoint {
  int x = 0;
  int y = 0;
  bool operator==(const PixelPoint&) const = default;
};

/// How the distance to the previous target center suppresses saliency.
enum class PenaltyForm {
  exponential,  ///< exp(-delta_s * d / d_max): 1 at the center, decreasing
  linear,       ///< delta_s * d / d_max, the literal printed form (grows with d)
};

struct ConnectedRegion {
  int label = 0;  ///< 1-based, in raster order of each region's first pixel
  int area = 0;
  PixelPoint center;
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

/// S' = sum_i w_i F_i as a 200x200 map.
ScalarMap combine(const features::FeatureStack& stack, const SaliencyWeights& w);

/// Multiplicative penalty factor for a pixel at distance `distance` when the
/// farthest pixel is at `max_distance`.
double penalty_factor(double distance, double max_distance, double delta_s,
                      PenaltyForm form = PenaltyForm::exponential);

ScalarMap center_penalty(const ScalarMap& raw, Point center, double delta_s,
                         PenaltyForm form = PenaltyForm::exponential);

/// Min-max normalizes then marks values >= delta_b. Constant maps give all-false.
BinaryMap binarize(const ScalarMap& penalized, double delta_b);

/// 8-connected components with area >= min_area, found by run labeling with
/// union-find. Centers are centroids rounded to the nearest pixel.
std::vector<ConnectedRegion> connected_regions(const BinaryMap& mask, int min_area);

/// Candidate states centered on each center, given in continuous 200x200 map
/// coordinates (pixel i spans [i, i+1)), scaled to frame coordinates. Rotation,
/// scale, aspect and skew are copied from `last`.
std::vector<AffineState> generate_candidates(std::span<const Point> centers, const AffineState& last,
                                             int frame_width, int frame_height);

/// Binary map at 200x200 marking pixels whose centers fall inside `box`
/// (frame coordinates).
BinaryMap groundtruth_map(const Box& box, int frame_width, int frame_height);

/// Maps a frame-coordinate point to 200x200 map coordinates.
Point to_map_coords(double x, double y, int frame_width, int frame_height);

/// Ridge solution (F^T F + lambda I)^-1 F^T x of the weight regression.
SaliencyWeights update_weights(const features::FeatureStack& stack, const BinaryMap& groundtruth,
                               double lambda);

/// Relevance degree of a single weight: -w(w-2) for w <= 1, exp(1-w) above.
double relevance(double w);

}  // namespace sht::saliency
