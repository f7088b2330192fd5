#include "sht/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sht::saliency {

using features::kMapPixels;
using features::kMapSide;
using features::kNumMaps;

ScalarMap combine(const features::FeatureStack& stack, const SaliencyWeights& w) {
  ScalarMap out(kMapSide, kMapSide);
  Eigen::Map<Eigen::VectorXd>(out.data.data(), kMapPixels) = stack.matrix() * w;
  return out;
}

double penalty_factor(double distance, double max_distance, double delta_s, PenaltyForm form) {
  const double ratio = max_distance > 0.0 ? distance / max_distance : 0.0;
  return form == PenaltyForm::exponential ? std::exp(-delta_s * ratio) : delta_s * ratio;
}

ScalarMap center_penalty(const ScalarMap& raw, Point center, double delta_s, PenaltyForm form) {
  if (!(delta_s > 0.0)) throw std::invalid_argument("center_penalty: delta_s must be positive");
  double max_d = 0.0;
  for (double cx : {0.0, raw.width - 1.0}) {
    for (double cy : {0.0, raw.height - 1.0}) max_d = std::max(max_d, std::hypot(cx - center.x, cy - center.y));
  }
  ScalarMap out(raw.width, raw.height);
  for (int y = 0; y < raw.height; ++y) {
    for (int x = 0; x < raw.width; ++x) {
      const double d = std::hypot(x - center.x, y - center.y);
      out.at(x, y) = penalty_factor(d, max_d, delta_s, form) * raw.at(x, y);
    }
  }
  return out;
}

BinaryMap binarize(const ScalarMap& penalized, double delta_b) {
  BinaryMap out(penalized.width, penalized.height);
  const auto [lo, hi] = std::minmax_element(penalized.data.begin(), penalized.data.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < penalized.size(); ++i) {
    out.data[i] = (penalized.data[i] - *lo) / range >= delta_b ? 1 : 0;
  }
  return out;
}

namespace {

struct Run {
  int y;
  int x0;  // inclusive
  int x1;  // inclusive
  int parent;
};

int find_root(std::vector<Run>& runs, int i) {
  while (runs[i].parent != i) {
    runs[i].parent = runs[runs[i].parent].parent;
    i = runs[i].parent;
  }
  return i;
}

void unite(std::vector<Run>& runs, int a, int b) {
  a = find_root(runs, a);
  b = find_root(runs, b);
  if (a == b) return;
  // the earlier run (raster order) stays root
  if (a < b) runs[b].parent = a;
  else runs[a].parent = b;
}

}  // namespace

std::vector<ConnectedRegion> connected_regions(const BinaryMap& mask, int min_area) {
  if (min_area < 1) throw std::invalid_argument("connected_regions: min_area must be >= 1");
  std::vector<Run> runs;
  std::size_t prev_begin = 0, prev_end = 0;
  for (int y = 0; y < mask.height; ++y) {
    const std::size_t row_begin = runs.size();
    int x = 0;
    while (x < mask.width) {
      if (!mask.at(x, y)) {
        ++x;
        continue;
      }
      const int start = x;
      while (x < mask.width && mask.at(x, y)) ++x;
      const int idx = static_cast<int>(runs.size());
      runs.push_back({y, start, x - 1, idx});
      // 8-connectivity: runs in the previous row overlapping [start-1, x].
      for (std::size_t p = prev_begin; p < prev_end; ++p) {
        if (runs[p].x1 >= start - 1 && runs[p].x0 <= x) unite(runs, idx, static_cast<int>(p));
      }
    }
    prev_begin = row_begin;
    prev_end = runs.size();
  }

  struct Accum {
    long area = 0;
    double sum_x = 0, sum_y = 0;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  };
  std::vector<int> order;           // roots in raster order of first pixel
  std::vector<int> slot(runs.size(), -1);
  std::vector<Accum> acc;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const int root = find_root(runs, static_cast<int>(i));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(acc.size());
      acc.push_back({0, 0, 0, runs[i].x0, runs[i].y, runs[i].x1, runs[i].y});
      order.push_back(root);
    }
    Accum& a = acc[slot[root]];
    const Run& r = runs[i];
    const long len = r.x1 - r.x0 + 1;
    a.area += len;
    a.sum_x += 0.5 * (r.x0 + r.x1) * len;
    a.sum_y += static_cast<double>(r.y) * len;
    a.min_x = std::min(a.min_x, r.x0);
    a.max_x = std::max(a.max_x, r.x1);
    a.min_y = std::min(a.min_y, r.y);
    a.max_y = std::max(a.max_y, r.y);
  }

  std::vector<ConnectedRegion> regions;
  for (const Accum& a : acc) {
    if (a.area < min_area) continue;
    ConnectedRegion reg;
    reg.label = static_cast<int>(regions.size()) + 1;
    reg.area = static_cast<int>(a.area);
    reg.center = {static_cast<int>(std::lround(a.sum_x / a.area)), static_cast<int>(std::lround(a.sum_y / a.area))};
    reg.min_x = a.min_x;
    reg.min_y = a.min_y;
    reg.max_x = a.max_x;
    reg.max_y = a.max_y;
    regions.push_back(reg);
  }
  return regions;
}

std::vector<AffineState> generate_candidates(std::span<const Point> centers, const AffineState& last,
                                             int frame_width, int frame_height) {
  std::vector<AffineState> out;
  out.reserve(centers.size());
  const double sx = static_cast<double>(frame_width) / kMapSide;
  const double sy = static_cast<double>(frame_height) / kMapSide;
  for (const Point& c : centers) {
    AffineState s = last;
    s.tx = c.x * sx;
    s.ty = c.y * sy;
    out.push_back(s);
  }
  return out;
}

Point to_map_coords(double x, double y, int frame_width, int frame_height) {
  return {x * kMapSide / frame_width, y * kMapSide / frame_height};
}

BinaryMap groundtruth_map(const Box& box, int frame_width, int frame_height) {
  BinaryMap out(kMapSide, kMapSide);
  const double sx = static_cast<double>(frame_width) / kMapSide;
  const double sy = static_cast<double>(frame_height) / kMapSide;
  for (int y = 0; y < kMapSide; ++y) {
    const double fy = (y + 0.5) * sy;
    if (fy < box.y || fy >= box.y + box.h) continue;
    for (int x = 0; x < kMapSide; ++x) {
      const double fx = (x + 0.5) * sx;
      if (fx >= box.x && fx < box.x + box.w) out.set(x, y, true);
    }
  }
  return out;
}

SaliencyWeights update_weights(const features::FeatureStack& stack, const BinaryMap& groundtruth, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("update_weights: lambda must be positive");
  if (groundtruth.width != kMapSide || groundtruth.height != kMapSide) {
    throw std::invalid_argument("update_weights: groundtruth map must be 200x200");
  }
  const Eigen::MatrixXd& f = stack.matrix();
  Eigen::VectorXd target(kMapPixels);
  for (int i = 0; i < kMapPixels; ++i) target[i] = groundtruth.data[i] ? 1.0 : 0.0;
  Eigen::Matrix<double, kNumMaps, kNumMaps> normal = f.transpose() * f;
  normal.diagonal().array() += lambda;
  const SaliencyWeights rhs = f.transpose() * target;
  return normal.ldlt().solve(rhs);
}

double relevance(double w) { return w <= 1.0 ? -w * (w - 2.0) : std::exp(-(w - 1.0)); }

}  // namespace sht::saliency
