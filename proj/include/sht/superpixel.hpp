#pragma once

#include <array>
#include <vector>

#include "sht/features.hpp"
#include "sht/image.hpp"

namespace sht::superpixel {

inline constexpr int kBinsPerChannel = 5;
inline constexpr int kHistogramSize = 3 * kBinsPerChannel;
inline constexpr std::array<double, kBinsPerChannel> kBinCenters = {0.1, 0.3, 0.5, 0.7, 0.9};

struct Segmentation {
  int width = 0;
  int height = 0;
  std::vector<int> labels;              ///< row-major, values in [0, count)
  int count = 0;                        ///< actual number of superpixels
  std::vector<features::Hsv> hsv_means; ///< mean H, S, V per superpixel
  std::vector<int> areas;

  int label(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

struct SlicParams {
  int superpixels = 50;
  double compactness = 10.0;
  int iterations = 10;
};

/// SLIC k-means in (CIELAB, position) space followed by connectivity
/// enforcement: 4-connected fragments smaller than a quarter of the nominal
/// superpixel area are merged into an adjacent superpixel, larger fragments
/// become superpixels of their own.
Segmentation slic(const RgbFrame& patch, const SlicParams& params = {});

/// Soft 15-bin H/S/V histogram with Gaussian bin kernels of sharpness k_o.
struct HsvHistogram {
  std::array<double, kHistogramSize> bins{};
  bool operator==(const HsvHistogram&) const = default;
};

HsvHistogram histogram(const Segmentation& seg, double k_o = 10.0);

/// Cosine similarity; throws std::invalid_argument on a zero vector.
double similarity(const HsvHistogram& h, const HsvHistogram& t);

/// 1 / (k_h + L_h).
double hist_error(double similarity, double k_h);

struct HistTemplate {
  HsvHistogram hist;
  double gamma = 0.95;
};

/// t <- gamma t + (1 - gamma) best.
HistTemplate update_template(const HistTemplate& t, const HsvHistogram& best);

}  // namespace sht::superpixel
