#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sht/affine.hpp"
#include "sht/image.hpp"

namespace sht::features {

inline constexpr int kMapSide = 200;
inline constexpr int kMapPixels = kMapSide * kMapSide;
inline constexpr int kNumMaps = 19;
inline constexpr int kNumSubbands = 13;
inline constexpr int kNumOrientations = 4;
inline constexpr int kNumScales = 3;

/// Layout indices of the non-subband maps inside a FeatureStack.
enum MapIndex : int {
  kRed = 13,
  kGreen = 14,
  kBlue = 15,
  kYellow = 16,
  kIntensity = 17,
  kSkin = 18,
};

/// Gaussian sigmas of the three subband scales (pixels at 200x200).
inline constexpr std::array<double, kNumScales> kSubbandSigmas = {1.0, 2.0, 4.0};
/// Orientations in radians: 0, 45, 90, 135 degrees. Orientation 0 is the
/// horizontal derivative, i.e. it responds to vertical edges and stripes.
inline constexpr std::array<double, kNumOrientations> kOrientations = {
    0.0, 0.78539816339744830962, 1.57079632679489661923, 2.35619449038966492885};
inline constexpr double kHighPassSigma = 0.5;

struct ColorChannels {
  ScalarMap red;
  ScalarMap green;
  ScalarMap blue;
  ScalarMap yellow;
  ScalarMap intensity;
};

/// Broadly tuned color opponents and intensity, unnormalized.
ColorChannels color_channels(const RgbFrame& frame);

/// Intensity (r+g+b)/3 only.
ScalarMap intensity(const RgbFrame& frame);

/// 13 subband magnitude maps. Index scale * 4 + orientation for the 12
/// oriented maps (scale 0 is the finest), index 12 is the high-pass residual.
std::vector<ScalarMap> steerable_subbands(const ScalarMap& intensity);

/// Gaussian skin model in normalized r-g chromaticity.
struct SkinModel {
  double mean_r = 0.43;
  double mean_g = 0.31;
  double std_r = 0.08;
  double std_g = 0.05;
};

/// exp(-0.5 * ((r' - mean_r)^2 / std_r^2 + (g' - mean_g)^2 / std_g^2)) with
/// r' = r/(r+g+b), g' = g/(r+g+b); black pixels use r' = g' = 1/3.
double skin_likelihood(Rgb px, const SkinModel& model = {});
ScalarMap skin_map(const RgbFrame& frame, const SkinModel& model = {});

/// 19 min-max normalized 200x200 maps stored as the columns of a
/// 40000 x 19 matrix; pixel (x, y) is row y * 200 + x.
class FeatureStack {
 public:
  FeatureStack() : maps_(Eigen::MatrixXd::Zero(kMapPixels, kNumMaps)) {}
  explicit FeatureStack(Eigen::MatrixXd maps);

  const Eigen::MatrixXd& matrix() const { return maps_; }
  ScalarMap map(int index) const;
  double value(int index, int x, int y) const { return maps_(y * kMapSide + x, index); }

 private:
  Eigen::MatrixXd maps_;
};

/// Rescales to [0,1]; constant maps become all zeros.
void normalize_min_max(std::span<double> values);

FeatureStack build_feature_stack(const RgbFrame& frame, const SkinModel& skin = {});

/// Bilinear resampling with half-pixel alignment and edge clamping.
RgbFrame resize_bilinear(const RgbFrame& frame, int out_w, int out_h);

/// Bilinear sample at index-space coordinates; pixels outside the image read 0.
double sample_bilinear(const ScalarMap& img, double x, double y);

/// Square patch of side `out_side` sampled through the affine state.
/// Throws std::invalid_argument for degenerate states or out_side < 1.
ScalarMap affine_crop(const ScalarMap& gray, const AffineState& state, int out_side);
RgbFrame affine_crop(const RgbFrame& frame, const AffineState& state, int out_side);

struct Hsv {
  double h = 0.0;  ///< hue in [0,1) (degrees / 360)
  double s = 0.0;
  double v = 0.0;
};

Hsv rgb_to_hsv(Rgb px);
Rgb hsv_to_rgb(Hsv px);

}  // namespace sht::features
