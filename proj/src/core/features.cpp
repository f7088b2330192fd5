#include "sht/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sht::features {

namespace {

// Symmetric (edge-duplicating) reflection; commutes with 90 degree rotations.
int fold_index(int i, int n) {
  while (i < 0 || i >= n) {
    i = i < 0 ? -i - 1 : 2 * n - i - 1;
  }
  return i;
}

std::vector<double> gaussian_taps(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    taps[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
    sum += taps[k + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// sigma * d/dx of the normalized Gaussian, as correlation taps. Antisymmetric,
// so the response to a constant is zero.
std::vector<double> derivative_taps(double sigma) {
  auto taps = gaussian_taps(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  for (int k = -radius; k <= radius; ++k) taps[k + radius] *= k / sigma;
  return taps;
}

ScalarMap correlate_rows(const ScalarMap& in, const std::vector<double>& taps) {
  const int r = static_cast<int>(taps.size() / 2);
  ScalarMap out(in.width, in.height);
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      double acc = 0.0;
      for (int k = -r; k <= r; ++k) acc += taps[k + r] * in.at(fold_index(x + k, in.width), y);
      out.at(x, y) = acc;
    }
  }
  return out;
}

ScalarMap correlate_cols(const ScalarMap& in, const std::vector<double>& taps) {
  const int r = static_cast<int>(taps.size() / 2);
  ScalarMap out(in.width, in.height);
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      double acc = 0.0;
      for (int k = -r; k <= r; ++k) acc += taps[k + r] * in.at(x, fold_index(y + k, in.height));
      out.at(x, y) = acc;
    }
  }
  return out;
}

template <typename Read>
double bilinear(int w, int h, double x, double y, Read read) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const double ax = x - fx;
  const double ay = y - fy;
  auto px = [&](int xi, int yi) -> double {
    if (xi < 0 || yi < 0 || xi >= w || yi >= h) return 0.0;
    return read(xi, yi);
  };
  double v = (1.0 - ax) * (1.0 - ay) * px(x0, y0);
  if (ax != 0.0) v += ax * (1.0 - ay) * px(x0 + 1, y0);
  if (ay != 0.0) v += (1.0 - ax) * ay * px(x0, y0 + 1);
  if (ax != 0.0 && ay != 0.0) v += ax * ay * px(x0 + 1, y0 + 1);
  return v;
}

void check_state(const AffineState& state, int out_side) {
  if (out_side < 1) throw std::invalid_argument("affine_crop: out_side must be >= 1");
  if (!state.valid()) throw std::invalid_argument("affine_crop: degenerate affine state");
  const auto m = affine_matrix(state);
  const double det = m[0] * m[3] - m[1] * m[2];
  if (!std::isfinite(det) || std::abs(det) < 1e-12) {
    throw std::invalid_argument("affine_crop: non-invertible affine state");
  }
}

// Calls fn(u, v, x, y) with (x, y) the index-space sample position of output
// pixel (u, v).
template <typename Fn>
void for_each_sample(const AffineState& state, int out_side, Fn fn) {
  const auto m = affine_matrix(state);
  for (int v = 0; v < out_side; ++v) {
    const double tv = (v + 0.5) / out_side - 0.5;
    for (int u = 0; u < out_side; ++u) {
      const double tu = (u + 0.5) / out_side - 0.5;
      const double x = state.tx + m[0] * tu + m[1] * tv - 0.5;
      const double y = state.ty + m[2] * tu + m[3] * tv - 0.5;
      fn(u, v, x, y);
    }
  }
}

}  // namespace

ColorChannels color_channels(const RgbFrame& frame) {
  const int w = frame.width();
  const int h = frame.height();
  ColorChannels c{ScalarMap(w, h), ScalarMap(w, h), ScalarMap(w, h), ScalarMap(w, h), ScalarMap(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Rgb p = frame.pixel(x, y);
      c.red.at(x, y) = p.r - 0.5 * (p.g + p.b);
      c.green.at(x, y) = p.g - 0.5 * (p.r + p.b);
      c.blue.at(x, y) = p.b - 0.5 * (p.r + p.g);
      c.yellow.at(x, y) = 0.5 * (p.r + p.g) - 0.5 * std::abs(p.r - p.g) - p.b;
      c.intensity.at(x, y) = (p.r + p.g + p.b) / 3.0;
    }
  }
  return c;
}

ScalarMap intensity(const RgbFrame& frame) {
  ScalarMap out(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const Rgb p = frame.pixel(x, y);
      out.at(x, y) = (p.r + p.g + p.b) / 3.0;
    }
  }
  return out;
}

std::vector<ScalarMap> steerable_subbands(const ScalarMap& input) {
  std::vector<ScalarMap> bands;
  bands.reserve(kNumSubbands);
  for (double sigma : kSubbandSigmas) {
    const auto g = gaussian_taps(sigma);
    const auto d = derivative_taps(sigma);
    const ScalarMap dx = correlate_cols(correlate_rows(input, d), g);
    const ScalarMap dy = correlate_cols(correlate_rows(input, g), d);
    for (double theta : kOrientations) {
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      ScalarMap band(input.width, input.height);
      for (std::size_t i = 0; i < band.size(); ++i) band.data[i] = std::abs(c * dx.data[i] + s * dy.data[i]);
      bands.push_back(std::move(band));
    }
  }
  const auto g = gaussian_taps(kHighPassSigma);
  const ScalarMap low = correlate_cols(correlate_rows(input, g), g);
  ScalarMap residual(input.width, input.height);
  for (std::size_t i = 0; i < residual.size(); ++i) residual.data[i] = std::abs(input.data[i] - low.data[i]);
  bands.push_back(std::move(residual));
  return bands;
}

double skin_likelihood(Rgb px, const SkinModel& model) {
  const double sum = px.r + px.g + px.b;
  const double r = sum > 0.0 ? px.r / sum : 1.0 / 3.0;
  const double g = sum > 0.0 ? px.g / sum : 1.0 / 3.0;
  const double zr = (r - model.mean_r) / model.std_r;
  const double zg = (g - model.mean_g) / model.std_g;
  return std::clamp(std::exp(-0.5 * (zr * zr + zg * zg)), 0.0, 1.0);
}

ScalarMap skin_map(const RgbFrame& frame, const SkinModel& model) {
  ScalarMap out(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) out.at(x, y) = skin_likelihood(frame.pixel(x, y), model);
  }
  return out;
}

FeatureStack::FeatureStack(Eigen::MatrixXd maps) : maps_(std::move(maps)) {
  if (maps_.rows() != kMapPixels || maps_.cols() != kNumMaps) {
    throw std::invalid_argument("FeatureStack: expected a 40000 x 19 matrix");
  }
}

ScalarMap FeatureStack::map(int index) const {
  ScalarMap out(kMapSide, kMapSide);
  Eigen::Map<Eigen::VectorXd>(out.data.data(), kMapPixels) = maps_.col(index);
  return out;
}

void normalize_min_max(std::span<double> values) {
  if (values.empty()) return;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double range = *hi - min;
  if (!(range > 0.0)) {
    std::fill(values.begin(), values.end(), 0.0);
    return;
  }
  for (double& v : values) v = (v - min) / range;
}

FeatureStack build_feature_stack(const RgbFrame& frame, const SkinModel& skin) {
  const RgbFrame small = (frame.width() == kMapSide && frame.height() == kMapSide)
                             ? frame
                             : resize_bilinear(frame, kMapSide, kMapSide);
  const ColorChannels color = color_channels(small);
  const auto bands = steerable_subbands(color.intensity);
  const ScalarMap sk = skin_map(small, skin);

  Eigen::MatrixXd maps(kMapPixels, kNumMaps);
  auto put = [&maps](int col, const ScalarMap& m) {
    maps.col(col) = Eigen::Map<const Eigen::VectorXd>(m.data.data(), kMapPixels);
  };
  for (int i = 0; i < kNumSubbands; ++i) put(i, bands[i]);
  put(kRed, color.red);
  put(kGreen, color.green);
  put(kBlue, color.blue);
  put(kYellow, color.yellow);
  put(kIntensity, color.intensity);
  put(kSkin, sk);
  for (int i = 0; i < kNumMaps; ++i) normalize_min_max(std::span<double>(maps.col(i).data(), kMapPixels));
  return FeatureStack(std::move(maps));
}

RgbFrame resize_bilinear(const RgbFrame& frame, int out_w, int out_h) {
  RgbFrame out(out_w, out_h);
  const int w = frame.width();
  const int h = frame.height();
  const double sx = static_cast<double>(w) / out_w;
  const double sy = static_cast<double>(h) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(h - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, h - 1);
    const double ay = fy - y0;
    for (int x = 0; x < out_w; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(w - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, w - 1);
      const double ax = fx - x0;
      const Rgb p00 = frame.pixel(x0, y0), p10 = frame.pixel(x1, y0);
      const Rgb p01 = frame.pixel(x0, y1), p11 = frame.pixel(x1, y1);
      auto mix = [&](double a, double b, double c, double d) {
        return (1 - ay) * ((1 - ax) * a + ax * b) + ay * ((1 - ax) * c + ax * d);
      };
      out.set(x, y, {mix(p00.r, p10.r, p01.r, p11.r), mix(p00.g, p10.g, p01.g, p11.g),
                     mix(p00.b, p10.b, p01.b, p11.b)});
    }
  }
  return out;
}

double sample_bilinear(const ScalarMap& img, double x, double y) {
  return bilinear(img.width, img.height, x, y, [&img](int xi, int yi) { return img.at(xi, yi); });
}

ScalarMap affine_crop(const ScalarMap& gray, const AffineState& state, int out_side) {
  check_state(state, out_side);
  ScalarMap out(out_side, out_side);
  for_each_sample(state, out_side, [&](int u, int v, double x, double y) {
    out.at(u, v) = sample_bilinear(gray, x, y);
  });
  return out;
}

RgbFrame affine_crop(const RgbFrame& frame, const AffineState& state, int out_side) {
  check_state(state, out_side);
  RgbFrame out(out_side, out_side);
  const int w = frame.width();
  const int h = frame.height();
  for_each_sample(state, out_side, [&](int u, int v, double x, double y) {
    Rgb p;
    p.r = bilinear(w, h, x, y, [&](int xi, int yi) { return frame.pixel(xi, yi).r; });
    p.g = bilinear(w, h, x, y, [&](int xi, int yi) { return frame.pixel(xi, yi).g; });
    p.b = bilinear(w, h, x, y, [&](int xi, int yi) { return frame.pixel(xi, yi).b; });
    out.set(u, v, p);
  });
  return out;
}

Hsv rgb_to_hsv(Rgb px) {
  const double max = std::max({px.r, px.g, px.b});
  const double min = std::min({px.r, px.g, px.b});
  const double delta = max - min;
  Hsv out;
  out.v = max;
  out.s = max > 0.0 ? delta / max : 0.0;
  if (delta <= 0.0) return out;
  double deg;
  if (max == px.r) {
    deg = 60.0 * std::fmod((px.g - px.b) / delta, 6.0);
  } else if (max == px.g) {
    deg = 60.0 * ((px.b - px.r) / delta + 2.0);
  } else {
    deg = 60.0 * ((px.r - px.g) / delta + 4.0);
  }
  if (deg < 0.0) deg += 360.0;
  out.h = deg / 360.0;
  if (out.h >= 1.0) out.h = 0.0;
  return out;
}

Rgb hsv_to_rgb(Hsv px) {
  const double c = px.v * px.s;
  const double hp = px.h * 6.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = px.v - c;
  return {r + m, g + m, b + m};
}

}  // namespace sht::features
