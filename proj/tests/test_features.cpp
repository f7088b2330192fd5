#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "sht/features.hpp"
#include "support.hpp"

using namespace sht;
using namespace sht::features;

namespace {

// Reference resampler written independently of resize_bilinear: each output
// pixel center maps back to (x + 0.5) * scale - 0.5, neighbours are clamped.
double ref_bilinear(const std::vector<double>& img, int w, int h, double sx, double sy) {
  sx = std::clamp(sx, 0.0, w - 1.0);
  sy = std::clamp(sy, 0.0, h - 1.0);
  const int x0 = static_cast<int>(std::floor(sx)), y0 = static_cast<int>(std::floor(sy));
  const int x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
  const double fx = sx - x0, fy = sy - y0;
  auto at = [&](int x, int y) { return img[static_cast<std::size_t>(y) * w + x]; };
  return (1 - fy) * ((1 - fx) * at(x0, y0) + fx * at(x1, y0)) + fy * ((1 - fx) * at(x0, y1) + fx * at(x1, y1));
}

std::vector<double> channel(const RgbFrame& f, int c) {
  std::vector<double> out(static_cast<std::size_t>(f.width()) * f.height());
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x) {
      const Rgb p = f.pixel(x, y);
      out[static_cast<std::size_t>(y) * f.width() + x] = c == 0 ? p.r : c == 1 ? p.g : p.b;
    }
  return out;
}

double map_mean(const ScalarMap& m) { return std::accumulate(m.data.begin(), m.data.end(), 0.0) / m.size(); }

ScalarMap grating(double period, bool vertical_stripes) {
  ScalarMap m(kMapSide, kMapSide);
  constexpr double kTwoPi = 6.283185307179586;
  for (int y = 0; y < kMapSide; ++y)
    for (int x = 0; x < kMapSide; ++x) m.at(x, y) = 0.5 + 0.5 * std::sin(kTwoPi * (vertical_stripes ? x : y) / period);
  return m;
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("color channels on pure red and gray pixels") {
  RgbFrame f(2, 1);
  f.set(0, 0, {1, 0, 0});
  f.set(1, 0, {0.5, 0.5, 0.5});
  const auto c = color_channels(f);
  CHECK(c.red.at(0, 0) == doctest::Approx(1.0));
  CHECK(c.green.at(0, 0) == doctest::Approx(-0.5));
  CHECK(c.blue.at(0, 0) == doctest::Approx(-0.5));
  CHECK(c.yellow.at(0, 0) == doctest::Approx(0.0));
  CHECK(c.intensity.at(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(c.red.at(1, 0) == doctest::Approx(0.0));
  CHECK(c.green.at(1, 0) == doctest::Approx(0.0));
  CHECK(c.blue.at(1, 0) == doctest::Approx(0.0));
  CHECK(c.yellow.at(1, 0) == doctest::Approx(0.0));
  CHECK(c.intensity.at(1, 0) == doctest::Approx(0.5));
}

TEST_CASE("color channels match a scalar loop") {
  const RgbFrame f = testing::random_frame(37, 23, 5);
  const auto c = color_channels(f);
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x) {
      const Rgb p = f.pixel(x, y);
      CHECK(c.red.at(x, y) == p.r - (p.g + p.b) / 2);
      CHECK(c.green.at(x, y) == p.g - (p.r + p.b) / 2);
      CHECK(c.blue.at(x, y) == p.b - (p.r + p.g) / 2);
      CHECK(c.yellow.at(x, y) == doctest::Approx((p.r + p.g) / 2 - std::abs(p.r - p.g) / 2 - p.b).epsilon(1e-12));
      CHECK(c.intensity.at(x, y) == doctest::Approx((p.r + p.g + p.b) / 3).epsilon(1e-12));
    }
}

TEST_CASE("subbands of a constant image vanish") {
  const auto bands = steerable_subbands(ScalarMap(kMapSide, kMapSide, 0.37));
  REQUIRE(bands.size() == 13);
  for (const auto& b : bands) {
    CHECK(b.width == kMapSide);
    for (double v : b.data) REQUIRE(std::abs(v) <= 1e-6);
  }
}

TEST_CASE("vertical grating peaks in the matching orientation and scale") {
  // A first-derivative filter at sigma responds most to period 2*pi*sigma.
  const double period = 6.283185307179586 * kSubbandSigmas[1];
  const auto bands = steerable_subbands(grating(period, true));
  std::vector<double> means;
  for (int i = 0; i < 12; ++i) means.push_back(map_mean(bands[i]));
  const auto best = std::max_element(means.begin(), means.end()) - means.begin();
  CHECK(best == 1 * kNumOrientations + 0);
}

TEST_CASE("rotating the grating by 90 degrees swaps orientations 0 and 90") {
  const double period = 6.283185307179586 * kSubbandSigmas[1];
  const auto v = steerable_subbands(grating(period, true));
  const auto h = steerable_subbands(grating(period, false));
  for (int s = 0; s < kNumScales; ++s) {
    const double v0 = map_mean(v[s * 4 + 0]), v90 = map_mean(v[s * 4 + 2]);
    const double h0 = map_mean(h[s * 4 + 0]), h90 = map_mean(h[s * 4 + 2]);
    CHECK(std::abs(v0 - h90) <= 0.05 * std::max(v0, h90));
    CHECK(std::abs(v90 - h0) <= 0.05 * std::max(std::max(v90, h0), 1e-9) + 1e-9);
  }
}

TEST_CASE("skin likelihood") {
  const SkinModel m;
  // Chromaticity exactly at the mode.
  CHECK(skin_likelihood({0.43, 0.31, 0.26}, m) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(skin_likelihood({0, 0, 1}, m) < 0.05);
  const double third = 1.0 / 3.0;
  const double expected =
      std::exp(-0.5 * ((third - 0.43) * (third - 0.43) / (0.08 * 0.08) + (third - 0.31) * (third - 0.31) / (0.05 * 0.05)));
  CHECK(skin_likelihood({0.5, 0.5, 0.5}, m) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("feature stack layout and normalization") {
  const auto stack = build_feature_stack(testing::random_frame(123, 77, 9));
  CHECK(stack.matrix().rows() == kMapPixels);
  CHECK(stack.matrix().cols() == kNumMaps);
  for (int i = 0; i < kNumMaps; ++i) {
    const auto col = stack.matrix().col(i);
    const double lo = col.minCoeff(), hi = col.maxCoeff();
    CHECK(lo == 0.0);
    CHECK((hi == 1.0 || hi == 0.0));
  }
}

TEST_CASE("feature stack is deterministic") {
  const RgbFrame f = testing::random_frame(64, 48, 2);
  CHECK(build_feature_stack(f).matrix() == build_feature_stack(f).matrix());
}

TEST_CASE("constant white frame gives zero subband and intensity maps") {
  RgbFrame white(50, 40);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 50; ++x) white.set(x, y, {1, 1, 1});
  const auto stack = build_feature_stack(white);
  for (int i = 0; i < kNumSubbands; ++i) CHECK(stack.matrix().col(i).cwiseAbs().maxCoeff() == 0.0);
  CHECK(stack.matrix().col(kIntensity).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("resize matches a reference bilinear resample") {
  const RgbFrame f = testing::random_frame(400, 400, 3);
  const RgbFrame r = resize_bilinear(f, kMapSide, kMapSide);
  for (int c = 0; c < 3; ++c) {
    const auto src = channel(f, c);
    const auto dst = channel(r, c);
    double worst = 0.0;
    for (int y = 0; y < kMapSide; ++y)
      for (int x = 0; x < kMapSide; ++x) {
        const double ref = ref_bilinear(src, 400, 400, (x + 0.5) * 2.0 - 0.5, (y + 0.5) * 2.0 - 0.5);
        worst = std::max(worst, std::abs(ref - dst[static_cast<std::size_t>(y) * kMapSide + x]));
      }
    CHECK(worst <= 1.0 / 255.0);
  }
  // The stack's intensity map is the normalized intensity of that resample.
  std::array<std::vector<double>, 3> src = {channel(f, 0), channel(f, 1), channel(f, 2)};
  std::vector<double> inten(kMapPixels);
  for (int y = 0; y < kMapSide; ++y)
    for (int x = 0; x < kMapSide; ++x) {
      double s = 0;
      for (const auto& ch : src) s += ref_bilinear(ch, 400, 400, (x + 0.5) * 2.0 - 0.5, (y + 0.5) * 2.0 - 0.5);
      inten[static_cast<std::size_t>(y) * kMapSide + x] = s / 3.0;
    }
  const auto [lo, hi] = std::minmax_element(inten.begin(), inten.end());
  const double range = *hi - *lo;
  const auto stack = build_feature_stack(f);
  double worst = 0.0;
  for (int k = 0; k < kMapPixels; ++k)
    worst = std::max(worst, std::abs((inten[k] - *lo) / range - stack.matrix()(k, kIntensity)));
  CHECK(worst <= 1.0 / 255.0);
}

TEST_CASE("affine crop of a uniform region is constant") {
  ScalarMap img(100, 100, 0.42);
  AffineState s;
  s.tx = 50;
  s.ty = 50;
  s.rotation = 0.3;
  s.scale = 1.2;
  s.skew = 0.1;
  const auto patch = affine_crop(img, s, 16);
  for (double v : patch.data) CHECK(v == doctest::Approx(0.42).epsilon(1e-12));
}

TEST_CASE("integer translation crops exactly") {
  const ScalarMap img = testing::random_map(80, 60, 11);
  const int n = 16, x0 = 21, y0 = 13;
  AffineState s;
  s.tx = x0 + n / 2.0;
  s.ty = y0 + n / 2.0;
  s.scale = n / kReferenceSide;
  const auto patch = affine_crop(img, s, n);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) REQUIRE(patch.at(u, v) == img.at(x0 + u, y0 + v));
}

TEST_CASE("rotated crop equals crop of the rotated image") {
  const int side = 64;
  // Smooth asymmetric pattern.
  ScalarMap img(side, side);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) img.at(x, y) = 0.5 + 0.3 * std::sin(0.21 * x + 0.05 * y * y / side) + 0.002 * x;
  // Rotating by +90 degrees about (32, 32) permutes pixels: I'(i, j) = I(63 - j, i).
  ScalarMap rotated(side, side);
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) rotated.at(i, j) = img.at(side - 1 - j, i);
  AffineState s;
  s.tx = 32;
  s.ty = 32;
  s.scale = 1.0;
  AffineState r = s;
  r.rotation = 1.5707963267948966;
  const auto a = affine_crop(img, r, 32);
  const auto b = affine_crop(rotated, s, 32);
  for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(std::abs(a.data[k] - b.data[k]) <= 1.0 / 255.0);
}

TEST_CASE("affine crop rejects degenerate states") {
  const ScalarMap img(10, 10, 1.0);
  AffineState s;
  s.scale = 0.0;
  CHECK_THROWS_AS(affine_crop(img, s, 8), std::invalid_argument);
  s.scale = 1.0;
  s.aspect = 0.0;
  CHECK_THROWS_AS(affine_crop(img, s, 8), std::invalid_argument);
  s.aspect = 1.0;
  CHECK_THROWS_AS(affine_crop(img, s, 0), std::invalid_argument);
}

TEST_CASE("out of bounds samples read zero") {
  const ScalarMap img(10, 10, 1.0);
  CHECK(sample_bilinear(img, -5.0, 3.0) == 0.0);
  CHECK(sample_bilinear(img, 3.0, 20.0) == 0.0);
  CHECK(sample_bilinear(img, 4.0, 4.0) == 1.0);
}

TEST_CASE("rgb to hsv") {
  auto hsv = rgb_to_hsv({1, 0, 0});
  CHECK(hsv.h == doctest::Approx(0.0));
  CHECK(hsv.s == doctest::Approx(1.0));
  CHECK(hsv.v == doctest::Approx(1.0));
  hsv = rgb_to_hsv({0.5, 0.5, 0.5});
  CHECK(hsv.h == 0.0);
  CHECK(hsv.s == 0.0);
  CHECK(hsv.v == doctest::Approx(0.5));
  hsv = rgb_to_hsv({0, 1, 0});
  CHECK(hsv.h == doctest::Approx(1.0 / 3.0));
  CHECK(hsv.s == doctest::Approx(1.0));
  CHECK(hsv.v == doctest::Approx(1.0));
}

TEST_CASE("hsv round trip") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Rgb p{u(rng), u(rng), u(rng)};
    const auto hsv = rgb_to_hsv(p);
    CHECK(hsv.h >= 0.0);
    CHECK(hsv.h < 1.0);
    if (hsv.s <= 0.0) continue;
    const Rgb q = hsv_to_rgb(hsv);
    CHECK(std::abs(p.r - q.r) <= 1e-6);
    CHECK(std::abs(p.g - q.g) <= 1e-6);
    CHECK(std::abs(p.b - q.b) <= 1e-6);
  }
}

}  // TEST_SUITE
