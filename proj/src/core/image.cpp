#include "sht/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sht {

namespace {

void check_dims(int w, int h) {
  if (w < 1 || h < 1) {
    throw std::invalid_argument("image dimensions must be >= 1, got " + std::to_string(w) + "x" +
                                std::to_string(h));
  }
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

ScalarMap::ScalarMap(int w, int h, double fill)
    : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
  check_dims(w, h);
}

BinaryMap::BinaryMap(int w, int h, bool fill)
    : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill ? 1 : 0) {
  check_dims(w, h);
}

std::size_t BinaryMap::count() const {
  return static_cast<std::size_t>(std::count_if(data.begin(), data.end(), [](auto v) { return v != 0; }));
}

RgbFrame::RgbFrame(int w, int h)
    : width_(w), height_(h), data_(3 * static_cast<std::size_t>(w) * h, 0.0) {
  check_dims(w, h);
}

RgbFrame::RgbFrame(int w, int h, std::vector<double> interleaved)
    : width_(w), height_(h), data_(std::move(interleaved)) {
  check_dims(w, h);
  if (data_.size() != 3 * static_cast<std::size_t>(w) * h) {
    throw std::invalid_argument("RgbFrame: expected " + std::to_string(3 * w * h) + " values, got " +
                                std::to_string(data_.size()));
  }
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("RgbFrame: channel value outside [0,1]");
  }
}

RgbFrame RgbFrame::from_bytes(int w, int h, std::span<const std::uint8_t> rgb) {
  check_dims(w, h);
  if (rgb.size() != 3 * static_cast<std::size_t>(w) * h) {
    throw std::invalid_argument("RgbFrame::from_bytes: buffer size mismatch");
  }
  RgbFrame f(w, h);
  std::transform(rgb.begin(), rgb.end(), f.data_.begin(), [](std::uint8_t v) { return v / 255.0; });
  return f;
}

void RgbFrame::set(int x, int y, Rgb c) {
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * width_ + x);
  data_[i] = clamp01(c.r);
  data_[i + 1] = clamp01(c.g);
  data_[i + 2] = clamp01(c.b);
}

std::vector<std::uint8_t> RgbFrame::to_bytes() const {
  std::vector<std::uint8_t> out(data_.size());
  std::transform(data_.begin(), data_.end(), out.begin(),
                 [](double v) { return static_cast<std::uint8_t>(std::lround(clamp01(v) * 255.0)); });
  return out;
}

}  // namespace sht
