#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sht {

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

/// Row-major single-channel image of doubles.
struct ScalarMap {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  ScalarMap() = default;
  ScalarMap(int w, int h, double fill = 0.0);

  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return data.size(); }
};

/// Row-major boolean mask, stored as bytes.
struct BinaryMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  BinaryMap() = default;
  BinaryMap(int w, int h, bool fill = false);

  bool at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) { data[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  std::size_t count() const;
};

/// Interleaved RGB frame with every channel in [0,1].
class RgbFrame {
 public:
  RgbFrame() = default;
  /// Black frame. Throws std::invalid_argument unless w,h >= 1.
  RgbFrame(int w, int h);
  /// Takes interleaved r,g,b values; validates size and range.
  RgbFrame(int w, int h, std::vector<double> interleaved);

  /// 8-bit interleaved RGB input (not BGR).
  static RgbFrame from_bytes(int w, int h, std::span<const std::uint8_t> rgb);

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb pixel(int x, int y) const {
    const std::size_t i = 3 * (static_cast<std::size_t>(y) * width_ + x);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  void set(int x, int y, Rgb c);

  std::span<const double> data() const { return data_; }
  std::vector<std::uint8_t> to_bytes() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

}  // namespace sht
