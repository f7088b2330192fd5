#pragma once

#include <array>

namespace sht {

/// Reference side length (pixels) of a unit-scale target. A state with scale s
/// covers a box of width s * kReferenceSide.
inline constexpr double kReferenceSide = 32.0;

/// Axis-aligned box in 0-based continuous pixel coordinates: pixel (i, j)
/// covers [i, i+1) x [j, j+1).
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double center_x() const { return x + 0.5 * w; }
  double center_y() const { return y + 0.5 * h; }
  double area() const { return w * h; }
  bool operator==(const Box&) const = default;
};

/// Six-parameter affine target state.
///
/// The target occupies the image of the unit square [-0.5, 0.5]^2 under
///   p = (tx, ty) + R(rotation) * [[1, skew], [0, 1]] * diag(width, height) * t
/// with width = scale * kReferenceSide and height = width * aspect.
struct AffineState {
  double tx = 0.0;        ///< horizontal translation (target center, pixels)
  double ty = 0.0;        ///< vertical translation (target center, pixels)
  double rotation = 0.0;  ///< radians
  double scale = 1.0;     ///< > 0
  double aspect = 1.0;    ///< height / width, > 0
  double skew = 0.0;

  static constexpr int kDim = 6;

  std::array<double, kDim> as_array() const { return {tx, ty, rotation, scale, aspect, skew}; }
  static AffineState from_array(const std::array<double, kDim>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  bool operator==(const AffineState&) const = default;

  double width() const { return scale * kReferenceSide; }
  double height() const { return scale * kReferenceSide * aspect; }

  /// True when finite with positive scale and aspect.
  bool valid() const;
};

/// 2x2 linear part of the state transform, row-major {a, b, c, d}.
std::array<double, 4> affine_matrix(const AffineState& s);

/// Axis-aligned, unrotated state covering `box`.
AffineState state_from_box(const Box& box);

/// Axis-aligned bounding box of the transformed unit square.
Box box_from_state(const AffineState& s);

}  // namespace sht
