#include "sht/affine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sht {

bool AffineState::valid() const {
  for (double v : as_array()) {
    if (!std::isfinite(v)) return false;
  }
  return scale > 0.0 && aspect > 0.0;
}

std::array<double, 4> affine_matrix(const AffineState& s) {
  const double c = std::cos(s.rotation);
  const double sn = std::sin(s.rotation);
  const double w = s.width();
  const double h = s.height();
  // R * [[1, skew], [0, 1]] * diag(w, h)
  return {c * w, (c * s.skew - sn) * h, sn * w, (sn * s.skew + c) * h};
}

AffineState state_from_box(const Box& box) {
  if (!(box.w > 0.0 && box.h > 0.0)) throw std::invalid_argument("state_from_box: box must have positive size");
  AffineState s;
  s.tx = box.center_x();
  s.ty = box.center_y();
  s.scale = box.w / kReferenceSide;
  s.aspect = box.h / box.w;
  return s;
}

Box box_from_state(const AffineState& s) {
  const auto m = affine_matrix(s);
  double min_x = s.tx, max_x = s.tx, min_y = s.ty, max_y = s.ty;
  bool first = true;
  for (double u : {-0.5, 0.5}) {
    for (double v : {-0.5, 0.5}) {
      const double x = s.tx + m[0] * u + m[1] * v;
      const double y = s.ty + m[2] * u + m[3] * v;
      if (first) {
        min_x = max_x = x;
        min_y = max_y = y;
        first = false;
      } else {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
      }
    }
  }
  return {min_x, min_y, max_x - min_x, max_y - min_y};
}

}  // namespace sht
