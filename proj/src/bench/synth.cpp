#include "sht/bench/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "sht/bench/image_io.hpp"

namespace fs = std::filesystem;

namespace sht::bench {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMargin = 8.0;

// Muted clutter colors; nothing red, yellow or skin-like.
constexpr std::array<Rgb, 8> kPalette = {{{0.15, 0.45, 0.20},
                                          {0.20, 0.30, 0.60},
                                          {0.50, 0.50, 0.55},
                                          {0.35, 0.25, 0.50},
                                          {0.10, 0.25, 0.30},
                                          {0.60, 0.65, 0.70},
                                          {0.25, 0.50, 0.55},
                                          {0.30, 0.40, 0.30}}};

constexpr Rgb kRed{0.90, 0.15, 0.10};
constexpr Rgb kDarkRed{0.55, 0.04, 0.08};
constexpr Rgb kDark{0.08, 0.08, 0.10};
constexpr Rgb kSkin{0.88, 0.63, 0.50};
constexpr Rgb kOccluder{0.45, 0.47, 0.52};

struct Shape {
  bool circle;
  double x, y, a, b;
  Rgb color;
};

std::vector<double> make_background(const SynthOptions& o, std::mt19937_64& rng) {
  const int w = o.width, h = o.height;
  std::vector<double> bg(3 * static_cast<std::size_t>(w) * h);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Shape> shapes;
  const int n_shapes = std::max(8, w * h / 4000);
  for (int i = 0; i < n_shapes; ++i) {
    Shape s;
    s.circle = unit(rng) < 0.5;
    s.x = unit(rng) * w;
    s.y = unit(rng) * h;
    s.a = 6.0 + unit(rng) * 30.0;
    s.b = 6.0 + unit(rng) * 30.0;
    s.color = kPalette[static_cast<std::size_t>(unit(rng) * kPalette.size()) % kPalette.size()];
    shapes.push_back(s);
  }
  std::normal_distribution<double> grain(0.0, 0.03);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double t = static_cast<double>(x) / w;
      Rgb c{0.22 + 0.1 * t, 0.33 + 0.05 * t, 0.30 + 0.15 * t};
      for (const Shape& s : shapes) {
        const double dx = (x + 0.5 - s.x) / s.a;
        const double dy = (y + 0.5 - s.y) / s.b;
        const bool inside = s.circle ? dx * dx + dy * dy <= 1.0 : std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0;
        if (inside) c = s.color;
      }
      const double n = grain(rng);
      const std::size_t i = 3 * (static_cast<std::size_t>(y) * w + x);
      bg[i] = std::clamp(c.r + n, 0.0, 1.0);
      bg[i + 1] = std::clamp(c.g + n, 0.0, 1.0);
      bg[i + 2] = std::clamp(c.b + n, 0.0, 1.0);
    }
  }
  return bg;
}

// Two-tone square: bright and dark red quadrants in a checkerboard inside a
// dark frame. No fine interior detail, so the appearance likelihood stays
// high a few pixels off center. Each tone is point-symmetric about the center,
// so whichever tone dominates the saliency map its centroid is the center.
Rgb square_color(double u, double v) {
  if (u < 0.08 || u > 0.92 || v < 0.08 || v > 0.92) return kDark;
  return (u < 0.5) == (v < 0.5) ? kRed : kDarkRed;
}

// Skin ellipse with eyes and mouth, in normalized ellipse coordinates.
bool ellipse_color(double u, double v, Rgb& out) {
  const double dx = 2.0 * u - 1.0, dy = 2.0 * v - 1.0;
  if (dx * dx + dy * dy > 1.0) return false;
  out = kSkin;
  auto near = [&](double cx, double cy, double r) { return (dx - cx) * (dx - cx) + (dy - cy) * (dy - cy) < r * r; };
  if (near(-0.35, -0.25, 0.15) || near(0.35, -0.25, 0.15)) out = kDark;
  if (std::abs(dx) < 0.35 && std::abs(dy - 0.45) < 0.08) out = {0.6, 0.2, 0.2};
  return true;
}

struct Motion {
  double x, y, vx, vy;
};

void step_motion(Motion& m, const SynthOptions& o, double size_w, double size_h, std::mt19937_64& rng) {
  std::normal_distribution<double> accel(0.0, 0.6);
  m.vx += accel(rng);
  m.vy += accel(rng);
  const double sp = std::hypot(m.vx, m.vy);
  if (sp > o.speed) {
    m.vx *= o.speed / sp;
    m.vy *= o.speed / sp;
  }
  const double max_x = o.width - kMargin - size_w, max_y = o.height - kMargin - size_h;
  double nx = m.x + m.vx, ny = m.y + m.vy;
  if (nx < kMargin || nx > max_x) {
    m.vx = -m.vx;
    nx = std::clamp(m.x + m.vx, kMargin, max_x);
  }
  if (ny < kMargin || ny > max_y) {
    m.vy = -m.vy;
    ny = std::clamp(m.y + m.vy, kMargin, max_y);
  }
  m.x = nx;
  m.y = ny;
}

}  // namespace

Scenario parse_scenario(std::string_view name) {
  if (name == "smooth-motion") return Scenario::smooth_motion;
  if (name == "abrupt-jump") return Scenario::abrupt_jump;
  if (name == "occlusion") return Scenario::occlusion;
  if (name == "color-constant-deformation") return Scenario::color_constant_deformation;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::smooth_motion: return "smooth-motion";
    case Scenario::abrupt_jump: return "abrupt-jump";
    case Scenario::occlusion: return "occlusion";
    case Scenario::color_constant_deformation: return "color-constant-deformation";
  }
  return "unknown";
}

SynthSequence render_sequence(const SynthOptions& o) {
  if (o.frames < 1 || o.width < 4 * o.target_size || o.height < 4 * o.target_size) {
    throw std::invalid_argument("synth: frame too small for the target or no frames requested");
  }
  std::mt19937_64 rng(o.seed);
  const std::vector<double> bg = make_background(o, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double base = o.target_size;
  const bool ellipse = o.scenario == Scenario::color_constant_deformation;
  const double max_h = ellipse ? base * 1.3 : base;
  Motion m{kMargin + unit(rng) * (o.width - 2 * kMargin - base), kMargin + unit(rng) * (o.height - 2 * kMargin - max_h),
           0.0, 0.0};

  SynthSequence seq;
  for (int f = 0; f < o.frames; ++f) {
    if (f > 0) {
      if (o.scenario == Scenario::abrupt_jump && o.jump_every > 0 && f % o.jump_every == 0) {
        const double cx = m.x, cy = m.y;
        for (int attempt = 0; attempt < 1000; ++attempt) {
          m.x = kMargin + unit(rng) * (o.width - 2 * kMargin - base);
          m.y = kMargin + unit(rng) * (o.height - 2 * kMargin - base);
          if (std::hypot(m.x - cx, m.y - cy) > o.min_jump) break;
        }
        m.vx = m.vy = 0.0;
      } else {
        step_motion(m, o, base, max_h, rng);
      }
    }
    const double tw = base;
    const double th = ellipse ? base * (1.0 + 0.3 * std::sin(2.0 * kPi * f / 40.0)) : base;
    const double cy_center = m.y + 0.5 * max_h;
    const Box box{m.x, cy_center - 0.5 * th, tw, th};

    std::vector<double> img = bg;
    std::normal_distribution<double> sensor(0.0, 0.01);
    const int w = o.width;
    for (int y = 0; y < o.height; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = 3 * (static_cast<std::size_t>(y) * w + x);
        const double u = (x + 0.5 - box.x) / box.w;
        const double v = (y + 0.5 - box.y) / box.h;
        if (u >= 0.0 && u < 1.0 && v >= 0.0 && v < 1.0) {
          Rgb c;
          bool hit = true;
          if (ellipse) hit = ellipse_color(u, v, c);
          else c = square_color(u, v);
          if (hit) {
            img[i] = c.r;
            img[i + 1] = c.g;
            img[i + 2] = c.b;
          }
        }
        if (o.scenario == Scenario::occlusion) {
          // Two sweeps of 30 frames each, bar 0.75 target widths wide.
          for (int start : {o.frames / 3, 2 * o.frames / 3}) {
            if (f < start || f >= start + 30) continue;
            const double bar_x = box.center_x() + (f - start - 15) * (box.w / 10.0);
            if (std::abs(x + 0.5 - bar_x) < 0.375 * box.w) {
              img[i] = kOccluder.r;
              img[i + 1] = kOccluder.g;
              img[i + 2] = kOccluder.b;
            }
          }
        }
        const double n = sensor(rng);
        for (int c = 0; c < 3; ++c) img[i + c] = std::clamp(img[i + c] + n, 0.0, 1.0);
      }
    }
    seq.frames.emplace_back(o.width, o.height, std::move(img));
    seq.groundtruth.push_back(box);
  }
  return seq;
}

SequenceSpec synth_sequence(const SynthOptions& options, const fs::path& dir) {
  const SynthSequence seq = render_sequence(options);
  fs::create_directories(dir / "img");
  SequenceSpec spec;
  spec.name = dir.filename().string();
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "%04zu.png", i + 1);
    const fs::path file = dir / "img" / name;
    write_frame(file, seq.frames[i]);
    spec.frames.push_back(file);
  }
  spec.groundtruth = seq.groundtruth;
  write_groundtruth(dir / "groundtruth_rect.txt", spec.groundtruth);
  return spec;
}

}  // namespace sht::bench
