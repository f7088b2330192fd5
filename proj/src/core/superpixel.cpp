#include "sht/superpixel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sht::superpixel {

namespace {

struct Lab {
  double l, a, b;
};

double srgb_to_linear(double c) { return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4); }

double lab_f(double t) {
  constexpr double eps = 216.0 / 24389.0;
  constexpr double kappa = 24389.0 / 27.0;
  return t > eps ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
}

// sRGB (D65) to CIELAB.
Lab to_lab(Rgb p) {
  const double r = srgb_to_linear(p.r), g = srgb_to_linear(p.g), b = srgb_to_linear(p.b);
  const double x = (0.4124564 * r + 0.3575761 * g + 0.1804375 * b) / 0.95047;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = (0.0193339 * r + 0.1191920 * g + 0.9503041 * b) / 1.08883;
  const double fx = lab_f(x), fy = lab_f(y), fz = lab_f(z);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

struct Center {
  double l, a, b, x, y;
};

}  // namespace

Segmentation slic(const RgbFrame& patch, const SlicParams& params) {
  const int w = patch.width();
  const int h = patch.height();
  const int npix = w * h;
  if (params.superpixels < 1 || params.superpixels > npix) {
    throw std::invalid_argument("slic: superpixel count must be in [1, pixel count]");
  }
  if (!(params.compactness > 0.0)) throw std::invalid_argument("slic: compactness must be positive");

  std::vector<Lab> lab(npix);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) lab[y * w + x] = to_lab(patch.pixel(x, y));
  }

  // Seed grid with roughly square cells.
  const int ny = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(params.superpixels) * h / w))));
  const int nx = std::max(1, static_cast<int>(std::lround(static_cast<double>(params.superpixels) / ny)));
  const double step = std::sqrt(static_cast<double>(npix) / (nx * ny));

  auto gradient = [&](int x, int y) {
    const Lab& l = lab[y * w + std::max(x - 1, 0)];
    const Lab& r = lab[y * w + std::min(x + 1, w - 1)];
    const Lab& u = lab[std::max(y - 1, 0) * w + x];
    const Lab& d = lab[std::min(y + 1, h - 1) * w + x];
    auto sq = [](const Lab& p, const Lab& q) {
      return (p.l - q.l) * (p.l - q.l) + (p.a - q.a) * (p.a - q.a) + (p.b - q.b) * (p.b - q.b);
    };
    return sq(l, r) + sq(u, d);
  };

  std::vector<Center> centers;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      int cx = std::min(w - 1, static_cast<int>((i + 0.5) * w / nx));
      int cy = std::min(h - 1, static_cast<int>((j + 0.5) * h / ny));
      if (nx * ny > 1) {
        double best = gradient(cx, cy);
        int bx = cx, by = cy;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int px = cx + dx, py = cy + dy;
            if (px < 0 || py < 0 || px >= w || py >= h) continue;
            const double g = gradient(px, py);
            if (g < best) {
              best = g;
              bx = px;
              by = py;
            }
          }
        }
        cx = bx;
        cy = by;
      }
      const Lab& c = lab[cy * w + cx];
      centers.push_back({c.l, c.a, c.b, static_cast<double>(cx), static_cast<double>(cy)});
    }
  }

  const int k = static_cast<int>(centers.size());
  const int window = static_cast<int>(std::ceil(step));
  const double spatial_weight = (params.compactness * params.compactness) / (step * step);
  std::vector<int> assign(npix, -1);
  std::vector<double> dist(npix);
  for (int iter = 0; iter < params.iterations; ++iter) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    for (int c = 0; c < k; ++c) {
      const Center& ctr = centers[c];
      const int x0 = std::max(0, static_cast<int>(std::floor(ctr.x)) - window);
      const int x1 = std::min(w - 1, static_cast<int>(std::ceil(ctr.x)) + window);
      const int y0 = std::max(0, static_cast<int>(std::floor(ctr.y)) - window);
      const int y1 = std::min(h - 1, static_cast<int>(std::ceil(ctr.y)) + window);
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const Lab& p = lab[y * w + x];
          const double dc = (p.l - ctr.l) * (p.l - ctr.l) + (p.a - ctr.a) * (p.a - ctr.a) + (p.b - ctr.b) * (p.b - ctr.b);
          const double ds = (x - ctr.x) * (x - ctr.x) + (y - ctr.y) * (y - ctr.y);
          const double d = dc + spatial_weight * ds;
          if (d < dist[y * w + x]) {
            dist[y * w + x] = d;
            assign[y * w + x] = c;
          }
        }
      }
    }
    // pixels outside every window go to the spatially nearest center
    for (int i = 0; i < npix; ++i) {
      if (assign[i] >= 0) continue;
      const int x = i % w, y = i / w;
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double ds = (x - centers[c].x) * (x - centers[c].x) + (y - centers[c].y) * (y - centers[c].y);
        if (ds < best) {
          best = ds;
          assign[i] = c;
        }
      }
    }
    std::vector<Center> sums(k, Center{0, 0, 0, 0, 0});
    std::vector<int> counts(k, 0);
    for (int i = 0; i < npix; ++i) {
      Center& s = sums[assign[i]];
      s.l += lab[i].l;
      s.a += lab[i].a;
      s.b += lab[i].b;
      s.x += i % w;
      s.y += i / w;
      ++counts[assign[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      const double n = counts[c];
      centers[c] = {sums[c].l / n, sums[c].a / n, sums[c].b / n, sums[c].x / n, sums[c].y / n};
    }
  }

  // Connectivity enforcement.
  const int min_size = std::max(1, npix / (4 * k));
  Segmentation seg;
  seg.width = w;
  seg.height = h;
  seg.labels.assign(npix, -1);
  std::vector<int> component;
  std::vector<int> sizes;
  for (int start = 0; start < npix; ++start) {
    if (seg.labels[start] >= 0) continue;
    const int sx = start % w, sy = start / w;
    int adjacent = -1;
    if (sx > 0) adjacent = seg.labels[start - 1];
    else if (sy > 0) adjacent = seg.labels[start - w];

    const int new_label = static_cast<int>(sizes.size());
    component.clear();
    component.push_back(start);
    seg.labels[start] = new_label;
    for (std::size_t head = 0; head < component.size(); ++head) {
      const int p = component[head];
      const int px = p % w, py = p / w;
      const int nbrs[4][2] = {{px - 1, py}, {px + 1, py}, {px, py - 1}, {px, py + 1}};
      for (const auto& nb : nbrs) {
        if (nb[0] < 0 || nb[1] < 0 || nb[0] >= w || nb[1] >= h) continue;
        const int q = nb[1] * w + nb[0];
        if (seg.labels[q] < 0 && assign[q] == assign[start]) {
          seg.labels[q] = new_label;
          component.push_back(q);
        }
      }
    }
    if (static_cast<int>(component.size()) < min_size && adjacent >= 0) {
      for (int p : component) seg.labels[p] = adjacent;
      sizes[adjacent] += static_cast<int>(component.size());
    } else {
      sizes.push_back(static_cast<int>(component.size()));
    }
  }

  seg.count = static_cast<int>(sizes.size());
  seg.areas = sizes;
  std::vector<double> hs(seg.count, 0.0), ss(seg.count, 0.0), vs(seg.count, 0.0);
  for (int i = 0; i < npix; ++i) {
    const features::Hsv c = features::rgb_to_hsv(patch.pixel(i % w, i / w));
    const int l = seg.labels[i];
    hs[l] += c.h;
    ss[l] += c.s;
    vs[l] += c.v;
  }
  seg.hsv_means.resize(seg.count);
  for (int l = 0; l < seg.count; ++l) {
    const double n = seg.areas[l];
    seg.hsv_means[l] = {hs[l] / n, ss[l] / n, vs[l] / n};
  }
  return seg;
}

HsvHistogram histogram(const Segmentation& seg, double k_o) {
  HsvHistogram out;
  for (const features::Hsv& m : seg.hsv_means) {
    const double channel[3] = {m.h, m.s, m.v};
    for (int o = 0; o < 3; ++o) {
      for (int j = 0; j < kBinsPerChannel; ++j) {
        const double d = channel[o] - kBinCenters[j];
        out.bins[o * kBinsPerChannel + j] += std::exp(-k_o * d * d);
      }
    }
  }
  return out;
}

double similarity(const HsvHistogram& h, const HsvHistogram& t) {
  double dot = 0.0, nh = 0.0, nt = 0.0;
  for (int i = 0; i < kHistogramSize; ++i) {
    dot += h.bins[i] * t.bins[i];
    nh += h.bins[i] * h.bins[i];
    nt += t.bins[i] * t.bins[i];
  }
  if (!(nh > 0.0) || !(nt > 0.0)) throw std::invalid_argument("similarity: zero histogram");
  return dot / (std::sqrt(nh) * std::sqrt(nt));
}

double hist_error(double similarity, double k_h) {
  if (!(k_h > 0.0)) throw std::invalid_argument("hist_error: k_h must be positive");
  return 1.0 / (k_h + similarity);
}

HistTemplate update_template(const HistTemplate& t, const HsvHistogram& best) {
  if (!(t.gamma >= 0.0 && t.gamma <= 1.0)) throw std::invalid_argument("update_template: gamma must be in [0,1]");
  HistTemplate out = t;
  for (int i = 0; i < kHistogramSize; ++i) out.hist.bins[i] = t.gamma * t.hist.bins[i] + (1.0 - t.gamma) * best.bins[i];
  return out;
}

}  // namespace sht::superpixel
