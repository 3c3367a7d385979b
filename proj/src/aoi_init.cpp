#include "aoiopt/aoi_init.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

namespace aoiopt {

AOIMap grid_init(int width, int height, int rows, int cols) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("grid_init: rows and cols must be positive");
  if (rows > height || cols > width)
    throw std::invalid_argument("grid_init: more cells than pixels");

  AOIMap m;
  m.width = width;
  m.height = height;
  m.labels.resize(static_cast<size_t>(width) * height);
  for (int r = 0; r < rows; ++r) {
    int y0 = static_cast<int>(static_cast<int64_t>(r) * height / rows);
    int y1 = static_cast<int>(static_cast<int64_t>(r + 1) * height / rows);
    for (int c = 0; c < cols; ++c) {
      int x0 = static_cast<int>(static_cast<int64_t>(c) * width / cols);
      int x1 = static_cast<int>(static_cast<int64_t>(c + 1) * width / cols);
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) m.at(x, y) = r * cols + c;
    }
  }
  return m;
}

namespace {

struct Pt {
  double x, y;
};

size_t nearest_center(const std::vector<Pt>& centers, double x, double y) {
  size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < centers.size(); ++c) {
    double dx = x - centers[c].x, dy = y - centers[c].y;
    double d = dx * dx + dy * dy;
    if (d < best_d) {  // strict keeps the lowest id on ties
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

AOIMap kmeans_init(const Dataset& d, int k, uint64_t seed, int max_iter) {
  if (k <= 0) throw std::invalid_argument("kmeans_init: k must be positive");
  std::vector<Pt> pts;
  for (const auto& rec : d.recordings)
    for (const auto& s : rec.samples) pts.push_back({s.x, s.y});
  if (pts.empty()) throw std::invalid_argument("kmeans_init: no gaze points");

  auto sorted = pts;
  std::sort(sorted.begin(), sorted.end(), [](const Pt& a, const Pt& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  size_t distinct = 1;
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].x != sorted[i - 1].x || sorted[i].y != sorted[i - 1].y)
      ++distinct;
  if (static_cast<size_t>(k) > distinct) {
    std::fprintf(stderr,
                 "kmeans_init: only %zu distinct gaze points, reducing k from "
                 "%d to %zu\n",
                 distinct, k, distinct);
    k = static_cast<int>(distinct);
  }

  std::mt19937_64 rng(seed);

  // k-means++ seeding
  std::vector<Pt> centers;
  std::uniform_int_distribution<size_t> first(0, pts.size() - 1);
  centers.push_back(pts[first(rng)]);
  std::vector<double> d2(pts.size());
  while (centers.size() < static_cast<size_t>(k)) {
    double total = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centers) {
        double dx = pts[i].x - c.x, dy = pts[i].y - c.y;
        best = std::min(best, dx * dx + dy * dy);
      }
      d2[i] = best;
      total += best;
    }
    if (total <= 0) break;  // all remaining points coincide with centers
    std::uniform_real_distribution<double> u(0.0, total);
    double r = u(rng), acc = 0;
    size_t pick = pts.size() - 1;
    for (size_t i = 0; i < pts.size(); ++i) {
      acc += d2[i];
      if (acc >= r) {
        pick = i;
        break;
      }
    }
    centers.push_back(pts[pick]);
  }

  // Lloyd iterations
  std::vector<size_t> assign(pts.size(), 0);
  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (size_t i = 0; i < pts.size(); ++i) {
      size_t c = nearest_center(centers, pts[i].x, pts[i].y);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    if (!changed && it > 0) break;
    std::vector<double> sx(centers.size(), 0), sy(centers.size(), 0);
    std::vector<long> cnt(centers.size(), 0);
    for (size_t i = 0; i < pts.size(); ++i) {
      sx[assign[i]] += pts[i].x;
      sy[assign[i]] += pts[i].y;
      ++cnt[assign[i]];
    }
    for (size_t c = 0; c < centers.size(); ++c) {
      if (cnt[c] > 0) centers[c] = {sx[c] / cnt[c], sy[c] / cnt[c]};
      // empty clusters keep their previous center
    }
    if (!changed) break;
  }

  // Voronoi labeling of every stimulus pixel
  AOIMap m;
  m.width = d.width;
  m.height = d.height;
  m.labels.resize(static_cast<size_t>(d.width) * d.height);
  for (int y = 0; y < d.height; ++y)
    for (int x = 0; x < d.width; ++x)
      m.at(x, y) = static_cast<int>(nearest_center(centers, x, y));
  return m;
}

Heatmap compute_heatmap(const Dataset& d, double sigma) {
  if (sigma <= 0) throw std::invalid_argument("compute_heatmap: sigma must be positive");
  Heatmap h;
  h.width = d.width;
  h.height = d.height;
  h.density.assign(static_cast<size_t>(d.width) * d.height, 0.0);

  const double radius = 3.0 * sigma;
  const double r2 = radius * radius;
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (const auto& rec : d.recordings) {
    for (const auto& s : rec.samples) {
      int x0 = std::max(0, static_cast<int>(std::ceil(s.x - radius)));
      int x1 = std::min(d.width - 1, static_cast<int>(std::floor(s.x + radius)));
      int y0 = std::max(0, static_cast<int>(std::ceil(s.y - radius)));
      int y1 = std::min(d.height - 1, static_cast<int>(std::floor(s.y + radius)));
      for (int py = y0; py <= y1; ++py) {
        double dy = py - s.y;
        for (int px = x0; px <= x1; ++px) {
          double dx = px - s.x;
          double dd = dx * dx + dy * dy;
          if (dd <= r2)
            h.density[static_cast<size_t>(py) * d.width + px] += std::exp(-dd * inv);
        }
      }
    }
  }
  double total = 0;
  for (double v : h.density) total += v;
  if (total > 0)
    for (double& v : h.density) v /= total;
  return h;
}

namespace {

// Separable Gaussian blur, kernel truncated at 3 sigma and renormalized at
// the borders so a constant field stays constant.
std::vector<double> gaussian_smooth(const std::vector<double>& in, int w, int h,
                                    double sigma) {
  int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i)
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));

  std::vector<double> tmp(in.size()), out(in.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0, wsum = 0;
      for (int i = -radius; i <= radius; ++i) {
        int xx = x + i;
        if (xx < 0 || xx >= w) continue;
        acc += kernel[i + radius] * in[static_cast<size_t>(y) * w + xx];
        wsum += kernel[i + radius];
      }
      tmp[static_cast<size_t>(y) * w + x] = acc / wsum;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0, wsum = 0;
      for (int i = -radius; i <= radius; ++i) {
        int yy = y + i;
        if (yy < 0 || yy >= h) continue;
        acc += kernel[i + radius] * tmp[static_cast<size_t>(yy) * w + x];
        wsum += kernel[i + radius];
      }
      out[static_cast<size_t>(y) * w + x] = acc / wsum;
    }
  }
  return out;
}

constexpr int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

}  // namespace

AOIMap gradient_segment_heatmap(const Heatmap& h, double smoothing,
                                double merge_threshold) {
  const int w = h.width, hh = h.height;
  const size_t n = static_cast<size_t>(w) * hh;
  if (n == 0) throw std::invalid_argument("gradient_segment_heatmap: empty heatmap");

  std::vector<double> s =
      smoothing > 0 ? gaussian_smooth(h.density, w, hh, smoothing) : h.density;

  AOIMap m;
  m.width = w;
  m.height = hh;
  m.labels.assign(n, 0);

  // Strict 8-neighborhood maxima, basin ids in scan order.
  std::vector<int> max_id(n, -1);
  std::vector<std::pair<int, int>> maxima;
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < w; ++x) {
      size_t idx = static_cast<size_t>(y) * w + x;
      bool strict = true;
      for (int k = 0; k < 8 && strict; ++k) {
        int nx = x + kDx[k], ny = y + kDy[k];
        if (nx < 0 || nx >= w || ny < 0 || ny >= hh) continue;
        if (s[static_cast<size_t>(ny) * w + nx] >= s[idx]) strict = false;
      }
      if (strict) {
        max_id[idx] = static_cast<int>(maxima.size());
        maxima.emplace_back(x, y);
      }
    }
  }
  if (maxima.empty()) return m;  // flat or all-zero: one AOI

  // Steepest ascent to a maximum, memoized. Pixels with no strictly higher
  // neighbor that are not strict maxima terminate on a plateau; they record
  // the terminal pixel and get resolved afterwards.
  std::vector<int> basin(n, -1);
  std::vector<int> term(n, -1);
  std::vector<size_t> path;
  auto best_higher = [&](size_t idx) -> ptrdiff_t {
    int x = static_cast<int>(idx % w), y = static_cast<int>(idx / w);
    ptrdiff_t best = -1;
    double best_v = s[idx];
    for (int k = 0; k < 8; ++k) {
      int nx = x + kDx[k], ny = y + kDy[k];
      if (nx < 0 || nx >= w || ny < 0 || ny >= hh) continue;
      size_t nidx = static_cast<size_t>(ny) * w + nx;
      if (s[nidx] > best_v) {  // strict keeps the first best in scan order
        best_v = s[nidx];
        best = static_cast<ptrdiff_t>(nidx);
      }
    }
    return best;
  };
  for (size_t p = 0; p < n; ++p) {
    if (basin[p] >= 0 || term[p] >= 0) continue;
    path.clear();
    size_t cur = p;
    int found_basin = -1, found_term = -1;
    while (true) {
      if (basin[cur] >= 0) {
        found_basin = basin[cur];
        break;
      }
      if (term[cur] >= 0) {
        found_term = term[cur];
        break;
      }
      if (max_id[cur] >= 0) {
        found_basin = max_id[cur];
        break;
      }
      ptrdiff_t next = best_higher(cur);
      if (next < 0) {
        found_term = static_cast<int>(cur);
        break;
      }
      path.push_back(cur);
      cur = static_cast<size_t>(next);
    }
    path.push_back(cur);
    for (size_t q : path) {
      if (found_basin >= 0)
        basin[q] = found_basin;
      else
        term[q] = found_term;
    }
  }

  // Plateau resolution: a terminal adopts the basin of an equal-valued
  // resolved neighbor, lowest basin id first, in synchronous rounds.
  std::vector<size_t> terminals;
  for (size_t p = 0; p < n; ++p)
    if (term[p] == static_cast<int>(p) && basin[p] < 0) terminals.push_back(p);
  bool progressed = true;
  while (progressed) {
    progressed = false;
    std::vector<std::pair<size_t, int>> updates;
    for (size_t p : terminals) {
      if (basin[p] >= 0) continue;
      int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
      int cand = -1;
      for (int k = 0; k < 8; ++k) {
        int nx = x + kDx[k], ny = y + kDy[k];
        if (nx < 0 || nx >= w || ny < 0 || ny >= hh) continue;
        size_t nidx = static_cast<size_t>(ny) * w + nx;
        if (basin[nidx] >= 0 && s[nidx] == s[p] &&
            (cand < 0 || basin[nidx] < cand))
          cand = basin[nidx];
      }
      if (cand >= 0) updates.emplace_back(p, cand);
    }
    for (const auto& [p, b] : updates) {
      basin[p] = b;
      progressed = true;
    }
  }
  // Leftover plateau components (flat tops with no resolved border) fall
  // back to the nearest maximum.
  for (size_t p : terminals) {
    if (basin[p] >= 0) continue;
    int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
    long best_d = std::numeric_limits<long>::max();
    int best_b = 0;
    for (size_t b = 0; b < maxima.size(); ++b) {
      long dx = x - maxima[b].first, dy = y - maxima[b].second;
      long dd = dx * dx + dy * dy;
      if (dd < best_d) {
        best_d = dd;
        best_b = static_cast<int>(b);
      }
    }
    basin[p] = best_b;
  }
  for (size_t p = 0; p < n; ++p)
    if (basin[p] < 0) basin[p] = basin[term[p]];

  // Merge weak maxima into the neighbor behind the highest shared border
  // (saddle height: max over adjacent cross-pairs of the lower side).
  double global_max = *std::max_element(s.begin(), s.end());
  std::vector<double> peak(maxima.size());
  for (size_t b = 0; b < maxima.size(); ++b)
    peak[b] = s[static_cast<size_t>(maxima[b].second) * w + maxima[b].first];
  std::vector<char> alive(maxima.size(), 1);
  size_t n_alive = maxima.size();

  while (n_alive > 1) {
    int weakest = -1;
    for (size_t b = 0; b < maxima.size(); ++b) {
      if (!alive[b] || peak[b] >= merge_threshold * global_max) continue;
      if (weakest < 0 || peak[b] < peak[weakest]) weakest = static_cast<int>(b);
    }
    if (weakest < 0) break;

    std::map<int, double> border;  // neighbor basin -> saddle height
    for (int y = 0; y < hh; ++y) {
      for (int x = 0; x < w; ++x) {
        size_t idx = static_cast<size_t>(y) * w + x;
        if (basin[idx] != weakest) continue;
        for (int k = 0; k < 8; ++k) {
          int nx = x + kDx[k], ny = y + kDy[k];
          if (nx < 0 || nx >= w || ny < 0 || ny >= hh) continue;
          size_t nidx = static_cast<size_t>(ny) * w + nx;
          if (basin[nidx] == weakest) continue;
          double saddle = std::min(s[idx], s[nidx]);
          auto [it, fresh] = border.emplace(basin[nidx], saddle);
          if (!fresh) it->second = std::max(it->second, saddle);
        }
      }
    }
    if (border.empty()) break;  // isolated basin, nothing to merge into
    int target = -1;
    double best_h = -1;
    for (const auto& [b, bh] : border) {
      if (bh > best_h) {
        best_h = bh;
        target = b;
      }
    }
    for (size_t p = 0; p < n; ++p)
      if (basin[p] == weakest) basin[p] = target;
    alive[weakest] = 0;
    --n_alive;
  }

  // Compact surviving basins in maxima scan order.
  std::vector<int> relabel(maxima.size(), -1);
  int next = 0;
  for (size_t b = 0; b < maxima.size(); ++b)
    if (alive[b]) relabel[b] = next++;
  for (size_t p = 0; p < n; ++p) m.labels[p] = relabel[basin[p]];
  return m;
}

}  // namespace aoiopt
