#include "aoiopt/aoi_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace aoiopt {

std::vector<int> AOIMap::label_set() const {
  std::set<int> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

Point2d centroid_of(const AOIMap& m, int label) {
  double sx = 0, sy = 0;
  long n = 0;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      if (m.at(x, y) == label) {
        sx += x;
        sy += y;
        ++n;
      }
    }
  }
  if (n == 0)
    throw std::invalid_argument("centroid_of: label " + std::to_string(label) +
                                " not present");
  return {sx / n, sy / n};
}

SubAOISplit split_sub_aois(const AOIMap& m, SplitSpec spec) {
  if (spec != SplitSpec::quadrant)
    throw std::invalid_argument("split_sub_aois: unknown split spec");

  // Parent centroids in one pass. Labels can be sparse, so index by map.
  struct Acc {
    double sx = 0, sy = 0;
    long n = 0;
  };
  std::map<int, Acc> parents;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      Acc& a = parents[m.at(x, y)];
      a.sx += x;
      a.sy += y;
      ++a.n;
    }
  }

  // Quadrant of a pixel relative to its parent centroid:
  // 0 = x<cx,y<cy  1 = x>=cx,y<cy  2 = x<cx,y>=cy  3 = x>=cx,y>=cy
  auto quadrant = [](double cx, double cy, int x, int y) {
    return (x >= cx ? 1 : 0) + (y >= cy ? 2 : 0);
  };

  std::map<std::pair<int, int>, Acc> quads;  // (parent, quadrant) -> accum
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      int lab = m.at(x, y);
      const Acc& p = parents.at(lab);
      int q = quadrant(p.sx / p.n, p.sy / p.n, x, y);
      Acc& a = quads[{lab, q}];
      a.sx += x;
      a.sy += y;
      ++a.n;
    }
  }

  SubAOISplit out;
  std::map<std::pair<int, int>, int> sub_id;  // non-empty quadrants, in key order
  for (const auto& [key, acc] : quads) {
    int id = static_cast<int>(sub_id.size());
    sub_id[key] = id;
    out.parent[id] = key.first;

    const Acc& p = parents.at(key.first);
    double dx = acc.sx / acc.n - p.sx / p.n;
    double dy = acc.sy / acc.n - p.sy / p.n;
    double norm = std::hypot(dx, dy);
    if (norm > 0)
      out.vectors[id] = {dx / norm, dy / norm};
    else
      out.vectors[id] = {0.0, 0.0};
  }

  out.sub_labels.resize(m.labels.size());
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      int lab = m.at(x, y);
      const Acc& p = parents.at(lab);
      int q = quadrant(p.sx / p.n, p.sy / p.n, x, y);
      out.sub_labels[static_cast<size_t>(y) * m.width + x] = sub_id.at({lab, q});
    }
  }
  return out;
}

void save_label_map(const AOIMap& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_label_map: cannot write " + path);
  out << "P_AOI " << m.width << ' ' << m.height << '\n';
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      if (x) out << ' ';
      out << m.at(x, y);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_label_map: write failed for " + path);
}

AOIMap load_label_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_label_map: cannot open " + path);
  std::string magic;
  int w = 0, h = 0;
  if (!(in >> magic >> w >> h) || magic != "P_AOI" || w <= 0 || h <= 0)
    throw std::runtime_error("load_label_map: bad header in " + path);
  AOIMap m;
  m.width = w;
  m.height = h;
  m.labels.resize(static_cast<size_t>(w) * h);
  for (size_t i = 0; i < m.labels.size(); ++i) {
    int v;
    if (!(in >> v))
      throw std::runtime_error("load_label_map: truncated label data in " + path);
    if (v < 0)
      throw std::runtime_error("load_label_map: negative label in " + path);
    m.labels[i] = v;
  }
  return m;
}

void save_pgm(const AOIMap& m, const std::string& path) {
  auto labs = m.label_set();
  std::map<int, int> gray;
  int n = static_cast<int>(labs.size());
  for (int i = 0; i < n; ++i)
    gray[labs[i]] = n == 1 ? 255 : static_cast<int>(std::lround(255.0 * i / (n - 1)));

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_pgm: cannot write " + path);
  out << "P2\n" << m.width << ' ' << m.height << "\n255\n";
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      if (x) out << ' ';
      out << gray.at(m.at(x, y));
    }
    out << '\n';
  }
}

}  // namespace aoiopt
