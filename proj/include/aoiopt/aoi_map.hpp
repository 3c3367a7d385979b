#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace aoiopt {

// Dense per-pixel AOI labeling of the stimulus. Every pixel carries exactly
// one non-negative label; the label set may shrink during adaptation but
// never gains new ids.
struct AOIMap {
  int width = 0;
  int height = 0;
  std::vector<int> labels;  // row-major, labels[y * width + x]

  int at(int x, int y) const {
    return labels[static_cast<size_t>(y) * width + x];
  }
  int& at(int x, int y) {
    return labels[static_cast<size_t>(y) * width + x];
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  std::vector<int> label_set() const;  // sorted distinct labels

  bool operator==(const AOIMap&) const = default;
};

struct Point2d {
  double x = 0.0;
  double y = 0.0;
};

// Quadrant decomposition of every AOI about its centroid. vectors holds the
// unit direction from the parent centroid to each sub-AOI centroid, or the
// zero vector when the two coincide.
struct SubAOISplit {
  std::vector<int> sub_labels;      // row-major, same size as the source map
  std::map<int, int> parent;        // sub label -> parent label
  std::map<int, Point2d> vectors;   // sub label -> unit direction
};

enum class SplitSpec { quadrant };

// Arithmetic mean of the pixel coordinates carrying `label`.
Point2d centroid_of(const AOIMap& m, int label);

SubAOISplit split_sub_aois(const AOIMap& m, SplitSpec spec = SplitSpec::quadrant);

// Text format: header "P_AOI <width> <height>" followed by row-major labels.
void save_label_map(const AOIMap& m, const std::string& path);
AOIMap load_label_map(const std::string& path);

// Labels mapped to evenly spaced gray levels for quick visual checks.
void save_pgm(const AOIMap& m, const std::string& path);

}  // namespace aoiopt
