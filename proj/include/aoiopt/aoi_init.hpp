#pragma once

#include <cstdint>
#include <vector>

#include "aoiopt/aoi_map.hpp"
#include "aoiopt/gaze_data.hpp"

namespace aoiopt {

// Normalized gaze density over the stimulus. Sums to 1 whenever any gaze
// data exists, all zeros otherwise.
struct Heatmap {
  int width = 0;
  int height = 0;
  std::vector<double> density;  // row-major

  double at(int x, int y) const {
    return density[static_cast<size_t>(y) * width + x];
  }
};

// rows x cols equally sized cells, labels assigned row-major. Cell (r,c)
// covers pixel rows [floor(r*height/rows), floor((r+1)*height/rows)).
AOIMap grid_init(int width, int height, int rows, int cols);

// Lloyd's K-Means with k-means++ seeding on all gaze points, then every
// stimulus pixel labeled by its nearest cluster centroid (ties to the lowest
// cluster id). If fewer distinct points than k exist, k is reduced with a
// warning on stderr.
AOIMap kmeans_init(const Dataset& d, int k, uint64_t seed, int max_iter = 100);

// Sum of isotropic Gaussian kernels (std sigma, truncated at 3 sigma)
// centered at each gaze point, normalized to sum 1.
Heatmap compute_heatmap(const Dataset& d, double sigma = 25.0);

// Watershed-style segmentation: smooth, find strict 8-neighborhood maxima,
// assign every pixel to the basin of the maximum reached by steepest ascent,
// then merge basins whose peak falls below merge_threshold times the global
// maximum into the neighbor behind the highest shared border. A heatmap with
// no strict maximum (all zero or constant) yields a single AOI.
AOIMap gradient_segment_heatmap(const Heatmap& h, double smoothing = 2.0,
                                double merge_threshold = 0.05);

}  // namespace aoiopt
