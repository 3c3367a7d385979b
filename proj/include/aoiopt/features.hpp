#pragma once

#include <array>
#include <string>
#include <vector>

#include "aoiopt/aoi_map.hpp"
#include "aoiopt/gaze_data.hpp"

namespace aoiopt {

// Eleven statistics per AOI: mean, median, mode, standard deviation and
// skewness of x and y, plus the gaze point count.
inline constexpr int kStatsPerAOI = 11;
extern const std::array<const char*, kStatsPerAOI> kStatNames;

struct RowMeta {
  std::string recording_id;
  std::string subject_label;
};

struct ColMeta {
  int aoi_label = 0;
  std::string stat;
};

struct FeatureMatrix {
  std::vector<double> values;  // row-major, n_rows * n_cols
  size_t n_rows = 0;
  size_t n_cols = 0;
  std::vector<RowMeta> row_meta;
  std::vector<ColMeta> col_meta;

  double at(size_t r, size_t c) const { return values[r * n_cols + c]; }
  double& at(size_t r, size_t c) { return values[r * n_cols + c]; }
  const double* row(size_t r) const { return values.data() + r * n_cols; }
  std::vector<std::string> labels() const;  // subject label per row
};

// Statistics of one AOI's gaze coordinates, in column order
// mean_x, mean_y, median_x, median_y, mode_x, mode_y, std_x, std_y,
// skew_x, skew_y, count. Empty input yields all zeros. The mode is the most
// frequent integer-rounded pixel, smallest value on ties; the standard
// deviation uses the n-1 divisor; skewness is the Fisher-Pearson g1 on
// central moments, zero for n < 3 or constant input.
std::array<double, kStatsPerAOI> aoi_statistics(const std::vector<double>& xs,
                                                const std::vector<double>& ys);

// One row per recording; columns are the map's current labels in ascending
// order, eleven statistics each. Samples land in the AOI at their
// floor-rounded pixel; AOIs without samples contribute zeros.
FeatureMatrix compute_features(const Dataset& d, const AOIMap& m);

// Header names aoi<label>_<stat>.
void export_features_csv(const FeatureMatrix& fm, const std::string& path);

}  // namespace aoiopt
