#include "aoiopt/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace aoiopt {

const std::array<const char*, kStatsPerAOI> kStatNames = {
    "mean_x", "mean_y", "median_x", "median_y", "mode_x", "mode_y",
    "std_x",  "std_y",  "skew_x",   "skew_y",   "count"};

std::vector<std::string> FeatureMatrix::labels() const {
  std::vector<std::string> out;
  out.reserve(row_meta.size());
  for (const auto& r : row_meta) out.push_back(r.subject_label);
  return out;
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double mode_of(const std::vector<double>& v) {
  std::map<long long, int> counts;
  for (double x : v) ++counts[std::llround(x)];
  long long best = 0;
  int best_count = 0;
  for (const auto& [value, count] : counts) {
    if (count > best_count) {  // map order gives the smallest value on ties
      best = value;
      best_count = count;
    }
  }
  return static_cast<double>(best);
}

// (mean, std, skew) for one coordinate.
void moments_of(const std::vector<double>& v, double* mean, double* sd,
                double* skew) {
  size_t n = v.size();
  double sum = 0;
  for (double x : v) sum += x;
  *mean = sum / n;

  double ss = 0, sc = 0;
  for (double x : v) {
    double d = x - *mean;
    ss += d * d;
    sc += d * d * d;
  }
  *sd = n < 2 ? 0.0 : std::sqrt(ss / (n - 1));
  double m2 = ss / n;
  double m3 = sc / n;
  *skew = (n < 3 || m2 == 0.0) ? 0.0 : m3 / std::pow(m2, 1.5);
}

}  // namespace

std::array<double, kStatsPerAOI> aoi_statistics(const std::vector<double>& xs,
                                                const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("aoi_statistics: coordinate length mismatch");
  std::array<double, kStatsPerAOI> out{};
  out[10] = static_cast<double>(xs.size());
  if (xs.empty()) return out;

  const std::vector<double>* coords[2] = {&xs, &ys};
  for (int axis = 0; axis < 2; ++axis) {
    const auto& v = *coords[axis];
    double mean, sd, skew;
    moments_of(v, &mean, &sd, &skew);
    out[0 + axis] = mean;
    out[2 + axis] = median_of(v);
    out[4 + axis] = mode_of(v);
    out[6 + axis] = sd;
    out[8 + axis] = skew;
  }
  return out;
}

FeatureMatrix compute_features(const Dataset& d, const AOIMap& m) {
  if (d.width != m.width || d.height != m.height)
    throw std::invalid_argument(
        "compute_features: dataset and AOI map dimensions differ");

  auto labs = m.label_set();
  std::unordered_map<int, size_t> lab_index;
  for (size_t i = 0; i < labs.size(); ++i) lab_index[labs[i]] = i;

  FeatureMatrix fm;
  fm.n_rows = d.recordings.size();
  fm.n_cols = labs.size() * kStatsPerAOI;
  fm.values.assign(fm.n_rows * fm.n_cols, 0.0);
  for (int lab : labs)
    for (const char* stat : kStatNames) fm.col_meta.push_back({lab, stat});

  std::vector<std::vector<double>> xs(labs.size()), ys(labs.size());
  for (size_t r = 0; r < d.recordings.size(); ++r) {
    const auto& rec = d.recordings[r];
    fm.row_meta.push_back({rec.recording_id, rec.subject_label});
    for (auto& v : xs) v.clear();
    for (auto& v : ys) v.clear();
    for (const auto& s : rec.samples) {
      int px = static_cast<int>(std::floor(s.x));
      int py = static_cast<int>(std::floor(s.y));
      if (!m.in_bounds(px, py)) continue;
      size_t i = lab_index.at(m.at(px, py));
      xs[i].push_back(s.x);
      ys[i].push_back(s.y);
    }
    for (size_t i = 0; i < labs.size(); ++i) {
      auto stats = aoi_statistics(xs[i], ys[i]);
      std::copy(stats.begin(), stats.end(),
                fm.values.begin() + r * fm.n_cols + i * kStatsPerAOI);
    }
  }
  return fm;
}

void export_features_csv(const FeatureMatrix& fm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_features_csv: cannot write " + path);
  out << "recording_id,subject_label";
  for (const auto& c : fm.col_meta)
    out << ",aoi" << c.aoi_label << '_' << c.stat;
  out << '\n';
  char buf[64];
  for (size_t r = 0; r < fm.n_rows; ++r) {
    out << fm.row_meta[r].recording_id << ',' << fm.row_meta[r].subject_label;
    for (size_t c = 0; c < fm.n_cols; ++c) {
      std::snprintf(buf, sizeof(buf), "%.10g", fm.at(r, c));
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace aoiopt
