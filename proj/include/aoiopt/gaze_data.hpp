#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace aoiopt {

struct GazeSample {
  double t = 0.0;  // milliseconds, non-negative
  double x = 0.0;  // pixels, in [0, width) after ingest
  double y = 0.0;  // pixels, in [0, height) after ingest
};

// One trial of one subject on one stimulus. Samples are ordered by
// non-decreasing t and never empty.
struct GazeRecording {
  std::string recording_id;
  std::string subject_label;
  std::string stimulus_id;
  std::vector<GazeSample> samples;
};

struct Dataset {
  std::vector<GazeRecording> recordings;
  int width = 0;
  int height = 0;
  std::set<std::string> classes;

  std::set<std::string> stimulus_ids() const;
};

// What to do with samples outside the stimulus bounds.
enum class OOBPolicy { drop, clamp };

struct LoadResult {
  Dataset dataset;
  int dropped_samples = 0;     // removed or clamped by the bounds policy
  int dropped_recordings = 0;  // recordings left with no valid sample
};

// Reads a CSV with header recording_id,subject_label,stimulus_id,t,x,y.
// Malformed numeric fields raise with the offending line number.
LoadResult load_dataset(const std::string& path, int width, int height,
                        OOBPolicy policy = OOBPolicy::drop);

void save_dataset_csv(const Dataset& d, const std::string& path);

// Partitions recordings so the train and test stimulus sets are disjoint.
// Test gets round(test_fraction * #stimuli) stimuli, at least one and at
// most all but one. Deterministic for a fixed seed.
std::pair<Dataset, Dataset> stimulus_holdout_split(const Dataset& d,
                                                   double test_fraction,
                                                   uint64_t seed);

// Recording-level random partition, stratified by class: every class with
// at least two recordings appears on both sides, singleton classes go to
// train. Consumes from rng, so successive calls give different partitions.
std::pair<Dataset, Dataset> random_train_val_split(const Dataset& d,
                                                   double val_fraction,
                                                   std::mt19937_64& rng);

}  // namespace aoiopt
