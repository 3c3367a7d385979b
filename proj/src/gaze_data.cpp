#include "aoiopt/gaze_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace aoiopt {

std::set<std::string> Dataset::stimulus_ids() const {
  std::set<std::string> ids;
  for (const auto& r : recordings) ids.insert(r.stimulus_id);
  return ids;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const char* column, int line_no) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw std::runtime_error("load_dataset: line " + std::to_string(line_no) +
                             ": non-numeric value '" + s + "' in column " + column);
  }
  return v;
}

}  // namespace

LoadResult load_dataset(const std::string& path, int width, int height,
                        OOBPolicy policy) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("load_dataset: stimulus size must be positive");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dataset: cannot open " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("load_dataset: empty file " + path);
  auto header = split_csv_line(line);
  const char* required[] = {"recording_id", "subject_label", "stimulus_id",
                            "t",            "x",             "y"};
  int col[6];
  for (int i = 0; i < 6; ++i) {
    auto it = std::find(header.begin(), header.end(), required[i]);
    if (it == header.end())
      throw std::runtime_error(std::string("load_dataset: missing column ") +
                               required[i]);
    col[i] = static_cast<int>(it - header.begin());
  }

  struct Rec {
    std::string subject;
    std::string stimulus;
    std::vector<GazeSample> samples;
  };
  std::vector<std::string> order;
  std::map<std::string, Rec> recs;
  LoadResult result;
  result.dataset.width = width;
  result.dataset.height = height;

  int line_no = 1;
  int data_rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() < header.size())
      throw std::runtime_error("load_dataset: line " + std::to_string(line_no) +
                               ": expected " + std::to_string(header.size()) +
                               " fields, got " + std::to_string(fields.size()));
    ++data_rows;
    const std::string& id = fields[col[0]];
    const std::string& subject = fields[col[1]];
    const std::string& stimulus = fields[col[2]];
    GazeSample s;
    s.t = parse_double(fields[col[3]], "t", line_no);
    s.x = parse_double(fields[col[4]], "x", line_no);
    s.y = parse_double(fields[col[5]], "y", line_no);

    bool oob = s.t < 0 || s.x < 0 || s.x >= width || s.y < 0 || s.y >= height;
    if (oob) {
      ++result.dropped_samples;
      if (policy == OOBPolicy::drop) continue;
      s.t = std::max(s.t, 0.0);
      s.x = std::clamp(s.x, 0.0, static_cast<double>(width - 1));
      s.y = std::clamp(s.y, 0.0, static_cast<double>(height - 1));
    }

    auto it = recs.find(id);
    if (it == recs.end()) {
      order.push_back(id);
      recs.emplace(id, Rec{subject, stimulus, {s}});
    } else {
      if (it->second.subject != subject || it->second.stimulus != stimulus)
        throw std::runtime_error("load_dataset: line " + std::to_string(line_no) +
                                 ": recording '" + id +
                                 "' has conflicting subject or stimulus");
      it->second.samples.push_back(s);
    }
  }
  if (data_rows == 0)
    throw std::runtime_error("load_dataset: no data rows in " + path);

  for (const auto& id : order) {
    auto& rec = recs.at(id);
    if (rec.samples.empty()) {
      ++result.dropped_recordings;
      continue;
    }
    std::stable_sort(rec.samples.begin(), rec.samples.end(),
                     [](const GazeSample& a, const GazeSample& b) { return a.t < b.t; });
    GazeRecording out;
    out.recording_id = id;
    out.subject_label = rec.subject;
    out.stimulus_id = rec.stimulus;
    out.samples = std::move(rec.samples);
    result.dataset.classes.insert(out.subject_label);
    result.dataset.recordings.push_back(std::move(out));
  }
  return result;
}

void save_dataset_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_dataset_csv: cannot write " + path);
  out << "recording_id,subject_label,stimulus_id,t,x,y\n";
  char buf[128];
  for (const auto& r : d.recordings) {
    for (const auto& s : r.samples) {
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g", s.t, s.x, s.y);
      out << r.recording_id << ',' << r.subject_label << ',' << r.stimulus_id
          << ',' << buf << '\n';
    }
  }
}

namespace {

Dataset subset_by_index(const Dataset& d, const std::vector<char>& take) {
  Dataset out;
  out.width = d.width;
  out.height = d.height;
  for (size_t i = 0; i < d.recordings.size(); ++i) {
    if (!take[i]) continue;
    out.recordings.push_back(d.recordings[i]);
    out.classes.insert(d.recordings[i].subject_label);
  }
  return out;
}

}  // namespace

std::pair<Dataset, Dataset> stimulus_holdout_split(const Dataset& d,
                                                   double test_fraction,
                                                   uint64_t seed) {
  if (test_fraction <= 0.0 || test_fraction >= 1.0)
    throw std::invalid_argument("stimulus_holdout_split: fraction must be in (0,1)");
  auto ids = d.stimulus_ids();
  if (ids.size() < 2)
    throw std::invalid_argument(
        "stimulus_holdout_split: need at least two stimuli to keep train and "
        "test disjoint");

  std::vector<std::string> stimuli(ids.begin(), ids.end());
  std::mt19937_64 rng(seed);
  std::shuffle(stimuli.begin(), stimuli.end(), rng);

  long n_test = std::lround(test_fraction * static_cast<double>(stimuli.size()));
  n_test = std::clamp(n_test, 1L, static_cast<long>(stimuli.size()) - 1);
  std::set<std::string> test_ids(stimuli.begin(), stimuli.begin() + n_test);

  std::vector<char> in_test(d.recordings.size(), 0);
  for (size_t i = 0; i < d.recordings.size(); ++i)
    in_test[i] = test_ids.count(d.recordings[i].stimulus_id) ? 1 : 0;
  std::vector<char> in_train(d.recordings.size(), 0);
  for (size_t i = 0; i < in_train.size(); ++i) in_train[i] = !in_test[i];
  return {subset_by_index(d, in_train), subset_by_index(d, in_test)};
}

std::pair<Dataset, Dataset> random_train_val_split(const Dataset& d,
                                                   double val_fraction,
                                                   std::mt19937_64& rng) {
  if (d.recordings.empty())
    throw std::invalid_argument("random_train_val_split: empty dataset");
  if (val_fraction <= 0.0 || val_fraction >= 1.0)
    throw std::invalid_argument("random_train_val_split: fraction must be in (0,1)");

  std::map<std::string, std::vector<size_t>> by_class;
  for (size_t i = 0; i < d.recordings.size(); ++i)
    by_class[d.recordings[i].subject_label].push_back(i);

  std::vector<char> in_val(d.recordings.size(), 0);
  for (auto& [label, idx] : by_class) {
    if (idx.size() < 2) continue;  // singleton classes stay in train
    long n_val = std::lround(val_fraction * static_cast<double>(idx.size()));
    n_val = std::clamp(n_val, 1L, static_cast<long>(idx.size()) - 1);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (long j = 0; j < n_val; ++j) in_val[idx[j]] = 1;
  }
  std::vector<char> in_train(d.recordings.size(), 0);
  for (size_t i = 0; i < in_train.size(); ++i) in_train[i] = !in_val[i];
  return {subset_by_index(d, in_train), subset_by_index(d, in_val)};
}

}  // namespace aoiopt
