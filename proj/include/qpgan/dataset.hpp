#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpgan/rng.hpp"

namespace qpgan {

struct ImageSample {
  std::array<double, 64> pixels{};  // intensities in [0, 1]
  int label = 0;
};

struct Dataset {
  std::vector<ImageSample> samples;
  std::array<std::vector<int>, 10> by_digit;  // indices into samples

  void rebuild_index() {
    for (auto& v : by_digit) v.clear();
    for (int i = 0; i < static_cast<int>(samples.size()); ++i)
      by_digit[static_cast<std::size_t>(samples[static_cast<std::size_t>(i)]
                                            .label)]
          .push_back(i);
  }
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

}  // namespace detail

// optdigits-style CSV: 64 pixel integers in 0..16, then the label.
inline Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dataset: cannot open " + path);
  Dataset ds;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto fields = detail::split_csv_row(line);
    if (fields.size() != 65)
      throw std::runtime_error("load_dataset: row " + std::to_string(row) +
                               ": expected 65 columns, got " +
                               std::to_string(fields.size()));
    ImageSample s;
    for (int i = 0; i < 64; ++i) {
      int v;
      try {
        v = std::stoi(fields[static_cast<std::size_t>(i)]);
      } catch (const std::exception&) {
        throw std::runtime_error("load_dataset: row " + std::to_string(row) +
                                 ": malformed pixel value");
      }
      if (v < 0 || v > 16)
        throw std::runtime_error("load_dataset: row " + std::to_string(row) +
                                 ": pixel value out of range 0..16");
      s.pixels[static_cast<std::size_t>(i)] = static_cast<double>(v) / 16.0;
    }
    int label;
    try {
      label = std::stoi(fields[64]);
    } catch (const std::exception&) {
      throw std::runtime_error("load_dataset: row " + std::to_string(row) +
                               ": malformed label");
    }
    if (label < 0 || label > 9)
      throw std::runtime_error("load_dataset: row " + std::to_string(row) +
                               ": label out of range 0..9");
    s.label = label;
    ds.samples.push_back(s);
  }
  ds.rebuild_index();
  return ds;
}

// Secondary loader for synthetic tests: 64 floats in [0, 1], then the label.
inline Dataset load_dataset_normalized(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("load_dataset_normalized: cannot open " + path);
  Dataset ds;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto fields = detail::split_csv_row(line);
    if (fields.size() != 65)
      throw std::runtime_error("load_dataset_normalized: row " +
                               std::to_string(row) + ": expected 65 columns");
    ImageSample s;
    for (int i = 0; i < 64; ++i) {
      double v = std::stod(fields[static_cast<std::size_t>(i)]);
      if (v < 0.0 || v > 1.0)
        throw std::runtime_error("load_dataset_normalized: row " +
                                 std::to_string(row) +
                                 ": pixel outside [0, 1]");
      s.pixels[static_cast<std::size_t>(i)] = v;
    }
    s.label = std::stoi(fields[64]);
    if (s.label < 0 || s.label > 9)
      throw std::runtime_error("load_dataset_normalized: row " +
                               std::to_string(row) + ": bad label");
    ds.samples.push_back(s);
  }
  ds.rebuild_index();
  return ds;
}

inline Dataset filter_digit(const Dataset& ds, int digit) {
  if (digit < 0 || digit > 9)
    throw std::invalid_argument("filter_digit: digit must be in 0..9");
  Dataset out;
  for (const auto& s : ds.samples)
    if (s.label == digit) out.samples.push_back(s);
  if (out.samples.empty())
    throw std::runtime_error("filter_digit: no samples for digit " +
                             std::to_string(digit));
  out.rebuild_index();
  return out;
}

// Uniform draw without replacement (partial Fisher-Yates on an index list).
inline std::vector<ImageSample> sample_batch(const Dataset& ds, int size,
                                             std::uint64_t seed) {
  const int n = static_cast<int>(ds.samples.size());
  if (size < 1 || size > n)
    throw std::invalid_argument("sample_batch: bad batch size");
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  Rng rng(seed);
  std::vector<ImageSample> batch;
  batch.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    const int j =
        i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    batch.push_back(ds.samples[static_cast<std::size_t>(
        idx[static_cast<std::size_t>(i)])]);
  }
  return batch;
}

}  // namespace qpgan
