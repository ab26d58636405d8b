#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "qpgan/fock.hpp"
#include "qpgan/simulator.hpp"

namespace qpgan {

// Rules converting detected outcomes to integer-indexed pixel intensities.
struct MappingSpec {
  int modes = 0;
  int photons = 0;
  DetectorKind detector = DetectorKind::PNR;
  bool lossy = false;  // relevant for threshold detectors only
  int patch_pixels = 0;
};

inline int available_integers(const MappingSpec& spec) {
  if (spec.detector == DetectorKind::PNR)
    return static_cast<int>(
        binomial(spec.modes + spec.photons - 1, spec.photons));
  return static_cast<int>(
      enumerate_patterns(spec.modes, spec.photons, spec.lossy).size());
}

// Canonical integer -> outcome table (occupations for PNR, clicks otherwise).
inline std::vector<std::vector<int>> canonical_outcomes(
    const MappingSpec& spec) {
  std::vector<std::vector<int>> out;
  if (spec.detector == DetectorKind::PNR) {
    FockBasis b = enumerate_basis(spec.modes, spec.photons);
    for (const auto& s : b.states) out.push_back(s.occ);
  } else {
    for (const auto& p :
         enumerate_patterns(spec.modes, spec.photons, spec.lossy))
      out.push_back(p.clicks);
  }
  return out;
}

// Probability vector indexed by the canonical integer; outcomes absent from
// the distribution contribute 0.
inline std::vector<double> distribution_to_integers(
    const OutputDistribution& dist, const MappingSpec& spec) {
  const bool want_clicks = spec.detector == DetectorKind::Threshold;
  if (want_clicks != (dist.kind == OutputDistribution::Kind::Clicks))
    throw std::invalid_argument(
        "distribution_to_integers: detector kind does not match the "
        "distribution's outcome space");
  auto outcomes = canonical_outcomes(spec);
  std::map<std::vector<int>, int> rank;
  for (int i = 0; i < static_cast<int>(outcomes.size()); ++i)
    rank[outcomes[static_cast<std::size_t>(i)]] = i;
  std::vector<double> v(outcomes.size(), 0.0);
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    auto it = rank.find(dist.support[i]);
    if (it == rank.end())
      throw std::invalid_argument(
          "distribution_to_integers: outcome not in the mapping's outcome "
          "space");
    v[static_cast<std::size_t>(it->second)] += dist.probs[i];
  }
  return v;
}

// Drop floor(surplus/2) entries from the front and the rest from the back;
// no renormalization (min-max normalization follows immediately downstream).
inline std::vector<double> trim_tails(const std::vector<double>& v,
                                      int target_len) {
  const int len = static_cast<int>(v.size());
  if (target_len > len)
    throw std::invalid_argument("trim_tails: target longer than input");
  const int surplus = len - target_len;
  const int front = surplus / 2;
  return {v.begin() + front, v.begin() + front + target_len};
}

// (v - min) / (max - min); a flat vector maps to all zeros.
inline std::vector<double> minmax_normalize(const std::vector<double>& v) {
  if (v.empty())
    throw std::invalid_argument("minmax_normalize: empty vector");
  double lo = v[0], hi = v[0];
  for (double x : v) {
    if (!std::isfinite(x))
      throw std::invalid_argument("minmax_normalize: non-finite entry");
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::vector<double> out(v.size());
  if (hi == lo) return std::vector<double>(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - lo) / (hi - lo);
  return out;
}

}  // namespace qpgan
