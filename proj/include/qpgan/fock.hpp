#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpgan {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// Occupation-number vector: photons per mode.
struct FockState {
  std::vector<int> occ;

  FockState() = default;
  explicit FockState(std::vector<int> o) : occ(std::move(o)) {
    for (int v : occ)
      if (v < 0) throw std::invalid_argument("FockState: negative occupation");
  }

  int modes() const { return static_cast<int>(occ.size()); }
  int photons() const { return std::accumulate(occ.begin(), occ.end(), 0); }

  auto operator<=>(const FockState&) const = default;
};

// Threshold-detector outcome: click/no-click per mode.
struct ClickPattern {
  std::vector<int> clicks;  // 0 or 1

  int modes() const { return static_cast<int>(clicks.size()); }
  int click_count() const {
    return std::accumulate(clicks.begin(), clicks.end(), 0);
  }
  // leftmost mode = most significant bit
  std::uint64_t binary_value() const {
    std::uint64_t v = 0;
    for (int c : clicks) v = (v << 1) | static_cast<std::uint64_t>(c);
    return v;
  }

  auto operator<=>(const ClickPattern&) const = default;
};

inline std::string to_label(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  return os.str();
}

// All C(m+n-1, n) Fock states of n photons in m modes, in ascending
// lexicographic order of the occupation tuple. The list position of a state
// is its canonical integer (PNR mapping order: rightmost-heavy states first).
struct FockBasis {
  int modes = 0;
  int photons = 0;
  std::vector<FockState> states;

  int index_of(const FockState& s) const {
    auto it = rank_.find(s.occ);
    if (it == rank_.end())
      throw std::invalid_argument("state_index: state not in basis");
    return it->second;
  }

  friend FockBasis enumerate_basis(int m, int n);

 private:
  std::map<std::vector<int>, int> rank_;
};

inline FockBasis enumerate_basis(int m, int n) {
  if (m < 1) throw std::invalid_argument("enumerate_basis: need m >= 1");
  if (n < 0) throw std::invalid_argument("enumerate_basis: need n >= 0");
  FockBasis b;
  b.modes = m;
  b.photons = n;
  std::vector<int> occ(static_cast<std::size_t>(m), 0);
  // recursive lexicographic fill: smallest counts in the leftmost modes first
  auto rec = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == m - 1) {
      occ[static_cast<std::size_t>(mode)] = remaining;
      b.states.emplace_back(FockState{occ});
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      occ[static_cast<std::size_t>(mode)] = k;
      self(self, mode + 1, remaining - k);
    }
  };
  rec(rec, 0, n);
  for (int i = 0; i < static_cast<int>(b.states.size()); ++i)
    b.rank_[b.states[static_cast<std::size_t>(i)].occ] = i;
  return b;
}

inline int state_index(const FockBasis& basis, const FockState& s) {
  if (s.modes() != basis.modes || s.photons() != basis.photons)
    throw std::invalid_argument("state_index: state not in basis");
  return basis.index_of(s);
}

inline ClickPattern threshold_collapse(const FockState& s) {
  ClickPattern p;
  p.clicks.reserve(s.occ.size());
  for (int v : s.occ) p.clicks.push_back(v > 0 ? 1 : 0);
  return p;
}

// Canonical threshold-pattern order: ascending binary value, leftmost mode as
// MSB. Lossless: every pattern with 1..min(n,m) clicks (bunching allowed).
// Lossy: exactly n clicks only (collision-free patterns), requires n <= m.
inline std::vector<ClickPattern> enumerate_patterns(int m, int n, bool lossy) {
  if (m < 1) throw std::invalid_argument("enumerate_patterns: need m >= 1");
  if (n < 1) throw std::invalid_argument("enumerate_patterns: need n >= 1");
  if (lossy && n > m)
    throw std::invalid_argument(
        "enumerate_patterns: lossy threshold needs n <= m "
        "(no collision-free pattern exists)");
  int max_clicks = std::min(n, m);
  std::vector<ClickPattern> out;
  for (std::uint64_t v = 1; v < (1ULL << m); ++v) {
    ClickPattern p;
    p.clicks.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      p.clicks[static_cast<std::size_t>(i)] =
          static_cast<int>((v >> (m - 1 - i)) & 1ULL);
    int k = p.click_count();
    bool keep = lossy ? (k == n) : (k >= 1 && k <= max_clicks);
    if (keep) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qpgan
