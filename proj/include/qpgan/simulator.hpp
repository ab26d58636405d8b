#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "qpgan/circuit.hpp"
#include "qpgan/fock.hpp"
#include "qpgan/permanent.hpp"
#include "qpgan/rng.hpp"

namespace qpgan {

enum class DetectorKind { PNR, Threshold };

struct NoiseModel {
  double transmission = 1.0;         // per-photon survival probability
  double indistinguishability = 1.0;
  DetectorKind detector = DetectorKind::PNR;

  bool lossy() const { return transmission < 1.0; }
};

// Probability map over detected outcomes. Support entries are occupation
// vectors (Fock kind) or 0/1 click vectors (Clicks kind).
struct OutputDistribution {
  enum class Kind { Fock, Clicks };
  Kind kind = Kind::Fock;
  std::vector<std::vector<int>> support;
  std::vector<double> probs;
  double kept_fraction = 1.0;

  double total_mass() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
  }
};

struct ShotCounts {
  OutputDistribution::Kind kind = OutputDistribution::Kind::Fock;
  std::vector<std::vector<int>> support;
  std::vector<long long> counts;
  long long shots_requested = 0;
  long long shots_kept = 0;
};

namespace detail {

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline OutputDistribution from_map(
    const std::map<std::vector<int>, double>& acc,
    OutputDistribution::Kind kind) {
  OutputDistribution d;
  d.kind = kind;
  d.support.reserve(acc.size());
  d.probs.reserve(acc.size());
  for (const auto& [s, p] : acc) {
    d.support.push_back(s);
    d.probs.push_back(p);
  }
  return d;
}

// Enumerate all componentwise sub-occupations k <= occ, calling
// visit(k, multiplicity) with multiplicity = prod_i C(occ_i, k_i).
template <class Visit>
void for_each_suboccupation(const std::vector<int>& occ, Visit&& visit) {
  const int m = static_cast<int>(occ.size());
  std::vector<int> k(static_cast<std::size_t>(m), 0);
  auto rec = [&](auto&& self, int mode, double mult) -> void {
    if (mode == m) {
      visit(k, mult);
      return;
    }
    for (int c = 0; c <= occ[static_cast<std::size_t>(mode)]; ++c) {
      k[static_cast<std::size_t>(mode)] = c;
      self(self, mode + 1,
           mult * static_cast<double>(
                      binomial(occ[static_cast<std::size_t>(mode)], c)));
    }
  };
  rec(rec, 0, 1.0);
}

// Classical (fully distinguishable) scattering of the photons in `occ`:
// each photon from source mode j lands in mode i with probability |U(i,j)|^2.
inline std::map<std::vector<int>, double> classical_scatter(
    const Eigen::MatrixXcd& u, const std::vector<int>& occ) {
  const int m = static_cast<int>(occ.size());
  std::map<std::vector<int>, double> acc;
  acc[std::vector<int>(static_cast<std::size_t>(m), 0)] = 1.0;
  for (int j = 0; j < m; ++j) {
    for (int p = 0; p < occ[static_cast<std::size_t>(j)]; ++p) {
      std::map<std::vector<int>, double> next;
      for (const auto& [s, w] : acc) {
        for (int i = 0; i < m; ++i) {
          double pij = std::norm(u(i, j));
          if (pij == 0.0) continue;
          std::vector<int> t = s;
          ++t[static_cast<std::size_t>(i)];
          next[t] += w * pij;
        }
      }
      acc = std::move(next);
    }
  }
  return acc;
}

}  // namespace detail

// <out| phi(U) |in> = Perm(U[out, in]) / sqrt(prod out_i! * prod in_j!),
// where U[out, in] repeats row i out_i times and column j in_j times.
inline std::complex<double> transition_amplitude(const Eigen::MatrixXcd& u,
                                                 const FockState& in,
                                                 const FockState& out) {
  const int m = static_cast<int>(u.rows());
  if (in.modes() != m || out.modes() != m)
    throw std::invalid_argument("transition_amplitude: mode count mismatch");
  if (in.photons() != out.photons())
    throw std::invalid_argument(
        "transition_amplitude: photon number mismatch");
  const int n = in.photons();
  if (n == 0) return {1.0, 0.0};

  std::vector<int> rows, cols;
  rows.reserve(static_cast<std::size_t>(n));
  cols.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < out.occ[static_cast<std::size_t>(i)]; ++r)
      rows.push_back(i);
  for (int j = 0; j < m; ++j)
    for (int r = 0; r < in.occ[static_cast<std::size_t>(j)]; ++r)
      cols.push_back(j);

  Eigen::MatrixXcd sub(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      sub(r, c) = u(rows[static_cast<std::size_t>(r)],
                    cols[static_cast<std::size_t>(c)]);

  double norm = 1.0;
  for (int i = 0; i < m; ++i)
    norm *= detail::factorial(in.occ[static_cast<std::size_t>(i)]) *
            detail::factorial(out.occ[static_cast<std::size_t>(i)]);
  return permanent(sub) / std::sqrt(norm);
}

// |amplitude|^2 over the full n-photon basis; sums to 1 for unitary U.
inline OutputDistribution exact_distribution(const Eigen::MatrixXcd& u,
                                             const FockState& in) {
  const int m = in.modes();
  const int n = in.photons();
  FockBasis basis = enumerate_basis(m, n);
  OutputDistribution d;
  d.kind = OutputDistribution::Kind::Fock;
  d.support.reserve(basis.states.size());
  d.probs.reserve(basis.states.size());
  for (const auto& s : basis.states) {
    d.support.push_back(s.occ);
    d.probs.push_back(std::norm(transition_amplitude(u, in, s)));
  }
  return d;
}

// Per-photon mixture model of partial distinguishability: each input photon
// is coherent with probability x; the coherent subset interferes exactly and
// the rest scatters classically. x = 1 reduces to exact_distribution.
inline OutputDistribution apply_distinguishability(const Eigen::MatrixXcd& u,
                                                   const FockState& in,
                                                   double x) {
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument(
        "apply_distinguishability: x must be in [0, 1]");
  if (x == 1.0) return exact_distribution(u, in);
  const int m = in.modes();
  const int n = in.photons();
  std::map<std::vector<int>, double> acc;
  detail::for_each_suboccupation(
      in.occ, [&](const std::vector<int>& coh, double mult) {
        FockState coherent{coh};
        const int nc = coherent.photons();
        const double w =
            mult * std::pow(x, nc) * std::pow(1.0 - x, n - nc);
        if (w == 0.0) return;
        std::vector<int> rest(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
          rest[static_cast<std::size_t>(i)] =
              in.occ[static_cast<std::size_t>(i)] -
              coh[static_cast<std::size_t>(i)];
        auto classical = detail::classical_scatter(u, rest);
        OutputDistribution coh_dist = exact_distribution(u, coherent);
        for (std::size_t a = 0; a < coh_dist.support.size(); ++a) {
          if (coh_dist.probs[a] == 0.0) continue;
          for (const auto& [cs, cp] : classical) {
            std::vector<int> total = coh_dist.support[a];
            for (int i = 0; i < m; ++i)
              total[static_cast<std::size_t>(i)] +=
                  cs[static_cast<std::size_t>(i)];
            acc[total] += w * coh_dist.probs[a] * cp;
          }
        }
      });
  return detail::from_map(acc, OutputDistribution::Kind::Fock);
}

// Uniform photon loss applied at the input: each photon survives
// independently with probability eta; mixture over surviving sub-inputs with
// binomial weights. Support spans photon totals 0..n.
inline OutputDistribution apply_photon_loss(const Eigen::MatrixXcd& u,
                                            const FockState& in, double eta,
                                            double indistinguishability = 1.0) {
  if (eta < 0.0 || eta > 1.0)
    throw std::invalid_argument("apply_photon_loss: eta must be in [0, 1]");
  const int n = in.photons();
  std::map<std::vector<int>, double> acc;
  detail::for_each_suboccupation(
      in.occ, [&](const std::vector<int>& surv, double mult) {
        FockState survivors{surv};
        const int ns = survivors.photons();
        const double w =
            mult * std::pow(eta, ns) * std::pow(1.0 - eta, n - ns);
        if (w == 0.0) return;
        OutputDistribution d =
            (indistinguishability < 1.0)
                ? apply_distinguishability(u, survivors,
                                           indistinguishability)
                : exact_distribution(u, survivors);
        for (std::size_t a = 0; a < d.support.size(); ++a)
          acc[d.support[a]] += w * d.probs[a];
      });
  return detail::from_map(acc, OutputDistribution::Kind::Fock);
}

// Full noise channel of a run: loss, then partial distinguishability.
inline OutputDistribution simulate(const Eigen::MatrixXcd& u,
                                   const FockState& in,
                                   const NoiseModel& noise) {
  if (noise.lossy())
    return apply_photon_loss(u, in, noise.transmission,
                             noise.indistinguishability);
  if (noise.indistinguishability < 1.0)
    return apply_distinguishability(u, in, noise.indistinguishability);
  return exact_distribution(u, in);
}

// PNR: keep states with exactly n_expected photons. Threshold: collapse to
// click patterns; in the lossy regime only collision-free patterns with
// exactly n_expected clicks survive (bunched and lossy outcomes are
// indistinguishable and both discarded), otherwise every pattern is kept.
inline OutputDistribution detect_and_postselect(const OutputDistribution& dist,
                                                const NoiseModel& noise,
                                                int n_expected) {
  if (dist.kind != OutputDistribution::Kind::Fock)
    throw std::invalid_argument(
        "detect_and_postselect: expected a Fock-state distribution");
  std::map<std::vector<int>, double> acc;
  double kept = 0.0;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    const auto& s = dist.support[i];
    const double p = dist.probs[i];
    if (noise.detector == DetectorKind::PNR) {
      FockState fs{s};
      if (fs.photons() == n_expected) {
        acc[s] += p;
        kept += p;
      }
    } else {
      ClickPattern cp = threshold_collapse(FockState{s});
      const bool keep = noise.lossy() ? (cp.click_count() == n_expected)
                                      : (cp.click_count() >= 1);
      if (keep) {
        acc[cp.clicks] += p;
        kept += p;
      }
    }
  }
  if (kept <= 0.0)
    throw std::runtime_error(
        "detect_and_postselect: all probability mass discarded "
        "(unusable configuration)");
  OutputDistribution out = detail::from_map(
      acc, noise.detector == DetectorKind::PNR
               ? OutputDistribution::Kind::Fock
               : OutputDistribution::Kind::Clicks);
  for (double& p : out.probs) p /= kept;
  out.kept_fraction = dist.kept_fraction * kept;
  return out;
}

// Seeded multinomial draw. Each shot survives postselection with probability
// dist.kept_fraction; surviving shots are distributed per dist.probs.
inline ShotCounts sample_shots(const OutputDistribution& dist, long long shots,
                               std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_shots: need shots >= 1");
  ShotCounts sc;
  sc.kind = dist.kind;
  sc.support = dist.support;
  sc.counts.assign(dist.support.size(), 0);
  sc.shots_requested = shots;
  Rng rng(seed);
  std::vector<double> cdf(dist.probs.size());
  double run = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    run += dist.probs[i];
    cdf[i] = run;
  }
  for (long long s = 0; s < shots; ++s) {
    if (dist.kept_fraction < 1.0 && rng.uniform() >= dist.kept_fraction)
      continue;  // shot lost to postselection
    const double u = rng.uniform() * run;
    std::size_t idx =
        static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) -
                                 cdf.begin());
    if (idx >= sc.counts.size()) idx = sc.counts.size() - 1;
    ++sc.counts[idx];
    ++sc.shots_kept;
  }
  return sc;
}

inline OutputDistribution empirical_distribution(const ShotCounts& sc) {
  if (sc.shots_kept == 0)
    throw std::runtime_error(
        "empirical_distribution: no shots survived postselection");
  OutputDistribution d;
  d.kind = sc.kind;
  d.support = sc.support;
  d.probs.resize(sc.counts.size());
  for (std::size_t i = 0; i < sc.counts.size(); ++i)
    d.probs[i] = static_cast<double>(sc.counts[i]) /
                 static_cast<double>(sc.shots_kept);
  d.kept_fraction = static_cast<double>(sc.shots_kept) /
                    static_cast<double>(sc.shots_requested);
  return d;
}

}  // namespace qpgan
