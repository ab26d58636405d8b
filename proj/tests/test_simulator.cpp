#include <catch2/catch_amalgamated.hpp>
#include <numbers>

#include "oracles.hpp"
#include "qpgan/simulator.hpp"

using namespace qpgan;
using std::numbers::pi;

namespace {

Eigen::MatrixXcd fifty_fifty() {
  ComponentPlacement bs{ComponentKind::BeamSplitter, 0, SlotKind::Trainable, 0};
  return component_unitary(bs, pi / 4.0, 2);
}

double prob_of(const OutputDistribution& d, const std::vector<int>& outcome) {
  for (std::size_t i = 0; i < d.support.size(); ++i)
    if (d.support[i] == outcome) return d.probs[i];
  return 0.0;
}

}  // namespace

TEST_CASE("identity circuit: amplitude is a Kronecker delta") {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(3, 3);
  FockState s{{1, 0, 2}};
  CHECK(std::abs(transition_amplitude(u, s, s) - 1.0) < 1e-12);
  CHECK(std::abs(transition_amplitude(u, s, FockState{{0, 1, 2}})) < 1e-12);
}

TEST_CASE("amplitude rejects photon-number mismatch") {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(
      transition_amplitude(u, FockState{{1, 0, 0}}, FockState{{1, 1, 0}}),
      std::invalid_argument);
}

TEST_CASE("Hong-Ou-Mandel suppression on a 50:50 beam splitter") {
  OutputDistribution d = exact_distribution(fifty_fifty(), FockState{{1, 1}});
  CHECK(prob_of(d, {1, 1}) < 1e-10);
  CHECK(std::abs(prob_of(d, {2, 0}) - 0.5) < 1e-10);
  CHECK(std::abs(prob_of(d, {0, 2}) - 0.5) < 1e-10);
}

TEST_CASE("identity circuit gives a point-mass distribution") {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(3, 3);
  OutputDistribution d = exact_distribution(u, FockState{{1, 0, 1}});
  CHECK(std::abs(prob_of(d, {1, 0, 1}) - 1.0) < 1e-12);
  CHECK(d.kept_fraction == 1.0);
}

TEST_CASE("exact_distribution matches the polynomial-expansion oracle") {
  Rng rng(7);
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 3}}) {
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::MatrixXcd u = oracle::random_unitary(m, rng);
      FockBasis basis = enumerate_basis(m, n);
      FockState input = basis.states[rng.uniform_int(basis.states.size())];
      OutputDistribution d = exact_distribution(u, input);
      auto want = oracle::evolve_probabilities(u, input.occ);
      double sum = 0.0;
      for (std::size_t i = 0; i < d.support.size(); ++i) {
        double w = want.count(d.support[i]) ? want.at(d.support[i]) : 0.0;
        REQUIRE(std::abs(d.probs[i] - w) < 1e-8);
        sum += d.probs[i];
      }
      REQUIRE(std::abs(sum - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("photon loss: limits and sector weights") {
  Rng rng(11);
  Eigen::MatrixXcd u = oracle::random_unitary(4, rng);
  FockState in{{1, 1, 1, 0}};

  SECTION("eta = 1 equals the exact distribution") {
    OutputDistribution lossless = apply_photon_loss(u, in, 1.0);
    OutputDistribution exact = exact_distribution(u, in);
    for (std::size_t i = 0; i < exact.support.size(); ++i)
      CHECK(std::abs(prob_of(lossless, exact.support[i]) - exact.probs[i]) <
            1e-12);
  }

  SECTION("eta = 0 is a point mass on vacuum") {
    OutputDistribution d = apply_photon_loss(u, in, 0.0);
    CHECK(std::abs(prob_of(d, {0, 0, 0, 0}) - 1.0) < 1e-12);
  }

  SECTION("the n-photon sector carries eta^n of the mass") {
    const double eta = 0.92;
    OutputDistribution d = apply_photon_loss(u, in, eta);
    double sector = 0.0, total = 0.0;
    for (std::size_t i = 0; i < d.support.size(); ++i) {
      total += d.probs[i];
      if (FockState{d.support[i]}.photons() == 3) sector += d.probs[i];
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
    CHECK(std::abs(sector - eta * eta * eta) < 1e-12);
  }

  SECTION("the renormalized n-photon sector equals the exact distribution") {
    OutputDistribution d = apply_photon_loss(u, in, 0.92);
    OutputDistribution exact = exact_distribution(u, in);
    double sector = 0.92 * 0.92 * 0.92;
    for (std::size_t i = 0; i < exact.support.size(); ++i)
      CHECK(std::abs(prob_of(d, exact.support[i]) / sector -
                     exact.probs[i]) < 1e-9);
  }
}

TEST_CASE("distinguishability: limits and the two-photon closed form") {
  Eigen::MatrixXcd u = fifty_fifty();
  FockState in{{1, 1}};

  SECTION("x = 1 equals the exact distribution") {
    OutputDistribution d = apply_distinguishability(u, in, 1.0);
    CHECK(prob_of(d, {1, 1}) < 1e-12);
  }

  SECTION("x = 0 scatters classically") {
    OutputDistribution d = apply_distinguishability(u, in, 0.0);
    CHECK(std::abs(prob_of(d, {2, 0}) - 0.25) < 1e-12);
    CHECK(std::abs(prob_of(d, {1, 1}) - 0.5) < 1e-12);
    CHECK(std::abs(prob_of(d, {0, 2}) - 0.25) < 1e-12);
  }

  SECTION("partial x interpolates: P(1,1) = (1 - x^2) / 2") {
    // coherent pair (weight x^2) is HOM-suppressed; any subset with a
    // classical photon gives P(1,1) = 1/2
    for (double x : {0.25, 0.5, 0.75}) {
      OutputDistribution d = apply_distinguishability(u, in, x);
      CHECK(std::abs(prob_of(d, {1, 1}) - 0.5 * (1.0 - x * x)) < 1e-12);
      CHECK(std::abs(d.total_mass() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("postselection: PNR on a lossless distribution is the identity") {
  Rng rng(13);
  Eigen::MatrixXcd u = oracle::random_unitary(3, rng);
  OutputDistribution d = exact_distribution(u, FockState{{1, 1, 1}});
  NoiseModel noise;  // ideal PNR
  OutputDistribution post = detect_and_postselect(d, noise, 3);
  CHECK(std::abs(post.kept_fraction - 1.0) < 1e-12);
  for (std::size_t i = 0; i < d.support.size(); ++i)
    CHECK(std::abs(prob_of(post, d.support[i]) - d.probs[i]) < 1e-12);
}

TEST_CASE("postselection: lossless threshold keeps the 7 table patterns") {
  Rng rng(17);
  Eigen::MatrixXcd u = oracle::random_unitary(3, rng);
  OutputDistribution d = exact_distribution(u, FockState{{1, 1, 1}});
  NoiseModel noise{1.0, 1.0, DetectorKind::Threshold};
  OutputDistribution post = detect_and_postselect(d, noise, 3);
  auto pats = enumerate_patterns(3, 3, false);
  REQUIRE(post.support.size() <= pats.size());
  for (const auto& s : post.support) {
    bool found = false;
    for (const auto& p : pats) found = found || p.clicks == s;
    CHECK(found);
  }
  CHECK(std::abs(post.total_mass() - 1.0) < 1e-9);
}

TEST_CASE("postselection: lossy threshold keeps only (1,1,1)") {
  Rng rng(19);
  Eigen::MatrixXcd u = oracle::random_unitary(3, rng);
  NoiseModel noise{0.92, 1.0, DetectorKind::Threshold};
  OutputDistribution d = apply_photon_loss(u, FockState{{1, 1, 1}}, 0.92);
  OutputDistribution post = detect_and_postselect(d, noise, 3);
  REQUIRE(post.support.size() == 1);
  CHECK(post.support[0] == std::vector<int>{1, 1, 1});
  CHECK(std::abs(post.probs[0] - 1.0) < 1e-12);
  CHECK(post.kept_fraction < 1.0);
}

TEST_CASE("postselection reconstructs the kept mass") {
  Rng rng(23);
  Eigen::MatrixXcd u = oracle::random_unitary(4, rng);
  FockState in{{1, 1, 0, 1}};
  OutputDistribution d = apply_photon_loss(u, in, 0.8);
  NoiseModel noise{0.8, 1.0, DetectorKind::PNR};
  OutputDistribution post = detect_and_postselect(d, noise, 3);
  double kept_mass = 0.0;
  for (std::size_t i = 0; i < d.support.size(); ++i)
    if (FockState{d.support[i]}.photons() == 3) kept_mass += d.probs[i];
  CHECK(std::abs(post.kept_fraction - kept_mass) < 1e-12);
  for (std::size_t i = 0; i < post.support.size(); ++i)
    CHECK(std::abs(post.kept_fraction * post.probs[i] -
                   prob_of(d, post.support[i])) < 1e-12);
}

TEST_CASE("postselection with no surviving mass is an error") {
  OutputDistribution vacuum_only;
  vacuum_only.support = {{0, 0, 0}};
  vacuum_only.probs = {1.0};
  NoiseModel noise{0.5, 1.0, DetectorKind::PNR};
  CHECK_THROWS_AS(detect_and_postselect(vacuum_only, noise, 3),
                  std::runtime_error);
}

TEST_CASE("sampling: point mass puts every shot on one outcome") {
  OutputDistribution d;
  d.support = {{1, 0}};
  d.probs = {1.0};
  ShotCounts sc = sample_shots(d, 100, 42);
  CHECK(sc.counts[0] == 100);
  CHECK(sc.shots_kept == 100);
}

TEST_CASE("sampling: binomial deviation stays within 3 sigma") {
  OutputDistribution d;
  d.support = {{1, 0}, {0, 1}};
  d.probs = {0.5, 0.5};
  ShotCounts sc = sample_shots(d, 100000, 7);
  double sigma = std::sqrt(100000 * 0.25);
  CHECK(std::abs(static_cast<double>(sc.counts[0]) - 50000.0) < 3.0 * sigma);
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  Rng rng(29);
  Eigen::MatrixXcd u = oracle::random_unitary(3, rng);
  OutputDistribution d = exact_distribution(u, FockState{{1, 1, 0}});
  ShotCounts a = sample_shots(d, 5000, 123);
  ShotCounts b = sample_shots(d, 5000, 123);
  CHECK(a.counts == b.counts);
}

TEST_CASE("empirical distribution converges to the exact one") {
  Rng rng(31);
  Eigen::MatrixXcd u = oracle::random_unitary(4, rng);
  OutputDistribution d = exact_distribution(u, FockState{{1, 1, 1, 0}});
  OutputDistribution emp =
      empirical_distribution(sample_shots(d, 100000, 55));
  double tv = 0.0;
  for (std::size_t i = 0; i < d.probs.size(); ++i)
    tv += std::abs(d.probs[i] - emp.probs[i]);
  CHECK(tv / 2.0 < 0.02);
}
