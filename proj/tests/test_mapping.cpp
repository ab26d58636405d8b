#include <catch2/catch_amalgamated.hpp>

#include "qpgan/mapping.hpp"

using namespace qpgan;

TEST_CASE("available_integers for the 3-mode 3-photon setups") {
  CHECK(available_integers({3, 3, DetectorKind::PNR, false, 0}) == 10);
  CHECK(available_integers({3, 3, DetectorKind::Threshold, false, 0}) == 7);
  CHECK(available_integers({3, 3, DetectorKind::Threshold, true, 0}) == 1);
}

TEST_CASE("PNR integer table is byte-identical to the published mapping") {
  MappingSpec spec{3, 3, DetectorKind::PNR, false, 0};
  auto outcomes = canonical_outcomes(spec);
  std::vector<std::vector<int>> expected = {
      {0, 0, 3}, {0, 1, 2}, {0, 2, 1}, {0, 3, 0}, {1, 0, 2},
      {1, 1, 1}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}, {3, 0, 0}};
  CHECK(outcomes == expected);
}

TEST_CASE("threshold integer table is byte-identical to the published mapping") {
  MappingSpec spec{3, 3, DetectorKind::Threshold, false, 0};
  auto outcomes = canonical_outcomes(spec);
  std::vector<std::vector<int>> expected = {{0, 0, 1}, {0, 1, 0}, {0, 1, 1},
                                            {1, 0, 0}, {1, 0, 1}, {1, 1, 0},
                                            {1, 1, 1}};
  CHECK(outcomes == expected);
}

TEST_CASE("distribution_to_integers places mass at the canonical rank") {
  MappingSpec spec{3, 3, DetectorKind::PNR, false, 0};

  SECTION("point mass on (0,0,3) lands at index 0") {
    OutputDistribution d;
    d.support = {{0, 0, 3}};
    d.probs = {1.0};
    auto v = distribution_to_integers(d, spec);
    REQUIRE(v.size() == 10);
    CHECK(v[0] == 1.0);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] == 0.0);
  }

  SECTION("uniform over all 10 states gives 0.1 everywhere") {
    OutputDistribution d;
    for (const auto& s : canonical_outcomes(spec)) {
      d.support.push_back(s);
      d.probs.push_back(0.1);
    }
    auto v = distribution_to_integers(d, spec);
    for (double p : v) CHECK(std::abs(p - 0.1) < 1e-15);
  }
}

TEST_CASE("threshold click pattern (1,1,1) maps to integer 6") {
  MappingSpec spec{3, 3, DetectorKind::Threshold, false, 0};
  OutputDistribution d;
  d.kind = OutputDistribution::Kind::Clicks;
  d.support = {{1, 1, 1}};
  d.probs = {1.0};
  auto v = distribution_to_integers(d, spec);
  REQUIRE(v.size() == 7);
  CHECK(v[6] == 1.0);
}

TEST_CASE("distribution_to_integers rejects mismatched outcome spaces") {
  MappingSpec spec{3, 3, DetectorKind::PNR, false, 0};
  OutputDistribution clicks;
  clicks.kind = OutputDistribution::Kind::Clicks;
  clicks.support = {{1, 1, 1}};
  clicks.probs = {1.0};
  CHECK_THROWS_AS(distribution_to_integers(clicks, spec),
                  std::invalid_argument);

  OutputDistribution foreign;
  foreign.support = {{1, 1, 0}};  // 2 photons, not in the 3-photon space
  foreign.probs = {1.0};
  CHECK_THROWS_AS(distribution_to_integers(foreign, spec),
                  std::invalid_argument);
}

TEST_CASE("distribution_to_integers preserves total mass") {
  MappingSpec spec{4, 2, DetectorKind::PNR, false, 0};
  OutputDistribution d;
  auto outcomes = canonical_outcomes(spec);
  double w = 1.0 / static_cast<double>(outcomes.size());
  for (const auto& s : outcomes) {
    d.support.push_back(s);
    d.probs.push_back(w);
  }
  auto v = distribution_to_integers(d, spec);
  double sum = 0.0;
  for (double p : v) sum += p;
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("trim_tails drops surplus equally, extra from the back") {
  std::vector<double> v10 = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto t8 = trim_tails(v10, 8);
  CHECK(t8 == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});

  std::vector<double> v9 = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(trim_tails(v9, 8) == std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7});

  CHECK(trim_tails(t8, 8) == t8);
  CHECK_THROWS_AS(trim_tails(t8, 9), std::invalid_argument);
}

TEST_CASE("trim_tails length and content contract") {
  std::vector<double> v(17);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  for (int target = 1; target <= 17; ++target) {
    auto t = trim_tails(v, target);
    REQUIRE(static_cast<int>(t.size()) == target);
    int front = (17 - target) / 2;
    for (int i = 0; i < target; ++i)
      CHECK(t[static_cast<std::size_t>(i)] == static_cast<double>(front + i));
  }
}

TEST_CASE("minmax_normalize") {
  auto n = minmax_normalize({0.2, 0.5, 0.8});
  REQUIRE(n.size() == 3);
  CHECK(n[0] == 0.0);
  CHECK(n[1] == Catch::Approx(0.5));
  CHECK(n[2] == 1.0);
  CHECK(minmax_normalize({0.3, 0.3, 0.3}) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(minmax_normalize({}), std::invalid_argument);
}

TEST_CASE("minmax_normalize stays in [0,1] and preserves order") {
  std::vector<double> v = {0.07, 0.4, 0.02, 0.9, 0.33};
  auto n = minmax_normalize(v);
  double lo = 1e9, hi = -1e9;
  for (double x : n) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[i] < v[j]) CHECK(n[i] < n[j]);
}
