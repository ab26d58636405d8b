#include <catch2/catch_amalgamated.hpp>

#include "qpgan/fock.hpp"

using namespace qpgan;

TEST_CASE("enumerate_basis reproduces the 3-mode 3-photon integer table") {
  FockBasis b = enumerate_basis(3, 3);
  REQUIRE(b.states.size() == 10);
  CHECK(b.states[0].occ == std::vector<int>{0, 0, 3});
  CHECK(b.states[1].occ == std::vector<int>{0, 1, 2});
  CHECK(b.states[5].occ == std::vector<int>{1, 1, 1});
  CHECK(b.states[9].occ == std::vector<int>{3, 0, 0});
}

TEST_CASE("enumerate_basis single mode") {
  FockBasis b = enumerate_basis(1, 5);
  REQUIRE(b.states.size() == 1);
  CHECK(b.states[0].occ == std::vector<int>{5});
}

TEST_CASE("enumerate_basis vacuum") {
  FockBasis b = enumerate_basis(4, 0);
  REQUIRE(b.states.size() == 1);
  CHECK(b.states[0].photons() == 0);
}

TEST_CASE("enumerate_basis (4,2) matches exhaustive tuple enumeration") {
  FockBasis b = enumerate_basis(4, 2);
  // brute force: all 4-tuples with entries 0..2 summing to 2
  std::vector<std::vector<int>> expected;
  for (int a = 0; a <= 2; ++a)
    for (int c = 0; c <= 2; ++c)
      for (int d = 0; d <= 2; ++d)
        for (int e = 0; e <= 2; ++e)
          if (a + c + d + e == 2) expected.push_back({a, c, d, e});
  std::sort(expected.begin(), expected.end());
  REQUIRE(b.states.size() == expected.size());
  REQUIRE(b.states.size() == 10);
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(b.states[i].occ == expected[i]);
}

TEST_CASE("basis size equals the closed form for small m, n") {
  for (int m = 1; m <= 8; ++m)
    for (int n = 0; n <= 5; ++n)
      CHECK(enumerate_basis(m, n).states.size() == binomial(m + n - 1, n));
}

TEST_CASE("state_index matches the mapping table rows") {
  FockBasis b = enumerate_basis(3, 3);
  CHECK(state_index(b, FockState{{0, 1, 2}}) == 1);
  CHECK(state_index(b, FockState{{1, 1, 1}}) == 5);
  CHECK(state_index(b, b.states[0]) == 0);
}

TEST_CASE("state_index is the inverse of list lookup") {
  for (int m : {2, 3, 5}) {
    FockBasis b = enumerate_basis(m, 3);
    for (int i = 0; i < static_cast<int>(b.states.size()); ++i)
      REQUIRE(state_index(b, b.states[static_cast<std::size_t>(i)]) == i);
  }
}

TEST_CASE("state_index rejects foreign states") {
  FockBasis b = enumerate_basis(3, 3);
  CHECK_THROWS_AS(state_index(b, FockState{{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(state_index(b, FockState{{2, 0, 0}}), std::invalid_argument);
}

TEST_CASE("threshold_collapse") {
  CHECK(threshold_collapse(FockState{{0, 2, 1}}).clicks ==
        std::vector<int>{0, 1, 1});
  CHECK(threshold_collapse(FockState{{0, 0, 0}}).clicks ==
        std::vector<int>{0, 0, 0});
  CHECK(threshold_collapse(FockState{{3, 0, 0}}).clicks ==
        std::vector<int>{1, 0, 0});
}

TEST_CASE("threshold_collapse is idempotent on its image") {
  FockBasis b = enumerate_basis(4, 3);
  for (const auto& s : b.states) {
    ClickPattern once = threshold_collapse(s);
    ClickPattern twice = threshold_collapse(FockState{once.clicks});
    CHECK(once == twice);
  }
}

TEST_CASE("enumerate_patterns lossless (3,3) gives the 7 table patterns") {
  auto pats = enumerate_patterns(3, 3, false);
  REQUIRE(pats.size() == 7);
  CHECK(pats[0].clicks == std::vector<int>{0, 0, 1});
  CHECK(pats[1].clicks == std::vector<int>{0, 1, 0});
  CHECK(pats[2].clicks == std::vector<int>{0, 1, 1});
  CHECK(pats[3].clicks == std::vector<int>{1, 0, 0});
  CHECK(pats[6].clicks == std::vector<int>{1, 1, 1});
}

TEST_CASE("enumerate_patterns lossy (3,3) reduces to a single pattern") {
  auto pats = enumerate_patterns(3, 3, true);
  REQUIRE(pats.size() == 1);
  CHECK(pats[0].clicks == std::vector<int>{1, 1, 1});
}

TEST_CASE("enumerate_patterns lossy (4,2) has 6 patterns") {
  CHECK(enumerate_patterns(4, 2, true).size() == 6);
}

TEST_CASE("enumerate_patterns lossy count equals C(m,n)") {
  for (int m = 2; m <= 7; ++m)
    for (int n = 1; n <= m; ++n)
      CHECK(enumerate_patterns(m, n, true).size() == binomial(m, n));
}

TEST_CASE("enumerate_patterns rejects lossy with n > m") {
  CHECK_THROWS_AS(enumerate_patterns(3, 4, true), std::invalid_argument);
}

TEST_CASE("pattern ordering is ascending binary value, leftmost MSB") {
  for (bool lossy : {false, true}) {
    auto pats = enumerate_patterns(5, 3, lossy);
    for (std::size_t i = 1; i < pats.size(); ++i)
      CHECK(pats[i - 1].binary_value() < pats[i].binary_value());
  }
}
