#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "forge/layering.hpp"
#include "json.hpp"

using namespace forge;

namespace {

const std::vector<std::vector<int>> kK4 = {
    {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};

}  // namespace

TEST_CASE("K_4 matrix validates") {
  const auto report = validate_layering(kK4);
  CHECK(report.valid);
  CHECK(report.violations.empty());
}

TEST_CASE("duplicate color is a latin-row violation") {
  auto bad = kK4;
  bad[0][2] = 1;  // d_12 = d_13 = 1
  bad[2][0] = 1;
  const auto report = validate_layering(bad);
  CHECK_FALSE(report.valid);
  bool found = false;
  for (const auto& v : report.violations)
    if (v.rule == "latin-row" && v.row == 1) found = true;
  CHECK(found);
}

TEST_CASE("asymmetry and nonzero diagonal are reported") {
  auto bad = kK4;
  bad[1][2] = 2;
  bad[3][3] = 1;
  const auto report = validate_layering(bad);
  CHECK_FALSE(report.valid);
  std::set<std::string> rules;
  for (const auto& v : report.violations) rules.insert(v.rule);
  CHECK(rules.count("symmetry") == 1);
  CHECK(rules.count("diagonal") == 1);
}

TEST_CASE("normalization requires first row 0,1,...,m-1") {
  // A valid symmetric latin square whose first row is not the identity.
  std::vector<std::vector<int>> bad = {
      {0, 2, 1, 3}, {2, 0, 3, 1}, {1, 3, 0, 2}, {3, 1, 2, 0}};
  const auto report = validate_layering(bad);
  CHECK_FALSE(report.valid);
  bool found = false;
  for (const auto& v : report.violations)
    if (v.rule == "normalization") found = true;
  CHECK(found);
}

TEST_CASE("make_layering rejects non-square input") {
  CHECK_THROWS_AS(make_layering({{0, 1}, {1, 0}, {0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("permutations are fixed-point-free involutions") {
  const auto l = make_layering(kK4);
  const auto perms = permutations_of(l);
  REQUIRE(perms.size() == 3);
  // l_1 = (12)(34), l_2 = (13)(24), l_3 = (14)(23), written 0-based.
  CHECK(perms[0] == std::vector<int>{1, 0, 3, 2});
  CHECK(perms[1] == std::vector<int>{2, 3, 0, 1});
  CHECK(perms[2] == std::vector<int>{3, 2, 1, 0});
  for (const auto& p : perms)
    for (int j = 0; j < 4; ++j) {
      CHECK(p[std::size_t(j)] != j);
      CHECK(p[std::size_t(p[std::size_t(j)])] == j);
    }
}

TEST_CASE("m=2 has the single swap permutation") {
  const auto l = make_layering({{0, 1}, {1, 0}});
  const auto perms = permutations_of(l);
  REQUIRE(perms.size() == 1);
  CHECK(perms[0] == std::vector<int>{1, 0});
}

TEST_CASE("permutations round-trip to the distance matrix") {
  for (const auto& l : enumerate_layerings(6)) {
    const auto perms = permutations_of(l);
    for (int i = 1; i < l.m; ++i) {
      // l_i(1) = i+1 normalization (0-based: perms[i-1][0] == i).
      CHECK(perms[std::size_t(i - 1)][0] == i);
      for (int j = 0; j < l.m; ++j)
        CHECK(l.at(j, perms[std::size_t(i - 1)][std::size_t(j)]) == i);
    }
  }
}

TEST_CASE("dyadic layering closed forms") {
  CHECK(dyadic_layering(0).dist == std::vector<int>{0, 1, 1, 0});
  CHECK(dyadic_layering(1).dist == make_layering(kK4).dist);
  for (int n = 0; n <= 4; ++n) {
    const auto l = dyadic_layering(n);
    CHECK(l.m == (1 << (n + 1)));
    CHECK(validate_layering(l).valid);
    CHECK(check_antipodal_structure(l).ok);
  }
}

TEST_CASE("dyadic doubling: lower-right block repeats the half-size table") {
  const auto l8 = dyadic_layering(2);
  const auto l4 = dyadic_layering(1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(l8.at(i + 4, j + 4) == l4.at(i, j));
      CHECK(l8.at(i, j + 4) == l4.at(i, j) + 4);
    }
}

TEST_CASE("dyadic size cap") {
  CHECK_THROWS_AS(dyadic_layering(12), std::length_error);
  CHECK_THROWS_AS(dyadic_layering(-1), std::invalid_argument);
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_layerings(2).size() == 1);
  CHECK(enumerate_layerings(4).size() == 1);
  CHECK(enumerate_layerings(6).size() == 6);
}

TEST_CASE("enumeration rejects odd or oversize m") {
  CHECK_THROWS_AS(enumerate_layerings(5), std::domain_error);
  CHECK_THROWS_AS(enumerate_layerings(12), std::length_error);
}

TEST_CASE("enumeration is valid, duplicate-free, deterministic, ordered") {
  const auto once = enumerate_layerings(6);
  const auto twice = enumerate_layerings(6);
  REQUIRE(once.size() == twice.size());
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(validate_layering(once[i]).valid);
    CHECK(once[i].dist == twice[i].dist);
    CHECK(seen.insert(once[i].dist).second);
    if (i > 0) CHECK(once[i - 1].dist < once[i].dist);
  }
}

TEST_CASE("limit and early-stop forms agree") {
  const auto all = enumerate_layerings(6);
  const auto capped = enumerate_layerings(6, 3);
  REQUIRE(capped.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(capped[i].dist == all[i].dist);
}

TEST_CASE("antipodal pre-filter on K_6") {
  // No K_6 layering embeds; at least one also fails the antipodal identities
  // with the offending pair reported.
  bool some_fail = false;
  for (const auto& l : enumerate_layerings(6)) {
    const auto rep = check_antipodal_structure(l);
    if (!rep.ok) {
      some_fail = true;
      CHECK_FALSE(rep.violations.empty());
    }
  }
  CHECK(some_fail);
}

TEST_CASE("layering JSON round-trip") {
  const auto l = dyadic_layering(2);
  const nlohmann::json j = l;
  CHECK(j.at("m") == 8);
  const auto back = j.get<Layering>();
  CHECK(back.dist == l.dist);
}
