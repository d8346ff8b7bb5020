#include "leosim/grid.hpp"

#include "grid_oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

using namespace leosim;
using grid::Coord;
using grid::Dims;
using grid::Dir;

namespace {

// Recursively follows a plan hop by hop, recording node visits and per
// delegation hop counts.
void
flood(Coord cur, const std::vector<Coord>& dels, Dims g, std::map<Coord, int>& visits,
      std::map<Coord, int>& hops)
{
  auto plan = grid::disseminate(cur, dels, g);
  for (Dir d : grid::kAllDirs) {
    const auto& set = plan.sets[static_cast<std::size_t>(d)];
    if (set.empty()) {
      continue;
    }
    Coord nxt = grid::neighbor(cur, d, g);
    visits[nxt] += 1;
    for (Coord c : set) {
      hops[c] += 1;
    }
    flood(nxt, set, g, visits, hops);
  }
}

} // namespace

TEST_SUITE("grid")
{

TEST_CASE("dims below 3x3 are rejected")
{
  CHECK_THROWS_AS(grid::validate_dims({2, 5}), std::invalid_argument);
  CHECK_THROWS_AS(grid::validate_dims({5, 2}), std::invalid_argument);
  CHECK_NOTHROW(grid::validate_dims({3, 3}));
  CHECK_THROWS_AS(grid::disseminate({0, 0}, {{1, 1}}, {2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(grid::disseminate({0, 0}, {{9, 1}}, {4, 4}), std::invalid_argument);
}

TEST_CASE("neighbors wrap around both rings")
{
  Dims g{72, 22};
  CHECK(grid::neighbor({0, 0}, Dir::Fore, g) == Coord{0, 1});
  CHECK(grid::neighbor({0, 0}, Dir::Aft, g) == Coord{0, 21});
  CHECK(grid::neighbor({0, 0}, Dir::Port, g) == Coord{71, 0});
  CHECK(grid::neighbor({0, 0}, Dir::Starboard, g) == Coord{1, 0});
  CHECK(grid::neighbor({71, 21}, Dir::Fore, g) == Coord{71, 0});
  CHECK(grid::neighbor({71, 21}, Dir::Starboard, g) == Coord{0, 21});
}

TEST_CASE("torus distance")
{
  Dims g{72, 22};
  CHECK(grid::torus_distance({10, 3}, {12, 10}, g) == 9);
  CHECK(grid::torus_distance({0, 0}, {71, 21}, g) == 2); // wraps both ways
  CHECK(grid::torus_distance({5, 5}, {5, 5}, g) == 0);
  CHECK(grid::torus_distance({0, 0}, {36, 11}, g) == 47); // both half way

  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    Coord a{int(rng() % 72), int(rng() % 22)};
    Coord b{int(rng() % 72), int(rng() % 22)};
    Coord c{int(rng() % 72), int(rng() % 22)};
    CHECK(grid::torus_distance(a, b, g) == grid::torus_distance(b, a, g));
    CHECK(grid::torus_distance(a, c, g) <=
          grid::torus_distance(a, b, g) + grid::torus_distance(b, c, g));
  }
}

TEST_CASE("single delegation prefers in-plane steering")
{
  Dims g{8, 8};
  auto plan = grid::disseminate({0, 0}, {{0, 3}}, g);
  CHECK(plan.sets[int(Dir::Fore)] == std::vector<Coord>{{0, 3}});
  CHECK(leosim::testing::usedDirections(plan) == 1);

  // equally reachable fore or starboard: fore wins
  plan = grid::disseminate({0, 0}, {{2, 1}}, g);
  CHECK(plan.sets[int(Dir::Fore)] == std::vector<Coord>{{2, 1}});

  // once the index matches, only the plane move closes in
  plan = grid::disseminate({0, 1}, {{2, 1}}, g);
  CHECK(plan.sets[int(Dir::Starboard)] == std::vector<Coord>{{2, 1}});

  // aft and port quadrant
  plan = grid::disseminate({0, 0}, {{7, 6}}, g);
  CHECK(plan.sets[int(Dir::Aft)] == std::vector<Coord>{{7, 6}});
}

TEST_CASE("three delegations split like the worked example")
{
  Dims g{72, 22};
  auto plan = grid::disseminate({10, 10}, {{12, 3}, {14, 15}, {10, 17}}, g);
  CHECK(plan.sets[int(Dir::Fore)] == std::vector<Coord>{{10, 17}, {14, 15}});
  CHECK(plan.sets[int(Dir::Aft)].empty());
  CHECK(plan.sets[int(Dir::Port)].empty());
  CHECK(plan.sets[int(Dir::Starboard)] == std::vector<Coord>{{12, 3}});
  CHECK_FALSE(plan.deliver_local);
}

TEST_CASE("delegation equal to the current node is delivered locally")
{
  Dims g{8, 8};
  auto plan = grid::disseminate({3, 3}, {{3, 3}}, g);
  CHECK(plan.deliver_local);
  CHECK_FALSE(plan.forwards());

  plan = grid::disseminate({3, 3}, {{3, 3}, {3, 5}}, g);
  CHECK(plan.deliver_local);
  CHECK(plan.sets[int(Dir::Fore)] == std::vector<Coord>{{3, 5}});
}

TEST_CASE("plans partition the delegations with strict progress, minimally")
{
  std::mt19937 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    Dims g{int(3 + rng() % 6), int(3 + rng() % 6)};
    int k = 1 + int(rng() % 5);
    std::set<Coord> dset;
    while (int(dset.size()) < k) {
      dset.insert({int(rng() % g.planes), int(rng() % g.sats_per_plane)});
    }
    std::vector<Coord> dels(dset.begin(), dset.end());
    Coord cur{int(rng() % g.planes), int(rng() % g.sats_per_plane)};
    CAPTURE(trial);

    auto plan = grid::disseminate(cur, dels, g);

    std::set<Coord> covered;
    std::size_t total = 0;
    for (Dir d : grid::kAllDirs) {
      const auto& s = plan.sets[static_cast<std::size_t>(d)];
      total += s.size();
      for (Coord c : s) {
        covered.insert(c);
        // strict progress toward every delegation in the set
        CHECK(grid::torus_distance(c, grid::neighbor(cur, d, g), g) <
              grid::torus_distance(c, cur, g));
      }
      CHECK(std::is_sorted(s.begin(), s.end()));
    }
    // disjoint and complete
    CHECK(total == covered.size());
    std::set<Coord> expect(dels.begin(), dels.end());
    bool hasSelf = expect.erase(cur) > 0;
    CHECK(covered == expect);
    CHECK(plan.deliver_local == hasSelf);
    // no more directions than necessary
    CHECK(leosim::testing::usedDirections(plan) == leosim::testing::bruteMinDirections(cur, dels, g));

    // determinism
    auto again = grid::disseminate(cur, dels, g);
    CHECK(again.sets == plan.sets);
  }
}

TEST_CASE("flooding a plan reaches every delegation once on a shortest path")
{
  std::mt19937 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    Dims g{int(3 + rng() % 10), int(3 + rng() % 10)};
    int k = 1 + int(rng() % 8);
    std::set<Coord> dset;
    while (int(dset.size()) < k) {
      dset.insert({int(rng() % g.planes), int(rng() % g.sats_per_plane)});
    }
    Coord cur{int(rng() % g.planes), int(rng() % g.sats_per_plane)};
    std::vector<Coord> dels;
    for (Coord c : dset) {
      if (c != cur) {
        dels.push_back(c);
      }
    }
    if (dels.empty()) {
      continue;
    }
    CAPTURE(trial);

    std::map<Coord, int> visits, hops;
    flood(cur, dels, g, visits, hops);
    for (auto& [node, count] : visits) {
      CHECK(count == 1); // no node receives the Interest twice
    }
    for (Coord d : dels) {
      CHECK(hops[d] == grid::torus_distance(cur, d, g));
    }
  }
}

TEST_CASE("satellite names round trip")
{
  ndn::Name prefix("/lsat");
  Dims g{72, 22};
  CHECK(grid::satellite_name(prefix, {12, 3}).toUri() == "/lsat/12/3");
  CHECK(grid::parse_satellite_name(prefix, ndn::Name("/lsat/12/3"), g) == Coord{12, 3});
  CHECK(grid::parse_satellite_name(prefix, ndn::Name("/lsat/0/21"), g) == Coord{0, 21});
  CHECK_FALSE(grid::parse_satellite_name(prefix, ndn::Name("/lsat/72/0"), g).has_value());
  CHECK_FALSE(grid::parse_satellite_name(prefix, ndn::Name("/lsat/0/22"), g).has_value());
  CHECK_FALSE(grid::parse_satellite_name(prefix, ndn::Name("/othr/1/2"), g).has_value());
  CHECK_FALSE(grid::parse_satellite_name(prefix, ndn::Name("/lsat/1/2/3"), g).has_value());
  CHECK_FALSE(grid::parse_satellite_name(prefix, ndn::Name("/lsat/1"), g).has_value());
  CHECK_FALSE(grid::parse_satellite_name(prefix, ndn::Name("/lsat/01/2"), g).has_value());
  CHECK_FALSE(grid::parse_satellite_name(prefix, ndn::Name("/lsat/x/2"), g).has_value());
  CHECK_FALSE(grid::parse_satellite_name(prefix, ndn::Name("/lsat/8C/JH"), g).has_value());
}

TEST_CASE("plans turn into per direction hint lists")
{
  Dims g{72, 22};
  ndn::Name prefix("/lsat");
  ndn::Name pgw("/lsat/8C/JH/58/96/XV");
  auto plan = grid::disseminate({10, 10}, {{12, 3}, {14, 15}, {10, 17}}, g);
  auto hints = grid::plan_to_hints(plan, prefix, pgw);
  REQUIRE(hints.size() == 2);
  CHECK(hints[0].first == Dir::Fore);
  REQUIRE(hints[0].second.size() == 3);
  CHECK(hints[0].second[0].toUri() == "/lsat/10/17");
  CHECK(hints[0].second[1].toUri() == "/lsat/14/15");
  CHECK(hints[0].second[2] == pgw);
  CHECK(hints[1].first == Dir::Starboard);
  REQUIRE(hints[1].second.size() == 2);
  CHECK(hints[1].second[0].toUri() == "/lsat/12/3");
  CHECK(hints[1].second[1] == pgw);

  auto bare = grid::plan_to_hints(plan, prefix, std::nullopt);
  CHECK(bare[0].second.size() == 2);
  CHECK(bare[1].second.size() == 1);
}

} // TEST_SUITE
