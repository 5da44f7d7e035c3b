#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "jtplan/core.hpp"
#include "jtplan/json_io.hpp"
#include "jtplan/layout.hpp"

using namespace jtplan;

namespace {

// Independent reference for dispatch semantics: a plain linear scan of the
// (value -> label) pairs with a default fallback.
std::int32_t naive_lookup(const CaseSet& cases, std::int64_t selector) {
  for (std::size_t k = 0; k < cases.size(); ++k)
    if (cases[k] == selector)
      return static_cast<std::int32_t>(k);
  return kDefaultTarget;
}

CaseSet random_case_set(std::mt19937_64& rng, std::size_t n, std::int64_t lo,
                        std::int64_t hi) {
  std::vector<std::int64_t> pool;
  for (std::int64_t v = lo; v <= hi; ++v)
    pool.push_back(v);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(n);
  std::sort(pool.begin(), pool.end());
  return CaseSet(std::move(pool));
}

std::uint32_t ceil_log2(std::size_t m) {
  std::uint32_t bits = 0;
  while ((std::size_t{1} << bits) < m)
    ++bits;
  return bits;
}

}  // namespace

TEST_CASE("plan for a table with a hole", "[layout]") {
  const CaseSet cases({1, 2, 3, 5});
  const LoweringPlan plan = build_plan(cases, Partition{{{0, 3}}});
  REQUIRE(plan.tables.size() == 1);
  CHECK(plan.singletons.empty());
  CHECK(plan.tables[0].base == 1);
  CHECK(plan.tables[0].entries ==
        std::vector<std::int32_t>{0, 1, 2, kDefaultTarget, 3});
  CHECK(plan.tables[0].occupancy == 4);
  CHECK(plan.totals.table_count == 1);
  CHECK(plan.totals.table_bytes == 5 * 4);
  CHECK(plan.totals.tree_depth == 1);

  SECTION("hole dispatches to default through the table") {
    const LookupResult r = lookup(plan, 4);
    CHECK(r.label == kDefaultTarget);
    CHECK(r.indirect);
  }
  SECTION("last entry dispatches to its label") {
    const LookupResult r = lookup(plan, 5);
    CHECK(r.label == 3);
    CHECK(r.indirect);
    CHECK(r.table == 0);
  }
  SECTION("below-range selector fails the guard without an indirect jump") {
    const LookupResult r = lookup(plan, -100);
    CHECK(r.label == kDefaultTarget);
    CHECK_FALSE(r.indirect);
    CHECK(r.comparisons == 1);
  }
}

TEST_CASE("plan for a lone singleton", "[layout]") {
  const CaseSet cases({7});
  const LoweringPlan plan = build_plan(cases, Partition{{{0, 0}}});
  CHECK(plan.tables.empty());
  REQUIRE(plan.singletons.size() == 1);
  CHECK(plan.singletons[0] == SingletonCase{7, 0});
  CHECK(plan.totals.tree_depth == 1);
  CHECK(plan.totals.table_bytes == 0);
  CHECK(lookup(plan, 7).label == 0);
  CHECK_FALSE(lookup(plan, 7).indirect);
  CHECK(lookup(plan, 8).label == kDefaultTarget);
}

TEST_CASE("dense 256-entry plan has no holes", "[layout]") {
  std::vector<std::int64_t> values(256);
  for (std::size_t k = 0; k < values.size(); ++k)
    values[k] = static_cast<std::int64_t>(k);
  const CaseSet cases(std::move(values));
  const LoweringPlan plan = build_plan(cases, Partition{{{0, 255}}});
  REQUIRE(plan.tables.size() == 1);
  CHECK(plan.tables[0].entries.size() == 256);
  CHECK(plan.tables[0].occupancy == 256);
  CHECK(plan.totals.tree_depth == 1);
  CHECK(std::none_of(plan.tables[0].entries.begin(),
                     plan.tables[0].entries.end(),
                     [](std::int32_t e) { return e == kDefaultTarget; }));
}

TEST_CASE("build_plan input validation", "[layout]") {
  const CaseSet cases({1, 2, 3, 5});
  CHECK_THROWS_AS(build_plan(cases, Partition{{{0, 3}}}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_plan(cases, Partition{{{0, 2}}}, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_plan(CaseSet({0, (std::int64_t{1} << 33)}),
                             Partition{{{0, 1}}}, 4),
                  std::overflow_error);
  CHECK_NOTHROW(build_plan(cases, Partition{{{0, 3}}}, 2));
  CHECK_NOTHROW(build_plan(cases, Partition{{{0, 3}}}, 8));
}

TEST_CASE("byte accounting follows the entry width", "[layout]") {
  const CaseSet cases({0, 1, 2, 10, 11, 12});
  const Partition p{{{0, 2}, {3, 5}}};
  for (const std::uint32_t width : {2u, 4u, 8u}) {
    const LoweringPlan plan = build_plan(cases, p, width);
    std::uint64_t expect = 0;
    for (const JumpTable& t : plan.tables)
      expect += t.entries.size() * width;
    CHECK(plan.totals.table_bytes == expect);
    CHECK(plan.totals.table_bytes == 6 * width);
  }
}

TEST_CASE("lookup agrees with the naive scan", "[layout][property]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 24;
    const CaseSet cases = random_case_set(rng, n, -40, 120);
    ClusterParams params;
    params.density_min = Fraction{1 + rng() % 3, 4};
    params.max_entries = 1 + rng() % 40;
    const Partition partition = cluster_windowed(cases, params);
    const LoweringPlan plan = build_plan(cases, partition);
    for (std::int64_t s = cases.min_value() - 2; s <= cases.max_value() + 2;
         ++s) {
      INFO("selector " << s);
      REQUIRE(lookup(plan, s).label == naive_lookup(cases, s));
    }
  }
}

TEST_CASE("tree depth is logarithmic and leaves stay ordered",
          "[layout][property]") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    const CaseSet cases = random_case_set(rng, n, 0, 400);
    ClusterParams params;
    params.density_min = Fraction{1, 2};
    params.max_entries = 1 + rng() % 16;
    const Partition partition = cluster_windowed(cases, params);
    const LoweringPlan plan = build_plan(cases, partition);
    CHECK(plan.totals.tree_depth <= ceil_log2(partition.cluster_count()) + 1);

    // In-order traversal must visit clusters in ascending value order.
    std::vector<std::int64_t> first_values;
    const auto walk = [&](auto&& self, std::int32_t at) -> void {
      const DispatchNode& node = plan.nodes[static_cast<std::size_t>(at)];
      if (node.is_leaf()) {
        first_values.push_back(node.table >= 0
                                   ? plan.tables[node.table].base
                                   : plan.singletons[node.singleton].value);
        return;
      }
      self(self, node.left);
      self(self, node.right);
    };
    walk(walk, plan.root);
    CHECK(std::is_sorted(first_values.begin(), first_values.end()));
    CHECK(first_values.size() == partition.cluster_count());
  }
}

TEST_CASE("every case reaches exactly one leaf", "[layout][property]") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    const CaseSet cases = random_case_set(rng, n, 0, 80);
    ClusterParams params;
    params.max_entries = 1 + rng() % 32;
    const LoweringPlan plan =
        build_plan(cases, cluster_windowed(cases, params));
    for (std::size_t k = 0; k < n; ++k) {
      const LookupResult r = lookup(plan, cases[k]);
      REQUIRE(r.label == static_cast<std::int32_t>(k));
    }
  }
}

TEST_CASE("plan JSON round trip preserves dispatch", "[layout][json]") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 16;
    const CaseSet cases = random_case_set(rng, n, 0, 64);
    ClusterParams params;
    params.max_entries = 1 + rng() % 16;
    const LoweringPlan plan =
        build_plan(cases, cluster_windowed(cases, params));
    const ordered_json j = plan_to_json(plan);
    const LoweringPlan back = plan_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.totals == plan.totals);
    CHECK(back.tables == plan.tables);
    CHECK(back.singletons == plan.singletons);
    for (std::int64_t s = cases.min_value() - 2; s <= cases.max_value() + 2; ++s)
      REQUIRE(lookup(back, s) == lookup(plan, s));
  }
}

TEST_CASE("plan JSON key order is stable", "[layout][json]") {
  const CaseSet cases({1, 2, 3, 5, 9});
  ClusterParams params;
  const LoweringPlan plan = build_plan(cases, cluster_windowed(cases, params));
  const std::string once = plan_to_json(plan).dump();
  const std::string twice = plan_to_json(plan).dump();
  CHECK(once == twice);
  CHECK(once.find("\"tables\"") < once.find("\"singletons\""));
  CHECK(once.find("\"singletons\"") < once.find("\"tree\""));
  CHECK(once.find("\"tree\"") < once.find("\"totals\""));
}

TEST_CASE("malformed plan JSON is rejected", "[layout][json]") {
  CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse("{}")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      plan_from_json(nlohmann::json::parse(
          R"({"tables":[],"singletons":[],"tree":{"table":0}})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      plan_from_json(nlohmann::json::parse(
          R"({"tables":[{"base":0,"entries":[]}],"singletons":[],"tree":{"table":0}})")),
      std::invalid_argument);
}
