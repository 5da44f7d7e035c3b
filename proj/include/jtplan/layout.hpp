#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "jtplan/core.hpp"

namespace jtplan {

// Sentinel target for table holes and failed dispatches.
inline constexpr std::int32_t kDefaultTarget = -1;

// Concrete jump table for one cluster: entry k holds the label of case value
// base+k, or kDefaultTarget for a hole.
struct JumpTable {
  std::int64_t base = 0;
  std::vector<std::int32_t> entries;
  std::uint32_t occupancy = 0;

  friend bool operator==(const JumpTable&, const JumpTable&) = default;
};

// One-case cluster lowered as a compare-and-branch.
struct SingletonCase {
  std::int64_t value = 0;
  std::int32_t label = 0;

  friend bool operator==(const SingletonCase&, const SingletonCase&) = default;
};

// Dispatch tree node. Internal nodes route on `selector < pivot`; leaves name
// either a jump table or a singleton compare.
struct DispatchNode {
  std::int64_t pivot = 0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::int32_t table = -1;
  std::int32_t singleton = -1;

  bool is_leaf() const { return left < 0; }

  friend bool operator==(const DispatchNode&, const DispatchNode&) = default;
};

struct PlanTotals {
  std::uint64_t table_bytes = 0;
  std::uint32_t tree_depth = 0;
  std::uint32_t table_count = 0;
  std::uint32_t entry_width_bytes = 4;

  friend bool operator==(const PlanTotals&, const PlanTotals&) = default;
};

// A fully materialized lowering: per-cluster jump tables with default-filled
// holes, singleton compares, and a balanced dispatch tree selecting among
// them. Immutable after construction and safe to share across threads.
struct LoweringPlan {
  std::vector<JumpTable> tables;
  std::vector<SingletonCase> singletons;
  std::vector<DispatchNode> nodes;
  std::int32_t root = -1;
  PlanTotals totals;

  friend bool operator==(const LoweringPlan&, const LoweringPlan&) = default;
};

namespace detail {

inline std::uint32_t tree_depth(const std::vector<DispatchNode>& nodes,
                                std::int32_t at) {
  const DispatchNode& node = nodes[static_cast<std::size_t>(at)];
  if (node.is_leaf())
    return 1;
  return 1 + std::max(tree_depth(nodes, node.left),
                      tree_depth(nodes, node.right));
}

struct ClusterRef {
  bool is_table;
  std::int32_t index;
  std::int64_t first_value;
};

// Balanced split over clusters [lo, hi); pivot is the lowest value of the
// right half, so in-order traversal keeps clusters in ascending value order.
inline std::int32_t build_tree(std::vector<DispatchNode>& nodes,
                               const std::vector<ClusterRef>& refs,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) {
    DispatchNode leaf;
    if (refs[lo].is_table)
      leaf.table = refs[lo].index;
    else
      leaf.singleton = refs[lo].index;
    nodes.push_back(leaf);
    return static_cast<std::int32_t>(nodes.size() - 1);
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  DispatchNode inner;
  inner.pivot = refs[mid].first_value;
  inner.left = build_tree(nodes, refs, lo, mid);
  inner.right = build_tree(nodes, refs, mid, hi);
  nodes.push_back(inner);
  return static_cast<std::int32_t>(nodes.size() - 1);
}

}  // namespace detail

// Materialize a partition into tables, singletons and a dispatch tree. Labels
// are case indices into `cases`. The partition must be structurally valid;
// any table wider than 2^32 entries is refused.
inline LoweringPlan build_plan(const CaseSet& cases, const Partition& p,
                               std::uint32_t entry_width_bytes = 4) {
  if (entry_width_bytes != 2 && entry_width_bytes != 4 && entry_width_bytes != 8)
    throw std::invalid_argument("build_plan: entry width must be 2, 4 or 8 bytes");
  const std::vector<Violation> broken = validate_structure(cases, p);
  if (!broken.empty())
    throw std::invalid_argument("build_plan: invalid partition: " +
                                broken.front().message);
  if (cases.size() >
      static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw std::overflow_error("build_plan: too many cases for 32-bit labels");

  LoweringPlan plan;
  plan.totals.entry_width_bytes = entry_width_bytes;
  std::vector<detail::ClusterRef> refs;
  refs.reserve(p.ranges.size());

  for (const IndexRange& r : p.ranges) {
    if (r.is_singleton()) {
      plan.singletons.push_back(
          {cases[r.lo], static_cast<std::int32_t>(r.lo)});
      refs.push_back({false,
                      static_cast<std::int32_t>(plan.singletons.size() - 1),
                      cases[r.lo]});
      continue;
    }
    const std::uint64_t dist = cases.distance(r.lo, r.hi);
    if (dist >= (std::uint64_t{1} << 32))
      throw std::overflow_error("build_plan: table span exceeds 2^32 entries");
    JumpTable table;
    table.base = cases[r.lo];
    table.entries.assign(static_cast<std::size_t>(dist) + 1, kDefaultTarget);
    for (std::size_t k = r.lo; k <= r.hi; ++k)
      table.entries[static_cast<std::size_t>(cases.distance(r.lo, k))] =
          static_cast<std::int32_t>(k);
    table.occupancy = static_cast<std::uint32_t>(r.count());
    plan.totals.table_bytes += table.entries.size() * entry_width_bytes;
    plan.tables.push_back(std::move(table));
    refs.push_back({true, static_cast<std::int32_t>(plan.tables.size() - 1),
                    cases[r.lo]});
  }

  plan.root = detail::build_tree(plan.nodes, refs, 0, refs.size());
  plan.totals.table_count = static_cast<std::uint32_t>(plan.tables.size());
  plan.totals.tree_depth = detail::tree_depth(plan.nodes, plan.root);
  return plan;
}

// Outcome of dispatching one selector, with the cost of getting there:
// comparisons taken along the tree path (leaf guard included) and whether an
// indirect jump through a table was executed. A selector that falls into an
// in-range hole still takes the indirect jump; it just lands on the default
// target. A selector that fails a leaf guard never reaches a table.
struct LookupResult {
  std::int32_t label = kDefaultTarget;
  std::uint32_t comparisons = 0;
  bool indirect = false;
  std::int32_t table = -1;

  friend bool operator==(const LookupResult&, const LookupResult&) = default;
};

inline LookupResult lookup(const LoweringPlan& plan, std::int64_t selector) {
  LookupResult result;
  std::int32_t at = plan.root;
  while (!plan.nodes[static_cast<std::size_t>(at)].is_leaf()) {
    const DispatchNode& node = plan.nodes[static_cast<std::size_t>(at)];
    ++result.comparisons;
    at = selector < node.pivot ? node.left : node.right;
  }
  const DispatchNode& leaf = plan.nodes[static_cast<std::size_t>(at)];
  ++result.comparisons;  // leaf guard
  if (leaf.singleton >= 0) {
    const SingletonCase& s =
        plan.singletons[static_cast<std::size_t>(leaf.singleton)];
    if (selector == s.value)
      result.label = s.label;
    return result;
  }
  const JumpTable& table = plan.tables[static_cast<std::size_t>(leaf.table)];
  if (selector >= table.base) {
    const std::uint64_t offset = static_cast<std::uint64_t>(selector) -
                                 static_cast<std::uint64_t>(table.base);
    if (offset < table.entries.size()) {
      result.indirect = true;
      result.table = leaf.table;
      result.label = table.entries[static_cast<std::size_t>(offset)];
    }
  }
  return result;
}

}  // namespace jtplan
