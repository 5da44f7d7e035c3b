#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "jtplan/core.hpp"
#include "jtplan/layout.hpp"

namespace jtplan {

// Indirect-target predictor models. capacity_k is an idealized per-branch LRU
// set: a dispatch is predicted correctly iff its actual target is among the k
// most recently used distinct targets of that branch. last_target is the
// classical pessimistic baseline, identical to capacity_k with k = 1. These
// express a capacity limit on predictable destinations, not any real core.
struct PredictorModel {
  enum class Kind { last_target, capacity_k };
  enum class CondModel { always_correct, bimodal_2bit };

  Kind kind = Kind::capacity_k;
  std::uint32_t k = 64;
  CondModel cond_model = CondModel::bimodal_2bit;

  std::uint32_t capacity() const { return kind == Kind::last_target ? 1 : k; }

  void validate() const {
    if (k == 0)
      throw std::invalid_argument("predictor model: k must be >= 1");
  }
};

// Runtime switch operands in execution order.
struct Trace {
  std::vector<std::int64_t> selectors;
};

// Cost weights for the scalar summary; order-of-magnitude figures for a
// modern core, configurable because they are a proxy, not a measurement.
struct Penalties {
  double indirect_miss = 20.0;
  double cond_miss = 15.0;
  double compare = 1.0;
};

struct SimReport {
  struct IndirectBranch {
    std::uint64_t executions = 0;
    std::uint64_t mispredicts = 0;
    std::uint64_t cold_targets = 0;  // distinct targets ever dispatched
  };
  struct CondBranch {
    std::uint64_t executions = 0;
    std::uint64_t mispredicts = 0;
  };

  std::vector<IndirectBranch> indirect;   // one per jump table
  std::vector<CondBranch> conditional;    // one per dispatch tree node
  std::uint64_t dispatches = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t indirect_executions = 0;
  std::uint64_t indirect_mispredicts = 0;
  std::uint64_t cond_executions = 0;
  std::uint64_t cond_mispredicts = 0;
  double indirect_mispredict_rate = 0.0;
  double cond_mispredict_rate = 0.0;
  double mean_comparisons = 0.0;
  double weighted_cost = 0.0;
};

namespace detail {

inline double safe_rate(std::uint64_t part, std::uint64_t whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

// Per-table LRU set of recent targets, most recent first.
struct TargetSet {
  std::vector<std::int32_t> recent;
  std::unordered_set<std::int32_t> seen;

  // Returns true on a hit; updates recency either way.
  bool access(std::int32_t target, std::uint32_t capacity) {
    const auto it = std::find(recent.begin(), recent.end(), target);
    const bool hit = it != recent.end();
    if (hit)
      recent.erase(it);
    recent.insert(recent.begin(), target);
    if (recent.size() > capacity)
      recent.pop_back();
    seen.insert(target);
    return hit;
  }
};

}  // namespace detail

// Deterministic replay of a trace against a plan. Every jump table is one
// indirect branch with its own predictor state; every dispatch tree node
// (internal pivot or leaf guard) is one conditional branch with its own 2-bit
// counter, initialized weakly-not-taken. Selectors that fail a leaf guard
// resolve to default without executing an indirect branch and count toward
// conditional stats only.
inline SimReport simulate(const LoweringPlan& plan, const Trace& trace,
                          const PredictorModel& model,
                          const Penalties& penalties = {}) {
  model.validate();
  if (trace.selectors.empty())
    throw std::invalid_argument("simulate: trace must be non-empty");

  const std::uint32_t capacity = model.capacity();
  const bool bimodal = model.cond_model == PredictorModel::CondModel::bimodal_2bit;

  SimReport report;
  report.indirect.resize(plan.tables.size());
  report.conditional.resize(plan.nodes.size());

  std::vector<detail::TargetSet> targets(plan.tables.size());
  std::vector<std::uint8_t> counters(plan.nodes.size(), 1);

  const auto conditional = [&](std::int32_t node, bool taken) {
    auto& stats = report.conditional[static_cast<std::size_t>(node)];
    ++stats.executions;
    ++report.comparisons;
    if (!bimodal)
      return;
    std::uint8_t& counter = counters[static_cast<std::size_t>(node)];
    if ((counter >= 2) != taken)
      ++stats.mispredicts;
    if (taken)
      counter = counter < 3 ? counter + 1 : 3;
    else
      counter = counter > 0 ? counter - 1 : 0;
  };

  for (const std::int64_t selector : trace.selectors) {
    ++report.dispatches;
    std::int32_t at = plan.root;
    while (!plan.nodes[static_cast<std::size_t>(at)].is_leaf()) {
      const DispatchNode& node = plan.nodes[static_cast<std::size_t>(at)];
      const bool taken = selector < node.pivot;
      conditional(at, taken);
      at = taken ? node.left : node.right;
    }
    const DispatchNode& leaf = plan.nodes[static_cast<std::size_t>(at)];
    if (leaf.singleton >= 0) {
      const SingletonCase& s =
          plan.singletons[static_cast<std::size_t>(leaf.singleton)];
      conditional(at, selector == s.value);
      continue;
    }
    const JumpTable& table = plan.tables[static_cast<std::size_t>(leaf.table)];
    bool in_bounds = false;
    std::uint64_t offset = 0;
    if (selector >= table.base) {
      offset = static_cast<std::uint64_t>(selector) -
               static_cast<std::uint64_t>(table.base);
      in_bounds = offset < table.entries.size();
    }
    conditional(at, in_bounds);
    if (!in_bounds)
      continue;
    const std::int32_t target = table.entries[static_cast<std::size_t>(offset)];
    auto& branch = report.indirect[static_cast<std::size_t>(leaf.table)];
    ++branch.executions;
    if (!targets[static_cast<std::size_t>(leaf.table)].access(target, capacity))
      ++branch.mispredicts;
  }

  for (std::size_t t = 0; t < plan.tables.size(); ++t)
    report.indirect[t].cold_targets = targets[t].seen.size();
  for (const auto& branch : report.indirect) {
    report.indirect_executions += branch.executions;
    report.indirect_mispredicts += branch.mispredicts;
  }
  for (const auto& branch : report.conditional) {
    report.cond_executions += branch.executions;
    report.cond_mispredicts += branch.mispredicts;
  }
  report.indirect_mispredict_rate =
      detail::safe_rate(report.indirect_mispredicts, report.indirect_executions);
  report.cond_mispredict_rate =
      detail::safe_rate(report.cond_mispredicts, report.cond_executions);
  report.mean_comparisons =
      detail::safe_rate(report.comparisons, report.dispatches);
  report.weighted_cost =
      static_cast<double>(report.indirect_mispredicts) * penalties.indirect_miss +
      static_cast<double>(report.cond_mispredicts) * penalties.cond_miss +
      static_cast<double>(report.comparisons) * penalties.compare;
  return report;
}

// One row of the plan comparison: clustering shape plus simulated branch
// behavior, aggregated over all traces.
struct CompareRow {
  ClusterParams params;
  std::size_t cluster_count = 0;
  std::size_t table_count = 0;
  std::uint64_t table_bytes = 0;
  std::uint32_t tree_depth = 0;
  std::uint64_t indirect_executions = 0;
  std::uint64_t indirect_mispredicts = 0;
  std::uint64_t cond_executions = 0;
  std::uint64_t cond_mispredicts = 0;
  double indirect_mispredict_rate = 0.0;
  double cond_mispredict_rate = 0.0;
  double mean_comparisons = 0.0;
  double weighted_cost = 0.0;
};

inline std::vector<CompareRow> compare_plans(
    const CaseSet& cases, const std::vector<Trace>& traces,
    const std::vector<ClusterParams>& params_list, const PredictorModel& model,
    const Penalties& penalties = {}, std::uint32_t entry_width_bytes = 4) {
  std::vector<CompareRow> rows;
  rows.reserve(params_list.size());
  for (const ClusterParams& params : params_list) {
    const Partition partition = cluster_windowed(cases, params);
    const LoweringPlan plan = build_plan(cases, partition, entry_width_bytes);

    CompareRow row;
    row.params = params;
    row.cluster_count = partition.cluster_count();
    row.table_count = plan.totals.table_count;
    row.table_bytes = plan.totals.table_bytes;
    row.tree_depth = plan.totals.tree_depth;

    std::uint64_t comparisons = 0;
    std::uint64_t dispatches = 0;
    for (const Trace& trace : traces) {
      const SimReport report = simulate(plan, trace, model, penalties);
      row.indirect_executions += report.indirect_executions;
      row.indirect_mispredicts += report.indirect_mispredicts;
      row.cond_executions += report.cond_executions;
      row.cond_mispredicts += report.cond_mispredicts;
      row.weighted_cost += report.weighted_cost;
      comparisons += report.comparisons;
      dispatches += report.dispatches;
    }
    row.indirect_mispredict_rate =
        detail::safe_rate(row.indirect_mispredicts, row.indirect_executions);
    row.cond_mispredict_rate =
        detail::safe_rate(row.cond_mispredicts, row.cond_executions);
    row.mean_comparisons = detail::safe_rate(comparisons, dispatches);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jtplan
