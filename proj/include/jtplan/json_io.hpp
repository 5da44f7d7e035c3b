#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "jtplan/core.hpp"
#include "jtplan/layout.hpp"
#include "jtplan/predictor.hpp"

// Serialized shapes for the file formats this toolkit reads and writes. Key
// order is fixed (insertion order) so golden outputs are stable; the schemas/
// directory in the repo documents the same shapes.

namespace jtplan {

using ordered_json = nlohmann::ordered_json;

inline ordered_json params_to_json(const ClusterParams& params) {
  ordered_json j;
  j["density"] = params.density_min.to_string();
  j["max"] = params.max_entries;
  j["strict_density"] = params.strict_density;
  j["paper_literal_range"] = params.paper_literal_range;
  return j;
}

inline ordered_json cases_to_json(const CaseSet& cases) {
  ordered_json j;
  j["cases"] = cases.values();
  return j;
}

inline ordered_json trace_to_json(const Trace& trace) {
  ordered_json j;
  j["selectors"] = trace.selectors;
  return j;
}

inline ordered_json stats_to_json(const IndexRange& range,
                                  const ClusterStats& stats) {
  ordered_json j;
  j["lo"] = range.lo;
  j["hi"] = range.hi;
  j["count"] = stats.count;
  j["span"] = stats.span;
  j["density"] = stats.density.to_string();
  j["density_value"] = stats.density.to_double();
  j["kind"] = stats.kind == ClusterKind::singleton ? "singleton" : "table";
  return j;
}

// The `cluster` command payload: params echo, ranges, per-cluster stats.
inline ordered_json partition_to_json(const CaseSet& cases,
                                      const ClusterParams& params,
                                      const Partition& partition) {
  const std::vector<ClusterStats> stats = cluster_stats(cases, partition);
  ordered_json j;
  j["params"] = params_to_json(params);
  j["case_count"] = cases.size();
  j["cluster_count"] = partition.cluster_count();
  ordered_json ranges = ordered_json::array();
  ordered_json clusters = ordered_json::array();
  for (std::size_t k = 0; k < partition.ranges.size(); ++k) {
    ranges.push_back({partition.ranges[k].lo, partition.ranges[k].hi});
    clusters.push_back(stats_to_json(partition.ranges[k], stats[k]));
  }
  j["ranges"] = std::move(ranges);
  j["clusters"] = std::move(clusters);
  return j;
}

namespace detail {

inline ordered_json tree_to_json(const LoweringPlan& plan, std::int32_t at) {
  const DispatchNode& node = plan.nodes[static_cast<std::size_t>(at)];
  ordered_json j;
  if (node.is_leaf()) {
    if (node.table >= 0)
      j["table"] = node.table;
    else
      j["singleton"] = node.singleton;
    return j;
  }
  j["pivot"] = node.pivot;
  j["left"] = tree_to_json(plan, node.left);
  j["right"] = tree_to_json(plan, node.right);
  return j;
}

inline std::int32_t tree_from_json(const nlohmann::json& j,
                                   LoweringPlan& plan) {
  DispatchNode node;
  if (j.contains("table")) {
    node.table = j.at("table").get<std::int32_t>();
    if (node.table < 0 ||
        static_cast<std::size_t>(node.table) >= plan.tables.size())
      throw std::invalid_argument("plan: tree leaf names a missing table");
  } else if (j.contains("singleton")) {
    node.singleton = j.at("singleton").get<std::int32_t>();
    if (node.singleton < 0 ||
        static_cast<std::size_t>(node.singleton) >= plan.singletons.size())
      throw std::invalid_argument("plan: tree leaf names a missing singleton");
  } else {
    node.pivot = j.at("pivot").get<std::int64_t>();
    node.left = tree_from_json(j.at("left"), plan);
    node.right = tree_from_json(j.at("right"), plan);
  }
  plan.nodes.push_back(node);
  return static_cast<std::int32_t>(plan.nodes.size() - 1);
}

}  // namespace detail

inline ordered_json plan_to_json(const LoweringPlan& plan) {
  ordered_json j;
  ordered_json tables = ordered_json::array();
  for (const JumpTable& table : plan.tables) {
    ordered_json t;
    t["base"] = table.base;
    t["entries"] = table.entries;
    tables.push_back(std::move(t));
  }
  j["tables"] = std::move(tables);
  ordered_json singletons = ordered_json::array();
  for (const SingletonCase& s : plan.singletons)
    singletons.push_back({s.value, s.label});
  j["singletons"] = std::move(singletons);
  j["tree"] = detail::tree_to_json(plan, plan.root);
  ordered_json totals;
  totals["table_bytes"] = plan.totals.table_bytes;
  totals["tree_depth"] = plan.totals.tree_depth;
  totals["table_count"] = plan.totals.table_count;
  totals["entry_width_bytes"] = plan.totals.entry_width_bytes;
  j["totals"] = std::move(totals);
  return j;
}

// Rebuilds a plan from its serialized form. Occupancy and totals are
// recomputed from the parts; only the entry width is taken from the file.
inline LoweringPlan plan_from_json(const nlohmann::json& j) {
  LoweringPlan plan;
  if (!j.is_object() || !j.contains("tables") || !j.contains("singletons") ||
      !j.contains("tree"))
    throw std::invalid_argument(
        "plan: expected an object with tables, singletons and tree");
  for (const auto& t : j.at("tables")) {
    JumpTable table;
    table.base = t.at("base").get<std::int64_t>();
    table.entries = t.at("entries").get<std::vector<std::int32_t>>();
    if (table.entries.empty())
      throw std::invalid_argument("plan: table with no entries");
    for (const std::int32_t e : table.entries)
      if (e != kDefaultTarget)
        ++table.occupancy;
    plan.tables.push_back(std::move(table));
  }
  for (const auto& s : j.at("singletons")) {
    if (!s.is_array() || s.size() != 2)
      throw std::invalid_argument("plan: singleton entries are [value, label]");
    plan.singletons.push_back(
        {s.at(0).get<std::int64_t>(), s.at(1).get<std::int32_t>()});
  }
  plan.root = detail::tree_from_json(j.at("tree"), plan);
  if (j.contains("totals") && j.at("totals").contains("entry_width_bytes"))
    plan.totals.entry_width_bytes =
        j.at("totals").at("entry_width_bytes").get<std::uint32_t>();
  for (const JumpTable& table : plan.tables)
    plan.totals.table_bytes +=
        table.entries.size() * plan.totals.entry_width_bytes;
  plan.totals.table_count = static_cast<std::uint32_t>(plan.tables.size());
  plan.totals.tree_depth = detail::tree_depth(plan.nodes, plan.root);
  return plan;
}

inline ordered_json model_to_json(const PredictorModel& model) {
  ordered_json j;
  j["kind"] = model.kind == PredictorModel::Kind::last_target ? "last_target"
                                                              : "capacity_k";
  j["k"] = model.capacity();
  j["cond_model"] =
      model.cond_model == PredictorModel::CondModel::always_correct
          ? "always_correct"
          : "bimodal_2bit";
  return j;
}

inline ordered_json report_to_json(const SimReport& report,
                                   const PredictorModel& model,
                                   const Penalties& penalties) {
  ordered_json j;
  j["model"] = model_to_json(model);
  ordered_json pen;
  pen["indirect_miss"] = penalties.indirect_miss;
  pen["cond_miss"] = penalties.cond_miss;
  pen["compare"] = penalties.compare;
  j["penalties"] = std::move(pen);
  j["dispatches"] = report.dispatches;
  ordered_json indirect = ordered_json::array();
  for (std::size_t t = 0; t < report.indirect.size(); ++t) {
    ordered_json b;
    b["table"] = t;
    b["executions"] = report.indirect[t].executions;
    b["mispredicts"] = report.indirect[t].mispredicts;
    b["cold_targets"] = report.indirect[t].cold_targets;
    indirect.push_back(std::move(b));
  }
  j["indirect_branches"] = std::move(indirect);
  ordered_json conditional = ordered_json::array();
  for (std::size_t c = 0; c < report.conditional.size(); ++c) {
    ordered_json b;
    b["node"] = c;
    b["executions"] = report.conditional[c].executions;
    b["mispredicts"] = report.conditional[c].mispredicts;
    conditional.push_back(std::move(b));
  }
  j["conditional_branches"] = std::move(conditional);
  ordered_json totals;
  totals["indirect_executions"] = report.indirect_executions;
  totals["indirect_mispredicts"] = report.indirect_mispredicts;
  totals["indirect_mispredict_rate"] = report.indirect_mispredict_rate;
  totals["cond_executions"] = report.cond_executions;
  totals["cond_mispredicts"] = report.cond_mispredicts;
  totals["cond_mispredict_rate"] = report.cond_mispredict_rate;
  totals["mean_comparisons"] = report.mean_comparisons;
  totals["weighted_cost"] = report.weighted_cost;
  j["totals"] = std::move(totals);
  return j;
}

inline ordered_json compare_row_to_json(const CompareRow& row) {
  ordered_json j;
  j["params"] = params_to_json(row.params);
  j["cluster_count"] = row.cluster_count;
  j["table_count"] = row.table_count;
  j["table_bytes"] = row.table_bytes;
  j["tree_depth"] = row.tree_depth;
  j["indirect_executions"] = row.indirect_executions;
  j["indirect_mispredicts"] = row.indirect_mispredicts;
  j["indirect_mispredict_rate"] = row.indirect_mispredict_rate;
  j["cond_executions"] = row.cond_executions;
  j["cond_mispredicts"] = row.cond_mispredicts;
  j["cond_mispredict_rate"] = row.cond_mispredict_rate;
  j["mean_comparisons"] = row.mean_comparisons;
  j["weighted_cost"] = row.weighted_cost;
  return j;
}

inline ordered_json compare_rows_to_json(const std::vector<CompareRow>& rows) {
  ordered_json j;
  ordered_json arr = ordered_json::array();
  for (const CompareRow& row : rows)
    arr.push_back(compare_row_to_json(row));
  j["rows"] = std::move(arr);
  return j;
}

inline std::string compare_rows_to_csv(const std::vector<CompareRow>& rows) {
  std::string out =
      "density,max,strict_density,paper_literal_range,cluster_count,"
      "table_count,table_bytes,tree_depth,indirect_executions,"
      "indirect_mispredicts,indirect_mispredict_rate,cond_executions,"
      "cond_mispredicts,cond_mispredict_rate,mean_comparisons,weighted_cost\n";
  for (const CompareRow& row : rows) {
    out += row.params.density_min.to_string();
    out += ',' + std::to_string(row.params.max_entries);
    out += ',' + std::to_string(row.params.strict_density ? 1 : 0);
    out += ',' + std::to_string(row.params.paper_literal_range ? 1 : 0);
    out += ',' + std::to_string(row.cluster_count);
    out += ',' + std::to_string(row.table_count);
    out += ',' + std::to_string(row.table_bytes);
    out += ',' + std::to_string(row.tree_depth);
    out += ',' + std::to_string(row.indirect_executions);
    out += ',' + std::to_string(row.indirect_mispredicts);
    out += ',' + std::to_string(row.indirect_mispredict_rate);
    out += ',' + std::to_string(row.cond_executions);
    out += ',' + std::to_string(row.cond_mispredicts);
    out += ',' + std::to_string(row.cond_mispredict_rate);
    out += ',' + std::to_string(row.mean_comparisons);
    out += ',' + std::to_string(row.weighted_cost);
    out += '\n';
  }
  return out;
}

}  // namespace jtplan
