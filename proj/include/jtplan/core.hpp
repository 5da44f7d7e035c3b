#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "jtplan/fraction.hpp"

namespace jtplan {

// Thrown when an input exceeds a guard limit of an algorithm that is
// deliberately expensive (the exhaustive oracle, the quadratic baseline).
class size_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted, deduplicated switch case values. Construction rejects unsorted or
// duplicated input instead of fixing it; ingestion is responsible for cleanup.
class CaseSet {
 public:
  explicit CaseSet(std::vector<std::int64_t> values) : values_(std::move(values)) {
    if (values_.empty())
      throw std::invalid_argument("case set: at least one case value required");
    for (std::size_t k = 0; k + 1 < values_.size(); ++k) {
      if (values_[k] == values_[k + 1])
        throw std::invalid_argument("case set: duplicate value " +
                                    std::to_string(values_[k]));
      if (values_[k] > values_[k + 1])
        throw std::invalid_argument("case set: values not in ascending order");
    }
  }

  std::size_t size() const { return values_.size(); }
  std::int64_t operator[](std::size_t k) const { return values_[k]; }
  const std::vector<std::int64_t>& values() const { return values_; }
  std::int64_t min_value() const { return values_.front(); }
  std::int64_t max_value() const { return values_.back(); }

  // values[j] - values[i] as an unsigned 64-bit distance; exact for any
  // ordered pair of signed 64-bit values.
  std::uint64_t distance(std::size_t i, std::size_t j) const {
    assert(i <= j && j < values_.size());
    return static_cast<std::uint64_t>(values_[j]) -
           static_cast<std::uint64_t>(values_[i]);
  }

  friend bool operator==(const CaseSet& a, const CaseSet& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<std::int64_t> values_;
};

// Clustering thresholds. The two mode flags select between the corrected
// predicate (default) and the literal classical form:
//   - paper_literal_range: bound values[hi]-values[lo] by max_entries instead
//     of the actual entry count values[hi]-values[lo]+1.
//   - strict_density: require D < d(i,j) instead of D <= d(i,j); under the
//     strict form D = 1 can never be met, not even by a fully dense table.
struct ClusterParams {
  Fraction density_min{2, 5};
  std::uint64_t max_entries = 64;
  bool strict_density = false;
  bool paper_literal_range = false;

  void validate() const {
    if (density_min.den == 0 || density_min.num == 0 ||
        density_min.num > density_min.den)
      throw std::invalid_argument("cluster params: density must be in (0, 1]");
    if (density_min.den > (std::uint64_t{1} << 32))
      throw std::invalid_argument(
          "cluster params: density denominator above 2^32 is not supported");
    if (max_entries == 0)
      throw std::invalid_argument("cluster params: max_entries must be >= 1");
  }

  friend bool operator==(const ClusterParams&, const ClusterParams&) = default;
};

// Closed range of case indices lowered as one cluster.
struct IndexRange {
  std::size_t lo = 0;
  std::size_t hi = 0;

  bool is_singleton() const { return lo == hi; }
  std::size_t count() const { return hi - lo + 1; }

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// Ordered, exhaustive, non-overlapping cover of [0, n-1] by index ranges.
struct Partition {
  std::vector<IndexRange> ranges;

  std::size_t cluster_count() const { return ranges.size(); }

  friend bool operator==(const Partition&, const Partition&) = default;
};

// d(i, j) = (j-i+1) / (values[j]-values[i]+1), exact. Always in (0, 1]; equals
// one exactly when values[i..j] are consecutive integers.
inline Fraction density(const CaseSet& cases, std::size_t i, std::size_t j) {
  if (j >= cases.size() || i > j)
    throw std::out_of_range("density: indices must satisfy 0 <= i <= j < n");
  const std::uint64_t dist = cases.distance(i, j);
  if (dist == std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("density: value span does not fit in 64 bits");
  return Fraction{j - i + 1, dist + 1}.reduced();
}

namespace detail {

// Size half of the cluster predicate for a multi-element range.
inline bool range_fits(const CaseSet& cases, std::size_t i, std::size_t j,
                       const ClusterParams& params) {
  const std::uint64_t dist = cases.distance(i, j);
  if (params.paper_literal_range)
    return dist <= params.max_entries;
  // Entry count dist+1 <= max_entries, written without the +1 overflow.
  return dist <= params.max_entries - 1;
}

// Density half: d(i,j) >= D, or strictly greater in strict mode. Compared as
// count * D.den vs span * D.num; both sides fit 128 bits because D.den is
// capped at 2^32.
inline bool range_dense(const CaseSet& cases, std::size_t i, std::size_t j,
                        const ClusterParams& params) {
  const std::uint64_t dist = cases.distance(i, j);
  const unsigned __int128 lhs =
      static_cast<unsigned __int128>(j - i + 1) * params.density_min.den;
  const unsigned __int128 rhs =
      (static_cast<unsigned __int128>(dist) + 1) * params.density_min.num;
  return params.strict_density ? lhs > rhs : lhs >= rhs;
}

}  // namespace detail

// Whether [i, j] may be lowered as one cluster. Singletons are always
// admissible: they lower to a compare-and-branch, not a table.
inline bool cluster_admissible(const CaseSet& cases, std::size_t i,
                               std::size_t j, const ClusterParams& params) {
  if (i == j)
    return true;
  return detail::range_fits(cases, i, j, params) &&
         detail::range_dense(cases, i, j, params);
}

// Minimum-cluster partition via the windowed dynamic program.
//
// min_parts[i] is the minimum number of clusters covering cases [i, n-1], and
// last_element[i] the end of the first cluster of one such optimum. Because
// case values are strictly ascending, values[j]-values[i] >= j-i, so any range
// wider than the size bound already fails the predicate; the inner scan
// therefore only needs to look at most max_entries positions ahead, bounding
// the pass to O(n * max_entries) after the sort.
//
// The scan runs j downward with a strict improvement test, which fixes
// tie-breaking: among window candidates with equal cluster counts the widest
// wins, and the standalone-singleton baseline is kept when no candidate
// strictly beats it.
inline Partition cluster_windowed(const CaseSet& cases,
                                  const ClusterParams& params) {
  params.validate();
  const std::size_t n = cases.size();
  std::vector<std::size_t> min_parts(n);
  std::vector<std::size_t> last_element(n);

  min_parts[n - 1] = 1;
  last_element[n - 1] = n - 1;

  const std::uint64_t window =
      params.paper_literal_range ? params.max_entries : params.max_entries - 1;

  for (std::size_t i = n - 1; i-- > 0;) {
    // Baseline: cases[i] forms a cluster on its own.
    min_parts[i] = 1 + min_parts[i + 1];
    last_element[i] = i;

    const std::size_t j_max =
        window >= n - 1 - i ? n - 1 : i + static_cast<std::size_t>(window);
    for (std::size_t j = j_max; j > i; --j) {
      if (!cluster_admissible(cases, i, j, params))
        continue;
      const std::size_t num_parts = j == n - 1 ? 1 : 1 + min_parts[j + 1];
      if (num_parts < min_parts[i]) {
        min_parts[i] = num_parts;
        last_element[i] = j;
      }
    }
  }

  Partition out;
  out.ranges.reserve(min_parts[0]);
  for (std::size_t i = 0; i < n; i = last_element[i] + 1)
    out.ranges.push_back({i, last_element[i]});
  assert(out.ranges.size() == min_parts[0]);
  return out;
}

// The same recurrence without the window: every j in (i, n-1] is scanned,
// making the pass quadratic. Kept as a validation baseline for the windowed
// version, so it refuses oversized inputs rather than silently taking hours.
inline Partition cluster_quadratic(const CaseSet& cases,
                                   const ClusterParams& params,
                                   std::size_t size_limit = 50000) {
  params.validate();
  const std::size_t n = cases.size();
  if (n > size_limit)
    throw size_limit_error("cluster_quadratic: input of " + std::to_string(n) +
                           " cases exceeds the size limit of " +
                           std::to_string(size_limit));

  std::vector<std::size_t> min_parts(n);
  std::vector<std::size_t> last_element(n);

  min_parts[n - 1] = 1;
  last_element[n - 1] = n - 1;

  for (std::size_t i = n - 1; i-- > 0;) {
    min_parts[i] = 1 + min_parts[i + 1];
    last_element[i] = i;

    for (std::size_t j = n - 1; j > i; --j) {
      if (!cluster_admissible(cases, i, j, params))
        continue;
      const std::size_t num_parts = j == n - 1 ? 1 : 1 + min_parts[j + 1];
      if (num_parts < min_parts[i]) {
        min_parts[i] = num_parts;
        last_element[i] = j;
      }
    }
  }

  Partition out;
  out.ranges.reserve(min_parts[0]);
  for (std::size_t i = 0; i < n; i = last_element[i] + 1)
    out.ranges.push_back({i, last_element[i]});
  return out;
}

struct OracleResult {
  std::size_t min_clusters = 0;
  Partition witness;
};

// Exhaustive minimum over all 2^(n-1) contiguous partitions. This is the
// ground truth the dynamic programs are checked against, so it shares none of
// their machinery; n is capped hard because the search is exponential.
inline OracleResult cluster_oracle(const CaseSet& cases,
                                   const ClusterParams& params) {
  params.validate();
  const std::size_t n = cases.size();
  if (n > 20)
    throw size_limit_error("cluster_oracle: refusing n > 20 (got " +
                           std::to_string(n) + ")");

  // Precompute admissibility of every index pair once.
  std::vector<bool> admissible(n * n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      admissible[i * n + j] = cluster_admissible(cases, i, j, params);

  // Bit k of a mask set means the partition breaks between index k and k+1.
  const std::uint32_t boundary_bits = static_cast<std::uint32_t>(n - 1);
  OracleResult best;
  best.min_clusters = n + 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << boundary_bits);
       ++mask) {
    const std::size_t count =
        static_cast<std::size_t>(__builtin_popcountll(mask)) + 1;
    if (count >= best.min_clusters)
      continue;
    Partition candidate;
    candidate.ranges.reserve(count);
    bool ok = true;
    std::size_t lo = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const bool boundary = k == n - 1 || ((mask >> k) & 1);
      if (!boundary)
        continue;
      if (!admissible[lo * n + k]) {
        ok = false;
        break;
      }
      candidate.ranges.push_back({lo, k});
      lo = k + 1;
    }
    if (ok) {
      best.min_clusters = count;
      best.witness = std::move(candidate);
      if (count == 1)
        break;
    }
  }
  assert(best.min_clusters <= n);
  return best;
}

// One rule the partition breaks. Violations are data, not errors: callers
// decide what to do with them.
struct Violation {
  enum class Kind { coverage, overlap, order, bounds, size, density };
  Kind kind;
  std::size_t range_index;
  std::string message;
};

// Structural checks only: bounds, ordering, contiguity, exhaustive cover.
inline std::vector<Violation> validate_structure(const CaseSet& cases,
                                                 const Partition& p) {
  using Kind = Violation::Kind;
  const std::size_t n = cases.size();
  std::vector<Violation> out;
  if (p.ranges.empty()) {
    out.push_back({Kind::coverage, 0, "partition has no ranges"});
    return out;
  }
  for (std::size_t k = 0; k < p.ranges.size(); ++k) {
    const IndexRange& r = p.ranges[k];
    if (r.lo > r.hi)
      out.push_back({Kind::order, k,
                     "range " + std::to_string(k) + " has lo > hi"});
    if (r.hi >= n)
      out.push_back({Kind::bounds, k,
                     "range " + std::to_string(k) + " ends past index " +
                         std::to_string(n - 1)});
  }
  if (!out.empty())
    return out;  // remaining checks assume well-formed individual ranges
  if (p.ranges.front().lo != 0)
    out.push_back({Kind::coverage, 0, "first range does not start at index 0"});
  for (std::size_t k = 0; k + 1 < p.ranges.size(); ++k) {
    const std::size_t expect = p.ranges[k].hi + 1;
    const std::size_t got = p.ranges[k + 1].lo;
    if (got > expect)
      out.push_back({Kind::coverage, k + 1,
                     "gap before range " + std::to_string(k + 1) + ": indices [" +
                         std::to_string(expect) + ", " + std::to_string(got - 1) +
                         "] uncovered"});
    else if (got < expect)
      out.push_back({Kind::overlap, k + 1,
                     "range " + std::to_string(k + 1) + " overlaps range " +
                         std::to_string(k)});
  }
  if (p.ranges.back().hi != n - 1)
    out.push_back({Kind::coverage, p.ranges.size() - 1,
                   "last range ends at index " +
                       std::to_string(p.ranges.back().hi) + ", expected " +
                       std::to_string(n - 1)});
  return out;
}

// Structural checks plus the size and density predicate on every
// multi-element range. Size and density are reported independently.
inline std::vector<Violation> validate_partition(const CaseSet& cases,
                                                 const ClusterParams& params,
                                                 const Partition& p) {
  using Kind = Violation::Kind;
  params.validate();
  std::vector<Violation> out = validate_structure(cases, p);
  for (std::size_t k = 0; k < p.ranges.size(); ++k) {
    const IndexRange& r = p.ranges[k];
    if (r.lo >= r.hi || r.hi >= cases.size())
      continue;
    if (!detail::range_fits(cases, r.lo, r.hi, params))
      out.push_back({Kind::size, k,
                     "range " + std::to_string(k) + " spans " +
                         std::to_string(cases.distance(r.lo, r.hi)) +
                         "+1 entries, over max " +
                         std::to_string(params.max_entries)});
    if (!detail::range_dense(cases, r.lo, r.hi, params))
      out.push_back({Kind::density, k,
                     "range " + std::to_string(k) + " has density " +
                         density(cases, r.lo, r.hi).to_string() +
                         ", below threshold " +
                         params.density_min.to_string()});
  }
  return out;
}

enum class ClusterKind { singleton, table };

// Per-cluster shape report: how many cases, how wide the value span is, and
// the exact occupancy fraction of the table the cluster would become.
struct ClusterStats {
  std::size_t count = 0;
  std::uint64_t span = 0;
  Fraction density{0, 1};
  ClusterKind kind = ClusterKind::singleton;
};

inline std::vector<ClusterStats> cluster_stats(const CaseSet& cases,
                                               const Partition& p) {
  const std::vector<Violation> broken = validate_structure(cases, p);
  if (!broken.empty())
    throw std::invalid_argument("cluster_stats: invalid partition: " +
                                broken.front().message);
  std::vector<ClusterStats> out;
  out.reserve(p.ranges.size());
  for (const IndexRange& r : p.ranges) {
    const std::uint64_t dist = cases.distance(r.lo, r.hi);
    if (dist == std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("cluster_stats: value span does not fit in 64 bits");
    out.push_back({r.count(), dist + 1, density(cases, r.lo, r.hi),
                   r.is_singleton() ? ClusterKind::singleton
                                    : ClusterKind::table});
  }
  return out;
}

}  // namespace jtplan
