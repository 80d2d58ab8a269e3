#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "quaysim/berth.hpp"
#include "quaysim/errors.hpp"
#include "quaysim/rational.hpp"
#include "quaysim/scenario_config.hpp"
#include "quaysim/sim_time.hpp"
#include "quaysim/vessel.hpp"

namespace quaysim {

// A quay crane bound to one vessel over a half-open time interval. Crane
// indices follow the rail: lower index = lower quay position.
struct CraneAssignment {
  int crane_index = 0;
  int vessel_id = 0;
  SimTime from = 0;
  std::optional<SimTime> to;

  friend bool operator==(const CraneAssignment&, const CraneAssignment&) = default;
};

struct BerthedVesselWork {
  int vessel_id = 0;
  long long position_m = 0;
  long long remaining_moves = 0;
};

namespace detail {

// Per-vessel crane demand: one crane per `moves_per_crane_threshold` moves,
// at least 1, at most `max_cranes_per_vessel`.
inline long long crane_demand(long long remaining_moves, const ServiceParams& params) {
  long long want = (remaining_moves + params.moves_per_crane_threshold - 1) /
                   params.moves_per_crane_threshold;
  return std::clamp<long long>(want, 1, params.max_cranes_per_vessel);
}

// Largest-remainder scaling of demands onto `capacity` cranes. Exact
// integer arithmetic; ties go to the lower list index.
inline std::vector<long long> scale_demands(const std::vector<long long>& demands,
                                            long long capacity) {
  long long total = 0;
  for (long long d : demands) total += d;
  std::vector<long long> granted(demands.size(), 0);
  if (total <= capacity) return demands;

  std::vector<std::pair<long long, std::size_t>> remainders;  // (-remainder, index)
  long long used = 0;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    granted[i] = demands[i] * capacity / total;
    used += granted[i];
    remainders.emplace_back(-(demands[i] * capacity % total), i);
  }
  std::sort(remainders.begin(), remainders.end());
  for (std::size_t k = 0; used < capacity && k < remainders.size(); ++k, ++used)
    ++granted[remainders[k].second];
  return granted;
}

}  // namespace detail

// Deals cranes to berthed vessels as contiguous index blocks in quay
// position order, which makes the assignment non-crossing by construction.
inline std::vector<CraneAssignment> plan_crane_split(std::vector<BerthedVesselWork> berthed,
                                                     const ResourcePool& pool,
                                                     const ServiceParams& params, SimTime from) {
  if (berthed.empty()) return {};
  if (pool.capacity <= 0) throw NoCranesAvailable("quay crane pool is empty");

  std::sort(berthed.begin(), berthed.end(), [](const BerthedVesselWork& a,
                                               const BerthedVesselWork& b) {
    return std::tie(a.position_m, a.vessel_id) < std::tie(b.position_m, b.vessel_id);
  });

  std::vector<long long> demands;
  demands.reserve(berthed.size());
  for (const auto& w : berthed) demands.push_back(detail::crane_demand(w.remaining_moves, params));
  auto granted = detail::scale_demands(demands, pool.capacity);

  std::vector<CraneAssignment> out;
  int next_index = 0;
  for (std::size_t i = 0; i < berthed.size(); ++i)
    for (long long k = 0; k < granted[i]; ++k)
      out.push_back({next_index++, berthed[i].vessel_id, from, std::nullopt});
  return out;
}

// True iff crane index order agrees with vessel position order among the
// assignments active at `at`. An active assignment whose vessel is not
// berthed at `at` is a modelling error.
inline bool check_non_crossing(const std::vector<CraneAssignment>& assignments,
                               const BerthPlan& plan, SimTime at) {
  std::vector<std::pair<int, long long>> active;  // (crane_index, vessel position)
  for (const auto& ca : assignments) {
    if (ca.from > at || (ca.to && *ca.to <= at)) continue;
    std::optional<long long> position;
    for (const auto& ba : plan.assignments) {
      if (ba.vessel_id != ca.vessel_id) continue;
      if (ba.berth_time <= at && (!ba.depart_time || at < *ba.depart_time)) {
        position = ba.position_m;
        break;
      }
    }
    if (!position)
      throw UnknownVessel("ship " + std::to_string(ca.vessel_id) + " not berthed at t=" +
                          std::to_string(at));
    active.emplace_back(ca.crane_index, *position);
  }
  std::sort(active.begin(), active.end());
  for (std::size_t i = 1; i < active.size(); ++i) {
    if (active[i].first == active[i - 1].first) return false;  // one vessel per crane
    if (active[i].second < active[i - 1].second) return false;
  }
  return true;
}

// Closed-form service model: n cranes at `crane_rate` moves/min, discounted
// geometrically for interference between cranes on the same vessel.
inline Rational service_duration_aggregate(long long moves, int n_cranes,
                                           const ServiceParams& params) {
  if (moves == 0) return Rational{0};
  Rational speed = Rational{n_cranes} * params.crane_rate_moves_per_min *
                   pow(params.interference_alpha, n_cranes - 1);
  return Rational{moves} / speed;
}

}  // namespace quaysim
