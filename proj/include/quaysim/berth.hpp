#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "quaysim/errors.hpp"
#include "quaysim/sim_time.hpp"
#include "quaysim/vessel.hpp"

namespace quaysim {

// A space-time rectangle on the quay: [position, position + length) for
// [berth_time, depart_time). depart_time stays open until the vessel leaves.
struct BerthAssignment {
  int vessel_id = 0;
  long long position_m = 0;
  long long length_m = 0;
  SimTime berth_time = 0;
  std::optional<SimTime> depart_time;

  friend bool operator==(const BerthAssignment&, const BerthAssignment&) = default;
};

struct BerthPlan {
  std::vector<BerthAssignment> assignments;
};

struct PlanViolation {
  enum class Kind { Overlap, OutOfBounds };
  Kind kind = Kind::Overlap;
  int vessel_a = 0;
  int vessel_b = 0;  // equals vessel_a for OutOfBounds
  SimTime overlap_start = 0;
  std::optional<SimTime> overlap_end;  // open when both assignments are open

  friend bool operator==(const PlanViolation&, const PlanViolation&) = default;
};

// Checks boundary containment and pairwise space-time disjointness. All
// intervals are half-open, so touching assignments do not conflict.
// Violations are data, not failures.
inline std::vector<PlanViolation> validate_plan(const BerthPlan& plan, const QuayLayout& quay) {
  std::vector<PlanViolation> out;
  const auto& as = plan.assignments;
  for (const auto& a : as) {
    if (a.position_m < 0 || a.position_m + a.length_m > quay.length_m)
      out.push_back({PlanViolation::Kind::OutOfBounds, a.vessel_id, a.vessel_id, a.berth_time,
                     a.depart_time});
  }
  for (std::size_t i = 0; i < as.size(); ++i) {
    for (std::size_t j = i + 1; j < as.size(); ++j) {
      const auto& a = as[i];
      const auto& b = as[j];
      bool space = a.position_m < b.position_m + b.length_m && b.position_m < a.position_m + a.length_m;
      if (!space) continue;
      SimTime start = std::max(a.berth_time, b.berth_time);
      std::optional<SimTime> end;
      if (a.depart_time && b.depart_time)
        end = std::min(*a.depart_time, *b.depart_time);
      else if (a.depart_time)
        end = *a.depart_time;
      else if (b.depart_time)
        end = *b.depart_time;
      bool time = !end || start < *end;
      if (time) out.push_back({PlanViolation::Kind::Overlap, a.vessel_id, b.vessel_id, start, end});
    }
  }
  return out;
}

// Lays the recorded week onto the quay without simulating: each vessel
// occupies [op_start, op_end) at its recorded position, else first-fit
// against the vessels already placed. When nothing fits the vessel is
// placed at 0 anyway so validate_plan can report the conflict.
inline BerthPlan build_recorded_plan(std::vector<VesselCall> vessels, const QuayLayout& quay) {
  std::sort(vessels.begin(), vessels.end(), [](const VesselCall& a, const VesselCall& b) {
    return std::tie(*a.recorded_op_start, a.id) < std::tie(*b.recorded_op_start, b.id);
  });
  BerthPlan plan;
  for (const auto& v : vessels) {
    SimTime from = *v.recorded_op_start;
    SimTime to = *v.recorded_op_end;
    std::vector<std::pair<long long, long long>> occupied;
    for (const auto& a : plan.assignments)
      if (a.berth_time < to && from < *a.depart_time)
        occupied.emplace_back(a.position_m, a.position_m + a.length_m);
    std::sort(occupied.begin(), occupied.end());

    long long position = 0;
    if (v.recorded_berth_pos_m) {
      position = *v.recorded_berth_pos_m;
    } else {
      long long cursor = 0;
      bool found = false;
      for (const auto& [lo, hi] : occupied) {
        if (lo - cursor >= v.length_m) {
          found = true;
          break;
        }
        cursor = std::max(cursor, hi);
      }
      if (found || quay.length_m - cursor >= v.length_m) position = cursor;
    }
    plan.assignments.push_back({v.id, position, v.length_m, from, to});
  }
  return plan;
}

// FCFS berth planning on a one-dimensional quay. Vessels queue in
// (ready, id) order; the head berths at the lowest feasible position.
// Under strict FCFS a blocked head blocks everyone behind it.
class BerthAllocator {
 public:
  struct Waiting {
    int vessel_id = 0;
    long long length_m = 0;
    SimTime ready = 0;
    std::optional<long long> pinned_pos;  // recorded berth position, honored when free
  };

  explicit BerthAllocator(QuayLayout quay, bool allow_overtake = false)
      : quay_(quay), allow_overtake_(allow_overtake) {}

  const QuayLayout& quay() const { return quay_; }
  const std::vector<Waiting>& waiting() const { return waiting_; }
  const std::vector<BerthAssignment>& active() const { return active_; }

  // Full plan: closed assignments first, then the still-open ones.
  BerthPlan plan() const {
    BerthPlan p;
    p.assignments = closed_;
    p.assignments.insert(p.assignments.end(), active_.begin(), active_.end());
    return p;
  }

  void enqueue(const VesselCall& vessel, SimTime ready) {
    if (vessel.length_m > quay_.length_m)
      throw VesselLongerThanQuay("ship " + std::to_string(vessel.id));
    Waiting w{vessel.id, vessel.length_m, ready, vessel.recorded_berth_pos_m};
    auto it = std::upper_bound(waiting_.begin(), waiting_.end(), w,
                               [](const Waiting& a, const Waiting& b) {
                                 return std::tie(a.ready, a.vessel_id) <
                                        std::tie(b.ready, b.vessel_id);
                               });
    waiting_.insert(it, w);
  }

  // Lowest feasible start position for a vessel of the given length, or
  // absent if the active assignments leave no gap.
  std::optional<long long> first_fit(long long length_m) const {
    std::vector<std::pair<long long, long long>> occupied;
    occupied.reserve(active_.size());
    for (const auto& a : active_) occupied.emplace_back(a.position_m, a.position_m + a.length_m);
    std::sort(occupied.begin(), occupied.end());
    long long cursor = 0;
    for (const auto& [from, to] : occupied) {
      if (from - cursor >= length_m) return cursor;
      cursor = std::max(cursor, to);
    }
    if (quay_.length_m - cursor >= length_m) return cursor;
    return std::nullopt;
  }

  bool fits_at(long long position_m, long long length_m) const {
    if (position_m < 0 || position_m + length_m > quay_.length_m) return false;
    for (const auto& a : active_)
      if (position_m < a.position_m + a.length_m && a.position_m < position_m + length_m)
        return false;
    return true;
  }

  // Single-vessel FCFS query: grants only if the vessel heads the queue
  // (and is ready) and a gap exists. Queue order is never bypassed unless
  // overtaking was enabled.
  std::optional<BerthAssignment> request_berth(int vessel_id, SimTime now) {
    for (std::size_t i = 0; i < waiting_.size(); ++i) {
      if (waiting_[i].ready > now) break;
      if (waiting_[i].vessel_id == vessel_id) {
        if (i > 0 && !allow_overtake_) return std::nullopt;
        auto pos = feasible_position(waiting_[i]);
        if (!pos) return std::nullopt;
        BerthAssignment a{vessel_id, *pos, waiting_[i].length_m, now, std::nullopt};
        active_.push_back(a);
        waiting_.erase(waiting_.begin() + static_cast<std::ptrdiff_t>(i));
        return a;
      }
      if (!allow_overtake_) return std::nullopt;
    }
    return std::nullopt;
  }

  // Grants every vessel the FCFS discipline allows at `now`, in order.
  std::vector<BerthAssignment> grant_feasible(SimTime now) {
    std::vector<BerthAssignment> granted;
    std::size_t i = 0;
    while (i < waiting_.size()) {
      if (waiting_[i].ready > now) break;
      auto pos = feasible_position(waiting_[i]);
      if (pos) {
        BerthAssignment a{waiting_[i].vessel_id, *pos, waiting_[i].length_m, now, std::nullopt};
        active_.push_back(a);
        granted.push_back(a);
        waiting_.erase(waiting_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;  // new head may fit now
      }
      if (!allow_overtake_) break;  // head-of-line blocking
      ++i;
    }
    return granted;
  }

  BerthAssignment release_berth(int vessel_id, SimTime now) {
    auto it = std::find_if(active_.begin(), active_.end(),
                           [&](const BerthAssignment& a) { return a.vessel_id == vessel_id; });
    if (it == active_.end())
      throw NotBerthed("ship " + std::to_string(vessel_id) + " at t=" + std::to_string(now));
    it->depart_time = now;
    BerthAssignment closed = *it;
    closed_.push_back(closed);
    active_.erase(it);
    return closed;
  }

  std::optional<BerthAssignment> assignment_of(int vessel_id) const {
    auto it = std::find_if(active_.begin(), active_.end(),
                           [&](const BerthAssignment& a) { return a.vessel_id == vessel_id; });
    if (it == active_.end()) return std::nullopt;
    return *it;
  }

 private:
  std::optional<long long> feasible_position(const Waiting& w) const {
    if (w.pinned_pos) {
      if (fits_at(*w.pinned_pos, w.length_m)) return w.pinned_pos;
      return std::nullopt;
    }
    return first_fit(w.length_m);
  }

  QuayLayout quay_;
  bool allow_overtake_ = false;
  std::vector<Waiting> waiting_;
  std::vector<BerthAssignment> active_;
  std::vector<BerthAssignment> closed_;
};

}  // namespace quaysim
