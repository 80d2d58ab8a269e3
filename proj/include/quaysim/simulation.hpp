#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "quaysim/berth.hpp"
#include "quaysim/crane.hpp"
#include "quaysim/event_calendar.hpp"
#include "quaysim/errors.hpp"
#include "quaysim/rational.hpp"
#include "quaysim/scenario_config.hpp"
#include "quaysim/sim_time.hpp"
#include "quaysim/vessel.hpp"

namespace quaysim {

struct VesselOutcome {
  int vessel_id = 0;
  SimTime arrival = 0;
  std::optional<SimTime> berth_time;
  std::optional<SimTime> service_end;
  long long position_m = 0;
  int peak_cranes = 0;
  bool completed = false;
};

struct PoolUsage {
  int capacity = 0;
  int peak_busy = 0;
  long long busy_minutes = 0;  // integral of the busy count over the clock
};

struct OccupancySample {
  int quay_cranes = 0;
  int yard_cranes = 0;
  int trucks = 0;
};

struct SimulationResult {
  EventTrace trace;
  std::vector<OccupancySample> occupancy;  // parallel to trace, post-event state
  BerthPlan plan;
  std::vector<CraneAssignment> crane_history;
  std::vector<VesselOutcome> outcomes;  // ordered by vessel id
  PoolUsage quay_crane_usage;
  PoolUsage yard_crane_usage;
  PoolUsage truck_usage;
  SimTime makespan = 0;  // completion time of the last vessel service
  bool pending_work = false;
  std::size_t pending_events = 0;
  std::uint64_t scheduled_events = 0;
  std::uint64_t processed_events = 0;
};

namespace detail {

struct PoolTracker {
  int capacity = 0;
  int busy = 0;
  int peak = 0;
  long long busy_minutes = 0;
  SimTime last = 0;

  void advance(SimTime now) {
    busy_minutes += static_cast<long long>(busy) * (now - last);
    last = now;
  }
  void delta(int d, SimTime now) {
    advance(now);
    busy += d;
    peak = std::max(peak, busy);
  }
  void set_busy(int b, SimTime now) {
    advance(now);
    busy = b;
    peak = std::max(peak, busy);
  }
};

// One container's journey. `exact` is the chain's true position on the
// rational timeline; calendar events are its half-up rounding, so repeated
// sub-minute stages accumulate no rounding drift.
struct ChainRt {
  int id = 0;
  int vessel_id = 0;
  Flow flow = Flow::Import;
  Rational exact{0};
};

struct VesselRt {
  enum class Phase { Waiting, Importing, Exporting, Done, Departed };

  const VesselCall* call = nullptr;
  long long imports_total = 0;
  long long exports_total = 0;

  Phase phase = Phase::Waiting;
  std::optional<SimTime> berth_time;
  std::optional<SimTime> service_end;
  long long position_m = 0;
  int peak_cranes = 0;

  // Detailed mode: crane slots and per-flow progress.
  int quota = 0;      // cranes currently assigned
  int allocated = 0;  // slots owned: free + lifting + blocked
  int lifting = 0;
  int blocked = 0;  // slots holding a lifted container, waiting for a truck
  std::multiset<Rational> free_slots;
  long long imports_started = 0;
  long long import_chains_done = 0;
  long long exports_launched = 0;
  long long exports_done = 0;
  long long exports_inflight = 0;  // launched, truck not yet released
  std::deque<int> export_ready;    // chains loaded on trucks at the quay

  // Aggregate mode: exact remaining workload.
  int generation = 0;
  Rational remaining{0};
  SimTime last_progress = 0;
  bool completion_scheduled = false;

  bool in_service() const { return phase == Phase::Importing || phase == Phase::Exporting; }
};

class SimulationEngine {
 public:
  SimulationEngine(const std::vector<VesselCall>& vessels, const ScenarioConfig& config)
      : cfg_(config), allocator_(QuayLayout{config.quay_length_m}, config.allow_overtake) {
    validate_scenario(vessels, cfg_);
    qc_.capacity = cfg_.quay_cranes;
    yc_.capacity = cfg_.yard_cranes;
    truck_.capacity = cfg_.trucks;
    rng_.seed(cfg_.seed);

    lift_min_ = Rational{1} / cfg_.service.crane_rate_moves_per_min;
    // Export chains launched ahead of the cranes: enough to cover the
    // yard-and-travel latency at the crane's consumption rate.
    Rational latency = cfg_.service.truck_cycle_min + cfg_.service.yard_crane_service_min;
    export_depth_ = (latency / lift_min_).ceil() + 1;

    for (const auto& v : vessels) {
      VesselRt rt;
      rt.call = &v;
      rt.imports_total = moves(v, Flow::Import);
      rt.exports_total = moves(v, Flow::Export);
      vessels_.emplace(v.id, rt);
    }
    for (auto& [id, rt] : vessels_)
      calendar_.schedule(make_event(EventKind::VesselArrival, ready_time(rt), id));
  }

  SimulationResult run(SimTime horizon = kNoHorizon) {
    if (horizon != kNoHorizon) calendar_.schedule(make_event(EventKind::SimEnd, horizon));
    SimulationResult result;
    RunStats stats = run_calendar(
        calendar_,
        [&](const Event& e) {
          dispatch(e);
          result.occupancy.push_back({qc_.busy, yc_.busy, truck_.busy});
        },
        horizon);

    SimTime end_clock = calendar_.clock();
    qc_.advance(end_clock);
    yc_.advance(end_clock);
    truck_.advance(end_clock);

    result.trace = std::move(stats.trace);
    result.pending_events = stats.pending_events;
    result.scheduled_events = stats.scheduled_events;
    result.processed_events = stats.processed_events;
    result.plan = allocator_.plan();
    result.crane_history = crane_history_;
    result.quay_crane_usage = {qc_.capacity, qc_.peak, qc_.busy_minutes};
    result.yard_crane_usage = {yc_.capacity, yc_.peak, yc_.busy_minutes};
    result.truck_usage = {truck_.capacity, truck_.peak, truck_.busy_minutes};
    result.makespan = makespan_;

    bool all_departed = true;
    for (const auto& [id, rt] : vessels_) {
      VesselOutcome o;
      o.vessel_id = id;
      o.arrival = rt.call->arrival;
      o.berth_time = rt.berth_time;
      o.service_end = rt.service_end;
      o.position_m = rt.position_m;
      o.peak_cranes = rt.peak_cranes;
      o.completed = rt.phase == VesselRt::Phase::Done || rt.phase == VesselRt::Phase::Departed;
      all_departed = all_departed && rt.phase == VesselRt::Phase::Departed;
      result.outcomes.push_back(o);
    }
    result.pending_work = stats.pending_events > 0 || !all_departed;
    return result;
  }

 private:
  using Phase = VesselRt::Phase;

  struct TruckWaiter {
    enum class What { ImportHandoff, ExportLaunch };
    What what = What::ImportHandoff;
    int chain_id = 0;
  };

  SimTime ready_time(const VesselRt& rt) const {
    // Recorded replay keeps the logged operation start; a vessel that
    // arrived earlier waits at anchorage.
    if (cfg_.mode == SimMode::Recorded)
      return std::max(rt.call->arrival, *rt.call->recorded_op_start);
    return rt.call->arrival;
  }

  void dispatch(const Event& e) {
    switch (e.kind) {
      case EventKind::VesselArrival: return on_arrival(e);
      case EventKind::BerthGranted: return on_berth_granted(e);
      case EventKind::CraneMoveComplete: return on_crane_move_complete(e);
      case EventKind::TruckTripComplete: return on_truck_trip_complete(e);
      case EventKind::YardServiceComplete: return on_yard_service_complete(e);
      case EventKind::VesselServiceComplete: return on_vessel_service_complete(e);
      case EventKind::VesselDeparture: return on_vessel_departure(e);
      case EventKind::SimEnd: return;
    }
  }

  // ---- berthing ----

  void on_arrival(const Event& e) {
    VesselRt& rt = vessels_.at(e.vessel_id);
    allocator_.enqueue(*rt.call, e.time);
    grant_berths(e.time);
  }

  void grant_berths(SimTime now) {
    for (const auto& a : allocator_.grant_feasible(now)) {
      vessels_.at(a.vessel_id).position_m = a.position_m;
      calendar_.schedule(make_event(EventKind::BerthGranted, now, a.vessel_id));
    }
  }

  void on_berth_granted(const Event& e) {
    VesselRt& rt = vessels_.at(e.vessel_id);
    rt.berth_time = e.time;
    switch (cfg_.mode) {
      case SimMode::Recorded: {
        rt.phase = Phase::Importing;
        SimTime duration = *recorded_service(*rt.call);
        calendar_.schedule(
            make_event(EventKind::VesselServiceComplete, e.time + duration, e.vessel_id));
        rt.completion_scheduled = true;
        break;
      }
      case SimMode::Aggregate: {
        rt.phase = Phase::Importing;
        rt.remaining = Rational{total_moves(*rt.call)};
        rt.last_progress = e.time;
        resplit(e.time);
        break;
      }
      case SimMode::Detailed: {
        rt.phase = Phase::Importing;
        resplit(e.time);
        transition_if_imports_done(rt, e.time);
        break;
      }
    }
  }

  // ---- detailed-mode service chains ----

  Rational lift_duration() { return draw(lift_min_); }
  Rational truck_duration() { return draw(cfg_.service.truck_cycle_min); }
  Rational yard_duration() { return draw(cfg_.service.yard_crane_service_min); }

  Rational draw(const Rational& mean) {
    if (!cfg_.stochastic_service) return mean;
    std::exponential_distribution<double> dist(1.0);
    double d = dist(rng_) * mean.to_double();
    long long milli = std::max<long long>(1, llround(d * 1000.0));
    return Rational{milli, 1000};
  }

  int new_chain(int vessel_id, Flow flow, Rational exact) {
    ChainRt c;
    c.id = static_cast<int>(chains_.size());
    c.vessel_id = vessel_id;
    c.flow = flow;
    c.exact = exact;
    chains_.push_back(c);
    return c.id;
  }

  static Rational pop_min_slot(VesselRt& rt) {
    auto it = rt.free_slots.begin();
    Rational v = *it;
    rt.free_slots.erase(it);
    return v;
  }

  void start_next_work(VesselRt& rt, SimTime now) {
    while (!rt.free_slots.empty()) {
      if (rt.phase == Phase::Importing && rt.imports_started < rt.imports_total) {
        Rational slot = pop_min_slot(rt);
        ++rt.imports_started;
        int cid = new_chain(rt.call->id, Flow::Import, slot);
        begin_lift(rt, chains_[cid], slot, now);
      } else if (rt.phase == Phase::Exporting && !rt.export_ready.empty()) {
        Rational slot = pop_min_slot(rt);
        int cid = rt.export_ready.front();
        rt.export_ready.pop_front();
        ChainRt& c = chains_[cid];
        Rational start = std::max(slot, c.exact);
        --rt.exports_inflight;
        release_truck(now);  // the crane lifts straight off the truck
        begin_lift(rt, c, start, now);
        pump_exports(rt, now);
      } else {
        break;
      }
    }
  }

  void begin_lift(VesselRt& rt, ChainRt& c, Rational start, SimTime now) {
    c.exact = start + lift_duration();
    ++rt.lifting;
    qc_.delta(+1, now);
    calendar_.schedule(
        make_event(EventKind::CraneMoveComplete, c.exact.round_half_up(), rt.call->id, c.id));
  }

  void on_crane_move_complete(const Event& e) {
    if (cfg_.mode != SimMode::Detailed) return;
    ChainRt& c = chains_.at(static_cast<std::size_t>(e.chain_id));
    VesselRt& rt = vessels_.at(e.vessel_id);
    --rt.lifting;
    if (c.flow == Flow::Import) {
      if (truck_.busy < truck_.capacity) {
        truck_.delta(+1, e.time);
        qc_.delta(-1, e.time);
        complete_import_handoff(c, c.exact, e.time);  // handoff at the true lift end
      } else {
        ++rt.blocked;  // crane keeps the container until a truck frees up
        truck_queue_.push_back({TruckWaiter::What::ImportHandoff, c.id});
      }
    } else {
      qc_.delta(-1, e.time);
      ++rt.exports_done;
      return_slot(rt, c.exact, e.time);
      maybe_complete(rt, e.time);
    }
    if (cfg_.resplit_per_move) resplit(e.time);
  }

  void complete_import_handoff(ChainRt& c, Rational handoff, SimTime now) {
    c.exact = handoff + truck_duration();
    calendar_.schedule(
        make_event(EventKind::TruckTripComplete, c.exact.round_half_up(), c.vessel_id, c.id));
    return_slot(vessels_.at(c.vessel_id), handoff, now);
  }

  void return_slot(VesselRt& rt, Rational exact, SimTime now) {
    if (rt.allocated > rt.quota)
      --rt.allocated;  // crane shed at the last re-split, finish attrition
    else
      rt.free_slots.insert(exact);
    start_next_work(rt, now);
  }

  void on_truck_trip_complete(const Event& e) {
    ChainRt& c = chains_.at(static_cast<std::size_t>(e.chain_id));
    VesselRt& rt = vessels_.at(e.vessel_id);
    if (c.flow == Flow::Import) {
      request_yard_crane(c, e.time);
    } else {
      rt.export_ready.push_back(c.id);
      start_next_work(rt, e.time);
    }
  }

  void request_yard_crane(ChainRt& c, SimTime now) {
    if (yc_.busy < yc_.capacity) {
      yc_.delta(+1, now);
      begin_yard_service(c, now);
    } else {
      yc_queue_.push_back(c.id);
    }
  }

  // Callers clamp c.exact to the grant time on queued paths; an immediate
  // grant keeps the chain's true arrival instant.
  void begin_yard_service(ChainRt& c, SimTime) {
    c.exact += yard_duration();
    calendar_.schedule(
        make_event(EventKind::YardServiceComplete, c.exact.round_half_up(), c.vessel_id, c.id));
  }

  void on_yard_service_complete(const Event& e) {
    ChainRt& c = chains_.at(static_cast<std::size_t>(e.chain_id));
    VesselRt& rt = vessels_.at(e.vessel_id);
    if (c.flow == Flow::Import) {
      release_yard_crane(e.time);
      release_truck(e.time);
      ++rt.import_chains_done;
      transition_if_imports_done(rt, e.time);
    } else {
      release_yard_crane(e.time);
      c.exact += truck_duration();
      calendar_.schedule(
          make_event(EventKind::TruckTripComplete, c.exact.round_half_up(), c.vessel_id, c.id));
    }
  }

  void release_yard_crane(SimTime now) {
    yc_.delta(-1, now);
    if (yc_queue_.empty()) return;
    int cid = yc_queue_.front();
    yc_queue_.pop_front();
    yc_.delta(+1, now);
    ChainRt& c = chains_.at(static_cast<std::size_t>(cid));
    c.exact = std::max(c.exact, Rational{now});
    begin_yard_service(c, now);
  }

  void release_truck(SimTime now) {
    truck_.delta(-1, now);
    if (truck_queue_.empty()) return;
    TruckWaiter w = truck_queue_.front();
    truck_queue_.pop_front();
    truck_.delta(+1, now);
    ChainRt& c = chains_.at(static_cast<std::size_t>(w.chain_id));
    if (w.what == TruckWaiter::What::ImportHandoff) {
      VesselRt& rt = vessels_.at(c.vessel_id);
      --rt.blocked;
      qc_.delta(-1, now);
      complete_import_handoff(c, std::max(c.exact, Rational{now}), now);
    } else {
      c.exact = std::max(c.exact, Rational{now});
      request_yard_crane(c, now);
    }
  }

  void pump_exports(VesselRt& rt, SimTime now) {
    if (rt.phase != Phase::Exporting) return;
    long long cap = static_cast<long long>(rt.quota) * export_depth_;
    while (rt.exports_launched < rt.exports_total && rt.exports_inflight < cap) {
      int cid = new_chain(rt.call->id, Flow::Export, Rational{now});
      ++rt.exports_launched;
      ++rt.exports_inflight;
      if (truck_.busy < truck_.capacity) {
        truck_.delta(+1, now);
        request_yard_crane(chains_[cid], now);
      } else {
        truck_queue_.push_back({TruckWaiter::What::ExportLaunch, cid});
      }
    }
  }

  void transition_if_imports_done(VesselRt& rt, SimTime now) {
    if (rt.phase != Phase::Importing || rt.import_chains_done != rt.imports_total) return;
    rt.phase = Phase::Exporting;
    pump_exports(rt, now);
    start_next_work(rt, now);
    maybe_complete(rt, now);
  }

  void maybe_complete(VesselRt& rt, SimTime now) {
    if (rt.phase != Phase::Exporting || rt.exports_done != rt.exports_total) return;
    if (rt.completion_scheduled) return;
    rt.completion_scheduled = true;
    calendar_.schedule(make_event(EventKind::VesselServiceComplete, now, rt.call->id));
  }

  // ---- completion and departure ----

  void on_vessel_service_complete(const Event& e) {
    VesselRt& rt = vessels_.at(e.vessel_id);
    if (cfg_.mode == SimMode::Aggregate && e.tag != rt.generation) return;  // superseded split
    if (rt.phase == Phase::Done || rt.phase == Phase::Departed) return;
    rt.phase = Phase::Done;
    rt.service_end = e.time;
    rt.remaining = Rational{0};
    makespan_ = std::max(makespan_, e.time);
    calendar_.schedule(make_event(EventKind::VesselDeparture, e.time, e.vessel_id));
  }

  void on_vessel_departure(const Event& e) {
    VesselRt& rt = vessels_.at(e.vessel_id);
    allocator_.release_berth(e.vessel_id, e.time);
    rt.phase = Phase::Departed;
    rt.quota = 0;
    rt.allocated -= static_cast<int>(rt.free_slots.size());
    rt.free_slots.clear();
    resplit(e.time);
    grant_berths(e.time);
  }

  // ---- crane re-splitting ----

  long long remaining_moves(VesselRt& rt, SimTime now) {
    if (cfg_.mode == SimMode::Aggregate) {
      advance_progress(rt, now);
      return rt.remaining.ceil();
    }
    return (rt.imports_total - rt.import_chains_done) + (rt.exports_total - rt.exports_done);
  }

  void advance_progress(VesselRt& rt, SimTime now) {
    if (rt.quota > 0 && now > rt.last_progress) {
      Rational speed = Rational{rt.quota} * cfg_.service.crane_rate_moves_per_min *
                       pow(cfg_.service.interference_alpha, rt.quota - 1);
      rt.remaining -= speed * Rational{now - rt.last_progress};
      if (rt.remaining < Rational{0}) rt.remaining = Rational{0};
    }
    rt.last_progress = now;
  }

  // Re-deals cranes over every berthed vessel with remaining work. Runs at
  // berthing and departure events (and per move when configured).
  void resplit(SimTime now) {
    if (cfg_.mode == SimMode::Recorded) return;

    std::vector<BerthedVesselWork> work;
    for (auto& [id, rt] : vessels_) {
      if (!rt.in_service()) continue;
      long long rem = remaining_moves(rt, now);
      if (rem > 0) work.push_back({id, rt.position_m, rem});
    }

    ResourcePool pool{ResourceKind::QuayCrane, cfg_.quay_cranes, 0};
    std::vector<CraneAssignment> split =
        work.empty() ? std::vector<CraneAssignment>{} : plan_crane_split(work, pool, cfg_.service, now);
    update_crane_history(split, now);

    std::map<int, int> new_quota;
    for (const auto& a : split) ++new_quota[a.vessel_id];

    for (auto& [id, rt] : vessels_) {
      if (!rt.in_service()) continue;
      apply_quota(rt, new_quota.count(id) ? new_quota[id] : 0, now);
    }

    if (cfg_.mode == SimMode::Aggregate) {
      int total_busy = 0;
      for (const auto& [id, n] : new_quota) total_busy += n;
      qc_.set_busy(total_busy, now);
    }
  }

  void apply_quota(VesselRt& rt, int n, SimTime now) {
    rt.peak_cranes = std::max(rt.peak_cranes, n);
    if (cfg_.mode == SimMode::Detailed) {
      while (rt.allocated < n) {
        ++rt.allocated;
        rt.free_slots.insert(Rational{now});
      }
      while (rt.allocated > n && !rt.free_slots.empty()) {
        rt.free_slots.erase(std::prev(rt.free_slots.end()));
        --rt.allocated;
      }
      rt.quota = n;
      start_next_work(rt, now);
      pump_exports(rt, now);
      return;
    }

    // Aggregate: vessels with no work left complete on the spot.
    if (rt.remaining == Rational{0}) {
      rt.quota = n;
      if (!rt.completion_scheduled) {
        ++rt.generation;
        rt.completion_scheduled = true;
        calendar_.schedule(
            make_event(EventKind::VesselServiceComplete, now, rt.call->id, -1, rt.generation));
      }
      return;
    }
    if (n == rt.quota && rt.completion_scheduled) return;  // split unchanged
    if (n == 0 && rt.quota == 0) return;                   // still starved of cranes
    rt.quota = n;
    ++rt.generation;
    if (n > 0) {
      Rational speed = Rational{n} * cfg_.service.crane_rate_moves_per_min *
                       pow(cfg_.service.interference_alpha, n - 1);
      Rational end = Rational{now} + rt.remaining / speed;
      rt.completion_scheduled = true;
      calendar_.schedule(make_event(EventKind::VesselServiceComplete, end.round_half_up(),
                                    rt.call->id, -1, rt.generation));
    } else {
      rt.completion_scheduled = false;  // outnumbered by other vessels; wait for a re-split
    }
  }

  void update_crane_history(const std::vector<CraneAssignment>& split, SimTime now) {
    // Only rewrite history when the (crane, vessel) mapping changed.
    std::vector<std::pair<int, int>> current, proposed;
    for (const auto& a : crane_history_)
      if (!a.to) current.emplace_back(a.crane_index, a.vessel_id);
    for (const auto& a : split) proposed.emplace_back(a.crane_index, a.vessel_id);
    std::sort(current.begin(), current.end());
    std::sort(proposed.begin(), proposed.end());
    if (current == proposed) return;

    for (auto it = crane_history_.begin(); it != crane_history_.end();) {
      if (!it->to) {
        if (it->from == now) {
          it = crane_history_.erase(it);  // zero-length interval
          continue;
        }
        it->to = now;
      }
      ++it;
    }
    for (const auto& a : split) crane_history_.push_back(a);
  }

  ScenarioConfig cfg_;
  BerthAllocator allocator_;
  EventCalendar calendar_;
  std::map<int, VesselRt> vessels_;
  std::vector<ChainRt> chains_;
  std::vector<CraneAssignment> crane_history_;
  std::deque<TruckWaiter> truck_queue_;
  std::deque<int> yc_queue_;
  PoolTracker qc_, yc_, truck_;
  Rational lift_min_{2};
  long long export_depth_ = 5;
  SimTime makespan_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace detail

inline SimulationResult simulate(const std::vector<VesselCall>& vessels,
                                 const ScenarioConfig& config, SimTime horizon = kNoHorizon) {
  detail::SimulationEngine engine(vessels, config);
  return engine.run(horizon);
}

// Tab-separated trace dump: time, kind, entity ids.
inline void write_trace(const EventTrace& trace, std::ostream& out) {
  for (const auto& t : trace) {
    out << t.time << '\t' << to_string(t.kind) << '\t' << "vessel=" << t.vessel_id;
    if (t.chain_id >= 0) out << " chain=" << t.chain_id;
    out << '\n';
  }
}

}  // namespace quaysim
