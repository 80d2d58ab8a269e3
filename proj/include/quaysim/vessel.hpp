#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quaysim/errors.hpp"
#include "quaysim/sim_time.hpp"

namespace quaysim {

enum class Flow : int { Import, Export };
enum class BoxSize : int { Twenty, Forty };

struct ContainerGroup {
  Flow flow = Flow::Import;
  BoxSize size = BoxSize::Twenty;
  long long count = 0;

  friend bool operator==(const ContainerGroup&, const ContainerGroup&) = default;
};

// One ship visit from the log sheets. Recorded fields carry the terminal's
// actuals and are optional; everything else feeds the simulation.
struct VesselCall {
  int id = 0;
  std::string name;
  std::string agent;
  long long length_m = 0;
  SimTime arrival = 0;
  std::vector<ContainerGroup> groups;
  std::optional<SimTime> recorded_op_start;
  std::optional<SimTime> recorded_op_end;
  std::optional<long long> recorded_service_min;
  std::optional<long long> recorded_berth_pos_m;

  friend bool operator==(const VesselCall&, const VesselCall&) = default;
};

struct QuayLayout {
  long long length_m = 1040;
};

enum class ResourceKind : int { QuayCrane, YardCrane, InternalTruck };

struct ResourcePool {
  ResourceKind kind = ResourceKind::QuayCrane;
  int capacity = 0;
  int busy = 0;
};

// Every container is one crane move regardless of size.
inline long long total_moves(const VesselCall& vessel) {
  long long sum = 0;
  for (const auto& g : vessel.groups) sum += g.count;
  return sum;
}

inline long long moves(const VesselCall& vessel, Flow flow) {
  long long sum = 0;
  for (const auto& g : vessel.groups)
    if (g.flow == flow) sum += g.count;
  return sum;
}

// 20 ft = 1 TEU, 40 ft = 2 TEU.
inline long long teu(const VesselCall& vessel) {
  long long sum = 0;
  for (const auto& g : vessel.groups) sum += g.count * (g.size == BoxSize::Forty ? 2 : 1);
  return sum;
}

// Recorded service minutes, when both stamps are present. A stated
// service_min that disagrees with the stamp difference marks bad input.
inline std::optional<long long> recorded_service(const VesselCall& vessel) {
  if (!vessel.recorded_op_start || !vessel.recorded_op_end) return std::nullopt;
  long long diff = *vessel.recorded_op_end - *vessel.recorded_op_start;
  if (vessel.recorded_service_min && *vessel.recorded_service_min != diff)
    throw InconsistentRecord("ship " + std::to_string(vessel.id) + ": op_end - op_start = " +
                             std::to_string(diff) + " but service_min = " +
                             std::to_string(*vessel.recorded_service_min));
  return diff;
}

}  // namespace quaysim
