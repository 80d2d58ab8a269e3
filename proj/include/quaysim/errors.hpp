#pragma once

#include <stdexcept>
#include <string>

namespace quaysim {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QUAYSIM_DEFINE_ERROR(Name)                                         \
  struct Name : Error {                                                    \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
  }

// Kernel
QUAYSIM_DEFINE_ERROR(SchedulingInPast);

// Model / data ingestion
QUAYSIM_DEFINE_ERROR(InconsistentRecord);
QUAYSIM_DEFINE_ERROR(MalformedTimestamp);
QUAYSIM_DEFINE_ERROR(NegativeCount);
QUAYSIM_DEFINE_ERROR(EndBeforeStart);
QUAYSIM_DEFINE_ERROR(DuplicateShipNo);
QUAYSIM_DEFINE_ERROR(BeforeEpoch);
QUAYSIM_DEFINE_ERROR(UnknownKey);
QUAYSIM_DEFINE_ERROR(InvalidValue);

// Berth and crane planning
QUAYSIM_DEFINE_ERROR(VesselLongerThanQuay);
QUAYSIM_DEFINE_ERROR(NotBerthed);
QUAYSIM_DEFINE_ERROR(NoCranesAvailable);
QUAYSIM_DEFINE_ERROR(UnknownVessel);

// Reporting and calibration
QUAYSIM_DEFINE_ERROR(IncompleteTrace);
QUAYSIM_DEFINE_ERROR(VesselSetMismatch);
QUAYSIM_DEFINE_ERROR(EmptyGrid);
QUAYSIM_DEFINE_ERROR(IoFailure);

#undef QUAYSIM_DEFINE_ERROR

}  // namespace quaysim
