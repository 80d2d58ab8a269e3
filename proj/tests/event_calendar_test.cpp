#include "quaysim/event_calendar.hpp"

#include <gtest/gtest.h>

#include <random>

namespace quaysim {
namespace {

TEST(EventCalendar, SingleEvent) {
  EventCalendar cal;
  cal.schedule(make_event(EventKind::VesselArrival, 5, 1));
  EXPECT_EQ(cal.size(), 1u);
  auto e = cal.next_event();
  ASSERT_TRUE(e);
  EXPECT_EQ(e->time, 5);
  EXPECT_EQ(e->kind, EventKind::VesselArrival);
  EXPECT_TRUE(cal.empty());
}

TEST(EventCalendar, EmptyYieldsNothing) {
  EventCalendar cal;
  EXPECT_FALSE(cal.next_event());
  EXPECT_FALSE(cal.next_time());
}

TEST(EventCalendar, ReleaseSortsBeforeArrivalAtSameTime) {
  EventCalendar cal;
  cal.schedule(make_event(EventKind::VesselArrival, 10, 1));
  cal.schedule(make_event(EventKind::VesselDeparture, 10, 2));
  EXPECT_EQ(cal.next_event()->kind, EventKind::VesselDeparture);
  EXPECT_EQ(cal.next_event()->kind, EventKind::VesselArrival);
}

TEST(EventCalendar, FifoTieBreakWithinClass) {
  EventCalendar cal;
  cal.schedule(make_event(EventKind::VesselArrival, 10, 3));
  cal.schedule(make_event(EventKind::VesselArrival, 10, 4));
  EXPECT_EQ(cal.next_event()->vessel_id, 3);
  EXPECT_EQ(cal.next_event()->vessel_id, 4);
}

TEST(EventCalendar, ClockAdvancesMonotonically) {
  EventCalendar cal;
  cal.schedule(make_event(EventKind::VesselArrival, 7, 1));
  cal.schedule(make_event(EventKind::VesselArrival, 3, 2));
  EXPECT_EQ(cal.next_event()->time, 3);
  EXPECT_EQ(cal.clock(), 3);
  EXPECT_EQ(cal.next_event()->time, 7);
  EXPECT_EQ(cal.clock(), 7);
}

TEST(EventCalendar, SchedulingInPastThrows) {
  EventCalendar cal;
  cal.schedule(make_event(EventKind::VesselArrival, 10, 1));
  cal.next_event();
  EXPECT_THROW(cal.schedule(make_event(EventKind::VesselArrival, 9, 2)), SchedulingInPast);
  cal.schedule(make_event(EventKind::VesselArrival, 10, 2));  // same time is fine
}

TEST(EventCalendar, PriorityClassDerivedFromKind) {
  Event e = make_event(EventKind::VesselDeparture, 0);
  EXPECT_EQ(e.priority_class, PriorityClass::Release);
  EXPECT_EQ(make_event(EventKind::CraneMoveComplete, 0).priority_class, PriorityClass::Completion);
  EXPECT_EQ(make_event(EventKind::BerthGranted, 0).priority_class, PriorityClass::Berthing);
  EXPECT_EQ(make_event(EventKind::VesselArrival, 0).priority_class, PriorityClass::Arrival);
  EXPECT_EQ(make_event(EventKind::SimEnd, 0).priority_class, PriorityClass::Report);
}

TEST(RunCalendar, EmptyCalendarEmptyTrace) {
  EventCalendar cal;
  auto stats = run_calendar(cal, [](const Event&) {});
  EXPECT_TRUE(stats.trace.empty());
  EXPECT_EQ(stats.pending_events, 0u);
}

TEST(RunCalendar, TraceBeginsWithFirstArrival) {
  EventCalendar cal;
  cal.schedule(make_event(EventKind::VesselArrival, 1365, 1));
  auto stats = run_calendar(cal, [](const Event&) {});
  ASSERT_EQ(stats.trace.size(), 1u);
  EXPECT_EQ(stats.trace[0].time, 1365);
  EXPECT_EQ(stats.trace[0].kind, EventKind::VesselArrival);
}

TEST(RunCalendar, HorizonLeavesPendingWork) {
  EventCalendar cal;
  cal.schedule(make_event(EventKind::VesselArrival, 5, 1));
  cal.schedule(make_event(EventKind::VesselArrival, 50, 2));
  auto stats = run_calendar(cal, [](const Event&) {}, 10);
  EXPECT_TRUE(stats.horizon_hit);
  EXPECT_EQ(stats.trace.size(), 1u);
  EXPECT_EQ(stats.pending_events, 1u);
  EXPECT_EQ(stats.scheduled_events, stats.processed_events + stats.pending_events);
}

// Randomized ordering law: pops come out sorted by (time, class, seq), the
// clock never regresses, and every scheduled event is seen exactly once.
TEST(RunCalendar, RandomizedOrderingAndConservation) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<SimTime> when(0, 50);
  std::uniform_int_distribution<int> which(0, 7);
  for (int round = 0; round < 50; ++round) {
    EventCalendar cal;
    int n = 200;
    for (int i = 0; i < n; ++i)
      cal.schedule(make_event(static_cast<EventKind>(which(rng)), when(rng), i));

    SimTime last_time = 0;
    int last_class = -1;
    std::uint64_t last_seq = 0;
    bool first = true;
    int seen = 0;
    while (auto e = cal.next_event()) {
      ++seen;
      if (!first) {
        ASSERT_GE(e->time, last_time);
        if (e->time == last_time) {
          ASSERT_GE(static_cast<int>(e->priority_class), last_class);
          if (static_cast<int>(e->priority_class) == last_class) ASSERT_GT(e->seq, last_seq);
        }
      }
      last_time = e->time;
      last_class = static_cast<int>(e->priority_class);
      last_seq = e->seq;
      first = false;
    }
    EXPECT_EQ(seen, n);
  }
}

TEST(RunCalendar, IdenticalSchedulesGiveIdenticalTraces) {
  auto build = [] {
    EventCalendar cal;
    std::mt19937 rng(1234);
    std::uniform_int_distribution<SimTime> when(0, 100);
    for (int i = 0; i < 300; ++i)
      cal.schedule(make_event(EventKind::CraneMoveComplete, when(rng), i % 7, i));
    return run_calendar(cal, [](const Event&) {}).trace;
  };
  EXPECT_EQ(build(), build());
}

}  // namespace
}  // namespace quaysim
