#include "quaysim/vessel.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace quaysim {
namespace {

VesselCall ship1() {
  VesselCall v;
  v.id = 1;
  v.length_m = 287;
  v.arrival = 1365;
  v.groups = {{Flow::Import, BoxSize::Twenty, 442},
              {Flow::Import, BoxSize::Forty, 236},
              {Flow::Export, BoxSize::Twenty, 365},
              {Flow::Export, BoxSize::Forty, 567}};
  v.recorded_op_start = 1365;
  v.recorded_op_end = 3720;
  v.recorded_service_min = 2355;
  return v;
}

TEST(VesselCall, TotalMoves) {
  EXPECT_EQ(total_moves(ship1()), 1610);  // 442+236+365+567

  VesselCall ship6;
  ship6.groups = {{Flow::Import, BoxSize::Twenty, 36},
                  {Flow::Import, BoxSize::Forty, 21},
                  {Flow::Export, BoxSize::Twenty, 6},
                  {Flow::Export, BoxSize::Forty, 21}};
  EXPECT_EQ(total_moves(ship6), 84);

  EXPECT_EQ(total_moves(VesselCall{}), 0);
}

TEST(VesselCall, MovesByFlow) {
  EXPECT_EQ(moves(ship1(), Flow::Import), 678);
  EXPECT_EQ(moves(ship1(), Flow::Export), 932);
}

TEST(VesselCall, Teu) {
  VesselCall ship3;
  ship3.groups = {{Flow::Import, BoxSize::Twenty, 6},
                  {Flow::Import, BoxSize::Forty, 13},
                  {Flow::Export, BoxSize::Forty, 108}};
  EXPECT_EQ(teu(ship3), 248);  // 6 + 2*(13+108)

  VesselCall ship6;
  ship6.groups = {{Flow::Import, BoxSize::Twenty, 36},
                  {Flow::Import, BoxSize::Forty, 21},
                  {Flow::Export, BoxSize::Twenty, 6},
                  {Flow::Export, BoxSize::Forty, 21}};
  EXPECT_EQ(teu(ship6), 126);  // 42 + 2*42

  EXPECT_EQ(teu(VesselCall{}), 0);
}

TEST(VesselCall, RecordedService) {
  EXPECT_EQ(recorded_service(ship1()), 2355);

  VesselCall ship5;
  ship5.id = 5;
  ship5.recorded_op_start = 4680;  // 6/3 06:00
  ship5.recorded_op_end = 5100;    // 6/3 13:00
  EXPECT_EQ(recorded_service(ship5), 420);

  EXPECT_EQ(recorded_service(VesselCall{}), std::nullopt);

  VesselCall bad = ship1();
  bad.recorded_service_min = 9999;
  EXPECT_THROW(recorded_service(bad), InconsistentRecord);
}

// total_moves and teu are additive over groups and order-independent;
// teu >= moves with equality iff the vessel carries only 20 ft boxes.
TEST(VesselCall, RandomizedGroupProperties) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<long long> count(0, 500);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 500; ++i) {
    VesselCall v;
    int n_groups = static_cast<int>(count(rng) % 5);
    for (int g = 0; g < n_groups; ++g)
      v.groups.push_back({coin(rng) ? Flow::Import : Flow::Export,
                          coin(rng) ? BoxSize::Twenty : BoxSize::Forty, count(rng)});

    VesselCall shuffled = v;
    std::shuffle(shuffled.groups.begin(), shuffled.groups.end(), rng);
    EXPECT_EQ(total_moves(v), total_moves(shuffled));
    EXPECT_EQ(teu(v), teu(shuffled));
    EXPECT_EQ(moves(v, Flow::Import) + moves(v, Flow::Export), total_moves(v));

    EXPECT_GE(teu(v), total_moves(v));
    bool only_twenty = std::all_of(v.groups.begin(), v.groups.end(), [](const ContainerGroup& g) {
      return g.size == BoxSize::Twenty || g.count == 0;
    });
    EXPECT_EQ(teu(v) == total_moves(v), only_twenty);
  }
}

}  // namespace
}  // namespace quaysim
