#include "quaysim/log_sheet.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

namespace quaysim {
namespace {

const Timestamp kEpoch{2014, 3, 3, 0, 0};

std::string fixture_path(const char* name) {
  return std::string(QUAYSIM_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in) << path;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(LogSheet, ParsesTable1Fixture) {
  auto vessels = parse_log_sheet(slurp(fixture_path("table1_actual.csv")), kEpoch);
  ASSERT_EQ(vessels.size(), 8u);

  const VesselCall& s1 = vessels[0];
  EXPECT_EQ(s1.id, 1);
  EXPECT_EQ(s1.length_m, 287);
  EXPECT_EQ(s1.arrival, 1365);
  ASSERT_EQ(s1.groups.size(), 4u);
  EXPECT_EQ(s1.groups[0], (ContainerGroup{Flow::Import, BoxSize::Twenty, 442}));
  EXPECT_EQ(s1.groups[1], (ContainerGroup{Flow::Import, BoxSize::Forty, 236}));
  EXPECT_EQ(s1.groups[2], (ContainerGroup{Flow::Export, BoxSize::Twenty, 365}));
  EXPECT_EQ(s1.groups[3], (ContainerGroup{Flow::Export, BoxSize::Forty, 567}));
  EXPECT_EQ(recorded_service(s1), 2355);

  // Ship 5 exports nothing, so it has only the two import groups.
  EXPECT_EQ(vessels[4].groups.size(), 2u);
}

TEST(LogSheet, FixtureTotals) {
  auto t1 = parse_log_sheet(slurp(fixture_path("table1_actual.csv")), kEpoch);
  long long total1 = 0;
  for (const auto& v : t1) total1 += *recorded_service(v);
  EXPECT_EQ(total1, 8865);

  auto t2 = parse_log_sheet(slurp(fixture_path("table2_proposed.csv")), kEpoch);
  long long total2 = 0;
  for (const auto& v : t2) total2 += *recorded_service(v);
  EXPECT_EQ(total2, 4322);
}

TEST(LogSheet, HeaderOnlyIsEmpty) {
  auto vessels = parse_log_sheet(std::string(kLogSheetHeader) + "\n", kEpoch);
  EXPECT_TRUE(vessels.empty());
}

TEST(LogSheet, RowAddressedErrors) {
  std::string head(kLogSheetHeader);
  auto row = [&](std::string_view body) { return head + "\n" + std::string(body) + "\n"; };

  // op_end before op_start
  try {
    parse_log_sheet(row("1,,,100,,4/3/14 9:00 AM,4/3/14 8:00 AM,1,0,0,0,,"), kEpoch);
    FAIL() << "expected EndBeforeStart";
  } catch (const EndBeforeStart& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }

  EXPECT_THROW(parse_log_sheet(row("1,,,100,,bogus,4/3/14 8:00 AM,1,0,0,0,,"), kEpoch),
               MalformedTimestamp);
  EXPECT_THROW(parse_log_sheet(row("1,,,100,,3/3/14 9:00 AM,4/3/14 8:00 AM,-1,0,0,0,,"), kEpoch),
               NegativeCount);
  EXPECT_THROW(parse_log_sheet(row("1,,,0,,3/3/14 9:00 AM,4/3/14 8:00 AM,1,0,0,0,,"), kEpoch),
               InvalidValue);
  EXPECT_THROW(parse_log_sheet(row("1,,,100,,2/3/14 9:00 AM,4/3/14 8:00 AM,1,0,0,0,,"), kEpoch),
               BeforeEpoch);
  EXPECT_THROW(parse_log_sheet(head + "\n1,,,100,,3/3/14 9:00 AM,4/3/14 8:00 AM,1,0,0,0,,\n"
                                      "1,,,100,,3/3/14 9:00 AM,4/3/14 8:00 AM,1,0,0,0,,\n",
                               kEpoch),
               DuplicateShipNo);
  EXPECT_THROW(parse_log_sheet("wrong,header\n", kEpoch), InvalidValue);
  EXPECT_THROW(parse_log_sheet(row("1,,,100,,3/3/14 9:00 AM,4/3/14 8:00 AM,1,0,0"), kEpoch),
               InvalidValue);
}

TEST(LogSheet, ExplicitArrivalColumn) {
  std::string text = std::string(kLogSheetHeader) +
                     "\n3,Maersk Nile,AgentCo,150,3/3/14 6:00 AM,3/3/14 9:00 AM,4/3/14 8:00 "
                     "AM,10,0,5,0,,120\n";
  auto vessels = parse_log_sheet(text, kEpoch);
  ASSERT_EQ(vessels.size(), 1u);
  EXPECT_EQ(vessels[0].arrival, 360);
  EXPECT_EQ(*vessels[0].recorded_op_start, 540);
  EXPECT_EQ(vessels[0].name, "Maersk Nile");
  EXPECT_EQ(vessels[0].agent, "AgentCo");
  EXPECT_EQ(vessels[0].recorded_berth_pos_m, 120);
}

VesselCall random_vessel(std::mt19937& rng, int id) {
  std::uniform_int_distribution<long long> count(0, 900);
  std::uniform_int_distribution<long long> length(50, 400);
  std::uniform_int_distribution<SimTime> start(0, 10000);
  std::uniform_int_distribution<SimTime> dur(1, 3000);
  VesselCall v;
  v.id = id;
  v.length_m = length(rng);
  SimTime op_start = start(rng);
  v.recorded_op_start = op_start;
  v.recorded_op_end = op_start + dur(rng);
  v.recorded_service_min = *v.recorded_op_end - op_start;
  v.arrival = std::max<SimTime>(0, op_start - dur(rng) % 200);
  long long c;
  if ((c = count(rng)) > 0) v.groups.push_back({Flow::Import, BoxSize::Twenty, c});
  if ((c = count(rng)) > 0) v.groups.push_back({Flow::Import, BoxSize::Forty, c});
  if ((c = count(rng)) > 0) v.groups.push_back({Flow::Export, BoxSize::Twenty, c});
  if ((c = count(rng)) > 0) v.groups.push_back({Flow::Export, BoxSize::Forty, c});
  return v;
}

// Serialize-then-parse returns the identical vessel list.
TEST(LogSheet, RoundTripProperty) {
  std::mt19937 rng(20140309);
  for (int round = 0; round < 100; ++round) {
    std::vector<VesselCall> vessels;
    int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) vessels.push_back(random_vessel(rng, i + 1));
    auto text = serialize_log_sheet(vessels, kEpoch);
    EXPECT_EQ(parse_log_sheet(text, kEpoch), vessels);
  }
}

TEST(LogSheet, FixtureRoundTrips) {
  auto vessels = parse_log_sheet(slurp(fixture_path("table1_actual.csv")), kEpoch);
  EXPECT_EQ(parse_log_sheet(serialize_log_sheet(vessels, kEpoch), kEpoch), vessels);
}

}  // namespace
}  // namespace quaysim
