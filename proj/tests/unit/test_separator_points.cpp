#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "rleseg/error.hpp"
#include "rleseg/separator_points.hpp"

namespace rleseg {
namespace {

using testing::S;
using testing::T;
using testing::tile;

TEST(BandMidpoint, FloorOfStartPlusEndOverTwo) {
  EXPECT_EQ(band_midpoint({S, 10, 20}), 15u);
  EXPECT_EQ(band_midpoint({S, 10, 21}), 15u);
  EXPECT_EQ(band_midpoint({S, 7, 7}), 7u);
  EXPECT_THROW(band_midpoint({T, 1, 3}), InvalidInput);
}

TEST(Assemble, DropsTheTopMarginBand) {
  const auto bands = tile({{S, 10}, {T, 40}, {S, 10}, {T, 40}, {S, 10}});
  const auto pts = assemble(bands, {}, Side::Left);
  EXPECT_EQ(pts.points, (std::vector<std::size_t>{54, 104}));
  EXPECT_EQ(pts.provenance, (std::vector<Provenance>{Provenance::Detected, Provenance::Detected}));
  EXPECT_EQ(pts.height, 110u);
}

TEST(Assemble, WholePageSeparatorGivesNoPoints) {
  EXPECT_TRUE(assemble(tile({{S, 300}}), {}, Side::Right).points.empty());
}

TEST(Assemble, NothingToDropWhenPageStartsWithText) {
  const auto pts = assemble(tile({{T, 10}, {S, 4}, {T, 10}}), {}, Side::Left);
  EXPECT_EQ(pts.points, (std::vector<std::size_t>{11}));
}

TEST(Assemble, MergesInsertedPointsInRowOrder) {
  const auto bands = tile({{S, 10}, {T, 90}, {S, 10}, {T, 40}, {S, 10}});
  RefinementTrace trace;
  trace.inserted_separators = {55};
  const auto pts = assemble(bands, trace, Side::Left);
  EXPECT_EQ(pts.points, (std::vector<std::size_t>{55, 104, 154}));
  EXPECT_EQ(pts.provenance[0], Provenance::Inserted);
  EXPECT_EQ(pts.provenance[1], Provenance::Detected);
}

TEST(Assemble, CountIdentityOnCleanPage) {
  // L lines -> L - 1 gaps + bottom margin once the top margin is dropped
  for (std::size_t lines = 1; lines <= 12; ++lines) {
    std::vector<std::pair<BandKind, std::size_t>> parts{{S, 15}};
    for (std::size_t i = 0; i < lines; ++i) {
      parts.emplace_back(T, 30);
      parts.emplace_back(S, 12);
    }
    const auto pts = assemble(tile(parts), {}, Side::Left);
    EXPECT_EQ(pts.size(), lines);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts.points[i - 1], pts.points[i]);
  }
}

}  // namespace
}  // namespace rleseg
