#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../../tools/commands.hpp"
#include "fixtures.hpp"
#include "rleseg/json_io.hpp"
#include "rleseg/pbm.hpp"
#include "rleseg/rle_codec.hpp"

namespace rleseg {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("rleseg_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  // Five-line page whose lines 1 and 2 touch at the left terminal.
  PageSpec touching_spec() const {
    PageSpec spec;
    spec.width = 300;
    spec.height = 200;
    spec.seed = 3;
    for (std::size_t i = 0; i < 5; ++i) spec.lines.push_back({20 + 34 * i, 20 + 34 * i + 23, 24, 30, 0.3});
    spec.artifacts = {TouchAtLeft{1, 2}};
    return spec;
  }

  fs::path dir_;
};

TEST_F(CliTest, EncodeSamplePage) {
  const Raster raster(testing::sample_page_rows());
  write_pbm(raster, fs::path(path("t2.pbm")), PbmEncoding::Plain);
  const auto r = run({"encode", path("t2.pbm"), path("t2.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("width=14 height=13"), std::string::npos);
  const auto doc = read_rle_csv(fs::path(path("t2.csv")));
  ASSERT_EQ(doc.height(), 13u);
  for (std::size_t i = 0; i < 13; ++i)
    EXPECT_EQ(doc.row(i), testing::strip_padding(testing::sample_page_padded()[i])) << "row " << i + 1;
}

TEST_F(CliTest, PlainAndRawPbmEncodeIdentically) {
  const auto page = generate(touching_spec());
  write_pbm(page.raster, fs::path(path("p1.pbm")), PbmEncoding::Plain);
  write_pbm(page.raster, fs::path(path("p4.pbm")), PbmEncoding::Raw);
  ASSERT_EQ(run({"encode", path("p1.pbm"), path("p1.csv")}).code, 0);
  ASSERT_EQ(run({"encode", path("p4.pbm"), path("p4.csv")}).code, 0);
  EXPECT_EQ(slurp(path("p1.csv")), slurp(path("p4.csv")));
}

TEST_F(CliTest, NonPbmInputIsAFormatError) {
  write("notes.txt", "hello world\n");
  const auto r = run({"encode", path("notes.txt"), path("out.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unsupported format"), std::string::npos) << r.err;
  EXPECT_EQ(run({"segment", path("notes.txt")}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"segment"}).code, 2);
  EXPECT_EQ(run({"segment", "x.csv", "--sides", "top"}).code, 2);
  EXPECT_EQ(run({"segment", "x.csv", "--threshold-divisor", "0.5"}).code, 2);
  EXPECT_EQ(run({"evaluate"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST_F(CliTest, SegmentIsDeterministicAndTagsInsertions) {
  const auto page = generate(touching_spec());
  write_rle_csv(encode_image(page.raster), fs::path(path("page.csv")));
  const auto a = run({"segment", path("page.csv")});
  const auto b = run({"segment", path("page.csv")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);

  const auto j = Json::parse(a.out);
  EXPECT_EQ(j.at("schema"), 1);
  const auto& left = j.at("sides").at("left");
  EXPECT_EQ(left.at("points").get<std::vector<std::size_t>>(), page.left.points);
  const auto prov = left.at("provenance").get<std::vector<std::string>>();
  EXPECT_EQ(std::count(prov.begin(), prov.end(), "Inserted"), 1);
  EXPECT_EQ(j.at("sides").at("right").at("points").get<std::vector<std::size_t>>(), page.right.points);

  const auto off = Json::parse(run({"segment", path("page.csv"), "--disable-insertion"}).out);
  EXPECT_EQ(off.at("sides").at("left").at("points").size(), page.left.points.size() - 1);
  EXPECT_EQ(off.at("params").at("enable_insertion"), false);

  const auto left_only = Json::parse(run({"segment", path("page.csv"), "--sides", "left"}).out);
  EXPECT_FALSE(left_only.at("sides").contains("right"));
}

TEST_F(CliTest, BlankPageReportsOneBand) {
  write_rle_csv(encode_image(Raster(40, 30)), fs::path(path("blank.csv")));
  const auto r = run({"segment", path("blank.csv"), "--compact"});
  ASSERT_EQ(r.code, 0);
  const auto left = Json::parse(r.out).at("sides").at("left");
  EXPECT_TRUE(left.at("points").empty());
  EXPECT_EQ(left.at("bands").size(), 1u);
}

TEST_F(CliTest, CorruptRleNamesTheRow) {
  write("bad.csv", "10,3\n10\n4,3,2\n10\n");
  const auto r = run({"segment", path("bad.csv")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("row 1:"), std::string::npos) << r.err;  // 0-based, like every row index
}

TEST_F(CliTest, EvaluateCountMode) {
  auto r = run({"evaluate", "--o2o", "4173", "--n", "4298"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("dr_percent"), "97.09");
  r = run({"evaluate", "--o2o", "2578", "--n", "2649", "--under", "71"});
  EXPECT_EQ(Json::parse(r.out).at("dr_percent"), "97.32");
  EXPECT_EQ(Json::parse(r.out).at("tn_percent"), "2.68");
  EXPECT_EQ(run({"evaluate", "--o2o", "5", "--n", "0"}).code, 2);
}

TEST_F(CliTest, EvaluateFiles) {
  const auto page = generate(touching_spec());
  write_rle_csv(encode_image(page.raster), fs::path(path("page.csv")));
  write("page.truth.json", Json::array({to_json(page.left), to_json(page.right)}).dump());
  write("seg.json", run({"segment", path("page.csv")}).out);

  auto r = run({"evaluate", path("seg.json"), path("page.truth.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("totals").at("dr_percent"), "100.00");
  EXPECT_EQ(j.at("reports")[0].at("corrected_under"), 1);

  write("empty.json", R"({"schema": 1, "side": "left", "points": []})");
  write("left.truth.json", to_json(page.left).dump());
  r = run({"evaluate", path("empty.json"), path("left.truth.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_EQ(j.at("reports")[0].at("dr_percent"), "0.00");
  EXPECT_EQ(j.at("reports")[0].at("unmatched_truth").size(), page.left.points.size());

  write("broken.json", R"({"schema": 1, "side": "left"})");
  EXPECT_NE(run({"evaluate", path("seg.json"), path("broken.json")}).code, 0);
  write("garbage.json", "{not json");
  EXPECT_NE(run({"evaluate", path("garbage.json"), path("left.truth.json")}).code, 0);
}

TEST_F(CliTest, OverlayTicks) {
  PageSpec spec;
  spec.width = 120;
  spec.height = 100;
  spec.lines = {{10, 39, 15, 15, 0.3}, {50, 79, 15, 15, 0.3}};
  const auto page = generate(spec);
  write_pbm(page.raster, fs::path(path("in.pbm")), PbmEncoding::Raw);
  write("pts.json", R"({"side": "left", "points": [44, 89]})");
  auto r = run({"overlay", path("in.pbm"), path("pts.json"), path("out.pbm"), "--tick-length", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "ticks=2\n");
  const auto out = read_pbm(fs::path(path("out.pbm")));
  std::vector<std::size_t> changed;
  for (std::size_t y = 0; y < 100; ++y)
    for (std::size_t x = 0; x < 120; ++x)
      if (out.at(y, x) != page.raster.at(y, x)) {
        changed.push_back(y);
        break;
      }
  EXPECT_EQ(changed, (std::vector<std::size_t>{44, 89}));
  // ticks sit on the truth gap midpoints
  EXPECT_EQ(changed, page.left.points);

  write("none.json", R"({"side": "left", "points": []})");
  ASSERT_EQ(run({"overlay", path("in.pbm"), path("none.json"), path("same.pbm")}).code, 0);
  EXPECT_EQ(read_pbm(fs::path(path("same.pbm"))), page.raster);

  write("far.json", R"({"side": "left", "points": [100]})");
  EXPECT_NE(run({"overlay", path("in.pbm"), path("far.json"), path("x.pbm")}).code, 0);
}

TEST_F(CliTest, GenerateAndBatchSegment) {
  const auto corpus = path("corpus");
  auto r = run({"generate", "--out", corpus, "--pages", "4", "--seed", "9", "--touch-fraction", "0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto spec = page_spec_from_json(Json::parse(slurp(fs::path(corpus) / "page_0000.spec.json")));
  EXPECT_EQ(spec.artifacts.size(), 1u);

  fs::create_directories(path("csv"));
  for (int i = 0; i < 4; ++i) {
    const auto stem = "page_000" + std::to_string(i);
    fs::copy_file(fs::path(corpus) / (stem + ".csv"), fs::path(path("csv")) / (stem + ".csv"));
  }
  r = run({"segment", path("csv"), "--compact"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j.at("pages").size(), 4u);
  EXPECT_EQ(j.at("pages")[0].at("file"), "page_0000.csv");
  EXPECT_EQ(j.at("pages")[3].at("file"), "page_0003.csv");
  // batch output matches the single-file run
  const auto single = Json::parse(run({"segment", path("csv") + "/page_0002.csv", "--compact"}).out);
  EXPECT_EQ(j.at("pages")[2].at("sides"), single.at("sides"));
}

}  // namespace
}  // namespace rleseg
