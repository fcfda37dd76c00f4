#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "scenes.hpp"
#include "stallwatch/errors.hpp"
#include "stallwatch/io.hpp"

namespace sw = stallwatch;
namespace fs = std::filesystem;
using sw::EventState;
using sw::ObjectClass;

namespace {

const char* kOneBox =
    R"({"clip_id":"c1","frame_idx":3,"boxes":[{"x":10,"y":20,"w":30,"h":40,)"
    R"("scores":{"horse":0.8,"person":0.1},"confidence":0.9}]})";

sw::ParsedDetections parse(const std::string& text, sw::IngestOptions o = {}) {
  std::istringstream in(text);
  return sw::parse_detections(in, o);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const sw::InputError& e) {
    return e.what();
  }
  return "";
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("stallwatch_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

sw::Event ev(std::string clip, ObjectClass cls, EventState s, double a, double b,
             std::string cam = "k1") {
  return {std::move(cam), std::move(clip), cls, s, a, b, std::nullopt};
}

std::vector<sw::Event> video1_person_events() {
  return {ev("video01", ObjectClass::person, EventState::outside_invisible, 0, 47),
          ev("video01", ObjectClass::person, EventState::outside_visible, 47, 48),
          ev("video01", ObjectClass::person, EventState::outside_invisible, 48, 54),
          ev("video01", ObjectClass::person, EventState::inside_visible, 54, 57),
          ev("video01", ObjectClass::person, EventState::inside_invisible, 57, 60)};
}

}  // namespace

TEST(Detections, MinimalLine) {
  const auto p = parse(kOneBox);
  ASSERT_EQ(p.clips.size(), 1u);
  EXPECT_EQ(p.clips[0].clip_id, "c1");
  ASSERT_EQ(p.clips[0].frames.at(3).size(), 1u);
  const auto& d = p.clips[0].frames.at(3)[0];
  EXPECT_EQ(d.frame_idx, 3);
  EXPECT_EQ(d.box, (sw::Box{10, 20, 30, 40}));
  EXPECT_DOUBLE_EQ(d.scores[ObjectClass::horse], 0.8);
  EXPECT_DOUBLE_EQ(d.confidence, 0.9);
}

TEST(Detections, LowConfidenceDropped) {
  const std::string line =
      R"({"clip_id":"c1","frame_idx":0,"boxes":[{"x":1,"y":1,"w":5,"h":5,)"
      R"("scores":{"horse":0.8,"person":0.1},"confidence":0.4}]})";
  const auto p = parse(line);
  ASSERT_EQ(p.clips.size(), 1u);
  EXPECT_TRUE(p.clips[0].frames.at(0).empty());
}

TEST(Detections, TruncatedJsonNamesTheLine) {
  const std::string text = std::string(kOneBox) + "\n{\"clip_id\":\"c1\",\"frame_";
  const std::string msg = error_of(text);
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(Detections, DuplicateFrameRejected) {
  const std::string msg = error_of(std::string(kOneBox) + "\n" + kOneBox);
  EXPECT_NE(msg.find("duplicate"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(Detections, SchemaViolations) {
  EXPECT_NE(error_of(R"({"frame_idx":0,"boxes":[]})"), "");
  EXPECT_NE(error_of(R"({"clip_id":"c","frame_idx":-1,"boxes":[]})"), "");
  EXPECT_NE(error_of(R"({"clip_id":"c","frame_idx":0})"), "");
  EXPECT_NE(error_of(R"({"clip_id":"c","frame_idx":0,"boxes":[{"x":0,"y":0,"w":0,"h":1,"scores":{"horse":1,"person":0},"confidence":1}]})"), "");
  EXPECT_NE(error_of(R"({"clip_id":"c","frame_idx":0,"boxes":[{"x":0,"y":0,"w":1,"h":1,"scores":{"horse":1.5,"person":0},"confidence":1}]})"), "");
  EXPECT_NE(error_of(R"({"clip_id":"c","frame_idx":0,"boxes":[{"x":0,"y":0,"w":1,"h":1,"scores":{"cow":1},"confidence":1}]})"), "");
  EXPECT_NE(error_of("[1,2,3]"), "");
}

TEST(Detections, ClampedToFrameWithWarning) {
  const std::string line =
      R"({"clip_id":"c1","frame_idx":0,"boxes":[{"x":1250,"y":700,"w":60,"h":40,)"
      R"("scores":{"horse":0.8,"person":0.1},"confidence":0.9}]})";
  sw::IngestOptions o;
  o.frame = sw::FrameDims{1280, 720};
  const auto p = parse(line, o);
  EXPECT_EQ(p.clips[0].frames.at(0)[0].box, (sw::Box{1250, 700, 30, 20}));
  EXPECT_EQ(p.warnings.size(), 1u);
}

TEST(Detections, BlankLinesSkippedAndClipsKeepFirstAppearanceOrder) {
  const std::string text =
      "\n" + std::string(R"({"clip_id":"b","frame_idx":1,"boxes":[]})") + "\n\n" +
      R"({"clip_id":"a","frame_idx":0,"boxes":[]})" + "\n" +
      R"({"clip_id":"b","frame_idx":0,"boxes":[]})" + "\n";
  const auto p = parse(text);
  ASSERT_EQ(p.clips.size(), 2u);
  EXPECT_EQ(p.clips[0].clip_id, "b");
  EXPECT_EQ(p.clips[0].frames.begin()->first, 0);
}

TEST(Detections, RoundTripOnRandomClips) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cfg = sw::gen::random_config(rng);
    std::vector<sw::ClipDetections> clips{sw::gen::random_clip(rng, cfg, "a"),
                                          sw::gen::random_clip(rng, cfg, "b")};
    std::ostringstream out;
    sw::write_detections(out, clips);
    std::istringstream in(out.str());
    sw::IngestOptions o;
    o.confidence_threshold = 0.0;
    const auto back = sw::parse_detections(in, o);
    EXPECT_EQ(back.clips, clips);
    // Ingestion is deterministic down to the bytes written back.
    std::ostringstream again;
    sw::write_detections(again, back.clips);
    EXPECT_EQ(again.str(), out.str());
  }
}

TEST_F(TempDir, ConfigDefaultsAndRoundTrip) {
  const fs::path p = dir_ / "stall.json";
  {
    std::ofstream f(p);
    f << R"({"camera_id":"k9","floor_polygon":[[0,300],[1280,300],[1280,720],[0,720]],)"
         R"("entrance":[[0,300],[100,300]]})";
  }
  const auto cfg = sw::load_config(p);
  EXPECT_EQ(cfg.camera_id, "k9");
  EXPECT_EQ(cfg.frame_stride, 20);
  EXPECT_EQ(cfg.fps, 20);
  EXPECT_DOUBLE_EQ(cfg.confidence_threshold, 0.5);
  EXPECT_DOUBLE_EQ(cfg.entrance_dist_px, 150.0);
  EXPECT_DOUBLE_EQ(cfg.edge_margin_px, 10.0);
  EXPECT_DOUBLE_EQ(cfg.min_area_ratio, 0.0);
  EXPECT_DOUBLE_EQ(cfg.tracker.iou_gate, 0.3);
  EXPECT_EQ(cfg.tracker.max_age, 5);
  EXPECT_EQ(cfg.frames_per_clip(), 60);

  const auto back = sw::config_from_json(sw::config_to_json(cfg));
  EXPECT_EQ(sw::config_to_json(back).dump(), sw::config_to_json(cfg).dump());
}

TEST(Config, EntranceDistanceScalesWithWidth) {
  auto j = sw::config_to_json(sw::scenes::stall());
  j.erase("entrance_dist_px");
  j["frame"] = {{"width", 640}, {"height", 360}};
  j["floor_polygon"] = {{10, 10}, {600, 10}, {600, 350}};
  j["entrance"] = {{10, 10}, {50, 10}};
  EXPECT_DOUBLE_EQ(sw::config_from_json(j).entrance_dist_px, 75.0);
}

TEST(Config, ValidationErrorsNameTheField) {
  auto expect_field = [](sw::json j, const std::string& field) {
    try {
      sw::config_from_json(j);
      ADD_FAILURE() << "accepted config with bad " << field;
    } catch (const sw::ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  const auto base = sw::config_to_json(sw::scenes::stall());
  auto j = base;
  j["floor_polygon"] = {{0, 0}, {10, 10}};
  expect_field(j, "floor_polygon");
  j = base;
  j["floor_polygon"] = {{0, 0}, {100, 100}, {100, 0}, {0, 100}};
  expect_field(j, "floor_polygon");
  j = base;
  j["floor_polygon"] = {{0, 0}, {1300, 0}, {0, 100}};
  expect_field(j, "floor_polygon");
  j = base;
  j["entrance"] = {{-5, 0}, {10, 10}};
  expect_field(j, "entrance");
  j = base;
  j["entrance"] = {{5, 5}, {5, 5}};
  expect_field(j, "entrance");
  j = base;
  j["confidence_threshold"] = 0;
  expect_field(j, "confidence_threshold");
  j = base;
  j["frame_stride"] = 7;
  expect_field(j, "frame_stride");
  j = base;
  j["fps"] = "fast";
  expect_field(j, "fps");
  j = base;
  j["interior_edges"] = {"middle"};
  expect_field(j, "interior_edges");
  j = base;
  j["tracker"]["iou_gate"] = 1.5;
  expect_field(j, "iou_gate");
}

TEST(Config, RoundTripOnRandomConfigs) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto cfg = sw::gen::random_config(rng);
    const auto j = sw::config_to_json(cfg);
    EXPECT_EQ(sw::config_to_json(sw::config_from_json(sw::json::parse(j.dump()))), j);
  }
}

TEST(Events, TableRowRoundTrip) {
  const auto events = video1_person_events();
  std::ostringstream out;
  sw::write_events(out, events);
  std::istringstream in(out.str());
  EXPECT_EQ(sw::read_events(in), events);
}

TEST(Events, EmptyListWritesHeaderOnly) {
  std::ostringstream out;
  sw::write_events(out, {});
  EXPECT_EQ(out.str(), "{\"format\":\"stallwatch.events\",\"version\":1}\n");
  std::istringstream in(out.str());
  EXPECT_TRUE(sw::read_events(in).empty());
}

TEST(Events, WallClockAndFractionalTimesSurvive) {
  auto e = ev("c", ObjectClass::horse, EventState::inside_visible, 0.5, 59.25);
  e.wall_clock_start = "2024-03-01T10:00:00Z";
  std::ostringstream out;
  sw::write_events(out, std::vector{e});
  std::istringstream in(out.str());
  EXPECT_EQ(sw::read_events(in), std::vector{e});
}

TEST(Events, RejectsBadRecords) {
  auto read = [](const std::string& body) {
    std::istringstream in("{\"format\":\"stallwatch.events\",\"version\":1}\n" + body);
    return sw::read_events(in);
  };
  EXPECT_THROW(read(R"({"camera_id":"k","clip_id":"c","class":"horse","state":"not_localized","start_s":0,"end_s":1})"),
               sw::InputError);
  EXPECT_THROW(read(R"({"camera_id":"k","clip_id":"c","class":"horse","state":"inside_visible","start_s":5,"end_s":5})"),
               sw::InputError);
  EXPECT_THROW(read(R"({"camera_id":"k","clip_id":"c","class":"cow","state":"inside_visible","start_s":0,"end_s":5})"),
               sw::InputError);
  std::istringstream no_header(R"({"camera_id":"k"})");
  EXPECT_THROW(sw::read_events(no_header), sw::InputError);
}

TEST(Events, UnsortedWriteRefused) {
  auto events = video1_person_events();
  std::swap(events[0], events[1]);
  std::ostringstream out;
  EXPECT_THROW(sw::write_events(out, events), sw::InputError);
  sw::sort_events(events);
  EXPECT_TRUE(sw::events_sorted(events));
}

TEST(Events, RandomRoundTrip) {
  std::mt19937_64 rng(3);
  const EventState states[] = {EventState::outside_invisible, EventState::outside_visible,
                               EventState::inside_visible, EventState::multiple_inside_visible,
                               EventState::inside_invisible};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<sw::Event> events;
    for (int i = sw::gen::uniform_int(rng, 0, 30); i > 0; --i) {
      const double a = sw::gen::uniform(rng, 0, 59);
      events.push_back(ev("c" + std::to_string(sw::gen::uniform_int(rng, 0, 3)),
                          sw::gen::uniform_int(rng, 0, 1) ? ObjectClass::horse : ObjectClass::person,
                          states[sw::gen::uniform_int(rng, 0, 4)], a, a + sw::gen::uniform(rng, 0.001, 1),
                          "k" + std::to_string(sw::gen::uniform_int(rng, 0, 1))));
    }
    sw::sort_events(events);
    std::ostringstream out;
    sw::write_events(out, events);
    std::istringstream in(out.str());
    EXPECT_EQ(sw::read_events(in), events);
  }
}

TEST_F(TempDir, AppendInOrderAndRefuseOutOfOrder) {
  const fs::path log = dir_ / "events.jsonl";
  const std::vector c1{ev("clip_001", ObjectClass::horse, EventState::inside_visible, 0, 60)};
  const std::vector c2{ev("clip_002", ObjectClass::horse, EventState::inside_invisible, 0, 60)};
  const std::vector c0{ev("clip_000", ObjectClass::horse, EventState::inside_visible, 0, 60)};
  const std::vector other{ev("clip_000", ObjectClass::horse, EventState::inside_visible, 0, 60, "k2")};
  sw::append_events(log, c1);
  sw::append_events(log, c2);
  EXPECT_THROW(sw::append_events(log, c0), sw::UsageError);
  EXPECT_THROW(sw::append_events(log, c2), sw::UsageError);
  sw::append_events(log, other);  // a different camera has its own order
  const auto all = sw::read_events(log);
  ASSERT_EQ(all.size(), 3u);
  const auto tail = sw::tail_from_log(all, "k1");
  ASSERT_TRUE(tail[ObjectClass::horse]);
  EXPECT_EQ(tail[ObjectClass::horse]->clip_id, "clip_002");
  EXPECT_FALSE(tail[ObjectClass::person]);
  EXPECT_FALSE(sw::tail_from_log(all, "nobody")[ObjectClass::horse]);
}

TEST(Script, RoundTripAndDefaults) {
  for (int i = 0; i < 25; ++i) {
    const auto s = sw::scenes::seeded_script(i);
    const auto j = sw::script_to_json(s);
    const auto back = sw::script_from_json(sw::json::parse(j.dump()));
    EXPECT_EQ(sw::script_to_json(back), j);
    EXPECT_EQ(sw::generate(back).ground_truth, sw::generate(s).ground_truth);
  }
  auto j = sw::script_to_json(sw::scenes::static_horse());
  j["actors"][0].erase("visible");
  j["clips"] = 2;
  const auto s = sw::script_from_json(j);
  EXPECT_EQ(s.actors[0].visible, (std::vector<sw::Interval>{{0, 120}}));
}

TEST(Script, ErrorsNameTheLocation) {
  auto j = sw::script_to_json(sw::scenes::static_horse());
  j["actors"][0]["waypoints"][0]["box"] = {0, 0, -1, 5};
  try {
    sw::script_from_json(j);
    FAIL();
  } catch (const sw::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("actors[0].waypoints[0]"), std::string::npos) << e.what();
  }
  j = sw::script_to_json(sw::scenes::static_horse());
  j["actors"][0]["class"] = "cow";
  EXPECT_THROW(sw::script_from_json(j), sw::InputError);
  j = sw::script_to_json(sw::scenes::static_horse());
  j["clip_prefix"] = 5;
  EXPECT_THROW(sw::script_from_json(j), sw::InputError);
}

TEST(Noise, JsonRoundTrip) {
  sw::NoiseModel n;
  n.center_sigma_px = 2;
  n.dropout_prob = 0.1;
  n.spurious_per_frame = 0.3;
  const auto back = sw::noise_from_json(sw::noise_to_json(n));
  EXPECT_EQ(sw::noise_to_json(back), sw::noise_to_json(n));
  EXPECT_THROW(sw::noise_from_json({{"dropout_prob", 2.0}}), sw::InputError);
}

TEST(Embeddings, ReadAndValidate) {
  std::istringstream in(R"({"clip_id":"c","frame_idx":0,"embedding":[1,0]})"
                        "\n"
                        R"({"clip_id":"c","frame_idx":1,"embedding":[0,1]})");
  const auto recs = sw::read_embeddings(in);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[1].vector, (std::vector<double>{0, 1}));
  std::istringstream bad(R"({"clip_id":"c","frame_idx":0,"embedding":"x"})");
  EXPECT_THROW(sw::read_embeddings(bad), sw::InputError);
}

TEST(ClipMeta, ReadAndValidate) {
  std::istringstream in(R"({"clip_id":"c","stall_id":"s","time_of_day":"day","season":"winter"})");
  const auto m = sw::read_clip_meta(in);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].season, "winter");
  std::istringstream bad(R"({"clip_id":"c","stall_id":"s","time_of_day":"day"})");
  EXPECT_THROW(sw::read_clip_meta(bad), sw::InputError);
}
