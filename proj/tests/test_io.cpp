#include <gtest/gtest.h>

#include <filesystem>

#include "stagwalk/io.hpp"

using namespace stagwalk;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "stagwalk_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(GraphJson, RoundTripGeometric) {
  for (auto b : {BoundaryMode::Open, BoundaryMode::Periodic}) {
    const auto g = generate_rgg(50, 2.0, b, 3);
    const auto path = scratch("g.json");
    save_graph(path, g);
    const auto back = load_graph(path);
    EXPECT_EQ(back, g);
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_EQ(*back.positions(), *g.positions());
  }
}

TEST(GraphJson, RoundTripAbstract) {
  const auto g = cycle_graph(5);
  const auto back = graph_from_json(graph_to_json(g));
  EXPECT_EQ(back.edges(), g.edges());
  EXPECT_FALSE(back.positions().has_value());
}

TEST(GraphJson, RejectsBadInput) {
  auto base = graph_to_json(path_graph(4));
  auto j = base;
  j["edges"] = json::parse("[[1,0]]");
  EXPECT_THROW(graph_from_json(j), ValidationError);
  j["edges"] = json::parse("[[0,1],[0,1]]");
  EXPECT_THROW(graph_from_json(j), ValidationError);
  j["edges"] = json::parse("[[1,2],[0,1]]");
  EXPECT_THROW(graph_from_json(j), ValidationError);
  j["edges"] = json::parse("[[0,9]]");
  EXPECT_THROW(graph_from_json(j), ValidationError);
  j = base;
  j["positions"] = json::parse("[[0.1,0.1]]");
  EXPECT_THROW(graph_from_json(j), ValidationError);
  j = base;
  j.erase("n");
  EXPECT_THROW(graph_from_json(j), ValidationError);
  EXPECT_THROW(parse_json("{not json", "x"), ValidationError);
}

TEST(GraphJson, GeometricEdgesMustMatchPositions) {
  auto j = graph_to_json(generate_rgg(30, 2.0, BoundaryMode::Open, 1));
  ASSERT_TRUE(j.value("geometric", false));
  ASSERT_FALSE(j["edges"].empty());
  j["edges"].erase(j["edges"].begin());
  EXPECT_THROW(graph_from_json(j), ValidationError);
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_THROW(load_graph("/nonexistent/dir/g.json"), IoError);
  EXPECT_THROW(write_text_file("/nonexistent/dir/x.txt", "x"), IoError);
}

TEST(CoverJson, RoundTrip) {
  const auto g = generate_rgg(60, 2.0, BoundaryMode::Periodic, 2);
  const auto cover = complete_cover(g, tessellate(g));
  const auto path = scratch("c.json");
  save_cover(path, cover);
  const auto back = load_cover(path, g.size());
  EXPECT_EQ(back, cover);
  EXPECT_TRUE(validate_cover(g, back).ok());
}

TEST(CoverJson, RejectsBadInput) {
  const auto g = path_graph(3);
  auto j = cover_to_json(tessellate(g));
  EXPECT_THROW(cover_from_json(j, 4), ValidationError);
  auto bad = j;
  bad["edges"][0][2] = json::array();
  EXPECT_THROW(cover_from_json(bad, 3), ValidationError);
  bad = j;
  bad["edges"][0][2] = json::parse("[7]");
  EXPECT_THROW(cover_from_json(bad, 3), ValidationError);
}

TEST(ScheduleJsonl, RoundTrip) {
  const auto g = generate_rgg(20, 2.0, BoundaryMode::Open, 4);
  const auto cover = complete_cover(g, tessellate(g));
  const auto sched = compile_walk(cover, 0.7);
  const auto text = schedule_to_jsonl(sched);
  const auto back = schedule_from_jsonl(text);
  EXPECT_EQ(back.gates, sched.gates);
  EXPECT_EQ(back.blocks, sched.blocks);
  EXPECT_EQ(back.barriers, sched.barriers);
  EXPECT_EQ(back.global_phase, sched.global_phase);
}

TEST(ScheduleJsonl, ParsesHandWrittenRecords) {
  const std::string text =
      "{\"marker\":\"layer\",\"tessellation\":0,\"qubits\":[0,1]}\n"
      "{\"kind\":\"PauliX\",\"qubits\":[1]}\n"
      "{\"kind\":\"ControlledRotY\",\"qubits\":[0,1],\"angle\":1.5}\n"
      "{\"global_phase\":-0.5}\n";
  const auto s = schedule_from_jsonl(text);
  ASSERT_EQ(s.gates.size(), 2U);
  EXPECT_EQ(s.gates[0], Gate::x(1));
  EXPECT_EQ(s.gates[1], Gate::cry(0, 1, 1.5));
  ASSERT_EQ(s.blocks.size(), 1U);
  EXPECT_EQ(s.blocks[0].end, 2U);
  EXPECT_DOUBLE_EQ(s.global_phase, -0.5);
}

TEST(ScheduleJsonl, RejectsBadRecords) {
  EXPECT_THROW(schedule_from_jsonl("{\"kind\":\"PauliX\",\"qubits\":[0]}\n"), ValidationError);
  EXPECT_THROW(schedule_from_jsonl("{\"kind\":\"Hadamard\",\"qubits\":[0]}\n{\"global_phase\":0}\n"),
               ValidationError);
  EXPECT_THROW(schedule_from_jsonl("{\"global_phase\":0}\n{\"kind\":\"PauliX\",\"qubits\":[0]}\n"),
               ValidationError);
  EXPECT_THROW(schedule_from_jsonl("{\"kind\":\"RotY\",\"qubits\":[0]}\n{\"global_phase\":0}\n"), ValidationError);
}

TEST(Csv, StateColumns) {
  const auto csv = state_to_csv(WalkState::basis(2, 1));
  EXPECT_EQ(csv, "vertex,re,im,probability\n0,0,0,0\n1,1,0,1\n");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
}
