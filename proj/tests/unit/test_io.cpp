#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "entwined/error.hpp"
#include "entwined/io.hpp"

using namespace entwined;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an entwined::Error";
  return ErrorKind::Unsupported;
}

} // namespace

TEST(Io, ComplexAndMatrixRoundTrip) {
  const auto rep = su_fundamental(3);
  const auto j = io::to_json(rep[1]);
  EXPECT_EQ(j.at("rows"), 3);
  EXPECT_EQ(io::matrix_from_json(json::parse(j.dump()), ""), rep[1]);
  const Complex z(0.1, -1.0 / 3.0);
  EXPECT_EQ(io::complex_from_json(json::parse(io::to_json(z).dump()), ""), z);
}

TEST(Io, GeneratorSetRoundTrip) {
  const auto rep = su_fundamental(4);
  const auto back = io::generator_set_from_json(json::parse(io::to_json(rep).dump()));
  EXPECT_EQ(back.algebra_id, rep.algebra_id);
  ASSERT_EQ(back.d(), rep.d());
  for (std::size_t a = 0; a < rep.d(); ++a) EXPECT_EQ(back[a], rep[a]);
}

TEST(Io, StructureConstantsAreSparseAndZeroBased) {
  const auto j = io::to_json(structure_constants(su_fundamental(2)));
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0].at("a"), 0);
  EXPECT_EQ(j[0].at("b"), 1);
  EXPECT_EQ(j[0].at("c"), 2);
  EXPECT_NEAR(j[0].at("value").get<double>(), 1.0, 1e-14);
}

TEST(Io, FrequencyTableRoundTrip) {
  FrequencyTable t;
  t.chain = {"x", "y"};
  t.trials = 10;
  t.seed = (1ULL << 60) + 3;
  t.counts = {{{-0.5, 0.5}, 4}, {{0.5, 0.5}, 6}};
  const auto j = io::to_json(t);
  EXPECT_EQ(j.at("chain"), json({"x", "y"}));
  const auto back = io::frequency_table_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.seed, t.seed);
  EXPECT_EQ(back.counts.size(), 2u);
  EXPECT_EQ(back.counts[1].count, 6u);
}

TEST(Io, SeedsAsNumbersOrStrings) {
  EXPECT_EQ(io::seed_from_json(json(42), ""), 42u);
  EXPECT_EQ(io::seed_from_json(json("18446744073709551615"), ""), 18446744073709551615ULL);
  EXPECT_EQ(kind_of([] { io::seed_from_json(json(-1), "/seed"); }), ErrorKind::SchemaError);
  EXPECT_EQ(kind_of([] { io::seed_from_json(json("12x"), "/seed"); }), ErrorKind::SchemaError);
}

TEST(Io, QuestionRefs) {
  EXPECT_EQ(std::get<std::string>(io::question_ref_from_json(json("wine"), "")), "wine");
  const auto v = std::get<RealVector>(io::question_ref_from_json(json({0.6, 0.8}), ""));
  EXPECT_EQ(v.size(), 2);
  EXPECT_EQ(kind_of([] { io::question_ref_from_json(json(3), "/question"); }), ErrorKind::SchemaError);
}

TEST(Io, EventRoundTrip) {
  SessionEvent e;
  e.kind = SessionEvent::Kind::Ask;
  e.seq = 3;
  e.question = std::string("water");
  e.outcome = -0.5;
  e.seed = 123456789;
  e.draw = 0.25;
  e.timestamp = "2026-01-01T00:00:00.000Z";
  const auto back = io::event_from_json(json::parse(io::to_json(e).dump()), "");
  EXPECT_EQ(back.seq, 3u);
  EXPECT_EQ(back.outcome, -0.5);
  EXPECT_EQ(back.seed, 123456789u);
  EXPECT_EQ(back.draw, 0.25);
  EXPECT_EQ(back.timestamp, e.timestamp);
}

TEST(Io, SnapshotMissingFieldIsSchemaError) {
  auto session = new_session(builtin_scenario("child-su2"), 1);
  auto snapshot = io::session_snapshot(session);
  snapshot.erase("amplitudes");
  EXPECT_EQ(kind_of([&] { io::session_from_snapshot(snapshot); }), ErrorKind::SchemaError);
}

TEST(Io, FileRoundTripAndMalformedInput) {
  const auto dir = std::filesystem::temp_directory_path() / "entwined_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "doc.json").string();
  io::write_json_file(path, {{"a", 1}});
  EXPECT_EQ(io::read_json_file(path).at("a"), 1);
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("{not json", f);
    std::fclose(f);
  }
  EXPECT_EQ(kind_of([&] { io::read_json_file(path); }), ErrorKind::SchemaError);
  std::filesystem::remove_all(dir);
}
