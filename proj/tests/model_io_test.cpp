#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "conic/conic_bundles.hpp"
#include "conic/fixtures.hpp"
#include "conic/model_io.hpp"

using namespace conic;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    SurfaceModel(model_spec_from_json(parse_json_text(text, "test")));
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::Io;
}

const char* kMinimal = R"({"curves": [{"label": "E1", "kind": "exc", "point": 1}], "config": ["II", "10I1"]})";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(ModelIo, RoundTripFixtures) {
  auto fixtures = corpus_fixtures();
  fixtures.push_back(fixture_only_type_d_nodal());
  for (const auto& fx : fixtures) {
    const Json j = to_json(fx.spec);
    const ModelSpec back = model_spec_from_json(Json::parse(j.dump()));
    EXPECT_EQ(to_json(back), j) << fx.id;
    const SurfaceModel a(fx.spec), b(back);
    EXPECT_EQ(a.curves(), b.curves()) << fx.id;
    EXPECT_EQ(a.config(), b.config());
    EXPECT_EQ(a.forest(), b.forest());
  }
}

TEST(ModelIo, ShippedDataMatchesEmbeddedFixtures) {
  auto fixtures = corpus_fixtures();
  fixtures.push_back(fixture_only_type_d_nodal());
  for (const auto& fx : fixtures) {
    const std::string path = std::string(CONIC_DATA_DIR) + "/" + fx.id + ".json";
    EXPECT_EQ(read_file(path), to_json(fx.spec).dump(2) + "\n") << path;
    const SurfaceModel loaded = load_model(path);
    EXPECT_EQ(loaded.curves(), SurfaceModel(fx.spec).curves());
  }
  EXPECT_EQ(read_file(std::string(CONIC_DATA_DIR) + "/conic-pencil.json"),
            to_json(illustration_spec()).dump(2) + "\n");
}

TEST(ModelIo, MinimalModel) {
  const ModelSpec s = model_spec_from_json(Json::parse(kMinimal));
  EXPECT_EQ(s.curves.size(), 1u);
  EXPECT_EQ(s.forest, BasePointForest());
  EXPECT_EQ(s.config.size(), 11u);
  EXPECT_TRUE(s.fibers.empty());
}

TEST(ModelIo, SchemaErrors) {
  EXPECT_EQ(parse_error(R"({"curves": [], "config": [], "extra": 1})"), ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"config": []})"), ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": []})"), ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [{"label": "A", "kind": "exc", "point": 1, "colour": 2}], "config": []})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [{"label": "A", "kind": "quartic", "through": []}], "config": []})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [{"kind": "exc", "point": 1}], "config": []})"), ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [{"label": "A", "kind": "exc", "point": 12}], "config": []})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [{"label": "A", "kind": "class", "class": [1, 2]}], "config": []})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [{"label": "A", "kind": "line", "through": [[1]]}], "config": []})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [{"label": "A", "kind": "exc", "point": 1, "through": []}], "config": []})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [], "config": ["V"]})"), ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [], "config": [], "points": [{"id": 2, "near": 1, "tangent": true}]})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [], "config": [], "points": [{"id": 2}, {"id": 2}]})"), ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [], "config": [], "pencils": [{"kind": "cubics", "base": []}]})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [{"label": "A", "kind": "exc", "point": 1, "role": "king"}], "config": []})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [], "config": [], "fibers": {"IV": [["A"]]}})"), ErrorCode::Schema);
  EXPECT_EQ(parse_error(R"({"curves": [{"label": "A", "kind": "class", "class": ["1x",0,0,0,0,0,0,0,0,0]}], "config": []})"),
            ErrorCode::Schema);
  EXPECT_EQ(parse_error("{not json"), ErrorCode::Schema);
  // Well-formed JSON with inconsistent geometry is a domain error.
  EXPECT_EQ(parse_error(R"({"curves": [], "config": [], "points": [{"id": 2, "near": 3}]})"),
            ErrorCode::InvalidForest);
  EXPECT_EQ(parse_error(R"({"config": [], "points": [{"id": 2, "near": 1}],
                            "curves": [{"label": "A", "kind": "line", "through": [[2, 1]]}]})"),
            ErrorCode::InconsistentProximity);
}

TEST(ModelIo, RepeatedFiberKeysAndRoles) {
  const char* text = R"({
    "curves": [{"label": "A", "kind": "exc", "point": 1, "role": "section"}],
    "config": ["I3", "I3", "6I1"],
    "fibers": {"I3": [["A", 1]], "I3#2": [["A", 1]]}
  })";
  const ModelSpec s = model_spec_from_json(Json::parse(text));
  ASSERT_EQ(s.fibers.size(), 2u);
  EXPECT_EQ(s.fibers[1].key, "I3#2");
  EXPECT_EQ(s.fibers[1].type, KodairaType::In(3));
  EXPECT_EQ(s.curves[0].declared_role, CurveRole::Section);
  EXPECT_EQ(to_json(s)["fibers"].size(), 2u);
}

TEST(ModelIo, BigCoefficients) {
  const char* text = R"({"curves": [{"label": "X", "kind": "class",
      "class": ["123456789012345678901234567890", 0, 0, 0, 0, 0, 0, 0, 0, -5]}], "config": []})";
  const ModelSpec s = model_spec_from_json(Json::parse(text));
  EXPECT_EQ(s.curves[0].explicit_class.degree(), Integer("123456789012345678901234567890"));
  EXPECT_EQ(s.curves[0].explicit_class.multiplicity(9), -5);
  const Json back = to_json(s.curves[0].explicit_class);
  EXPECT_TRUE(back[0].is_string());
  EXPECT_TRUE(back[9].is_number_integer());
  EXPECT_EQ(class_from_json(back), s.curves[0].explicit_class);
}

TEST(ModelIo, LoadErrors) {
  try {
    load_model("/nonexistent/model.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(ModelIo, FiberTerms) {
  const SurfaceModel m(fixture_only_type_d().spec);
  const auto t = fiber_terms_from_json(Json::parse(R"([["E9", 2], ["L", 1]])"), m);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].curve.label, "E9");
  EXPECT_EQ(t[0].multiplicity, 2);
  try {
    fiber_terms_from_json(Json::parse(R"([["Z", 1]])"), m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownCurve);
  }
  EXPECT_THROW(fiber_terms_from_json(Json::parse(R"({"E9": 2})"), m), Error);
}

TEST(ModelIo, BundleJsonShape) {
  const SurfaceModel m(fixture_only_type_d().spec);
  const auto bundles = enumerate_conic_bundles(m, 1);
  ASSERT_EQ(bundles.size(), 1u);
  const Json j = to_json(bundles[0]);
  EXPECT_EQ(j.dump(),
            R"({"class":[1,1,0,0,0,0,0,0,0,0],"fibers":[{"type":"D9","support":)"
            R"([["E9",2],["E8",2],["E7",2],["E6",2],["E5",2],["E4",2],["E3",2],["E2",1],["L",1]]}]})");
}

TEST(ModelIo, ErrorObject) {
  const Json j = error_json(Error(ErrorCode::NotAConicFiber, "empty support"));
  EXPECT_EQ(j.dump(), R"({"error":{"code":"NotAConicFiber","message":"empty support"}})");
}
