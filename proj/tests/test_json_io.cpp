#include <doctest.h>

#include <string>

#include "slideanim/json_io.hpp"
#include "slideanim/synth.hpp"

using namespace slideanim;

TEST_CASE("plan documents round trip with exact field names") {
  SynthConfig config = default_config();
  SlideSpec slide = synth_slide(12, config);
  AnimationPlan plan = synth_scheme(13, slide, config);

  const std::string json = plan_to_json(plan);
  AnimationPlan back = plan_from_json(json);
  CHECK(back.slide_id == plan.slide_id);
  REQUIRE(back.steps.size() == plan.steps.size());
  for (std::size_t i = 0; i < back.steps.size(); ++i) CHECK(back.steps[i] == plan.steps[i]);

  for (const char* field : {"\"index\"", "\"category\"", "\"element\"", "\"effect\"",
                            "\"direction\"", "\"duration_s\"", "\"delay_s\"", "\"repeat\"",
                            "\"slide\"", "\"steps\""}) {
    CHECK(json.find(field) != std::string::npos);
  }
}

TEST_CASE("plan parser accepts direction null, string or absent") {
  const char* with_none = R"({"slide":"s","steps":[{"index":1,"category":"entrance",
    "element":"T","effect":"Fade","direction":"none","duration_s":1.0,"delay_s":0.0,
    "repeat":1}]})";
  CHECK(plan_from_json(with_none).steps[0].direction == Direction::None);

  const char* absent = R"({"slide":"s","steps":[{"index":1,"category":"entrance",
    "element":"T","effect":"Fade","duration_s":1.0,"delay_s":0.0,"repeat":1}]})";
  CHECK(plan_from_json(absent).steps[0].direction == Direction::None);
}

TEST_CASE("malformed plan documents raise descriptive errors") {
  CHECK_THROWS_WITH_AS(plan_from_json("{nope"), doctest::Contains("not valid JSON"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(plan_from_json(R"({"steps": []})"), doctest::Contains("malformed"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(
      plan_from_json(R"({"slide":"s","steps":[{"index":"one","category":"entrance",
        "element":"T","effect":"Fade","duration_s":1.0,"delay_s":0.0,"repeat":1}]})"),
      doctest::Contains("malformed"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      plan_from_json(R"({"slide":"s","steps":[{"index":1,"category":"sideways",
        "element":"T","effect":"Fade","duration_s":1.0,"delay_s":0.0,"repeat":1}]})"),
      doctest::Contains("sideways"), std::runtime_error);
}

TEST_CASE("malformed slide documents raise descriptive errors") {
  CHECK_THROWS_WITH_AS(slide_from_json("[]"), doctest::Contains("malformed"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(
      slide_from_json(R"({"slide_id":"s","canvas":{"width":10,"height":10},
        "elements":[{"name":"T","kind":"banner","x":0,"y":0,"w":4,"h":4}]})"),
      doctest::Contains("banner"), std::runtime_error);
  CHECK_THROWS_WITH_AS(slide_from_json(R"({"slide_id":"s","elements":[]})"),
                       doctest::Contains("canvas"), std::runtime_error);
}

TEST_CASE("file loaders wrap errors with the path") {
  CHECK_THROWS_WITH_AS(load_plan("/nonexistent/p.json"), doctest::Contains("/nonexistent"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(load_slide("/nonexistent/s.json"), doctest::Contains("/nonexistent"),
                       std::runtime_error);
}

TEST_CASE("slide documents round trip") {
  SynthConfig config = default_config();
  SlideSpec slide = synth_slide(44, config);
  SlideSpec back = slide_from_json(slide_to_json(slide));
  CHECK(slide_to_json(back) == slide_to_json(slide));
  CHECK(back.language == slide.language);
  CHECK(back.elements.size() == slide.elements.size());
}
