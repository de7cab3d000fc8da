#include "graftlab/recipes.hpp"
#include "graftlab/verify.hpp"

#include <gtest/gtest.h>

using namespace graftlab;

TEST(Checks, RelationsAndNaN) {
  using verify::Relation;
  EXPECT_TRUE(verify::make_check("x", 1.0, Relation::Less, 2.0).pass);
  EXPECT_FALSE(verify::make_check("x", 2.0, Relation::Less, 2.0).pass);
  EXPECT_TRUE(verify::make_check("x", 2.0, Relation::LessEq, 2.0).pass);
  EXPECT_TRUE(verify::make_check("x", 3.0, Relation::Greater, 2.0).pass);
  EXPECT_TRUE(verify::make_check("x", 0.0, Relation::Equal, 0.0).pass);
  EXPECT_FALSE(verify::make_check("x", std::nan(""), Relation::Less, 1.0).pass);
  EXPECT_FALSE(verify::make_check("x", std::nan(""), Relation::GreaterEq, 1.0).pass);
}

TEST(TriangleSlack, TendsToZeroAndBoundsTheGap) {
  double prev = 10.0;
  for (double a : {1e-2, 1e-3, 1e-4, 1e-6, 1e-8}) {
    double s = verify::triangle_slack(a, 10.0);
    EXPECT_LT(s, prev);
    prev = s;
  }
  EXPECT_LT(prev, 1e-4);
  // A proven bound: holds at every angle and length up to K.
  for (double a : {1e-3, 0.05, 0.3}) {
    for (double len : {0.1, 1.0, 4.0}) {
      EXPECT_GT(right_triangle_gap(a, len).gap, 1.0 - verify::triangle_slack(a, 4.0) - 1e-12);
    }
  }
}

TEST(Config, RejectsUnknownNamesAndBadValues) {
  auto code = [](const verify::VerifyConfig& c, std::vector<std::string> names = {}) {
    try {
      verify::run_verify(c, names);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidParams;
  };
  verify::VerifyConfig c;
  EXPECT_EQ(code(c, {"no-such-suite"}), Errc::ConfigError);
  c.tolerances["no-such-tolerance"] = 1.0;
  EXPECT_EQ(code(c), Errc::ConfigError);
  c.tolerances = {{"trace", -1.0}};
  EXPECT_EQ(code(c), Errc::ConfigError);
  c.tolerances.clear();
  c.depth = 7;
  EXPECT_EQ(code(c), Errc::ConfigError);
}

TEST(Suites, EveryCriterionIsAddressable) {
  std::vector<std::string> names;
  for (const auto& s : verify::suites()) names.push_back(s.name);
  EXPECT_EQ(names.size(), 12u);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
}

TEST(Suites, ZeroToleranceFailsWithMeasuredValues) {
  verify::VerifyConfig c;
  c.tolerances["fan-analytic"] = 0.0;
  c.tolerances["fan-quadrature"] = 0.0;
  auto r = verify::run_verify(c, {"fan-area"});
  ASSERT_EQ(r.suites.size(), 1u);
  EXPECT_FALSE(r.pass());
  int failing = 0;
  for (const auto& ch : r.suites[0].checks) {
    EXPECT_GE(ch.measured, 0.0);
    failing += ch.pass ? 0 : 1;
  }
  EXPECT_GT(failing, 0);
}

TEST(Suites, ReportsAreByteIdenticalForEqualSeeds) {
  verify::VerifyConfig c;
  c.seed = 77;
  std::vector<std::string> names{"gauss-bonnet", "multiarc-integrality", "thurston-K"};
  auto a = verify::to_json(verify::run_verify(c, names), c).dump();
  auto b = verify::to_json(verify::run_verify(c, names), c).dump();
  EXPECT_EQ(a, b);
  c.seed = 78;
  EXPECT_NE(a, verify::to_json(verify::run_verify(c, names), c).dump());
}

TEST(Suites, SeedStreamsAreIndependentOfSelection) {
  verify::VerifyConfig c;
  auto alone = verify::to_json(verify::run_verify(c, {"gauss-bonnet"}), c)["suites"][0];
  auto both = verify::to_json(verify::run_verify(c, {"gauss-bonnet", "thurston-K"}), c)["suites"][0];
  EXPECT_EQ(alone, both);
}

TEST(Suites, SampleOverrideChangesTheWork) {
  verify::VerifyConfig c;
  c.samples["gauss-bonnet"] = 3;
  auto r = verify::run_verify(c, {"gauss-bonnet"});
  EXPECT_NE(r.suites[0].checks[0].name.find("3 regions"), std::string::npos);
}

TEST(Figures, UnknownRecipe) {
  try {
    recipes::make_figure("spirograph");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownRecipe);
  }
}

TEST(Figures, RasterMatchesScaleContract) {
  for (const auto& name : recipes::names()) {
    auto f = recipes::make_figure(name);
    auto r = figure::rasterize(f, figure::raster_scale(f));
    EXPECT_GE(std::min(r.width, r.height), 1024) << name;
    EXPECT_EQ(r.width, static_cast<int>(std::lround(f.width * figure::raster_scale(f))));
    std::string svg = figure::to_svg(f);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("<path"), std::string::npos);
  }
}

TEST(Figures, FillCoversItsArea) {
  figure::Figure f;
  f.width = f.height = 100;
  f.polygon({{{-1, -1}, {0, -1}, {0, 1}, {-1, 1}}}, {0, 0, 0}, 1.0);
  auto r = figure::rasterize(f, 1.0);
  auto px = [&](int x, int y) { return r.rgb[3 * (static_cast<std::size_t>(y) * 100 + x)]; };
  EXPECT_EQ(px(10, 50), 0);
  EXPECT_EQ(px(90, 50), 255);
  // The edge at x = 50 falls between pixels.
  EXPECT_EQ(px(49, 50), 0);
  EXPECT_EQ(px(50, 50), 255);
}

TEST(Figures, AnnulusUsesEvenOdd) {
  figure::Figure f;
  f.width = f.height = 200;
  std::vector<figure::Pt> outer, inner;
  for (int k = 0; k < 128; ++k) {
    double a = kTwoPi * k / 128;
    outer.push_back({std::cos(a), std::sin(a)});
    inner.push_back({0.4 * std::cos(a), 0.4 * std::sin(a)});
  }
  f.polygon({outer, inner}, {0, 0, 0}, 1.0);
  auto r = figure::rasterize(f, 1.0);
  auto px = [&](int x, int y) { return r.rgb[3 * (static_cast<std::size_t>(y) * 200 + x)]; };
  EXPECT_EQ(px(100, 100), 255);  // hole
  EXPECT_EQ(px(100, 30), 0);     // ring
  EXPECT_EQ(px(2, 2), 255);      // outside
}

TEST(Figures, HopfNeedsLoxodromic) {
  io::Json opts = {{"generator", {{"a", {1.0, 0.0}}, {"b", {1.0, 0.0}}}}};  // parabolic
  try {
    recipes::make_figure("hopf-development", opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotLoxodromic);
  }
}
