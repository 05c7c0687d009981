#include <gtest/gtest.h>

#include "support/brute_force.hpp"
#include "vicinity/eval.hpp"

using namespace vicinity;
using namespace vicinity::testing;

TEST(Config, ParsesValuesListsAndRanges) {
  const auto c = Config::parse(
      "# experiment\n"
      "topology = gnm(64,192)\n"
      "schemes = rear, tz(2), res_opt(1)   # trailing comment\n"
      "alpha = 8\n"
      "seeds = 1..3, 7\n"
      "name = \"quoted value\"\n"
      "exact = false\n");
  EXPECT_EQ(c.get("topology", ""), "gnm(64,192)");
  EXPECT_EQ(c.get_list("schemes", {}), (std::vector<std::string>{"rear", "tz(2)", "res_opt(1)"}));
  EXPECT_EQ(c.get_double("alpha", 0), 8.0);
  EXPECT_EQ(c.get_uint_list("seeds", {}), (std::vector<std::uint64_t>{1, 2, 3, 7}));
  EXPECT_EQ(c.get("name", ""), "quoted value");
  EXPECT_FALSE(c.get_bool("exact", true));
  EXPECT_EQ(c.get("missing", "dflt"), "dflt");
  EXPECT_EQ(Config::split_list("gnm(10,20), tz(2)"), (std::vector<std::string>{"gnm(10,20)", "tz(2)"}));
}

TEST(Config, ErrorsCarryLineNumbers) {
  try {
    Config::parse("a = 1\nnot a pair\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  const auto c = Config::parse("alpha = many\nflag = maybe\n");
  EXPECT_THROW(c.get_double("alpha", 1), ParseError);
  EXPECT_THROW(c.get_bool("flag", false), ParseError);
}

TEST(EvalParsing, SchemesTopologiesProfiles) {
  EXPECT_EQ(Scheme::parse("tz").k, 2u);
  EXPECT_EQ(Scheme::parse("res").k, 1u);
  EXPECT_EQ(Scheme::parse("additive4k(2)").name(), "additive4k(2)");
  EXPECT_EQ(Scheme::parse("rear_opt").name(), "rear_opt");
  EXPECT_THROW(Scheme::parse("rear(2)"), ArgumentError);
  EXPECT_THROW(Scheme::parse("nope"), ArgumentError);
  const auto t = Topology::parse("geometric(100,6)");
  EXPECT_EQ(t.kind, Topology::Kind::geometric);
  EXPECT_EQ(t.describe(), "geometric(100,6)");
  EXPECT_THROW(Topology::parse("torus(3,3)"), ArgumentError);
  EXPECT_EQ(PairSampling::parse("sources(1/4)").source_fraction, 0.25);
  EXPECT_THROW(PairSampling::parse("sources(2)"), ArgumentError);
  EXPECT_EQ(parse_profile("paper-eval"), Profile::paper_eval);
  const auto src = sample_sources(100, PairSampling{0.25}, 3);
  EXPECT_EQ(src.size(), 25u);
  EXPECT_TRUE(std::is_sorted(src.begin(), src.end()));
}

TEST(Eval, EmptySchemeListGivesEmptyReport) {
  Experiment e;
  e.topology = Topology::parse("gnm(32,64)");
  const auto rep = run_experiment(e);
  EXPECT_TRUE(rep.schemes.empty());
}

TEST(Eval, CdfOfSingleExactPair) {
  PairRow r;
  r.d_exact = 3;
  r.estimate = 3;
  const auto cdf = complementary_cdf({r});
  ASSERT_EQ(cdf.size(), 41u);
  EXPECT_EQ(cdf.front().first, 1.0);
  EXPECT_EQ(cdf.front().second, 0.0);
  EXPECT_DOUBLE_EQ(cdf.back().first, 3.0);
}

TEST(Eval, BoundsHoldAndCsvRoundTrips) {
  Experiment e;
  e.topology = Topology::parse("geometric(120,6)");
  for (auto s : {"tz(2)", "tz_degree_sampled(2)", "rear", "rear_opt", "res(1)", "res_opt(2)", "additive2",
                 "additive4k(2)"}) {
    e.schemes.push_back(Scheme::parse(s));
  }
  e.alpha = 6;
  e.seeds = {1, 2};
  e.profile = Profile::uniform;
  const auto rep = run_experiment(e);
  ASSERT_EQ(rep.schemes.size(), 8u);
  for (const auto& sr : rep.schemes) {
    EXPECT_EQ(sr.overall.bound_violations, 0u) << sr.scheme.name();
    EXPECT_GE(sr.overall.mean_stretch, 1.0);
    EXPECT_GE(sr.overall.fraction_exact, 0.0);
    EXPECT_LE(sr.overall.fraction_exact, 1.0);
    ASSERT_EQ(sr.per_seed.size(), 2u);
    const auto cdf = complementary_cdf(sr.rows);
    for (std::size_t i = 1; i < cdf.size(); ++i) EXPECT_LE(cdf[i].second, cdf[i - 1].second);
  }
  // rows carry the exact distances
  const Graph g = make_topology(e.topology, 1);
  const auto d = floyd_warshall(g);
  for (const auto& r : rep.schemes[2].rows) {
    if (r.seed != 1) break;
    ASSERT_TRUE(approx_eq(r.d_exact, d.at(r.src, r.dst)));
  }
  // optimized never worse than plain, pair by pair
  for (std::size_t i = 0; i < rep.schemes[2].rows.size(); ++i) {
    ASSERT_LE(rep.schemes[3].rows[i].estimate, rep.schemes[2].rows[i].estimate);
  }
  const auto csv = report_csv(rep);
  const auto back = load_report_csv(csv);
  ASSERT_EQ(back.schemes.size(), rep.schemes.size());
  for (std::size_t i = 0; i < rep.schemes.size(); ++i) {
    EXPECT_EQ(back.schemes[i].overall, rep.schemes[i].overall);
    EXPECT_EQ(back.schemes[i].per_seed, rep.schemes[i].per_seed);
  }
  EXPECT_EQ(report_csv(back), csv);
  EXPECT_EQ(report_csv(run_experiment(e)), csv);
  EXPECT_NE(summary_text(rep).find("fraction_vicinity_intersect="), std::string::npos);
}

TEST(Eval, RefusesAboveCapWithoutNoExact) {
  Experiment e;
  e.topology = Topology::parse("gnm(200,600)");
  e.schemes = {Scheme::parse("rear")};
  e.alpha = 8;
  e.cap = 100;
  EXPECT_THROW(run_experiment(e), ArgumentError);
  e.exact = false;
  e.pairs = PairSampling{0.05};
  const auto rep = run_experiment(e);
  EXPECT_FALSE(rep.schemes[0].rows.empty());
  EXPECT_TRUE(std::isnan(rep.schemes[0].rows[0].d_exact));
}

TEST(Eval, StretchVsProbesCurves) {
  Experiment e;
  e.topology = Topology::parse("geometric(150,6)");
  e.schemes = {Scheme::parse("rear"), Scheme::parse("res(1)")};
  e.alpha = 8;
  e.seeds = {4};
  e.profile = Profile::degree;
  const auto curves = stretch_vs_probes(e, {0, 1, 2, 4, 1000});
  ASSERT_EQ(curves.size(), 4u);
  const auto rep = run_experiment(e);
  const auto opt = [&] {
    Experiment o = e;
    o.schemes = {Scheme::parse("rear_opt"), Scheme::parse("res_opt(1)")};
    return run_experiment(o);
  }();
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& pts = curves[c].points;
    EXPECT_DOUBLE_EQ(pts.front().second, rep.schemes[c / 2].overall.mean_stretch);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LE(pts[i].second, pts[i - 1].second + 1e-12);
    EXPECT_NEAR(pts.back().second, opt.schemes[c / 2].overall.mean_stretch, 1e-12);
  }
}
