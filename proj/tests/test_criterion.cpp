#include <gtest/gtest.h>

#include "oracles/oracles.hpp"

using namespace twalex;

namespace {

LaurentPoly P(std::string_view s) { return parse_laurent(s); }

AlexanderResult result_for(const LaurentPoly& d, std::size_t order, std::int64_t div) {
  AlexanderResult r;
  r.delta1 = d;
  r.group_order = order;
  r.div = div;
  r.monic = is_monic(d);
  if (!d.is_zero()) r.span = span_degree(d);
  return r;
}

std::vector<FiniteGroup> catalog_named(std::initializer_list<std::string_view> names) {
  std::vector<FiniteGroup> out;
  for (auto& g : oracle::catalog()) {
    if (std::find(names.begin(), names.end(), g.name()) != names.end()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST(PropertyM, Examples) {
  const auto pass = property_m(result_for(P("t^2 - t + 1"), 1, 1), 1, 0);
  EXPECT_EQ(pass.expected_span, 2);
  EXPECT_EQ(pass.status, QuotientStatus::Pass);
  EXPECT_EQ(property_m(result_for(P("2t^2 - 3t + 2"), 1, 1), 1, 0).status, QuotientStatus::FailNonmonic);
  EXPECT_EQ(property_m(result_for(LaurentPoly{}, 6, 2), 1, 0).status, QuotientStatus::FailVanishing);
  EXPECT_EQ(property_m(result_for(P("t^3 - t + 1"), 1, 1), 1, 0).status, QuotientStatus::FailDegree);
  // Closed manifolds count (1 + b3) = 2 copies of div.
  EXPECT_EQ(property_m(result_for(P("t^4 + 1"), 2, 1), 1, 1).status, QuotientStatus::Pass);
  EXPECT_THROW(property_m(result_for(P("t - 1"), 1, 1), std::nullopt, 0), ValidationError);
}

TEST(PropertyM, NormFreeBound) {
  const auto q = norm_free_report(result_for(P("t^4 + t^2 + 1"), 2, 2), 0);
  EXPECT_EQ(q.norm_lower_bound, 1);
  EXPECT_FALSE(q.status.has_value());
  EXPECT_EQ(norm_free_report(result_for(P("1"), 2, 2), 0).norm_lower_bound, 0);
  EXPECT_EQ(norm_free_report(result_for(P("t^5 + 1"), 2, 1), 0).norm_lower_bound, 2);
}

TEST(Sweep, TrefoilConsistent) {
  SweepOptions opt;
  opt.exhaustive = true;
  const auto r = sweep(oracle::corpus("trefoil"), oracle::catalog(), opt);
  EXPECT_EQ(r.verdict.outcome, Outcome::ConsistentWithFibered);
  EXPECT_FALSE(r.verdict.witness.has_value());
  EXPECT_EQ(r.verdict.bound, 24u);
  for (const auto& q : r.quotients) EXPECT_EQ(q.status, QuotientStatus::Pass) << q.group << " " << q.hom;
  ASSERT_FALSE(r.quotients.empty());
  EXPECT_EQ(r.quotients.front().group, "1");
  for (std::size_t i = 1; i < r.quotients.size(); ++i) {
    EXPECT_LE(r.quotients[i - 1].order, r.quotients[i].order);
  }
}

TEST(Sweep, FiveTwoFailsAtTrivialQuotient) {
  const auto r = sweep(oracle::corpus("5_2"), oracle::catalog());
  EXPECT_EQ(r.verdict.outcome, Outcome::NotFibered);
  ASSERT_TRUE(r.verdict.witness.has_value());
  const auto& w = r.quotients[*r.verdict.witness];
  EXPECT_EQ(w.order, 1u);
  EXPECT_EQ(w.status, QuotientStatus::FailNonmonic);
  EXPECT_EQ(w.delta1, P("2t^2 - 3t + 2"));
  // Short-circuit: nothing is evaluated after the first failure.
  EXPECT_EQ(r.quotients.size(), 1u);
}

TEST(Sweep, FailureReproducesFromScratch) {
  SweepOptions opt;
  opt.exhaustive = true;
  for (const char* name : {"5_2", "6_1"}) {
    const auto p = oracle::corpus(name);
    const auto cat = oracle::catalog();
    const auto r = sweep(p, cat, opt);
    for (const auto& q : r.quotients) {
      if (!q.failed()) continue;
      // Fresh group, fresh hom parsed from the report string, fresh Delta_1.
      const auto fresh_cat = oracle::catalog();
      const auto it = std::find_if(fresh_cat.begin(), fresh_cat.end(), [&](const auto& g) { return g.name() == q.group; });
      ASSERT_NE(it, fresh_cat.end());
      const auto hom = parse_hom(q.hom, *it, p.names);
      const auto again = evaluate_quotient(p, *it, hom, true);
      EXPECT_EQ(again.status, q.status);
      EXPECT_EQ(again.delta1, q.delta1);
      EXPECT_EQ(again.span, q.span);
    }
  }
}

TEST(Sweep, MonotoneEvidence) {
  const auto p = oracle::corpus("6_1");
  const auto small = catalog_named({"1"});
  const auto r1 = sweep(p, small);
  ASSERT_EQ(r1.verdict.outcome, Outcome::NotFibered);
  const auto r2 = sweep(p, oracle::catalog());
  EXPECT_EQ(r2.verdict.outcome, Outcome::NotFibered);
  // Growing a passing catalog can only keep or lose consistency.
  const auto q = oracle::corpus("figure_eight");
  EXPECT_EQ(sweep(q, catalog_named({"1", "Z2"})).verdict.outcome, Outcome::ConsistentWithFibered);
  EXPECT_EQ(sweep(q, oracle::catalog()).verdict.outcome, Outcome::ConsistentWithFibered);
}

TEST(Sweep, FiltersAndCaveats) {
  SweepOptions opt;
  opt.solvable_only = true;
  opt.max_order = 60;
  const auto r = sweep(oracle::corpus("trefoil"), oracle::catalog(), opt);
  EXPECT_TRUE(r.verdict.solvable_only);
  EXPECT_EQ(r.verdict.caveats.front(), kSolvableCaveat);
  for (const auto& q : r.quotients) EXPECT_NE(q.group, "A5");

  SweepOptions small;
  small.max_order = 3;
  const auto r2 = sweep(oracle::corpus("trefoil"), oracle::catalog(), small);
  for (const auto& q : r2.quotients) EXPECT_LE(q.order, 3u);

  auto no_norm = oracle::corpus("trefoil");
  no_norm.thurston_norm.reset();
  EXPECT_THROW(sweep(no_norm, oracle::catalog()), ValidationError);
  EXPECT_THROW(sweep(oracle::corpus("trefoil"), {}), ValidationError);
}

TEST(Sweep, DegenerateCircle) {
  SweepOptions opt;
  opt.exhaustive = true;
  opt.max_order = 6;
  const auto r = sweep(oracle::corpus("circle"), oracle::catalog(), opt);
  EXPECT_NE(std::find(r.verdict.caveats.begin(), r.verdict.caveats.end(), kDegenerateCaveat), r.verdict.caveats.end());
  for (const auto& q : r.quotients) {
    EXPECT_EQ(q.delta1, LaurentPoly::constant(1));
    EXPECT_EQ(q.span, 0);
    EXPECT_EQ(q.expected_span, q.div);
    EXPECT_EQ(q.status, QuotientStatus::FailDegree);
  }
}

TEST(Sweep, WorkerCountDoesNotChangeResults) {
  SweepOptions one, four;
  one.exhaustive = four.exhaustive = true;
  four.workers = 4;
  const auto p = oracle::corpus("figure_eight");
  const auto a = sweep(p, oracle::catalog(), one);
  const auto b = sweep(p, oracle::catalog(), four);
  EXPECT_EQ(sweep_to_text(p, a), sweep_to_text(p, b));
  EXPECT_EQ(sweep_to_json(p, a).dump(), sweep_to_json(p, b).dump());
}

TEST(Sweep, RetargetedImagesPass) {
  SweepOptions opt;
  opt.exhaustive = true;
  opt.retarget_images = true;
  const auto r = sweep(oracle::corpus("trefoil"), oracle::catalog(), opt);
  EXPECT_EQ(r.verdict.outcome, Outcome::ConsistentWithFibered);
  bool saw_image = false;
  for (const auto& q : r.quotients) saw_image = saw_image || q.group.rfind("img(", 0) == 0;
  EXPECT_TRUE(saw_image);
}

TEST(Sweep, MappingToriConsistentThroughOrder12) {
  oracle::Rng rng(51);
  SweepOptions opt;
  opt.max_order = 12;
  const auto cat = oracle::catalog();
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t rank = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    const auto h = compose_nielsen(oracle::random_moves(rng, rank, 8), rank);
    const auto p = mapping_torus(h);
    const auto r = sweep(p, cat, opt);
    EXPECT_EQ(r.verdict.outcome, Outcome::ConsistentWithFibered) << serialize(p);
  }
}

TEST(NormSurvey, ReportsBoundsWithoutVerdict) {
  auto p = oracle::corpus("trefoil");
  p.thurston_norm.reset();
  SweepOptions opt;
  opt.max_order = 6;
  const auto r = norm_survey(p, oracle::catalog(), opt);
  EXPECT_EQ(r.verdict.outcome, Outcome::NoVerdict);
  for (const auto& q : r.quotients) {
    EXPECT_FALSE(q.status.has_value());
    EXPECT_EQ(q.norm_lower_bound, 1) << q.group;
  }
}
