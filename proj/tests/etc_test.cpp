// Copyright 2026 The smtkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "etc_oracle.hpp"
#include "smtkit/apps/etc.hpp"
#include "solvers.hpp"

namespace smtkit {
namespace {

const std::string probe_catalog = SMTKIT_SOURCE_DIR "/data/catalogs/probe_request.sexp";

constexpr const char* tiny_text = R"((catalog
  (header-size 4)
  (overhead 2)
  (element (id 1) (min 0) (max 2))
  (element (id 2) (min 1) (max 3) (optional true))
  (element (id 3) (min 2) (max 2) (optional true))))";

TEST(CatalogTest, ParsesShippedCatalog)
{
  ElementCatalog c = ElementCatalog::load(probe_catalog);
  EXPECT_EQ(c.header_size, 24u);
  EXPECT_EQ(c.overhead, 2u);
  ASSERT_EQ(c.elements.size(), 7u);
  EXPECT_EQ(c.elements[0], (CatalogElement{0, 0, 32, false}));
  EXPECT_EQ(c.elements[6], (CatalogElement{221, 3, 255, true}));
  ASSERT_NE(c.find(45), nullptr);
  EXPECT_EQ(c.find(45)->body_min, 26u);
  EXPECT_EQ(c.find(46), nullptr);
}

TEST(CatalogTest, Rejections)
{
  auto bad = [](const std::string& body) {
    return "(catalog (header-size 4) (overhead 2) " + body + ")";
  };
  EXPECT_NO_THROW(ElementCatalog::parse(bad("(element (id 1) (min 0) (max 2))")));
  EXPECT_THROW(ElementCatalog::parse(bad("(element (id 1) (min 3) (max 2))")), CatalogError);
  EXPECT_THROW(ElementCatalog::parse(bad("(element (id 1) (min 0) (max 256))")), CatalogError);
  EXPECT_THROW(ElementCatalog::parse(bad("(element (id 256) (min 0) (max 2))")), CatalogError);
  EXPECT_THROW(ElementCatalog::parse(bad("(element (id 1) (min 0) (max 2)) "
                                         "(element (id 1) (min 0) (max 2))")),
               CatalogError);
  EXPECT_THROW(ElementCatalog::parse(bad("(element (id 1) (min -1) (max 2))")), CatalogError);
  EXPECT_THROW(ElementCatalog::parse(bad("(element (id 1) (min 0) (max 2) (optional maybe))")),
               CatalogError);
  EXPECT_THROW(ElementCatalog::parse("(catalog (header-size 4) (overhead 1))"), CatalogError);
  EXPECT_THROW(ElementCatalog::parse("(frames)"), CatalogError);
  EXPECT_THROW(ElementCatalog::parse("(catalog"), CatalogError);
  EXPECT_THROW(ElementCatalog::load("/nonexistent/catalog.sexp"), CatalogError);
}

TEST(FillTest, DeterministicAndSeedSensitive)
{
  ElementCatalog c = ElementCatalog::load(probe_catalog);
  FrameLayout l{{{0, 5}, {1, 8}, {221, 40}}};
  Frame a = fill_layout(c, l, 0);
  EXPECT_EQ(a, fill_layout(c, l, 0));
  Frame b = fill_layout(c, l, 1);
  EXPECT_NE(a, b);
  EXPECT_EQ(a.size(), b.size());
  EXPECT_EQ(a.size(), l.total_size(c));
  EXPECT_EQ(a.size(), 24u + 7 + 10 + 42);

  auto parsed = testing::parse_frame(c, a);
  ASSERT_TRUE(parsed.has_value());
  EXPECT_EQ(*parsed, l);
}

TEST(FillTest, InvariantViolations)
{
  ElementCatalog c = ElementCatalog::load(probe_catalog);
  EXPECT_THROW(fill_layout(c, FrameLayout{{{1, 1}}}, 0), LayoutInvariantViolation);
  EXPECT_THROW(fill_layout(c, FrameLayout{{{0, 33}, {1, 1}}}, 0), LayoutInvariantViolation);
  EXPECT_THROW(fill_layout(c, FrameLayout{{{1, 1}, {0, 1}}}, 0), LayoutInvariantViolation);
  EXPECT_THROW(fill_layout(c, FrameLayout{{{0, 1}, {1, 1}, {9, 1}}}, 0),
               LayoutInvariantViolation);
  EXPECT_THROW(fill_layout(c, FrameLayout{{{0, 1}, {1, 1}, {45, 25}}}, 0),
               LayoutInvariantViolation);
}

TEST(FillTest, HexRendering)
{
  EXPECT_EQ(to_hex(Frame{0x00, 0xA5, 0xff}), "00a5ff");
  EXPECT_EQ(to_hex(Frame{}), "");
}

TEST(OracleTest, ProbeCatalogRange)
{
  std::set<std::size_t> sizes = testing::feasible_sizes(ElementCatalog::load(probe_catalog));
  // The minimum is the header plus the required elements at their minimum.
  EXPECT_EQ(*sizes.begin(), 24u + (2 + 0) + (2 + 1));
}

class EtcSolve : public ::testing::Test
{
 protected:
  void SetUp() override
  {
    if (!testing::z3_available()) GTEST_SKIP() << "z3 not available";
    session = std::make_unique<Session>(testing::z3_config());
  }
  std::unique_ptr<Session> session;
};

TEST_F(EtcSolve, TinyCatalogEnumerationMatchesOracle)
{
  ElementCatalog c = ElementCatalog::parse(tiny_text);
  auto oracle = testing::all_layouts(c);
  std::size_t lo = oracle.begin()->first;
  std::size_t hi = oracle.rbegin()->first;
  for (std::size_t target = lo - 2; target <= hi + 2; ++target)
  {
    std::set<std::vector<std::pair<unsigned, std::size_t>>> expected;
    if (auto it = oracle.find(target); it != oracle.end())
    {
      for (const FrameLayout& l : it->second)
      {
        std::vector<std::pair<unsigned, std::size_t>> key;
        for (const auto& item : l.items) key.emplace_back(item.kind, item.length);
        expected.insert(key);
      }
    }
    std::set<std::vector<std::pair<unsigned, std::size_t>>> found;
    std::size_t returned = 0;
    {
      LayoutSearch search(*session, c, target);
      while (auto l = search.next())
      {
        ++returned;
        EXPECT_EQ(l->total_size(c), target);
        std::vector<std::pair<unsigned, std::size_t>> key;
        for (const auto& item : l->items) key.emplace_back(item.kind, item.length);
        found.insert(key);
      }
      EXPECT_TRUE(search.status().is_unsat());
    }
    EXPECT_EQ(returned, found.size()) << "duplicate layouts at " << target;
    EXPECT_EQ(found, expected) << "target " << target;
    EXPECT_EQ(session->depth(), 1u);
  }
}

TEST_F(EtcSolve, MinimalLayoutAndOutOfRange)
{
  ElementCatalog c = ElementCatalog::load(probe_catalog);
  std::set<std::size_t> sizes = testing::feasible_sizes(c);
  LayoutOutcome min = solve_layout(*session, c, *sizes.begin());
  ASSERT_TRUE(min.result.is_sat());
  EXPECT_EQ(*min.layout, (FrameLayout{{{0, 0}, {1, 1}}}));
  EXPECT_TRUE(solve_layout(*session, c, *sizes.begin() - 1).result.is_unsat());
  EXPECT_TRUE(solve_layout(*session, c, *sizes.rbegin() + 1).result.is_unsat());
  EXPECT_TRUE(solve_layout(*session, c, 0).result.is_unsat());
  EXPECT_EQ(session->depth(), 1u);
}

TEST_F(EtcSolve, RandomTargetsProduceExactFrames)
{
  ElementCatalog c = ElementCatalog::load(probe_catalog);
  std::set<std::size_t> sizes = testing::feasible_sizes(c);
  std::vector<std::size_t> feasible(sizes.begin(), sizes.end());
  std::mt19937 rng(77);
  for (int i = 0; i < 100; ++i)
  {
    std::size_t target = feasible[rng() % feasible.size()];
    LayoutOutcome out = solve_layout(*session, c, target);
    ASSERT_TRUE(out.result.is_sat()) << target;
    Frame f = fill_layout(c, *out.layout, rng());
    EXPECT_EQ(f.size(), target);
    auto parsed = testing::parse_frame(c, f);
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, *out.layout);
    for (const auto& item : out.layout->items)
    {
      const CatalogElement* e = c.find(item.kind);
      ASSERT_NE(e, nullptr);
      EXPECT_GE(item.length, e->body_min);
      EXPECT_LE(item.length, e->body_max);
    }
  }
}

TEST_F(EtcSolve, GenerateDistinctFrames)
{
  ElementCatalog c = ElementCatalog::load(probe_catalog);
  GenerateOutcome out = generate(*session, c, 120, 10, 5);
  ASSERT_TRUE(out.result.is_sat());
  ASSERT_EQ(out.frames.size(), 10u);
  std::set<Frame> unique(out.frames.begin(), out.frames.end());
  EXPECT_EQ(unique.size(), 10u);
  for (const Frame& f : out.frames) EXPECT_EQ(f.size(), 120u);

  GenerateOutcome none = generate(*session, c, 20, 10, 5);
  EXPECT_TRUE(none.result.is_unsat());
  EXPECT_TRUE(none.frames.empty());

  GenerateOutcome zero = generate(*session, c, 120, 0, 5);
  EXPECT_TRUE(zero.result.is_sat());
  EXPECT_TRUE(zero.frames.empty());
  EXPECT_EQ(session->depth(), 1u);
}

// Fewer layouts than requested frames: seeds must vary per round.
TEST_F(EtcSolve, GenerateReusesLayoutsWithFreshSeeds)
{
  ElementCatalog c = ElementCatalog::parse(tiny_text);
  auto oracle = testing::all_layouts(c);
  ASSERT_LT(oracle.at(11).size(), 9u);
  GenerateOutcome out = generate(*session, c, 11, 9, 0);
  ASSERT_EQ(out.frames.size(), 9u);
  std::set<Frame> unique(out.frames.begin(), out.frames.end());
  EXPECT_EQ(unique.size(), 9u);
}

}  // namespace
}  // namespace smtkit
