#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "../oracles.hpp"
#include "../test_util.hpp"
#include "bitext/bleualign.hpp"
#include "bitext/evaluation.hpp"

using namespace bitext;
using testutil::make_list;
using testutil::random_fixture;

namespace {

ScoreMatrix matrix(std::size_t rows, std::size_t cols, std::vector<double> v) { return {rows, cols, std::move(v)}; }

}  // namespace

TEST(ScoreMatrix, IdentityDiagonal) {
  const auto t = make_list({"the cat sat", "a dog ran home", "birds fly"});
  const auto m = score_matrix(t, t, {});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(m.at(i, i), 1.0);
  for (double v : m.values) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(ScoreMatrix, DisjointVocabularyStaysAtFloor) {
  const auto m = score_matrix(make_list({"a b c", "d e"}), make_list({"x y z", "w v u t"}), {});
  for (double v : m.values) EXPECT_LE(v, 0.01);
}

TEST(ScoreMatrix, EmptyTargetAndCountMismatch) {
  const auto m = score_matrix(make_list({"a b"}), make_list({}), {});
  EXPECT_EQ(m.rows, 1u);
  EXPECT_EQ(m.cols, 0u);
  try {
    score_matrix(make_list({"a", "b"}), make_list({"a"}), {}, 3);
    FAIL();
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('2'), std::string::npos);
    EXPECT_NE(msg.find('3'), std::string::npos);
  }
}

TEST(FindAnchors, DominantDiagonal) {
  const auto m = matrix(3, 3, {0.9, 0.1, 0.1, 0.1, 0.9, 0.1, 0.1, 0.1, 0.9});
  EXPECT_EQ(find_anchors(m, 0.2), (std::vector<Anchor>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_TRUE(find_anchors(m, 0.95).empty());
}

TEST(FindAnchors, CrossedPair) {
  // (0,1) and (1,0) are each attractive but cannot both be taken.
  const auto m = matrix(3, 3, {0.2, 0.8, 0.0, 0.7, 0.2, 0.0, 0.0, 0.0, 0.5});
  const auto got = find_anchors(m, 0.0);
  const auto want = oracle::best_chain(m, 0.0);
  EXPECT_EQ(got, want.cells);
  EXPECT_EQ(got, (std::vector<Anchor>{{0, 1}, {2, 2}}));
}

TEST(FindAnchors, MatchesExhaustiveSearch) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> n(0, 6);
  // Few distinct values so that ties are common.
  const double levels[] = {0.0, 0.01, 0.25, 0.5, 1.0};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = n(rng), c = n(rng);
    ScoreMatrix m{r, c, std::vector<double>(r * c)};
    for (auto& v : m.values) v = levels[rng() % 5];
    const auto got = find_anchors(m, 0.01);
    const auto want = oracle::best_chain(m, 0.01);
    double total = 0;
    for (std::size_t k = 0; k < got.size(); ++k) {
      if (k > 0) {
        EXPECT_GT(got[k].first, got[k - 1].first);
        EXPECT_GT(got[k].second, got[k - 1].second);
      }
      EXPECT_GT(m.at(got[k].first, got[k].second), 0.01);
      total += m.at(got[k].first, got[k].second);
    }
    EXPECT_EQ(total, want.total);
    EXPECT_EQ(diagonal_deviation(got, r, c), diagonal_deviation(want.cells, r, c));
  }
}

TEST(Bleualign, PerfectTranslationRecoversGold) {
  const auto tgt = make_list({"the trial enrolled patients", "mortality was lower", "no adverse events occurred",
                              "funding came from industry"});
  const auto src = make_list({"s0", "s1", "s2", "s3"});
  const auto set = bleualign(src, tgt, tgt, nullptr, {});
  EXPECT_TRUE(validate_alignment(set).empty());
  GoldAlignment gold;
  gold.set.src_len = gold.set.tgt_len = 4;
  for (std::size_t k = 0; k < 4; ++k) gold.set.beads.push_back(make_bead(k, k + 1, k, k + 1));
  EXPECT_EQ(prf1(set, gold).f1, 1.0);
}

TEST(Bleualign, GrowthRecoversTwoToOne) {
  const auto src = make_list({"s0", "s1a", "s1b", "s2"});
  const auto src_mt = make_list({"alpha beta gamma delta", "the patients were enrolled", "in three large centers",
                                 "omega psi chi phi"});
  const auto tgt = make_list({"alpha beta gamma delta", "the patients were enrolled in three large centers",
                              "omega psi chi phi"});
  const auto set = bleualign(src, tgt, src_mt, nullptr, {});
  EXPECT_TRUE(validate_alignment(set).empty());
  ASSERT_EQ(set.beads.size(), 3u);
  EXPECT_EQ(set.beads[1].src, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(set.beads[1].tgt, (std::vector<std::size_t>{1}));
  EXPECT_EQ(set.beads[1].score, 1.0);

  BleualignConfig no_grow;
  no_grow.grow_anchors = false;
  const auto plain = bleualign(src, tgt, src_mt, nullptr, no_grow);
  EXPECT_EQ(plain.beads[1].type(), (BeadType{1, 1}));
}

TEST(Bleualign, AnchorsSurviveUnlessGrown) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_fixture(rng);
    BleualignConfig cfg;
    const auto m = score_matrix(f.src_mt, f.tgt, cfg.bleu);
    const auto anchors = find_anchors(m, cfg.min_score);
    const auto set = bleualign(f.src, f.tgt, f.src_mt, nullptr, cfg);
    EXPECT_TRUE(validate_alignment(set).empty());
    for (const auto& [i, j] : anchors) {
      const bool kept = std::any_of(set.beads.begin(), set.beads.end(), [&](const Bead& b) {
        return std::find(b.src.begin(), b.src.end(), i) != b.src.end() &&
               std::find(b.tgt.begin(), b.tgt.end(), j) != b.tgt.end() && b.method == "bleualign";
      });
      EXPECT_TRUE(kept);
    }
  }
}

TEST(Bleualign, BidirectionalIsSubsetOfUnidirectional) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_fixture(rng);
    const auto uni = bleualign(f.src, f.tgt, f.src_mt, nullptr, {});
    const auto bi = bleualign(f.src, f.tgt, f.src_mt, &f.tgt_mt, {});
    EXPECT_TRUE(validate_alignment(bi).empty());
    for (const auto& b : bi.beads) {
      EXPECT_TRUE(std::any_of(uni.beads.begin(), uni.beads.end(), [&](const Bead& u) { return u.same_link(b); }));
    }
  }
}

TEST(Bleualign, TranslationCountMismatch) {
  const auto s = make_list({"a", "b"}), t = make_list({"x"});
  EXPECT_THROW(bleualign(s, t, make_list({"x"}), nullptr, {}), Error);
  const auto t_mt = make_list({"a", "b"});
  EXPECT_THROW(bleualign(s, t, make_list({"x", "y"}), &t_mt, {}), Error);
}

TEST(Bleualign, ReverseParams) {
  LengthParams p;
  p.c = 2.0;
  p.s2 = 8.0;
  const auto r = reverse_length_params(p);
  EXPECT_DOUBLE_EQ(r.c, 0.5);
  EXPECT_DOUBLE_EQ(r.s2, 1.0);
  EXPECT_EQ(r.prior({1, 0}), p.prior({0, 1}));
  EXPECT_EQ(r.prior({2, 1}), p.prior({1, 2}));
  const auto back = reverse_length_params(r);
  EXPECT_DOUBLE_EQ(back.c, p.c);
  EXPECT_DOUBLE_EQ(back.s2, p.s2);
}
