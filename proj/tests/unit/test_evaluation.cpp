#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bitext/evaluation.hpp"

using namespace bitext;

namespace {

GoldAlignment gold_of(std::vector<Bead> beads) {
  GoldAlignment g;
  for (const auto& b : beads) {
    g.set.src_len += b.src.size();
    g.set.tgt_len += b.tgt.size();
  }
  g.set.beads = std::move(beads);
  return g;
}

GoldAlignment random_partition(std::mt19937& rng, std::size_t n) {
  const BeadType shapes[] = {{1, 1}, {1, 1}, {1, 1}, {1, 0}, {0, 1}, {2, 1}, {1, 2}};
  GoldAlignment g;
  std::size_t i = 0, j = 0;
  while (i < n || j < n) {
    BeadType t = shapes[rng() % 7];
    t.src = std::min<int>(t.src, static_cast<int>(n - i));
    t.tgt = std::min<int>(t.tgt, static_cast<int>(n - j));
    if (t.src == 0 && t.tgt == 0) continue;
    if (t.src == 2 && t.tgt == 0) t.src = 1;
    if (t.tgt == 2 && t.src == 0) t.tgt = 1;
    g.set.beads.push_back(make_bead(i, i + t.src, j, j + t.tgt));
    i += t.src;
    j += t.tgt;
  }
  g.set.src_len = g.set.tgt_len = n;
  return g;
}

}  // namespace

TEST(Prf1, Identity) {
  const auto gold = gold_of({make_bead(0, 1, 0, 1), make_bead(1, 2, 1, 2), make_bead(2, 3, 2, 3), make_bead(3, 4, 3, 4)});
  AlignmentSet pred = gold.set;
  pred.beads[0].score = 0.5;
  pred.beads[0].method = "x";
  const auto r = prf1(pred, gold);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f1, 1.0);
}

TEST(Prf1, ThreeOfFour) {
  // Both sides hold four 1-1 beads; three coincide.
  const auto gold = gold_of({make_bead(0, 1, 0, 1), make_bead(1, 2, 1, 2), make_bead(2, 3, 2, 3), make_bead(3, 4, 3, 4),
                             make_bead(4, 5, 4, 6)});
  const AlignmentSet pred{{make_bead(0, 1, 0, 1), make_bead(1, 2, 1, 2), make_bead(2, 3, 2, 3), make_bead(3, 4, 3, 5),
                           make_bead(4, 5, 5, 6)},
                          5, 6};
  const auto r = prf1(pred, gold);
  EXPECT_EQ(r.matches, 3u);
  EXPECT_EQ(r.predicted, 4u);
  EXPECT_EQ(r.gold, 4u);
  EXPECT_DOUBLE_EQ(r.precision, 0.75);
  EXPECT_DOUBLE_EQ(r.recall, 0.75);
  EXPECT_DOUBLE_EQ(r.f1, 0.75);
}

TEST(Prf1, EmptyAndMismatch) {
  const auto gold = gold_of({make_bead(0, 1, 0, 1)});
  const auto r = prf1(AlignmentSet{{}, 1, 1}, gold);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_THROW(prf1(AlignmentSet{{}, 2, 1}, gold), Error);
}

TEST(Prf1, AllBeadsMode) {
  const auto gold = gold_of({make_bead(0, 1, 0, 2), make_bead(1, 2, 2, 3)});
  const AlignmentSet pred{{make_bead(0, 1, 0, 2), make_bead(1, 2, 2, 3)}, 2, 3};
  EXPECT_EQ(prf1(pred, gold, true).gold, 1u);
  EXPECT_EQ(prf1(pred, gold, false).gold, 2u);
  EXPECT_EQ(prf1(pred, gold, false).f1, 1.0);
}

TEST(Prf1, AlgebraAndSymmetry) {
  std::mt19937 rng(15);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + rng() % 12;
    const auto a = random_partition(rng, n), b = random_partition(rng, n);
    const auto ab = prf1(a.set, b), ba = prf1(b.set, a);
    EXPECT_EQ(ab.precision, ba.recall);
    EXPECT_EQ(ab.recall, ba.precision);
    for (double v : {ab.precision, ab.recall, ab.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    if (ab.precision * ab.recall == 0) {
      EXPECT_EQ(ab.f1, 0.0);
    } else {
      EXPECT_NEAR(ab.f1, 2 * ab.precision * ab.recall / (ab.precision + ab.recall), 1e-15);
    }
  }
}

TEST(TypeDistribution, SmallCases) {
  auto rows = alignment_type_distribution(gold_of({make_bead(0, 1, 0, 1)}));
  for (const auto& r : rows) {
    if (r.type == BeadType{1, 1}) {
      EXPECT_EQ(r.count, 1u);
      EXPECT_EQ(r.percent, 100.0);
    } else {
      EXPECT_EQ(r.count, 0u);
    }
  }
  rows = alignment_type_distribution(gold_of({make_bead(0, 1, 0, 1), make_bead(1, 2, 1, 3)}));
  for (const auto& r : rows) {
    if (r.count) {
      EXPECT_EQ(r.percent, 50.0);
    }
  }
}

TEST(TypeDistribution, ReferenceCorpusCounts) {
  const std::pair<BeadType, std::size_t> counts[] = {{{0, 1}, 10}, {{1, 0}, 11}, {{1, 1}, 964}, {{1, 2}, 17},
                                                     {{2, 1}, 15}, {{2, 2}, 1},  {{2, 3}, 1}};
  std::vector<Bead> beads;
  std::size_t i = 0, j = 0;
  for (const auto& [t, n] : counts) {
    for (std::size_t k = 0; k < n; ++k) {
      beads.push_back(make_bead(i, i + t.src, j, j + t.tgt));
      i += t.src;
      j += t.tgt;
    }
  }
  const auto rows = alignment_type_distribution(gold_of(beads));
  std::size_t total = 0;
  double pct = 0;
  for (const auto& r : rows) {
    total += r.count;
    pct += r.percent;
    EXPECT_EQ(r.percent, std::round(1000.0 * r.count / 1019) / 10);
  }
  const std::vector<double> published{1.0, 1.1, 94.6, 1.7, 1.5, 0.1, 0.1};
  ASSERT_EQ(rows.size(), published.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].percent, published[k]) << to_string(rows[k].type);
  }
  EXPECT_EQ(total, 1019u);
  EXPECT_NEAR(pct, 100.0, 0.3);
  const auto csv = type_distribution_csv(rows);
  EXPECT_NE(csv.find("1-1,964,94.6\n"), std::string::npos);
  EXPECT_NE(csv.find("total,1019,100.0"), std::string::npos);
}

TEST(AlignerReport, RowsAndCounts) {
  const auto g1 = gold_of({make_bead(0, 1, 0, 1), make_bead(1, 2, 1, 2)});
  const auto g2 = gold_of({make_bead(0, 1, 0, 1), make_bead(1, 3, 1, 2)});
  const MethodRun good{"good", {g1.set, g2.set}};
  const MethodRun bad{"bad", {AlignmentSet{{make_bead(0, 2, 0, 2)}, 2, 2}, AlignmentSet{{make_bead(0, 1, 0, 1), make_bead(1, 2, 1, 2), make_bead(2, 3, 2, 2)}, 3, 2}}};
  const auto rows = aligner_report({g1, g2}, {good, bad});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].method, "good");
  EXPECT_EQ(rows[0].score.matches, 3u);
  EXPECT_EQ(rows[0].score.f1, 1.0);
  EXPECT_EQ(rows[0].many_to_many, 1u);
  EXPECT_EQ(rows[1].score.matches, 1u);
  EXPECT_EQ(rows[1].score.predicted, 2u);
  EXPECT_EQ(rows[1].many_to_many, 1u);
  const auto csv = aligner_report_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,precision,recall,f1,matches,predicted,gold,many_to_many");
  EXPECT_NE(csv.find("good,1.0000,1.0000,1.0000,3,3,3,1"), std::string::npos);
  EXPECT_THROW(aligner_report({g1}, {good}), Error);
}
