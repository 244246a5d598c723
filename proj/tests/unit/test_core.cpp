#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "bitext/formats.hpp"
#include "bitext/types.hpp"

using namespace bitext;

namespace {

AlignmentSet random_valid_set(std::mt19937& rng) {
  AlignmentSet set;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(std::size(kAllowedBeadTypes)) - 1);
  std::uniform_int_distribution<int> beads(0, 12);
  std::size_t si = 0, tj = 0;
  const int n = beads(rng);
  for (int k = 0; k < n; ++k) {
    const BeadType t = kAllowedBeadTypes[pick(rng)];
    Bead b = make_bead(si, si + t.src, tj, tj + t.tgt);
    if (rng() % 3) b.score = std::uniform_real_distribution<double>(-50, 1)(rng);
    b.method = rng() % 2 ? "gc" : "moore";
    set.beads.push_back(b);
    si += t.src;
    tj += t.tgt;
  }
  set.src_len = si + rng() % 3;
  set.tgt_len = tj + rng() % 3;
  return set;
}

}  // namespace

TEST(BeadType, Definition) {
  EXPECT_EQ(bead_type(make_bead(3, 4, 7, 8)), (BeadType{1, 1}));
  EXPECT_EQ(bead_type(make_bead(0, 0, 0, 1)), (BeadType{0, 1}));
  EXPECT_EQ(bead_type(make_bead(4, 6, 9, 12)), (BeadType{2, 3}));
  EXPECT_EQ(to_string(BeadType{2, 3}), "2-3");
}

TEST(Validate, MinimalValidSet) {
  AlignmentSet set{{make_bead(0, 1, 0, 1), make_bead(1, 2, 1, 2)}, 2, 2};
  EXPECT_TRUE(validate_alignment(set).empty());
}

TEST(Validate, CrossingIsMonotonicityViolation) {
  AlignmentSet set{{make_bead(0, 1, 1, 2), make_bead(1, 2, 0, 1)}, 2, 2};
  const auto v = validate_alignment(set);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, rules::kMonotone);
  EXPECT_EQ(v[0].bead_index, 1u);
}

TEST(Validate, IndexReuse) {
  AlignmentSet set{{make_bead(0, 1, 0, 1), make_bead(0, 1, 1, 2)}, 2, 2};
  const auto v = validate_alignment(set);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, rules::kReuse);
}

TEST(Validate, OtherRules) {
  Bead gap;
  gap.src = {0, 2};
  gap.tgt = {0};
  EXPECT_EQ(validate_alignment({{gap}, 3, 1}).at(0).rule, rules::kContiguous);
  EXPECT_EQ(validate_alignment({{Bead{}}, 1, 1}).at(0).rule, rules::kEmpty);
  EXPECT_EQ(validate_alignment({{make_bead(0, 3, 0, 1)}, 3, 1}).at(0).rule, rules::kBeadType);
  EXPECT_EQ(validate_alignment({{make_bead(0, 1, 0, 1)}, 1, 0}).at(0).rule, rules::kBounds);
  GoldAlignment g{{{make_bead(0, 1, 0, 1)}, 2, 1}};
  const auto v = validate_gold(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, rules::kCoverage);
}

TEST(Validate, MutationProperty) {
  std::mt19937 rng(7);
  int mutated = 0;
  for (int trial = 0; trial < 500; ++trial) {
    AlignmentSet set = random_valid_set(rng);
    ASSERT_TRUE(validate_alignment(set).empty());
    // Swap two distinct indices on one side of two different beads.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t b = 0; b < set.beads.size(); ++b) {
      for (std::size_t k = 0; k < set.beads[b].src.size(); ++k) slots.emplace_back(b, k);
    }
    if (slots.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
    auto a = slots[pick(rng)], b = slots[pick(rng)];
    if (a == b) continue;
    std::swap(set.beads[a.first].src[a.second], set.beads[b.first].src[b.second]);
    EXPECT_FALSE(validate_alignment(set).empty());
    ++mutated;
  }
  EXPECT_GT(mutated, 100);
}

TEST(Formats, ParseBeadLine) {
  const Bead b = parse_bead_line("4,5\t9\t-1.23\tgc");
  EXPECT_EQ(b.src, (std::vector<std::size_t>{4, 5}));
  EXPECT_EQ(b.tgt, (std::vector<std::size_t>{9}));
  ASSERT_TRUE(b.score);
  EXPECT_DOUBLE_EQ(*b.score, -1.23);
  EXPECT_EQ(b.method, "gc");
  const Bead d = parse_bead_line("\t3\tNA\tgold");
  EXPECT_TRUE(d.src.empty());
  EXPECT_FALSE(d.score);
}

TEST(Formats, MalformedLineNamesLine) {
  std::istringstream in("0\t0\t1\tgc\n1;2\t1\t0.5\tgc\n");
  try {
    parse_alignments(in, "x.tsv");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("x.tsv:2"), std::string::npos) << e.what();
  }
}

TEST(Formats, AlignmentRoundTripRandom) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    AlignmentSet set = random_valid_set(rng);
    std::ostringstream out;
    write_alignments(set, out);
    std::istringstream in(out.str());
    EXPECT_EQ(parse_alignments(in), set) << out.str();
  }
}

TEST(Formats, ThreeBeadFileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "bitext_core_test";
  AlignmentSet set{{make_bead(0, 1, 0, 1, -0.5, "gc"), make_bead(1, 3, 1, 2, -2.25, "gc"),
                    make_bead(3, 3, 2, 3, -4.0, "gc")},
                   3, 3};
  write_alignments(set, dir / "a.tsv");
  EXPECT_EQ(read_alignments(dir / "a.tsv"), set);
  std::filesystem::remove_all(dir);
}

TEST(Formats, DocumentsRoundTripAndErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "bitext_docs_test";
  std::filesystem::remove_all(dir);
  Document zh{{"a1", "p1", LanguageTag::zh(), Date::parse("2020-01-02"), "Journal Watch"}, {"第一段。", "第二段。"}};
  Document en{{"a2", "p1", LanguageTag::en(), Date::parse("2020-01-02"), "Journal Watch"}, {"One.", "Two."}};
  write_documents({zh, en}, dir);
  const auto docs = read_documents(dir / "meta.tsv");
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0], zh);
  EXPECT_EQ(docs[1], en);

  write_file(dir / "bad.tsv", "id\tpair_id\tlanguage\tdate\tarticle_type\nx\tp\tfr\t2020-01-01\tt\n");
  EXPECT_THROW(read_documents(dir / "bad.tsv"), Error);
  write_file(dir / "crlf.txt", "a\r\nb\n");
  EXPECT_THROW(read_lines(dir / "crlf.txt"), FormatError);
  std::filesystem::remove_all(dir);
}

TEST(Formats, PairDocumentsRejectsMissingSide) {
  Document zh{{"a1", "p1", LanguageTag::zh(), Date::parse("2020-01-02"), ""}, {"x"}};
  EXPECT_THROW(pair_documents({zh}), Error);
}

TEST(Types, LanguageAndDate) {
  EXPECT_THROW(LanguageTag::parse("EN"), Error);
  EXPECT_THROW(LanguageTag::parse("fr"), Error);
  EXPECT_TRUE(LanguageTag::parse("zh").is_zh());
  EXPECT_THROW(Date::parse("2021-02-30"), Error);
  EXPECT_EQ(Date::parse("2021-02-28").str(), "2021-02-28");
}
