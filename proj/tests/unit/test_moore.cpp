#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "../oracles.hpp"
#include "../test_util.hpp"
#include "bitext/moore.hpp"

using namespace bitext;
using testutil::random_corpus;
using testutil::make_list;

namespace {

Tokens toks(const std::string& s) { return tokenize(s, LanguageTag::en()); }

std::set<std::pair<std::size_t, std::size_t>> one_to_one_links(const AlignmentSet& set) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const auto& b : set.beads) {
    if (b.type() == BeadType{1, 1}) out.emplace(b.src[0], b.tgt[0]);
  }
  return out;
}

// Lexical model trained on a word-for-word lexicon s<k> -> t<k>.
LexicalModel lexicon_model(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> len(3, 8);
  std::vector<TokenPair> train;
  for (int k = 0; k < 300; ++k) {
    auto s = testutil::random_words(rng, len(rng), 40, "s");
    train.emplace_back(s, testutil::translate_words(s, 1, "t"));
  }
  return build_lexical_model(train, 4);
}

}  // namespace

TEST(Ibm1, TwoPairCorpus) {
  const std::vector<TokenPair> pairs{{toks("a b"), toks("x y")}, {toks("a"), toks("x")}};
  const auto t = train_ibm1(pairs, 4);
  EXPECT_EQ(t.best_target("a"), "x");
  EXPECT_EQ(t.best_target("b"), "y");
}

TEST(Ibm1, SinglePair) {
  const auto t = train_ibm1({{toks("a"), toks("x")}}, 1);
  EXPECT_DOUBLE_EQ(t.prob("a", "x"), 1.0);
}

TEST(Ibm1, Preconditions) {
  EXPECT_THROW(train_ibm1({{toks("a"), toks("x")}}, 0), Error);
  EXPECT_THROW(train_ibm1({}, 4), Error);
}

TEST(Ibm1, LikelihoodNeverDecreases) {
  std::mt19937 rng(3);
  for (int c = 0; c < 50; ++c) {
    std::vector<double> trace;
    train_ibm1(random_corpus(rng, 8), 10, &trace);
    ASSERT_EQ(trace.size(), 11u);
    for (std::size_t k = 1; k < trace.size(); ++k) EXPECT_GE(trace[k], trace[k - 1] - 1e-9);
  }
}

TEST(Ibm1, MatchesReferenceEm) {
  std::mt19937 rng(4);
  for (int c = 0; c < 20; ++c) {
    const auto corpus = random_corpus(rng, 6);
    oracle::Ibm1 ref(corpus);
    for (int it = 1; it <= 3; ++it) ref.iterate();
    const auto t = train_ibm1(corpus, 3);
    for (const auto& [s, row] : ref.t) {
      for (const auto& [f, p] : row) EXPECT_NEAR(t.prob(s, f), p, 1e-12) << s << " " << f;
    }
    EXPECT_NEAR(ibm1_log_likelihood(t, corpus), ref.log_likelihood(), 1e-9);
  }
}

TEST(Ibm1, RowsSumToOne) {
  std::mt19937 rng(5);
  const auto t = train_ibm1(random_corpus(rng, 10), 4);
  for (std::size_t s = 0; s < t.src_size(); ++s) {
    double sum = 0;
    for (const auto& [f, p] : t.row(static_cast<int>(s))) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(TranslationTable, TsvRoundTrip) {
  std::mt19937 rng(6);
  const auto t = train_ibm1(random_corpus(rng, 10), 2);
  std::ostringstream out;
  t.write(out);
  std::istringstream in(out.str());
  const auto back = TranslationTable::read(in);
  std::ostringstream again;
  back.write(again);
  EXPECT_EQ(out.str(), again.str());
  std::istringstream bad("a\tx\n");
  EXPECT_THROW(TranslationTable::read(bad, "t.tsv"), FormatError);
}

TEST(RareWords, HapaxesBecomeOther) {
  const auto mapped = map_rare_words({{toks("a b"), toks("x y")}, {toks("a"), toks("x")}});
  EXPECT_EQ(mapped[0].first, (Tokens{"a", std::string(kOtherWord)}));
  EXPECT_EQ(mapped[0].second, (Tokens{"x", std::string(kOtherWord)}));
}

TEST(LengthPass, IdentityCorpusIsConfident) {
  const auto side = make_list({"one two three.", "a much longer sentence with many more words in it.", "short.",
                               "four five six seven eight.", "and the final one here."});
  const auto r = length_pass(side, side, 0.99);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_GE(r.posteriors.at(i, i), 0.99) << i;
  EXPECT_EQ(r.confident.size(), 5u);
}

TEST(LengthPass, EmptySide) {
  const auto r = length_pass(make_list({}), make_list({"a b."}), 0.99);
  EXPECT_TRUE(r.confident.empty());
  EXPECT_THROW(length_pass(make_list({"a"}), make_list({"a"}), 1.0), Error);
}

TEST(LengthPass, PosteriorsAreProbabilities) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> n(1, 7), len(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::string> s(n(rng)), t(n(rng));
    for (auto& x : s) x = testutil::join(testutil::random_words(rng, len(rng), 9, "w"));
    for (auto& x : t) x = testutil::join(testutil::random_words(rng, len(rng), 9, "w"));
    const auto r = length_pass(make_list(s), make_list(t), 0.99);
    std::vector<double> row_sum(s.size()), col_sum(t.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        const double p = r.posteriors.at(i, j);
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0 + 1e-12);
        row_sum[i] += p;
        col_sum[j] += p;
      }
    }
    // A sentence is in at most one 1-1 bead per path.
    for (double x : row_sum) EXPECT_LE(x, 1.0 + 1e-9);
    for (double x : col_sum) EXPECT_LE(x, 1.0 + 1e-9);
  }
}

TEST(MooreAlign, LexiconResolvesDeletionLengthCannot) {
  std::mt19937 rng(8);
  const auto lex = lexicon_model(rng);
  // src[2] and src[3] have equal length; the target drops src[2].
  const std::vector<std::vector<std::string>> words{
      {"s1", "s2", "s3", "s4"},        {"s5", "s6", "s7", "s8", "s9", "s10"}, {"s11", "s12", "s13", "s14", "s15"},
      {"s16", "s17", "s18", "s19", "s20"}, {"s21", "s22", "s23"},           {"s24", "s25", "s26", "s27", "s28", "s29", "s30"}};
  std::vector<std::string> src, tgt;
  for (std::size_t k = 0; k < words.size(); ++k) {
    src.push_back(testutil::join(words[k]));
    if (k != 2) tgt.push_back(testutil::join(testutil::translate_words(words[k], 1, "t")));
  }
  const auto s = make_list(src), t = make_list(tgt);
  const auto length_only = length_pass(s, t, 0.99);
  EXPECT_LT(length_only.posteriors.at(3, 2), 0.99);

  const auto set = moore_align(s, t, lex, 0.5);
  EXPECT_TRUE(validate_alignment(set).empty());
  const auto links = one_to_one_links(set);
  const std::set<std::pair<std::size_t, std::size_t>> want{{0, 0}, {1, 1}, {3, 2}, {4, 3}, {5, 4}};
  EXPECT_EQ(links, want);
  for (const auto& b : set.beads) {
    if (b.type() == BeadType{1, 0}) {
      EXPECT_EQ(b.src[0], 2u);
    }
  }
}

TEST(MooreAlign, HigherThresholdNeverAddsPairs) {
  std::mt19937 rng(9);
  const auto lex = lexicon_model(rng);
  std::uniform_int_distribution<std::size_t> n(2, 8), len(2, 9);
  std::bernoulli_distribution drop(0.2), noise(0.3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::string> src, tgt;
    const std::size_t m = n(rng);
    for (std::size_t k = 0; k < m; ++k) {
      auto w = testutil::random_words(rng, len(rng), 40, "s");
      src.push_back(testutil::join(w));
      if (drop(rng)) continue;
      auto tw = testutil::translate_words(w, 1, "t");
      if (noise(rng)) tw = testutil::random_words(rng, len(rng), 40, "t");
      tgt.push_back(testutil::join(tw));
    }
    const auto s = make_list(src), t = make_list(tgt);
    std::set<std::pair<std::size_t, std::size_t>> prev;
    bool first = true;
    for (double theta : {0.3, 0.5, 0.9, 0.999}) {
      const auto set = moore_align(s, t, lex, theta);
      EXPECT_TRUE(validate_alignment(set).empty());
      const auto links = one_to_one_links(set);
      if (!first) {
        for (const auto& l : links) EXPECT_TRUE(prev.count(l));
      }
      prev = links;
      first = false;
    }
  }
}

TEST(MooreAlign, DisjointVocabularyFallsBackToLength) {
  std::mt19937 rng(10);
  const auto lex = lexicon_model(rng);
  const auto s = make_list({"p q r.", "p q r s t u v."}), t = make_list({"u v w.", "u v w x y z a."});
  const auto set = moore_align(s, t, lex, 0.5);
  EXPECT_EQ(one_to_one_links(set), (std::set<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}}));
}

TEST(MooreCorpus, JobsDoNotChangeOutput) {
  std::mt19937 rng(11);
  std::vector<std::pair<SentenceList, SentenceList>> docs;
  std::uniform_int_distribution<std::size_t> n(3, 9), len(2, 12);
  for (int d = 0; d < 8; ++d) {
    std::vector<std::string> src, tgt;
    const std::size_t m = n(rng);
    for (std::size_t k = 0; k < m; ++k) {
      auto w = testutil::random_words(rng, len(rng), 50, "s");
      src.push_back(testutil::join(w));
      tgt.push_back(testutil::join(testutil::translate_words(w, 1, "t")));
    }
    docs.emplace_back(make_list(src), make_list(tgt));
  }
  const auto a = moore_align_corpus(docs, {}, 1);
  const auto b = moore_align_corpus(docs, {}, 8);
  EXPECT_EQ(a.alignments, b.alignments);
  EXPECT_EQ(a.confident_pairs, b.confident_pairs);
  EXPECT_GT(a.confident_pairs, 0u);
}
