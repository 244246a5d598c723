#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "../test_util.hpp"
#include "bitext/preprocess.hpp"
#include "bitext/utf8.hpp"

using namespace bitext;
using testutil::make_doc;

namespace {

std::string random_text(std::mt19937& rng) {
  static const std::vector<std::string> pieces{
      "a",  "B",  "z",  "1",  " ",  "  ", "\t", "“",  "”",  "‘",  "’",  "—", "–", "‐", "−", "Ａ", "ｚ", "１",
      "，", "。", "！", "？", "（", "）", "：", "病", "人", "。", ".", ",", "\"", "'", "«", "»", "―", "　"};
  std::string out;
  const std::size_t n = rng() % 25;
  for (std::size_t k = 0; k < n; ++k) out += pieces[rng() % pieces.size()];
  return out;
}

}  // namespace

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize_text("“Hello”", LanguageTag::en()), "\"Hello\"");
  EXPECT_EQ(normalize_text("ＡＢＣ１２３", LanguageTag::en()), "ABC123");
  EXPECT_EQ(normalize_text("ＡＢＣ１２３", LanguageTag::zh()), "ABC123");
  EXPECT_EQ(normalize_text("雨停了。我们走吧！真的？好，", LanguageTag::zh()), "雨停了。我们走吧！真的？好，");
  EXPECT_EQ(normalize_text("  a \t b  ", LanguageTag::en()), "a b");
  EXPECT_EQ(normalize_text("a–b — c", LanguageTag::en()), "a–b — c");
}

TEST(Normalize, IdempotentAndNeverLonger) {
  std::mt19937 rng(16);
  for (int k = 0; k < 2000; ++k) {
    const std::string x = random_text(rng);
    for (const auto& lang : {LanguageTag::zh(), LanguageTag::en()}) {
      const std::string once = normalize_text(x, lang);
      EXPECT_EQ(normalize_text(once, lang), once) << x;
      EXPECT_LE(once.size(), x.size());
      EXPECT_NO_THROW(utf8::decode(once));
    }
  }
}

TEST(Stitch, ZhCitationFragment) {
  const auto r = stitch_paragraphs(make_doc("z", LanguageTag::zh(), {"这类感染较为常见", "12-14。", "下一段。"}));
  EXPECT_EQ(r.doc.paragraphs, (std::vector<std::string>{"这类感染较为常见12-14。", "下一段。"}));
  EXPECT_EQ(r.log.size(), 1u);
}

TEST(Stitch, ZhLeadingFragmentStays) {
  const auto r = stitch_paragraphs(make_doc("z", LanguageTag::zh(), {"12。", "正文。"}));
  EXPECT_EQ(r.doc.paragraphs.size(), 2u);
  EXPECT_EQ(r.log.size(), 1u);
}

TEST(Stitch, EnOpenInNewTab) {
  const auto r = stitch_paragraphs(
      make_doc("e", LanguageTag::en(), {"The results of Figure 2", "open in new tab", "show improvement."}));
  EXPECT_EQ(r.doc.paragraphs, (std::vector<std::string>{"The results of Figure 2 show improvement."}));
}

TEST(Stitch, NoFragmentsUnchanged) {
  const auto d = make_doc("e", LanguageTag::en(), {"One.", "Two."});
  EXPECT_EQ(stitch_paragraphs(d).doc, d);
  EXPECT_FALSE(is_citation_fragment("正文12。"));
  EXPECT_TRUE(is_citation_fragment("［12，13］。"));
}

TEST(Filter, DefaultRules) {
  const auto rules = FilterRules::defaults();
  const auto en = filter_boilerplate(
      make_doc("e", LanguageTag::en(), {"Body one.", "Quick take (video summary)", "Figure 1. Trial design.", "Body two."}),
      rules);
  EXPECT_EQ(en.doc.paragraphs, (std::vector<std::string>{"Body one.", "Body two."}));
  ASSERT_EQ(en.removed.size(), 2u);
  EXPECT_EQ(en.removed[0].paragraph_index, 1u);
  EXPECT_EQ(en.removed[1].paragraph_index, 2u);

  const auto zh = filter_boilerplate(make_doc("z", LanguageTag::zh(), {"正文。", "翻译：张三", "图1. 试验设计。"}), rules);
  EXPECT_EQ(zh.doc.paragraphs, (std::vector<std::string>{"正文。"}));
}

TEST(Filter, EmptyRulesAndSubsequence) {
  const auto d = make_doc("e", LanguageTag::en(), {"Video", "a", "Figure 2", "b"});
  EXPECT_EQ(filter_boilerplate(d, FilterRules{}).doc, d);
  const auto r = filter_boilerplate(d, FilterRules::defaults());
  std::size_t at = 0;
  for (const auto& p : r.doc.paragraphs) {
    while (at < d.paragraphs.size() && d.paragraphs[at] != p) ++at;
    EXPECT_LT(at, d.paragraphs.size());
    ++at;
  }
}

TEST(Filter, PatternFile) {
  std::istringstream in("# comment\nen:^draft\nzh=删除\n*:^xx\n");
  const auto rules = FilterRules::parse(in);
  EXPECT_EQ(rules.rules.size(), 3u);
  const auto r = filter_boilerplate(make_doc("e", LanguageTag::en(), {"DRAFT copy", "keep", "xx y"}), rules);
  EXPECT_EQ(r.doc.paragraphs, (std::vector<std::string>{"keep"}));
  std::istringstream bad("en:([\n");
  EXPECT_THROW(FilterRules::parse(bad, "p.txt"), FormatError);
  std::istringstream bad_lang("fr:x\n");
  EXPECT_THROW(FilterRules::parse(bad_lang, "p.txt"), FormatError);
}

TEST(Truecase, MajorityCase) {
  std::vector<std::string> paras;
  for (int k = 0; k < 50; ++k) paras.push_back("We saw the patient and the FDA editor.");
  paras.push_back("Then The end came.");
  paras.push_back("Then The end came.");
  const auto model = train_truecaser({make_doc("e", LanguageTag::en(), paras)});
  EXPECT_EQ(truecase_first_token("The patient improved.", model), "the patient improved.");
  EXPECT_EQ(truecase_first_token("FDA reported it.", model), "FDA reported it.");
  EXPECT_EQ(truecase_first_token("Unknown word.", model), "Unknown word.");
  for (const auto& [key, entry] : model.casing) EXPECT_EQ(utf8::to_lower(entry.surface), key);
}

TEST(Truecase, EmptyModelIsIdentity) {
  const auto model = train_truecaser({});
  EXPECT_TRUE(model.empty());
  const auto d = make_doc("e", LanguageTag::en(), {"The A.", "B c."});
  EXPECT_EQ(apply_truecaser(d, model), d);
}

TEST(Truecase, OnlyFirstTokenChanges) {
  const auto model = train_truecaser({make_doc("e", LanguageTag::en(), {"x the the the y.", "x The."})});
  const auto out = apply_truecaser(make_doc("e", LanguageTag::en(), {"The The rest.", "Plain."}), model);
  EXPECT_EQ(out.paragraphs[0], "the The rest.");
  EXPECT_EQ(out.paragraphs[1], "Plain.");
}

TEST(ParagraphCounts, Report) {
  DocumentPair pre{make_doc("z", LanguageTag::zh(), {"a", "图1", "翻译：某", "图2", "b"}),
                   make_doc("e", LanguageTag::en(), {"a", "b"})};
  DocumentPair post = pre;
  post.zh.paragraphs = {"a", "b"};
  const auto rows = paragraph_count_report({pre}, {post});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].zh_pre, 5u);
  EXPECT_EQ(rows[0].zh_post, 2u);
  EXPECT_LT(std::abs(static_cast<long>(rows[0].zh_post) - static_cast<long>(rows[0].en_post)),
            std::abs(static_cast<long>(rows[0].zh_pre) - static_cast<long>(rows[0].en_pre)));
  EXPECT_EQ(paragraph_count_csv({}), "pair_id,zh_pre,en_pre,zh_post,en_post\n");
  DocumentPair other = post;
  other.zh.meta.pair_id = other.en.meta.pair_id = "p2";
  EXPECT_THROW(paragraph_count_report({pre}, {other}), Error);
}

TEST(Filter, ShippedPatternFileMatchesDefaults) {
  const auto shipped = FilterRules::load(std::filesystem::path(BITEXT_SOURCE_DIR) / "data" / "filter_rules.txt");
  const auto builtin = FilterRules::defaults();
  ASSERT_EQ(shipped.rules.size(), builtin.rules.size());
  for (std::size_t k = 0; k < shipped.rules.size(); ++k) EXPECT_EQ(shipped.rules[k].describe(), builtin.rules[k].describe());
}
