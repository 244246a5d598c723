#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

#include "../test_util.hpp"
#include "bitext/preprocess.hpp"
#include "bitext/sbd.hpp"
#include "bitext/utf8.hpp"

using namespace bitext;
using testutil::make_doc;

namespace {

using Sents = std::vector<std::string>;

std::string join_with(const Sents& s, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? sep : "") + s[k];
  return out;
}

std::string random_en(std::mt19937& rng) {
  static const std::vector<std::string> pieces{
      "The", "patients", "were", "Dr.", "Smith", "et al.", "e.g.", "3.5", "mg.", "reported.12-14", "(Funded",
      "by", "F.", "Hoffmann)", "placebo.", "Why?", "Yes!", "\"Quote.\"", "U.S.", "In", "12", "fig.", "2).", "(see",
      "a.", "b", "No.", "vs.", "...", "Results:", "[1]", "B.", "0.05.", "1,2", "x.1", "end."};
  std::string out;
  const std::size_t n = 1 + rng() % 18;
  for (std::size_t k = 0; k < n; ++k) out += (k ? " " : "") + pieces[rng() % pieces.size()];
  return out;
}

std::string random_zh(std::mt19937& rng, bool with_extras) {
  static const std::vector<std::string> plain{"病", "人", "试", "验", "，", "。", "！", "？", "」", "』", "”", "）", "（", "“"};
  static const std::vector<std::string> extras{"12", "¹²", "3-5", "\"", " ", "mg", "a", "例", "年"};
  std::string out;
  const std::size_t n = 1 + rng() % 20;
  for (std::size_t k = 0; k < n; ++k) {
    if (with_extras && rng() % 4 == 0) {
      out += extras[rng() % extras.size()];
    } else {
      out += plain[rng() % plain.size()];
    }
  }
  return out;
}

// Boundary oracle over text without digits or ASCII quotes: a sentence ends
// after a terminator plus any run of terminators and closers.
Sents zh_oracle(const std::string& text) {
  const std::u32string terms = U"。！？", closers = U"」』”）";
  const std::u32string cps = utf8::decode(text);
  Sents out;
  std::u32string cur;
  for (std::size_t k = 0; k < cps.size(); ++k) {
    cur += cps[k];
    if (terms.find(cps[k]) == std::u32string::npos) continue;
    while (k + 1 < cps.size() &&
           (terms.find(cps[k + 1]) != std::u32string::npos || closers.find(cps[k + 1]) != std::u32string::npos)) {
      cur += cps[++k];
    }
    out.push_back(utf8::encode(cur));
    cur.clear();
  }
  if (!cur.empty()) out.push_back(utf8::encode(cur));
  return out;
}

std::vector<Document> punkt_corpus() {
  const std::vector<std::string> places{"clinic", "hospital", "office", "ward", "center"};
  const std::vector<std::string> ends{"plan", "dose", "trial", "result", "design", "protocol", "summary", "report",
                                      "analysis", "outcome"};
  std::vector<std::string> paras;
  for (int k = 0; k < 50; ++k) {
    const std::string& place = places[k % places.size()];
    paras.push_back("We met Dr. Smith at the " + place + ". The visit went well and results were reported.");
    paras.push_back("Investigators reported that outcomes improved in the " + place + " today. Dr. Jones agreed with the " +
                    ends[k % ends.size()] + ".");
  }
  return {make_doc("e1", LanguageTag::en(), paras)};
}

}  // namespace

TEST(SegmentZh, Examples) {
  EXPECT_EQ(segment_zh("雨停了。我们走吧！真的？"), (Sents{"雨停了。", "我们走吧！", "真的？"}));
  EXPECT_EQ(segment_zh("他说：\"走吧。\"然后离开了。"), (Sents{"他说：\"走吧。\"", "然后离开了。"}));
  EXPECT_EQ(segment_zh("他说：“走吧。”然后离开了。"), (Sents{"他说：“走吧。”", "然后离开了。"}));
  EXPECT_EQ(segment_zh("没有句号的段落"), (Sents{"没有句号的段落"}));
  EXPECT_EQ(segment_zh("此前已有报道。12-14为克服样本量限制，我们进行了研究。"),
            (Sents{"此前已有报道。12-14", "为克服样本量限制，我们进行了研究。"}));
  EXPECT_EQ(segment_zh("（由罗氏公司资助。）真的？！好"), (Sents{"（由罗氏公司资助。）", "真的？！", "好"}));
  EXPECT_TRUE(segment_zh("").empty());
}

TEST(SegmentZh, MatchesCharacterScanOracle) {
  std::mt19937 rng(17);
  for (int k = 0; k < 2000; ++k) {
    const std::string p = random_zh(rng, false);
    EXPECT_EQ(segment_zh(p), zh_oracle(p)) << p;
  }
}

TEST(SegmentEnRules, Examples) {
  const auto abbrevs = AbbrevList::defaults();
  EXPECT_EQ(segment_en_rules("Similar cases have been reported.12-14 To overcome sample-size limitations, we pooled data.",
                             abbrevs),
            (Sents{"Similar cases have been reported.12-14", "To overcome sample-size limitations, we pooled data."}));
  EXPECT_EQ(segment_en_rules("The rate was lower than with placebo. (Funded by F. Hoffmann–La Roche; ClinicalTrials.gov "
                             "number, NCT01.).",
                             abbrevs)
                .size(),
            1u);
  EXPECT_EQ(segment_en_rules("Dr. Smith arrived.", abbrevs), (Sents{"Dr. Smith arrived."}));
  EXPECT_EQ(segment_en_rules("The dose was 2.5 mg. Patients improved.", abbrevs),
            (Sents{"The dose was 2.5 mg.", "Patients improved."}));
  EXPECT_EQ(segment_en_rules("Why? Because! 12 patients died. \"Then\" it ended.", abbrevs),
            (Sents{"Why?", "Because!", "12 patients died.", "\"Then\" it ended."}));
  EXPECT_EQ(segment_en_rules("Smith et al. reported it. J. Doe agreed.", abbrevs),
            (Sents{"Smith et al. reported it.", "J. Doe agreed."}));
  EXPECT_EQ(segment_en_rules("It rose. (See Table 2.) Then it fell.", abbrevs),
            (Sents{"It rose.", "(See Table 2.)", "Then it fell."}));
  EXPECT_EQ(segment_en_rules("lower case. after period", abbrevs), (Sents{"lower case. after period"}));
}

TEST(SegmentEnRules, AbbreviationFile) {
  std::istringstream in("# custom\nDr.\nApprox\n\n");
  const auto list = AbbrevList::parse(in);
  EXPECT_TRUE(list.contains("dr"));
  EXPECT_TRUE(list.contains("approx"));
  EXPECT_EQ(segment_en_rules("See approx. Ten cases.", list), (Sents{"See approx. Ten cases."}));
  EXPECT_EQ(segment_en_rules("See approx. Ten cases.", AbbrevList{}).size(), 2u);
}

TEST(Punkt, LearnsAbbreviationNotSentenceEnd) {
  const auto model = train_punkt(punkt_corpus());
  EXPECT_TRUE(model.is_abbreviation("dr"));
  EXPECT_FALSE(model.is_abbreviation("reported"));
  EXPECT_FALSE(model.is_abbreviation("clinic"));
  EXPECT_EQ(segment_punkt("He saw Dr. Smith. Then he left.", model), (Sents{"He saw Dr. Smith.", "Then he left."}));
}

TEST(Punkt, EmptyCorpusAndModel) {
  const auto model = train_punkt({});
  EXPECT_TRUE(model.empty());
  EXPECT_EQ(segment_punkt("He saw Dr. Smith. Then he left.", model),
            (Sents{"He saw Dr.", "Smith.", "Then he left."}));
  EXPECT_EQ(segment_punkt("Similar cases have been reported.12-14 To overcome limitations, we pooled data.", model)
                .size(),
            1u);
  EXPECT_EQ(segment_punkt("Really? Yes! ok.", model), (Sents{"Really?", "Yes!", "ok."}));
}

TEST(Punkt, DocumentOrderDoesNotMatter) {
  std::vector<Document> docs;
  std::mt19937 rng(18);
  for (int d = 0; d < 12; ++d) {
    std::vector<std::string> paras;
    for (int p = 0; p < 10; ++p) paras.push_back(random_en(rng));
    docs.push_back(make_doc("e" + std::to_string(d), LanguageTag::en(), paras));
  }
  for (auto& d : punkt_corpus()) docs.push_back(d);
  const auto base = train_punkt(docs);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(docs.begin(), docs.end(), rng);
    EXPECT_EQ(train_punkt(docs), base);
  }
  std::ostringstream out;
  base.write(out);
  std::istringstream in(out.str());
  EXPECT_EQ(PunktModel::read(in), base);
}

TEST(Segmenters, LosslessOnRandomParagraphs) {
  std::mt19937 rng(19);
  const auto abbrevs = AbbrevList::defaults();
  const auto punkt = train_punkt(punkt_corpus());
  for (int k = 0; k < 1000; ++k) {
    const std::string en = normalize_text(random_en(rng), LanguageTag::en());
    for (const auto& s : {segment_en_rules(en, abbrevs), segment_punkt(en, punkt), segment_punkt(en, PunktModel{})}) {
      EXPECT_EQ(join_with(s, " "), en);
      for (const auto& x : s) EXPECT_FALSE(utf8::trim(x).empty());
    }
    const std::string zh = normalize_text(random_zh(rng, true), LanguageTag::zh());
    const auto s = segment_zh(zh);
    EXPECT_EQ(join_with(s, ""), zh) << zh;
    for (const auto& x : s) EXPECT_FALSE(x.empty());
  }
}

TEST(Segmenter, SegmentDocumentKeepsParagraphIndex) {
  Segmenter seg;
  const auto list = seg.segment(make_doc("e", LanguageTag::en(), {"One. Two.", "Three."}));
  EXPECT_EQ(list.sentences, (Sents{"One.", "Two.", "Three."}));
  EXPECT_EQ(list.paragraph_index, (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_EQ(list.doc_id, "e");
  EXPECT_EQ(parse_sbd_method("punkt"), SbdMethod::punkt);
  EXPECT_THROW(parse_sbd_method("nltk"), Error);
}

TEST(SbdDiff, Report) {
  auto r = sbd_diff_report({{"a", 3}, {"b", 4}}, {{"a", 3}, {"b", 4}});
  for (const auto& row : r.rows) EXPECT_EQ(row.diff, 0);
  EXPECT_EQ(r.median, 0.0);
  r = sbd_diff_report({{"a", 5}}, {{"a", 3}});
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].diff, 2);
  EXPECT_EQ(r.csv(), "article,zh,en,diff\na,5,3,2\nsummary,2,2,2\n");
  EXPECT_THROW(sbd_diff_report({{"a", 1}}, {{"b", 1}}), Error);
  r = sbd_diff_report({{"a", 1}, {"b", 5}, {"c", 2}, {"d", 9}}, {{"a", 1}, {"b", 2}, {"c", 4}, {"d", 1}});
  EXPECT_DOUBLE_EQ(r.median, 2.5);
  EXPECT_DOUBLE_EQ(quantile({0, 3, 2, 8}, 0.25), 1.5);
}

TEST(AbbrevList, ShippedFileMatchesDefaults) {
  const auto shipped = AbbrevList::load(std::filesystem::path(BITEXT_SOURCE_DIR) / "data" / "abbrevs.txt");
  EXPECT_EQ(shipped.entries, AbbrevList::defaults().entries);
}
