#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "bitext/types.hpp"

namespace bitext {

/// Canonicalizes punctuation and spacing:
///  - curly/angle quotes and primes become ASCII quotes;
///  - hyphen variants and U+2212 become '-', U+2015 becomes an em dash
///    (en and em dashes are kept);
///  - full-width Latin letters and digits become half-width; for en text
///    all full-width ASCII punctuation is folded as well, while zh keeps
///    its full-width punctuation (。！？，etc.);
///  - whitespace runs collapse to one space and the ends are trimmed; in zh
///    text spaces next to CJK characters or full-width punctuation are
///    dropped.
/// Idempotent; never lengthens the byte string.
std::string normalize_text(std::string_view text, const LanguageTag& lang);

Document normalize_document(const Document& doc);

struct StitchResult {
  Document doc;
  std::vector<std::string> log;
};

/// Repairs paragraphs that were split by mistake. zh: a paragraph made only
/// of citation markers and punctuation is appended to its predecessor. en:
/// the hyperlink phrase "open in new tab" is removed and the paragraphs
/// around it are joined with a space.
StitchResult stitch_paragraphs(const Document& doc);

/// True if a zh paragraph consists solely of citation digits, ranges and
/// punctuation.
bool is_citation_fragment(std::string_view paragraph);

struct FilterRule {
  std::string language;  // "zh", "en" or "*"
  std::string pattern;   // regex, or the exact paragraph text
  bool exact = false;
  std::regex regex;

  bool applies_to(const LanguageTag& lang) const { return language == "*" || language == lang.code(); }
  bool matches(std::string_view paragraph) const;
  /// Text form as written in a pattern file.
  std::string describe() const;
};

/// Paragraph filters. Pattern file syntax, one per line:
///   <lang>:<regex>   drop paragraphs where the regex matches (case-insensitive)
///   <lang>=<text>    drop paragraphs equal to <text>
/// where <lang> is zh, en or '*'. Blank lines and '#' comments are ignored.
struct FilterRules {
  std::vector<FilterRule> rules;

  static FilterRules parse(std::istream& in, std::string_view source_name = "<patterns>");
  static FilterRules load(const std::filesystem::path& path);
  /// Built-in rules: figures, tables, reference sections, translator
  /// credits, and media boilerplate (video, interactive graphic, audio
  /// interview, visual abstract, quick take).
  static FilterRules defaults();
  static std::string_view default_text();
};

struct Removal {
  std::size_t paragraph_index = 0;  // index in the input document
  std::string rule;
};

struct FilterResult {
  Document doc;
  std::vector<Removal> removed;
};

FilterResult filter_boilerplate(const Document& doc, const FilterRules& rules);

/// Unigram majority-case model over en text.
struct TruecaseModel {
  struct Entry {
    std::string surface;
    std::size_t count = 0;
  };
  /// Keyed by the lowercased token.
  std::map<std::string, Entry> casing;

  bool empty() const { return casing.empty(); }
};

/// Counts surface forms of tokens that are not sentence-initial (not first
/// in a paragraph and not after a token ending in . ! or ?). Each key maps
/// to its most frequent form; ties go to the form seen first. zh documents
/// are ignored.
TruecaseModel train_truecaser(const std::vector<Document>& corpus);

/// Recases the first token of `text`. Unknown tokens are left as is.
std::string truecase_first_token(std::string_view text, const TruecaseModel& model);

/// Recases the first token of every paragraph (en only; zh is returned
/// unchanged).
Document apply_truecaser(const Document& doc, const TruecaseModel& model);

struct ParagraphCountRow {
  std::string pair_id;
  std::size_t zh_pre = 0;
  std::size_t en_pre = 0;
  std::size_t zh_post = 0;
  std::size_t en_post = 0;
};

/// One row per pre-filter pair, in input order. Throws Error if a pair_id
/// is missing from `post` (or vice versa).
std::vector<ParagraphCountRow> paragraph_count_report(const std::vector<DocumentPair>& pre,
                                                      const std::vector<DocumentPair>& post);
std::string paragraph_count_csv(const std::vector<ParagraphCountRow>& rows);

}  // namespace bitext
