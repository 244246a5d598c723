#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bitext/types.hpp"

namespace bitext {

/// Lowercase abbreviations without their final period ("dr", "e.g",
/// "et al"). File format: one entry per line, '#' comments.
struct AbbrevList {
  std::set<std::string> entries;

  bool contains(std::string_view token) const { return entries.count(std::string(token)) > 0; }

  static AbbrevList parse(std::istream& in);
  static AbbrevList load(const std::filesystem::path& path);
  /// Medical and bibliographic defaults.
  static AbbrevList defaults();
};

/// Splits a zh paragraph after 。！？. Closing quotes/brackets, further
/// terminators and trailing citation numbers stay with the left sentence.
/// Returns exact substrings: concatenation reproduces the trimmed input.
std::vector<std::string> segment_zh(std::string_view paragraph);

/// Rule-based en splitter. A boundary follows . ? or ! when the next
/// non-space character starts a sentence (uppercase, digit, or an opening
/// quote/bracket before one), except after a listed abbreviation or a
/// single-letter initial, inside a number, or before a parenthetical that
/// closes with ")." (which attaches left). Citation numbers glued to the
/// period ("reported.12-14") stay with the left sentence.
std::vector<std::string> segment_en_rules(std::string_view paragraph, const AbbrevList& abbrevs);

struct PunktParams {
  double abbrev_threshold = 0.3;
  double starter_threshold = 30.0;
  double colloc_threshold = 7.88;
};

/// Learned Punkt parameters with the score each entry was admitted at.
struct PunktModel {
  std::map<std::string, double> abbreviations;
  std::map<std::string, double> sentence_starters;
  std::map<std::pair<std::string, std::string>, double> collocations;
  PunktParams params;

  bool is_abbreviation(std::string_view type) const { return abbreviations.count(std::string(type)) > 0; }
  bool is_starter(std::string_view type) const { return sentence_starters.count(std::string(type)) > 0; }
  bool is_collocation(const std::string& a, const std::string& b) const {
    return collocations.count({a, b}) > 0;
  }
  bool empty() const { return abbreviations.empty() && sentence_starters.empty() && collocations.empty(); }

  /// Line records: "param<TAB>name<TAB>value", "abbrev<TAB>type<TAB>score",
  /// "starter<TAB>type<TAB>score", "colloc<TAB>type<TAB>type<TAB>score".
  void write(std::ostream& out) const;
  static PunktModel read(std::istream& in, std::string_view source_name = "<punkt model>");

  friend bool operator==(const PunktModel& a, const PunktModel& b) {
    return a.abbreviations == b.abbreviations && a.sentence_starters == b.sentence_starters &&
           a.collocations == b.collocations;
  }
};

/// Punkt word type: lowercase, surrounding punctuation and a final period
/// removed, numbers collapsed to "##number##".
std::string punkt_type(std::string_view token);

/// Dunning log-likelihood used for abbreviation detection (alternative
/// hypothesis fixed at p = 0.99).
double punkt_abbrev_log_likelihood(double count_a, double count_b, double count_ab, double n);
/// Binomial log-likelihood ratio used for starters and collocations.
double punkt_col_log_likelihood(double count_a, double count_b, double count_ab, double n);

/// Unsupervised training on the en paragraphs of `corpus` (zh documents
/// are skipped). Counts are order-free, so the model depends only on the
/// multiset of paragraphs.
PunktModel train_punkt(const std::vector<Document>& corpus, const PunktParams& params = {});

/// Splits between whitespace tokens: after a token ending in ? or !, or in
/// a period unless its type is a learned abbreviation (overridden when the
/// next type is a learned sentence starter), the pair is a learned
/// collocation, or the next token starts lowercase.
std::vector<std::string> segment_punkt(std::string_view paragraph, const PunktModel& model);

enum class SbdMethod { rules, punkt };

SbdMethod parse_sbd_method(std::string_view name);

struct Segmenter {
  SbdMethod method = SbdMethod::rules;
  AbbrevList abbrevs = AbbrevList::defaults();
  PunktModel punkt;

  std::vector<std::string> split(std::string_view paragraph, const LanguageTag& lang) const;
  SentenceList segment(const Document& doc) const;
};

struct SbdDiffRow {
  std::string article;
  std::size_t zh = 0;
  std::size_t en = 0;
  long long diff = 0;  // zh - en
};

struct SbdDiffReport {
  std::vector<SbdDiffRow> rows;
  // Quartiles of |diff| (linear interpolation between order statistics).
  double q1 = 0, median = 0, q3 = 0;

  /// "article,zh,en,diff" rows followed by "summary,<q1>,<median>,<q3>".
  std::string csv() const;
};

/// Throws Error if the two maps cover different articles.
SbdDiffReport sbd_diff_report(const std::map<std::string, std::size_t>& zh_counts,
                              const std::map<std::string, std::size_t>& en_counts);

/// Quantile of `values` at q in [0,1], linear interpolation.
double quantile(std::vector<double> values, double q);

}  // namespace bitext
