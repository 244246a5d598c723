#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bitext {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. The message carries the path and line number.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Lowercase ASCII language code. Only `zh` and `en` are known to the
/// segmenters and tokenizers; other well-formed codes are rejected by
/// `parse`.
class LanguageTag {
 public:
  LanguageTag() = default;

  static LanguageTag parse(std::string_view code);
  static LanguageTag zh() { return LanguageTag("zh"); }
  static LanguageTag en() { return LanguageTag("en"); }

  static bool well_formed(std::string_view code);
  static bool known(std::string_view code);

  const std::string& code() const { return code_; }
  bool is_zh() const { return code_ == "zh"; }
  bool is_en() const { return code_ == "en"; }

  friend bool operator==(const LanguageTag&, const LanguageTag&) = default;
  friend auto operator<=>(const LanguageTag&, const LanguageTag&) = default;

 private:
  explicit LanguageTag(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

/// ISO-8601 calendar date (YYYY-MM-DD); orders chronologically.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  static Date parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const Date&, const Date&) = default;
  friend auto operator<=>(const Date&, const Date&) = default;
};

struct ArticleMeta {
  std::string id;
  std::string pair_id;
  LanguageTag language;
  Date date;
  std::string article_type;

  friend bool operator==(const ArticleMeta&, const ArticleMeta&) = default;
};

struct Document {
  ArticleMeta meta;
  std::vector<std::string> paragraphs;

  friend bool operator==(const Document&, const Document&) = default;
};

/// The zh and en versions of one article, matched by pair_id.
struct DocumentPair {
  Document zh;
  Document en;

  const std::string& pair_id() const { return zh.meta.pair_id; }

  friend bool operator==(const DocumentPair&, const DocumentPair&) = default;
};

/// Groups documents by pair_id, in order of first appearance. Throws Error
/// if a pair_id lacks its zh or en side.
std::vector<DocumentPair> pair_documents(const std::vector<Document>& docs);

/// Segmented sentences of one document side. `paragraph_index[k]` is the
/// paragraph that sentence k came from.
struct SentenceList {
  std::string doc_id;
  LanguageTag language;
  std::vector<std::string> sentences;
  std::vector<std::size_t> paragraph_index;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }

  friend bool operator==(const SentenceList&, const SentenceList&) = default;
};

/// (m, n): number of source and target sentences in a bead.
struct BeadType {
  int src = 0;
  int tgt = 0;

  friend bool operator==(const BeadType&, const BeadType&) = default;
  friend auto operator<=>(const BeadType&, const BeadType&) = default;
};

std::string to_string(BeadType type);

/// Bead shapes that may appear in an alignment (the shapes seen in the gold
/// annotation).
inline constexpr BeadType kAllowedBeadTypes[] = {{0, 1}, {1, 0}, {1, 1}, {1, 2},
                                                 {2, 1}, {2, 2}, {2, 3}};

bool is_allowed(BeadType type);

struct Bead {
  std::vector<std::size_t> src;
  std::vector<std::size_t> tgt;
  /// Higher is better. Cost-based aligners store the negated cost. Gold
  /// beads have no score.
  std::optional<double> score;
  std::string method;
  /// Annotator note; gold files only.
  std::string note;

  BeadType type() const {
    return {static_cast<int>(src.size()), static_cast<int>(tgt.size())};
  }

  /// Equality on the linked indices only; what alignment evaluation and
  /// bi-directional intersection compare.
  bool same_link(const Bead& other) const { return src == other.src && tgt == other.tgt; }

  friend bool operator==(const Bead&, const Bead&) = default;
};

BeadType bead_type(const Bead& bead);

/// Monotone, non-overlapping sequence of beads over sentence lists of
/// lengths `src_len` and `tgt_len`.
struct AlignmentSet {
  std::vector<Bead> beads;
  std::size_t src_len = 0;
  std::size_t tgt_len = 0;

  friend bool operator==(const AlignmentSet&, const AlignmentSet&) = default;
};

/// Human reference alignment. Same shape as AlignmentSet, but it must
/// partition both sides: every index appears in exactly one bead.
struct GoldAlignment {
  AlignmentSet set;

  friend bool operator==(const GoldAlignment&, const GoldAlignment&) = default;
};

struct Violation {
  std::size_t bead_index = 0;
  std::string rule;
  std::string detail;
};

/// Rule names used in Violation::rule.
namespace rules {
inline constexpr std::string_view kEmpty = "empty bead";
inline constexpr std::string_view kContiguous = "contiguity";
inline constexpr std::string_view kBeadType = "bead type";
inline constexpr std::string_view kMonotone = "monotonicity";
inline constexpr std::string_view kReuse = "index reuse";
inline constexpr std::string_view kBounds = "bounds";
inline constexpr std::string_view kCoverage = "coverage";
}  // namespace rules

/// Checks the AlignmentSet invariants. Returns an empty list iff valid.
std::vector<Violation> validate_alignment(const AlignmentSet& set);

/// validate_alignment plus the partition requirement on gold sets. Coverage
/// violations use bead_index == beads.size().
std::vector<Violation> validate_gold(const GoldAlignment& gold);

/// Builds a bead over the contiguous ranges [src_begin, src_end) and
/// [tgt_begin, tgt_end).
Bead make_bead(std::size_t src_begin, std::size_t src_end, std::size_t tgt_begin,
               std::size_t tgt_end, std::optional<double> score = std::nullopt,
               std::string method = {});

}  // namespace bitext
