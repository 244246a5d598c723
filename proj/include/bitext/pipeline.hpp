#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bitext/bleualign.hpp"
#include "bitext/formats.hpp"
#include "bitext/gale_church.hpp"
#include "bitext/moore.hpp"
#include "bitext/preprocess.hpp"
#include "bitext/sbd.hpp"
#include "bitext/types.hpp"

namespace bitext {

// ---------------------------------------------------------------------------
// Dedup

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);

/// Dedup normal form: lowercased (en only), digits and punctuation
/// removed, whitespace collapsed and trimmed.
std::string dedup_normalize(std::string_view text, const LanguageTag& lang);

struct DedupResult {
  std::vector<SentencePair> pairs;
  std::size_t removed = 0;
  /// Input index of every kept pair.
  std::vector<std::size_t> kept;
};

/// Keeps the first pair of each normalized (src, tgt) hash, in input
/// order. Pairs are (zh, en).
DedupResult dedup_pairs(const std::vector<SentencePair>& pairs);

// ---------------------------------------------------------------------------
// Split

enum class Split { train, dev, test };
std::string_view to_string(Split split);

struct SplitSpec {
  std::size_t test_sentence_target = 2102;
  std::size_t dev_sentence_target = 2036;
};

struct ArticleCount {
  std::string id;
  Date date;
  std::size_t pairs = 0;
};

/// Articles newest first (ties by id): test takes articles while its
/// running pair total is below the test target, then dev likewise, then
/// train. Throws Error on duplicate ids.
std::map<std::string, Split> split_corpus(const std::vector<ArticleCount>& articles, const SplitSpec& spec);

// ---------------------------------------------------------------------------
// Stats

struct CorpusStats {
  std::size_t sentence_pairs = 0;
  std::size_t src_tokens = 0;
  std::size_t tgt_tokens = 0;
  std::size_t articles = 0;
};

/// Token counts use tokenize() with zh for the first column and en for
/// the second.
CorpusStats corpus_stats(const std::vector<SentencePair>& pairs, std::size_t articles);
CorpusStats corpus_stats(const std::map<std::string, std::vector<SentencePair>>& by_article);

// ---------------------------------------------------------------------------
// Stages

struct PreprocessOptions {
  FilterRules rules = FilterRules::defaults();
  bool truecase = true;
};

struct PreprocessOutput {
  std::vector<DocumentPair> pairs;
  TruecaseModel truecaser;
  std::vector<ParagraphCountRow> counts;
  /// "doc_id<TAB>paragraph<TAB>rule" lines for filter removals and stitch
  /// log lines prefixed with the doc id.
  std::vector<std::string> log;
};

/// normalize -> stitch -> filter per document, then a truecaser trained on
/// the filtered en side and applied to paragraph-initial tokens.
PreprocessOutput preprocess_corpus(const std::vector<DocumentPair>& pairs, const PreprocessOptions& opts,
                                   int jobs = 1);

using DocSentences = std::pair<SentenceList, SentenceList>;  // (zh, en)

struct SbdOutput {
  std::vector<DocSentences> docs;
  SbdDiffReport diff;
};

/// Segments both sides; when `truecaser` is given, every en sentence has
/// its first token recased.
SbdOutput sbd_corpus(const std::vector<DocumentPair>& pairs, const Segmenter& segmenter,
                     const TruecaseModel* truecaser = nullptr, int jobs = 1);

enum class AlignMethod { gc, moore, bleualign };
AlignMethod parse_align_method(std::string_view name);
std::string_view to_string(AlignMethod method);

struct AlignOptions {
  AlignMethod method = AlignMethod::moore;
  /// Re-estimate c and s2 from the corpus (gc and the bleualign gaps).
  bool estimate_length = true;
  LengthParams length;
  MooreConfig moore;
  BleualignConfig bleualign;
  /// Line-parallel translations, one per document (bleualign only). The
  /// second is optional and switches to bi-directional mode.
  std::vector<SentenceList> src_mt;
  std::vector<SentenceList> tgt_mt;
};

struct AlignOutput {
  std::vector<AlignmentSet> alignments;
  LengthParams length;  // params used by gc / bleualign gaps
  std::optional<LexicalModel> lexical;
  std::size_t confident_pairs = 0;
};

/// Character-length params from paragraph-aligned text: paragraphs are
/// paired when both sides have the same count, whole documents otherwise.
LengthParams estimate_corpus_length_params(const std::vector<DocSentences>& docs);

AlignOutput align_corpus(const std::vector<DocSentences>& docs, const AlignOptions& opts, int jobs = 1);

/// Non-deletion beads as (zh joined with "", en joined with " ").
std::vector<SentencePair> beads_to_bitext(const AlignmentSet& set, const SentenceList& src, const SentenceList& tgt);

// ---------------------------------------------------------------------------
// End-to-end run

struct PipelineConfig {
  std::filesystem::path input;   // metadata TSV of the raw documents
  std::filesystem::path output;  // output directory
  std::optional<std::filesystem::path> patterns;
  std::optional<std::filesystem::path> abbrevs;
  std::optional<std::filesystem::path> length_params;
  /// Directories with "<doc id>.txt" translations, one line per sentence.
  std::optional<std::filesystem::path> src_mt_dir;
  std::optional<std::filesystem::path> tgt_mt_dir;
  SbdMethod sbd = SbdMethod::rules;
  bool truecase = true;
  AlignOptions align;
  SplitSpec split;
  int jobs = 1;
  std::uint64_t seed = 0;  // reserved; no stage is stochastic

  /// JSON object; relative paths resolve against `base_dir`. Unknown keys
  /// are rejected. Every key is optional, so a file can also just supply
  /// defaults for single-stage commands.
  static PipelineConfig from_json(std::string_view text, const std::filesystem::path& base_dir,
                                  std::string_view source_name = "<config>");
  static PipelineConfig load(const std::filesystem::path& path);
};

struct StageRecord {
  std::string stage;
  std::size_t input = 0;
  std::size_t output = 0;
  double seconds = 0.0;
};

struct PipelineResult {
  std::vector<StageRecord> stages;
  std::size_t bitext_rows = 0;  // after dedup
  std::size_t aligned_beads = 0;
  CorpusStats stats;
};

/// Error raised by run_pipeline, naming the failing stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Name of the run log inside the output directory. It records timings,
/// so it is the one output that differs between otherwise identical runs.
inline constexpr std::string_view kRunLogName = "run_log.jsonl";

/// preprocess -> sbd -> align -> dedup -> split -> stats. Every output is
/// first written as "<name>.partial" and renamed once all stages succeed;
/// on failure the .partial files are left behind and StageError is thrown.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace bitext
