#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bitext/scoring.hpp"
#include "bitext/types.hpp"

namespace bitext {

inline constexpr std::string_view kNullWord = "<NULL>";
inline constexpr std::string_view kOtherWord = "<OTHER>";

/// t(tgt | src) for IBM Model 1. Source id 0 is the null word. Rows are
/// sparse: only target words that co-occurred with the source word in
/// training carry probability.
class TranslationTable {
 public:
  TranslationTable();

  int src_id(std::string_view word) const;  // -1 if unknown
  int tgt_id(std::string_view word) const;
  int add_src(const std::string& word);
  int add_tgt(const std::string& word);
  const std::string& src_word(int id) const { return src_words_[static_cast<std::size_t>(id)]; }
  const std::string& tgt_word(int id) const { return tgt_words_[static_cast<std::size_t>(id)]; }
  std::size_t src_size() const { return src_words_.size(); }
  std::size_t tgt_size() const { return tgt_words_.size(); }

  /// Row of (tgt id, probability), sorted by tgt id.
  std::vector<std::pair<int, double>>& row(int src) { return rows_[static_cast<std::size_t>(src)]; }
  const std::vector<std::pair<int, double>>& row(int src) const { return rows_[static_cast<std::size_t>(src)]; }

  double prob_ids(int src, int tgt) const;
  /// 0 for unknown words or pairs.
  double prob(std::string_view src, std::string_view tgt) const;
  /// Highest-probability target for `src` (smallest id on ties); empty if none.
  std::string best_target(std::string_view src) const;

  /// TSV "src<TAB>tgt<TAB>prob", sorted by src then tgt.
  void write(std::ostream& out) const;
  static TranslationTable read(std::istream& in, std::string_view source_name = "<table>");

 private:
  std::vector<std::string> src_words_, tgt_words_;
  std::unordered_map<std::string, int> src_index_, tgt_index_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
};

using TokenPair = std::pair<Tokens, Tokens>;

/// Model 1 EM. t starts uniform over the target words co-occurring with
/// each source word (the null word co-occurs with every target word).
/// If `trace` is given it receives the corpus log-likelihood before the
/// first iteration and after each one. Throws Error on an empty pair list
/// or iterations < 1.
TranslationTable train_ibm1(const std::vector<TokenPair>& pairs, int iterations,
                            std::vector<double>* trace = nullptr);

/// sum over pairs and target positions of log((1/(l_s+1)) sum_i t(t_j|s_i)).
double ibm1_log_likelihood(const TranslationTable& table, const std::vector<TokenPair>& pairs);

/// Replaces words seen once in `pairs` (per side) by kOtherWord.
std::vector<TokenPair> map_rare_words(const std::vector<TokenPair>& pairs);

/// Bead moves of the length lattice, prior order.
inline constexpr std::array<BeadType, 5> kMooreMoves = {BeadType{1, 1}, BeadType{1, 0}, BeadType{0, 1},
                                                        BeadType{2, 1}, BeadType{1, 2}};

/// Sentence-length model in tokens: r = target/source token ratio and
/// add-one smoothed empirical length distributions of each side.
struct LengthModel {
  double r = 1.0;
  std::array<double, 5> priors = {0.94, 0.01, 0.01, 0.02, 0.02};
  std::vector<double> src_length_logp;  // index = length, last entry = unseen
  std::vector<double> tgt_length_logp;

  double log_src_length(std::size_t len) const;
  double log_tgt_length(std::size_t len) const;

  /// Estimated over the given document pairs (token lengths).
  static LengthModel estimate(const std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>& docs);
};

double log_poisson(std::size_t k, double lambda);

struct LatticePosteriors {
  std::size_t rows = 0;  // src sentences
  std::size_t cols = 0;  // tgt sentences
  /// Posterior that source i and target j form a 1-1 bead.
  std::vector<double> one_to_one;

  double at(std::size_t i, std::size_t j) const { return one_to_one[i * cols + j]; }
};

struct LengthPassResult {
  LatticePosteriors posteriors;
  std::vector<std::pair<std::size_t, std::size_t>> confident;  // ascending
};

struct MooreConfig {
  double theta1 = 0.99;
  double theta2 = 0.5;
  int iterations = 4;

  void validate() const;
};

/// Token lists for each sentence of a document side.
std::vector<Tokens> tokenize_sentences(const SentenceList& list);

/// Length-only forward-backward. With no model given, one is estimated
/// from this document pair alone.
LengthPassResult length_pass(const SentenceList& src, const SentenceList& tgt, double theta1,
                             const std::optional<LengthModel>& model = std::nullopt);

/// Lexical model trained from confident pairs.
struct LexicalModel {
  TranslationTable table;
  /// log u(w) indexed by table target id; add-one smoothed.
  std::vector<double> log_unigram;
  double log_unigram_unseen = 0.0;
};

LexicalModel build_lexical_model(const std::vector<TokenPair>& confident_pairs, int iterations);
/// Uses an existing table (e.g. loaded from disk); unigrams come from
/// `confident_pairs`.
LexicalModel build_lexical_model(TranslationTable table, const std::vector<TokenPair>& confident_pairs);

/// Second pass: lattice probabilities gain Model1(t|s) / prod u(t_j) on
/// every non-deletion bead. Output = 1-1 beads with posterior >= theta2
/// (greedily by posterior, skipping conflicts); everything else becomes
/// 1-0 / 0-1 beads. Falls back to the length model alone, with a warning,
/// when either side shares no word with the table.
AlignmentSet moore_align(const SentenceList& src, const SentenceList& tgt, const LexicalModel& lex,
                         double theta2, const std::optional<LengthModel>& model = std::nullopt);

/// Posteriors of the lexical pass (for diagnostics and tests).
LatticePosteriors moore_posteriors(const SentenceList& src, const SentenceList& tgt, const LexicalModel* lex,
                                   const LengthModel& model);

/// Whole-corpus driver: length model and confident pairs from every
/// document pair, then Model 1, then per-document realignment.
struct MooreCorpusResult {
  LengthModel length_model;
  LexicalModel lexical;
  std::size_t confident_pairs = 0;
  std::vector<AlignmentSet> alignments;
};

MooreCorpusResult moore_align_corpus(const std::vector<std::pair<SentenceList, SentenceList>>& docs,
                                     const MooreConfig& cfg = {}, int jobs = 1);

}  // namespace bitext
