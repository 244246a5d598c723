#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bitext/gale_church.hpp"
#include "bitext/scoring.hpp"
#include "bitext/types.hpp"

namespace bitext {

struct ScoreMatrix {
  std::size_t rows = 0;  // translated source sentences
  std::size_t cols = 0;  // target sentences
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Entry (i, j) = sentence_bleu(tokenize(translation[i]), tokenize(tgt[j])),
/// both tokenized in the target language. Throws Error if
/// `expected_rows` is given and differs from the translation length.
ScoreMatrix score_matrix(const SentenceList& src_translation, const SentenceList& tgt, const BleuConfig& cfg,
                         std::optional<std::size_t> expected_rows = std::nullopt);

using Anchor = std::pair<std::size_t, std::size_t>;

/// Sum over cells of |i*cols - j*rows|: distance of a chain from the
/// main diagonal.
long long diagonal_deviation(const std::vector<Anchor>& chain, std::size_t rows, std::size_t cols);

/// Maximum-total chain of cells with score > min_score, strictly
/// increasing in both coordinates. Ties go to the chain with the smaller
/// diagonal deviation.
std::vector<Anchor> find_anchors(const ScoreMatrix& m, double min_score);

struct BleualignConfig {
  BleuConfig bleu;
  /// Cells must score strictly above this to anchor. The default equals
  /// the smoothing floor, the highest score a pair with no matching word
  /// can reach.
  double min_score = 0.01;
  bool grow_anchors = true;
  LengthParams length;

  void validate() const;
};

/// Uni-directional alignment of src to tgt using `src_translation`
/// (src rendered in the target language, one line per src sentence).
AlignmentSet bleualign_uni(const SentenceList& src, const SentenceList& tgt, const SentenceList& src_translation,
                           const BleualignConfig& cfg);

/// Length params for aligning in the opposite direction.
LengthParams reverse_length_params(const LengthParams& p);

/// With `tgt_translation`, aligns in both directions and keeps only beads
/// found by both. Throws Error on line-count mismatches.
AlignmentSet bleualign(const SentenceList& src, const SentenceList& tgt, const SentenceList& src_translation,
                       const SentenceList* tgt_translation, const BleualignConfig& cfg);

}  // namespace bitext
