#pragma once

#include <cstddef>
#include <unordered_map>
#include <string>
#include <string_view>
#include <vector>

#include "bitext/types.hpp"

namespace bitext {

using Tokens = std::vector<std::string>;

/// en: whitespace split with every punctuation character split off as its
/// own token. zh: one token per CJK character or punctuation mark;
/// contiguous Latin letter/digit runs stay together.
Tokens tokenize(std::string_view text, const LanguageTag& lang);

struct BleuConfig {
  int n_max = 2;
  double epsilon = 0.01;
  bool use_brevity_penalty = true;

  /// Throws Error unless n_max >= 1 and 0 < epsilon < 1.
  void validate() const;
};

/// Count of every n-gram of order 1..n_max. N-grams are keyed by their
/// tokens joined with U+001F.
class NgramProfile {
 public:
  NgramProfile() = default;
  NgramProfile(const Tokens& tokens, int n_max);

  /// Count of `ngram`, 0 if absent.
  std::size_t count(const Tokens& ngram) const;
  /// Total n-grams of order n (token count - n + 1, floored at 0).
  std::size_t total(int n) const;
  std::size_t length() const { return length_; }
  int n_max() const { return static_cast<int>(by_order_.size()); }
  const std::unordered_map<std::string, std::size_t>& order(int n) const { return by_order_.at(n - 1); }

 private:
  std::vector<std::unordered_map<std::string, std::size_t>> by_order_;
  std::size_t length_ = 0;
};

/// Per-order clipped matches and hypothesis n-gram totals for one pair.
struct BleuStats {
  std::vector<std::size_t> matches;
  std::vector<std::size_t> totals;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats bleu_stats(const Tokens& hyp, const Tokens& ref, int n_max);
/// Same from precomputed profiles; both must have n_max >= `n_max`.
BleuStats bleu_stats(const NgramProfile& hyp, const NgramProfile& ref, int n_max);

/// Smoothed BLEU from aggregated statistics. Orders with no hypothesis
/// n-grams are left out of the geometric mean; a zero-match order
/// contributes epsilon / total instead of 0.
double bleu_from_stats(const BleuStats& stats, const BleuConfig& cfg);

double sentence_bleu(const Tokens& hyp, const Tokens& ref, const BleuConfig& cfg = {});
double sentence_bleu(const NgramProfile& hyp, const NgramProfile& ref, const BleuConfig& cfg = {});

/// Micro-averaged corpus BLEU. Throws Error on length mismatch or empty
/// input.
double corpus_bleu(const std::vector<Tokens>& hyps, const std::vector<Tokens>& refs,
                   const BleuConfig& cfg = {});

}  // namespace bitext
