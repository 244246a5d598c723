#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bitext/types.hpp"

namespace bitext {

/// DP moves in tie-break order.
inline constexpr std::array<BeadType, 6> kGcMoves = {
    BeadType{1, 1}, BeadType{1, 0}, BeadType{0, 1}, BeadType{2, 1}, BeadType{1, 2}, BeadType{2, 2}};

struct LengthParams {
  double c = 1.0;
  double s2 = 6.8;
  /// Indexed like kGcMoves.
  std::array<double, 6> priors = default_priors();

  static std::array<double, 6> default_priors();

  double prior(BeadType type) const;
  /// Throws Error unless c > 0, s2 > 0, every prior > 0 and they sum to 1.
  void validate() const;

  /// Key-value file: "c 1.2", "s2 6.8", "priors.1-1 0.89", ... ('#'
  /// comments, '=' or whitespace separators). Unlisted keys keep defaults;
  /// priors are renormalized after loading.
  static LengthParams parse(std::istream& in, std::string_view source_name = "<length params>");
  static LengthParams load(const std::filesystem::path& path);
  void write(std::ostream& out) const;
};

/// Length in code points, the unit of the length model.
std::size_t char_length(std::string_view text);

/// c = total tgt chars / total src chars. s2 is the sample variance of
/// (tgt - c*src)/sqrt(src) over pairs with src > 0, floored at 1.0.
/// Throws Error when no pair has source characters.
LengthParams estimate_length_params(const std::vector<std::pair<std::string, std::string>>& pairs);
LengthParams estimate_length_params_from_lengths(
    const std::vector<std::pair<std::size_t, std::size_t>>& lengths);

/// Standard normal CDF (rational erf approximation, |error| <= 7.5e-8).
double normal_cdf(double x);
/// log(2 * (1 - Phi(|delta|))), computed without forming the tail.
double log_two_sided_tail(double delta);

double gc_delta(std::size_t src_chars, std::size_t tgt_chars, const LengthParams& params);
/// -log prior(type) - log(2(1 - Phi(|delta|))). Throws Error for a type
/// that is not a DP move.
double gc_cost(BeadType type, std::size_t src_chars, std::size_t tgt_chars, const LengthParams& params);

/// Minimum-cost bead sequence over sentence lengths. Ties prefer fewer
/// non-1-1 beads, then fewer beads, then the lexicographically smallest
/// move sequence. Bead scores are negated costs; indices start at the
/// given offsets.
std::vector<Bead> gc_align_lengths(const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt,
                                   const LengthParams& params, std::size_t src_offset = 0,
                                   std::size_t tgt_offset = 0);

/// Aligns paragraph by paragraph when both sides have the same number of
/// paragraphs, else over the whole document.
AlignmentSet gc_align(const SentenceList& src, const SentenceList& tgt, const LengthParams& params);

/// Sum of bead costs in bead order; the quantity gc_align minimizes.
double total_cost(const std::vector<Bead>& beads, const std::vector<std::size_t>& src,
                  const std::vector<std::size_t>& tgt, const LengthParams& params);

/// Contiguous runs of equal paragraph_index, as [begin, end) ranges.
std::vector<std::pair<std::size_t, std::size_t>> paragraph_blocks(const SentenceList& list);

}  // namespace bitext
