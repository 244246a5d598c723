#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bitext/types.hpp"

namespace bitext {

struct Prf1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matches = 0;
  std::size_t predicted = 0;  // beads considered on the prediction side
  std::size_t gold = 0;       // beads considered on the gold side
};

/// P/R/F1 from match counts; each is 0 when its denominator is 0.
Prf1 prf1_from_counts(std::size_t matches, std::size_t predicted, std::size_t gold);

/// A match is a predicted bead linking exactly the same indices as a gold
/// bead. With `one_to_one_only`, only 1-1 beads are considered on either
/// side. Throws Error if the sentence counts differ.
Prf1 prf1(const AlignmentSet& pred, const GoldAlignment& gold, bool one_to_one_only = true);

/// Beads that are neither 1-1 nor a deletion/insertion.
std::size_t many_to_many_count(const AlignmentSet& set);

struct TypeCount {
  BeadType type;
  std::size_t count = 0;
  double percent = 0.0;  // rounded to one decimal
};

/// Counts per bead type in the order 0-1, 1-0, 1-1, 1-2, 2-1, 2-2, 2-3,
/// then any other type found, ascending.
std::vector<TypeCount> alignment_type_distribution(const GoldAlignment& gold);
std::vector<TypeCount> alignment_type_distribution(const std::vector<GoldAlignment>& golds);
/// "type,count,percent" rows and a final "total,<n>,100.0".
std::string type_distribution_csv(const std::vector<TypeCount>& rows);

struct MethodRun {
  std::string method;
  /// One alignment per gold document, same order.
  std::vector<AlignmentSet> predictions;
};

struct ReportRow {
  std::string method;
  Prf1 score;              // counts summed over documents
  std::size_t many_to_many = 0;
};

/// One row per run, in input order.
std::vector<ReportRow> aligner_report(const std::vector<GoldAlignment>& gold, const std::vector<MethodRun>& runs);
/// "method,precision,recall,f1,matches,predicted,gold,many_to_many".
std::string aligner_report_csv(const std::vector<ReportRow>& rows);

}  // namespace bitext
