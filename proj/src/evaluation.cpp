#include "bitext/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "bitext/formats.hpp"

namespace bitext {

namespace {

bool one_to_one(const Bead& b) { return b.src.size() == 1 && b.tgt.size() == 1; }

std::string fixed(double v, int decimals) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(decimals);
  out << v;
  return out.str();
}

}  // namespace

Prf1 prf1_from_counts(std::size_t matches, std::size_t predicted, std::size_t gold) {
  Prf1 r;
  r.matches = matches;
  r.predicted = predicted;
  r.gold = gold;
  r.precision = predicted ? static_cast<double>(matches) / static_cast<double>(predicted) : 0.0;
  r.recall = gold ? static_cast<double>(matches) / static_cast<double>(gold) : 0.0;
  r.f1 = r.precision + r.recall > 0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

Prf1 prf1(const AlignmentSet& pred, const GoldAlignment& gold, bool one_to_one_only) {
  if (pred.src_len != gold.set.src_len || pred.tgt_len != gold.set.tgt_len) {
    throw Error("prf1: prediction covers " + std::to_string(pred.src_len) + "x" + std::to_string(pred.tgt_len) +
                " sentences but gold covers " + std::to_string(gold.set.src_len) + "x" +
                std::to_string(gold.set.tgt_len));
  }
  using Link = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
  std::set<Link> gold_links;
  for (const Bead& b : gold.set.beads) {
    if (!one_to_one_only || one_to_one(b)) gold_links.emplace(b.src, b.tgt);
  }
  std::size_t predicted = 0, matches = 0;
  for (const Bead& b : pred.beads) {
    if (one_to_one_only && !one_to_one(b)) continue;
    ++predicted;
    if (gold_links.count({b.src, b.tgt})) ++matches;
  }
  return prf1_from_counts(matches, predicted, gold_links.size());
}

std::size_t many_to_many_count(const AlignmentSet& set) {
  return static_cast<std::size_t>(std::count_if(set.beads.begin(), set.beads.end(), [](const Bead& b) {
    return !b.src.empty() && !b.tgt.empty() && !one_to_one(b);
  }));
}

std::vector<TypeCount> alignment_type_distribution(const std::vector<GoldAlignment>& golds) {
  std::map<BeadType, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& g : golds) {
    for (const Bead& b : g.set.beads) {
      ++counts[b.type()];
      ++total;
    }
  }
  std::vector<TypeCount> rows;
  auto emit = [&](BeadType t, std::size_t c) {
    const double pct = total ? std::round(1000.0 * static_cast<double>(c) / static_cast<double>(total)) / 10.0 : 0.0;
    rows.push_back({t, c, pct});
  };
  for (BeadType t : kAllowedBeadTypes) {
    auto it = counts.find(t);
    if (it != counts.end()) {
      emit(t, it->second);
      counts.erase(it);
    }
  }
  for (const auto& [t, c] : counts) emit(t, c);
  return rows;
}

std::vector<TypeCount> alignment_type_distribution(const GoldAlignment& gold) {
  return alignment_type_distribution(std::vector<GoldAlignment>{gold});
}

std::string type_distribution_csv(const std::vector<TypeCount>& rows) {
  std::ostringstream out;
  out << "type,count,percent\n";
  std::size_t total = 0;
  for (const auto& r : rows) {
    out << to_string(r.type) << ',' << r.count << ',' << fixed(r.percent, 1) << '\n';
    total += r.count;
  }
  out << "total," << total << ',' << (total ? "100.0" : "0.0") << '\n';
  return out.str();
}

std::vector<ReportRow> aligner_report(const std::vector<GoldAlignment>& gold, const std::vector<MethodRun>& runs) {
  std::vector<ReportRow> rows;
  for (const auto& run : runs) {
    if (run.predictions.size() != gold.size()) {
      throw Error("aligner_report: method '" + run.method + "' produced " + std::to_string(run.predictions.size()) +
                  " alignments for " + std::to_string(gold.size()) + " gold documents");
    }
    std::size_t matches = 0, predicted = 0, golds = 0, m2m = 0;
    for (std::size_t d = 0; d < gold.size(); ++d) {
      const Prf1 p = prf1(run.predictions[d], gold[d], true);
      matches += p.matches;
      predicted += p.predicted;
      golds += p.gold;
      m2m += many_to_many_count(run.predictions[d]);
    }
    rows.push_back({run.method, prf1_from_counts(matches, predicted, golds), m2m});
  }
  return rows;
}

std::string aligner_report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "method,precision,recall,f1,matches,predicted,gold,many_to_many\n";
  for (const auto& r : rows) {
    out << r.method << ',' << fixed(r.score.precision, 4) << ',' << fixed(r.score.recall, 4) << ','
        << fixed(r.score.f1, 4) << ',' << r.score.matches << ',' << r.score.predicted << ',' << r.score.gold << ','
        << r.many_to_many << '\n';
  }
  return out.str();
}

}  // namespace bitext
