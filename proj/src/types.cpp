#include "bitext/types.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>

namespace bitext {

bool LanguageTag::well_formed(std::string_view code) {
  if (code.empty()) return false;
  return std::all_of(code.begin(), code.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

bool LanguageTag::known(std::string_view code) { return code == "zh" || code == "en"; }

LanguageTag LanguageTag::parse(std::string_view code) {
  if (!well_formed(code)) {
    throw Error("malformed language tag '" + std::string(code) + "' (expected lowercase ASCII)");
  }
  if (!known(code)) throw Error("unknown language tag '" + std::string(code) + "'");
  return LanguageTag(std::string(code));
}

Date Date::parse(std::string_view text) {
  auto fail = [&]() -> Date {
    throw Error("malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return fail();
  Date d;
  auto field = [&](std::size_t pos, std::size_t len, int& out) {
    const char* first = text.data() + pos;
    const char* last = first + len;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) fail();
  };
  field(0, 4, d.year);
  field(5, 2, d.month);
  field(8, 2, d.day);
  const std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                        std::chrono::month{static_cast<unsigned>(d.month)},
                                        std::chrono::day{static_cast<unsigned>(d.day)}};
  if (!ymd.ok()) return fail();
  return d;
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::vector<DocumentPair> pair_documents(const std::vector<Document>& docs) {
  std::vector<std::string> order;
  std::map<std::string, std::pair<const Document*, const Document*>> by_pair;
  for (const Document& d : docs) {
    auto [it, inserted] = by_pair.try_emplace(d.meta.pair_id, nullptr, nullptr);
    if (inserted) order.push_back(d.meta.pair_id);
    auto& slot = d.meta.language.is_zh() ? it->second.first : it->second.second;
    if (slot) {
      throw Error("pair_id '" + d.meta.pair_id + "' has two " + d.meta.language.code() + " documents");
    }
    slot = &d;
  }
  std::vector<DocumentPair> pairs;
  for (const auto& id : order) {
    const auto& [zh, en] = by_pair.at(id);
    if (!zh || !en) {
      throw Error("pair_id '" + id + "' is missing its " + std::string(zh ? "en" : "zh") + " document");
    }
    pairs.push_back({*zh, *en});
  }
  return pairs;
}

std::string to_string(BeadType type) {
  return std::to_string(type.src) + "-" + std::to_string(type.tgt);
}

bool is_allowed(BeadType type) {
  return std::find(std::begin(kAllowedBeadTypes), std::end(kAllowedBeadTypes), type) !=
         std::end(kAllowedBeadTypes);
}

BeadType bead_type(const Bead& bead) { return bead.type(); }

Bead make_bead(std::size_t src_begin, std::size_t src_end, std::size_t tgt_begin,
               std::size_t tgt_end, std::optional<double> score, std::string method) {
  Bead b;
  for (std::size_t i = src_begin; i < src_end; ++i) b.src.push_back(i);
  for (std::size_t j = tgt_begin; j < tgt_end; ++j) b.tgt.push_back(j);
  b.score = score;
  b.method = std::move(method);
  return b;
}

namespace {

bool contiguous(const std::vector<std::size_t>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] != v[k - 1] + 1) return false;
  }
  return true;
}

// Per-side bookkeeping for the monotonicity and reuse rules.
struct SideState {
  std::set<std::size_t> used;
  std::optional<std::size_t> max_seen;
};

void check_side(const std::vector<std::size_t>& indices, std::size_t len, std::string_view side,
                std::size_t bead_index, SideState& state, std::vector<Violation>& out) {
  bool reuse = false, crossing = false, bounds = false;
  for (std::size_t idx : indices) {
    if (idx >= len) bounds = true;
    if (state.used.count(idx)) {
      reuse = true;
    } else if (state.max_seen && idx < *state.max_seen) {
      crossing = true;
    }
  }
  auto add = [&](std::string_view rule, std::string detail) {
    out.push_back({bead_index, std::string(rule), std::string(side) + ": " + std::move(detail)});
  };
  if (bounds) add(rules::kBounds, "index >= length " + std::to_string(len));
  if (reuse) add(rules::kReuse, "index already used by an earlier bead");
  if (crossing) add(rules::kMonotone, "index precedes an index of an earlier bead");
  for (std::size_t idx : indices) {
    state.used.insert(idx);
    if (!state.max_seen || idx > *state.max_seen) state.max_seen = idx;
  }
}

}  // namespace

std::vector<Violation> validate_alignment(const AlignmentSet& set) {
  std::vector<Violation> out;
  SideState src_state, tgt_state;
  for (std::size_t b = 0; b < set.beads.size(); ++b) {
    const Bead& bead = set.beads[b];
    if (bead.src.empty() && bead.tgt.empty()) {
      out.push_back({b, std::string(rules::kEmpty), "bead links no sentences"});
      continue;
    }
    if (!contiguous(bead.src) || !contiguous(bead.tgt)) {
      out.push_back({b, std::string(rules::kContiguous),
                     "indices must be contiguous and strictly increasing"});
    }
    if (!is_allowed(bead.type())) {
      out.push_back({b, std::string(rules::kBeadType), "type " + to_string(bead.type())});
    }
    check_side(bead.src, set.src_len, "src", b, src_state, out);
    check_side(bead.tgt, set.tgt_len, "tgt", b, tgt_state, out);
  }
  return out;
}

std::vector<Violation> validate_gold(const GoldAlignment& gold) {
  std::vector<Violation> out = validate_alignment(gold.set);
  std::vector<int> src_hits(gold.set.src_len, 0), tgt_hits(gold.set.tgt_len, 0);
  for (const Bead& bead : gold.set.beads) {
    for (std::size_t i : bead.src) {
      if (i < src_hits.size()) ++src_hits[i];
    }
    for (std::size_t j : bead.tgt) {
      if (j < tgt_hits.size()) ++tgt_hits[j];
    }
  }
  const std::size_t at = gold.set.beads.size();
  for (std::size_t i = 0; i < src_hits.size(); ++i) {
    if (src_hits[i] == 0) {
      out.push_back({at, std::string(rules::kCoverage), "src sentence " + std::to_string(i) +
                                                            " not covered"});
    }
  }
  for (std::size_t j = 0; j < tgt_hits.size(); ++j) {
    if (tgt_hits[j] == 0) {
      out.push_back({at, std::string(rules::kCoverage), "tgt sentence " + std::to_string(j) +
                                                            " not covered"});
    }
  }
  return out;
}

}  // namespace bitext
