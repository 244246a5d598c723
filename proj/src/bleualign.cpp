#include "bitext/bleualign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace bitext {

ScoreMatrix score_matrix(const SentenceList& src_translation, const SentenceList& tgt, const BleuConfig& cfg,
                         std::optional<std::size_t> expected_rows) {
  cfg.validate();
  if (expected_rows && *expected_rows != src_translation.size()) {
    throw Error("translation has " + std::to_string(src_translation.size()) + " lines but source has " +
                std::to_string(*expected_rows) + " sentences");
  }
  std::vector<NgramProfile> hyps, refs;
  for (const auto& s : src_translation.sentences) hyps.emplace_back(tokenize(s, tgt.language), cfg.n_max);
  for (const auto& s : tgt.sentences) refs.emplace_back(tokenize(s, tgt.language), cfg.n_max);
  ScoreMatrix m;
  m.rows = hyps.size();
  m.cols = refs.size();
  m.values.resize(m.rows * m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) m.values[i * m.cols + j] = sentence_bleu(hyps[i], refs[j], cfg);
  }
  return m;
}

long long diagonal_deviation(const std::vector<Anchor>& chain, std::size_t rows, std::size_t cols) {
  long long dev = 0;
  for (const auto& [i, j] : chain) {
    dev += std::llabs(static_cast<long long>(i * cols) - static_cast<long long>(j * rows));
  }
  return dev;
}

namespace {

struct ChainKey {
  double sum = 0.0;
  long long dev = 0;
  long long end = -1;  // flat cell index of the chain's last cell, -1 = empty
};

bool better(const ChainKey& a, const ChainKey& b) {
  if (a.sum != b.sum) return a.sum > b.sum;
  return a.dev < b.dev;
}

}  // namespace

std::vector<Anchor> find_anchors(const ScoreMatrix& m, double min_score) {
  if (m.rows == 0 || m.cols == 0) return {};
  const std::size_t w = m.cols;
  // ending[c]: best chain ending exactly at cell c; prev[c] its predecessor.
  std::vector<ChainKey> ending(m.rows * w);
  std::vector<long long> prev(m.rows * w, -1);
  // prefix[c]: best chain ending anywhere in the rectangle up to cell c.
  std::vector<ChainKey> prefix(m.rows * w);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      const std::size_t c = i * w + j;
      const double s = m.at(i, j);
      if (s > min_score) {
        const ChainKey base = i > 0 && j > 0 ? prefix[(i - 1) * w + (j - 1)] : ChainKey{};
        ending[c].sum = base.sum + s;
        ending[c].dev = base.dev + std::llabs(static_cast<long long>(i * m.cols) - static_cast<long long>(j * m.rows));
        ending[c].end = static_cast<long long>(c);
        prev[c] = base.end;
      }
      ChainKey best = ending[c];
      if (i > 0 && better(prefix[c - w], best)) best = prefix[c - w];
      if (j > 0 && better(prefix[c - 1], best)) best = prefix[c - 1];
      prefix[c] = best;
    }
  }
  std::vector<Anchor> chain;
  for (long long c = prefix.back().end; c >= 0; c = prev[static_cast<std::size_t>(c)]) {
    chain.emplace_back(static_cast<std::size_t>(c) / w, static_cast<std::size_t>(c) % w);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

void BleualignConfig::validate() const {
  bleu.validate();
  if (!(min_score >= 0.0 && min_score < 1.0)) throw Error("bleualign: min_score must be in [0, 1)");
  length.validate();
}

namespace {

Tokens join_tokens(const std::vector<Tokens>& parts, const std::vector<std::size_t>& idx) {
  Tokens out;
  for (std::size_t k : idx) out.insert(out.end(), parts[k].begin(), parts[k].end());
  return out;
}

std::vector<std::size_t> lengths_of(const SentenceList& l, std::size_t b, std::size_t e) {
  std::vector<std::size_t> out;
  for (std::size_t k = b; k < e; ++k) out.push_back(char_length(l.sentences[k]));
  return out;
}

}  // namespace

AlignmentSet bleualign_uni(const SentenceList& src, const SentenceList& tgt, const SentenceList& src_translation,
                           const BleualignConfig& cfg) {
  cfg.validate();
  const ScoreMatrix m = score_matrix(src_translation, tgt, cfg.bleu, src.size());
  const auto anchors = find_anchors(m, cfg.min_score);

  std::vector<Tokens> hyp, ref;
  for (const auto& s : src_translation.sentences) hyp.push_back(tokenize(s, tgt.language));
  for (const auto& s : tgt.sentences) ref.push_back(tokenize(s, tgt.language));

  std::vector<Bead> grown;
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    Bead bead = make_bead(anchors[a].first, anchors[a].first + 1, anchors[a].second, anchors[a].second + 1,
                          m.at(anchors[a].first, anchors[a].second), "bleualign");
    if (cfg.grow_anchors) {
      // Free neighbours: not claimed by the previous (grown) bead or the next anchor.
      const std::size_t src_lo = grown.empty() || grown.back().src.empty() ? 0 : grown.back().src.back() + 1;
      const std::size_t tgt_lo = grown.empty() || grown.back().tgt.empty() ? 0 : grown.back().tgt.back() + 1;
      const std::size_t src_hi = a + 1 < anchors.size() ? anchors[a + 1].first : src.size();
      const std::size_t tgt_hi = a + 1 < anchors.size() ? anchors[a + 1].second : tgt.size();
      for (;;) {
        std::optional<Bead> best;
        double best_score = *bead.score;
        auto consider = [&](Bead cand) {
          if (cand.src.size() > 2 || cand.tgt.size() > 2) return;
          const double s = sentence_bleu(join_tokens(hyp, cand.src), join_tokens(ref, cand.tgt), cfg.bleu);
          if (s > best_score) {
            best_score = s;
            cand.score = s;
            best = std::move(cand);
          }
        };
        if (bead.tgt.front() > tgt_lo) {
          Bead c = bead;
          c.tgt.insert(c.tgt.begin(), bead.tgt.front() - 1);
          consider(std::move(c));
        }
        if (bead.tgt.back() + 1 < tgt_hi) {
          Bead c = bead;
          c.tgt.push_back(bead.tgt.back() + 1);
          consider(std::move(c));
        }
        if (bead.src.front() > src_lo) {
          Bead c = bead;
          c.src.insert(c.src.begin(), bead.src.front() - 1);
          consider(std::move(c));
        }
        if (bead.src.back() + 1 < src_hi) {
          Bead c = bead;
          c.src.push_back(bead.src.back() + 1);
          consider(std::move(c));
        }
        if (!best) break;
        bead = std::move(*best);
      }
    }
    grown.push_back(std::move(bead));
  }

  AlignmentSet set;
  set.src_len = src.size();
  set.tgt_len = tgt.size();
  std::size_t si = 0, tj = 0;
  auto fill_gap = [&](std::size_t i_end, std::size_t j_end) {
    auto gap = gc_align_lengths(lengths_of(src, si, i_end), lengths_of(tgt, tj, j_end), cfg.length, si, tj);
    for (auto& b : gap) {
      b.method = "bleualign-gap";
      set.beads.push_back(std::move(b));
    }
  };
  for (auto& b : grown) {
    fill_gap(b.src.front(), b.tgt.front());
    si = b.src.back() + 1;
    tj = b.tgt.back() + 1;
    set.beads.push_back(std::move(b));
  }
  fill_gap(src.size(), tgt.size());
  return set;
}

LengthParams reverse_length_params(const LengthParams& p) {
  LengthParams r = p;
  r.c = 1.0 / p.c;
  r.s2 = p.s2 / (p.c * p.c * p.c);
  std::swap(r.priors[1], r.priors[2]);  // (1,0) <-> (0,1)
  std::swap(r.priors[3], r.priors[4]);  // (2,1) <-> (1,2)
  return r;
}

AlignmentSet bleualign(const SentenceList& src, const SentenceList& tgt, const SentenceList& src_translation,
                       const SentenceList* tgt_translation, const BleualignConfig& cfg) {
  AlignmentSet uni = bleualign_uni(src, tgt, src_translation, cfg);
  if (!tgt_translation) return uni;
  if (tgt_translation->size() != tgt.size()) {
    throw Error("target translation has " + std::to_string(tgt_translation->size()) + " lines but target has " +
                std::to_string(tgt.size()) + " sentences");
  }
  BleualignConfig rcfg = cfg;
  rcfg.length = reverse_length_params(cfg.length);
  const AlignmentSet rev = bleualign_uni(tgt, src, *tgt_translation, rcfg);
  AlignmentSet out;
  out.src_len = uni.src_len;
  out.tgt_len = uni.tgt_len;
  for (const Bead& b : uni.beads) {
    const bool found = std::any_of(rev.beads.begin(), rev.beads.end(),
                                   [&](const Bead& r) { return r.src == b.tgt && r.tgt == b.src; });
    if (found) out.beads.push_back(b);
  }
  return out;
}

}  // namespace bitext
