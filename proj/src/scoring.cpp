#include "bitext/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "bitext/utf8.hpp"

namespace bitext {

Tokens tokenize(std::string_view text, const LanguageTag& lang) {
  // Both languages share one scanner: CJK characters and punctuation are
  // single tokens, everything else groups into runs split at whitespace.
  // For en text this is whitespace splitting with punctuation split off;
  // for zh it is per-character tokens with Latin/digit runs kept whole.
  (void)lang;
  Tokens out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = utf8::next(text, i);
    if (utf8::is_space(cp)) {
      flush();
    } else if (utf8::is_cjk(cp) || utf8::is_punct(cp)) {
      flush();
      std::string single;
      utf8::append(single, cp);
      out.push_back(std::move(single));
    } else {
      utf8::append(current, cp);
    }
  }
  flush();
  return out;
}

void BleuConfig::validate() const {
  if (n_max < 1) throw Error("BleuConfig: n_max must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("BleuConfig: epsilon must be in (0, 1)");
}

namespace {

std::string join_ngram(const Tokens& tokens, std::size_t start, std::size_t n) {
  std::string key = tokens[start];
  for (std::size_t k = 1; k < n; ++k) {
    key.push_back('\x1f');
    key += tokens[start + k];
  }
  return key;
}

}  // namespace

NgramProfile::NgramProfile(const Tokens& tokens, int n_max)
    : by_order_(static_cast<std::size_t>(std::max(n_max, 0))), length_(tokens.size()) {
  for (int n = 1; n <= n_max; ++n) {
    auto& map = by_order_[n - 1];
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + un <= tokens.size(); ++i) ++map[join_ngram(tokens, i, un)];
  }
}

std::size_t NgramProfile::count(const Tokens& ngram) const {
  if (ngram.empty() || ngram.size() > by_order_.size()) return 0;
  const auto& map = by_order_[ngram.size() - 1];
  auto it = map.find(join_ngram(ngram, 0, ngram.size()));
  return it == map.end() ? 0 : it->second;
}

std::size_t NgramProfile::total(int n) const {
  if (n < 1) return 0;
  const auto un = static_cast<std::size_t>(n);
  return length_ >= un ? length_ - un + 1 : 0;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  if (matches.size() < other.matches.size()) {
    matches.resize(other.matches.size(), 0);
    totals.resize(other.totals.size(), 0);
  }
  for (std::size_t k = 0; k < other.matches.size(); ++k) {
    matches[k] += other.matches[k];
    totals[k] += other.totals[k];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

BleuStats bleu_stats(const NgramProfile& hyp, const NgramProfile& ref, int n_max) {
  BleuStats s;
  s.matches.assign(static_cast<std::size_t>(n_max), 0);
  s.totals.assign(static_cast<std::size_t>(n_max), 0);
  s.hyp_len = hyp.length();
  s.ref_len = ref.length();
  for (int n = 1; n <= n_max; ++n) {
    const auto& ref_map = ref.order(n);
    std::size_t clipped = 0;
    for (const auto& [gram, c] : hyp.order(n)) {
      auto it = ref_map.find(gram);
      if (it != ref_map.end()) clipped += std::min(c, it->second);
    }
    s.matches[n - 1] = clipped;
    s.totals[n - 1] = hyp.total(n);
  }
  return s;
}

BleuStats bleu_stats(const Tokens& hyp, const Tokens& ref, int n_max) {
  return bleu_stats(NgramProfile(hyp, n_max), NgramProfile(ref, n_max), n_max);
}

double bleu_from_stats(const BleuStats& stats, const BleuConfig& cfg) {
  if (stats.hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (std::size_t k = 0; k < stats.totals.size() && static_cast<int>(k) < cfg.n_max; ++k) {
    if (stats.totals[k] == 0) continue;
    const double numerator =
        stats.matches[k] == 0 ? cfg.epsilon : static_cast<double>(stats.matches[k]);
    log_sum += std::log(numerator / static_cast<double>(stats.totals[k]));
    ++orders;
  }
  if (orders == 0) return 0.0;
  double score = std::exp(log_sum / orders);
  if (cfg.use_brevity_penalty && stats.ref_len > stats.hyp_len) {
    score *= std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len));
  }
  return std::clamp(score, 0.0, 1.0);
}

double sentence_bleu(const NgramProfile& hyp, const NgramProfile& ref, const BleuConfig& cfg) {
  return bleu_from_stats(bleu_stats(hyp, ref, cfg.n_max), cfg);
}

double sentence_bleu(const Tokens& hyp, const Tokens& ref, const BleuConfig& cfg) {
  return bleu_from_stats(bleu_stats(hyp, ref, cfg.n_max), cfg);
}

double corpus_bleu(const std::vector<Tokens>& hyps, const std::vector<Tokens>& refs,
                   const BleuConfig& cfg) {
  if (hyps.size() != refs.size()) {
    throw Error("corpus_bleu: " + std::to_string(hyps.size()) + " hypotheses but " +
                std::to_string(refs.size()) + " references");
  }
  if (hyps.empty()) throw Error("corpus_bleu: empty corpus");
  BleuStats total;
  total.matches.assign(static_cast<std::size_t>(cfg.n_max), 0);
  total.totals.assign(static_cast<std::size_t>(cfg.n_max), 0);
  for (std::size_t k = 0; k < hyps.size(); ++k) total += bleu_stats(hyps[k], refs[k], cfg.n_max);
  return bleu_from_stats(total, cfg);
}

}  // namespace bitext
