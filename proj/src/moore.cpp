#include "bitext/moore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "bitext/gale_church.hpp"
#include "bitext/log.hpp"
#include "bitext/parallel.hpp"

namespace bitext {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Floor for sum_i t(t_j|s_i) when a target word has no translation mass.
constexpr double kTranslationFloor = 1e-9;

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// TranslationTable

TranslationTable::TranslationTable() { add_src(std::string(kNullWord)); }

int TranslationTable::src_id(std::string_view word) const {
  auto it = src_index_.find(std::string(word));
  return it == src_index_.end() ? -1 : it->second;
}

int TranslationTable::tgt_id(std::string_view word) const {
  auto it = tgt_index_.find(std::string(word));
  return it == tgt_index_.end() ? -1 : it->second;
}

int TranslationTable::add_src(const std::string& word) {
  auto [it, inserted] = src_index_.try_emplace(word, static_cast<int>(src_words_.size()));
  if (inserted) {
    src_words_.push_back(word);
    rows_.emplace_back();
  }
  return it->second;
}

int TranslationTable::add_tgt(const std::string& word) {
  auto [it, inserted] = tgt_index_.try_emplace(word, static_cast<int>(tgt_words_.size()));
  if (inserted) tgt_words_.push_back(word);
  return it->second;
}

double TranslationTable::prob_ids(int src, int tgt) const {
  if (src < 0 || tgt < 0 || static_cast<std::size_t>(src) >= rows_.size()) return 0.0;
  const auto& r = rows_[static_cast<std::size_t>(src)];
  auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(tgt, -1.0));
  return it != r.end() && it->first == tgt ? it->second : 0.0;
}

double TranslationTable::prob(std::string_view src, std::string_view tgt) const {
  return prob_ids(src_id(src), tgt_id(tgt));
}

std::string TranslationTable::best_target(std::string_view src) const {
  const int s = src_id(src);
  if (s < 0) return {};
  int best = -1;
  double best_p = -1.0;
  for (const auto& [t, p] : row(s)) {
    if (p > best_p) {
      best = t;
      best_p = p;
    }
  }
  return best < 0 ? std::string() : tgt_word(best);
}

void TranslationTable::write(std::ostream& out) const {
  std::map<std::string, std::map<std::string, double>> sorted;
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    for (const auto& [t, p] : rows_[s]) sorted[src_words_[s]][tgt_words_[static_cast<std::size_t>(t)]] = p;
  }
  for (const auto& [s, row] : sorted) {
    for (const auto& [t, p] : row) out << s << '\t' << t << '\t' << format_double(p) << '\n';
  }
}

TranslationTable TranslationTable::read(std::istream& in, std::string_view source_name) {
  TranslationTable table;
  std::string line;
  std::size_t line_no = 0;
  std::map<int, std::map<int, double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto a = line.find('\t');
    const auto b = a == std::string::npos ? a : line.find('\t', a + 1);
    if (b == std::string::npos || line.find('\t', b + 1) != std::string::npos) {
      throw FormatError(std::string(source_name) + ":" + std::to_string(line_no) +
                        ": expected 'src<TAB>tgt<TAB>prob'");
    }
    const std::string_view num(line.data() + b + 1, line.size() - b - 1);
    double p = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), p);
    if (num.empty() || ec != std::errc{} || ptr != num.data() + num.size() || p < 0) {
      throw FormatError(std::string(source_name) + ":" + std::to_string(line_no) + ": bad probability");
    }
    const int s = table.add_src(line.substr(0, a));
    const int t = table.add_tgt(line.substr(a + 1, b - a - 1));
    rows[s][t] = p;
  }
  for (const auto& [s, r] : rows) {
    auto& row = table.row(s);
    for (const auto& [t, p] : r) row.emplace_back(t, p);
  }
  return table;
}

// ---------------------------------------------------------------------------
// IBM Model 1

namespace {

struct EncodedPair {
  std::vector<int> src;  // includes the null word (id 0) first
  std::vector<int> tgt;
};

std::vector<EncodedPair> encode(TranslationTable& table, const std::vector<TokenPair>& pairs) {
  std::vector<EncodedPair> out;
  out.reserve(pairs.size());
  for (const auto& [s, t] : pairs) {
    EncodedPair e;
    e.src.push_back(0);
    for (const auto& w : s) e.src.push_back(table.add_src(w));
    for (const auto& w : t) e.tgt.push_back(table.add_tgt(w));
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EncodedPair> encode_const(const TranslationTable& table, const std::vector<TokenPair>& pairs) {
  std::vector<EncodedPair> out;
  for (const auto& [s, t] : pairs) {
    EncodedPair e;
    e.src.push_back(0);
    for (const auto& w : s) e.src.push_back(table.src_id(w));
    for (const auto& w : t) e.tgt.push_back(table.tgt_id(w));
    out.push_back(std::move(e));
  }
  return out;
}

double log_likelihood(const TranslationTable& table, const std::vector<EncodedPair>& pairs) {
  double ll = 0.0;
  for (const auto& p : pairs) {
    const double norm = std::log(static_cast<double>(p.src.size()));
    for (int t : p.tgt) {
      double sum = 0.0;
      for (int s : p.src) sum += table.prob_ids(s, t);
      ll += std::log(sum) - norm;
    }
  }
  return ll;
}

}  // namespace

TranslationTable train_ibm1(const std::vector<TokenPair>& pairs, int iterations, std::vector<double>* trace) {
  if (iterations < 1) throw Error("train_ibm1: iterations must be >= 1");
  if (pairs.empty()) throw Error("train_ibm1: no training pairs");
  TranslationTable table;
  const auto encoded = encode(table, pairs);

  // Co-occurrence structure; t uniform over each row.
  std::vector<std::set<int>> cooc(table.src_size());
  for (const auto& p : encoded) {
    for (int s : p.src) cooc[static_cast<std::size_t>(s)].insert(p.tgt.begin(), p.tgt.end());
  }
  for (std::size_t s = 0; s < cooc.size(); ++s) {
    auto& row = table.row(static_cast<int>(s));
    row.clear();
    const double u = cooc[s].empty() ? 0.0 : 1.0 / static_cast<double>(cooc[s].size());
    for (int t : cooc[s]) row.emplace_back(t, u);
  }
  if (trace) trace->assign(1, log_likelihood(table, encoded));

  // Position of each (src, tgt) within its row, for count accumulation.
  auto slot = [&](int s, int t) {
    const auto& row = table.row(s);
    return static_cast<std::size_t>(std::lower_bound(row.begin(), row.end(), std::make_pair(t, -1.0)) -
                                    row.begin());
  };

  std::vector<std::vector<double>> counts(table.src_size());
  std::vector<double> denom_cache;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t s = 0; s < counts.size(); ++s) counts[s].assign(table.row(static_cast<int>(s)).size(), 0.0);
    for (const auto& p : encoded) {
      for (int t : p.tgt) {
        double z = 0.0;
        denom_cache.assign(p.src.size(), 0.0);
        for (std::size_t k = 0; k < p.src.size(); ++k) {
          denom_cache[k] = table.prob_ids(p.src[k], t);
          z += denom_cache[k];
        }
        if (z <= 0.0) continue;
        for (std::size_t k = 0; k < p.src.size(); ++k) {
          counts[static_cast<std::size_t>(p.src[k])][slot(p.src[k], t)] += denom_cache[k] / z;
        }
      }
    }
    for (std::size_t s = 0; s < counts.size(); ++s) {
      auto& row = table.row(static_cast<int>(s));
      const double total = std::accumulate(counts[s].begin(), counts[s].end(), 0.0);
      if (total <= 0.0) continue;
      for (std::size_t k = 0; k < row.size(); ++k) row[k].second = counts[s][k] / total;
    }
    if (trace) trace->push_back(log_likelihood(table, encoded));
  }
  return table;
}

double ibm1_log_likelihood(const TranslationTable& table, const std::vector<TokenPair>& pairs) {
  return log_likelihood(table, encode_const(table, pairs));
}

std::vector<TokenPair> map_rare_words(const std::vector<TokenPair>& pairs) {
  std::unordered_map<std::string, std::size_t> src_counts, tgt_counts;
  for (const auto& [s, t] : pairs) {
    for (const auto& w : s) ++src_counts[w];
    for (const auto& w : t) ++tgt_counts[w];
  }
  std::vector<TokenPair> out = pairs;
  for (auto& [s, t] : out) {
    for (auto& w : s) {
      if (src_counts[w] == 1) w = std::string(kOtherWord);
    }
    for (auto& w : t) {
      if (tgt_counts[w] == 1) w = std::string(kOtherWord);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Length model

double log_poisson(std::size_t k, double lambda) {
  const auto kd = static_cast<double>(k);
  if (lambda <= 0.0) return k == 0 ? 0.0 : kNegInf;
  return kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0);
}

namespace {

std::vector<double> length_distribution(const std::vector<std::size_t>& lengths) {
  std::size_t max_len = 0;
  for (std::size_t l : lengths) max_len = std::max(max_len, l);
  // Bins 0..max_len plus one shared bin for unseen longer lengths.
  std::vector<double> counts(max_len + 2, 1.0);
  for (std::size_t l : lengths) counts[l] += 1.0;
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  for (double& c : counts) c = std::log(c / total);
  return counts;
}

double lookup_length(const std::vector<double>& dist, std::size_t len) {
  if (dist.empty()) return 0.0;
  return len + 1 < dist.size() ? dist[len] : dist.back();
}

}  // namespace

double LengthModel::log_src_length(std::size_t len) const { return lookup_length(src_length_logp, len); }
double LengthModel::log_tgt_length(std::size_t len) const { return lookup_length(tgt_length_logp, len); }

LengthModel LengthModel::estimate(
    const std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>& docs) {
  LengthModel model;
  std::vector<std::size_t> src_all, tgt_all;
  double src_total = 0, tgt_total = 0;
  for (const auto& [s, t] : docs) {
    for (std::size_t l : s) {
      src_all.push_back(l);
      src_total += static_cast<double>(l);
    }
    for (std::size_t l : t) {
      tgt_all.push_back(l);
      tgt_total += static_cast<double>(l);
    }
  }
  model.r = src_total > 0 && tgt_total > 0 ? tgt_total / src_total : 1.0;
  model.src_length_logp = length_distribution(src_all);
  model.tgt_length_logp = length_distribution(tgt_all);
  return model;
}

void MooreConfig::validate() const {
  if (!(theta1 > 0.5 && theta1 < 1.0)) throw Error("moore: theta1 must be in (0.5, 1)");
  if (!(theta2 > 0.0 && theta2 < 1.0)) throw Error("moore: theta2 must be in (0, 1)");
  if (iterations < 1) throw Error("moore: iterations must be >= 1");
}

std::vector<Tokens> tokenize_sentences(const SentenceList& list) {
  std::vector<Tokens> out;
  out.reserve(list.size());
  for (const auto& s : list.sentences) out.push_back(tokenize(s, list.language));
  return out;
}

// ---------------------------------------------------------------------------
// Lattice

namespace {

struct LexIds {
  std::vector<std::vector<int>> src;  // per sentence
  std::vector<std::vector<int>> tgt;
};

struct LatticeInput {
  std::vector<std::size_t> src_len, tgt_len;
  const LexicalModel* lex = nullptr;
  LexIds ids;
};

double lexical_log_ratio(const LatticeInput& in, std::size_t sb, std::size_t se, std::size_t tb, std::size_t te) {
  const TranslationTable& table = in.lex->table;
  std::vector<int> src{0};
  for (std::size_t i = sb; i < se; ++i) src.insert(src.end(), in.ids.src[i].begin(), in.ids.src[i].end());
  const double norm = std::log(static_cast<double>(src.size()));
  double total = 0.0;
  for (std::size_t j = tb; j < te; ++j) {
    for (int t : in.ids.tgt[j]) {
      double sum = 0.0;
      for (int s : src) sum += table.prob_ids(s, t);
      const double log_u = t >= 0 ? in.lex->log_unigram[static_cast<std::size_t>(t)] : in.lex->log_unigram_unseen;
      total += std::log(std::max(sum, kTranslationFloor)) - norm - log_u;
    }
  }
  return total;
}

double bead_log_prob(const LatticeInput& in, const LengthModel& model, std::size_t k, std::size_t sb,
                     std::size_t se, std::size_t tb, std::size_t te) {
  double lp = std::log(model.priors[k]);
  std::size_t src_sum = 0, tgt_sum = 0;
  for (std::size_t i = sb; i < se; ++i) {
    lp += model.log_src_length(in.src_len[i]);
    src_sum += in.src_len[i];
  }
  for (std::size_t j = tb; j < te; ++j) tgt_sum += in.tgt_len[j];
  if (se == sb) {
    for (std::size_t j = tb; j < te; ++j) lp += model.log_tgt_length(in.tgt_len[j]);
    return lp;
  }
  if (te == tb) return lp;
  lp += log_poisson(tgt_sum, static_cast<double>(src_sum) * model.r);
  // Two target sentences: uniform over the ways to split the total.
  if (te - tb == 2 && tgt_sum > 1) lp -= std::log(static_cast<double>(tgt_sum - 1));
  if (in.lex) lp += lexical_log_ratio(in, sb, se, tb, te);
  return lp;
}

// Forward-backward over the block [s0, s1) x [t0, t1); writes 1-1
// posteriors into `post` (full-document coordinates).
void forward_backward(const LatticeInput& in, const LengthModel& model, std::size_t s0, std::size_t s1,
                      std::size_t t0, std::size_t t1, LatticePosteriors& post) {
  const std::size_t n = s1 - s0, m = t1 - t0;
  const std::size_t w = m + 1;
  std::vector<double> alpha((n + 1) * w, kNegInf), beta((n + 1) * w, kNegInf);
  // Bead log-probabilities cached per (end cell, move).
  std::vector<std::array<double, 5>> bead((n + 1) * w);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      for (std::size_t k = 0; k < kMooreMoves.size(); ++k) {
        const auto di = static_cast<std::size_t>(kMooreMoves[k].src);
        const auto dj = static_cast<std::size_t>(kMooreMoves[k].tgt);
        bead[i * w + j][k] = di > i || dj > j ? kNegInf
                                                : bead_log_prob(in, model, k, s0 + i - di, s0 + i,
                                                                t0 + j - dj, t0 + j);
      }
    }
  }
  alpha[0] = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      double a = kNegInf;
      for (std::size_t k = 0; k < kMooreMoves.size(); ++k) {
        const auto di = static_cast<std::size_t>(kMooreMoves[k].src);
        const auto dj = static_cast<std::size_t>(kMooreMoves[k].tgt);
        if (di > i || dj > j) continue;
        a = log_add(a, alpha[(i - di) * w + (j - dj)] + bead[i * w + j][k]);
      }
      alpha[i * w + j] = a;
    }
  }
  beta[n * w + m] = 0.0;
  for (std::size_t ii = n + 1; ii-- > 0;) {
    for (std::size_t jj = m + 1; jj-- > 0;) {
      if (ii == n && jj == m) continue;
      double b = kNegInf;
      for (std::size_t k = 0; k < kMooreMoves.size(); ++k) {
        const std::size_t ni = ii + static_cast<std::size_t>(kMooreMoves[k].src);
        const std::size_t nj = jj + static_cast<std::size_t>(kMooreMoves[k].tgt);
        if (ni > n || nj > m) continue;
        b = log_add(b, bead[ni * w + nj][k] + beta[ni * w + nj]);
      }
      beta[ii * w + jj] = b;
    }
  }
  const double z = alpha[n * w + m];
  if (z == kNegInf) return;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const double lp = alpha[(i - 1) * w + (j - 1)] + bead[i * w + j][0] + beta[i * w + j] - z;
      post.one_to_one[(s0 + i - 1) * post.cols + (t0 + j - 1)] = std::clamp(std::exp(lp), 0.0, 1.0);
    }
  }
}

LatticePosteriors run_lattice(const SentenceList& src, const SentenceList& tgt, const LatticeInput& in,
                              const LengthModel& model) {
  LatticePosteriors post;
  post.rows = src.size();
  post.cols = tgt.size();
  post.one_to_one.assign(post.rows * post.cols, 0.0);
  if (src.empty() || tgt.empty()) return post;
  const auto sb = paragraph_blocks(src);
  const auto tb = paragraph_blocks(tgt);
  if (sb.size() == tb.size()) {
    for (std::size_t p = 0; p < sb.size(); ++p) {
      forward_backward(in, model, sb[p].first, sb[p].second, tb[p].first, tb[p].second, post);
    }
  } else {
    forward_backward(in, model, 0, src.size(), 0, tgt.size(), post);
  }
  return post;
}

std::vector<std::size_t> token_lengths(const std::vector<Tokens>& toks) {
  std::vector<std::size_t> out;
  for (const auto& t : toks) out.push_back(t.size());
  return out;
}

LatticeInput length_input(const SentenceList& src, const SentenceList& tgt) {
  LatticeInput in;
  in.src_len = token_lengths(tokenize_sentences(src));
  in.tgt_len = token_lengths(tokenize_sentences(tgt));
  return in;
}

std::vector<int> ids_for(const Tokens& toks, const TranslationTable& table, bool src) {
  const int other = src ? table.src_id(kOtherWord) : table.tgt_id(kOtherWord);
  std::vector<int> out;
  for (const auto& w : toks) {
    int id = src ? table.src_id(w) : table.tgt_id(w);
    out.push_back(id >= 0 ? id : other);
  }
  return out;
}

}  // namespace

LengthPassResult length_pass(const SentenceList& src, const SentenceList& tgt, double theta1,
                             const std::optional<LengthModel>& model) {
  if (!(theta1 > 0.5 && theta1 < 1.0)) throw Error("length_pass: theta1 must be in (0.5, 1)");
  const LatticeInput in = length_input(src, tgt);
  const LengthModel lm = model ? *model : LengthModel::estimate({{in.src_len, in.tgt_len}});
  LengthPassResult result;
  result.posteriors = run_lattice(src, tgt, in, lm);
  for (std::size_t i = 0; i < result.posteriors.rows; ++i) {
    for (std::size_t j = 0; j < result.posteriors.cols; ++j) {
      if (result.posteriors.at(i, j) >= theta1) result.confident.emplace_back(i, j);
    }
  }
  return result;
}

LexicalModel build_lexical_model(TranslationTable table, const std::vector<TokenPair>& confident_pairs) {
  LexicalModel lex;
  lex.table = std::move(table);
  std::vector<double> counts(lex.table.tgt_size(), 0.0);
  double total = 0.0;
  for (const auto& [s, t] : confident_pairs) {
    for (const auto& w : t) {
      const int id = lex.table.tgt_id(w);
      if (id >= 0) counts[static_cast<std::size_t>(id)] += 1.0;
      total += 1.0;
    }
  }
  // Add-one over the table vocabulary plus one unseen bucket.
  const double denom = total + static_cast<double>(counts.size()) + 1.0;
  lex.log_unigram.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) lex.log_unigram[k] = std::log((counts[k] + 1.0) / denom);
  lex.log_unigram_unseen = std::log(1.0 / denom);
  return lex;
}

LexicalModel build_lexical_model(const std::vector<TokenPair>& confident_pairs, int iterations) {
  const auto mapped = map_rare_words(confident_pairs);
  return build_lexical_model(train_ibm1(mapped, iterations), mapped);
}

LatticePosteriors moore_posteriors(const SentenceList& src, const SentenceList& tgt, const LexicalModel* lex,
                                   const LengthModel& model) {
  LatticeInput in = length_input(src, tgt);
  if (lex) {
    in.lex = lex;
    for (const auto& t : tokenize_sentences(src)) in.ids.src.push_back(ids_for(t, lex->table, true));
    for (const auto& t : tokenize_sentences(tgt)) in.ids.tgt.push_back(ids_for(t, lex->table, false));
  }
  return run_lattice(src, tgt, in, model);
}

namespace {

bool vocab_meets(const SentenceList& list, const TranslationTable& table, bool src) {
  for (const auto& toks : tokenize_sentences(list)) {
    for (const auto& w : toks) {
      if ((src ? table.src_id(w) : table.tgt_id(w)) >= 0) return true;
    }
  }
  return false;
}

AlignmentSet select_beads(const LatticePosteriors& post, double theta2) {
  struct Cand {
    double p;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < post.rows; ++i) {
    for (std::size_t j = 0; j < post.cols; ++j) {
      if (post.at(i, j) >= theta2) cands.push_back({post.at(i, j), i, j});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.p > b.p; });
  std::map<std::size_t, std::pair<std::size_t, double>> chosen;  // src -> (tgt, p)
  for (const Cand& c : cands) {
    bool ok = !chosen.count(c.i);
    if (ok) {
      auto next = chosen.upper_bound(c.i);
      if (next != chosen.end() && next->second.first <= c.j) ok = false;
      if (ok && next != chosen.begin()) {
        auto prev = std::prev(next);
        if (prev->second.first >= c.j) ok = false;
      }
    }
    if (ok) chosen.emplace(c.i, std::make_pair(c.j, c.p));
  }
  AlignmentSet set;
  set.src_len = post.rows;
  set.tgt_len = post.cols;
  std::size_t si = 0, tj = 0;
  auto fill_gap = [&](std::size_t i_end, std::size_t j_end) {
    for (; si < i_end; ++si) set.beads.push_back(make_bead(si, si + 1, 0, 0, std::nullopt, "moore"));
    for (; tj < j_end; ++tj) set.beads.push_back(make_bead(0, 0, tj, tj + 1, std::nullopt, "moore"));
  };
  for (const auto& [i, jp] : chosen) {
    fill_gap(i, jp.first);
    set.beads.push_back(make_bead(i, i + 1, jp.first, jp.first + 1, jp.second, "moore"));
    si = i + 1;
    tj = jp.first + 1;
  }
  fill_gap(post.rows, post.cols);
  return set;
}

}  // namespace

AlignmentSet moore_align(const SentenceList& src, const SentenceList& tgt, const LexicalModel& lex, double theta2,
                         const std::optional<LengthModel>& model) {
  if (!(theta2 > 0.0 && theta2 < 1.0)) throw Error("moore_align: theta2 must be in (0, 1)");
  LengthModel lm;
  if (model) {
    lm = *model;
  } else {
    const LatticeInput in = length_input(src, tgt);
    lm = LengthModel::estimate({{in.src_len, in.tgt_len}});
  }
  const bool usable = (src.empty() && tgt.empty()) ||
                      (vocab_meets(src, lex.table, true) && vocab_meets(tgt, lex.table, false));
  if (!usable) {
    log::warn("translation table shares no vocabulary with document; using the length model only",
              {{"src", src.doc_id}, {"tgt", tgt.doc_id}});
  }
  return select_beads(moore_posteriors(src, tgt, usable ? &lex : nullptr, lm), theta2);
}

MooreCorpusResult moore_align_corpus(const std::vector<std::pair<SentenceList, SentenceList>>& docs,
                                     const MooreConfig& cfg, int jobs) {
  cfg.validate();
  MooreCorpusResult result;
  std::vector<std::pair<std::vector<Tokens>, std::vector<Tokens>>> tokens;
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> lengths;
  for (const auto& [s, t] : docs) {
    tokens.emplace_back(tokenize_sentences(s), tokenize_sentences(t));
    lengths.emplace_back(token_lengths(tokens.back().first), token_lengths(tokens.back().second));
  }
  result.length_model = LengthModel::estimate(lengths);

  const auto passes = parallel_map(docs.size(), jobs, [&](std::size_t d) {
    return length_pass(docs[d].first, docs[d].second, cfg.theta1, result.length_model).confident;
  });
  std::vector<TokenPair> confident;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& [i, j] : passes[d]) confident.emplace_back(tokens[d].first[i], tokens[d].second[j]);
  }
  result.confident_pairs = confident.size();
  if (confident.empty()) {
    log::warn("length pass found no confident sentence pairs; Moore falls back to the length model");
    result.lexical = build_lexical_model(TranslationTable{}, {});
  } else {
    result.lexical = build_lexical_model(confident, cfg.iterations);
  }
  result.alignments = parallel_map(docs.size(), jobs, [&](std::size_t d) {
    return moore_align(docs[d].first, docs[d].second, result.lexical, cfg.theta2, result.length_model);
  });
  return result;
}

}  // namespace bitext
