#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. They are deliberately naive: exhaustive enumeration, direct
// recounting, and textbook formulas.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bitext/bleualign.hpp"
#include "bitext/gale_church.hpp"
#include "bitext/scoring.hpp"

namespace oracle {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Minimum total Gale-Church cost over every bead sequence, summing bead
/// costs left to right.
inline double gc_min_cost(const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt,
                          const bitext::LengthParams& params) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
    if (i == src.size() && j == tgt.size()) {
      best = std::min(best, acc);
      return;
    }
    for (const auto& mv : bitext::kGcMoves) {
      const auto di = static_cast<std::size_t>(mv.src), dj = static_cast<std::size_t>(mv.tgt);
      if (i + di > src.size() || j + dj > tgt.size()) continue;
      std::size_t s = 0, t = 0;
      for (std::size_t k = i; k < i + di; ++k) s += src[k];
      for (std::size_t k = j; k < j + dj; ++k) t += tgt[k];
      walk(i + di, j + dj, acc + bitext::gc_cost(mv, s, t, params));
    }
  };
  walk(0, 0, 0.0);
  return best;
}

/// Clipped n-gram matches and hypothesis n-gram count for order n, by
/// direct recount.
inline std::pair<std::size_t, std::size_t> ngram_matches(const bitext::Tokens& hyp, const bitext::Tokens& ref,
                                                         std::size_t n) {
  if (hyp.size() < n) return {0, 0};
  auto grams = [n](const bitext::Tokens& t) {
    std::map<std::vector<std::string>, std::size_t> m;
    for (std::size_t k = 0; k + n <= t.size(); ++k) ++m[std::vector<std::string>(t.begin() + k, t.begin() + k + n)];
    return m;
  };
  const auto h = grams(hyp), r = grams(ref);
  std::size_t matches = 0;
  for (const auto& [g, c] : h) {
    auto it = r.find(g);
    if (it != r.end()) matches += std::min(c, it->second);
  }
  return {matches, hyp.size() - n + 1};
}

inline double sentence_bleu(const bitext::Tokens& hyp, const bitext::Tokens& ref, const bitext::BleuConfig& cfg) {
  if (hyp.empty()) return 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= cfg.n_max; ++n) {
    const auto [m, total] = ngram_matches(hyp, ref, static_cast<std::size_t>(n));
    if (total == 0) continue;
    log_sum += std::log((m > 0 ? static_cast<double>(m) : cfg.epsilon) / static_cast<double>(total));
    ++orders;
  }
  double score = std::exp(log_sum / orders);
  if (cfg.use_brevity_penalty && ref.size() > hyp.size()) {
    score *= std::exp(1.0 - static_cast<double>(ref.size()) / static_cast<double>(hyp.size()));
  }
  return std::min(1.0, std::max(0.0, score));
}

struct Chain {
  double total = 0.0;
  std::vector<bitext::Anchor> cells;
};

/// Best monotone chain by exhaustive enumeration: maximum total (summed
/// in chain order), then smallest diagonal deviation.
inline Chain best_chain(const bitext::ScoreMatrix& m, double min_score) {
  Chain best;
  long long best_dev = 0;
  std::vector<bitext::Anchor> cur;
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i0, std::size_t j0, double acc) {
    const long long dev = bitext::diagonal_deviation(cur, m.rows, m.cols);
    if (acc > best.total || (acc == best.total && dev < best_dev)) {
      best.total = acc;
      best.cells = cur;
      best_dev = dev;
    }
    for (std::size_t i = i0; i < m.rows; ++i) {
      for (std::size_t j = j0; j < m.cols; ++j) {
        if (!(m.at(i, j) > min_score)) continue;
        cur.emplace_back(i, j);
        walk(i + 1, j + 1, acc + m.at(i, j));
        cur.pop_back();
      }
    }
  };
  walk(0, 0, 0.0);
  return best;
}

/// Textbook Model 1 EM over string maps.
struct Ibm1 {
  std::map<std::string, std::map<std::string, double>> t;  // t[src][tgt]

  static constexpr const char* kNull = "<NULL>";

  explicit Ibm1(const std::vector<std::pair<bitext::Tokens, bitext::Tokens>>& pairs) : pairs_(pairs) {
    std::map<std::string, std::set<std::string>> cooc;
    for (const auto& [s, e] : pairs_) {
      for (const auto& f : e) {
        cooc[kNull].insert(f);
        for (const auto& w : s) cooc[w].insert(f);
      }
    }
    for (const auto& [w, fs] : cooc) {
      for (const auto& f : fs) t[w][f] = 1.0 / static_cast<double>(fs.size());
    }
  }

  void iterate() {
    std::map<std::string, std::map<std::string, double>> c;
    for (const auto& [s, e] : pairs_) {
      std::vector<std::string> src{kNull};
      src.insert(src.end(), s.begin(), s.end());
      for (const auto& f : e) {
        double z = 0.0;
        for (const auto& w : src) z += t[w][f];
        for (const auto& w : src) c[w][f] += t[w][f] / z;
      }
    }
    for (auto& [w, row] : c) {
      double total = 0.0;
      for (const auto& [f, v] : row) total += v;
      for (const auto& [f, v] : row) t[w][f] = v / total;
    }
  }

  double log_likelihood() const {
    double ll = 0.0;
    for (const auto& [s, e] : pairs_) {
      std::vector<std::string> src{kNull};
      src.insert(src.end(), s.begin(), s.end());
      for (const auto& f : e) {
        double sum = 0.0;
        for (const auto& w : src) {
          auto it = t.find(w);
          if (it == t.end()) continue;
          auto jt = it->second.find(f);
          if (jt != it->second.end()) sum += jt->second;
        }
        ll += std::log(sum / static_cast<double>(src.size()));
      }
    }
    return ll;
  }

 private:
  std::vector<std::pair<bitext::Tokens, bitext::Tokens>> pairs_;
};

}  // namespace oracle
