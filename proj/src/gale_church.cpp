#include "bitext/gale_church.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bitext/utf8.hpp"

namespace bitext {

namespace {

int move_index(BeadType type) {
  for (std::size_t k = 0; k < kGcMoves.size(); ++k) {
    if (kGcMoves[k] == type) return static_cast<int>(k);
  }
  return -1;
}

// Abramowitz & Stegun 7.1.26: erfc(x) ~ poly(t) * exp(-x^2), t = 1/(1+p x).
constexpr double kP = 0.3275911;
constexpr double kA[5] = {0.254829592, -0.284496736, 1.421413741, -1.453152027, 1.061405429};

double erfc_poly(double x) {
  const double t = 1.0 / (1.0 + kP * x);
  return t * (kA[0] + t * (kA[1] + t * (kA[2] + t * (kA[3] + t * kA[4]))));
}

}  // namespace

std::array<double, 6> LengthParams::default_priors() {
  std::array<double, 6> p = {0.89, 0.0099, 0.0099, 0.0445, 0.0445, 0.011};
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= sum;
  return p;
}

double LengthParams::prior(BeadType type) const {
  const int k = move_index(type);
  if (k < 0) throw Error("no length prior for bead type " + to_string(type));
  return priors[static_cast<std::size_t>(k)];
}

void LengthParams::validate() const {
  if (!(c > 0) || !std::isfinite(c)) throw Error("length params: c must be > 0");
  if (!(s2 > 0) || !std::isfinite(s2)) throw Error("length params: s2 must be > 0");
  double sum = 0;
  for (double p : priors) {
    if (!(p > 0)) throw Error("length params: every prior must be > 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("length params: priors must sum to 1");
}

LengthParams LengthParams::parse(std::istream& in, std::string_view source_name) {
  LengthParams params;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::replace(line.begin(), line.end(), '=', ' ');
    std::istringstream fields(line);
    std::string key, value;
    if (!(fields >> key) || key.front() == '#') continue;
    auto fail = [&](const std::string& what) {
      throw FormatError(std::string(source_name) + ":" + std::to_string(line_no) + ": " + what);
    };
    if (!(fields >> value)) fail("expected '<key> <value>'");
    double v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) fail("bad number '" + value + "'");
    if (key == "c") {
      params.c = v;
    } else if (key == "s2") {
      params.s2 = v;
    } else if (key.rfind("priors.", 0) == 0) {
      const std::string type = key.substr(7);
      int k = -1;
      for (std::size_t m = 0; m < kGcMoves.size(); ++m) {
        if (to_string(kGcMoves[m]) == type) k = static_cast<int>(m);
      }
      if (k < 0) fail("unknown bead type '" + type + "'");
      params.priors[static_cast<std::size_t>(k)] = v;
    } else {
      fail("unknown key '" + key + "' (expected c, s2 or priors.<m>-<n>)");
    }
  }
  const double sum = std::accumulate(params.priors.begin(), params.priors.end(), 0.0);
  if (sum > 0) {
    for (double& p : params.priors) p /= sum;
  }
  params.validate();
  return params;
}

LengthParams LengthParams::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open length params '" + path.string() + "'");
  return parse(in, path.string());
}

void LengthParams::write(std::ostream& out) const {
  auto num = [](double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  };
  out << "c " << num(c) << "\ns2 " << num(s2) << '\n';
  for (std::size_t k = 0; k < kGcMoves.size(); ++k) {
    out << "priors." << to_string(kGcMoves[k]) << ' ' << num(priors[k]) << '\n';
  }
}

std::size_t char_length(std::string_view text) { return utf8::length(text); }

LengthParams estimate_length_params_from_lengths(
    const std::vector<std::pair<std::size_t, std::size_t>>& lengths) {
  double src_total = 0, tgt_total = 0;
  for (const auto& [s, t] : lengths) {
    src_total += static_cast<double>(s);
    tgt_total += static_cast<double>(t);
  }
  if (src_total == 0) throw Error("estimate_length_params: total source length is zero");
  LengthParams params;
  params.c = tgt_total / src_total;
  std::vector<double> z;
  for (const auto& [s, t] : lengths) {
    if (s == 0) continue;
    const auto sd = static_cast<double>(s);
    z.push_back((static_cast<double>(t) - params.c * sd) / std::sqrt(sd));
  }
  double var = 0;
  if (z.size() > 1) {
    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(z.size());
    for (double v : z) var += (v - mean) * (v - mean);
    var /= static_cast<double>(z.size() - 1);
  }
  params.s2 = std::max(var, 1.0);
  return params;
}

LengthParams estimate_length_params(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::pair<std::size_t, std::size_t>> lengths;
  lengths.reserve(pairs.size());
  for (const auto& [s, t] : pairs) lengths.emplace_back(char_length(s), char_length(t));
  return estimate_length_params_from_lengths(lengths);
}

double normal_cdf(double x) {
  if (x == 0.0) return 0.5;
  const double ax = std::abs(x) / std::sqrt(2.0);
  const double tail = 0.5 * erfc_poly(ax) * std::exp(-ax * ax);
  return x > 0 ? 1.0 - tail : tail;
}

double log_two_sided_tail(double delta) {
  if (delta == 0.0) return 0.0;
  const double ax = std::abs(delta) / std::sqrt(2.0);
  // 2 * (1 - Phi(|d|)) = erfc(|d|/sqrt 2)
  return std::log(erfc_poly(ax)) - ax * ax;
}

double gc_delta(std::size_t src_chars, std::size_t tgt_chars, const LengthParams& params) {
  const auto s = static_cast<double>(src_chars);
  const auto t = static_cast<double>(tgt_chars);
  const double denom = std::sqrt((src_chars > 0 ? s : t) * params.s2);
  if (denom == 0.0) return 0.0;
  return (t - s * params.c) / denom;
}

double gc_cost(BeadType type, std::size_t src_chars, std::size_t tgt_chars, const LengthParams& params) {
  const int k = move_index(type);
  if (k < 0) throw Error("gc_cost: bead type " + to_string(type) + " is not a Gale-Church move");
  return -std::log(params.priors[static_cast<std::size_t>(k)]) -
         log_two_sided_tail(gc_delta(src_chars, tgt_chars, params));
}

namespace {

struct Cell {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t irregular = 0;  // non-1-1 beads
  std::size_t beads = 0;
  int move = -1;
};

}  // namespace

std::vector<Bead> gc_align_lengths(const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt,
                                   const LengthParams& params, std::size_t src_offset,
                                   std::size_t tgt_offset) {
  const std::size_t n = src.size(), m = tgt.size();
  std::vector<std::size_t> src_prefix(n + 1, 0), tgt_prefix(m + 1, 0);
  for (std::size_t i = 0; i < n; ++i) src_prefix[i + 1] = src_prefix[i] + src[i];
  for (std::size_t j = 0; j < m; ++j) tgt_prefix[j + 1] = tgt_prefix[j] + tgt[j];

  const std::size_t width = m + 1;
  std::vector<Cell> dp((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> Cell& { return dp[i * width + j]; };
  at(0, 0).cost = 0.0;

  auto moves_to = [&](std::size_t i, std::size_t j) {
    std::vector<int> seq;
    while (i > 0 || j > 0) {
      const int k = at(i, j).move;
      seq.push_back(k);
      i -= static_cast<std::size_t>(kGcMoves[static_cast<std::size_t>(k)].src);
      j -= static_cast<std::size_t>(kGcMoves[static_cast<std::size_t>(k)].tgt);
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  };

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      Cell& cell = at(i, j);
      for (std::size_t k = 0; k < kGcMoves.size(); ++k) {
        const auto di = static_cast<std::size_t>(kGcMoves[k].src);
        const auto dj = static_cast<std::size_t>(kGcMoves[k].tgt);
        if (di > i || dj > j) continue;
        const Cell& prev = at(i - di, j - dj);
        if (!std::isfinite(prev.cost)) continue;
        const double c = prev.cost + gc_cost(kGcMoves[k], src_prefix[i] - src_prefix[i - di],
                                             tgt_prefix[j] - tgt_prefix[j - dj], params);
        const std::size_t irregular = prev.irregular + (k == 0 ? 0 : 1);
        const std::size_t beads = prev.beads + 1;
        bool better = false;
        if (cell.move < 0 || c < cell.cost) {
          better = true;
        } else if (c == cell.cost) {
          if (irregular != cell.irregular) {
            better = irregular < cell.irregular;
          } else if (beads != cell.beads) {
            better = beads < cell.beads;
          } else {
            auto cand = moves_to(i - di, j - dj);
            cand.push_back(static_cast<int>(k));
            better = cand < moves_to(i, j);
          }
        }
        if (better) cell = {c, irregular, beads, static_cast<int>(k)};
      }
    }
  }

  std::vector<Bead> beads;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const Cell& cell = at(i, j);
    const BeadType mv = kGcMoves[static_cast<std::size_t>(cell.move)];
    const std::size_t pi = i - static_cast<std::size_t>(mv.src);
    const std::size_t pj = j - static_cast<std::size_t>(mv.tgt);
    beads.push_back(make_bead(src_offset + pi, src_offset + i, tgt_offset + pj, tgt_offset + j,
                              -gc_cost(mv, src_prefix[i] - src_prefix[pi], tgt_prefix[j] - tgt_prefix[pj],
                                       params),
                              "gc"));
    i = pi;
    j = pj;
  }
  std::reverse(beads.begin(), beads.end());
  return beads;
}

double total_cost(const std::vector<Bead>& beads, const std::vector<std::size_t>& src,
                  const std::vector<std::size_t>& tgt, const LengthParams& params) {
  double total = 0.0;
  for (const Bead& b : beads) {
    std::size_t s = 0, t = 0;
    for (std::size_t i : b.src) s += src.at(i);
    for (std::size_t j : b.tgt) t += tgt.at(j);
    total += gc_cost(b.type(), s, t, params);
  }
  return total;
}

std::vector<std::pair<std::size_t, std::size_t>> paragraph_blocks(const SentenceList& list) {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::size_t p = k < list.paragraph_index.size() ? list.paragraph_index[k] : 0;
    const std::size_t prev =
        k > 0 && k - 1 < list.paragraph_index.size() ? list.paragraph_index[k - 1] : 0;
    if (k == 0 || p != prev) {
      blocks.emplace_back(k, k + 1);
    } else {
      blocks.back().second = k + 1;
    }
  }
  return blocks;
}

AlignmentSet gc_align(const SentenceList& src, const SentenceList& tgt, const LengthParams& params) {
  params.validate();
  auto lengths = [](const SentenceList& l, std::size_t b, std::size_t e) {
    std::vector<std::size_t> out;
    for (std::size_t k = b; k < e; ++k) out.push_back(char_length(l.sentences[k]));
    return out;
  };
  AlignmentSet set;
  set.src_len = src.size();
  set.tgt_len = tgt.size();
  const auto sb = paragraph_blocks(src);
  const auto tb = paragraph_blocks(tgt);
  if (!sb.empty() && sb.size() == tb.size()) {
    for (std::size_t p = 0; p < sb.size(); ++p) {
      auto beads = gc_align_lengths(lengths(src, sb[p].first, sb[p].second),
                                    lengths(tgt, tb[p].first, tb[p].second), params, sb[p].first,
                                    tb[p].first);
      for (auto& b : beads) set.beads.push_back(std::move(b));
    }
  } else {
    set.beads = gc_align_lengths(lengths(src, 0, src.size()), lengths(tgt, 0, tgt.size()), params);
  }
  return set;
}

}  // namespace bitext
