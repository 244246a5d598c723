#include "bitext/sbd.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bitext/utf8.hpp"

namespace bitext {

namespace {

constexpr std::string_view kDefaultAbbrevs[] = {
    "dr",    "mr",    "mrs",   "ms",    "prof",  "fig",   "figs",  "et al", "al",    "e.g",
    "i.e",   "vs",    "no",    "nos",   "approx", "vol",  "pp",    "p",     "ed",    "eds",
    "dept",  "univ",  "inc",   "ltd",   "co",    "corp",  "jr",    "sr",    "st",    "jan",
    "feb",   "mar",   "apr",   "jun",   "jul",   "aug",   "sep",   "sept",  "oct",   "nov",
    "dec",   "ref",   "refs",  "suppl", "eq",    "eqs",   "ca",    "cf",    "resp",  "incl",
    "avg",   "est",   "sec",   "ch",    "tab",   "u.s",   "u.k",   "m.d",   "ph.d",  "pts",
    "wk",    "wks",   "mo",    "mos",   "yr",    "yrs",   "min",   "max",   "hosp",  "med",
    "clin",  "engl",  "j",     "n"};

bool is_zh_terminator(char32_t cp) { return cp == 0x3002 || cp == 0xFF01 || cp == 0xFF1F; }

bool is_zh_closer(char32_t cp) {
  switch (cp) {
    case 0x300D: case 0x300F: case 0x201D: case 0x2019: case 0xFF09: case ')':
    case 0x3011: case 0x300B: case 0x3009: case ']': case '\'':
      return true;
    default:
      return false;
  }
}

// Characters that make a digit run after a terminator the start of a new
// sentence ("12例患者") rather than a citation.
bool is_zh_unit(char32_t cp) {
  static constexpr std::u32string_view kUnits =
      U"年月日天周岁例名个次倍种类项位家组型级期号点小分秒毫克升米%％";
  return kUnits.find(cp) != std::u32string_view::npos;
}

bool is_range_sep(char32_t cp) { return cp == '-' || cp == 0x2013 || cp == ','; }

// Matches [0-9]{1,3}([-–,][0-9]{1,3})* at `pos`; returns the end or `pos`.
std::size_t match_citation(const std::u32string& cps, std::size_t pos) {
  std::size_t k = pos;
  auto digits = [&](std::size_t at) {
    std::size_t n = 0;
    while (at + n < cps.size() && utf8::is_digit(cps[at + n])) ++n;
    return n;
  };
  std::size_t n = digits(k);
  if (n == 0 || n > 3) return pos;
  k += n;
  while (k + 1 < cps.size() && is_range_sep(cps[k])) {
    const std::size_t m = digits(k + 1);
    if (m == 0 || m > 3) break;
    k += 1 + m;
  }
  return k;
}

std::string slice(const std::u32string& cps, std::size_t begin, std::size_t end) {
  return utf8::encode(std::u32string_view(cps).substr(begin, end - begin));
}

std::u32string trimmed_cps(std::string_view text) { return utf8::decode(utf8::trim(text)); }

}  // namespace

AbbrevList AbbrevList::parse(std::istream& in) {
  AbbrevList out;
  std::string line;
  while (std::getline(in, line)) {
    std::string entry(utf8::trim(line));
    if (entry.empty() || entry.front() == '#') continue;
    entry = utf8::to_lower(entry);
    while (!entry.empty() && entry.back() == '.') entry.pop_back();
    if (!entry.empty()) out.entries.insert(entry);
  }
  return out;
}

AbbrevList AbbrevList::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open abbreviation file '" + path.string() + "'");
  return parse(in);
}

AbbrevList AbbrevList::defaults() {
  AbbrevList out;
  for (auto a : kDefaultAbbrevs) out.entries.emplace(a);
  return out;
}

std::vector<std::string> segment_zh(std::string_view paragraph) {
  const std::u32string cps = trimmed_cps(paragraph);
  std::vector<std::string> out;
  const std::size_t n = cps.size();
  std::size_t start = 0;
  std::size_t k = 0;
  while (k < n) {
    if (!is_zh_terminator(cps[k])) {
      ++k;
      continue;
    }
    std::size_t j = k + 1;
    while (j < n) {
      if (is_zh_terminator(cps[j]) || is_zh_closer(cps[j])) {
        ++j;
      } else if (cps[j] == '"' &&
                 std::count(cps.begin() + static_cast<std::ptrdiff_t>(start),
                            cps.begin() + static_cast<std::ptrdiff_t>(j), U'"') % 2 == 1) {
        ++j;  // closes a quote opened in this sentence
      } else {
        break;
      }
    }
    if (j < n && utf8::is_digit(cps[j])) {
      const std::size_t e = match_citation(cps, j);
      const bool superscript = utf8::is_superscript_digit(cps[j]);
      if (e > j && (superscript || e == n || utf8::is_space(cps[e]) ||
                    (utf8::is_cjk(cps[e]) && !is_zh_unit(cps[e])))) {
        j = e;
      }
    }
    while (j < n && utf8::is_space(cps[j])) ++j;
    if (j < n) {
      out.push_back(slice(cps, start, j));
      start = j;
    }
    k = j;
  }
  if (start < n) out.push_back(slice(cps, start, n));
  return out;
}

namespace {

bool is_en_terminator(char32_t cp) { return cp == '.' || cp == '?' || cp == '!'; }

bool is_en_closer(char32_t cp) {
  return cp == ')' || cp == ']' || cp == '"' || cp == '\'' || cp == 0x201D || cp == 0x2019;
}

bool is_opener(char32_t cp) {
  return cp == '(' || cp == '[' || cp == '"' || cp == '\'' || cp == 0x201C || cp == 0x2018;
}

bool starts_sentence(char32_t cp) { return utf8::is_upper(cp) || utf8::is_digit(cp); }

// The whitespace-delimited token ending just before position `end`, with
// leading opening punctuation removed, lowercased.
std::string token_before(const std::u32string& cps, std::size_t end, std::size_t* token_begin) {
  std::size_t b = end;
  while (b > 0 && !utf8::is_space(cps[b - 1])) --b;
  if (token_begin) *token_begin = b;
  while (b < end && (is_opener(cps[b]) || cps[b] == '(')) ++b;
  std::u32string tok(cps.substr(b, end - b));
  for (auto& c : tok) c = utf8::to_lower(c);
  return utf8::encode(tok);
}

bool is_abbreviation_at(const std::u32string& cps, std::size_t period, const AbbrevList& abbrevs) {
  std::size_t tok_begin = 0;
  const std::string tok = token_before(cps, period, &tok_begin);
  if (tok.empty()) return false;
  if (abbrevs.contains(tok)) return true;
  // Single-letter initial ("F. Hoffmann").
  const std::u32string raw = cps.substr(tok_begin, period - tok_begin);
  if (raw.size() == 1 && utf8::is_upper(raw[0])) return true;
  // Two-word entries such as "et al".
  if (tok_begin >= 2 && utf8::is_space(cps[tok_begin - 1])) {
    const std::string prev = token_before(cps, tok_begin - 1, nullptr);
    if (!prev.empty() && abbrevs.contains(prev + " " + tok)) return true;
  }
  return false;
}

// For '(' at `open`, true if its matching ')' is immediately followed by '.'.
bool parenthetical_ends_sentence(const std::u32string& cps, std::size_t open) {
  int depth = 0;
  for (std::size_t k = open; k < cps.size(); ++k) {
    if (cps[k] == '(') ++depth;
    if (cps[k] == ')' && --depth == 0) return k + 1 < cps.size() && cps[k + 1] == '.';
  }
  return false;
}

}  // namespace

std::vector<std::string> segment_en_rules(std::string_view paragraph, const AbbrevList& abbrevs) {
  const std::u32string cps = trimmed_cps(paragraph);
  std::vector<std::string> out;
  const std::size_t n = cps.size();
  std::size_t start = 0;
  std::size_t k = 0;
  while (k < n) {
    if (!is_en_terminator(cps[k])) {
      ++k;
      continue;
    }
    const bool period = cps[k] == '.';
    const bool after_digit = k > 0 && utf8::is_digit(cps[k - 1]);
    if (period && ((after_digit && k + 1 < n && utf8::is_ascii_digit(cps[k + 1])) ||
                   is_abbreviation_at(cps, k, abbrevs))) {
      ++k;
      continue;
    }
    std::size_t j = k + 1;
    while (j < n && is_en_terminator(cps[j])) ++j;
    while (j < n && is_en_closer(cps[j])) ++j;
    if (period && !after_digit && j < n && utf8::is_digit(cps[j])) {
      const std::size_t e = match_citation(cps, j);
      if (e > j && (e == n || utf8::is_space(cps[e]))) j = e;
    }
    if (j >= n) break;
    if (!utf8::is_space(cps[j])) {
      k = j;
      continue;
    }
    std::size_t q = j;
    while (q < n && utf8::is_space(cps[q])) ++q;
    bool boundary = false;
    if (q < n) {
      if (starts_sentence(cps[q])) {
        boundary = true;
      } else if (is_opener(cps[q]) && q + 1 < n && starts_sentence(cps[q + 1])) {
        boundary = !(cps[q] == '(' && parenthetical_ends_sentence(cps, q));
      }
    }
    if (boundary) {
      out.push_back(slice(cps, start, j));
      start = q;
    }
    k = q;
  }
  if (start < n) out.push_back(slice(cps, start, n));
  return out;
}

// ---------------------------------------------------------------------------
// Punkt

namespace {

constexpr std::string_view kNumberType = "##number##";

bool is_number_token(std::string_view t) {
  // -?[.,]?\d[\d,.-]*\.?
  std::size_t k = 0;
  if (k < t.size() && t[k] == '-') ++k;
  if (k < t.size() && (t[k] == '.' || t[k] == ',')) ++k;
  if (k >= t.size() || !std::isdigit(static_cast<unsigned char>(t[k]))) return false;
  for (++k; k < t.size(); ++k) {
    const char c = t[k];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == ',' || c == '.' || c == '-')) return false;
  }
  return true;
}

bool has_letter(std::string_view t) {
  std::size_t i = 0;
  while (i < t.size()) {
    if (utf8::is_letter(utf8::next(t, i))) return true;
  }
  return false;
}

std::vector<std::string_view> whitespace_tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    if (end > pos) out.push_back(text.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

// Token with trailing closing quotes/brackets removed.
std::string_view strip_closers(std::string_view tok) {
  while (!tok.empty() && (tok.back() == '"' || tok.back() == '\'' || tok.back() == ')' || tok.back() == ']')) {
    tok.remove_suffix(1);
  }
  return tok;
}

bool ends_with_period(std::string_view tok) {
  tok = strip_closers(tok);
  return !tok.empty() && tok.back() == '.';
}

bool ends_with_qe(std::string_view tok) {
  tok = strip_closers(tok);
  return !tok.empty() && (tok.back() == '?' || tok.back() == '!');
}

bool first_upper(std::string_view tok) {
  std::size_t i = 0;
  while (i < tok.size()) {
    const char32_t cp = utf8::next(tok, i);
    if (utf8::is_punct(cp)) continue;
    return utf8::is_upper(cp);
  }
  return false;
}

bool first_lower(std::string_view tok) {
  std::size_t i = 0;
  while (i < tok.size()) {
    const char32_t cp = utf8::next(tok, i);
    if (utf8::is_punct(cp)) continue;
    return utf8::is_lower(cp);
  }
  return false;
}

bool is_initial(std::string_view tok) {
  tok = strip_closers(tok);
  if (tok.size() != 2 || tok[1] != '.') return false;
  return std::isalpha(static_cast<unsigned char>(tok[0])) != 0;
}

bool is_ellipsis(std::string_view tok) {
  tok = strip_closers(tok);
  return tok.size() >= 3 && tok.substr(tok.size() - 3) == "...";
}

}  // namespace

std::string punkt_type(std::string_view token) {
  std::string_view t = strip_closers(token);
  while (!t.empty() && t.back() == '.') t.remove_suffix(1);
  // Leading and trailing punctuation other than internal periods.
  std::u32string cps = utf8::decode(t);
  std::size_t b = 0, e = cps.size();
  while (b < e && utf8::is_punct(cps[b]) && cps[b] != '.' && cps[b] != '-') ++b;
  while (e > b && utf8::is_punct(cps[e - 1]) && cps[e - 1] != '.') --e;
  std::u32string core = cps.substr(b, e - b);
  for (auto& c : core) c = utf8::to_lower(c);
  std::string out = utf8::encode(core);
  if (is_number_token(out)) return std::string(kNumberType);
  return out;
}

double punkt_abbrev_log_likelihood(double count_a, double count_b, double count_ab, double n) {
  const double p1 = count_b / n;
  const double p2 = 0.99;
  const double null_hypo = count_ab * std::log(p1) + (count_a - count_ab) * std::log(1.0 - p1);
  const double alt_hypo = count_ab * std::log(p2) + (count_a - count_ab) * std::log(1.0 - p2);
  return -2.0 * (null_hypo - alt_hypo);
}

double punkt_col_log_likelihood(double count_a, double count_b, double count_ab, double n) {
  const double p = count_b / n;
  const double p1 = count_ab / count_a;
  const double p2 = n > count_a ? (count_b - count_ab) / (n - count_a) : 0.0;
  auto xlogy = [](double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); };
  const double s1 = xlogy(count_ab, p) + xlogy(count_a - count_ab, 1.0 - p);
  const double s2 = xlogy(count_b - count_ab, p) + xlogy(n - count_a - count_b + count_ab, 1.0 - p);
  const double s3 = count_a == count_ab ? 0.0 : xlogy(count_ab, p1) + xlogy(count_a - count_ab, 1.0 - p1);
  const double s4 = count_b == count_ab
                        ? 0.0
                        : xlogy(count_b - count_ab, p2) + xlogy(n - count_a - count_b + count_ab, 1.0 - p2);
  return -2.0 * (s1 + s2 - s3 - s4);
}

PunktModel train_punkt(const std::vector<Document>& corpus, const PunktParams& params) {
  PunktModel model;
  model.params = params;

  std::vector<std::vector<std::string_view>> paragraphs;
  for (const auto& doc : corpus) {
    if (!doc.meta.language.is_en()) continue;
    for (const auto& p : doc.paragraphs) {
      auto toks = whitespace_tokens(p);
      if (!toks.empty()) paragraphs.push_back(std::move(toks));
    }
  }
  if (paragraphs.empty()) return model;

  // Type counts, split by whether the token carried a final period.
  std::map<std::string, std::size_t> with_period, without_period;
  std::size_t total = 0, period_tokens = 0;
  for (const auto& toks : paragraphs) {
    for (auto tok : toks) {
      const std::string type = punkt_type(tok);
      if (type.empty()) continue;
      ++total;
      if (ends_with_period(tok)) {
        ++period_tokens;
        ++with_period[type];
      } else {
        ++without_period[type];
      }
    }
  }
  const auto n = static_cast<double>(total);
  auto count_of = [](const std::map<std::string, std::size_t>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? std::size_t{0} : it->second;
  };

  // Abbreviations.
  for (const auto& [type, cwp] : with_period) {
    if (type == kNumberType || !has_letter(type)) continue;
    const std::size_t cwo = count_of(without_period, type);
    const double ll = punkt_abbrev_log_likelihood(static_cast<double>(cwp + cwo),
                                                  static_cast<double>(period_tokens),
                                                  static_cast<double>(cwp), n);
    const auto periods = static_cast<double>(std::count(type.begin(), type.end(), '.') + 1);
    const double non_periods = static_cast<double>(utf8::length(type)) - periods + 1.0;
    const double f_length = std::exp(-non_periods);
    const double f_penalty = std::pow(non_periods, -static_cast<double>(cwo));
    const double score = ll * f_length * periods * f_penalty;
    if (score > params.abbrev_threshold) model.abbreviations.emplace(type, score);
  }

  // First pass: a token breaks a sentence if it ends in ? or !, or in a
  // period that is not an abbreviation or ellipsis. Paragraph starts count
  // as following a break.
  std::size_t sentbreaks = 0;
  std::map<std::string, std::size_t> at_break;
  std::map<std::pair<std::string, std::string>, std::size_t> colloc_counts;
  for (const auto& toks : paragraphs) {
    bool prev_break = true;
    for (std::size_t k = 0; k < toks.size(); ++k) {
      const auto tok = toks[k];
      const std::string type = punkt_type(tok);
      if (prev_break && has_letter(type) && type != kNumberType) ++at_break[type];
      const bool period = ends_with_period(tok);
      const bool is_break = ends_with_qe(tok) ||
                            (period && !is_ellipsis(tok) && !model.is_abbreviation(type));
      if (is_break) ++sentbreaks;
      if (is_break && period && k + 1 < toks.size() &&
          (type == kNumberType || is_initial(tok))) {
        const std::string next = punkt_type(toks[k + 1]);
        if (has_letter(next)) ++colloc_counts[{type, next}];
      }
      prev_break = is_break;
    }
  }

  auto type_total = [&](const std::string& t) {
    return static_cast<double>(count_of(with_period, t) + count_of(without_period, t));
  };

  if (sentbreaks > 0) {
    const auto breaks = static_cast<double>(sentbreaks);
    for (const auto& [type, c] : at_break) {
      const double typ_count = type_total(type);
      const auto cab = static_cast<double>(c);
      if (typ_count < cab) continue;
      const double ll = punkt_col_log_likelihood(breaks, typ_count, cab, n);
      if (ll >= params.starter_threshold && n / breaks > typ_count / cab) {
        model.sentence_starters.emplace(type, ll);
      }
    }
  }

  for (const auto& [key, c] : colloc_counts) {
    if (c < 2) continue;
    const double a = type_total(key.first);
    const double b = type_total(key.second);
    const auto cab = static_cast<double>(c);
    const double ll = punkt_col_log_likelihood(a, b, cab, n);
    if (ll >= params.colloc_threshold && n / a > b / cab) model.collocations.emplace(key, ll);
  }
  return model;
}

std::vector<std::string> segment_punkt(std::string_view paragraph, const PunktModel& model) {
  const auto toks = whitespace_tokens(paragraph);
  std::vector<std::string> out;
  std::string current;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    if (!current.empty()) current.push_back(' ');
    current += toks[k];
    if (k + 1 == toks.size()) break;
    const auto tok = toks[k];
    const auto next = toks[k + 1];
    bool brk = false;
    if (ends_with_qe(tok)) {
      brk = true;
    } else if (ends_with_period(tok) && !is_ellipsis(tok)) {
      const std::string type = punkt_type(tok);
      const std::string next_type = punkt_type(next);
      if (model.is_collocation(type, next_type)) {
        brk = false;
      } else if (model.is_abbreviation(type)) {
        brk = first_upper(next) && model.is_starter(next_type);
      } else {
        brk = !first_lower(next);
      }
    }
    if (brk) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

void PunktModel::write(std::ostream& out) const {
  out << "param\tabbrev_threshold\t" << params.abbrev_threshold << '\n';
  out << "param\tstarter_threshold\t" << params.starter_threshold << '\n';
  out << "param\tcolloc_threshold\t" << params.colloc_threshold << '\n';
  auto num = [](double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  };
  for (const auto& [t, s] : abbreviations) out << "abbrev\t" << t << '\t' << num(s) << '\n';
  for (const auto& [t, s] : sentence_starters) out << "starter\t" << t << '\t' << num(s) << '\n';
  for (const auto& [k, s] : collocations) {
    out << "colloc\t" << k.first << '\t' << k.second << '\t' << num(s) << '\n';
  }
}

PunktModel PunktModel::read(std::istream& in, std::string_view source_name) {
  PunktModel model;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw FormatError(std::string(source_name) + ":" + std::to_string(line_no) + ": " + what);
  };
  auto parse_num = [&](std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) fail("bad number '" + std::string(s) + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    if (f.empty()) continue;
    if (f[0] == "param" && f.size() == 3) {
      const double v = parse_num(f[2]);
      if (f[1] == "abbrev_threshold") model.params.abbrev_threshold = v;
      else if (f[1] == "starter_threshold") model.params.starter_threshold = v;
      else if (f[1] == "colloc_threshold") model.params.colloc_threshold = v;
      else fail("unknown parameter '" + f[1] + "'");
    } else if (f[0] == "abbrev" && f.size() == 3) {
      model.abbreviations[f[1]] = parse_num(f[2]);
    } else if (f[0] == "starter" && f.size() == 3) {
      model.sentence_starters[f[1]] = parse_num(f[2]);
    } else if (f[0] == "colloc" && f.size() == 4) {
      model.collocations[{f[1], f[2]}] = parse_num(f[3]);
    } else {
      fail("expected 'param|abbrev|starter<TAB>...' or 'colloc<TAB>type<TAB>type<TAB>score'");
    }
  }
  return model;
}

SbdMethod parse_sbd_method(std::string_view name) {
  if (name == "rules") return SbdMethod::rules;
  if (name == "punkt") return SbdMethod::punkt;
  throw Error("unknown SBD method '" + std::string(name) + "' (expected rules or punkt)");
}

std::vector<std::string> Segmenter::split(std::string_view paragraph, const LanguageTag& lang) const {
  if (lang.is_zh()) return segment_zh(paragraph);
  if (method == SbdMethod::punkt) return segment_punkt(paragraph, punkt);
  return segment_en_rules(paragraph, abbrevs);
}

SentenceList Segmenter::segment(const Document& doc) const {
  SentenceList list;
  list.doc_id = doc.meta.id;
  list.language = doc.meta.language;
  for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
    for (auto& s : split(doc.paragraphs[p], doc.meta.language)) {
      list.sentences.push_back(std::move(s));
      list.paragraph_index.push_back(p);
    }
  }
  return list;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

SbdDiffReport sbd_diff_report(const std::map<std::string, std::size_t>& zh_counts,
                              const std::map<std::string, std::size_t>& en_counts) {
  SbdDiffReport report;
  std::vector<double> abs_diffs;
  for (const auto& [article, zh] : zh_counts) {
    auto it = en_counts.find(article);
    if (it == en_counts.end()) throw Error("sbd_diff_report: article '" + article + "' has no en count");
    const long long diff = static_cast<long long>(zh) - static_cast<long long>(it->second);
    report.rows.push_back({article, zh, it->second, diff});
    abs_diffs.push_back(static_cast<double>(diff < 0 ? -diff : diff));
  }
  for (const auto& [article, en] : en_counts) {
    if (!zh_counts.count(article)) throw Error("sbd_diff_report: article '" + article + "' has no zh count");
  }
  report.q1 = quantile(abs_diffs, 0.25);
  report.median = quantile(abs_diffs, 0.5);
  report.q3 = quantile(abs_diffs, 0.75);
  return report;
}

std::string SbdDiffReport::csv() const {
  std::ostringstream out;
  out << "article,zh,en,diff\n";
  for (const auto& r : rows) out << r.article << ',' << r.zh << ',' << r.en << ',' << r.diff << '\n';
  out << "summary," << q1 << ',' << median << ',' << q3 << '\n';
  return out.str();
}

}  // namespace bitext
