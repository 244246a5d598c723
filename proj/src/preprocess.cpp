#include "bitext/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "bitext/utf8.hpp"

namespace bitext {

namespace {

// Single code point replacements shared by both languages.
char32_t map_common(char32_t cp) {
  switch (cp) {
    case 0x201C: case 0x201D: case 0x201E: case 0x201F:
    case 0x2033: case 0x00AB: case 0x00BB:
      return '"';
    case 0x2018: case 0x2019: case 0x201A: case 0x201B: case 0x2032:
      return '\'';
    case 0x2010: case 0x2011: case 0x2012: case 0x2212: case 0xFE63:
      return '-';
    case 0x2015:
      return 0x2014;
    default:
      break;
  }
  if (cp >= 0xFF10 && cp <= 0xFF19) return cp - 0xFEE0;  // digits
  if (cp >= 0xFF21 && cp <= 0xFF3A) return cp - 0xFEE0;  // upper
  if (cp >= 0xFF41 && cp <= 0xFF5A) return cp - 0xFEE0;  // lower
  return cp;
}

bool cjk_context(char32_t cp) { return utf8::is_cjk(cp) || utf8::is_fullwidth_punct(cp); }

}  // namespace

std::string normalize_text(std::string_view text, const LanguageTag& lang) {
  std::u32string mapped;
  mapped.reserve(text.size());
  for (char32_t cp : utf8::decode(text)) {
    cp = map_common(cp);
    if (lang.is_en() && cp >= 0xFF01 && cp <= 0xFF5E) cp -= 0xFEE0;
    if (utf8::is_space(cp)) cp = ' ';
    if (cp == ' ' && (mapped.empty() || mapped.back() == ' ')) continue;
    mapped.push_back(cp);
  }
  while (!mapped.empty() && mapped.back() == ' ') mapped.pop_back();

  if (lang.is_zh()) {
    std::u32string kept;
    kept.reserve(mapped.size());
    for (std::size_t k = 0; k < mapped.size(); ++k) {
      if (mapped[k] == ' ') {
        const bool left = k > 0 && cjk_context(mapped[k - 1]);
        const bool right = k + 1 < mapped.size() && cjk_context(mapped[k + 1]);
        if (left || right) continue;
      }
      kept.push_back(mapped[k]);
    }
    mapped.swap(kept);
  }
  return utf8::encode(mapped);
}

Document normalize_document(const Document& doc) {
  Document out;
  out.meta = doc.meta;
  for (const auto& p : doc.paragraphs) {
    std::string n = normalize_text(p, doc.meta.language);
    if (!n.empty()) out.paragraphs.push_back(std::move(n));
  }
  return out;
}

bool is_citation_fragment(std::string_view paragraph) {
  bool any = false;
  std::size_t i = 0;
  while (i < paragraph.size()) {
    const char32_t cp = utf8::next(paragraph, i);
    if (utf8::is_space(cp)) continue;
    any = true;
    if (utf8::is_digit(cp) || utf8::is_punct(cp)) continue;
    return false;
  }
  return any;
}

namespace {

constexpr std::string_view kHyperlinkPhrase = "open in new tab";

bool is_hyperlink_marker(std::string_view paragraph) {
  return utf8::to_lower(utf8::trim(paragraph)) == kHyperlinkPhrase;
}

// Removes inline occurrences of the hyperlink phrase, case-insensitively.
std::string strip_inline_phrase(const std::string& text, bool& changed) {
  const std::string lower = utf8::to_lower(text);
  if (lower.size() != text.size()) return text;  // lowercasing changed byte layout
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = lower.find(kHyperlinkPhrase, pos);
    if (hit == std::string::npos) break;
    out.append(text, pos, hit - pos);
    pos = hit + kHyperlinkPhrase.size();
    changed = true;
  }
  out.append(text, pos, std::string::npos);
  if (!changed) return text;
  return normalize_text(out, LanguageTag::en());
}

}  // namespace

StitchResult stitch_paragraphs(const Document& doc) {
  StitchResult result;
  result.doc.meta = doc.meta;
  auto& out = result.doc.paragraphs;
  auto& log = result.log;

  if (doc.meta.language.is_zh()) {
    for (std::size_t k = 0; k < doc.paragraphs.size(); ++k) {
      const auto& p = doc.paragraphs[k];
      if (is_citation_fragment(p)) {
        if (out.empty()) {
          log.push_back("paragraph " + std::to_string(k) +
                        ": citation fragment at document start left in place");
          out.push_back(p);
        } else {
          out.back() += std::string(utf8::trim(p));
          log.push_back("paragraph " + std::to_string(k) + ": appended to preceding paragraph");
        }
      } else {
        out.push_back(p);
      }
    }
    return result;
  }

  bool pending_join = false;
  for (std::size_t k = 0; k < doc.paragraphs.size(); ++k) {
    const auto& p = doc.paragraphs[k];
    if (is_hyperlink_marker(p)) {
      if (out.empty()) {
        log.push_back("paragraph " + std::to_string(k) + ": hyperlink phrase at document start dropped");
      } else {
        pending_join = true;
      }
      continue;
    }
    bool changed = false;
    std::string text = strip_inline_phrase(p, changed);
    if (changed) log.push_back("paragraph " + std::to_string(k) + ": inline hyperlink phrase removed");
    if (text.empty()) continue;
    if (pending_join) {
      out.back() += " ";
      out.back() += text;
      log.push_back("paragraph " + std::to_string(k) + ": joined across hyperlink phrase");
      pending_join = false;
    } else {
      out.push_back(std::move(text));
    }
  }
  if (pending_join) log.push_back("hyperlink phrase at document end dropped");
  return result;
}

bool FilterRule::matches(std::string_view paragraph) const {
  if (exact) return utf8::trim(paragraph) == pattern;
  return std::regex_search(paragraph.begin(), paragraph.end(), regex);
}

std::string FilterRule::describe() const { return language + (exact ? "=" : ":") + pattern; }

FilterRules FilterRules::parse(std::istream& in, std::string_view source_name) {
  FilterRules out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = utf8::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const std::size_t sep = trimmed.find_first_of(":=");
    const std::string where = std::string(source_name) + ":" + std::to_string(line_no);
    if (sep == std::string_view::npos) {
      throw FormatError(where + ": expected '<lang>:<regex>' or '<lang>=<text>'");
    }
    FilterRule rule;
    rule.language = std::string(trimmed.substr(0, sep));
    if (rule.language != "*" && !LanguageTag::known(rule.language)) {
      throw FormatError(where + ": unknown language prefix '" + rule.language + "'");
    }
    rule.exact = trimmed[sep] == '=';
    rule.pattern = std::string(utf8::trim(trimmed.substr(sep + 1)));
    if (rule.pattern.empty()) throw FormatError(where + ": empty pattern");
    if (!rule.exact) {
      try {
        rule.regex = std::regex(rule.pattern, std::regex::ECMAScript | std::regex::icase);
      } catch (const std::regex_error& e) {
        throw FormatError(where + ": invalid regex '" + rule.pattern + "': " + e.what());
      }
    }
    out.rules.push_back(std::move(rule));
  }
  return out;
}

FilterRules FilterRules::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open pattern file '" + path.string() + "'");
  return parse(in, path.string());
}

std::string_view FilterRules::default_text() {
  return R"(# Figures and figure captions
*:^(figure|fig\.)\s*[0-9]+(\.|:|\s*$)
zh:^图\s*[0-9]+(\.|:|：|\s|$)
# Tables and table legends
*:^table\s*[0-9]+(\.|:|\s*$)
zh:^表\s*[0-9]+(\.|:|：|\s|$)
# Reference section
en:^references?$
zh:^参考文献
# Translator credits
zh:^(翻译|译者|校对|审校|编译)\s*(:|：)
# Media boilerplate
en:^video$
en:^interactive graphic
en:^audio interview
en:^visual abstract
en:^quick take
)";
}

FilterRules FilterRules::defaults() {
  std::istringstream in{std::string(default_text())};
  return parse(in, "<default patterns>");
}

FilterResult filter_boilerplate(const Document& doc, const FilterRules& rules) {
  FilterResult result;
  result.doc.meta = doc.meta;
  for (std::size_t k = 0; k < doc.paragraphs.size(); ++k) {
    const auto& p = doc.paragraphs[k];
    const FilterRule* hit = nullptr;
    for (const auto& rule : rules.rules) {
      if (rule.applies_to(doc.meta.language) && rule.matches(p)) {
        hit = &rule;
        break;
      }
    }
    if (hit) {
      result.removed.push_back({k, hit->describe()});
    } else {
      result.doc.paragraphs.push_back(p);
    }
  }
  return result;
}

namespace {

struct TokenParts {
  std::string_view prefix, core, suffix;
};

// Splits a whitespace-delimited token into leading punctuation, word core
// and trailing punctuation.
TokenParts split_token(std::string_view token) {
  std::size_t i = 0, core_begin = token.size();
  while (i < token.size()) {
    const std::size_t at = i;
    if (!utf8::is_punct(utf8::next(token, i))) {
      core_begin = at;
      break;
    }
  }
  std::size_t core_end = core_begin;
  i = core_begin;
  while (i < token.size()) {
    if (!utf8::is_punct(utf8::next(token, i))) core_end = i;
  }
  return {token.substr(0, core_begin), token.substr(core_begin, core_end - core_begin),
          token.substr(core_end)};
}

bool ends_sentence(std::string_view token) {
  // Trailing quotes and brackets may follow the terminator.
  while (!token.empty() && (token.back() == '"' || token.back() == '\'' || token.back() == ')')) {
    token.remove_suffix(1);
  }
  return !token.empty() && (token.back() == '.' || token.back() == '?' || token.back() == '!');
}

std::vector<std::string_view> split_spaces(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const std::size_t end = text.find(' ', pos);
    const std::size_t stop = end == std::string_view::npos ? text.size() : end;
    if (stop > pos) out.push_back(text.substr(pos, stop - pos));
    pos = stop;
  }
  return out;
}

}  // namespace

TruecaseModel train_truecaser(const std::vector<Document>& corpus) {
  struct Form {
    std::string surface;
    std::size_t count = 0;
  };
  std::map<std::string, std::vector<Form>> forms;  // in first-seen order
  for (const auto& doc : corpus) {
    if (!doc.meta.language.is_en()) continue;
    for (const auto& para : doc.paragraphs) {
      const auto tokens = split_spaces(para);
      for (std::size_t k = 0; k < tokens.size(); ++k) {
        const bool initial = k == 0 || ends_sentence(tokens[k - 1]);
        if (initial) continue;
        const auto core = split_token(tokens[k]).core;
        if (core.empty()) continue;
        auto& list = forms[utf8::to_lower(core)];
        auto it = std::find_if(list.begin(), list.end(), [&](const Form& f) { return f.surface == core; });
        if (it == list.end()) {
          list.push_back({std::string(core), 1});
        } else {
          ++it->count;
        }
      }
    }
  }
  TruecaseModel model;
  for (auto& [lower, list] : forms) {
    const Form* best = &list.front();
    for (const auto& f : list) {
      if (f.count > best->count) best = &f;
    }
    model.casing.emplace(lower, TruecaseModel::Entry{best->surface, best->count});
  }
  return model;
}

std::string truecase_first_token(std::string_view text, const TruecaseModel& model) {
  std::size_t start = 0;
  while (start < text.size() && text[start] == ' ') ++start;
  const std::size_t end = std::min(text.find(' ', start), text.size());
  const auto parts = split_token(text.substr(start, end - start));
  if (parts.core.empty()) return std::string(text);
  auto it = model.casing.find(utf8::to_lower(parts.core));
  if (it == model.casing.end() || it->second.surface == parts.core) return std::string(text);
  std::string out(text.substr(0, start));
  out += parts.prefix;
  out += it->second.surface;
  out += parts.suffix;
  out += text.substr(end);
  return out;
}

Document apply_truecaser(const Document& doc, const TruecaseModel& model) {
  if (!doc.meta.language.is_en() || model.empty()) return doc;
  Document out;
  out.meta = doc.meta;
  for (const auto& p : doc.paragraphs) out.paragraphs.push_back(truecase_first_token(p, model));
  return out;
}

std::vector<ParagraphCountRow> paragraph_count_report(const std::vector<DocumentPair>& pre,
                                                      const std::vector<DocumentPair>& post) {
  std::map<std::string, const DocumentPair*> post_by_id;
  for (const auto& p : post) post_by_id[p.pair_id()] = &p;
  std::vector<ParagraphCountRow> rows;
  for (const auto& p : pre) {
    auto it = post_by_id.find(p.pair_id());
    if (it == post_by_id.end()) {
      throw Error("paragraph_count_report: pair_id '" + p.pair_id() + "' missing after filtering");
    }
    rows.push_back({p.pair_id(), p.zh.paragraphs.size(), p.en.paragraphs.size(),
                    it->second->zh.paragraphs.size(), it->second->en.paragraphs.size()});
    post_by_id.erase(it);
  }
  if (!post_by_id.empty()) {
    throw Error("paragraph_count_report: pair_id '" + post_by_id.begin()->first +
                "' has no pre-filter counterpart");
  }
  return rows;
}

std::string paragraph_count_csv(const std::vector<ParagraphCountRow>& rows) {
  std::string out = "pair_id,zh_pre,en_pre,zh_post,en_post\n";
  for (const auto& r : rows) {
    out += r.pair_id + "," + std::to_string(r.zh_pre) + "," + std::to_string(r.en_pre) + "," +
           std::to_string(r.zh_post) + "," + std::to_string(r.en_post) + "\n";
  }
  return out;
}

}  // namespace bitext
