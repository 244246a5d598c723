#include "bitext/formats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace bitext {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

[[noreturn]] void format_error(std::string_view where, std::string_view what) {
  throw FormatError(std::string(where) + ": " + std::string(what));
}

std::string location(std::string_view source, std::size_t line_no) {
  return std::string(source) + ":" + std::to_string(line_no);
}

std::size_t parse_index(std::string_view text, std::string_view where) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    format_error(where, "expected a non-negative integer index, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::size_t> parse_index_list(std::string_view text, std::string_view where) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_index(text.substr(start, comma - start), where));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out.push_back(',');
    out += std::to_string(v[k]);
  }
  return out;
}

// Yields lines without their terminating LF; rejects BOM and CR.
template <typename Fn>
void for_each_line(std::istream& in, std::string_view source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
      format_error(location(source, line_no), "byte-order mark not allowed");
    }
    if (!line.empty() && line.back() == '\r') {
      format_error(location(source, line_no), "CRLF line endings not allowed");
    }
    fn(std::string_view(line), line_no);
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

std::string format_score(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error("cannot format score");
  return std::string(buf, ptr);
}

Bead parse_bead_line(std::string_view line, std::string_view where) {
  const auto fields = split_tabs(line);
  if (fields.size() != 4 && fields.size() != 5) {
    format_error(where, "expected 4 or 5 tab-separated fields "
                        "(src_indices, tgt_indices, score, method[, note]), got " +
                            std::to_string(fields.size()));
  }
  Bead bead;
  bead.src = parse_index_list(fields[0], where);
  bead.tgt = parse_index_list(fields[1], where);
  if (fields[2] != "NA") {
    double score = 0;
    auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), score);
    if (fields[2].empty() || ec != std::errc{} || ptr != fields[2].data() + fields[2].size()) {
      format_error(where, "expected a decimal score or NA, got '" + std::string(fields[2]) + "'");
    }
    bead.score = score;
  }
  bead.method = std::string(fields[3]);
  if (fields.size() == 5) bead.note = std::string(fields[4]);
  return bead;
}

std::string format_bead_line(const Bead& bead) {
  std::string out = join_indices(bead.src);
  out.push_back('\t');
  out += join_indices(bead.tgt);
  out.push_back('\t');
  out += bead.score ? format_score(*bead.score) : std::string("NA");
  out.push_back('\t');
  out += bead.method;
  if (!bead.note.empty()) {
    out.push_back('\t');
    out += bead.note;
  }
  return out;
}

AlignmentSet parse_alignments(std::istream& in, std::string_view source_name) {
  AlignmentSet set;
  bool have_lengths = false;
  for_each_line(in, source_name, [&](std::string_view line, std::size_t line_no) {
    const std::string where = location(source_name, line_no);
    if (line.rfind("#lengths\t", 0) == 0) {
      const auto fields = split_tabs(line);
      if (fields.size() != 3) format_error(where, "expected '#lengths<TAB>src_len<TAB>tgt_len'");
      set.src_len = parse_index(fields[1], where);
      set.tgt_len = parse_index(fields[2], where);
      have_lengths = true;
      return;
    }
    if (line.empty() || line.front() == '#') return;
    set.beads.push_back(parse_bead_line(line, where));
  });
  if (!have_lengths) {
    for (const Bead& b : set.beads) {
      for (std::size_t i : b.src) set.src_len = std::max(set.src_len, i + 1);
      for (std::size_t j : b.tgt) set.tgt_len = std::max(set.tgt_len, j + 1);
    }
  }
  return set;
}

void write_alignments(const AlignmentSet& set, std::ostream& out) {
  out << "#lengths\t" << set.src_len << '\t' << set.tgt_len << '\n';
  for (const Bead& b : set.beads) out << format_bead_line(b) << '\n';
}

AlignmentSet read_alignments(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_alignments(in, path.string());
}

void write_alignments(const AlignmentSet& set, const std::filesystem::path& path) {
  std::ostringstream out;
  write_alignments(set, out);
  write_file(path, out.str());
}

GoldAlignment read_gold(const std::filesystem::path& path) { return {read_alignments(path)}; }

void write_gold(const GoldAlignment& gold, const std::filesystem::path& path) {
  write_alignments(gold.set, path);
}

namespace {
constexpr std::string_view kMetaHeader = "id\tpair_id\tlanguage\tdate\tarticle_type";
}

std::vector<ArticleMeta> parse_metadata(std::istream& in, std::string_view source_name) {
  std::vector<ArticleMeta> metas;
  std::set<std::string> ids;
  for_each_line(in, source_name, [&](std::string_view line, std::size_t line_no) {
    const std::string where = location(source_name, line_no);
    if (line_no == 1) {
      if (line != kMetaHeader) format_error(where, "expected header '" + std::string(kMetaHeader) + "'");
      return;
    }
    if (line.empty()) return;
    const auto f = split_tabs(line);
    if (f.size() != 5) {
      format_error(where, "expected 5 tab-separated fields (id, pair_id, language, date, "
                          "article_type), got " + std::to_string(f.size()));
    }
    ArticleMeta m;
    m.id = std::string(f[0]);
    m.pair_id = std::string(f[1]);
    if (m.id.empty()) format_error(where, "empty id");
    try {
      m.language = LanguageTag::parse(f[2]);
      m.date = Date::parse(f[3]);
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      format_error(where, e.what());
    }
    m.article_type = std::string(f[4]);
    if (!ids.insert(m.id).second) format_error(where, "duplicate id '" + m.id + "'");
    metas.push_back(std::move(m));
  });
  // Two documents with the same pair_id must differ in language.
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& m : metas) {
    if (!seen.emplace(m.pair_id, m.language.code()).second) {
      throw FormatError(std::string(source_name) + ": pair_id '" + m.pair_id +
                        "' has two documents in language '" + m.language.code() + "'");
    }
  }
  return metas;
}

void write_metadata(const std::vector<ArticleMeta>& metas, std::ostream& out) {
  out << kMetaHeader << '\n';
  for (const auto& m : metas) {
    out << m.id << '\t' << m.pair_id << '\t' << m.language.code() << '\t' << m.date.str() << '\t'
        << m.article_type << '\n';
  }
}

std::vector<Document> read_documents(const std::filesystem::path& meta_path) {
  auto in = open_in(meta_path);
  const auto metas = parse_metadata(in, meta_path.string());
  const auto dir = meta_path.parent_path();
  std::vector<Document> docs;
  docs.reserve(metas.size());
  for (const auto& m : metas) {
    Document d;
    d.meta = m;
    const auto text_path = dir / (m.id + ".txt");
    for (auto& line : read_lines(text_path)) {
      if (line.find('\t') != std::string::npos) {
        throw FormatError(text_path.string() + ": paragraphs may not contain tabs");
      }
      d.paragraphs.push_back(std::move(line));
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

void write_documents(const std::vector<Document>& docs, const std::filesystem::path& dir) {
  std::vector<ArticleMeta> metas;
  for (const auto& d : docs) {
    metas.push_back(d.meta);
    write_lines(d.paragraphs, dir / (d.meta.id + ".txt"));
  }
  std::ostringstream out;
  write_metadata(metas, out);
  write_file(dir / "meta.tsv", out.str());
}

SentenceList read_sentences(const std::filesystem::path& path, std::string doc_id,
                            LanguageTag language) {
  SentenceList list;
  list.doc_id = std::move(doc_id);
  list.language = std::move(language);
  auto in = open_in(path);
  for_each_line(in, path.string(), [&](std::string_view line, std::size_t line_no) {
    const std::string where = location(path.string(), line_no);
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      format_error(where, "expected '<paragraph_index><TAB><sentence>'");
    }
    const std::size_t para = parse_index(line.substr(0, tab), where);
    if (!list.paragraph_index.empty() && para < list.paragraph_index.back()) {
      format_error(where, "paragraph indices must be non-decreasing");
    }
    const auto sentence = line.substr(tab + 1);
    if (sentence.empty()) format_error(where, "empty sentence");
    list.paragraph_index.push_back(para);
    list.sentences.emplace_back(sentence);
  });
  return list;
}

std::string format_sentences(const SentenceList& list) {
  std::string out;
  for (std::size_t k = 0; k < list.sentences.size(); ++k) {
    out += std::to_string(list.paragraph_index.at(k));
    out.push_back('\t');
    out += list.sentences[k];
    out.push_back('\n');
  }
  return out;
}

void write_sentences(const SentenceList& list, const std::filesystem::path& path) {
  write_file(path, format_sentences(list));
}

std::vector<SentencePair> read_bitext(const std::filesystem::path& path) {
  std::vector<SentencePair> pairs;
  auto in = open_in(path);
  for_each_line(in, path.string(), [&](std::string_view line, std::size_t line_no) {
    const auto f = split_tabs(line);
    if (f.size() != 2) {
      format_error(location(path.string(), line_no), "expected '<src><TAB><tgt>'");
    }
    pairs.emplace_back(std::string(f[0]), std::string(f[1]));
  });
  return pairs;
}

void write_bitext(const std::vector<SentencePair>& pairs, std::ostream& out) {
  for (const auto& [src, tgt] : pairs) out << src << '\t' << tgt << '\n';
}

void write_bitext(const std::vector<SentencePair>& pairs, const std::filesystem::path& path) {
  std::ostringstream out;
  write_bitext(pairs, out);
  write_file(path, out.str());
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  auto in = open_in(path);
  for_each_line(in, path.string(),
                [&](std::string_view line, std::size_t) { lines.emplace_back(line); });
  return lines;
}

std::string format_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out.push_back('\n');
  }
  return out;
}

void write_lines(const std::vector<std::string>& lines, const std::filesystem::path& path) {
  write_file(path, format_lines(lines));
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bitext
