#pragma once

// File formats. All files are UTF-8 with LF line endings and no BOM.
//
// Alignment TSV, one bead per line:
//   src_indices<TAB>tgt_indices<TAB>score<TAB>method[<TAB>note]
// Indices are 0-based and comma-joined; a 0-side is the empty string. Score
// is a decimal or "NA". The optional note column is only written for gold
// beads that carry one. A leading "#lengths<TAB>src_len<TAB>tgt_len" line
// records the side lengths; without it they are inferred from the largest
// index. Other lines starting with '#' are comments.
//
// Document collection: a metadata TSV with header
//   id<TAB>pair_id<TAB>language<TAB>date<TAB>article_type
// and, next to it, one "<id>.txt" per document holding one paragraph per
// line.
//
// Sentence file: "<paragraph_index><TAB><sentence>" per line.
//
// Bitext: "<src><TAB><tgt>" per line.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bitext/types.hpp"

namespace bitext {

using SentencePair = std::pair<std::string, std::string>;

/// Parses one alignment line. `where` prefixes error messages.
Bead parse_bead_line(std::string_view line, std::string_view where = "line");
std::string format_bead_line(const Bead& bead);

/// Shortest decimal that round-trips to the same double.
std::string format_score(double value);

AlignmentSet parse_alignments(std::istream& in, std::string_view source_name = "<stream>");
void write_alignments(const AlignmentSet& set, std::ostream& out);

AlignmentSet read_alignments(const std::filesystem::path& path);
void write_alignments(const AlignmentSet& set, const std::filesystem::path& path);

/// Reads a gold file. Structural validity is not checked here; see
/// validate_gold.
GoldAlignment read_gold(const std::filesystem::path& path);
void write_gold(const GoldAlignment& gold, const std::filesystem::path& path);

std::vector<ArticleMeta> parse_metadata(std::istream& in, std::string_view source_name);
void write_metadata(const std::vector<ArticleMeta>& metas, std::ostream& out);

/// Reads a document collection from its metadata file.
std::vector<Document> read_documents(const std::filesystem::path& meta_path);
/// Writes `<dir>/meta.tsv` plus one `<id>.txt` per document.
void write_documents(const std::vector<Document>& docs, const std::filesystem::path& dir);

SentenceList read_sentences(const std::filesystem::path& path, std::string doc_id,
                            LanguageTag language);
void write_sentences(const SentenceList& list, const std::filesystem::path& path);
std::string format_sentences(const SentenceList& list);

std::vector<SentencePair> read_bitext(const std::filesystem::path& path);
void write_bitext(const std::vector<SentencePair>& pairs, const std::filesystem::path& path);
void write_bitext(const std::vector<SentencePair>& pairs, std::ostream& out);

/// Line-oriented text file without the trailing newline of the last line.
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_lines(const std::vector<std::string>& lines, const std::filesystem::path& path);
/// Each line followed by '\n'.
std::string format_lines(const std::vector<std::string>& lines);

/// Writes `content` to `path` in binary mode, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace bitext
