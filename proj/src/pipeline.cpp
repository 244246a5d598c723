#include "bitext/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "bitext/log.hpp"
#include "bitext/parallel.hpp"
#include "bitext/scoring.hpp"
#include "bitext/utf8.hpp"
#include "json.hpp"

namespace bitext {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Dedup

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string dedup_normalize(std::string_view text, const LanguageTag& lang) {
  std::u32string out;
  bool pending_space = false;
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp = utf8::next(text, i);
    if (utf8::is_digit(cp) || utf8::is_punct(cp)) continue;
    if (utf8::is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(lang.is_en() ? utf8::to_lower(cp) : cp);
  }
  return utf8::encode(out);
}

DedupResult dedup_pairs(const std::vector<SentencePair>& pairs) {
  DedupResult result;
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string key =
        dedup_normalize(pairs[k].first, LanguageTag::zh()) + '\t' + dedup_normalize(pairs[k].second, LanguageTag::en());
    if (seen.insert(fnv1a64(key)).second) {
      result.pairs.push_back(pairs[k]);
      result.kept.push_back(k);
    }
  }
  result.removed = pairs.size() - result.pairs.size();
  return result;
}

// ---------------------------------------------------------------------------
// Split

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "train";
}

std::map<std::string, Split> split_corpus(const std::vector<ArticleCount>& articles, const SplitSpec& spec) {
  std::set<std::string> ids;
  for (const auto& a : articles) {
    if (!ids.insert(a.id).second) throw Error("split_corpus: duplicate article id '" + a.id + "'");
  }
  std::vector<const ArticleCount*> order;
  for (const auto& a : articles) order.push_back(&a);
  std::sort(order.begin(), order.end(), [](const ArticleCount* a, const ArticleCount* b) {
    if (a->date != b->date) return a->date > b->date;
    return a->id < b->id;
  });
  std::map<std::string, Split> out;
  std::size_t test = 0, dev = 0;
  for (const ArticleCount* a : order) {
    if (test < spec.test_sentence_target) {
      out[a->id] = Split::test;
      test += a->pairs;
    } else if (dev < spec.dev_sentence_target) {
      out[a->id] = Split::dev;
      dev += a->pairs;
    } else {
      out[a->id] = Split::train;
    }
  }
  if (test < spec.test_sentence_target && spec.test_sentence_target > 0) {
    log::warn("not enough sentence pairs to reach the test target; every article went to test",
              {{"test_pairs", std::to_string(test)}, {"target", std::to_string(spec.test_sentence_target)}});
  } else if (dev < spec.dev_sentence_target && spec.dev_sentence_target > 0) {
    log::warn("not enough sentence pairs to reach the dev target",
              {{"dev_pairs", std::to_string(dev)}, {"target", std::to_string(spec.dev_sentence_target)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stats

CorpusStats corpus_stats(const std::vector<SentencePair>& pairs, std::size_t articles) {
  CorpusStats s;
  s.sentence_pairs = pairs.size();
  s.articles = articles;
  for (const auto& [zh, en] : pairs) {
    s.src_tokens += tokenize(zh, LanguageTag::zh()).size();
    s.tgt_tokens += tokenize(en, LanguageTag::en()).size();
  }
  return s;
}

CorpusStats corpus_stats(const std::map<std::string, std::vector<SentencePair>>& by_article) {
  CorpusStats total;
  for (const auto& [id, pairs] : by_article) {
    const CorpusStats s = corpus_stats(pairs, 1);
    total.sentence_pairs += s.sentence_pairs;
    total.src_tokens += s.src_tokens;
    total.tgt_tokens += s.tgt_tokens;
    total.articles += 1;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Stages

PreprocessOutput preprocess_corpus(const std::vector<DocumentPair>& pairs, const PreprocessOptions& opts, int jobs) {
  struct DocOut {
    Document doc;
    std::vector<std::string> log;
  };
  auto process = [&](const Document& raw) {
    DocOut out;
    StitchResult stitched = stitch_paragraphs(normalize_document(raw));
    for (auto& line : stitched.log) out.log.push_back(raw.meta.id + "\tstitch\t" + line);
    FilterResult filtered = filter_boilerplate(stitched.doc, opts.rules);
    for (const auto& r : filtered.removed) {
      out.log.push_back(raw.meta.id + "\t" + std::to_string(r.paragraph_index) + "\t" + r.rule);
    }
    out.doc = std::move(filtered.doc);
    return out;
  };
  auto processed = parallel_map(pairs.size(), jobs, [&](std::size_t k) {
    return std::make_pair(process(pairs[k].zh), process(pairs[k].en));
  });

  PreprocessOutput result;
  for (auto& [zh, en] : processed) {
    result.log.insert(result.log.end(), zh.log.begin(), zh.log.end());
    result.log.insert(result.log.end(), en.log.begin(), en.log.end());
    result.pairs.push_back({std::move(zh.doc), std::move(en.doc)});
  }
  if (opts.truecase) {
    std::vector<Document> en_docs;
    for (const auto& p : result.pairs) en_docs.push_back(p.en);
    result.truecaser = train_truecaser(en_docs);
    for (auto& p : result.pairs) p.en = apply_truecaser(p.en, result.truecaser);
  }
  result.counts = paragraph_count_report(pairs, result.pairs);
  return result;
}

SbdOutput sbd_corpus(const std::vector<DocumentPair>& pairs, const Segmenter& segmenter,
                     const TruecaseModel* truecaser, int jobs) {
  SbdOutput out;
  out.docs = parallel_map(pairs.size(), jobs, [&](std::size_t k) {
    DocSentences d{segmenter.segment(pairs[k].zh), segmenter.segment(pairs[k].en)};
    if (truecaser && !truecaser->empty()) {
      for (auto& s : d.second.sentences) s = truecase_first_token(s, *truecaser);
    }
    return d;
  });
  std::map<std::string, std::size_t> zh_counts, en_counts;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    zh_counts[pairs[k].pair_id()] = out.docs[k].first.size();
    en_counts[pairs[k].pair_id()] = out.docs[k].second.size();
  }
  out.diff = sbd_diff_report(zh_counts, en_counts);
  return out;
}

AlignMethod parse_align_method(std::string_view name) {
  if (name == "gc" || name == "gale-church") return AlignMethod::gc;
  if (name == "moore") return AlignMethod::moore;
  if (name == "bleualign") return AlignMethod::bleualign;
  throw Error("unknown alignment method '" + std::string(name) + "' (expected gc, moore or bleualign)");
}

std::string_view to_string(AlignMethod method) {
  switch (method) {
    case AlignMethod::gc: return "gc";
    case AlignMethod::moore: return "moore";
    case AlignMethod::bleualign: return "bleualign";
  }
  return "gc";
}

LengthParams estimate_corpus_length_params(const std::vector<DocSentences>& docs) {
  std::vector<std::pair<std::size_t, std::size_t>> lengths;
  auto chars = [](const SentenceList& l, std::size_t b, std::size_t e) {
    std::size_t n = 0;
    for (std::size_t k = b; k < e; ++k) n += char_length(l.sentences[k]);
    return n;
  };
  for (const auto& [zh, en] : docs) {
    const auto zb = paragraph_blocks(zh);
    const auto eb = paragraph_blocks(en);
    if (!zb.empty() && zb.size() == eb.size()) {
      for (std::size_t p = 0; p < zb.size(); ++p) {
        lengths.emplace_back(chars(zh, zb[p].first, zb[p].second), chars(en, eb[p].first, eb[p].second));
      }
    } else {
      lengths.emplace_back(chars(zh, 0, zh.size()), chars(en, 0, en.size()));
    }
  }
  return estimate_length_params_from_lengths(lengths);
}

AlignOutput align_corpus(const std::vector<DocSentences>& docs, const AlignOptions& opts, int jobs) {
  AlignOutput out;
  out.length = opts.length;
  if (opts.estimate_length && opts.method != AlignMethod::moore) {
    bool any = false;
    for (const auto& [zh, en] : docs) any = any || !zh.empty();
    if (any) {
      const LengthParams est = estimate_corpus_length_params(docs);
      out.length.c = est.c;
      out.length.s2 = est.s2;
    }
  }
  switch (opts.method) {
    case AlignMethod::gc:
      out.alignments = parallel_map(docs.size(), jobs, [&](std::size_t k) {
        return gc_align(docs[k].first, docs[k].second, out.length);
      });
      break;
    case AlignMethod::moore: {
      MooreCorpusResult r = moore_align_corpus(docs, opts.moore, jobs);
      out.alignments = std::move(r.alignments);
      out.lexical = std::move(r.lexical);
      out.confident_pairs = r.confident_pairs;
      break;
    }
    case AlignMethod::bleualign: {
      if (opts.src_mt.size() != docs.size()) {
        throw Error("bleualign needs one source translation per document (" + std::to_string(opts.src_mt.size()) +
                    " given for " + std::to_string(docs.size()) + ")");
      }
      if (!opts.tgt_mt.empty() && opts.tgt_mt.size() != docs.size()) {
        throw Error("bleualign: " + std::to_string(opts.tgt_mt.size()) + " target translations for " +
                    std::to_string(docs.size()) + " documents");
      }
      BleualignConfig cfg = opts.bleualign;
      cfg.length = out.length;
      out.alignments = parallel_map(docs.size(), jobs, [&](std::size_t k) {
        return bleualign(docs[k].first, docs[k].second, opts.src_mt[k],
                         opts.tgt_mt.empty() ? nullptr : &opts.tgt_mt[k], cfg);
      });
      break;
    }
  }
  return out;
}

std::vector<SentencePair> beads_to_bitext(const AlignmentSet& set, const SentenceList& src, const SentenceList& tgt) {
  std::vector<SentencePair> out;
  for (const Bead& b : set.beads) {
    if (b.src.empty() || b.tgt.empty()) continue;
    std::string zh, en;
    for (std::size_t i : b.src) zh += src.sentences.at(i);
    for (std::size_t j : b.tgt) {
      if (!en.empty()) en.push_back(' ');
      en += tgt.sentences.at(j);
    }
    out.emplace_back(std::move(zh), std::move(en));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Config

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(where + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(where + ": unknown key '" + key + "'");
    }
  }
}

}  // namespace

PipelineConfig PipelineConfig::from_json(std::string_view text, const fs::path& base_dir,
                                         std::string_view source_name) {
  const std::string where(source_name);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(where + ": " + e.what());
  }
  check_keys(j,
             {"input", "output", "patterns", "abbrevs", "length_params", "src_mt_dir", "tgt_mt_dir", "sbd",
              "truecase", "aligner", "estimate_length", "moore", "bleu", "bleualign", "split", "jobs", "seed"},
             where);
  PipelineConfig c;
  try {
    auto opt_path = [&](const char* key) -> std::optional<fs::path> {
      if (!j.contains(key) || j[key].is_null()) return std::nullopt;
      return base_dir / j[key].get<std::string>();
    };
    if (auto p = opt_path("input")) c.input = *p;
    if (auto p = opt_path("output")) c.output = *p;
    c.patterns = opt_path("patterns");
    c.abbrevs = opt_path("abbrevs");
    c.length_params = opt_path("length_params");
    c.src_mt_dir = opt_path("src_mt_dir");
    c.tgt_mt_dir = opt_path("tgt_mt_dir");
    if (j.contains("sbd")) c.sbd = parse_sbd_method(j["sbd"].get<std::string>());
    if (j.contains("truecase")) c.truecase = j["truecase"].get<bool>();
    if (j.contains("aligner")) c.align.method = parse_align_method(j["aligner"].get<std::string>());
    if (j.contains("estimate_length")) c.align.estimate_length = j["estimate_length"].get<bool>();
    if (j.contains("moore")) {
      const json& m = j["moore"];
      check_keys(m, {"theta1", "theta2", "iterations"}, where + ": moore");
      c.align.moore.theta1 = m.value("theta1", c.align.moore.theta1);
      c.align.moore.theta2 = m.value("theta2", c.align.moore.theta2);
      c.align.moore.iterations = m.value("iterations", c.align.moore.iterations);
    }
    if (j.contains("bleu")) {
      const json& b = j["bleu"];
      check_keys(b, {"n_max", "epsilon", "brevity_penalty"}, where + ": bleu");
      BleuConfig& bc = c.align.bleualign.bleu;
      bc.n_max = b.value("n_max", bc.n_max);
      bc.epsilon = b.value("epsilon", bc.epsilon);
      bc.use_brevity_penalty = b.value("brevity_penalty", bc.use_brevity_penalty);
    }
    if (j.contains("bleualign")) {
      const json& b = j["bleualign"];
      check_keys(b, {"min_score", "grow_anchors"}, where + ": bleualign");
      c.align.bleualign.min_score = b.value("min_score", c.align.bleualign.min_score);
      c.align.bleualign.grow_anchors = b.value("grow_anchors", c.align.bleualign.grow_anchors);
    }
    if (j.contains("split")) {
      const json& s = j["split"];
      check_keys(s, {"test", "dev"}, where + ": split");
      c.split.test_sentence_target = s.value("test", c.split.test_sentence_target);
      c.split.dev_sentence_target = s.value("dev", c.split.dev_sentence_target);
    }
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw FormatError(where + ": " + e.what());
  }
  if (c.jobs < 1) throw Error(where + ": jobs must be >= 1");
  c.align.moore.validate();
  c.align.bleualign.bleu.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  return from_json(read_file(path), path.parent_path(), path.string());
}

// ---------------------------------------------------------------------------
// run_pipeline

namespace {

// Outputs are staged as "<file>.partial" and renamed together at the end.
class StagedOutput {
 public:
  explicit StagedOutput(fs::path root) : root_(std::move(root)) {}

  void put(const fs::path& rel, std::string_view content) {
    write_file(partial(rel), content);
    files_.push_back(rel);
  }

  void commit() {
    for (const auto& rel : files_) fs::rename(partial(rel), root_ / rel);
    files_.clear();
  }

 private:
  fs::path partial(const fs::path& rel) const { return root_ / (rel.string() + ".partial"); }

  fs::path root_;
  std::vector<fs::path> files_;
};

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string documents_meta(const std::vector<DocumentPair>& pairs) {
  std::vector<ArticleMeta> metas;
  for (const auto& p : pairs) {
    metas.push_back(p.zh.meta);
    metas.push_back(p.en.meta);
  }
  std::ostringstream out;
  write_metadata(metas, out);
  return out.str();
}

std::string bitext_text(const std::vector<SentencePair>& pairs) {
  std::ostringstream out;
  write_bitext(pairs, out);
  return out.str();
}

json stats_json(const CorpusStats& s) {
  json j = json::object();
  j["sentence_pairs"] = s.sentence_pairs;
  j["zh_tokens"] = s.src_tokens;
  j["en_tokens"] = s.tgt_tokens;
  j["articles"] = s.articles;
  return j;
}

SentenceList load_translation(const fs::path& dir, const std::string& doc_id, LanguageTag lang) {
  const fs::path path = dir / (doc_id + ".txt");
  if (!fs::exists(path)) throw Error("missing translation file '" + path.string() + "'");
  SentenceList l;
  l.doc_id = doc_id;
  l.language = std::move(lang);
  l.sentences = read_lines(path);
  l.paragraph_index.assign(l.sentences.size(), 0);
  return l;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  if (config.input.empty() || config.output.empty()) throw Error("pipeline needs both an input and an output path");
  PipelineResult result;
  StagedOutput out(config.output);
  Stopwatch clock;
  std::string stage;
  auto record = [&](std::size_t in, std::size_t produced) {
    result.stages.push_back({stage, in, produced, clock.lap()});
    log::info("stage done", {{"stage", stage}, {"input", std::to_string(in)}, {"output", std::to_string(produced)}});
  };

  try {
    stage = "ingest";
    const std::vector<DocumentPair> raw = pair_documents(read_documents(config.input));
    record(raw.size() * 2, raw.size());

    stage = "preprocess";
    PreprocessOptions popts;
    popts.rules = config.patterns ? FilterRules::load(*config.patterns) : FilterRules::defaults();
    popts.truecase = config.truecase;
    const PreprocessOutput pre = preprocess_corpus(raw, popts, config.jobs);
    std::size_t paragraphs_in = 0, paragraphs_out = 0;
    for (const auto& p : raw) paragraphs_in += p.zh.paragraphs.size() + p.en.paragraphs.size();
    for (const auto& p : pre.pairs) {
      paragraphs_out += p.zh.paragraphs.size() + p.en.paragraphs.size();
      out.put(fs::path("documents") / (p.zh.meta.id + ".txt"), format_lines(p.zh.paragraphs));
      out.put(fs::path("documents") / (p.en.meta.id + ".txt"), format_lines(p.en.paragraphs));
    }
    out.put("documents/meta.tsv", documents_meta(pre.pairs));
    out.put("reports/paragraph_counts.csv", paragraph_count_csv(pre.counts));
    out.put("reports/preprocess_log.tsv", format_lines(pre.log));
    record(paragraphs_in, paragraphs_out);

    stage = "sbd";
    Segmenter seg;
    seg.method = config.sbd;
    if (config.abbrevs) seg.abbrevs = AbbrevList::load(*config.abbrevs);
    if (seg.method == SbdMethod::punkt) {
      std::vector<Document> corpus;
      for (const auto& p : pre.pairs) corpus.push_back(p.en);
      seg.punkt = train_punkt(corpus);
      std::ostringstream model;
      seg.punkt.write(model);
      out.put("reports/punkt_model.tsv", model.str());
    }
    const SbdOutput sbd = sbd_corpus(pre.pairs, seg, config.truecase ? &pre.truecaser : nullptr, config.jobs);
    std::size_t sentences = 0;
    for (const auto& [zh, en] : sbd.docs) {
      sentences += zh.size() + en.size();
      out.put(fs::path("sentences") / (zh.doc_id + ".txt"), format_sentences(zh));
      out.put(fs::path("sentences") / (en.doc_id + ".txt"), format_sentences(en));
    }
    out.put("reports/sbd_diff.csv", sbd.diff.csv());
    record(paragraphs_out, sentences);

    stage = "align";
    AlignOptions aopts = config.align;
    if (config.length_params) {
      aopts.length = LengthParams::load(*config.length_params);
      aopts.estimate_length = false;
    }
    if (aopts.method == AlignMethod::bleualign) {
      if (!config.src_mt_dir) throw Error("bleualign needs src_mt_dir");
      for (const auto& [zh, en] : sbd.docs) {
        aopts.src_mt.push_back(load_translation(*config.src_mt_dir, zh.doc_id, LanguageTag::en()));
        if (aopts.src_mt.back().size() != zh.size()) {
          throw Error("translation of '" + zh.doc_id + "' has " + std::to_string(aopts.src_mt.back().size()) +
                      " lines but the document has " + std::to_string(zh.size()) + " sentences");
        }
        if (config.tgt_mt_dir) {
          aopts.tgt_mt.push_back(load_translation(*config.tgt_mt_dir, en.doc_id, LanguageTag::zh()));
        }
      }
    }
    const AlignOutput aligned = align_corpus(sbd.docs, aopts, config.jobs);
    std::map<std::string, std::vector<SentencePair>> raw_bitext;
    std::size_t beads = 0;
    for (std::size_t k = 0; k < sbd.docs.size(); ++k) {
      const std::string& id = pre.pairs[k].pair_id();
      std::ostringstream tsv;
      write_alignments(aligned.alignments[k], tsv);
      out.put(fs::path("alignments") / (id + ".tsv"), tsv.str());
      beads += aligned.alignments[k].beads.size();
      auto rows = beads_to_bitext(aligned.alignments[k], sbd.docs[k].first, sbd.docs[k].second);
      result.aligned_beads += rows.size();
      out.put(fs::path("bitext") / (id + ".tsv"), bitext_text(rows));
      raw_bitext[id] = std::move(rows);
    }
    if (aopts.method != AlignMethod::moore) {
      std::ostringstream params;
      aligned.length.write(params);
      out.put("reports/length_params.txt", params.str());
    } else if (aligned.lexical) {
      std::ostringstream table;
      aligned.lexical->table.write(table);
      out.put("reports/translation_table.tsv", table.str());
    }
    record(sentences, result.aligned_beads);

    stage = "dedup";
    // Corpus order = input pair order; remember which article each row is from.
    std::vector<SentencePair> all;
    std::vector<std::string> owner;
    for (const auto& p : pre.pairs) {
      for (const auto& row : raw_bitext[p.pair_id()]) {
        all.push_back(row);
        owner.push_back(p.pair_id());
      }
    }
    const DedupResult dd = dedup_pairs(all);
    std::map<std::string, std::vector<SentencePair>> kept;
    for (const auto& p : pre.pairs) kept[p.pair_id()];
    for (std::size_t k = 0; k < dd.kept.size(); ++k) kept[owner[dd.kept[k]]].push_back(dd.pairs[k]);
    out.put("bitext.tsv", bitext_text(dd.pairs));
    result.bitext_rows = dd.pairs.size();
    record(all.size(), dd.pairs.size());

    stage = "split";
    std::vector<ArticleCount> counts;
    for (const auto& p : pre.pairs) counts.push_back({p.pair_id(), p.zh.meta.date, kept[p.pair_id()].size()});
    const auto splits = split_corpus(counts, config.split);
    json split_stats = json::object();
    for (Split s : {Split::train, Split::dev, Split::test}) {
      std::vector<std::string> ids;
      std::vector<SentencePair> rows;
      std::map<std::string, std::vector<SentencePair>> part;
      for (const auto& p : pre.pairs) {
        if (splits.at(p.pair_id()) != s) continue;
        ids.push_back(p.pair_id());
        const auto& r = kept[p.pair_id()];
        rows.insert(rows.end(), r.begin(), r.end());
        part[p.pair_id()] = r;
      }
      const std::string name(to_string(s));
      out.put(fs::path("splits") / (name + ".ids"), format_lines(ids));
      out.put(fs::path("splits") / (name + ".tsv"), bitext_text(rows));
      split_stats[name] = stats_json(corpus_stats(part));
    }
    record(counts.size(), splits.size());

    stage = "stats";
    result.stats = corpus_stats(kept);
    json stats = stats_json(result.stats);
    stats["aligned_pairs"] = result.aligned_beads;
    stats["dedup_removed"] = dd.removed;
    stats["dedup_hash"] = "fnv1a64";
    stats["aligner"] = std::string(to_string(aopts.method));
    stats["sbd"] = seg.method == SbdMethod::rules ? "rules" : "punkt";
    stats["splits"] = split_stats;
    out.put("stats.json", stats.dump(2) + "\n");
    record(result.bitext_rows, result.stats.sentence_pairs);
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    log::error("pipeline aborted", {{"stage", stage}, {"cause", e.what()}});
    throw StageError(stage, e.what());
  }

  std::string run_log;
  {
    json head = json::object();
    head["event"] = "config";
    head["aligner"] = std::string(to_string(config.align.method));
    head["sbd"] = config.sbd == SbdMethod::rules ? "rules" : "punkt";
    head["jobs"] = config.jobs;
    head["seed"] = config.seed;
    head["dedup_hash"] = "fnv1a64";
    run_log += head.dump() + "\n";
    for (const auto& s : result.stages) {
      json j = json::object();
      j["stage"] = s.stage;
      j["input"] = s.input;
      j["output"] = s.output;
      j["seconds"] = s.seconds;
      run_log += j.dump() + "\n";
    }
  }
  out.put(std::string(kRunLogName), run_log);
  out.commit();
  return result;
}

}  // namespace bitext
