// Command-line front end: one subcommand per pipeline stage plus `run`.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bitext/evaluation.hpp"
#include "bitext/formats.hpp"
#include "bitext/log.hpp"
#include "bitext/pipeline.hpp"
#include "bitext/preprocess.hpp"
#include "bitext/sbd.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace bitext;

namespace {

struct Globals {
  std::string config;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string log_format = "text";
  CLI::Option* jobs_opt = nullptr;
};

// Settings from --config, or all defaults.
PipelineConfig base_config(const Globals& g) {
  PipelineConfig c = g.config.empty() ? PipelineConfig{} : PipelineConfig::load(g.config);
  if (g.jobs_opt->count() > 0) c.jobs = g.jobs;
  if (c.jobs < 1) throw Error("--jobs must be >= 1");
  return c;
}

void require_dir(const fs::path& dir) { fs::create_directories(dir); }

std::vector<DocumentPair> load_pairs(const fs::path& meta) { return pair_documents(read_documents(meta)); }

std::vector<Document> flatten(const std::vector<DocumentPair>& pairs) {
  std::vector<Document> docs;
  for (const auto& p : pairs) {
    docs.push_back(p.zh);
    docs.push_back(p.en);
  }
  return docs;
}

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::string input, output;
};

void cmd_ingest(const IngestArgs& a) {
  const auto pairs = load_pairs(a.input);
  require_dir(a.output);
  write_documents(flatten(pairs), a.output);
  std::size_t paragraphs = 0;
  for (const auto& p : pairs) paragraphs += p.zh.paragraphs.size() + p.en.paragraphs.size();
  log::info("ingested", {{"pairs", std::to_string(pairs.size())}, {"paragraphs", std::to_string(paragraphs)}});
}

struct PreprocessArgs {
  std::string input, output, patterns;
  bool no_truecase = false;
};

void cmd_preprocess(const PreprocessArgs& a, const PipelineConfig& base) {
  PreprocessOptions opts;
  if (!a.patterns.empty()) {
    opts.rules = FilterRules::load(a.patterns);
  } else if (base.patterns) {
    opts.rules = FilterRules::load(*base.patterns);
  }
  opts.truecase = a.no_truecase ? false : base.truecase;
  const auto out = preprocess_corpus(load_pairs(a.input), opts, base.jobs);
  require_dir(a.output);
  write_documents(flatten(out.pairs), a.output);
  write_file(fs::path(a.output) / "paragraph_counts.csv", paragraph_count_csv(out.counts));
  write_lines(out.log, fs::path(a.output) / "preprocess_log.tsv");
  log::info("preprocessed", {{"pairs", std::to_string(out.pairs.size())}, {"log_lines", std::to_string(out.log.size())}});
}

struct SbdArgs {
  std::string input, output, method, abbrevs, punkt_model;
  bool truecase = false;
};

void cmd_sbd(const SbdArgs& a, const PipelineConfig& base) {
  const auto pairs = load_pairs(a.input);
  Segmenter seg;
  seg.method = a.method.empty() ? base.sbd : parse_sbd_method(a.method);
  if (!a.abbrevs.empty()) {
    seg.abbrevs = AbbrevList::load(a.abbrevs);
  } else if (base.abbrevs) {
    seg.abbrevs = AbbrevList::load(*base.abbrevs);
  }
  require_dir(a.output);
  if (seg.method == SbdMethod::punkt) {
    if (!a.punkt_model.empty()) {
      std::istringstream in(read_file(a.punkt_model));
      seg.punkt = PunktModel::read(in, a.punkt_model);
    } else {
      std::vector<Document> en;
      for (const auto& p : pairs) en.push_back(p.en);
      seg.punkt = train_punkt(en);
      std::ostringstream model;
      seg.punkt.write(model);
      write_file(fs::path(a.output) / "punkt_model.tsv", model.str());
    }
  }
  std::optional<TruecaseModel> tc;
  if (a.truecase) {
    std::vector<Document> en;
    for (const auto& p : pairs) en.push_back(p.en);
    tc = train_truecaser(en);
  }
  const auto out = sbd_corpus(pairs, seg, tc ? &*tc : nullptr, base.jobs);
  for (const auto& [zh, en] : out.docs) {
    write_sentences(zh, fs::path(a.output) / (zh.doc_id + ".txt"));
    write_sentences(en, fs::path(a.output) / (en.doc_id + ".txt"));
  }
  write_file(fs::path(a.output) / "sbd_diff.csv", out.diff.csv());
  log::info("segmented", {{"pairs", std::to_string(out.docs.size())},
                          {"median_abs_diff", format_score(out.diff.median)}});
}

struct AlignArgs {
  // corpus mode
  std::string input, sentences, output;
  // single-pair mode
  std::string src, tgt, out;
  std::string src_mt, tgt_mt;
  std::string method, length_params;
  bool no_estimate = false;
  std::optional<double> theta1, theta2, min_score;
  std::optional<int> iterations;
  bool no_grow = false;
};

SentenceList translation_lines(const fs::path& path, const std::string& doc_id, LanguageTag lang) {
  if (!fs::exists(path)) throw Error("missing translation file '" + path.string() + "'");
  SentenceList l;
  l.doc_id = doc_id;
  l.language = std::move(lang);
  l.sentences = read_lines(path);
  l.paragraph_index.assign(l.sentences.size(), 0);
  return l;
}

void cmd_align(const AlignArgs& a, const PipelineConfig& base) {
  AlignOptions opts = base.align;
  if (!a.method.empty()) opts.method = parse_align_method(a.method);
  if (!a.length_params.empty()) {
    opts.length = LengthParams::load(a.length_params);
    opts.estimate_length = false;
  } else if (base.length_params) {
    opts.length = LengthParams::load(*base.length_params);
    opts.estimate_length = false;
  }
  if (a.no_estimate) opts.estimate_length = false;
  if (a.theta1) opts.moore.theta1 = *a.theta1;
  if (a.theta2) opts.moore.theta2 = *a.theta2;
  if (a.iterations) opts.moore.iterations = *a.iterations;
  if (a.min_score) opts.bleualign.min_score = *a.min_score;
  if (a.no_grow) opts.bleualign.grow_anchors = false;

  const bool single = !a.src.empty();
  if (single == !a.input.empty()) throw Error("align: give either --src/--tgt/--out or --input/--sentences/--output");

  std::vector<DocSentences> docs;
  std::vector<std::string> names;
  if (single) {
    if (a.tgt.empty() || a.out.empty()) throw Error("align: --src needs --tgt and --out");
    docs.emplace_back(read_sentences(a.src, fs::path(a.src).stem().string(), LanguageTag::zh()),
                      read_sentences(a.tgt, fs::path(a.tgt).stem().string(), LanguageTag::en()));
    if (opts.method == AlignMethod::bleualign) {
      if (a.src_mt.empty()) throw Error("align: bleualign needs --src-mt");
      opts.src_mt.push_back(translation_lines(a.src_mt, docs[0].first.doc_id, LanguageTag::en()));
      if (!a.tgt_mt.empty()) opts.tgt_mt.push_back(translation_lines(a.tgt_mt, docs[0].second.doc_id, LanguageTag::zh()));
    }
  } else {
    if (a.sentences.empty() || a.output.empty()) throw Error("align: --input needs --sentences and --output");
    const std::string src_mt = !a.src_mt.empty() ? a.src_mt : base.src_mt_dir ? base.src_mt_dir->string() : "";
    const std::string tgt_mt = !a.tgt_mt.empty() ? a.tgt_mt : base.tgt_mt_dir ? base.tgt_mt_dir->string() : "";
    for (const auto& p : load_pairs(a.input)) {
      docs.emplace_back(read_sentences(fs::path(a.sentences) / (p.zh.meta.id + ".txt"), p.zh.meta.id, LanguageTag::zh()),
                        read_sentences(fs::path(a.sentences) / (p.en.meta.id + ".txt"), p.en.meta.id, LanguageTag::en()));
      names.push_back(p.pair_id());
      if (opts.method == AlignMethod::bleualign) {
        if (src_mt.empty()) throw Error("align: bleualign needs --src-mt");
        opts.src_mt.push_back(translation_lines(fs::path(src_mt) / (p.zh.meta.id + ".txt"), p.zh.meta.id, LanguageTag::en()));
        if (!tgt_mt.empty()) {
          opts.tgt_mt.push_back(translation_lines(fs::path(tgt_mt) / (p.en.meta.id + ".txt"), p.en.meta.id, LanguageTag::zh()));
        }
      }
    }
  }

  const AlignOutput aligned = align_corpus(docs, opts, base.jobs);
  if (single) {
    write_alignments(aligned.alignments[0], a.out);
    return;
  }
  const fs::path out(a.output);
  require_dir(out / "alignments");
  require_dir(out / "bitext");
  std::size_t beads = 0;
  for (std::size_t k = 0; k < docs.size(); ++k) {
    write_alignments(aligned.alignments[k], out / "alignments" / (names[k] + ".tsv"));
    write_bitext(beads_to_bitext(aligned.alignments[k], docs[k].first, docs[k].second), out / "bitext" / (names[k] + ".tsv"));
    beads += aligned.alignments[k].beads.size();
  }
  if (opts.method == AlignMethod::moore) {
    if (aligned.lexical) {
      std::ostringstream t;
      aligned.lexical->table.write(t);
      write_file(out / "translation_table.tsv", t.str());
    }
  } else {
    std::ostringstream p;
    aligned.length.write(p);
    write_file(out / "length_params.txt", p.str());
  }
  log::info("aligned", {{"method", std::string(to_string(opts.method))},
                        {"documents", std::to_string(docs.size())},
                        {"beads", std::to_string(beads)}});
}

struct DedupArgs {
  std::string input, output;
};

void cmd_dedup(const DedupArgs& a) {
  const auto r = dedup_pairs(read_bitext(a.input));
  write_bitext(r.pairs, a.output);
  log::info("deduplicated", {{"kept", std::to_string(r.pairs.size())}, {"removed", std::to_string(r.removed)}});
}

struct SplitArgs {
  std::string meta, bitext, output;
  std::optional<std::size_t> test, dev;
};

void cmd_split(const SplitArgs& a, const PipelineConfig& base) {
  SplitSpec spec = base.split;
  if (a.test) spec.test_sentence_target = *a.test;
  if (a.dev) spec.dev_sentence_target = *a.dev;
  const auto pairs = load_pairs(a.meta);
  std::map<std::string, std::vector<SentencePair>> rows;
  std::vector<ArticleCount> counts;
  for (const auto& p : pairs) {
    const fs::path f = fs::path(a.bitext) / (p.pair_id() + ".tsv");
    auto& r = rows[p.pair_id()];
    if (fs::exists(f)) r = read_bitext(f);
    counts.push_back({p.pair_id(), p.zh.meta.date, r.size()});
  }
  const auto splits = split_corpus(counts, spec);
  require_dir(a.output);
  for (Split s : {Split::train, Split::dev, Split::test}) {
    std::vector<std::string> ids;
    std::vector<SentencePair> out;
    for (const auto& p : pairs) {
      if (splits.at(p.pair_id()) != s) continue;
      ids.push_back(p.pair_id());
      out.insert(out.end(), rows[p.pair_id()].begin(), rows[p.pair_id()].end());
    }
    const std::string name(to_string(s));
    write_lines(ids, fs::path(a.output) / (name + ".ids"));
    write_bitext(out, fs::path(a.output) / (name + ".tsv"));
    log::info("split", {{"split", name}, {"articles", std::to_string(ids.size())}, {"pairs", std::to_string(out.size())}});
  }
}

struct EvalArgs {
  std::string gold;
  std::vector<std::string> preds;
  bool all_beads = false;
  bool types = false;
  std::string report;
};

// A file, or every *.tsv in a directory in name order.
std::vector<fs::path> alignment_files(const fs::path& p) {
  if (!fs::is_directory(p)) return {p};
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(p)) {
    if (e.is_regular_file() && e.path().extension() == ".tsv") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_eval(const EvalArgs& a) {
  std::vector<GoldAlignment> golds;
  const auto gold_files = alignment_files(a.gold);
  for (const auto& f : gold_files) {
    golds.push_back(read_gold(f));
    const auto v = validate_gold(golds.back());
    if (!v.empty()) throw Error(f.string() + ": invalid gold alignment: " + v[0].rule + " (" + v[0].detail + ")");
  }
  std::string out;
  if (a.types) out += type_distribution_csv(alignment_type_distribution(golds));
  if (!a.preds.empty()) {
    std::vector<MethodRun> runs;
    for (const auto& spec : a.preds) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos) throw Error("--pred expects NAME=PATH, got '" + spec + "'");
      MethodRun run{spec.substr(0, eq), {}};
      const fs::path p = spec.substr(eq + 1);
      for (const auto& g : gold_files) {
        run.predictions.push_back(read_alignments(fs::is_directory(p) ? p / g.filename() : p));
      }
      runs.push_back(std::move(run));
    }
    std::vector<ReportRow> rows;
    if (a.all_beads) {
      for (const auto& run : runs) {
        std::size_t m = 0, pr = 0, gl = 0, mm = 0;
        for (std::size_t k = 0; k < golds.size(); ++k) {
          const auto s = prf1(run.predictions[k], golds[k], false);
          m += s.matches;
          pr += s.predicted;
          gl += s.gold;
          mm += many_to_many_count(run.predictions[k]);
        }
        rows.push_back({run.method, prf1_from_counts(m, pr, gl), mm});
      }
    } else {
      rows = aligner_report(golds, runs);
    }
    out += aligner_report_csv(rows);
  }
  if (a.report.empty()) {
    std::cout << out;
  } else {
    write_file(a.report, out);
  }
  return 0;
}

struct StatsArgs {
  std::string input, bitext_dir;
  std::size_t articles = 0;
};

void cmd_stats(const StatsArgs& a) {
  CorpusStats s;
  if (!a.bitext_dir.empty()) {
    std::map<std::string, std::vector<SentencePair>> by;
    for (const auto& f : alignment_files(a.bitext_dir)) by[f.stem().string()] = read_bitext(f);
    s = corpus_stats(by);
  } else {
    s = corpus_stats(read_bitext(a.input), a.articles);
  }
  nlohmann::ordered_json j;
  j["sentence_pairs"] = s.sentence_pairs;
  j["zh_tokens"] = s.src_tokens;
  j["en_tokens"] = s.tgt_tokens;
  j["articles"] = s.articles;
  std::cout << j.dump(2) << "\n";
}

struct BleuArgs {
  std::string hyp, ref, lang = "en";
  int n_max = 2;
  double epsilon = 0.01;
  bool no_bp = false;
  bool sentence = false;
};

void cmd_bleu(const BleuArgs& a) {
  BleuConfig cfg;
  cfg.n_max = a.n_max;
  cfg.epsilon = a.epsilon;
  cfg.use_brevity_penalty = !a.no_bp;
  cfg.validate();
  const LanguageTag lang = LanguageTag::parse(a.lang);
  const auto hyp_lines = read_lines(a.hyp), ref_lines = read_lines(a.ref);
  if (hyp_lines.size() != ref_lines.size()) {
    throw Error("hypothesis has " + std::to_string(hyp_lines.size()) + " lines but reference has " +
                std::to_string(ref_lines.size()));
  }
  std::vector<Tokens> hyps, refs;
  for (const auto& l : hyp_lines) hyps.push_back(tokenize(l, lang));
  for (const auto& l : ref_lines) refs.push_back(tokenize(l, lang));
  if (a.sentence) {
    for (std::size_t k = 0; k < hyps.size(); ++k) std::cout << format_score(sentence_bleu(hyps[k], refs[k], cfg)) << "\n";
  } else {
    std::cout << format_score(corpus_bleu(hyps, refs, cfg)) << "\n";
  }
}

void cmd_run(const PipelineConfig& cfg) {
  const auto r = run_pipeline(cfg);
  log::info("pipeline finished", {{"bitext_rows", std::to_string(r.bitext_rows)},
                                  {"aligned_beads", std::to_string(r.aligned_beads)},
                                  {"output", cfg.output.string()}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel corpus construction: preprocessing, segmentation, alignment and splitting of zh-en articles."};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON settings file")->check(CLI::ExistingFile);
  g.jobs_opt = app.add_option("--jobs", g.jobs, "worker threads per stage")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "reserved; no stage is stochastic");
  app.add_option("--log-format", g.log_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "read and validate a document collection, write it back canonically");
  c_ingest->add_option("--input", ingest.input, "metadata TSV")->required()->check(CLI::ExistingFile);
  c_ingest->add_option("--output", ingest.output, "output directory")->required();

  PreprocessArgs pre;
  auto* c_pre = app.add_subcommand("preprocess", "normalize, stitch and filter paragraphs");
  c_pre->add_option("--input", pre.input, "metadata TSV")->required()->check(CLI::ExistingFile);
  c_pre->add_option("--output", pre.output, "output directory")->required();
  c_pre->add_option("--patterns", pre.patterns, "filter pattern file")->check(CLI::ExistingFile);
  c_pre->add_flag("--no-truecase", pre.no_truecase, "skip paragraph-initial truecasing");

  SbdArgs sbd;
  auto* c_sbd = app.add_subcommand("sbd", "split paragraphs into sentences");
  c_sbd->add_option("--input", sbd.input, "metadata TSV")->required()->check(CLI::ExistingFile);
  c_sbd->add_option("--output", sbd.output, "output directory")->required();
  c_sbd->add_option("--method", sbd.method, "rules or punkt")->check(CLI::IsMember({"rules", "punkt"}));
  c_sbd->add_option("--abbrevs", sbd.abbrevs, "abbreviation list")->check(CLI::ExistingFile);
  c_sbd->add_option("--punkt-model", sbd.punkt_model, "trained Punkt model (else trained on the input)")
      ->check(CLI::ExistingFile);
  c_sbd->add_flag("--truecase", sbd.truecase, "recase the first token of each en sentence");

  AlignArgs al;
  auto* c_align = app.add_subcommand("align", "sentence alignment");
  c_align->add_option("--input", al.input, "metadata TSV (corpus mode)")->check(CLI::ExistingFile);
  c_align->add_option("--sentences", al.sentences, "directory of <doc id>.txt sentence files");
  c_align->add_option("--output", al.output, "output directory (corpus mode)");
  c_align->add_option("--src", al.src, "zh sentence file (single pair)")->check(CLI::ExistingFile);
  c_align->add_option("--tgt", al.tgt, "en sentence file (single pair)")->check(CLI::ExistingFile);
  c_align->add_option("--out", al.out, "alignment TSV (single pair)");
  c_align->add_option("--method", al.method, "gc, moore or bleualign")->check(CLI::IsMember({"gc", "moore", "bleualign"}));
  c_align->add_option("--src-mt", al.src_mt, "zh->en translation file, or directory of <zh id>.txt");
  c_align->add_option("--tgt-mt", al.tgt_mt, "en->zh translation file, or directory of <en id>.txt");
  c_align->add_option("--length-params", al.length_params, "Gale-Church parameter file")->check(CLI::ExistingFile);
  c_align->add_flag("--no-estimate", al.no_estimate, "keep c and s2 instead of estimating them");
  c_align->add_option("--theta1", al.theta1, "Moore length-pass threshold");
  c_align->add_option("--theta2", al.theta2, "Moore output threshold");
  c_align->add_option("--iterations", al.iterations, "Model 1 EM iterations");
  c_align->add_option("--min-score", al.min_score, "Bleualign anchor threshold");
  c_align->add_flag("--no-grow", al.no_grow, "disable Bleualign anchor growth");

  DedupArgs dd;
  auto* c_dedup = app.add_subcommand("dedup", "remove duplicate sentence pairs");
  c_dedup->add_option("--input", dd.input, "bitext TSV")->required()->check(CLI::ExistingFile);
  c_dedup->add_option("--output", dd.output, "bitext TSV")->required();

  SplitArgs sp;
  auto* c_split = app.add_subcommand("split", "article-level train/dev/test split");
  c_split->add_option("--meta", sp.meta, "metadata TSV")->required()->check(CLI::ExistingFile);
  c_split->add_option("--bitext", sp.bitext, "directory of <pair id>.tsv bitext files")->required()
      ->check(CLI::ExistingDirectory);
  c_split->add_option("--output", sp.output, "output directory")->required();
  c_split->add_option("--test", sp.test, "test sentence target");
  c_split->add_option("--dev", sp.dev, "dev sentence target");

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "score alignments against gold");
  c_eval->add_option("--gold", ev.gold, "gold TSV or directory")->required()->check(CLI::ExistingPath);
  c_eval->add_option("--pred", ev.preds, "NAME=PATH (file or directory matching the gold file names)");
  c_eval->add_flag("--all-beads", ev.all_beads, "score every bead type, not only 1-1");
  c_eval->add_flag("--types", ev.types, "print the gold bead-type distribution");
  c_eval->add_option("--report", ev.report, "write CSV here instead of stdout");

  StatsArgs st;
  auto* c_stats = app.add_subcommand("stats", "corpus statistics as JSON");
  auto* st_in = c_stats->add_option("--input", st.input, "bitext TSV")->check(CLI::ExistingFile);
  auto* st_dir = c_stats->add_option("--bitext-dir", st.bitext_dir, "directory of per-article bitext TSVs")
                     ->check(CLI::ExistingDirectory);
  c_stats->add_option("--articles", st.articles, "article count for --input");
  st_in->excludes(st_dir);

  BleuArgs bl;
  auto* c_bleu = app.add_subcommand("bleu", "smoothed BLEU of a hypothesis file against a reference");
  c_bleu->add_option("--hyp", bl.hyp, "hypothesis, one sentence per line")->required()->check(CLI::ExistingFile);
  c_bleu->add_option("--ref", bl.ref, "reference, one sentence per line")->required()->check(CLI::ExistingFile);
  c_bleu->add_option("--lang", bl.lang, "tokenization language")->check(CLI::IsMember({"en", "zh"}));
  c_bleu->add_option("--n-max", bl.n_max, "highest n-gram order");
  c_bleu->add_option("--epsilon", bl.epsilon, "zero-match smoothing floor");
  c_bleu->add_flag("--no-bp", bl.no_bp, "disable the brevity penalty");
  c_bleu->add_flag("--sentence", bl.sentence, "one score per line instead of corpus BLEU");

  auto* c_run = app.add_subcommand("run", "whole pipeline as described by --config");

  CLI11_PARSE(app, argc, argv);

  try {
    log::set_format(log::parse_format(g.log_format));
    if (c_stats->parsed() && st.input.empty() && st.bitext_dir.empty()) throw Error("stats: give --input or --bitext-dir");
    const PipelineConfig base = base_config(g);
    if (c_ingest->parsed()) cmd_ingest(ingest);
    if (c_pre->parsed()) cmd_preprocess(pre, base);
    if (c_sbd->parsed()) cmd_sbd(sbd, base);
    if (c_align->parsed()) cmd_align(al, base);
    if (c_dedup->parsed()) cmd_dedup(dd);
    if (c_split->parsed()) cmd_split(sp, base);
    if (c_eval->parsed()) return cmd_eval(ev);
    if (c_stats->parsed()) cmd_stats(st);
    if (c_bleu->parsed()) cmd_bleu(bl);
    if (c_run->parsed()) {
      if (g.config.empty()) throw Error("run needs --config");
      cmd_run(base);
    }
  } catch (const std::exception& e) {
    log::error(e.what());
    return 1;
  }
  return 0;
}
