#!/usr/bin/env python3
"""Regenerates the checked-in test fixtures under tests/data.

Everything is derived from fixed seeds, so rerunning the script reproduces
the files byte for byte.

    python3 tools/make_fixtures.py [--out tests/data]
"""

import argparse
import os
import random
import shutil

# ---------------------------------------------------------------------------
# Shared writers


def write_text(path, lines):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines))
        if lines:
            f.write("\n")


def write_collection(root, docs):
    """docs: list of (id, pair_id, lang, date, article_type, paragraphs)."""
    meta = ["id\tpair_id\tlanguage\tdate\tarticle_type"]
    for doc_id, pair_id, lang, date, kind, paragraphs in docs:
        meta.append("\t".join([doc_id, pair_id, lang, date, kind]))
        write_text(os.path.join(root, doc_id + ".txt"), paragraphs)
    write_text(os.path.join(root, "meta.tsv"), meta)


def bead_line(src, tgt, note=""):
    fields = [",".join(map(str, src)), ",".join(map(str, tgt)), "NA", "gold"]
    if note:
        fields.append(note)
    return "\t".join(fields)


# ---------------------------------------------------------------------------
# Gold file with the published bead-type counts


def make_gold(out):
    counts = [((0, 1), 10), ((1, 0), 11), ((1, 1), 964), ((1, 2), 17), ((2, 1), 15), ((2, 2), 1), ((2, 3), 1)]
    rng = random.Random(2)
    shapes = [shape for shape, n in counts for _ in range(n)]
    rng.shuffle(shapes)
    lines = []
    i = j = 0
    for m, n in shapes:
        note = "clause split" if (m, n) in ((1, 2), (2, 1)) and rng.random() < 0.3 else ""
        lines.append(bead_line(range(i, i + m), range(j, j + n), note))
        i += m
        j += n
    write_text(os.path.join(out, "gold_reference_types.tsv"), ["#lengths\t%d\t%d" % (i, j)] + lines)


# ---------------------------------------------------------------------------
# Parallel sentence bank for the article-shaped fixtures

BANK = [
    ("我们进行了一项随机、双盲、安慰剂对照试验。", "We conducted a randomized, double-blind, placebo-controlled trial."),
    ("共有1204名患者接受了随机分组。", "A total of 1204 patients underwent randomization."),
    ("主要终点是24周时的血红蛋白水平。", "The primary end point was the hemoglobin level at week 24."),
    ("与安慰剂组相比，腹泻在帕妥珠单抗组较为常见。", "Diarrhea was more common with pertuzumab than with placebo."),
    ("试验组的死亡率较低。", "Mortality was lower in the trial group."),
    ("两组的严重不良事件发生率相似。", "The incidence of serious adverse events was similar in the two groups."),
    ("中位随访时间为3.5年。", "The median follow-up was 3.5 years."),
    ("该药物耐受性良好。", "The drug was well tolerated."),
    ("我们评估了胰岛素联合治疗的安全性和疗效。", "We evaluated the safety and efficacy of combination therapy with insulin."),
    ("次要终点包括住院和全因死亡。", "Secondary end points included hospitalization and death from any cause."),
    ("在亚组分析中观察到了一致的结果。", "Consistent results were observed in subgroup analyses."),
    ("该研究受到样本量的限制。", "The study was limited by its sample size."),
    ("需要进一步研究来确认这些发现。", "Further studies are needed to confirm these findings."),
    ("患者被随机分配接受治疗或观察。", "Patients were randomly assigned to treatment or observation."),
    ("治疗组的缓解率为62%。", "The response rate in the treatment group was 62%."),
    ("对照组的缓解率为35%。", "The response rate in the control group was 35%."),
    ("最常见的不良事件是恶心和疲劳。", "The most common adverse events were nausea and fatigue."),
    ("未观察到新的安全性信号。", "No new safety signals were observed."),
    ("该疗法延长了无进展生存期。", "The therapy prolonged progression-free survival."),
    ("总生存期的数据尚不成熟。", "Data on overall survival were immature."),
    ("我们纳入了来自12个国家的患者。", "We enrolled patients from 12 countries."),
    ("基线特征在两组间均衡。", "Baseline characteristics were balanced between the groups."),
    ("随访期间有8名患者失访。", "Eight patients were lost to follow-up."),
    ("该结果在敏感性分析中保持稳定。", "The results were robust in sensitivity analyses."),
    ("Smith博士领导了数据监查委员会。", "Dr. Smith chaired the data and safety monitoring board."),
    ("样本量计算基于既往研究。", "The sample size was calculated on the basis of previous studies."),
    ("疫苗的有效性为94.1%。", "Vaccine efficacy was 94.1%."),
    ("在老年患者中也观察到了获益。", "A benefit was also observed among older patients."),
    ("该试验提前终止。", "The trial was stopped early."),
    ("我们的研究结果支持这一治疗策略。", "Our findings support this treatment strategy."),
    ("感染率在两组之间没有显著差异。", "Infection rates did not differ significantly between the groups."),
    ("所有分析均按意向治疗原则进行。", "All analyses were performed according to the intention-to-treat principle."),
    ("约三分之一的患者出现了皮疹。", "Approximately one third of the patients had a rash."),
    ("血压在第12周时显著下降。", "Blood pressure decreased significantly at week 12."),
    ("这些数据来自一项国际注册研究。", "These data come from an international registry."),
    ("我们采用了Cox比例风险模型。", "We used a Cox proportional-hazards model."),
    ("肾功能在整个研究期间保持稳定。", "Kidney function remained stable throughout the study."),
    ("该发现具有重要的临床意义。", "This finding has important clinical implications."),
    ("研究者对治疗分配不知情。", "Investigators were unaware of the treatment assignments."),
    ("住院时间缩短了2天。", "The length of hospital stay was shortened by 2 days."),
]

# Sentences that carry a citation glued to the English period, and the
# Chinese rendering with the citation before the full stop.
CITED = [
    ("尚无在全基因组范围内具有显著性的重复位点报道12-14。", "No replicated loci with genomewide significance have been reported.12-14"),
    ("既往研究显示了类似的结果5,6。", "Previous studies have shown similar results.5,6"),
    ("这一机制已在动物模型中得到证实8。", "This mechanism has been confirmed in animal models.8"),
    ("此类感染在免疫抑制患者中较为常见3-5。", "Such infections are common among immunosuppressed patients.3-5"),
    ("该药物已获批用于成人患者21。", "The drug has been approved for use in adults.21"),
]

FUNDING = [
    ("（由霍夫曼-罗氏公司资助；ClinicalTrials.gov注册号为NCT01358877）", "(Funded by F. Hoffmann–La Roche; ClinicalTrials.gov number, NCT01358877.)."),
    ("（由美国国立卫生研究院资助；ClinicalTrials.gov注册号为NCT02465060）", "(Funded by the National Institutes of Health; ClinicalTrials.gov number, NCT02465060.)."),
    ("（由诺和诺德公司资助；ClinicalTrials.gov注册号为NCT03548935）", "(Funded by Novo Nordisk; ClinicalTrials.gov number, NCT03548935.)."),
]

ZH_BOILERPLATE = ["翻译：王明", "校对：李华", "图1. 试验设计和患者分组。", "表2. 不良事件。", "参考文献"]
EN_BOILERPLATE = ["Quick take (video summary)", "Figure 1. Trial Design and Patient Groups.", "Table 2. Adverse Events.",
                  "Visual Abstract", "References"]


def article_paragraphs(rng, n_paragraphs, with_citations):
    """Paragraphs as lists of (zh sentence, en sentence) pairs."""
    paragraphs = []
    for p in range(n_paragraphs):
        sents = [rng.choice(BANK) for _ in range(rng.randint(2, 4))]
        if with_citations and rng.random() < 0.6:
            sents.insert(rng.randrange(len(sents)), rng.choice(CITED))
        if with_citations and rng.random() < 0.3:
            zh_fund, en_fund = rng.choice(FUNDING)
            k = rng.randrange(len(sents))
            zh, en = sents[k]
            sents[k] = (zh[:-1] + zh_fund + "。", en + " " + en_fund)
        paragraphs.append(sents)
    return paragraphs


def join_zh(sents):
    return "".join(z for z, _ in sents)


def join_en(sents):
    return " ".join(e for _, e in sents)


# ---------------------------------------------------------------------------
# 12-article pipeline fixture


def make_pipeline(out):
    rng = random.Random(12)
    root = os.path.join(out, "pipeline")
    docs = []
    kinds = ["Original Article", "Journal Watch", "Clinical Practice", "Perspective"]
    for a in range(12):
        pair = "art%02d" % (a + 1)
        date = "2019-%02d-%02d" % (1 + a % 12, 1 + (a * 7) % 27)
        if a == 11:
            date = "2019-%02d-%02d" % (1 + 10 % 12, 1 + (10 * 7) % 27)  # same day as art11
        body = article_paragraphs(rng, rng.randint(3, 5), True)
        zh = ["摘要"] + [join_zh(p) for p in body]
        en = ["Abstract"] + [join_en(p) for p in body]
        # Boilerplate, more of it on the Chinese side.
        for text in rng.sample(ZH_BOILERPLATE, 3):
            zh.insert(rng.randrange(1, len(zh) + 1), text)
        en.insert(rng.randrange(1, len(en) + 1), rng.choice(EN_BOILERPLATE))
        # Chinese break before a citation: the trailing "12-14。" lands on its own line.
        k = rng.choice([i for i, p in enumerate(zh) if len(p) > 20])
        if rng.random() < 0.7:
            zh[k:k + 1] = [zh[k][:-1], "12-14。"]
        # English hyperlink phrase splitting a paragraph.
        k = rng.choice([i for i, p in enumerate(en) if len(p.split(" ")) > 6])
        words = en[k].split(" ")
        cut = len(words) // 2
        en[k:k + 1] = [" ".join(words[:cut]), "open in new tab", " ".join(words[cut:])]
        kind = kinds[a % len(kinds)]
        docs.append((pair + "_zh", pair, "zh", date, kind, zh))
        docs.append((pair + "_en", pair, "en", date, kind, en))
    write_collection(root, docs)
    write_text(os.path.join(root, "config.json"), [
        "{",
        '  "input": "meta.tsv",',
        '  "output": "../../../build/pipeline_out",',
        '  "aligner": "moore",',
        '  "sbd": "rules",',
        '  "split": {"test": 20, "dev": 15},',
        '  "jobs": 1',
        "}",
    ])


# ---------------------------------------------------------------------------
# Citation-heavy segmentation fixture


def make_sbd(out):
    rng = random.Random(8)
    root = os.path.join(out, "sbd")
    docs = []
    for a in range(12):
        pair = "cite%02d" % (a + 1)
        date = "2020-01-%02d" % (a + 1)
        body = article_paragraphs(rng, rng.randint(5, 8), True)
        docs.append((pair + "_zh", pair, "zh", date, "Original Article", [join_zh(p) for p in body]))
        docs.append((pair + "_en", pair, "en", date, "Original Article", [join_en(p) for p in body]))
    write_collection(root, docs)


# ---------------------------------------------------------------------------
# Alignment fixture: synthetic language pair with a word-for-word lexicon,
# gold alignments, and graded "MT" in both directions.

SYLLABLES = ["ba", "ko", "ri", "mu", "te", "sa", "lo", "ne", "vi", "da", "pe", "gu", "zo", "fi", "ha", "ju",
             "ke", "ly", "wo", "ce", "xa", "qi", "ny", "ro"]
FILLERS = ["the", "of", "a"]


def make_lexicon(rng, size):
    chars = rng.sample(range(0x4E00, 0x9FA5), size)
    words = set()
    en = []
    while len(en) < size:
        w = "".join(rng.choice(SYLLABLES) for _ in range(rng.choice([1, 2, 2, 3, 3, 4, 5])))
        if w not in words and w not in FILLERS:
            words.add(w)
            en.append(w)
    return [chr(c) for c in chars], en


def zipf_choice(rng, n):
    # Rank r with probability ~ 1/(r+3).
    weights = ZIPF_CACHE.setdefault(n, [1.0 / (r + 3) for r in range(n)])
    return rng.choices(range(n), weights=weights)[0]


ZIPF_CACHE = {}


def make_align(out):
    rng = random.Random(6)
    root = os.path.join(out, "align")
    zh_vocab, en_vocab = make_lexicon(rng, 500)

    def sentence():
        return [zipf_choice(rng, len(zh_vocab)) for _ in range(rng.randint(3, 24))]

    def render_zh(ids):
        return "".join(zh_vocab[i] for i in ids) + "。"

    def render_en(ids):
        words = []
        for i in ids:
            if rng.random() < 0.25:
                words.append(rng.choice(FILLERS))
            words.append(en_vocab[i])
        return " ".join(words) + " ."

    def mt_en(ids, quality):
        words = [en_vocab[i] if rng.random() < quality else en_vocab[zipf_choice(rng, len(en_vocab))] for i in ids]
        return " ".join(words) + " ."

    def mt_zh(ids, quality):
        return "".join(zh_vocab[i] if rng.random() < quality else zh_vocab[zipf_choice(rng, len(zh_vocab))]
                       for i in ids) + "。"

    shapes = [((1, 1), 0.80), ((1, 0), 0.04), ((0, 1), 0.04), ((1, 2), 0.05), ((2, 1), 0.05), ((2, 2), 0.02)]
    docs = []
    for d in range(12):
        pair = "align%02d" % (d + 1)
        zh, en, zh_ids, en_ids, gold = [], [], [], [], []
        n_beads = rng.randint(60, 90)
        for _ in range(n_beads):
            (m, n) = rng.choices([s for s, _ in shapes], weights=[w for _, w in shapes])[0]
            content = [sentence() for _ in range(max(m, n))]
            # Content shared by the bead, cut into m zh and n en sentences.
            flat = [w for c in content for w in c]
            zh_parts = split_ids(rng, flat, m)
            en_parts = split_ids(rng, flat, n)
            src = list(range(len(zh), len(zh) + m))
            tgt = list(range(len(en), len(en) + n))
            for part in zh_parts:
                zh.append(render_zh(part))
                zh_ids.append(part)
            for part in en_parts:
                en.append(render_en(part))
                en_ids.append(part)
            gold.append(bead_line(src, tgt))
        gold.insert(0, "#lengths\t%d\t%d" % (len(zh), len(en)))
        write_text(os.path.join(root, "gold", pair + ".tsv"), gold)
        write_text(os.path.join(root, "sentences", pair + "_zh.txt"), ["0\t" + s for s in zh])
        write_text(os.path.join(root, "sentences", pair + "_en.txt"), ["0\t" + s for s in en])
        write_text(os.path.join(root, "mt_zh2en", pair + "_zh.txt"), [mt_en(ids, 0.55) for ids in zh_ids])
        write_text(os.path.join(root, "mt_en2zh", pair + "_en.txt"), [mt_zh(ids, 0.45) for ids in en_ids])
        docs.append((pair + "_zh", pair, "zh", "2021-02-%02d" % (d + 1), "Original Article", ["".join(zh)]))
        docs.append((pair + "_en", pair, "en", "2021-02-%02d" % (d + 1), "Original Article", [" ".join(en)]))
    write_collection(os.path.join(root, "documents"), docs)


def split_ids(rng, ids, parts):
    if parts == 0:
        return []
    if parts == 1 or len(ids) < 2:
        return [ids] if parts == 1 else [ids[:1], ids[1:] or ids[:1]]
    cuts = sorted(rng.sample(range(1, len(ids)), parts - 1))
    bounds = [0] + cuts + [len(ids)]
    return [ids[bounds[k]:bounds[k + 1]] for k in range(parts)]


# ---------------------------------------------------------------------------


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    here = os.path.dirname(os.path.abspath(__file__))
    parser.add_argument("--out", default=os.path.join(here, "..", "tests", "data"))
    args = parser.parse_args()
    for sub in ("pipeline", "sbd", "align"):
        shutil.rmtree(os.path.join(args.out, sub), ignore_errors=True)
    make_gold(args.out)
    make_pipeline(args.out)
    make_sbd(args.out)
    make_align(args.out)


if __name__ == "__main__":
    main()
