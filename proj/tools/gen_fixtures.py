#!/usr/bin/env python3
"""Generate the bundled fixture corpus.

Output is a pure function of SEED, so rerunning reproduces the checked-in
files byte for byte. Besides writing pages the script checks the corpus it
built against its own plain-Python view of the records (the manifest counts,
the keyword vocabulary and the four-paper filter).

usage: gen_fixtures.py [--out DIR] [--check]
"""

import argparse
import html
import json
import random
import re
import sys
import unicodedata
from pathlib import Path

SEED = 20230517
SITE = "https://aclanthology.org"
YEARS = [2019, 2020, 2021, 2022, 2023]

VENUES = [
    ("acl", "ACL", "acl_event"),
    ("emnlp", "EMNLP", "acl_event"),
    ("naacl", "NAACL", "acl_event"),
    ("coling", "COLING", "non_acl_event"),
    ("lrec", "LREC", "non_acl_event"),
]

ID_STEM = {"acl": "acl-long", "emnlp": "emnlp-main", "naacl": "naacl-main", "coling": "coling-1", "lrec": "lrec-1"}

ORDINAL = {2019: "57th", 2020: "58th", 2021: "59th", 2022: "60th", 2023: "61st"}
COLING_N = {2019: "27th", 2020: "28th", 2021: "28th", 2022: "29th", 2023: "30th"}
LREC_N = {2019: "11th", 2020: "12th", 2021: "12th", 2022: "13th", 2023: "14th"}

PLACES = ["Florence, Italy", "Online", "Punta Cana, Dominican Republic", "Dublin, Ireland", "Toronto, Canada",
          "Seattle, United States", "Marseille, France", "Gyeongju, Republic of Korea", "Singapore", None]

FIRST = ["Ana", "José", "Zoë", "Søren", "Chen", "Priya", "Mehmet", "Aoife", "Jürgen", "Inès", "Kwame", "Yuki",
         "Olga", "Raúl", "Nadia", "Tomás", "Amélie", "Bjørn", "Hana", "Luca", "Đorđe", "Ngozi"]
LAST = ["García", "Müller", "Tanaka", "Okafor", "Novák", "Dubois", "Kowalski", "Nguyễn", "Silva", "Haddad",
        "Lindqvist", "Rossi", "Petrov", "Ó Briain", "Schröder", "Patel", "Moreau", "Andersen", "Kim", "Zhang"]

ADJ = ["Robust", "Efficient", "Multilingual", "Low-Resource", "Contrastive", "Sparse", "Hierarchical",
       "Interpretable", "Cross-Lingual", "Few-Shot", "Unsupervised", "Scalable", "Faithful", "Adaptive"]
TASK = ["Machine Translation", "Named Entity Recognition", "Dependency Parsing", "Question Answering",
        "Summarization", "Sentiment Analysis", "Relation Extraction", "Speech Recognition", "Text Classification",
        "Coreference Resolution", "Semantic Parsing", "Morphological Tagging", "Dialogue State Tracking",
        "Lexical Simplification", "Data-to-Text Generation", "Grammatical Error Correction"]
METHOD = ["with Pretrained Encoders", "via Curriculum Learning", "using Graph Networks",
          "through Knowledge Distillation", "for Historical Documents", "under Domain Shift",
          "with Retrieval Augmentation", "& Active Learning", "without Parallel Data", "in Clinical Notes"]
ACRONYM = ["BLAZE", "TopoMT", "QuAKE", "LinGO", "SPARROW", "MorphNet", "TRIDENT", "ParaLex"]

SENTENCES = [
    "We propose a simple method that improves accuracy on three benchmarks.",
    "Experiments show gains of 2.1 points (p &lt; 0.05) over strong baselines.",
    "Our analysis reveals that <i>annotation</i> noise explains most remaining errors.",
    "We release code and data to support future work.",
    "The approach transfers to twelve languages with minimal supervision.",
    "A human study confirms the improvements are perceptible to annotators.",
    "We further describe the limitations of current datasets &amp; tooling.",
]

KEYWORD_ALL = ["story generation"]
KEYWORD_ANY = ["event", "persona", "coherence", "metrics"]
FORBIDDEN = KEYWORD_ALL + KEYWORD_ANY
FILTER_VENUES = {"acl", "emnlp", "naacl"}
FILTER_YEARS = (2021, 2023)

TARGETS = [
    {
        "venue": "acl", "year": 2021,
        "title": "Long Text Generation by Modeling Sentence-Level and Discourse-Level Coherence",
        "authors": ["Jian Guan", "Xiaoxi Mao", "Changjie Fan", "Zitao Liu", "Wenbiao Ding", "Minlie Huang"],
        "abstract": "Generating long and coherent text remains difficult for neural models. "
                    "We study story generation and related long-form tasks with sentence-level and "
                    "discourse-level training signals.",
        "bibkey": "guan-etal-2021-long", "pdf": True,
    },
    {
        "venue": "acl", "year": 2021,
        "title": "OpenMEVA: A Benchmark for Evaluating Open-ended Story Generation Metrics",
        "authors": ["Jian Guan", "Zhexin Zhang", "Zhuoer Feng", "Zitao Liu", "Wenbiao Ding", "Xiaoxi Mao",
                    "Changjie Fan", "Minlie Huang"],
        "abstract": "We present a benchmark that measures how well automatic scores agree with human "
                    "judgements of generated stories.",
        "bibkey": "guan-etal-2021-openmeva", "pdf": False,
    },
    {
        "venue": "emnlp", "year": 2022,
        "title": "EtriCA: Event-Triggered Context-Aware Story Generation Augmented by Cross Attention",
        "authors": ["Chen Tang", "Chenghua Lin", "Henglin Huang", "Frank Guerin", "Zhihao Zhang"],
        "abstract": "We condition a neural generator on leading context and a sequence of trigger "
                    "representations fused by cross attention.",
        "bibkey": "tang-etal-2022-etrica", "pdf": True,
    },
    {
        "venue": "naacl", "year": 2022,
        "title": "Persona-Guided Planning for Controlling the Protagonist's Persona in Story Generation",
        "authors": ["Zhexin Zhang", "Jiaxin Wen", "Jian Guan", "Minlie Huang"],
        "abstract": "We plan protagonist behaviour from a short description before writing each sentence.",
        "bibkey": "zhang-etal-2022-persona", "pdf": True,
    },
]

NEAR_MISSES = [
    ("acl", 2020, "Story Generation with Event Graphs and Plot Skeletons",
     "Plot skeletons guide a generator through long narratives."),
    ("coling", 2022, "Persona-Consistent Story Generation for Open-Domain Chatbots",
     "Chatbots that tell tales should keep a stable character."),
    ("emnlp", 2021, "Controllable Story Generation via Plot Planning",
     "A planner proposes outlines that a decoder then realises."),
    ("naacl", 2022, "Event Extraction with Persona Cues and Discourse Coherence Metrics",
     "We extract happenings from news with speaker cues."),
    ("naacl", 2023, "Generation of Story Endings from Event Chains",
     "Endings are predicted from chains of narrative happenings."),
    ("lrec", 2021, "A Corpus of Children's Tales for Narrative Research",
     "The corpus supports story generation studies and coherence annotation."),
    ("acl", 2019, "STORY GENERATION AND EVENT PLANNING: A SURVEY",
     "We survey planning-based narrative systems."),
    ("emnlp", 2023, "Storytelling Agents with Distinct Personalities",
     "Agents narrate with stable character traits."),
    ("acl", 2023, "Revisiting Automatic Summarization Metrics",
     "We re-evaluate summary scoring functions."),
]

EDITORIAL = "Preface"


def slug(name):
    return re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")


def ascii_fold(s):
    return "".join(c for c in unicodedata.normalize("NFKD", s) if not unicodedata.combining(c))


def entity_encode(text, rng):
    """Escape markup characters; sometimes write non-ASCII letters as numeric references."""
    out = []
    for c in text:
        if c in "&<>\"'":
            out.append({"&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;", "'": "&#39;"}[c])
        elif ord(c) > 127 and rng.random() < 0.3:
            out.append("&#%d;" % ord(c))
        else:
            out.append(c)
    return "".join(out)


def volume_title(venue, year):
    if venue == "acl":
        return f"Proceedings of the {ORDINAL[year]} Annual Meeting of the Association for Computational Linguistics"
    if venue == "emnlp":
        return f"Proceedings of the {year} Conference on Empirical Methods in Natural Language Processing"
    if venue == "naacl":
        return (f"Proceedings of the {year} Conference of the North American Chapter of the Association "
                f"for Computational Linguistics")
    if venue == "coling":
        base = f"Proceedings of the {COLING_N[year]} International Conference on Computational Linguistics"
        return base + ": Tutorial Abstracts" if year == 2020 else base
    return f"Proceedings of the {LREC_N[year]} Language Resources and Evaluation Conference"


class Corpus:
    def __init__(self):
        self.rng = random.Random(SEED)
        self.titles = set()
        self.counters = {}
        self.pages = {}  # (venue, year) -> list of page entry lists

    def next_id(self, venue, year):
        key = (venue, year)
        self.counters[key] = self.counters.get(key, 0) + self.rng.randint(1, 9)
        return f"{year}.{ID_STEM[venue]}.{self.counters[key]}"

    def random_name(self):
        return f"{self.rng.choice(FIRST)} {self.rng.choice(LAST)}"

    def random_title(self):
        while True:
            t = f"{self.rng.choice(ADJ)} {self.rng.choice(TASK)} {self.rng.choice(METHOD)}"
            if self.rng.random() < 0.25:
                t = f"{self.rng.choice(ACRONYM)}: {t}"
            if self.rng.random() < 0.1:
                t = t.replace(" for ", " for Speakers' ", 1) if " for " in t else t + " Revisited"
            if t not in self.titles:
                self.titles.add(t)
                return t

    def random_abstract(self):
        picks = self.rng.sample(SENTENCES, self.rng.randint(2, 4))
        return " ".join(picks)

    def make_record(self, venue, year, title, authors, abstract_html, bibkey=None, pdf=True):
        anthology_id = self.next_id(venue, year)
        return {
            "anthology_id": anthology_id,
            "title": title,
            "authors": authors,
            "abstract_html": abstract_html,
            "pdf": pdf,
            "bibkey": bibkey,
            "venue": venue,
            "year": year,
            "author_style": self.rng.choice(["anchors", "list", "semicolons"]),
            "markup_title": self.rng.random() < 0.2,
        }

    def random_record(self, venue, year):
        authors = [self.random_name() for _ in range(self.rng.randint(1, 5))]
        abstract = self.random_abstract() if self.rng.random() < 0.7 else None
        bibkey = None
        title = self.random_title()
        if self.rng.random() < 0.6:
            first = re.sub(r"[^a-z0-9]", "", ascii_fold(title.split()[0]).lower())
            surname = re.sub(r"[^a-z0-9]", "", ascii_fold(authors[0].split()[-1]).lower())
            bibkey = f"{surname}-etal-{year}-{first}"
        return self.make_record(venue, year, title, authors, abstract, bibkey, pdf=self.rng.random() < 0.8)

    def build(self):
        for venue, _, _ in VENUES:
            for year in YEARS:
                entries = []
                count = 5 if (venue, year) == ("acl", 2022) else self.rng.randint(3, 5)
                for _ in range(count):
                    entries.append(self.random_record(venue, year))
                self.pages[(venue, year)] = entries
        for t in TARGETS:
            rec = self.make_record(t["venue"], t["year"], t["title"], t["authors"], html.escape(t["abstract"]),
                                   t["bibkey"], t["pdf"])
            page = self.pages[(t["venue"], t["year"])]
            page.insert(self.rng.randint(0, len(page)), rec)
        for venue, year, title, abstract in NEAR_MISSES:
            rec = self.make_record(venue, year, title, [self.random_name() for _ in range(2)], html.escape(abstract))
            page = self.pages[(venue, year)]
            page.insert(self.rng.randint(0, len(page)), rec)

        # acl-2022: exactly six entries, one of them without a title, one with "A, B and C" authors.
        acl22 = self.pages[("acl", 2022)][:5]
        abc = acl22[1]
        abc["authors"] = ["Amélie Dubois", "Kwame Okafor", "Yuki Tanaka"]
        abc["author_style"] = "list"
        untitled = self.make_record("acl", 2022, None, ["Olga Petrov"], self.random_abstract())
        acl22.insert(3, untitled)
        self.pages[("acl", 2022)] = acl22

        # An editorial entry with no authors.
        self.pages[("lrec", 2020)].insert(0, self.make_record("lrec", 2020, EDITORIAL, [], None, pdf=True))
        # Whitespace noise inside one author name.
        self.pages[("emnlp", 2019)][0]["authors"][0] = "  José \n  García  "

    def records(self):
        for (venue, year), entries in sorted(self.pages.items()):
            for e in entries:
                if e["title"] is not None:
                    yield e


def plain(markup):
    """Text of an HTML fragment: tags dropped, entities decoded, whitespace collapsed."""
    return " ".join(html.unescape(re.sub(r"<[^>]+>", "", markup)).split())


def clean_name(name):
    return " ".join(name.split())


def title_markup(rec, rng):
    words = rec["title"].split(" ")
    escaped = [entity_encode(w, rng) for w in words]
    if rec["markup_title"] and len(words) > 2:
        i = 1 + (len(words[0]) % (len(words) - 1))
        escaped[i] = f'<span class="acl-fixed-case">{escaped[i]}</span>' if i % 2 else f"<i>{escaped[i]}</i>"
    return " ".join(escaped)


def authors_markup(rec, rng):
    names = rec["authors"]
    if not names:
        return ""
    style = rec["author_style"]
    if style == "anchors":
        parts = [f'<a class="aah-author" href="{SITE}/people/{slug(ascii_fold(clean_name(n)))}/">'
                 f"{entity_encode(n, rng)}</a>" for n in names]
        return f'<span class="aah-authors">{", ".join(parts)}</span>'
    encoded = [entity_encode(n, rng) for n in names]
    if style == "list":
        text = encoded[0] if len(encoded) == 1 else ", ".join(encoded[:-1]) + " and " + encoded[-1]
    else:
        text = "; ".join(encoded)
    return f'<span class="aah-authors">{text}</span>'


def entry_markup(rec, rng):
    aid = rec["anthology_id"]
    lines = ['    <div class="aah-paper">']
    if rec["title"] is not None:
        lines.append(f'      <a class="aah-title" href="{SITE}/{aid}/">{title_markup(rec, rng)}</a>')
    am = authors_markup(rec, rng)
    if am:
        lines.append(f"      {am}")
    if rec["pdf"] and rec["title"] is not None:
        lines.append(f'      <a class="aah-pdf" href="{SITE}/{aid}.pdf">pdf</a>')
    if rec["bibkey"]:
        lines.append(f'      <span class="aah-bibkey">{rec["bibkey"]}</span>')
    if rec["abstract_html"]:
        lines.append(f'      <div class="aah-abstract">{rec["abstract_html"]}</div>')
    lines.append("    </div>")
    return "\n".join(lines)


def page(title, body):
    return (f'<!DOCTYPE html>\n<html lang="en">\n<head>\n<meta charset="utf-8">\n<title>{html.escape(title)}</title>\n'
            f"</head>\n<body>\n{body}\n</body>\n</html>\n")


def index_page(venues, duplicate=None):
    sections = []
    for category, heading in (("acl_event", "ACL Events"), ("non_acl_event", "Non-ACL Events")):
        items = [f'    <li><a class="aah-venue" href="/venues/{k}.html">{name}</a></li>'
                 for k, name, c in venues if c == category]
        if duplicate and duplicate[2] == category:
            items.append(f'    <li><a class="aah-venue" href="/venues/{duplicate[0]}.html">{duplicate[1]}</a></li>')
        sections.append(f'<section class="aah-category" data-category="{category}">\n  <h2>{heading}</h2>\n'
                        f"  <ul>\n" + "\n".join(items) + "\n  </ul>\n</section>")
    return page("Anthology", "<h1>Anthology</h1>\n" + "\n".join(sections))


def venue_page(venue, name, years, rng):
    groups = []
    descs = {}
    for year in sorted(years, reverse=True):
        desc = rng.choice(PLACES)
        descs[year] = desc
        d = f'\n  <p class="aah-desc">{html.escape(desc)}</p>' if desc else ""
        groups.append(f'<div class="aah-year" data-year="{year}">\n  <h2>{year}</h2>\n'
                      f'  <a class="aah-volume" href="/proceedings/{venue}-{year}.html">'
                      f"{html.escape(volume_title(venue, year))}</a>{d}\n</div>")
    return page(f"{name} venue", f"<h1>{name}</h1>\n" + "\n".join(groups)), descs


def proceedings_page(venue, year, entries, rng, next_href=None):
    body = [f"<h1>{html.escape(volume_title(venue, year))}</h1>", '<div id="aah-papers">']
    body += [entry_markup(e, rng) for e in entries]
    body.append("</div>")
    if next_href:
        body.append(f'<nav><a class="aah-next" href="{next_href}">next page</a></nav>')
    return page(volume_title(venue, year), "\n".join(body))


def paper_page(rec, rng):
    aid = rec["anthology_id"]
    body = ['<article class="aah-paper-page">',
            f'  <h2><a class="aah-title" href="{SITE}/{aid}/">{title_markup(rec, rng)}</a></h2>',
            f"  {authors_markup(rec, rng)}",
            f'  <a class="aah-pdf" href="{SITE}/{aid}.pdf">pdf</a>']
    if rec["bibkey"]:
        body.append(f'  <span class="aah-bibkey">{rec["bibkey"]}</span>')
    if rec["abstract_html"]:
        body.append(f'  <div class="aah-abstract">{rec["abstract_html"]}</div>')
    body.append("</article>")
    return page(rec["title"], "\n".join(body))


def spot_checks(records, rng, n=3):
    checks = []
    for rec in rng.sample(records, min(n, len(records))):
        aid = rec["anthology_id"]
        checks.append({"anthology_id": aid, "field": "title", "value": rec["title"]})
        field = rng.choice(["authors", "abstract", "pdf_url", "bibkey", "page_url"])
        value = None
        if field == "authors" and rec["authors"]:
            value = "; ".join(clean_name(a) for a in rec["authors"])
        elif field == "abstract" and rec["abstract_html"]:
            value = plain(rec["abstract_html"])
        elif field == "pdf_url" and rec["pdf"]:
            value = f"{SITE}/{aid}.pdf"
        elif field == "bibkey" and rec["bibkey"]:
            value = rec["bibkey"]
        elif field == "page_url":
            value = f"{SITE}/{aid}/"
        if value is not None:
            checks.append({"anthology_id": aid, "field": field, "value": value})
    return checks


def text_of(rec):
    return (rec["title"] + " " + (plain(rec["abstract_html"]) if rec["abstract_html"] else "")).casefold()


def target_filter(rec):
    hay = text_of(rec)
    return (FILTER_YEARS[0] <= rec["year"] <= FILTER_YEARS[1] and rec["venue"] in FILTER_VENUES
            and all(k in hay for k in KEYWORD_ALL) and any(k in hay for k in KEYWORD_ANY))


def verify(corpus, manifest):
    records = list(corpus.records())
    ids = [r["anthology_id"] for r in records]
    assert len(ids) == len(set(ids)), "duplicate anthology ids"
    special = {t["title"] for t in TARGETS} | {n[2] for n in NEAR_MISSES}
    for r in records:
        if r["title"] in special:
            continue
        hay = text_of(r)
        bad = [k for k in FORBIDDEN if k in hay]
        assert not bad, f"distractor {r['anthology_id']} contains {bad}"
    hits = [r["title"] for r in records if target_filter(r)]
    assert sorted(hits) == sorted(t["title"] for t in TARGETS), hits
    distractors = len(records) - len(TARGETS)
    assert distractors >= 60, distractors
    total = sum(p["expected_records"] for p in manifest["pages"]
                if p["kind"] == "proceedings" and p["path"].startswith("proceedings/"))
    assert total == len(records), (total, len(records))
    acl22 = corpus.pages[("acl", 2022)]
    assert len(acl22) == 6 and sum(e["title"] is None for e in acl22) == 1
    return len(records), distractors


def generate(out):
    corpus = Corpus()
    corpus.build()
    rng = random.Random(SEED + 1)
    files = {}
    pages = []

    files["index.html"] = index_page(VENUES)
    pages.append({"path": "index.html", "kind": "index", "expected_records": len(VENUES), "spot_checks": []})

    for venue, name, _ in VENUES:
        text, descs = venue_page(venue, name, YEARS, rng)
        path = f"venues/{venue}.html"
        files[path] = text
        checks = []
        for year in (YEARS[0], YEARS[-1]):
            conf_id = f"{venue}-{year}"
            checks.append({"anthology_id": conf_id, "field": "title", "value": volume_title(venue, year)})
            checks.append({"anthology_id": conf_id, "field": "url",
                           "value": f"fixture://corpus/proceedings/{venue}-{year}.html"})
            if descs[year]:
                checks.append({"anthology_id": conf_id, "field": "desc", "value": descs[year]})
        pages.append({"path": path, "kind": "venue", "expected_records": len(YEARS), "spot_checks": checks})

    for venue, _, _ in VENUES:
        for year in YEARS:
            entries = corpus.pages[(venue, year)]
            split = (venue, year) == ("lrec", 2022)
            first, rest = (entries[:3], entries[3:]) if split else (entries, [])
            path = f"proceedings/{venue}-{year}.html"
            nxt = f"/proceedings/{venue}-{year}-page2.html" if split else None
            files[path] = proceedings_page(venue, year, first, rng, nxt)
            titled = [e for e in first if e["title"] is not None]
            checks = spot_checks(titled, rng)
            for e in titled:
                if e["author_style"] == "list" and len(e["authors"]) == 3:
                    checks.append({"anthology_id": e["anthology_id"], "field": "authors",
                                   "value": "; ".join(clean_name(a) for a in e["authors"])})
                    break
            pages.append({"path": path, "kind": "proceedings", "expected_records": len(titled),
                          "spot_checks": checks})
            if split:
                path2 = f"proceedings/{venue}-{year}-page2.html"
                files[path2] = proceedings_page(venue, year, rest, rng)
                pages.append({"path": path2, "kind": "proceedings", "expected_records": len(rest),
                              "spot_checks": spot_checks(rest, rng, 1)})

    for rec in (next(r for r in corpus.records() if r["title"] == TARGETS[2]["title"]),
                next(r for r in corpus.records() if r["abstract_html"] and r["bibkey"] and r["authors"])):
        path = f"papers/{rec['anthology_id']}.html"
        files[path] = paper_page(rec, rng)
        checks = [{"anthology_id": rec["anthology_id"], "field": "title", "value": rec["title"]},
                  {"anthology_id": rec["anthology_id"], "field": "bibkey", "value": rec["bibkey"]}]
        pages.append({"path": path, "kind": "paper", "expected_records": 1, "spot_checks": checks})

    dup = VENUES[0]
    files["edge/index-duplicate.html"] = index_page(VENUES, duplicate=dup)
    pages.append({"path": "edge/index-duplicate.html", "kind": "index", "expected_records": len(VENUES),
                  "spot_checks": []})
    files["edge/index-empty-non-acl.html"] = index_page([v for v in VENUES if v[2] == "acl_event"])
    pages.append({"path": "edge/index-empty-non-acl.html", "kind": "index", "expected_records": 3,
                  "spot_checks": []})
    single, _ = venue_page("acl", "ACL", [2022], rng)
    files["edge/venue-single-year.html"] = single
    pages.append({"path": "edge/venue-single-year.html", "kind": "venue", "expected_records": 1,
                  "spot_checks": [{"anthology_id": "acl-2022", "field": "title", "value": volume_title("acl", 2022)}]})
    files["edge/proceedings-empty.html"] = proceedings_page("acl", 2022, [], rng)
    pages.append({"path": "edge/proceedings-empty.html", "kind": "proceedings", "expected_records": 0,
                  "spot_checks": []})

    manifest = {"pages": pages}
    n, distractors = verify(corpus, manifest)
    files["manifest.json"] = json.dumps(manifest, indent=2, ensure_ascii=False) + "\n"

    for rel, text in files.items():
        target = out / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8", newline="\n")
    return files, n, distractors


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "fixtures")
    ap.add_argument("--check", action="store_true", help="fail if the files on disk differ from a fresh build")
    args = ap.parse_args()
    if args.check:
        import tempfile
        with tempfile.TemporaryDirectory() as tmp:
            files, _, _ = generate(Path(tmp))
        stale = [rel for rel, text in files.items()
                 if not (args.out / rel).exists() or (args.out / rel).read_text(encoding="utf-8") != text]
        if stale:
            print("stale fixtures: " + ", ".join(stale), file=sys.stderr)
            return 1
        print(f"{len(files)} fixture files up to date")
        return 0
    files, n, distractors = generate(args.out)
    print(f"wrote {len(files)} files to {args.out}: {n} records, {distractors} distractors")
    return 0


if __name__ == "__main__":
    sys.exit(main())
