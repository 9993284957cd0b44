"""Regenerate the bundled fixture corpora (deterministic).

Writes:
  src/biradscheck/data/fixture_corpus/     70 labeled reports, 10 per category,
                                           with category-specific vocabulary and
                                           no unsanctioned terms
  src/biradscheck/data/normalizer_fixture/ 25 reports embedding the curated
                                           unsanctioned-term occurrence counts
                                           (206 exact + 9 obfuscated variants)
                                           plus the span-exact gold.tsv

Run from the repo root: python3 scripts/gen_fixtures.py
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from biradscheck.corpus import parse_report
from biradscheck.normalizer import detect_unsanctioned
from biradscheck.resources import load_resources

DATA = ROOT / "src" / "biradscheck" / "data"

SIDES = ("left", "right")
LOCATIONS = ("upper outer", "upper inner", "lower outer", "lower inner")
SIZES = ("0.8", "1.2", "1.5", "2.1", "2.4", "3.0")

EXAMS = (
    "Bilateral screening mammogram.",
    "Diagnostic mammogram of the {side} breast.",
    "Bilateral diagnostic mammogram with tomosynthesis.",
)

HISTORIES = (
    "{age}-year-old woman presenting for routine screening.",
    "{age}-year-old woman with a palpable lump in the {side} breast.",
    "{age}-year-old woman returning for follow-up imaging.",
    "{age}-year-old woman with a family history of breast cancer.",
)

COMPARISONS = (
    "Compared with the prior examination.",
    "No prior studies are available.",
    "Comparison was made with films from last year.",
)

FINDINGS = {
    0: [
        "The study is technically limited by motion artifact.",
        "Additional spot compression views of the {side} breast are required.",
        "Magnification views are required to characterize the area in the {loc} quadrant.",
        "Prior examinations are unavailable for comparison.",
        "Evaluation is incomplete pending the prior films.",
        "A possible finding in the {loc} {side} breast requires additional imaging.",
        "Ultrasound correlation is required before final assessment.",
        "Recall for additional magnification and compression imaging.",
        "Assessment is deferred pending the additional views.",
    ],
    1: [
        "Both breasts are symmetric in appearance.",
        "The fibroglandular tissue is scattered and unremarkable.",
        "No mass or suspicious calcification is identified.",
        "The skin and nipple are unremarkable.",
        "There is no significant change from the prior examination.",
        "The breast parenchyma is stable in appearance.",
        "Routine screening is recommended in one year.",
        "The examination is negative.",
        "No dominant lesion is seen in either breast.",
    ],
    2: [
        "A calcified fibroadenoma is present in the {loc} {side} breast.",
        "Scattered vascular calcifications are noted bilaterally.",
        "There is an intramammary lymph node in the {loc} {side} breast.",
        "A benign-appearing oil cyst is seen in the subareolar region.",
        "Secretory calcifications are present bilaterally.",
        "Coarse popcorn calcifications are unchanged from the prior films.",
        "Benign rim calcifications are stable in the {side} breast.",
        "A fat-containing lesion consistent with a hamartoma is seen.",
        "Benign dystrophic calcifications are noted at the {loc} {side} breast.",
    ],
    3: [
        "A focal asymmetry is seen in the {loc} aspect of the {side} breast.",
        "Grouped punctate calcifications are noted in the {loc} {side} breast.",
        "The focal asymmetry is probably benign.",
        "A small oval circumscribed mass is seen at the {clock} o'clock position.",
        "Short interval follow-up is suggested for the {loc} {side} breast.",
        "Six month surveillance mammography is recommended.",
        "The grouped calcifications are probably benign.",
        "No interval change in the focal asymmetry since the prior study.",
        "The probably benign finding measures {size} cm. in diameter.",
    ],
    4: [
        "An irregular mass with indistinct margins is seen in the {loc} {side} breast.",
        "Amorphous calcifications are grouped in the {loc} {side} breast.",
        "There is a suspicious cluster of fine pleomorphic calcifications.",
        "The mass demonstrates indistinct margins on the compression views.",
        "Architectural distortion is noted in the {loc} {side} breast.",
        "A new irregular mass is seen measuring {size} cm. in greatest dimension.",
        "Stereotactic core biopsy is recommended for the suspicious calcifications.",
        "The grouped amorphous calcifications are suspicious.",
        "Ultrasound guided biopsy of the {side} breast mass is recommended.",
    ],
    5: [
        "A spiculated mass is present in the {loc} {side} breast.",
        "Fine linear branching calcifications extend toward the nipple.",
        "There is associated skin retraction overlying the mass.",
        "Nipple retraction is new since the prior examination.",
        "The spiculated mass is highly suggestive of malignancy.",
        "Associated axillary adenopathy is present on the {side}.",
        "Skin thickening overlies the {loc} {side} breast.",
        "The spiculated margins show surrounding tethering.",
        "Segmental fine linear calcifications are highly suspicious for malignancy.",
    ],
    6: [
        "The biopsy proven carcinoma is again seen in the {loc} {side} breast.",
        "A marker clip is present within the known carcinoma.",
        "The known malignancy is unchanged in size.",
        "There is partial response to neoadjuvant chemotherapy.",
        "The treated carcinoma has decreased in size.",
        "Residual tumor is present at the lumpectomy site.",
        "Post surgical changes are noted in the {side} breast.",
        "The pathology proven carcinoma measures {size} cm. in diameter.",
        "Skin staples overlie the recent lumpectomy site.",
    ],
}

IMPRESSIONS = {
    0: "Incomplete assessment. Additional imaging is required. BI-RADS category 0.",
    1: "Negative examination. BI-RADS category 1.",
    2: "Benign findings. BI-RADS category 2.",
    3: "Probably benign finding. Short interval follow-up suggested. BI-RADS category 3.",
    4: "Suspicious abnormality. Biopsy should be considered. BI-RADS category 4.",
    5: "Highly suggestive of malignancy. BI-RADS category 5.",
    6: "Known biopsy proven malignancy. BI-RADS category 6.",
}


def fill(template: str, rng: random.Random) -> str:
    return template.format(
        side=rng.choice(SIDES),
        loc=rng.choice(LOCATIONS),
        size=rng.choice(SIZES),
        age=rng.randint(35, 78),
        clock=rng.choice(("1", "2", "4", "8", "10", "11")),
    )


def gen_classification_corpus() -> None:
    rng = random.Random(20240131)
    out = DATA / "fixture_corpus"
    out.mkdir(parents=True, exist_ok=True)
    for old in out.glob("*.txt"):
        old.unlink()
    manifest_rows = []
    resources = load_resources()
    for category in range(7):
        for i in range(10):
            report_id = f"c{category}-{i:02d}"
            templates = list(FINDINGS[category])
            rng.shuffle(templates)
            n_sentences = rng.randint(4, 6)
            findings = " ".join(fill(t, rng) for t in templates[:n_sentences])
            text = "\n\n".join(
                [
                    f"EXAM: {fill(rng.choice(EXAMS), rng)}",
                    f"CLINICAL HISTORY: {fill(rng.choice(HISTORIES), rng)}",
                    f"COMPARISON: {rng.choice(COMPARISONS)}",
                    f"FINDINGS: {findings}",
                    f"IMPRESSION: {IMPRESSIONS[category]}",
                ]
            ) + "\n"
            filename = f"{report_id}.txt"
            (out / filename).write_text(text, encoding="utf-8")
            manifest_rows.append(f"{report_id}\t{filename}\t{category}")
            # audits: parses to the right category, no unsanctioned terms
            report = parse_report(text, resources.lexicon, report_id=report_id)
            assert report.reported_category == category, report_id
            assert len(report.sentences) == n_sentences, report_id
            detections = detect_unsanctioned(text, resources.lexicon)
            assert not detections, (report_id, detections)
    (out / "corpus.tsv").write_text("\n".join(manifest_rows) + "\n", encoding="utf-8")
    print(f"wrote {len(manifest_rows)} classification reports to {out}")


# --- normalizer fixture -----------------------------------------------------

# (canonical term, planted text, is_detectable); counts mirror the curated
# per-term evaluation targets: 206 detectable + 9 obfuscated misses.
PLANT_COUNTS = {
    "density": 59,
    "nodule": 35,
    "ovoid": 13,
    "lobulated": 15,
    "stellate": 2,
    "layering": 3,
    "tubular": 1,
    "predominantly round": 2,
    "indeterminate": 3,
    "heterogeneous": 69,
    "loosely grouped": 1,
    "ductal": 3,
}

OBFUSCATED = [
    ("predominantly round", "predominately round"),
    ("predominantly round", "predominantly-round"),
    ("indeterminate", "indeterminant"),
    ("indeterminate", "indetreminate"),
    ("indeterminate", "in-determinate"),
    ("heterogeneous", "heterogenous"),
    ("loosely grouped", "loosly grouped"),
    ("loosely grouped", "loosely-grouped"),
    ("loosely grouped", "losely grouped"),
]

PLANT_TEMPLATES = [
    "There is a {} in the upper outer quadrant.",
    "A {} is seen in the left breast.",
    "The area of {} is unchanged.",
    "An adjacent {} is noted on the spot views.",
    "The {} appearance persists on magnification.",
    "A {} finding is identified medially.",
    "There is {} in the right breast.",
    "The described {} is again noted.",
]

# sanctioned phrasing that embeds unsanctioned words as substrings; the
# detector must not fire inside these
DECOYS = [
    "There is focal high density in the retroareolar region.",
    "An area of equal density is noted laterally.",
    "Low density tissue is present posteriorly.",
    "Coarse heterogeneous calcifications are present.",
    "The coarse heterogeneous calcifications are stable.",
    "Grouped punctate calcifications are seen.",
    "The grouped calcifications are unchanged.",
    "A round circumscribed mass is noted.",
    "The round mass is stable.",
    "Fine linear branching calcifications are suspicious.",
]

FILLERS = [
    "The breast parenchyma is otherwise unremarkable.",
    "The skin and nipple are within normal limits.",
    "No architectural distortion is identified.",
    "Comparison was made with the prior examination.",
    "The remaining tissue is stable in appearance.",
    "No dominant mass is seen elsewhere.",
]

N_NORM_REPORTS = 25


def gen_normalizer_fixture() -> None:
    rng = random.Random(47)
    out = DATA / "normalizer_fixture"
    out.mkdir(parents=True, exist_ok=True)
    for old in out.glob("*.txt"):
        old.unlink()
    resources = load_resources()

    # build the flat list of planted sentences: (canonical, text_form, detectable)
    plants: list[tuple[str, str, bool]] = []
    for term, count in PLANT_COUNTS.items():
        for _ in range(count):
            plants.append((term, term, True))
    for canonical, variant in OBFUSCATED:
        plants.append((canonical, variant, False))
    rng.shuffle(plants)

    extras = [(None, d, False) for d in DECOYS] + [(None, f, False) for f in FILLERS]

    buckets: list[list[tuple[str | None, str, bool]]] = [[] for _ in range(N_NORM_REPORTS)]
    for i, plant in enumerate(plants):
        buckets[i % N_NORM_REPORTS].append(plant)
    for i, extra in enumerate(extras):
        buckets[(i * 3) % N_NORM_REPORTS].append(extra)

    manifest_rows = []
    gold_rows = []
    expected_detectable = 0
    for i, bucket in enumerate(buckets):
        report_id = f"n{i:02d}"
        findings_parts: list[str] = []
        header = "FINDINGS: "
        offset = 0  # offset within the findings body
        spans: list[tuple[int, int, str, str]] = []
        for canonical, form, detectable in bucket:
            if canonical is None:
                sentence = form  # decoy or filler, used verbatim
            else:
                template = rng.choice(PLANT_TEMPLATES)
                prefix = template.split("{}")[0]
                sentence = template.format(form)
                start = offset + len(prefix)
                spans.append((start, start + len(form), canonical, form))
                if detectable:
                    expected_detectable += 1
            findings_parts.append(sentence)
            offset += len(sentence) + 1  # sentences joined by one space
        findings = " ".join(findings_parts)
        category = i % 7
        text = (
            f"EXAM: Bilateral screening mammogram.\n\n"
            f"{header}{findings}\n\n"
            f"IMPRESSION: Findings as described. BI-RADS category {category}.\n"
        )
        # spans are relative to the findings body; shift to whole-file offsets
        base = text.index(findings)
        for start, end, canonical, form in spans:
            assert text[base + start : base + end] == form, (report_id, form)
            gold_rows.append(f"{report_id}\t{base + start}\t{base + end}\t{canonical}")
        filename = f"{report_id}.txt"
        (out / filename).write_text(text, encoding="utf-8")
        manifest_rows.append(f"{report_id}\t{filename}\t{category}")

    (out / "corpus.tsv").write_text("\n".join(manifest_rows) + "\n", encoding="utf-8")
    (out / "gold.tsv").write_text("\n".join(gold_rows) + "\n", encoding="utf-8")

    # audit: detections must equal the detectable gold spans, span-exactly
    gold_by_report: dict[str, set[tuple[int, int]]] = {}
    detectable_forms = set(PLANT_COUNTS)
    for row in gold_rows:
        rid, start, end, term = row.split("\t")
        gold_by_report.setdefault(rid, set()).add((int(start), int(end)))
    total_found = 0
    for row in manifest_rows:
        rid, filename, _ = row.split("\t")
        text = (out / filename).read_text(encoding="utf-8")
        detections = detect_unsanctioned(text, resources.lexicon)
        for d in detections:
            assert (d.start, d.end) in gold_by_report.get(rid, set()), (rid, d)
            assert d.found_term in detectable_forms, (rid, d)
        total_found += len(detections)
    assert total_found == expected_detectable == 206, (total_found, expected_detectable)
    assert len(gold_rows) == 215, len(gold_rows)
    print(f"wrote {len(manifest_rows)} normalizer reports, {len(gold_rows)} gold spans to {out}")


if __name__ == "__main__":
    gen_classification_corpus()
    gen_normalizer_fixture()
