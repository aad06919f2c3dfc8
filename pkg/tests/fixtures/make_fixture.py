"""Generate the committed synthetic Wikidata dump (tests/fixtures/dump.json).

Deterministic: ``python tests/fixtures/make_fixture.py`` always writes the same bytes.
Covers: type hierarchy with a cycle, multi-inheritance, a subclass-of-human class,
off-script labels, parentheticals (ASCII and fullwidth), numeric labels, code
normalization special cases, an unlisted language, a singleton language, a
malformed line, a property entity, and unrelated fields the reader must skip.
"""
import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent
SEED = 20240521
N_ITEMS = 1000

SYLLABLES = {
    "Latin": ["ka", "lo", "mi", "ren", "sa", "tor", "vi", "el", "an", "dra", "berg", "son", "ia", "na", "ko"],
    "Cyrillic": ["ка", "ло", "ми", "рен", "са", "тор", "ви", "ель", "ан", "дра", "берг", "сон", "ия", "на"],
    "Arabic": ["كا", "لو", "مي", "رن", "سا", "تور", "في", "ال", "ان", "درا"],
    "Greek": ["κα", "λο", "μι", "ρεν", "σα", "τορ", "βι", "ελ", "αν", "δρα"],
    "Hebrew": ["קא", "לו", "מי", "רן", "סא", "תור", "וי", "אל", "אן"],
    "Katakana": ["カ", "ロ", "ミ", "レン", "サ", "トル", "ヴィ", "エル", "アン", "ドラ"],
    "Han": ["東", "京", "山", "川", "明", "國", "王", "李", "林", "海"],
    "Hangul": ["카", "로", "미", "렌", "사", "토르", "비", "엘", "안", "드라"],
    "Thai": ["กา", "โล", "มิ", "เรน", "ซา", "ทอร์", "วิ", "เอล"],
    "Georgian": ["კა", "ლო", "მი", "რენ", "სა", "ტორ", "ვი", "ელ"],
}

# language -> primary script of generated labels
LANGS = {
    "en": "Latin",
    "sv": "Latin",
    "de": "Latin",
    "ru": "Cyrillic",
    "kk": "Cyrillic",
    "ar": "Arabic",
    "el": "Greek",
    "he": "Hebrew",
    "ja": "Katakana",
    "ko": "Hangul",
    "th": "Thai",
    "ka": "Georgian",
}
# special codes exercising normalization (written as-is into the dump)
SPECIAL_CODES = {"kk-arab": "Arabic", "zh-yue": "Han", "yue": "Han", "bh": "Latin", "zh-min-nan": "Latin", "bat-smg": "Latin"}

CLASS_BASE = 900000


def word(rng, script, lo=2, hi=3):
    return "".join(rng.choice(SYLLABLES[script]) for _ in range(rng.randint(lo, hi)))


def name(rng, script):
    w = [word(rng, script) for _ in range(rng.randint(1, 2))]
    if script == "Latin":
        w = [x.capitalize() for x in w]
    return " ".join(w)


def claim(prop, qid):
    return {
        "mainsnak": {
            "snaktype": "value",
            "property": prop,
            "datavalue": {"value": {"entity-type": "item", "numeric-id": int(qid[1:]), "id": qid},
                          "type": "wikibase-entityid"},
            "datatype": "wikibase-item",
        },
        "type": "statement",
        "id": f"{qid}$0000",
        "rank": "normal",
    }


def entity(qid, labels, p31=(), p279=(), rng=None):
    ent = {
        "type": "item",
        "id": qid,
        "labels": {lang: {"language": lang, "value": v} for lang, v in labels.items()},
        "descriptions": {"en": {"language": "en", "value": "synthetic entity (fixture)"}},
        "aliases": {"en": [{"language": "en", "value": "Alias (ignored)"}]},
        "claims": {},
        "sitelinks": {"enwiki": {"site": "enwiki", "title": labels.get("en", qid), "badges": []}},
    }
    if p31:
        ent["claims"]["P31"] = [claim("P31", q) for q in p31]
    if p279:
        ent["claims"]["P279"] = [claim("P279", q) for q in p279]
    if rng is not None and rng.random() < 0.3:
        ent["claims"]["P17"] = [claim("P17", "Q183")]
        ent["claims"]["P18"] = [{"mainsnak": {"snaktype": "value", "property": "P18",
                                              "datavalue": {"value": "File.jpg", "type": "string"}}}]
    return ent


def class_entities():
    """Type hierarchy. Returns (entities, class ids by role)."""
    c = lambda k: f"Q{CLASS_BASE + k}"
    roles = {
        "city": c(1),          # city -> settlement -> Q82794
        "settlement": c(2),
        "company": c(3),       # company -> business -> Q43229
        "business": c(4),
        "city_state": c(5),    # city_state -> {city, government_org}
        "government_org": c(6),  # government_org -> Q43229
        "cyc_a": c(7),         # cyc_a <-> cyc_b, cyc_a -> settlement
        "cyc_b": c(8),
        "human_role": c(9),    # human_role -> Q5 (no direct Q5 for its instances)
        "band": c(10),         # band -> business
        "other": c(11),        # unrelated class
        "orphan": c(12),       # no P279 at all
    }
    edges = {
        roles["city"]: [roles["settlement"]],
        roles["settlement"]: ["Q82794"],
        roles["company"]: [roles["business"]],
        roles["business"]: ["Q43229"],
        roles["city_state"]: [roles["city"], roles["government_org"]],
        roles["government_org"]: ["Q43229"],
        roles["cyc_a"]: [roles["cyc_b"], roles["settlement"]],
        roles["cyc_b"]: [roles["cyc_a"]],
        roles["human_role"]: ["Q5"],
        roles["band"]: [roles["business"]],
        roles["other"]: ["Q35120"],
    }
    ents = [
        entity("Q5", {"en": "human"}, p279=["Q215627"]),
        entity("Q82794", {"en": "geographic region"}, p279=["Q35120"]),
        entity("Q43229", {"en": "organization"}, p279=["Q35120"]),
    ]
    for role, qid in roles.items():
        ents.append(entity(qid, {"en": role.replace("_", " ")}, p31=["Q16889133"], p279=edges.get(qid, [])))
    return ents, roles


def item_labels(rng, english):
    labels = {"en": english}
    for lang, script in LANGS.items():
        if lang == "en" or rng.random() < 0.35:
            continue
        if lang == "ja" and rng.random() < 0.3:
            labels[lang] = name(rng, "Han")
        else:
            labels[lang] = name(rng, script)
        r = rng.random()
        if r < 0.08 and script != "Latin":
            labels[lang] = english  # off-script copy of the English name
        elif r < 0.11:
            labels[lang] = f"{labels[lang]} ({word(rng, 'Latin')})"
        elif r < 0.12 and lang == "ja":
            labels[lang] = f"{labels[lang]}（{word(rng, 'Han', 1, 2)}）"
    for code, script in SPECIAL_CODES.items():
        if rng.random() < 0.04:
            labels[code] = name(rng, script)
    if rng.random() < 0.03:
        labels["gsw"] = name(rng, "Latin")  # not in the registry
    return labels


def build():
    rng = random.Random(SEED)
    ents, roles = class_entities()
    kinds = ["per"] * 50 + ["loc"] * 20 + ["org"] * 12 + ["city_state"] * 3 + ["per_org"] * 3 + \
            ["cyc"] * 3 + ["human_role"] * 3 + ["untyped"] * 6
    for i in range(N_ITEMS):
        qid = f"Q{1000 + i * 7 + rng.randint(0, 6)}"
        kind = rng.choice(kinds)
        english = name(rng, "Latin")
        if kind == "per":
            p31 = ["Q5"]
        elif kind == "loc":
            p31 = [rng.choice([roles["city"], roles["settlement"], "Q82794"])]
        elif kind == "org":
            p31 = [rng.choice([roles["company"], roles["band"], roles["government_org"], "Q43229"])]
        elif kind == "city_state":
            p31 = [roles["city_state"]]
        elif kind == "per_org":
            p31 = ["Q5", roles["band"]]
        elif kind == "cyc":
            p31 = [rng.choice([roles["cyc_a"], roles["cyc_b"]])]
        elif kind == "human_role":
            p31 = [roles["human_role"]]
        else:
            p31 = [rng.choice([roles["other"], roles["orphan"], "Q4167836"])]
        labels = item_labels(rng, english)
        if i % 97 == 0:
            labels["en"] = f"{english} (disambiguation)"
        if i % 131 == 0:
            labels["de"] = str(1900 + i % 100)
        ents.append(entity(qid, labels, p31=p31, rng=rng))
    # a duplicate P31 target, a label that is only a parenthetical, one singleton-language name
    ents.append(entity("Q999001", {"en": "Dupe Town", "ru": "Дупе", "tlh": "Qo'noS"},
                       p31=[roles["city"], roles["city"]]))
    ents.append(entity("Q999002", {"en": "Only Paren", "sv": "(bara)", "ru": "Только"}, p31=["Q5"]))
    return ents


def main():
    ents = build()
    lines = ["["]
    for i, ent in enumerate(ents):
        lines.append(json.dumps(ent, ensure_ascii=False, sort_keys=True) + ",")
        if i == 10:
            lines.append("{not json},")
        if i == 20:
            lines.append(json.dumps({"type": "property", "id": "P31", "labels": {"en": {"language": "en", "value": "instance of"}}}) + ",")
    lines[-1] = lines[-1].rstrip(",")
    lines.append("]")
    (HERE / "dump.json").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(ents)} entities to {HERE / 'dump.json'}")


if __name__ == "__main__":
    main()
