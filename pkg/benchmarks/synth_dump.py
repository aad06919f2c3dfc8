"""Synthetic Wikidata-shaped dump with realistic line structure, for throughput runs."""
import json
import random

LANGS = ["en", "de", "fr", "es", "it", "nl", "sv", "pl", "ru", "uk", "ar", "fa", "he", "ja", "ko", "zh",
         "el", "hy", "ka", "th", "hi", "kk", "tg", "vi", "lt", "lv", "fi", "tr", "cs", "pt"]
ALPHABETS = {
    "ru": "абвгдежзиклмнопрстуфхцчшщэюя", "uk": "абвгдежзиклмнопрстуфхцчшщюяї", "kk": "абвгдежзиклмнопрқң",
    "tg": "абвгдежзиклмнопрстуфхҳҷ", "ar": "ابتثجحخدذرزسشصضطظعغفقكلمنهوي", "fa": "ابپتثجچحخدذرزژسشصضطظعغفقکگلمنوهی",
    "he": "אבגדהוזחטיכלמנסעפצקרשת", "ja": "アイウエオカキクケコサシスセソタチツテト東京山川", "ko": "가나다라마바사아자차카타파하",
    "zh": "東京山川明國王李林海中華", "el": "αβγδεζηθικλμνξοπρστυφχψω", "hy": "աբգդեզէըթժիլխծկհձղճմյնշոչպջռսվտրցւփքօֆ",
    "ka": "აბგდევზთიკლმნოპჟრსტუფქღყშჩცძწჭხჯჰ", "th": "กขคงจฉชซญฎฏฐณดตถทธนบปผพฟภมยรลวศษสหฬอฮ", "hi": "कखगघचछजझटठडढणतथदधनपफबभमयरलवशषसह",
}
LATIN = "abcdefghijklmnopqrstuvwxyzéüöäñ"


def word(rng, alphabet):
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(3, 9)))


def snak(rng, prop, qid=None):
    dv = ({"value": {"entity-type": "item", "numeric-id": int(qid[1:]), "id": qid}, "type": "wikibase-entityid"}
          if qid else {"value": {"time": "+1912-06-23T00:00:00Z", "precision": 11, "calendarmodel": "http://www.wikidata.org/entity/Q1985727"}, "type": "time"})
    return {"snaktype": "value", "property": prop, "hash": "%040x" % rng.getrandbits(160), "datavalue": dv,
            "datatype": "wikibase-item" if qid else "time"}


def statement(rng, prop, qid=None):
    return {"mainsnak": snak(rng, prop, qid), "type": "statement", "id": f"Q1${rng.getrandbits(64):x}", "rank": "normal",
            "references": [{"hash": "%040x" % rng.getrandbits(160), "snaks": {"P248": [snak(rng, "P248", "Q36578")]},
                            "snaks-order": ["P248"]}]}


def entity(rng, i):
    qid = f"Q{i}"
    langs = rng.sample(LANGS, rng.randint(3, len(LANGS)))
    labels = {}
    for lang in langs:
        alpha = ALPHABETS.get(lang, LATIN)
        if rng.random() < 0.1:
            alpha = LATIN if alpha is not LATIN else ALPHABETS["ru"]  # off-script noise
        labels[lang] = {"language": lang, "value": " ".join(word(rng, alpha).capitalize() for _ in range(rng.randint(1, 3)))}
    claims = {"P31": [statement(rng, "P31", rng.choice(["Q5", "Q515", "Q4830453", "Q43229"]))]}
    if rng.random() < 0.2:
        claims["P279"] = [statement(rng, "P279", f"Q{rng.randint(1, 10**6)}")]
    for p in rng.sample(range(17, 3000), rng.randint(5, 25)):
        claims[f"P{p}"] = [statement(rng, f"P{p}", None if rng.random() < 0.5 else f"Q{rng.randint(1, 10**7)}")]
    return {
        "type": "item", "id": qid, "labels": labels,
        "descriptions": {l: {"language": l, "value": word(rng, LATIN) + " " + word(rng, LATIN)} for l in langs},
        "aliases": {l: [{"language": l, "value": word(rng, LATIN)}] for l in langs[:5]},
        "claims": claims,
        "sitelinks": {f"{l}wiki": {"site": f"{l}wiki", "title": labels[l]["value"], "badges": []} for l in langs[:10]},
        "lastrevid": rng.randint(1, 10**9),
    }


def write_dump(path, n_entities, seed=7):
    rng = random.Random(seed)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("[\n")
        for i in range(1, n_entities + 1):
            fh.write(json.dumps(entity(rng, i), ensure_ascii=False))
            fh.write(",\n" if i < n_entities else "\n")
        fh.write("]\n")


if __name__ == "__main__":
    import sys
    write_dump(sys.argv[1], int(sys.argv[2]) if len(sys.argv) > 2 else 5000)
