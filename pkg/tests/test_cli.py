import hashlib
import json
import subprocess
import sys
from pathlib import Path

import pytest

from paranames import __version__
from paranames.cli import PIPELINE_FILES, main
from paranames.scripts import ucd_version

FIXTURES = Path(__file__).resolve().parent / "fixtures"
DUMP = FIXTURES / "dump.json"
REGISTRY = FIXTURES / "registry.tsv"


def manifest(directory, sub):
    return json.loads((Path(directory) / f"manifest.{sub}.json").read_text(encoding="utf-8"))


def sha(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def test_extract_writes_entities_and_manifest(tmp_path):
    out = tmp_path / "entities.jsonl"
    assert main(["extract", str(DUMP), "--out", str(out), "--stats", str(tmp_path / "s.json"), "--jobs", "1"]) == 0
    assert out.stat().st_size > 0
    m = manifest(tmp_path, "extract")
    assert m["version"] == __version__ and m["ucd_version"] == ucd_version()
    assert m["inputs"][str(DUMP)]["sha256"] == sha(DUMP)
    assert m["result"]["lines_skipped"] == 1 and m["result"]["properties_skipped"] == 1


def test_pipeline_equals_chained_stages(tmp_path):
    one = tmp_path / "one"
    assert main(["pipeline", str(DUMP), "--outdir", str(one), "--registry", str(REGISTRY), "--sorted",
                 "--jobs", "1"]) == 0
    d = tmp_path / "chain"
    d.mkdir()
    steps = [
        ["extract", str(DUMP), "--out", str(d / "entities.jsonl"), "--jobs", "1"],
        ["classify-types", str(d / "entities.jsonl"), "--out", str(d / "typed.jsonl")],
        ["normalize", str(d / "typed.jsonl"), "--out", str(d / "names.tsv"), "--should-collapse-languages", "no"],
        ["filter-scripts", str(d / "names.tsv"), "--out", str(d / "kept.tsv"), "--registry", str(REGISTRY),
         "--report", str(d / "entropy.json"), "--dropped", str(d / "dropped.tsv"), "--jobs", "2"],
        ["emit", str(d / "kept.tsv"), "--out", str(d / "resource.tsv"), "--sorted"],
        ["stats", str(d / "resource.tsv"), "--out", str(d / "stats.json")],
    ]
    for argv in steps:
        assert main(argv) == 0, argv
    for name in ("entities.jsonl", "typed.jsonl", "names.tsv", "kept.tsv", "dropped.tsv", "entropy.json",
                 "resource.tsv", "stats.json"):
        assert (one / name).read_bytes() == (d / name).read_bytes(), name
    assert manifest(d, "normalize")["options"]["should_collapse_languages"] is False
    # every manifest's digests describe its inputs
    for mf in d.glob("manifest.*.json"):
        for path, info in json.loads(mf.read_text())["inputs"].items():
            assert info["sha256"] == sha(path)
    assert set(PIPELINE_FILES.values()) <= {p.name for p in one.iterdir()}


def test_collapse_flag(tmp_path):
    assert main(["pipeline", str(DUMP), "--outdir", str(tmp_path), "--registry", str(REGISTRY),
                 "--should-collapse-languages", "yes", "--jobs", "1"]) == 0
    assert manifest(tmp_path, "pipeline")["options"]["should_collapse_languages"] is True
    langs = {l.split("\t")[2] for l in (tmp_path / "names.tsv").read_text(encoding="utf-8").splitlines()[1:]}
    assert "kk-arab" not in langs


def test_closure_cache_reused(tmp_path):
    ent = tmp_path / "e.jsonl"
    assert main(["extract", str(DUMP), "--out", str(ent), "--jobs", "1"]) == 0
    cache = tmp_path / "cache"
    assert main(["classify-types", str(ent), "--out", str(tmp_path / "t1.jsonl"), "--closure-cache", str(cache)]) == 0
    assert (cache / "closure.LOC.txt").read_text().startswith("#root=Q82794 #ucd-independent\n")
    assert main(["classify-types", str(ent), "--out", str(tmp_path / "t2.jsonl"), "--closure-cache", str(cache)]) == 0
    assert (tmp_path / "t1.jsonl").read_bytes() == (tmp_path / "t2.jsonl").read_bytes()


def test_eval_identical_is_perfect(tmp_path):
    hyp = tmp_path / "out.tsv"
    hyp.write_text("Москва\tМосква\tru\nHyde Park\tHyde Park\tsv\n", encoding="utf-8")
    out = tmp_path / "report.json"
    assert main(["eval", "--hyp", str(hyp), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["micro_average"]["accuracy"] == 1.0 and rep["micro_average"]["cer"] == 0.0


def test_gazetteer_build_and_link(tmp_path):
    res = tmp_path / "resource.tsv"
    res.write_text("wikidata_id\tlabel\tlanguage\ttype\nQ1\tHyde Park\ten\tLOC\nQ2\tApple\ten\tPER;ORG\n",
                   encoding="utf-8")
    gaz = tmp_path / "gaz.tsv"
    assert main(["gazetteer-build", str(res), "--language", "en", "--dedup", "no", "--out", str(gaz)]) == 0
    assert gaz.read_text() == "Apple\tPER;ORG\nHyde Park\tLOC\n"
    corpus = tmp_path / "c.conll"
    corpus.write_text("Hyde\tB-LOC\nPark\tI-LOC\nis\tO\ngreen\tO\n", encoding="utf-8")
    out, links = tmp_path / "link.json", tmp_path / "links.tsv"
    assert main(["gazetteer-link", "--corpus", str(corpus), "--gazetteer", str(gaz), "--links", str(links),
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())["links"] == 1
    assert links.read_text() == "Hyde Park\tLOC\t2\n"


def test_translit_prep_and_augment(tmp_path):
    res = tmp_path / "resource.tsv"
    rows = "".join(f"Q{i}\tName {i}\ten\tPER\nQ{i}\tИмя {i}\tru\tPER\n" for i in range(1, 200))
    res.write_text("wikidata_id\tlabel\tlanguage\ttype\n" + rows, encoding="utf-8")
    out = tmp_path / "tl"
    assert main(["translit-prep", str(res), "--outdir", str(out), "--languages", "ru", "--script-token", "yes"]) == 0
    en2x = (out / "train.en2x.tsv").read_text(encoding="utf-8")
    assert "<Cyrillic>" not in en2x and en2x.startswith("<ru> ")
    assert "<ru> <Cyrillic> " in (out / "train.x2en.tsv").read_text(encoding="utf-8")
    assert manifest(out, "translit-prep")["options"]["seed"] == 1917
    aug = tmp_path / "aug.tsv"
    assert main(["augment", str(out / "pairs.dev.tsv"), "--out", str(aug), "--language-token", "no"]) == 0
    assert main(["augment", str(out / "pairs.dev.tsv"), "--out", str(aug), "--direction", "en2x",
                 "--script-token", "yes"]) == 1


def test_mwu_command(tmp_path, capsys):
    assert main(["mwu", "--a", "1,2", "--b", "3,4"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["u_statistic"] == 0.0 and rep["p_value"] == pytest.approx(1 / 3)
    out = tmp_path / "m.json"
    assert main(["mwu", "--a", "1,3", "--b", "2,4", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["method"] == "exact"


def test_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["extract", str(DUMP), "--out", "x", "--bogus"])
    assert e.value.code == 2
    assert main(["extract", str(tmp_path / "missing.json"), "--out", str(tmp_path / "o.jsonl")]) == 1
    assert "paranames extract: error" in capsys.readouterr().err
    bad = tmp_path / "names.tsv"
    bad.write_text("not\ta\theader\n")
    assert main(["filter-scripts", str(bad), "--out", str(tmp_path / "k.tsv")]) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "paranames", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and __version__ in proc.stdout
