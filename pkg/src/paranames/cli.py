"""Command-line entry point: ``paranames <subcommand> ...``.

Exit codes: 0 success, 1 stage failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

from . import __version__, kernels, pipeline
from .gazetteer import build_gazetteer, link_corpus, load_gazetteer, read_conll, write_links
from .metrics import evaluate, mann_whitney_u
from .normalize import CodeNormalizationTable
from .resource import dump_json
from .scripts import ScriptRegistry, ucd_version
from .translit import (
    DEFAULT_EVAL_CAP,
    DEFAULT_SEED,
    DEFAULT_TRAIN_CAP,
    EN2X,
    SPLITS,
    X2EN,
    AugmentationConfig,
    make_pairs,
    read_pairs,
    write_augmented,
    write_pairs,
)

BENCHMARK_LANGUAGES = ("ar", "hy", "ka", "el", "he", "ja", "kk", "ko", "lv", "lt", "fa", "ru", "sv", "tg", "th", "vi", "ur")


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(subcommand: str, args: argparse.Namespace, inputs, outputs, result, directory) -> Path:
    options = {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())
               if k not in ("func", "command")}
    manifest = {
        "tool": "paranames",
        "version": __version__,
        "subcommand": subcommand,
        "ucd_version": ucd_version(),
        "kernel_backend": kernels.BACKEND,
        "options": options,
        "inputs": {str(p): {"sha256": sha256_file(p), "bytes": Path(p).stat().st_size} for p in inputs if p},
        "outputs": [str(p) for p in outputs if p],
        "result": result,
    }
    path = Path(directory) / f"manifest.{subcommand}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        dump_json(manifest, fh)
    return path


def _yes_no(value: str) -> bool:
    v = value.lower()
    if v not in ("yes", "no"):
        raise argparse.ArgumentTypeError("expected 'yes' or 'no'")
    return v == "yes"


def _registry(args) -> ScriptRegistry:
    return ScriptRegistry.from_tsv(args.registry) if args.registry else ScriptRegistry.default()


def _code_table(args) -> CodeNormalizationTable:
    if args.code_map:
        return CodeNormalizationTable.from_tsv(args.code_map, args.should_collapse_languages)
    return CodeNormalizationTable(collapse_enabled=args.should_collapse_languages)


def _parent(path) -> Path:
    return Path(path).resolve().parent


# --- subcommands -------------------------------------------------------------


def cmd_extract(args):
    res = pipeline.extract(args.dump, args.out, jobs=args.jobs, stats_path=args.stats)
    return [args.dump], [args.out, args.stats], res, _parent(args.out)


def cmd_classify_types(args):
    res = pipeline.classify_types(args.entities, args.out, closure_cache=args.closure_cache)
    return [args.entities], [args.out], res, _parent(args.out)


def cmd_normalize(args):
    res = pipeline.normalize(args.typed, args.out, _code_table(args))
    return [args.typed, args.code_map], [args.out], res, _parent(args.out)


def cmd_filter_scripts(args):
    res = pipeline.filter_scripts(args.names, args.out, _registry(args), report_path=args.report,
                                  dropped_path=args.dropped, jobs=args.jobs)
    return [args.names, args.registry], [args.out, args.dropped, args.report], res, _parent(args.out)


def cmd_emit(args):
    res = pipeline.emit(args.names, args.out, sort=args.sorted)
    return [args.names], [args.out], res, _parent(args.out)


def cmd_stats(args):
    res = pipeline.stats(args.resource, args.out)
    return [args.resource], [args.out], res, _parent(args.out)


def cmd_pipeline(args):
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    p = {k: out / v for k, v in PIPELINE_FILES.items()}
    res = {
        "extract": pipeline.extract(args.dump, p["entities"], jobs=args.jobs, stats_path=p["parse_stats"]),
        "classify-types": pipeline.classify_types(p["entities"], p["typed"], closure_cache=args.closure_cache),
        "normalize": pipeline.normalize(p["typed"], p["names"], _code_table(args)),
        "filter-scripts": pipeline.filter_scripts(p["names"], p["kept"], _registry(args), report_path=p["entropy"],
                                                  dropped_path=p["dropped"], jobs=args.jobs),
        "emit": pipeline.emit(p["kept"], p["resource"], sort=args.sorted),
        "stats": pipeline.stats(p["resource"], p["stats"]),
    }
    return [args.dump, args.registry, args.code_map], list(p.values()), res, out


PIPELINE_FILES = {
    "entities": "entities.jsonl",
    "parse_stats": "parse_stats.json",
    "typed": "typed.jsonl",
    "names": "names.tsv",
    "kept": "kept.tsv",
    "dropped": "dropped.tsv",
    "entropy": "entropy.json",
    "resource": "resource.tsv",
    "stats": "stats.json",
}


def cmd_gazetteer_build(args):
    gaz = build_gazetteer(pipeline.read_names(args.resource), args.language, dedup=args.dedup)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        n = gaz.write(fh)
    return [args.resource], [args.out], {"language": args.language, "entries": n}, _parent(args.out)


def cmd_gazetteer_link(args):
    gaz = load_gazetteer(args.gazetteer, args.language or "")
    with open(args.corpus, encoding="utf-8") as fh:
        report, links = link_corpus(read_conll(fh), gaz)
    if args.links:
        with open(args.links, "w", encoding="utf-8", newline="\n") as fh:
            write_links(links, fh)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        dump_json(report.to_dict(), fh)
    return [args.corpus, args.gazetteer], [args.out, args.links], report.to_dict(), _parent(args.out)


def _aug_config(args, direction) -> AugmentationConfig:
    script = args.script_token and direction == X2EN
    lang = args.language_token or direction == EN2X
    return AugmentationConfig(lang, script, args.type_token, direction)


def cmd_translit_prep(args):
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    languages = [l for l in args.languages.split(",") if l] if args.languages else list(BENCHMARK_LANGUAGES)
    splits = make_pairs(pipeline.read_names(args.resource), languages, train_cap=args.train_cap,
                        eval_cap=args.eval_cap, seed=args.seed)
    outputs, counts = [], {}
    for split in SPLITS:
        path = out / f"pairs.{split}.tsv"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            counts[split] = write_pairs(splits[split], fh)
        outputs.append(path)
        for direction in (X2EN, EN2X):
            cfg = _aug_config(args, direction)
            path = out / f"{split}.{direction}.tsv"
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                write_augmented(splits[split], cfg, fh)
            outputs.append(path)
    return [args.resource], outputs, {"pairs": counts}, out


def cmd_augment(args):
    cfg = AugmentationConfig(args.language_token, args.script_token, args.type_token, args.direction)
    with open(args.pairs, encoding="utf-8") as src, open(args.out, "w", encoding="utf-8", newline="\n") as dst:
        n = write_augmented(read_pairs(src), cfg, dst)
    return [args.pairs], [args.out], {"rows": n, "config": cfg.name}, _parent(args.out)


def cmd_eval(args):
    rows = []
    with open(args.hyp, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{args.hyp}:{lineno}: expected 'candidate<TAB>reference<TAB>language'")
            rows.append(tuple(parts))
    report = evaluate(rows)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        dump_json(report, fh)
    return [args.hyp], [args.out], report["micro_average"], _parent(args.out)


def _floats(values: str | None, path: str | None) -> list[float]:
    if path:
        with open(path, encoding="utf-8") as fh:
            return [float(x) for x in fh.read().split()]
    return [float(x) for x in (values or "").split(",") if x.strip()]


def cmd_mwu(args):
    a = _floats(args.a, args.a_file)
    b = _floats(args.b, args.b_file)
    res = mann_whitney_u(a, b)
    report = {"u_statistic": res.u_statistic, "p_value": res.p_value, "method": res.method,
              "n_a": len(a), "n_b": len(b)}
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            dump_json(report, fh)
    else:
        print(json.dumps(report))
    directory = _parent(args.out) if args.out else None
    return [args.a_file, args.b_file], [args.out], report, directory


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paranames", description="Build and evaluate a multilingual entity name resource from Wikidata dumps.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        return p

    def jobs(p):
        p.add_argument("--jobs", type=int, default=pipeline.default_jobs(),
                       help="worker processes for parallel stages (default: CPU count)")

    def norm_flags(p):
        p.add_argument("--should-collapse-languages", type=_yes_no, default=False, metavar="{yes,no}")
        p.add_argument("--code-map", help="TSV 'from<TAB>to' replacing the default code map")

    p = add("extract", cmd_extract, "decode a Wikidata JSON dump into entity JSONL")
    p.add_argument("dump")
    p.add_argument("--out", required=True)
    p.add_argument("--stats")
    jobs(p)

    p = add("classify-types", cmd_classify_types, "assign PER/LOC/ORG types")
    p.add_argument("entities")
    p.add_argument("--out", required=True)
    p.add_argument("--closure-cache", help="directory holding/receiving subclass closure files")

    p = add("normalize", cmd_normalize, "strip parentheticals and normalize language codes")
    p.add_argument("typed")
    p.add_argument("--out", required=True)
    norm_flags(p)

    p = add("filter-scripts", cmd_filter_scripts, "drop names outside each language's allowed scripts")
    p.add_argument("names")
    p.add_argument("--out", required=True)
    p.add_argument("--dropped")
    p.add_argument("--report", help="script entropy report (JSON)")
    p.add_argument("--registry", help="allowed-scripts TSV (default: bundled registry)")
    jobs(p)

    p = add("emit", cmd_emit, "drop singleton languages and write the resource TSV")
    p.add_argument("names")
    p.add_argument("--out", required=True)
    p.add_argument("--sorted", action="store_true")

    p = add("stats", cmd_stats, "per-language and per-type statistics")
    p.add_argument("resource")
    p.add_argument("--out", required=True)

    p = add("pipeline", cmd_pipeline, "run extract through stats in one invocation")
    p.add_argument("dump")
    p.add_argument("--outdir", required=True)
    p.add_argument("--registry")
    p.add_argument("--closure-cache")
    p.add_argument("--sorted", action="store_true")
    norm_flags(p)
    jobs(p)

    p = add("gazetteer-build", cmd_gazetteer_build, "build a name->type gazetteer for one language")
    p.add_argument("resource")
    p.add_argument("--language", required=True)
    p.add_argument("--dedup", type=_yes_no, default=True, metavar="{yes,no}")
    p.add_argument("--out", required=True)

    p = add("gazetteer-link", cmd_gazetteer_link, "link a CoNLL corpus against a gazetteer")
    p.add_argument("--corpus", required=True)
    p.add_argument("--gazetteer", required=True)
    p.add_argument("--language")
    p.add_argument("--links", help="n-gram match file (TSV surface/type/n)")
    p.add_argument("--out", required=True)

    def token_flags(p):
        p.add_argument("--language-token", type=_yes_no, default=True, metavar="{yes,no}")
        p.add_argument("--script-token", type=_yes_no, default=False, metavar="{yes,no}")
        p.add_argument("--type-token", type=_yes_no, default=False, metavar="{yes,no}")

    p = add("translit-prep", cmd_translit_prep, "build split, capped, augmented parallel name data")
    p.add_argument("resource")
    p.add_argument("--outdir", required=True)
    p.add_argument("--languages", help="comma-separated target codes (default: the 17 benchmark languages)")
    p.add_argument("--train-cap", type=int, default=DEFAULT_TRAIN_CAP)
    p.add_argument("--eval-cap", type=int, default=DEFAULT_EVAL_CAP)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    token_flags(p)

    p = add("augment", cmd_augment, "render a pairs file as source/target token sequences")
    p.add_argument("pairs")
    p.add_argument("--out", required=True)
    p.add_argument("--direction", choices=(X2EN, EN2X), default=X2EN)
    token_flags(p)

    p = add("eval", cmd_eval, "score candidates: accuracy, CER, LCS F1")
    p.add_argument("--hyp", required=True, help="TSV candidate<TAB>reference<TAB>language")
    p.add_argument("--out", required=True)

    p = add("mwu", cmd_mwu, "two-tailed Mann-Whitney U test")
    p.add_argument("--a", help="comma-separated sample A")
    p.add_argument("--b", help="comma-separated sample B")
    p.add_argument("--a-file")
    p.add_argument("--b-file")
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        inputs, outputs, result, directory = args.func(args)
        if directory is not None:
            write_manifest(args.command, args, inputs, outputs, result, directory)
    except (OSError, ValueError, KeyError) as exc:
        print(f"paranames {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
