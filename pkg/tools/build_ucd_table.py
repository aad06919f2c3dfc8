"""Regenerate src/paranames/data/ucd_scripts.tsv from fontTools' bundled Scripts.txt.

Usage: python tools/build_ucd_table.py
"""
import re
from pathlib import Path

from fontTools.unicodedata import Scripts

OUT = Path(__file__).resolve().parents[1] / "src" / "paranames" / "data" / "ucd_scripts.tsv"


def main():
    version = re.search(r"Scripts-([\d.]+)\.txt", Path(Scripts.__file__).read_text()).group(1)
    starts = list(Scripts.RANGES)
    ends = [s - 1 for s in starts[1:]] + [0x10FFFF]
    lines = [f"# Unicode Scripts.txt {version}", "# start\tend\tscript"]
    for start, end, code in zip(starts, ends, Scripts.VALUES):
        lines.append(f"{start:04X}\t{end:04X}\t{Scripts.NAMES[code]}")
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(starts)} ranges (UCD {version}) to {OUT}")


if __name__ == "__main__":
    main()
