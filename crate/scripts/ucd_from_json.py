#!/usr/bin/env python3
"""Rebuild UnicodeData.txt, PropList.txt and CaseFolding.txt from the
`ucd-full` npm package (UCD encoded as JSON) when unicode.org is unreachable.

usage: ucd_from_json.py <ucd-full/package dir> <output dir>
"""
import json
import os
import sys

src, out = sys.argv[1], sys.argv[2]


def load(name):
    with open(os.path.join(src, name + ".json"), encoding="utf-8") as f:
        return json.load(f)[name]


fields = [
    "codepoint", "name", "category", "canonicalCombiningClass",
    "bidirectionalCategory", "characterDecompositionMapping",
    "decimalDigitValue", "digitValue", "numericValue", "mirrored",
    "unicode1.0Name", "isoComment", "upper", "lower", "title",
]
with open(os.path.join(out, "UnicodeData.txt"), "w", encoding="utf-8", newline="\n") as f:
    for row in load("UnicodeData"):
        f.write(";".join(row.get(k, "") for k in fields) + "\n")

with open(os.path.join(out, "PropList.txt"), "w", encoding="utf-8", newline="\n") as f:
    f.write("# PropList (reconstructed, comments dropped)\n")
    for row in load("PropList"):
        r = "..".join(row["range"])
        f.write(f"{r:<14}; {row['property']}\n")

with open(os.path.join(out, "CaseFolding.txt"), "w", encoding="utf-8", newline="\n") as f:
    f.write("# CaseFolding (reconstructed, comments dropped)\n")
    for row in load("CaseFolding"):
        f.write(f"{row['codepoint']}; {row['status']}; {row['mapping']};\n")
