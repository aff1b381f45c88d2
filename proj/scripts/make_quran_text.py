#!/usr/bin/env python3
"""Write the Tanzil Imlaei Quran text as `sura|ayah|text` lines.

The source is the merged Uthmani/Imlaei XML shipped in the `quran-transcript`
wheel (pip download --no-deps quran-transcript). Verse text is copied
verbatim; the Tanzil copyright block is appended as '#' comment lines, the
same layout Tanzil uses for its plain-text downloads.
"""
import argparse
import re
import sys
import zipfile
import xml.etree.ElementTree as ET

XML_MEMBER = "quran_transcript/quran-script/quran-uthmani-imlaey.xml"


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("wheel")
    ap.add_argument("out")
    args = ap.parse_args()

    raw = zipfile.ZipFile(args.wheel).read(XML_MEMBER).decode("utf-8")
    notice = re.search(r"<!--(.*?)-->", raw, re.S).group(1)
    notice_lines = []
    for line in notice.splitlines():
        line = line.strip()
        if line.startswith("# Merge"):
            break
        if line.startswith("#"):
            notice_lines.append(line)

    root = ET.fromstring(raw)
    rows = []
    for sura in root.iter("sura"):
        for aya in sura.iter("aya"):
            rows.append(f'{sura.get("index")}|{aya.get("index")}|{aya.get("imlaey")}')
    if len(rows) != 6236:
        print(f"unexpected verse count {len(rows)}", file=sys.stderr)
        return 1

    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        for r in rows:
            f.write(r + "\n")
        f.write("\n")
        for line in notice_lines:
            f.write(line + "\n")
        f.write("#  Text variant: Imlaei (standard orthography), pause marks removed.\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
