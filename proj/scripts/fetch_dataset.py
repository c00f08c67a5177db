#!/usr/bin/env python3
"""Download the superconductivity dataset and emit a material,critical_temp CSV.

The archive published by the UCI Machine Learning Repository (dataset id 464)
contains unique_m.csv, whose last two columns are the critical temperature and
the chemical formula. This script downloads the archive, extracts those two
columns, and writes them in the layout the `supercon clean` subcommand and the
acceptance harness (via SUPERCON_DATA) expect.

Usage:
    python3 scripts/fetch_dataset.py --out data/supercon_raw.csv
"""

import argparse
import csv
import io
import os
import sys
import urllib.request
import zipfile

DEFAULT_URL = "https://archive.ics.uci.edu/static/public/464/superconductivty+data.zip"
MEMBER = "unique_m.csv"


def fetch(url: str, timeout: float) -> bytes:
    request = urllib.request.Request(url, headers={"User-Agent": "supercon-fetch/1.0"})
    with urllib.request.urlopen(request, timeout=timeout) as response:
        return response.read()


def convert(archive: bytes, out_path: str) -> int:
    with zipfile.ZipFile(io.BytesIO(archive)) as bundle:
        names = bundle.namelist()
        member = next((n for n in names if n.endswith(MEMBER)), None)
        if member is None:
            raise SystemExit(f"archive does not contain {MEMBER} (found: {', '.join(names)})")
        with bundle.open(member) as raw:
            reader = csv.DictReader(io.TextIOWrapper(raw, encoding="utf-8"))
            if reader.fieldnames is None or not {"material", "critical_temp"} <= set(
                reader.fieldnames
            ):
                raise SystemExit(f"{MEMBER} lacks the material/critical_temp columns")
            rows = [(row["material"], row["critical_temp"]) for row in reader]

    with open(out_path, "w", newline="", encoding="utf-8") as out:
        writer = csv.writer(out)
        writer.writerow(["material", "critical_temp"])
        writer.writerows(rows)
    return len(rows)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--url", default=DEFAULT_URL, help="archive URL (default: UCI id 464)")
    parser.add_argument(
        "--out", default="data/supercon_raw.csv", help="where to write the two-column CSV"
    )
    parser.add_argument("--timeout", type=float, default=60.0, help="download timeout, seconds")
    args = parser.parse_args()

    print(f"downloading {args.url} ...", file=sys.stderr)
    try:
        archive = fetch(args.url, args.timeout)
    except OSError as error:
        raise SystemExit(f"download failed: {error}") from error
    count = convert(archive, args.out)
    print(f"wrote {count} rows to {args.out}", file=sys.stderr)
    print(
        f"next: SUPERCON_DATA={os.path.abspath(args.out)}"
        " ctest --test-dir build -R acceptance -V"
    )


if __name__ == "__main__":
    main()
