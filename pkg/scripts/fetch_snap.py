#!/usr/bin/env python3
"""Download the SNAP reference networks used by the data-gated tests.

Needs outbound network access. Files land in the repository's data/
directory (or the directory named by $INFLUENCE_RANK_DATA) under the stems
the test suite looks for. The two small networks cover most gated tests;
pass --large to also fetch the multi-hour sweep inputs.
"""
from __future__ import annotations

import argparse
import os
import sys
import urllib.request
from pathlib import Path

BASE = "https://snap.stanford.edu/data"

SMALL = {
    "ca-GrQc.txt.gz": f"{BASE}/ca-GrQc.txt.gz",
    "wiki-Vote.txt.gz": f"{BASE}/wiki-Vote.txt.gz",
}
LARGE = {
    "com-amazon.ungraph.txt.gz": f"{BASE}/bigdata/communities/"
                                 "com-amazon.ungraph.txt.gz",
    "higgs-retweet_network.txt.gz": f"{BASE}/higgs-retweet_network.edgelist.gz",
}


def default_data_dir() -> Path:
    env = os.environ.get("INFLUENCE_RANK_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "data"


def fetch(url: str, dest: Path) -> None:
    if dest.exists():
        print(f"  {dest.name}: already present")
        return
    print(f"  {dest.name}: downloading {url}")
    tmp = dest.with_suffix(dest.suffix + ".part")
    with urllib.request.urlopen(url) as resp, open(tmp, "wb") as out:
        while True:
            chunk = resp.read(1 << 20)
            if not chunk:
                break
            out.write(chunk)
    tmp.rename(dest)
    print(f"  {dest.name}: {dest.stat().st_size} bytes")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", type=Path, default=default_data_dir())
    parser.add_argument("--large", action="store_true",
                        help="also fetch the large sweep networks")
    args = parser.parse_args(argv)

    args.data_dir.mkdir(parents=True, exist_ok=True)
    targets = dict(SMALL)
    if args.large:
        targets.update(LARGE)
    print(f"fetching into {args.data_dir}")
    for name, url in targets.items():
        try:
            fetch(url, args.data_dir / name)
        except OSError as exc:
            print(f"  {name}: FAILED ({exc})", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
