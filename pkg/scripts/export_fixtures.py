#!/usr/bin/env python3
"""Write the catalog as a fixtures/ tree (one JSON file per id plus an
index listing ids, tags and claims). The tree is what the CLI loads when
TUBES_FIXTURES points at it."""

import argparse
from pathlib import Path

from tubes import catalog


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("target", nargs="?", default="fixtures",
                    help="output directory (default: ./fixtures)")
    args = ap.parse_args()
    count = catalog.export_tree(args.target)
    print(f"wrote {count} fixtures to {Path(args.target).resolve()}")


if __name__ == "__main__":
    main()
