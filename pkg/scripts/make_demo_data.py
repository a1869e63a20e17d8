#!/usr/bin/env python3
"""Write a self-contained demo data tree and print the config path.

Usage: python scripts/make_demo_data.py [DIR]

DIR defaults to ./demo-data. The tree contains a 21x21 lattice road
graph, three county boundaries, thirty days of case and death counts,
a small gazetteer, and a demo.cfg tying them together, so

    driveshed serve --config "$(python scripts/make_demo_data.py)"

brings up a fully working service with no external downloads.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from driveshed.synth import write_demo


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("dir", nargs="?", default="demo-data",
                    help="target directory (created if missing)")
    args = ap.parse_args()
    target = pathlib.Path(args.dir)
    target.mkdir(parents=True, exist_ok=True)
    print(write_demo(target))


if __name__ == "__main__":
    main()
