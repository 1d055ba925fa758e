"""Write the data behind figures 1-4 and a constellation JSON into a directory.

    python scripts/make_figures.py [OUTDIR]
"""
import sys
from pathlib import Path

from channelspin import cli


def main(outdir="figures"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for which in (1, 2, 3, 4):
        path = out / f"fig{which}.csv"
        cli.main(["figure", str(which), "--out", str(path)])
        print(f"wrote {path}")
    for p in (0.7, 0.9):
        path = out / f"majorana_p{p}_theta45.json"
        cli.main(["majorana", "--p", str(p), "--theta", "45", "--degrees", "--out", str(path)])
        print(f"wrote {path}")


if __name__ == "__main__":
    main(*sys.argv[1:])
