"""``render --study <id> --in <csv> --out <img>``"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .panels import PANELS
from .render import RenderError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="Render a djtransmon study CSV into SVG/PNG.")
    parser.add_argument("--study", required=True,
                        help=f"one of: {', '.join(sorted(PANELS))}")
    parser.add_argument("--in", dest="csv_path", required=True, type=Path)
    parser.add_argument("--out", required=True, type=Path)
    args = parser.parse_args(argv)

    try:
        render(args.csv_path, args.study, args.out)
    except (RenderError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
