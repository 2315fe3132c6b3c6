"""Command line: render figures from a trapsweep data directory."""

from __future__ import annotations

import argparse
import sys

from .datafiles import FigureDataError
from .figures import RENDERERS, render_all


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="trapfigs",
        description="Render the standard figures from trapsweep data files",
    )
    parser.add_argument("--data-dir", required=True,
                        help="directory produced by `trapsweep figures`")
    parser.add_argument("--out-dir", default=None,
                        help="where to write the images (default: data dir)")
    parser.add_argument("--which", nargs="+", choices=sorted(RENDERERS),
                        default=None, help="subset of figures to render")
    args = parser.parse_args(argv)

    try:
        if args.which:
            out_dir = args.out_dir or args.data_dir
            from pathlib import Path

            written = [RENDERERS[name](args.data_dir, Path(out_dir) / f"{name}.svg")
                       for name in args.which]
        else:
            written = render_all(args.data_dir, args.out_dir)
    except FigureDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
