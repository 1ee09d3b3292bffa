"""Command-line interface: ``cedct figure | transform | image | synth``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from cedct import experiments, image, report
from cedct.constants import DEFAULT_POINTS_PER_INTERVAL
from cedct.errors import DomainError, FormatError
from cedct.multidim import CoefficientTensorND, GridFunctionND, forward_nd, inverse_nd
from cedct.spectral import CoefficientVector, GridFunction1D, forward, inverse_on_grid


class CsvError(ValueError):
    """Malformed CSV input; ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _read_columns(path: Path) -> dict[str, np.ndarray]:
    lines = path.read_text().splitlines()
    if not lines:
        raise CsvError("empty file", 1)
    header = [name.strip() for name in lines[0].split(",")]
    rows = []
    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != len(header):
            raise CsvError(f"expected {len(header)} fields, got {len(cells)}", number)
        try:
            rows.append([float(cell) for cell in cells])
        except ValueError:
            raise CsvError(f"non-numeric field in {line!r}", number) from None
    if len(rows) < 2:
        raise CsvError("need at least two data rows", len(lines))
    data = np.array(rows)
    return {name: data[:, i] for i, name in enumerate(header)}


def _pick(columns: dict[str, np.ndarray], name: str) -> np.ndarray:
    if name in columns:
        return columns[name]
    if len(columns) == 1:
        return next(iter(columns.values()))
    raise CsvError(f"missing column {name!r} (have {', '.join(columns)})", 1)


def _samples_from_csv(path: Path, length: float | None) -> GridFunction1D:
    columns = _read_columns(path)
    g = _pick(columns, "g")
    if "t" in columns and len(columns) > 1:
        t = columns["t"]
        n = g.size - 1
        expected = np.arange(n + 1) / n * t[-1]
        bad = np.flatnonzero(~np.isclose(t, expected, rtol=0, atol=1e-9 * max(1.0, abs(t[-1]))))
        if t[0] != 0 or bad.size:
            line = int(bad[0]) + 2 if bad.size else 2
            raise CsvError("t column must be equidistant starting at 0", line)
        length = t[-1] if length is None else length
    return GridFunction1D(g, 1.0 if length is None else length)


def _is_pgm(path: Path) -> bool:
    with open(path, "rb") as fh:
        return fh.read(2) in (b"P5", b"P2")


def cmd_figure(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ids = experiments.FIGURES if args.which == "all" else (args.which,)
    for figure_id in ids:
        tables = experiments.run(figure_id, n_values=args.n, orders=args.k, points=args.points)
        for table in tables:
            print(report.write_table(table, out))
        if args.plot:
            print(report.plot_tables(figure_id, tables, out))
    return 0


def cmd_transform(args) -> int:
    src, dst = Path(args.input), Path(args.output)
    if args.direction == "forward":
        if _is_pgm(src):
            img = image.load_pgm(src)
            grid = GridFunctionND(img.pixels.astype(float), (img.height - 1, img.width - 1))
            image.write_coefficients(dst, forward_nd(grid).coefficients)
        else:
            a = forward(_samples_from_csv(src, args.length)).coefficients
            report.write_csv(dst, ["j", "a"], zip(range(a.size), a))
    else:
        with open(src, "rb") as fh:
            is_dump = fh.read(8) == image.DUMP_MAGIC
        if is_dump:
            coeffs = CoefficientTensorND(image.read_coefficients(src))
            image.save_pgm(image.render(inverse_nd(coeffs).samples), dst)
        else:
            a = _pick(_read_columns(src), "a")
            g = inverse_on_grid(CoefficientVector(a, args.length or 1.0))
            report.write_csv(dst, ["t", "g"], zip(g.knots, g.samples))
    print(dst)
    return 0


def _parse_block(text: str) -> tuple[int, int]:
    try:
        width, height = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"block must look like WxH, got {text!r}") from None
    return width, height


def cmd_image(args, parser) -> int:
    img = image.load_pgm(args.input)
    width, height = args.block
    if width > img.width or height > img.height:
        parser.error(f"block {width}x{height} is larger than image {img.width}x{img.height}")
    plan = image.BlockPlan.for_image(img, height, width)
    blocks = image.block_transform(img, plan)

    if args.action == "upsample":
        refinement = args.r if args.r is not None else 3
    else:
        refinement = args.r if args.r is not None else 1
        if args.action == "lowpass":
            policy = image.LowPass(args.nmax)
        else:
            policy = image.Threshold(args.frac)
        compressed = [image.compress(b, policy) for b in blocks]
        blocks = [c for c, _ in compressed]
        retained = sum(count for _, count in compressed)
        total = sum(b.coefficients.size for b in blocks)
        print(f"retained {retained} of {total} coefficients")
        print(f"storage ratio {total / retained:.2f}")

    out = image.reconstruct(blocks, plan, refinement)
    image.save_pgm(out, args.output)
    print(f"wrote {args.output} ({out.width}x{out.height})")
    return 0


def cmd_synth(args) -> int:
    height, width = args.height, args.width
    image.save_pgm(image.synthetic_image(height, width), args.output)
    print(args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cedct", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="write CSV tables reproducing a figure")
    fig.add_argument("which", choices=experiments.FIGURES + ("all",))
    fig.add_argument("--n", type=int, action="append", help="interval count (repeatable)")
    fig.add_argument("--k", type=int, action="append", help="truncation order K (repeatable)")
    fig.add_argument("--points", type=int, default=DEFAULT_POINTS_PER_INTERVAL,
                     help="evaluation points per knot interval (default %(default)s)")
    fig.add_argument("--out", default=".", help="output directory")
    fig.add_argument("--plot", action="store_true", help="also render a PNG (needs matplotlib)")

    tr = sub.add_parser("transform", help="forward or inverse transform of a CSV or PGM file")
    tr.add_argument("direction", choices=("forward", "inverse"))
    tr.add_argument("--in", dest="input", required=True)
    tr.add_argument("--out", dest="output", required=True)
    tr.add_argument("--length", type=float, help="interval length T0 for 1-D data")

    im = sub.add_parser("image", help="block CEDCT image upsampling and compression")
    im.add_argument("action", choices=("upsample", "lowpass", "threshold"))
    im.add_argument("--in", dest="input", required=True)
    im.add_argument("--out", dest="output", required=True)
    im.add_argument("--block", type=_parse_block, default=(28, 28), help="block size WxH (default 28x28)")
    im.add_argument("--r", type=int, help="refinement factor (default 3 for upsample, else 1)")
    im.add_argument("--nmax", type=int, default=19)
    im.add_argument("--frac", type=float, default=0.05)

    sy = sub.add_parser("synth", help="write the bundled synthetic test image")
    sy.add_argument("--out", dest="output", required=True)
    sy.add_argument("--height", type=int, default=56)
    sy.add_argument("--width", type=int, default=140)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "figure":
            return cmd_figure(args)
        if args.command == "transform":
            return cmd_transform(args)
        if args.command == "image":
            return cmd_image(args, parser)
        return cmd_synth(args)
    except (DomainError, FormatError, CsvError, OSError) as exc:
        print(f"cedct: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
