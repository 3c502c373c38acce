"""Command-line interface: ``wdzoom zoom|metrics|convergence|bench``.

Machine-readable results go to stdout as TSV; notes go to stderr.
Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .grid import BOUNDARY_MODES, WenoParams
from .harness import FUNCTIONS, run_convergence
from .image_io import PNM_EXTENSIONS, DecodeError, Image, crop_for_scale, decimate, load, save
from .metrics import mssim, psnr
from .resample import ResizeSpec, zoom_image

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2
IMAGE_EXTENSIONS = (".png",) + PNM_EXTENSIONS
METHOD_CHOICES = ("wd-weno", "tensor-weno", "bilinear", "bicubic")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must look like WxH, got {text!r}") from None
    if w < 2 or h < 2:
        raise argparse.ArgumentTypeError("size must be at least 2x2")
    return w, h


def _parse_region(text: str) -> tuple[float, float, float, float]:
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"region must be xmin,xmax,ymin,ymax, got {text!r}") from None
    if len(values) != 4 or values[0] > values[1] or values[2] > values[3]:
        raise argparse.ArgumentTypeError(f"invalid region {text!r}")
    return values


def _positive(kind):
    def parse(text):
        value = kind(text)
        if not value > 0:
            raise argparse.ArgumentTypeError(f"expected a positive value, got {text!r}")
        return value

    return parse


def _workers() -> int:
    env = os.environ.get("WDZOOM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"WDZOOM_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _add_weno_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--beta", type=float, default=2.0, help="weight exponent (default 2)")
    p.add_argument("--keps", type=_positive(float), default=1e-8, help="eps scale K (default 1e-8)")
    p.add_argument("--boundary", choices=BOUNDARY_MODES, default="extrapolate")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wdzoom", description="WENO image zooming and evaluation tools")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("zoom", help="resize an image")
    p.add_argument("input")
    p.add_argument("output")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--scale", type=_positive(float), help="scale factor d: n -> d(n-1)+1")
    target.add_argument("--size", type=_parse_size, help="target size WxH")
    p.add_argument("--method", choices=METHOD_CHOICES, default="wd-weno")
    _add_weno_flags(p)

    p = sub.add_parser("metrics", help="print PSNR and MSSIM of two images")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("convergence", help="analytic convergence experiment")
    p.add_argument("--function", choices=sorted(FUNCTIONS), default="smooth")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--keps", type=_positive(float), default=1e-8)
    p.add_argument("--levels", type=int, default=11)
    p.add_argument("--region", type=_parse_region, default=None, help="xmin,xmax,ymin,ymax")

    p = sub.add_parser("bench", help="crop/decimate/zoom/measure every image in a directory")
    p.add_argument("dir")
    p.add_argument("--scale", type=int, default=2)
    p.add_argument("--methods", default="wd-weno", help="comma-separated list of methods")
    _add_weno_flags(p)
    return parser


def _params(args) -> WenoParams:
    try:
        return WenoParams(beta=args.beta, k_eps=args.keps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_zoom(args) -> int:
    # validated flags before touching any file
    params = _params(args)
    try:
        if args.size is not None:
            spec = ResizeSpec(target_width=args.size[0], target_height=args.size[1], method=args.method)
        else:
            spec = ResizeSpec(scale=args.scale, method=args.method)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    img = load(args.input)
    info: dict = {}
    out = zoom_image(img, spec, params, args.boundary, info=info)
    if info:
        mid = info["intermediate"]
        _note(f"k={info['k']} intermediate={mid[0]}x{mid[1]} tensor_pass={'yes' if info['tensor_pass'] else 'no'}")
    save(out, args.output)
    _note(f"wrote {out.width}x{out.height} to {args.output}")
    return EXIT_OK


def _format_metrics(p: float, s: float) -> str:
    return f"{p:.4f}\t{s:.4f}"


def cmd_metrics(args) -> int:
    a, b = load(args.a), load(args.b)
    if a.data.shape != b.data.shape:
        raise ValueError(f"images differ in size: {a.width}x{a.height}x{a.n_channels} vs {b.width}x{b.height}x{b.n_channels}")
    print(_format_metrics(psnr(a, b), mssim(a, b)))
    return EXIT_OK


def cmd_convergence(args) -> int:
    if args.levels < 2:
        raise UsageError("--levels must be at least 2")
    report = run_convergence(FUNCTIONS[args.function], args.beta, args.levels, region=args.region, k_eps=args.keps)
    sys.stdout.write(report.to_tsv())
    return EXIT_OK


def _referent(img: Image, d: int) -> Image:
    ref = crop_for_scale(img, d)
    extra_w = (ref.width - 1) % d
    extra_h = (ref.height - 1) % d
    if extra_w or extra_h:
        ref = Image(ref.data[: ref.height - extra_h, : ref.width - extra_w, :], ref.bit_depth)
    return ref


def _bench_one(path: Path, d: int, methods: list[str], params: WenoParams, boundary: str):
    ref = _referent(load(path), d)
    small = decimate(ref, d)
    rows = []
    for method in methods:
        spec = ResizeSpec(target_width=ref.width, target_height=ref.height, method=method)
        up = zoom_image(small, spec, params, boundary)
        rows.append((path.name, method, psnr(ref, up), mssim(ref, up)))
    return rows


def cmd_bench(args) -> int:
    if args.scale < 2:
        raise UsageError("--scale must be an integer >= 2")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in METHOD_CHOICES]
    if not methods or bad:
        raise UsageError(f"unknown methods {bad}; choose from {', '.join(METHOD_CHOICES)}")
    params = _params(args)
    root = Path(args.dir)
    if not root.is_dir():
        raise UsageError(f"{root} is not a directory")
    files = sorted(p for p in root.iterdir() if p.suffix.lower() in IMAGE_EXTENSIONS)
    if not files:
        raise UsageError(f"no PNG/PNM images in {root}")
    workers = _workers()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda p: _bench_one(p, args.scale, methods, params, args.boundary), files))

    print("image\tmethod\tPSNR\tMSSIM")
    for rows in results:
        for name, method, p, s in rows:
            print(f"{name}\t{method}\t{_format_metrics(p, s)}")
    for idx, method in enumerate(methods):
        ps = [rows[idx][2] for rows in results]
        ss = [rows[idx][3] for rows in results]
        print(f"AVERAGE\t{method}\t{_format_metrics(sum(ps) / len(ps), sum(ss) / len(ss))}")
    return EXIT_OK


COMMANDS = {"zoom": cmd_zoom, "metrics": cmd_metrics, "convergence": cmd_convergence, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        _note(f"wdzoom {args.command}: {exc}")
        return EXIT_USAGE
    except (DecodeError, ValueError, MemoryError, OSError) as exc:
        _note(f"wdzoom {args.command}: error: {exc}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
