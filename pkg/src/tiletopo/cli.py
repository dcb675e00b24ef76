"""Command-line front door: exact parameter parsing, JSON reports, images.

Subcommands mirror the library: shift-analyze / shift-render for the
parity-shift family, diag-analyze / diag-render for the diagonal-shift
family, qp-check / qp-patch for translate-set quasi-periodicity, and
oracle for the independent cross-check suites.  All reports are JSON on
stdout; files land at --out via write-temp-then-rename; identical flags
produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .errors import TileTopoError
from .numeric import Point2, format_rational, rational

_DEFAULT_ORACLE_SEED = 20240817


def _parse_eps(text: str, demo_float: bool):
    """Exact Fraction unless --demo-float explicitly allows a float."""
    if demo_float:
        return float(text)
    return rational(text)


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w_txt, h_txt = text.lower().split("x")
        width, height = int(w_txt), int(h_txt)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"size must look like 729x243, got {text!r}") from exc
    if width < 1 or height < 1:
        raise argparse.ArgumentTypeError("size must be positive")
    return (width, height)


def _parse_grid(text: str) -> tuple[Fraction, Fraction, int]:
    try:
        start_txt, stop_txt, count_txt = text.split(":")
        start, stop, count = rational(start_txt), rational(stop_txt), int(count_txt)
    except (ValueError, TileTopoError) as exc:
        raise argparse.ArgumentTypeError(f"grid must look like start:stop:count, got {text!r}") from exc
    if count < 2 or stop <= start:
        raise argparse.ArgumentTypeError("grid needs stop > start and count >= 2")
    return (start, stop, count)


def _grid_values(spec: tuple[Fraction, Fraction, int]) -> list[Fraction]:
    start, stop, count = spec
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiletopo",
        description="Exact topology reports for one-parameter self-affine tile families.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_params(cmd: argparse.ArgumentParser, *, demo: bool = False) -> None:
        cmd.add_argument("--p", type=int, required=True, help="integer base (|p| >= 3)")
        cmd.add_argument("--eps", type=str, required=True, help="shift parameter: a/b, integer, or decimal")
        if demo:
            cmd.add_argument(
                "--demo-float",
                action="store_true",
                help="treat --eps as a float demonstration input (uncertified)",
            )

    cmd = sub.add_parser("shift-analyze", help="interior components / disk-likeness report")
    add_params(cmd, demo=True)
    cmd.add_argument("--grid", type=_parse_grid, help="eps sweep start:stop:count, CSV to --out")
    cmd.add_argument("--out", type=str, help="write the report (or grid CSV) to this file")
    cmd.add_argument("--fig", type=str, help="save a matplotlib figure alongside the report")

    cmd = sub.add_parser("shift-render", help="rasterize a parity-shift tile to PPM")
    add_params(cmd)
    cmd.add_argument("--depth", type=int, default=7, help="expansion depth (default 7)")
    cmd.add_argument("--size", type=_parse_size, default=(729, 243), help="WxH (default 729x243)")
    cmd.add_argument("--out", type=str, required=True, help="PPM output path")

    cmd = sub.add_parser("diag-analyze", help="connectivity certificate report")
    add_params(cmd, demo=True)
    cmd.add_argument("--grid", type=_parse_grid, help="eps sweep start:stop:count, CSV to --out")
    cmd.add_argument("--out", type=str, help="write the report (or grid CSV) to this file")
    cmd.add_argument("--fig", type=str, help="save a matplotlib figure alongside the report")

    cmd = sub.add_parser("diag-render", help="rasterize a diagonal-shift tile to PPM")
    add_params(cmd)
    cmd.add_argument("--depth", type=int, default=7, help="expansion depth (default 7)")
    cmd.add_argument("--size", type=_parse_size, default=(729, 729), help="WxH (default 729x729)")
    cmd.add_argument("--out", type=str, required=True, help="PPM output path")

    cmd = sub.add_parser("qp-check", help="quasi-periodicity verdict with evidence")
    add_params(cmd, demo=True)
    cmd.add_argument("--k", type=int, default=3, help="census level (default 3)")
    cmd.add_argument("--out", type=str, help="also write the JSON report to this file")

    cmd = sub.add_parser("qp-patch", help="export a level-k translate set")
    add_params(cmd)
    cmd.add_argument("--k", type=int, required=True, help="patch level")
    cmd.add_argument("--out", type=str, required=True, help="patch point file path")
    cmd.add_argument("--fig", type=str, help="save a scatter figure of the patch")

    cmd = sub.add_parser("oracle", help="run an independent cross-check suite")
    cmd.add_argument(
        "--suite",
        choices=("strips", "components", "diag", "census"),
        required=True,
    )
    cmd.add_argument("--seed", type=int, default=_DEFAULT_ORACLE_SEED)

    return parser


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _atomic_write_text(path: str, payload: str) -> None:
    import os
    import tempfile

    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out_path: str | None) -> None:
    sys.stdout.write(text)
    if out_path:
        _atomic_write_text(out_path, text)


def _cmd_shift_analyze(args: argparse.Namespace) -> int:
    from .shift import ShiftParams, component_count

    if args.grid is not None:
        rows = []
        for eps in _grid_values(args.grid):
            report = component_count(ShiftParams(args.p, eps))
            rows.append((eps, report.component_count))
        lines = ["eps,components\n"] + [
            f"{format_rational(eps)},{count}\n" for eps, count in rows
        ]
        _emit("".join(lines), args.out)
        if args.fig:
            from .figures import save_grid_figure

            save_grid_figure(rows, args.fig, f"interior components, p={args.p}", "components")
        return 0

    eps = _parse_eps(args.eps, args.demo_float)
    certified = not args.demo_float
    params = ShiftParams(args.p, rational(str(eps)) if args.demo_float else eps)
    report = component_count(params)
    payload = report.to_json_dict()
    payload["certified"] = certified
    _emit(_dump_json(payload), args.out)
    if args.fig:
        from .figures import save_attractor_figure
        from .render import attractor_view, render_attractor
        from .shift import build_shift_digits

        ds = build_shift_digits(params)
        view = attractor_view(ds)
        image = render_attractor(ds, 6, view, 540, 198)
        title = (
            f"p={params.p}, eps={format_rational(params.eps)}: "
            f"{report.component_count} interior component(s), level {report.cell_level}"
        )
        save_attractor_figure(image, view, args.fig, title)
    return 0


def _cmd_shift_render(args: argparse.Namespace) -> int:
    from .render import attractor_view, render_attractor, write_ppm
    from .shift import ShiftParams, build_shift_digits

    params = ShiftParams(args.p, _parse_eps(args.eps, False))
    ds = build_shift_digits(params)
    width, height = args.size
    image = render_attractor(ds, args.depth, attractor_view(ds), width, height)
    write_ppm(image, args.out)
    sys.stdout.write(_dump_json({"out": args.out, "width": width, "height": height}))
    return 0


def _cmd_diag_analyze(args: argparse.Namespace) -> int:
    from .diag import DiagParams, connectivity_certificate

    if args.grid is not None:
        rows = []
        for eps in _grid_values(args.grid):
            cert = connectivity_certificate(DiagParams(args.p, eps))
            rows.append((eps, 1 if cert.verdict == "Connected" else 0))
        lines = ["eps,connected\n"] + [
            f"{format_rational(eps)},{flag}\n" for eps, flag in rows
        ]
        _emit("".join(lines), args.out)
        if args.fig:
            from .figures import save_grid_figure

            save_grid_figure(rows, args.fig, f"connectivity, p={args.p}", "connected")
        return 0

    eps = _parse_eps(args.eps, args.demo_float)
    certified = not args.demo_float
    params = DiagParams(args.p, rational(str(eps)) if args.demo_float else eps)
    cert = connectivity_certificate(params)
    payload = cert.to_json_dict()
    payload["certified"] = certified
    _emit(_dump_json(payload), args.out)
    if args.fig:
        from .diag import build_diag_digits
        from .figures import save_attractor_figure
        from .render import attractor_view, render_attractor

        ds = build_diag_digits(params)
        view = attractor_view(ds)
        image = render_attractor(ds, 6, view, 420, 420)
        title = f"p={params.p}, eps={format_rational(params.eps)}: {cert.verdict} (case {cert.case_tag})"
        save_attractor_figure(
            image, view, args.fig, title, witness=cert.witness, separation=cert.separation
        )
    return 0


def _cmd_diag_render(args: argparse.Namespace) -> int:
    from .diag import DiagParams, build_diag_digits
    from .render import attractor_view, render_attractor, write_ppm

    params = DiagParams(args.p, _parse_eps(args.eps, False))
    ds = build_diag_digits(params)
    width, height = args.size
    image = render_attractor(ds, args.depth, attractor_view(ds), width, height)
    write_ppm(image, args.out)
    sys.stdout.write(_dump_json({"out": args.out, "width": width, "height": height}))
    return 0


def _cmd_qp_check(args: argparse.Namespace) -> int:
    from .qp import is_quasi_periodic

    report = is_quasi_periodic(
        args.p,
        args.eps if not args.demo_float else float(args.eps),
        demo_float=args.demo_float,
        census_level=args.k,
    )
    _emit(_dump_json(report.to_json_dict()), args.out)
    return 0


def _cmd_qp_patch(args: argparse.Namespace) -> int:
    from .qp import translate_set, write_patch_points
    from .shift import ShiftParams

    params = ShiftParams(args.p, _parse_eps(args.eps, False))
    patch = translate_set(params, args.k)
    write_patch_points(patch.points, args.out)
    sys.stdout.write(
        _dump_json({"out": args.out, "k": args.k, "points": len(patch.points)})
    )
    if args.fig:
        from .figures import save_patch_figure

        save_patch_figure(
            patch.points,
            args.fig,
            f"level-{args.k} translate patch, p={params.p}, eps={format_rational(params.eps)}",
        )
    return 0


def _oracle_strips(seed: int) -> list[str]:
    from .oracles import random_rationals, sibling_interval_brackets
    from .shift import ShiftParams

    rng = random.Random(seed)
    lines = []
    for eps in random_rationals(rng, 50, Fraction(-12), Fraction(12)):
        params = ShiftParams(3, eps)
        for n in (0, 1, 2):
            first, second = sibling_interval_brackets(params, n)
            if not (first.ok and second.ok):
                raise TileTopoError(
                    f"bracket miss at eps={format_rational(eps)}, n={n}"
                )
        lines.append(f"ok strips eps={format_rational(eps)}")
    return lines


def _oracle_components(seed: int) -> list[str]:
    from .oracles import component_count_by_graph
    from .shift import ShiftParams

    lines = []
    for i in range(200):
        eps = Fraction(80 * i, 199)
        n, closed, graph = component_count_by_graph(ShiftParams(3, eps))
        if closed != graph:
            raise TileTopoError(f"component mismatch at eps={format_rational(eps)}")
        lines.append(f"ok components eps={format_rational(eps)} n={n} count={closed}")
    return lines


def _oracle_diag(seed: int) -> list[str]:
    from .oracles import diag_flip_vs_closed_form

    lines = []
    for p in (3, 4, 5):
        hi = Fraction((p - 1) ** 2, p - 2) + 1
        grid = [hi * i / 99 for i in range(100)]
        rows = diag_flip_vs_closed_form(p, grid)
        lines.extend(
            f"ok diag p={p} eps={format_rational(eps)} connected={flag} case={case}"
            for eps, flag, case in rows
        )
    return lines


def _oracle_census(seed: int) -> list[str]:
    from .oracles import census_agreement
    from .shift import ShiftParams

    lines = []
    for eps in (Fraction(1), Fraction(1, 2), Fraction(2, 7)):
        params = ShiftParams(3, eps)
        for c in (1, 2):
            fast, brute = census_agreement(params, c, 2)
            if fast != brute:
                raise TileTopoError(
                    f"census mismatch at eps={format_rational(eps)}, c={c}: {fast} vs {brute}"
                )
            lines.append(f"ok census eps={format_rational(eps)} c={c} classes={fast}")
    return lines


def _cmd_oracle(args: argparse.Namespace) -> int:
    suites = {
        "strips": _oracle_strips,
        "components": _oracle_components,
        "diag": _oracle_diag,
        "census": _oracle_census,
    }
    lines = suites[args.suite](args.seed)
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


_DISPATCH = {
    "shift-analyze": _cmd_shift_analyze,
    "shift-render": _cmd_shift_render,
    "diag-analyze": _cmd_diag_analyze,
    "diag-render": _cmd_diag_render,
    "qp-check": _cmd_qp_check,
    "qp-patch": _cmd_qp_patch,
    "oracle": _cmd_oracle,
}


def run(argv: list[str] | None = None) -> int:
    """Parse argv and execute one subcommand; library errors exit 1 as JSON."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.subcommand](args)
    except TileTopoError as exc:
        sys.stderr.write(
            _dump_json({"error": type(exc).__name__, "message": str(exc)})
        )
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
