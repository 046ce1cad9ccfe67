"""Command-line front end.

Subcommands: ``classify`` (verdict for one map), ``slice`` (parameter-window
raster at fixed s), ``unicritical`` (one-parameter family raster),
``normalize`` (normal-form reduction), ``inflect`` (critical points,
hyperbolic midpoint, inflection residual).  Exit codes: 0 success, 1 usage
or I/O error, 2 indeterminate verdict or residual failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dynamics import Verdict, classify
from .hypcalc import inflection_point_cubic, inflection_scan
from .products import (
    CubicParameters,
    FiniteBlaschkeProduct,
    NormalFormError,
    QuadraticParameter,
)
from .raster import (
    render_slice,
    render_unicritical,
    write_image,
    write_slice_csv,
    write_unicritical_csv,
)

USAGE_EXIT = 1
INDETERMINATE_EXIT = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the CLI contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _usage_error(message: str) -> SystemExit:
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(USAGE_EXIT)


def parse_complex(text: str) -> complex:
    """Parse a complex number; accepts both 'i' and 'j' imaginary units."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from exc


def _load_product(args) -> FiniteBlaschkeProduct:
    if getattr(args, "input", None):
        text = Path(args.input).read_text()
        return FiniteBlaschkeProduct.from_record(text)
    if getattr(args, "zeros", None):
        zeros = [parse_complex(t) for t in args.zeros.split(",") if t.strip()]
        mu = parse_complex(args.mu) if args.mu else 1.0 + 0j
        return FiniteBlaschkeProduct(zeros, mu)
    raise _usage_error("provide --input FILE or --zeros LIST")


def _print_classification(result) -> None:
    print(f"verdict: {result.verdict.value}")
    print(f"route: {result.route}")
    if result.deltas:
        print("deltas: [" + ", ".join(f"{d:.12g}" for d in result.deltas) + "]")
    if result.p_value is not None:
        print(f"p_value: {result.p_value:.12g}")
    if result.dw_point is not None:
        print(f"dw_point: {result.dw_point.real:.15g} {result.dw_point.imag:.15g}")
    if result.multiplier is not None:
        print(f"multiplier: {result.multiplier:.15g}")
    print(f"discrepancy: {result.discrepancy if result.discrepancy else 'none'}")


def _cmd_classify(args) -> int:
    if args.deg2:
        if args.u is None:
            raise _usage_error("--deg2 requires --u")
        target = QuadraticParameter(args.u)
    elif args.deg3:
        if args.r is None or args.s is None:
            raise _usage_error("--deg3 requires --r and --s")
        target = CubicParameters(args.r, args.s)
    else:
        target = _load_product(args)
    result = classify(target, tol_parabolic=args.tol_parabolic)
    _print_classification(result)
    return INDETERMINATE_EXIT if result.verdict is Verdict.INDETERMINATE else 0


def _cmd_slice(args) -> int:
    grid = render_slice(
        args.s,
        resolution=args.resolution,
        extent=args.extent,
        mode=args.mode,
        oracle_stride=1 if args.oracle_full else 4,
        tol_parabolic=args.tol_parabolic,
    )
    try:
        if args.out_image:
            write_image(args.out_image, grid.rgb())
        if args.out_csv:
            write_slice_csv(args.out_csv, grid)
        if args.mode == "both":
            diff_path = args.out_diff or _derived_diff_path(args.out_image)
            if diff_path:
                write_image(diff_path, grid.disagreement_rgb())
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return USAGE_EXIT
    return 0


def _derived_diff_path(image_path):
    if not image_path:
        return None
    p = Path(image_path)
    return str(p.with_suffix(".diff" + p.suffix))


def _cmd_unicritical(args) -> int:
    grid = render_unicritical(args.d, resolution=args.resolution)
    try:
        if args.out_image:
            write_image(args.out_image, grid.rgb())
        if args.out_csv:
            write_unicritical_csv(args.out_csv, grid)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return USAGE_EXIT
    return 0


def _print_automorphism(auto) -> None:
    rot = auto.rotation.value
    cen = auto.center.value
    print(f"automorphism rotation: {rot.real:.15g} {rot.imag:.15g}")
    print(f"automorphism center: {cen.real:.15g} {cen.imag:.15g}")


def _cmd_normalize(args) -> int:
    B = _load_product(args)
    try:
        if B.degree == 2:
            params, auto, residual = B.normal_form_quadratic()
            print(f"u: {params.u.real:.15g} {params.u.imag:.15g}")
        elif B.degree == 3:
            params, auto, residual = B.normal_form_cubic()
            print(f"r: {params.r.real:.15g} {params.r.imag:.15g}")
            print(f"s: {params.s.real:.15g} {params.s.imag:.15g}")
        else:
            raise _usage_error("normalize supports degrees 2 and 3")
    except NormalFormError as exc:
        print(f"residual failure: {exc}", file=sys.stderr)
        if exc.residual is not None:
            print(f"best candidate residual: {exc.residual:.3e}", file=sys.stderr)
        return INDETERMINATE_EXIT
    _print_automorphism(auto)
    print(f"residual: {residual:.3e}")
    return 0


def _cmd_inflect(args) -> int:
    B = _load_product(args)
    if B.degree == 3:
        c1, c2 = B.critical_points()
        m, residual = inflection_point_cubic(B)
        print(f"critical_point_1: {c1.real:.15g} {c1.imag:.15g}")
        print(f"critical_point_2: {c2.real:.15g} {c2.imag:.15g}")
        print(f"midpoint: {m.real:.15g} {m.imag:.15g}")
        print(f"h2_residual: {residual:.6e}")
    elif not args.scan:
        raise _usage_error("inflect requires degree 3 (or --scan for degrees 2-5)")
    if args.scan:
        if not 2 <= B.degree <= 5:
            raise _usage_error("--scan supports degrees 2 through 5")
        hits = inflection_scan(B, grid_step=args.grid_step)
        print(f"scan_zeros: {len(hits)}")
        for z, val in hits:
            print(f"zero: {z.real:.15g} {z.imag:.15g} abs_h: {val:.6e}")
    return 0


def _add_product_inputs(parser) -> None:
    parser.add_argument("--input", help="path to a plain-text product record")
    parser.add_argument("--zeros", help="comma-separated zeros, e.g. '0.1+0.2i,0.3,-0.1i'")
    parser.add_argument("--mu", help="unimodular factor (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blaschke", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_cls = sub.add_parser("classify", help="classify one Blaschke product")
    p_cls.add_argument("--deg2", action="store_true", help="use the quadratic normal form")
    p_cls.add_argument("--deg3", action="store_true", help="use the cubic normal form")
    p_cls.add_argument("--u", type=parse_complex, help="quadratic parameter")
    p_cls.add_argument("--r", type=parse_complex, help="first cubic parameter")
    p_cls.add_argument("--s", type=parse_complex, help="second cubic parameter")
    p_cls.add_argument("--tol-parabolic", type=float, default=None, dest="tol_parabolic")
    _add_product_inputs(p_cls)
    p_cls.set_defaults(func=_cmd_classify)

    p_slc = sub.add_parser("slice", help="raster a parameter-window slice at fixed s")
    p_slc.add_argument("--s", type=parse_complex, required=True)
    p_slc.add_argument("--resolution", type=int, default=512)
    p_slc.add_argument("--extent", type=float, default=1.0)
    p_slc.add_argument("--mode", choices=("formula", "oracle", "both"), default="formula")
    p_slc.add_argument("--oracle-full", action="store_true", dest="oracle_full",
                       help="evaluate the oracle at every pixel instead of every 4th")
    p_slc.add_argument("--tol-parabolic", type=float, default=None, dest="tol_parabolic")
    p_slc.add_argument("--seed", type=int, default=0, help="reserved for sampling modes")
    p_slc.add_argument("--out-image", dest="out_image")
    p_slc.add_argument("--out-csv", dest="out_csv")
    p_slc.add_argument("--out-diff", dest="out_diff")
    p_slc.set_defaults(func=_cmd_slice)

    p_uni = sub.add_parser("unicritical", help="raster the unicritical degree-d family")
    p_uni.add_argument("--d", type=int, required=True)
    p_uni.add_argument("--resolution", type=int, default=256)
    p_uni.add_argument("--seed", type=int, default=0, help="reserved for sampling modes")
    p_uni.add_argument("--out-image", dest="out_image")
    p_uni.add_argument("--out-csv", dest="out_csv")
    p_uni.set_defaults(func=_cmd_unicritical)

    p_nrm = sub.add_parser("normalize", help="reduce a degree-2/3 product to normal form")
    _add_product_inputs(p_nrm)
    p_nrm.set_defaults(func=_cmd_normalize)

    p_inf = sub.add_parser("inflect", help="critical points and inflection point")
    _add_product_inputs(p_inf)
    p_inf.add_argument("--scan", action="store_true", help="grid scan for |h2| zeros")
    p_inf.add_argument("--grid-step", type=float, default=0.02, dest="grid_step")
    p_inf.set_defaults(func=_cmd_inflect)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
