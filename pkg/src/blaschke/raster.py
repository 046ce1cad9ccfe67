"""Parameter-space rasters and their image/CSV serialization.

A slice fixes the second cubic parameter and classifies a square window of
the first parameter per pixel; the unicritical raster classifies the
one-parameter family ((z - w)/(1 - conj(w) z))^d over a w window via the
orbit oracle.  Images are binary PPM (P6, 8-bit RGB, row-major from the top);
PNG can be written from the same pixel buffer.  All outputs are byte-stable
for identical inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import tolerances
from .dynamics import Verdict, cubic_deltas, denjoy_wolff
from .products import CubicParameters, from_cubic_parameters, unicritical_product

__all__ = [
    "SliceGrid",
    "render_slice",
    "render_unicritical",
    "write_ppm",
    "write_png",
    "write_slice_csv",
    "write_unicritical_csv",
    "VERDICT_COLORS",
    "DISAGREEMENT_COLOR",
]

# Verdict codes used in CSV files and as the raster's cell states.
CODE_ELLIPTIC = "E"
CODE_PARABOLIC = "P"
CODE_HYPERBOLIC = "H"
CODE_EXTERIOR = "X"
CODE_INDETERMINATE = "I"

VERDICT_COLORS = {
    CODE_ELLIPTIC: (30, 30, 30),
    CODE_HYPERBOLIC: (230, 230, 230),
    CODE_PARABOLIC: (220, 60, 60),
    CODE_EXTERIOR: (0, 0, 0),
    CODE_INDETERMINATE: (70, 110, 200),
}
DISAGREEMENT_COLOR = (255, 200, 0)

_VERDICT_TO_CODE = {
    Verdict.ELLIPTIC: CODE_ELLIPTIC,
    Verdict.PARABOLIC: CODE_PARABOLIC,
    Verdict.HYPERBOLIC: CODE_HYPERBOLIC,
    Verdict.INDETERMINATE: CODE_INDETERMINATE,
}


def _axis(resolution: int, extent: float) -> np.ndarray:
    """Pixel-center coordinates, exactly antisymmetric about the origin."""
    k = np.arange(resolution)
    return (2 * k + 1 - resolution) * (extent / resolution)


@dataclass
class SliceGrid:
    """Raster of classification outcomes over one parameter window.

    ``values`` holds the sampled parameter per pixel, row-major with the top
    row first (positive imaginary part at the top).  Formula columns are
    populated in formula/both mode, oracle columns at oracle-sampled pixels.
    """

    s: complex
    resolution: int
    extent: float
    mode: str
    values: np.ndarray
    verdict_formula: np.ndarray | None = None
    deltas: np.ndarray | None = None
    p_value: np.ndarray | None = None
    verdict_oracle: np.ndarray | None = None
    dw_points: np.ndarray | None = None
    multipliers: np.ndarray | None = None
    parameter_name: str = "r"

    @property
    def primary_codes(self) -> np.ndarray:
        if self.verdict_formula is not None:
            return self.verdict_formula
        return self.verdict_oracle

    def rgb(self) -> np.ndarray:
        """Pixel colors as (resolution, resolution, 3) uint8."""
        codes = self.primary_codes
        img = np.zeros((codes.size, 3), dtype=np.uint8)
        for code, color in VERDICT_COLORS.items():
            img[codes == code] = color
        return img.reshape(self.resolution, self.resolution, 3)

    def disagreement_rgb(self) -> np.ndarray:
        """Diff image: disagreement color where both routes ran and differ."""
        img = np.zeros((self.resolution * self.resolution, 3), dtype=np.uint8)
        if self.verdict_formula is not None and self.verdict_oracle is not None:
            both = (self.verdict_formula != "") & (self.verdict_oracle != "")
            differ = both & (self.verdict_formula != self.verdict_oracle)
            img[differ] = DISAGREEMENT_COLOR
        return img.reshape(self.resolution, self.resolution, 3)


def _formula_codes(r_values: np.ndarray, s: complex, tol_parabolic: float):
    """Vectorized full-delta-criterion verdicts on an array of r values.

    Mirrors the scalar Schur pipeline: strict positivity of all deltas beyond
    the band is hyperbolic, band membership with the rest nonnegative is
    parabolic, and pixels where the pipeline would degenerate (the transform
    chain loses a degree early, notably the r = 0 line) are indeterminate.
    """
    d1, d2, d3, s1, s2, s3 = cubic_deltas(r_values, s)
    b1 = tol_parabolic * np.maximum(s1, 1e-300)
    b2 = tol_parabolic * np.maximum(s2, 1e-300)
    b3 = tol_parabolic * np.maximum(s3, 1e-300)

    # Degeneracy mirror of the coefficient pipeline: an intermediate transform
    # loses its leading coefficient (relative to its own trim scale), so the
    # iteration cannot reach the third delta.  The r = 0 line is the notable
    # member (the second transform collapses to a constant there).
    one_s = 1.0 + s
    sr = s * r_values
    skew = np.conj(sr) - sr
    c2 = 8.0 * np.conj(r_values) * skew + 3.0 * one_s**2
    c1 = -(12.0 * np.conj(r_values) * np.conj(one_s) + 2.0 * one_s * (sr - np.conj(sr)))
    ell = (np.abs(one_s) ** 2 - 16.0 * np.abs(r_values) ** 2) * (
        2.0 * one_s * (sr - np.conj(sr)) + 12.0 * np.conj(r_values) * np.conj(one_s)
    ) + c2 * (2.0 * np.conj(one_s) * skew + 12.0 * r_values * one_s)
    trim = tolerances.COEFF_TRIM
    tq_scale = np.maximum(np.maximum(np.abs(c2), np.abs(c1)), np.abs(d1))
    t2q_scale = np.maximum(np.abs(ell), np.abs(d2))
    degenerate = (np.abs(c2) <= trim * np.maximum(tq_scale, 1e-300)) | (
        np.abs(ell) <= trim * np.maximum(t2q_scale, 1e-300)
    )

    hyper = (d1 > b1) & (d2 > b2) & (d3 > b3)
    nonneg = (d1 >= -b1) & (d2 >= -b2) & (d3 >= -b3)
    codes = np.full(r_values.shape, CODE_ELLIPTIC, dtype="<U1")
    codes[nonneg] = CODE_PARABOLIC
    codes[hyper] = CODE_HYPERBOLIC
    codes[degenerate] = CODE_INDETERMINATE
    return codes, d1, d2, d3


def render_slice(
    s,
    resolution: int,
    extent: float = 1.0,
    mode: str = "formula",
    oracle_stride: int = 4,
    tol_parabolic: float | None = None,
) -> SliceGrid:
    """Classify a square window of the first cubic parameter at fixed s.

    ``mode`` is "formula", "oracle", or "both".  The oracle is roughly two
    orders of magnitude slower than the formula, so oracle pixels are
    subsampled with the given stride (1 evaluates every pixel).  Pixels with
    |r| >= 1 are exterior.  Output grids are deterministic functions of the
    arguments.
    """
    if mode not in ("formula", "oracle", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    if not 16 <= resolution <= 8192:
        raise ValueError("resolution must lie in [16, 8192]")
    s = complex(s)
    band = tolerances.PARABOLIC_DELTA_BAND if tol_parabolic is None else tol_parabolic

    axis = _axis(resolution, extent)
    re = axis[None, :]
    im = -axis[:, None]  # top row first
    r_values = (re + 1j * im).reshape(-1)
    exterior = np.abs(r_values) >= 1.0

    grid = SliceGrid(
        s=s,
        resolution=resolution,
        extent=extent,
        mode=mode,
        values=r_values,
    )

    if mode in ("formula", "both"):
        codes, d1, d2, d3 = _formula_codes(r_values, s, band)
        codes[exterior] = CODE_EXTERIOR
        grid.verdict_formula = codes
        grid.deltas = np.stack([d1, d2, d3], axis=1)
        grid.p_value = d3

    if mode in ("oracle", "both"):
        ocodes = np.full(r_values.shape, "", dtype="<U1")
        dw = np.full(r_values.shape, np.nan + 1j * np.nan, dtype=complex)
        mult = np.full(r_values.shape, np.nan)
        stride = max(1, int(oracle_stride))
        rows = np.arange(0, resolution, stride)
        for i in rows:
            for j in rows:
                idx = i * resolution + j
                if exterior[idx]:
                    ocodes[idx] = CODE_EXTERIOR
                    continue
                res = denjoy_wolff(from_cubic_parameters(CubicParameters(r_values[idx], s)))
                ocodes[idx] = _VERDICT_TO_CODE[res.verdict]
                if res.dw_point is not None:
                    dw[idx] = res.dw_point
                if res.multiplier is not None:
                    mult[idx] = res.multiplier
        grid.verdict_oracle = ocodes
        grid.dw_points = dw
        grid.multipliers = mult

    return grid


def render_unicritical(d: int, resolution: int, extent: float = 1.0) -> SliceGrid:
    """Oracle classification of the unicritical degree-d family over w."""
    if not 2 <= d <= 6:
        raise ValueError("degree must lie in [2, 6]")
    if not 16 <= resolution <= 4096:
        raise ValueError("resolution must lie in [16, 4096]")
    axis = _axis(resolution, extent)
    re = axis[None, :]
    im = -axis[:, None]
    w_values = (re + 1j * im).reshape(-1)
    exterior = np.abs(w_values) >= 1.0

    codes = np.full(w_values.shape, CODE_EXTERIOR, dtype="<U1")
    dw = np.full(w_values.shape, np.nan + 1j * np.nan, dtype=complex)
    mult = np.full(w_values.shape, np.nan)
    for idx in range(w_values.size):
        if exterior[idx]:
            continue
        res = denjoy_wolff(unicritical_product(w_values[idx], d))
        codes[idx] = _VERDICT_TO_CODE[res.verdict]
        if res.dw_point is not None:
            dw[idx] = res.dw_point
        if res.multiplier is not None:
            mult[idx] = res.multiplier

    return SliceGrid(
        s=0j,
        resolution=resolution,
        extent=extent,
        mode="oracle",
        values=w_values,
        verdict_oracle=codes,
        dw_points=dw,
        multipliers=mult,
        parameter_name="w",
    )


# -- serialization -------------------------------------------------------------


def write_ppm(path, rgb: np.ndarray) -> None:
    """Binary PPM (P6), 8-bit RGB, rows written top to bottom."""
    h, w, _ = rgb.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(rgb.astype(np.uint8).tobytes())


def write_png(path, rgb: np.ndarray) -> None:
    """PNG from the same pixel buffer (requires Pillow)."""
    from PIL import Image

    Image.fromarray(rgb.astype(np.uint8), mode="RGB").save(path, format="PNG")


def write_image(path, rgb: np.ndarray) -> None:
    """Dispatch on extension: .png via Pillow, anything else binary PPM."""
    if str(path).lower().endswith(".png"):
        write_png(path, rgb)
    else:
        write_ppm(path, rgb)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_slice_csv(path, grid: SliceGrid) -> None:
    """One row per pixel, row-major: parameter, deltas, discriminant, verdicts,
    attractor and multiplier.  Oracle columns are empty where not computed."""
    lines = [
        "re_r,im_r,delta1,delta2,delta3,p_value,verdict_formula,verdict_oracle,"
        "dw_re,dw_im,multiplier"
    ]
    n = grid.values.size
    for idx in range(n):
        r = grid.values[idx]
        if grid.deltas is not None:
            d1, d2, d3 = grid.deltas[idx]
            dcols = [_fmt(d1), _fmt(d2), _fmt(d3), _fmt(grid.p_value[idx])]
            vf = grid.verdict_formula[idx]
        else:
            dcols = ["", "", "", ""]
            vf = ""
        if grid.verdict_oracle is not None and grid.verdict_oracle[idx]:
            vo = grid.verdict_oracle[idx]
            dwv = grid.dw_points[idx]
            mu = grid.multipliers[idx]
            ocols = [
                _fmt(dwv.real) if dwv == dwv else "",
                _fmt(dwv.imag) if dwv == dwv else "",
                _fmt(mu) if mu == mu else "",
            ]
        else:
            vo = ""
            ocols = ["", "", ""]
        lines.append(
            ",".join([_fmt(r.real), _fmt(r.imag), *dcols, vf, vo, *ocols])
        )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_unicritical_csv(path, grid: SliceGrid) -> None:
    lines = ["re_w,im_w,verdict_oracle,dw_re,dw_im,multiplier"]
    for idx in range(grid.values.size):
        w = grid.values[idx]
        vo = grid.verdict_oracle[idx]
        dwv = grid.dw_points[idx]
        mu = grid.multipliers[idx]
        lines.append(
            ",".join(
                [
                    _fmt(w.real),
                    _fmt(w.imag),
                    vo,
                    _fmt(dwv.real) if dwv == dwv else "",
                    _fmt(dwv.imag) if dwv == dwv else "",
                    _fmt(mu) if mu == mu else "",
                ]
            )
        )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
