"""Deterministic violation search for the a-subadditivity gap.

Pipeline:

1. **Grid scan** (:func:`scan_gap_min`): evaluate the gap functional on an
   ``n x n`` grid over a rectangle, then repeatedly re-grid a 10x smaller
   box centred on the running argmin (clipped to the original rectangle),
   keeping the best node seen (ties broken lexicographically).  All node
   arithmetic runs in the selected kernel backend under the determinism
   contract of ``_gridscan_py``; the report's ``min_gap`` is re-evaluated
   at the argmin with :func:`subadd.analytic_core.gap` so the reported
   value is backend-independent for a given argmin.

2. **Line-search polish** (inside :func:`find_violation`): golden-section
   descent along alternating coordinate lines (5 sweeps, 200 iterations
   per line, brackets one original grid step wide, clipped to the box),
   tracking the best probed point.

3. **High-precision confirmation**: the candidate's margin ``-gap`` is
   recomputed with :class:`subadd.analytic_core.HighPrecision` (128 bits
   minimum).  A violation is reported only when that margin is strictly
   positive, so float64 noise can never manufacture a false violation.

The default violation box searches ``x`` in ``(0, 0.1]`` and ``y`` within
ten bump-widths of the ring (``mu - 10 sigma`` to ``mu + 10 sigma``): for
this family, small positive ``x`` with ``a*x + y`` landing just inside the
ring peak while ``y`` sits in the dip is the violation mechanism, so this
window is where genuine violations concentrate (the reference witnesses
follow the same pattern).

:func:`reproduce_table` re-derives the five stored reference parameter
rows: it recomputes each row's order-3 margin at the stored witness point
in high precision and corroborates order-2 behaviour with a scan.  The
recomputed margins do **not** match the stored reference margins — see the
README's "Known discrepancies".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ._backend import scan_block
from .analytic_core import (
    HighPrecision,
    Order,
    OrderLike,
    Params,
    Point,
    gap,
    order_value,
)
from .errors import InputError, RangeError

__all__ = [
    "ScanConfig",
    "ScanReport",
    "Violation",
    "TableRow",
    "scan_gap_min",
    "find_violation",
    "verify_point",
    "reproduce_table",
    "violation_scan_config",
    "TABLE_REFERENCE_ROWS",
    "TABLE_ALPHA",
]

#: Golden-section constants.
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_GSS_ITERS = 200
_GSS_SWEEPS = 5

#: Defaults for the violation search.
_DEFAULT_GRID_N = 401
_DEFAULT_REFINE_DEPTH = 2
_DEFAULT_TOLERANCE = 1e-9

#: Stored reference rows: (mu, sigma, x_star, y_star, stored_margin), all
#: sharing TABLE_ALPHA.  ``stored_margin`` is the reference value this
#: package attempts (and documentedly fails) to reproduce.
TABLE_ALPHA = 0.117783036
TABLE_REFERENCE_ROWS: Tuple[Tuple[float, float, float, float, float], ...] = (
    (1.5, 0.05, 0.00675, 1.45367, 0.001664770),
    (2.0, 0.10, 0.01050, 1.95491, 0.000326430),
    (2.5, 0.10, 0.00900, 2.45647, 0.000183238),
    (3.0, 0.10, 0.00750, 2.95886, 0.000105165),
    (5.0, 0.15, 0.00750, 4.96456, 0.000053255),
)


@dataclass(frozen=True)
class ScanConfig:
    """Grid-scan configuration.

    ``box`` is ``(x_lo, x_hi, y_lo, y_hi)`` with finite ordered endpoints;
    ``grid_n >= 2`` nodes per axis; ``refine_depth >= 0`` extra shrink
    rounds; ``tolerance > 0`` is the negativity threshold below which a
    scan minimum is treated as a violation candidate.
    """

    box: Tuple[float, float, float, float]
    grid_n: int = _DEFAULT_GRID_N
    refine_depth: int = _DEFAULT_REFINE_DEPTH
    tolerance: float = _DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        box = self.box
        if not (isinstance(box, tuple) and len(box) == 4):
            raise InputError(f"box must be a 4-tuple, got {box!r}")
        try:
            box = tuple(float(v) for v in box)
        except (TypeError, ValueError) as exc:
            raise InputError(f"box entries must be real numbers: {self.box!r}") from exc
        object.__setattr__(self, "box", box)
        x_lo, x_hi, y_lo, y_hi = box
        if not all(math.isfinite(v) for v in box):
            raise InputError(f"box endpoints must be finite, got {box}")
        if not (x_lo < x_hi and y_lo < y_hi):
            raise InputError(f"box endpoints must be ordered, got {box}")
        if not isinstance(self.grid_n, int) or isinstance(self.grid_n, bool):
            raise InputError(f"grid_n must be an int, got {self.grid_n!r}")
        if self.grid_n < 2:
            raise InputError(f"grid_n must be >= 2, got {self.grid_n}")
        if not isinstance(self.refine_depth, int) or isinstance(self.refine_depth, bool):
            raise InputError(f"refine_depth must be an int, got {self.refine_depth!r}")
        if self.refine_depth < 0:
            raise InputError(f"refine_depth must be >= 0, got {self.refine_depth}")
        tol = self.tolerance
        try:
            tol = float(tol)
        except (TypeError, ValueError) as exc:
            raise InputError(f"tolerance must be a real number: {tol!r}") from exc
        object.__setattr__(self, "tolerance", tol)
        if not (math.isfinite(tol) and tol > 0.0):
            raise InputError(f"tolerance must be finite and > 0, got {tol}")


@dataclass(frozen=True)
class ScanReport:
    """Result of :func:`scan_gap_min`.

    ``min_gap`` is the gap re-evaluated at ``argmin`` on the interpreted
    float64 path; ``evaluations`` counts kernel gap evaluations, which is
    exactly ``(refine_depth + 1) * grid_n**2``.
    """

    order: Order
    params: Params
    min_gap: float
    argmin: Point
    evaluations: int


@dataclass(frozen=True)
class Violation:
    """A confirmed a-subadditivity violation: ``margin`` is the
    high-precision value of ``-gap`` at ``point`` and is strictly
    positive."""

    order: Order
    params: Params
    point: Point
    margin: float


@dataclass(frozen=True)
class TableRow:
    """One re-derived reference row.

    ``margin`` is the recomputed high-precision order-3 margin at the
    stored witness; ``scan_min_gap`` the order-2 scan minimum over
    ``[-8, 8]^2``; ``expected_margin`` the stored reference margin."""

    mu: float
    sigma: float
    alpha: float
    x_star: float
    y_star: float
    margin: float
    scan_min_gap: float
    expected_margin: float


def _require_params(p: Params) -> Params:
    if not isinstance(p, Params):
        raise InputError(f"params must be a Params instance, got {p!r}")
    return p


def _require_config(cfg: ScanConfig) -> ScanConfig:
    if not isinstance(cfg, ScanConfig):
        raise InputError(f"config must be a ScanConfig instance, got {cfg!r}")
    return cfg


def scan_gap_min(a: OrderLike, p: Params, cfg: ScanConfig) -> ScanReport:
    """Deterministic refined grid scan of the order-``a`` gap minimum.

    See the module docstring for the refinement and tie-breaking rules.
    """
    av = order_value(a)
    p = _require_params(p)
    cfg = _require_config(cfg)
    x_lo, x_hi, y_lo, y_hi = cfg.box
    n = cfg.grid_n

    best: Optional[Tuple[float, float, float]] = None  # (raw gap, x, y)
    evaluations = 0
    for level in range(cfg.refine_depth + 1):
        if level == 0:
            bx0, bx1, by0, by1 = x_lo, x_hi, y_lo, y_hi
        else:
            shrink = 10.0 ** level
            wx = (x_hi - x_lo) / shrink
            wy = (y_hi - y_lo) / shrink
            cx, cy = best[1], best[2]
            bx0 = max(x_lo, cx - wx / 2.0)
            bx1 = min(x_hi, cx + wx / 2.0)
            by0 = max(y_lo, cy - wy / 2.0)
            by1 = min(y_hi, cy + wy / 2.0)
        dx = (bx1 - bx0) / (n - 1)
        dy = (by1 - by0) / (n - 1)
        raw, bi, bj = scan_block(
            av, p.mu, p.sigma, p.alpha, bx0, dx, by0, dy, 0, n, 0, n
        )
        evaluations += n * n
        if bi < 0:
            raise RangeError(
                "grid scan produced no finite gap values; the box is too "
                "extreme for float64 evaluation"
            )
        # Node coordinates: same expression as the kernel (i*dx, then +x0).
        cand = (raw, bx0 + bi * dx, by0 + bj * dy)
        if best is None or cand < best:
            best = cand

    argmin = Point(best[1], best[2])
    min_gap = gap(av, "f", argmin.x, argmin.y, p)
    return ScanReport(
        order=Order(av),
        params=p,
        min_gap=min_gap,
        argmin=argmin,
        evaluations=evaluations,
    )


def violation_scan_config(
    p: Params,
    grid_n: int = _DEFAULT_GRID_N,
    refine_depth: int = _DEFAULT_REFINE_DEPTH,
    tolerance: float = _DEFAULT_TOLERANCE,
) -> ScanConfig:
    """Default violation-hunting window for ``p``: ``x`` in ``(0, 0.1]``
    (starting at the first positive node ``0.1/grid_n``) and ``y`` within
    ten bump-widths of the ring."""
    p = _require_params(p)
    x_lo = 0.1 / grid_n
    return ScanConfig(
        box=(x_lo, 0.1, p.mu - 10.0 * p.sigma, p.mu + 10.0 * p.sigma),
        grid_n=grid_n,
        refine_depth=refine_depth,
        tolerance=tolerance,
    )


def _golden_line_min(fun, lo: float, hi: float, iters: int):
    """Golden-section minimisation on ``[lo, hi]``; returns the best
    probed ``(value, t)`` including the endpoints.  Fully deterministic:
    fixed iteration count, ties shrink toward the left."""
    best_t = lo
    best_v = fun(lo)
    v_hi = fun(hi)
    if v_hi < best_v:
        best_v, best_t = v_hi, hi
    span = hi - lo
    c = hi - INV_PHI * span
    d = lo + INV_PHI * span
    fc = fun(c)
    fd = fun(d)
    for _ in range(iters):
        if fc < best_v:
            best_v, best_t = fc, c
        if fd < best_v:
            best_v, best_t = fd, d
        if fc <= fd:
            hi, d, fd = d, c, fc
            span = hi - lo
            c = hi - INV_PHI * span
            fc = fun(c)
        else:
            lo, c, fc = c, d, fd
            span = hi - lo
            d = lo + INV_PHI * span
            fd = fun(d)
    return best_v, best_t


def find_violation(
    a: OrderLike,
    p: Params,
    cfg: Optional[ScanConfig] = None,
    prec_bits: int = 128,
) -> Optional[Violation]:
    """Search for an order-``a`` subadditivity violation of the working
    function.

    Scans ``cfg`` (default: :func:`violation_scan_config`), polishes any
    candidate below ``-cfg.tolerance`` with coordinate-wise golden-section
    descent, and confirms the final point in high precision.  Returns
    ``None`` when no candidate emerges or when confirmation fails; a
    returned :class:`Violation` always carries a strictly positive
    high-precision margin.
    """
    av = order_value(a)
    p = _require_params(p)
    if cfg is None:
        cfg = violation_scan_config(p)
    else:
        cfg = _require_config(cfg)

    report = scan_gap_min(av, p, cfg)
    if not report.min_gap < -cfg.tolerance:
        return None

    x_lo, x_hi, y_lo, y_hi = cfg.box
    rx = (x_hi - x_lo) / (cfg.grid_n - 1)
    ry = (y_hi - y_lo) / (cfg.grid_n - 1)
    bx, by = report.argmin.x, report.argmin.y
    best_v = report.min_gap
    for _ in range(_GSS_SWEEPS):
        lo = max(x_lo, bx - rx)
        hi = min(x_hi, bx + rx)
        v, t_best = _golden_line_min(
            lambda t: gap(av, "f", t, by, p), lo, hi, _GSS_ITERS
        )
        if v < best_v:
            best_v, bx = v, t_best
        lo = max(y_lo, by - ry)
        hi = min(y_hi, by + ry)
        v, t_best = _golden_line_min(
            lambda t: gap(av, "f", bx, t, p), lo, hi, _GSS_ITERS
        )
        if v < best_v:
            best_v, by = v, t_best

    margin = -HighPrecision(prec_bits).gap(av, "f", bx, by, p)
    if not margin > 0:
        return None
    return Violation(
        order=Order(av), params=p, point=Point(bx, by), margin=float(margin)
    )


def verify_point(
    a: OrderLike, p: Params, x: float, y: float, prec_bits: int = 128
) -> float:
    """High-precision violation margin ``-gap`` at one point (positive
    means the inequality fails there), rounded to float64."""
    av = order_value(a)
    p = _require_params(p)
    return float(-HighPrecision(prec_bits).gap(av, "f", x, y, p))


def reproduce_table(
    grid_n: int = 401,
    refine_depth: int = 2,
    prec_bits: int = 128,
) -> Tuple[TableRow, ...]:
    """Re-derive the five stored reference rows.

    Per row: recompute the order-3 margin at the stored witness point in
    high precision, and scan the order-2 gap over ``[-8, 8]^2`` to probe
    the row's claimed 2-subadditivity.  Returns rows carrying both the
    recomputed and the stored margins; callers decide what to make of the
    mismatch (see the README's "Known discrepancies").
    """
    rows = []
    for mu, sigma, x_star, y_star, expected in TABLE_REFERENCE_ROWS:
        p = Params(mu=mu, sigma=sigma, alpha=TABLE_ALPHA)
        margin = verify_point(3.0, p, x_star, y_star, prec_bits=prec_bits)
        scan = scan_gap_min(
            2.0,
            p,
            ScanConfig(
                box=(-8.0, 8.0, -8.0, 8.0),
                grid_n=grid_n,
                refine_depth=refine_depth,
                tolerance=_DEFAULT_TOLERANCE,
            ),
        )
        rows.append(
            TableRow(
                mu=mu,
                sigma=sigma,
                alpha=TABLE_ALPHA,
                x_star=x_star,
                y_star=y_star,
                margin=margin,
                scan_min_gap=scan.min_gap,
                expected_margin=expected,
            )
        )
    return tuple(rows)
