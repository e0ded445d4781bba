"""Numeric oracles for the supporting analytic statements.

Each oracle spot-checks one statement that the certificate's soundness
story leans on, by direct numeric evaluation — no interval rigour here,
but deterministic sampling and explicit tolerances.  The checks:

- :func:`check_rolle_identity` — the three-point curvature probe
  ``v = 4 (r(0) - 2 r(t/2) + r(t)) / t^2`` must land inside the range of
  ``r''`` on ``(0, t)`` (a mean-value consequence for C^2 functions);
- :func:`check_monotone_f` — the working function increases on the
  positive axis (claimed for ``mu >= 1``; other parameters may refute it,
  which the check reports honestly as ``False``);
- :func:`check_symmetrization` — the order-2 gap on the small region is
  minimised on the positive quadrant: ``gap(x, y) >= gap(|x|, |y|)``
  (claimed for ``mu >= 1``);
- :func:`check_tau_concavity` — along the segment ``y = t - 2x`` the gap
  restricted to ``x in [0, t/2]`` is concave (claimed under both
  small-region certificate conditions, which are preconditions here);
- :func:`semigroup_member` / :func:`semigroup_search` — exact decision of
  membership of a rational target in the additive semigroup generated by
  rational generators with a bounded number of terms;
- :func:`indicator_example_check` — the two-valued step function (3 on
  rationals, 1 on irrationals) satisfies the order-2 and order-3
  inequalities but fails order-1, decided by exhaustive worst-case
  analysis over rationality patterns.

Raises :class:`~subadd.errors.PreconditionError` when a statement's
stated hypothesis does not hold for the supplied parameters — the answer
would be meaningless rather than ``False``.
"""

from __future__ import annotations

import enum
import math
import random
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .analytic_core import Params, eval_f, f_prime, gap, h_second
from .certificate import check_region_B
from .errors import DomainError, InputError, PreconditionError
from .intervals import Tristate

__all__ = [
    "RationalityCase",
    "SemigroupStatus",
    "rolle_probe",
    "check_rolle_identity",
    "check_monotone_f",
    "check_symmetrization",
    "check_tau_concavity",
    "semigroup_search",
    "semigroup_member",
    "indicator_case_table",
    "indicator_example_check",
]

_ROLLE_HANDLES = ("f", "g", "h")
_SYMMETRIZATION_SEED = 20240
_UPPER_TOL = 1e-8


class RationalityCase(enum.Enum):
    """Whether ``a*x + y`` is forced rational, forced irrational, or can be
    either, given the rationality pattern of ``(x, y)``."""

    FORCED_RATIONAL = "FORCED_RATIONAL"
    FORCED_IRRATIONAL = "FORCED_IRRATIONAL"
    FREE = "FREE"


class SemigroupStatus(enum.Enum):
    """Outcome of the exact semigroup search."""

    FOUND = "FOUND"
    PROVEN_ABSENT = "PROVEN_ABSENT"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


def _require_params(p: Params) -> Params:
    if not isinstance(p, Params):
        raise InputError(f"params must be a Params instance, got {p!r}")
    return p


def _r_and_r2(fn: str, p: Optional[Params]):
    """Resolve a Rolle handle to ``(r, r'')`` float64 evaluators."""
    if fn not in _ROLLE_HANDLES:
        raise InputError(
            f"unknown function handle {fn!r}; expected one of {_ROLLE_HANDLES}"
        )
    if fn == "g":

        def r(s: float) -> float:
            return abs(s) + math.log1p(abs(s))

        def r2(s: float) -> float:
            return -1.0 / ((1.0 + s) * (1.0 + s))

        return r, r2
    p = _require_params(p)
    if fn == "h":
        from .analytic_core import eval_h

        return (lambda s: eval_h(s, p)), (lambda s: h_second(s, p))

    def rf(s: float) -> float:
        return eval_f(s, p)

    def rf2(s: float) -> float:
        return -1.0 / ((1.0 + s) * (1.0 + s)) + p.alpha * h_second(s, p)

    return rf, rf2


def rolle_probe(fn: str, t: float, p: Optional[Params] = None) -> float:
    """The three-point curvature probe
    ``v = 4 (r(0) - 2 r(t/2) + r(t)) / t^2`` for ``t > 0``."""
    if not (isinstance(t, (int, float)) and math.isfinite(t)):
        raise InputError(f"t must be a finite real number, got {t!r}")
    t = float(t)
    if t <= 0.0:
        raise DomainError(f"rolle probe requires t > 0, got {t}")
    r, _ = _r_and_r2(fn, p)
    return 4.0 * (r(0.0) - 2.0 * r(t / 2.0) + r(t)) / (t * t)


def check_rolle_identity(
    fn: str, t: float, p: Optional[Params] = None, n: int = 10_000
) -> bool:
    """Check that the curvature probe lies within the sampled range of
    ``r''`` on ``(0, t)``, widened by 1e-8.

    A mean-value consequence guarantees ``v = r''(xi)`` for some interior
    ``xi``; sampling ``n`` half-offset interior nodes brackets the range.
    """
    v = rolle_probe(fn, t, p)
    _, r2 = _r_and_r2(fn, p)
    lo = math.inf
    hi = -math.inf
    for k in range(n):
        s = t * ((k + 0.5) / n)
        val = r2(s)
        lo = min(lo, val)
        hi = max(hi, val)
    return (lo - _UPPER_TOL) <= v <= (hi + _UPPER_TOL)


def check_monotone_f(p: Params, n: int = 10_000) -> bool:
    """Check that the working function increases on ``(0, 1]``:
    ``f' > 0`` on a dense grid there and sampled values nondecreasing.

    The claim is local to the unit interval — with ``mu >= 1`` the bump
    term ``(mu - t) h(t)`` is still nonnegative on ``(0, 1]``, which is
    what makes the statement unconditional; past the bump peak ``f`` may
    genuinely decrease when ``alpha`` is large.

    Precondition ``mu >= 1`` (the statement's hypothesis); other parameter
    combinations raise :class:`PreconditionError` rather than answering.
    """
    p = _require_params(p)
    if p.mu < 1.0:
        raise PreconditionError(
            f"monotonicity is claimed for mu >= 1 only, got mu={p.mu}"
        )
    prev = 0.0  # f(0) = 0
    for k in range(n):
        t = (k + 1.0) / n
        if not f_prime(t, p) > 0.0:
            return False
        val = eval_f(t, p)
        if val < prev - 1e-12:
            return False
        prev = val
    return True


def check_symmetrization(p: Params, n: int = 2_000) -> bool:
    """Check ``gap(2, f, x, y) >= gap(2, f, |x|, |y|)`` on the small
    region (``2|x| + |y| <= 1``) at ``n`` seeded-random sample points.

    Precondition ``mu >= 1`` (the statement's hypothesis).
    """
    p = _require_params(p)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"n must be a positive int, got {n!r}")
    if p.mu < 1.0:
        raise PreconditionError(
            f"symmetrization is claimed for mu >= 1 only, got mu={p.mu}"
        )
    rng = random.Random(_SYMMETRIZATION_SEED)
    checked = 0
    while checked < n:
        x = rng.uniform(-0.5, 0.5)
        y = rng.uniform(-1.0, 1.0)
        if 2.0 * abs(x) + abs(y) > 1.0:
            continue
        checked += 1
        if gap(2.0, "f", x, y, p) < gap(2.0, "f", abs(x), abs(y), p) - 1e-10:
            return False
    return True


def check_tau_concavity(p: Params, t: float, n: int = 1_001) -> bool:
    """Check concavity of ``x -> gap(2, f, x, t - 2x)`` on ``[0, t/2]``
    via second differences (each ``<= 1e-8``).

    ``t`` must lie in ``(0, 1]``.  Preconditions: both small-region
    certificate conditions hold (``TRUE``); otherwise the concavity
    statement carries no claim and :class:`PreconditionError` is raised.
    """
    p = _require_params(p)
    if not (isinstance(t, (int, float)) and math.isfinite(t)):
        raise InputError(f"t must be a finite real number, got {t!r}")
    t = float(t)
    if not 0.0 < t <= 1.0:
        raise DomainError(f"tau concavity requires t in (0, 1], got {t}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise InputError(f"n must be an int >= 3, got {n!r}")
    b_mu, b_alpha = check_region_B(p)
    if b_mu.verdict is not Tristate.TRUE or b_alpha.verdict is not Tristate.TRUE:
        raise PreconditionError(
            "tau concavity is claimed only under both small-region "
            f"conditions; got {b_mu.name}={b_mu.verdict.name}, "
            f"{b_alpha.name}={b_alpha.verdict.name}"
        )
    half = t / 2.0
    vals = []
    for k in range(n):
        x = half * k / (n - 1)
        vals.append(gap(2.0, "f", x, t - 2.0 * x, p))
    for k in range(1, n - 1):
        if vals[k - 1] - 2.0 * vals[k] + vals[k + 1] > 1e-8:
            return False
    return True


# ---------------------------------------------------------------------------
# exact semigroup membership
# ---------------------------------------------------------------------------


def _as_fraction(value, what: str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{what} is not a valid rational: {value!r}") from exc
    raise InputError(
        f"{what} must be an exact rational (Fraction, int, or 'p/q' "
        f"string); floats are not accepted because the decision is exact. "
        f"Got {value!r}"
    )


def semigroup_search(
    target,
    generators: Sequence,
    max_terms: int,
    budget: int = 5_000_000,
) -> Tuple[SemigroupStatus, Optional[Tuple[int, ...]]]:
    """Exact search for ``target = sum c_i * generators[i]`` with
    nonnegative integer ``c_i`` and ``sum c_i <= max_terms``.

    Everything is scaled to integers over the common denominator and
    decided by a minimum-term-count dynamic program, so the answer is
    exact: ``FOUND`` comes with one witness count vector, and
    ``PROVEN_ABSENT`` means *no* combination within ``max_terms`` terms
    exists (either unreachable outright, or reachable only with more
    terms).  ``BUDGET_EXHAUSTED`` is returned when the scaled table would
    exceed ``budget`` cells; no claim is made in that case.
    """
    tgt = _as_fraction(target, "target")
    if tgt <= 0:
        raise InputError(f"target must be > 0, got {tgt}")
    if not isinstance(max_terms, int) or isinstance(max_terms, bool) or max_terms < 1:
        raise InputError(f"max_terms must be a positive int, got {max_terms!r}")
    gens = [_as_fraction(g, f"generators[{i}]") for i, g in enumerate(generators)]
    if not gens:
        raise InputError("generators must be nonempty")
    if any(g <= 0 for g in gens):
        raise InputError(f"generators must be > 0, got {gens}")

    denom = tgt.denominator
    for g in gens:
        denom = denom * g.denominator // math.gcd(denom, g.denominator)
    t_int = int(tgt * denom)
    g_int = [int(g * denom) for g in gens]

    if (t_int + 1) * (len(g_int) + 1) > budget:
        return SemigroupStatus.BUDGET_EXHAUSTED, None

    inf = max_terms + 1
    dp = [inf] * (t_int + 1)
    parent = [-1] * (t_int + 1)
    dp[0] = 0
    for value in range(1, t_int + 1):
        for gi, g in enumerate(g_int):
            if g <= value and dp[value - g] + 1 < dp[value]:
                dp[value] = dp[value - g] + 1
                parent[value] = gi
    if dp[t_int] > max_terms:
        return SemigroupStatus.PROVEN_ABSENT, None
    counts = [0] * len(g_int)
    value = t_int
    while value > 0:
        gi = parent[value]
        counts[gi] += 1
        value -= g_int[gi]
    return SemigroupStatus.FOUND, tuple(counts)


def semigroup_member(target, generators: Sequence, max_terms: int) -> bool:
    """Boolean wrapper of :func:`semigroup_search`.

    Raises :class:`InputError` when the exact decision would exceed the
    default budget — a ``bool`` answer would otherwise be a guess.
    """
    status, _ = semigroup_search(target, generators, max_terms)
    if status is SemigroupStatus.BUDGET_EXHAUSTED:
        raise InputError(
            "semigroup instance too large for the exact decision budget; "
            "call semigroup_search with a larger budget"
        )
    return status is SemigroupStatus.FOUND


# ---------------------------------------------------------------------------
# indicator-function example
# ---------------------------------------------------------------------------

_RATIONAL_VALUE = 3
_IRRATIONAL_VALUE = 1


def indicator_case_table(a: int):
    """Worst-case analysis of ``w(a*x + y) <= a*w(x) + w(y)`` for the step
    function ``w = 3 on rationals, 1 on irrationals``, over the four
    rationality patterns of ``(x, y)``.

    Returns rows ``(x_rational, y_rational, case, worst_lhs, rhs, ok)``.
    With integer ``a``: rational+rational forces a rational sum;
    mixed patterns force an irrational sum; irrational+irrational leaves
    the sum free (the adversary picks, so the worst case is rational).
    """
    if not isinstance(a, int) or isinstance(a, bool) or a not in (1, 2, 3):
        raise InputError(f"a must be one of 1, 2, 3; got {a!r}")
    rows = []
    for x_rat in (True, False):
        for y_rat in (True, False):
            if x_rat and y_rat:
                case = RationalityCase.FORCED_RATIONAL
            elif x_rat != y_rat:
                case = RationalityCase.FORCED_IRRATIONAL
            else:
                case = RationalityCase.FREE
            if case is RationalityCase.FORCED_IRRATIONAL:
                worst_lhs = _IRRATIONAL_VALUE
            else:  # rational possible: adversary achieves the larger value
                worst_lhs = _RATIONAL_VALUE
            rhs = a * (_RATIONAL_VALUE if x_rat else _IRRATIONAL_VALUE) + (
                _RATIONAL_VALUE if y_rat else _IRRATIONAL_VALUE
            )
            rows.append((x_rat, y_rat, case, worst_lhs, rhs, worst_lhs <= rhs))
    return tuple(rows)


def indicator_example_check(a: int) -> bool:
    """Whether the step function satisfies the order-``a`` inequality for
    every rationality pattern (``a`` in {1, 2, 3}).

    True for ``a = 2`` (tight: 3 <= 3 on the free pattern) and ``a = 3``;
    False for ``a = 1`` (3 > 2 on the free pattern).
    """
    return all(row[5] for row in indicator_case_table(a))
