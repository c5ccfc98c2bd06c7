"""Deformed polynomial systems from a configuration, coefficients and a lift.

A system here is the family f_i(X) = sum_j C_ij t^{h_j} X^{a_j} for a
positive parameter t.  This module validates the container, certifies that
a height function induces the given triangulation (strict lower-hull
inequalities, checked exactly), and computes the per-facet truncated
positive solutions that seed the numerical solver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath as mp

from .complexes import PointConfiguration, SimplicialComplex
from .exactlinalg import (
    RationalMatrix,
    RankDeficiencyError,
    format_rational,
    parse_rational,
    positive_kernel_vector,
    solve,
)
from .precision import default_precision


@dataclass(frozen=True)
class ViroSystem:
    """Container for (configuration, coefficient matrix, heights).

    The parameter t stays symbolic; every t-dependent computation takes an
    explicit t argument.
    """

    configuration: PointConfiguration
    coefficients: RationalMatrix
    heights: tuple[Fraction, ...]

    @property
    def dimension(self) -> int:
        return self.configuration.dimension

    @property
    def n_points(self) -> int:
        return self.configuration.n_points

    def to_json_dict(self) -> dict:
        return {
            "points": [[format_rational(x) for x in p]
                       for p in self.configuration.points],
            "coefficients": self.coefficients.to_json_dict(),
            "heights": [format_rational(h) for h in self.heights],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "ViroSystem":
        pts = [[parse_rational(x) for x in p] for p in d["points"]]
        return build_viro_system(
            PointConfiguration.from_rows(pts),
            RationalMatrix.from_json_dict(d["coefficients"]),
            [parse_rational(h) for h in d["heights"]],
        )

    @classmethod
    def from_json(cls, s: str) -> "ViroSystem":
        return cls.from_json_dict(json.loads(s))


def build_viro_system(A: PointConfiguration, C: RationalMatrix,
                      heights: Sequence[Fraction]) -> ViroSystem:
    if C.rows != A.dimension:
        raise ValueError("coefficient matrix must have d rows")
    if C.cols != A.n_points:
        raise ValueError("coefficient matrix must have one column per point")
    if len(heights) != A.n_points:
        raise ValueError("need one height per point")
    return ViroSystem(A, C, tuple(Fraction(h) for h in heights))


def render_system(S: ViroSystem, var_names: Sequence[str] | None = None) -> str:
    """Human-readable rendering with explicit t powers."""
    d = S.dimension
    if var_names is None:
        var_names = ([f"X{i + 1}" for i in range(d)] if d > 3
                     else ["X", "Y", "Z"][:d])
    lines = []
    for i in range(d):
        terms = []
        for j in range(S.n_points):
            c = S.coefficients[i, j]
            if c == 0:
                continue
            factors = []
            coeff = format_rational(abs(c))
            if coeff != "1":
                factors.append(coeff)
            h = S.heights[j]
            if h != 0:
                factors.append(f"t^{format_rational(h)}" if h != 1 else "t")
            for k, e in enumerate(S.configuration.points[j]):
                if e == 0:
                    continue
                factors.append(f"{var_names[k]}^{format_rational(e)}"
                               if e != 1 else var_names[k])
            mono = "*".join(factors) if factors else "1"
            terms.append(("- " if c < 0 else "+ ") + mono)
        body = " ".join(terms).lstrip("+ ") if terms else "0"
        lines.append(f"f{i + 1} = {body}")
    return "\n".join(lines)


# -- regularity ------------------------------------------------------------


@dataclass
class RegularityReport:
    ok: bool
    sense: str | None                              # "convex" | "concave"
    violations: list[tuple[tuple[int, ...], int]]  # (facet, 1-based point)


def facet_affine_support(A: PointConfiguration, heights: Sequence[Fraction],
                         facet: Sequence[int]) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact affine function (offset, gradient) matching the lift on a facet."""
    lifted = A.lifted_matrix(facet)
    sol = solve(lifted.transpose(), [Fraction(heights[v - 1]) for v in facet])
    return sol[0], sol[1:]


def regularity_check(A: PointConfiguration, heights: Sequence[Fraction],
                     K: SimplicialComplex) -> RegularityReport:
    """Strict hull test: the lift must stay strictly on one side of every
    facet's affine support at every configuration point outside the facet.

    The side must be uniform across the whole complex.  Strictly above
    means the heights induce the complex as a lower hull (convex lift);
    strictly below, as an upper hull (concave lift) — a triangulation is
    certified either way, and the report records which sense applies.
    Ties and mixed senses are reported as violations: they mean the height
    induces a coarser or a different subdivision than the given complex.
    """
    heights = [Fraction(h) for h in heights]
    above, below, ties = [], [], []
    for facet in K.facets:
        offset, grad = facet_affine_support(A, heights, facet)
        members = set(facet)
        for p in range(1, A.n_points + 1):
            if p in members:
                continue
            value = offset + sum(g * x for g, x in
                                 zip(grad, A.points[p - 1]))
            gap = heights[p - 1] - value
            if gap > 0:
                above.append((facet, p))
            elif gap < 0:
                below.append((facet, p))
            else:
                ties.append((facet, p))
    if ties:
        return RegularityReport(False, None, ties)
    if above and below:
        # mixed senses: report the minority side as the offending pairs
        return RegularityReport(False, None,
                                below if len(below) <= len(above) else above)
    if below:
        return RegularityReport(True, "concave", [])
    return RegularityReport(True, "convex", [])


# -- truncated solutions ---------------------------------------------------


@dataclass
class TruncatedSolution:
    """Positive solution of one facet's truncated system, in log coordinates."""

    facet: tuple[int, ...]
    log_point: tuple[mp.mpf, ...]
    residual: mp.mpf


@dataclass
class PredictedStart:
    """Log-space Newton starting point for one facet at a given t."""

    facet: tuple[int, ...]
    log_point: tuple[mp.mpf, ...]
    shift: tuple[Fraction, ...]   # gradient of the facet's affine support
    offset: Fraction


def log_fraction(x: Fraction) -> mp.mpf:
    """High-precision log of an exact positive rational."""
    if x <= 0:
        raise ValueError("log of a non-positive rational")
    return mp.log(x.numerator) - mp.log(x.denominator)


def mpf_fraction(x: Fraction) -> mp.mpf:
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


def truncated_solution(A: PointConfiguration, C: RationalMatrix,
                       facet: Sequence[int],
                       prec: int | None = None) -> TruncatedSolution:
    """Solve the facet-truncated system exactly-then-numerically.

    The exact positive kernel vector v of the facet's coefficient submatrix
    is mapped through the lifted exponent matrix: solving the transposed
    lifted system against log v yields (log lambda, u) with u the log of the
    positive solution.
    """
    facet = tuple(facet)
    sub = C.submatrix_columns([v - 1 for v in facet])
    v = positive_kernel_vector(sub)
    if v is None:
        raise ValueError(f"facet {facet} is not positively decorated")
    with mp.workprec(prec or default_precision()):
        lifted = A.lifted_matrix(facet)
        mat = mp.matrix([[mpf_fraction(lifted[i, j])
                          for i in range(lifted.rows)]
                         for j in range(lifted.cols)])
        rhs = mp.matrix([log_fraction(x) for x in v])
        try:
            sol = mp.lu_solve(mat, rhs)
        except ZeroDivisionError as exc:
            raise RankDeficiencyError(
                f"degenerate facet {facet}: lifted matrix singular") from exc
        u = tuple(sol[i] for i in range(1, len(facet)))
        residual = _truncated_residual(A, C, facet, u)
        return TruncatedSolution(facet, u, residual)


def _truncated_residual(A, C, facet, u):
    d = A.dimension
    worst = mp.mpf(0)
    for i in range(d):
        total = mp.mpf(0)
        scale = mp.mpf(0)
        for vtx in facet:
            c = C[i, vtx - 1]
            if c == 0:
                continue
            term = mpf_fraction(c) * mp.e ** sum(
                mpf_fraction(a) * uk for a, uk in zip(A.points[vtx - 1], u))
            total += term
            scale = max(scale, abs(term))
        if scale > 0:
            worst = max(worst, abs(total) / scale)
    return worst


def predicted_solutions(S: ViroSystem, K: SimplicialComplex, t: Fraction,
                        prec: int | None = None) -> list[PredictedStart]:
    """Starting points u - log(t) * gradient, one per facet of K."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    starts = []
    with mp.workprec(prec or default_precision()):
        lnt = log_fraction(t)
        for facet in K.facets:
            trunc = truncated_solution(S.configuration, S.coefficients, facet,
                                       prec=prec)
            offset, grad = facet_affine_support(S.configuration, S.heights,
                                                facet)
            point = tuple(u - lnt * mpf_fraction(g)
                          for u, g in zip(trunc.log_point, grad))
            starts.append(PredictedStart(facet, point, grad, offset))
    return starts
