"""Stable evaluation and Newton refinement of deformed systems in log space.

Points live as u = log X, so positivity is structural.  Every row is
evaluated with its largest exponent factored out, which keeps residuals
representable even when heights reach 10^6.  Counts produced here are
floating-point certificates (residual + nonsingular Jacobian + pairwise
separation), not interval-arithmetic proofs, and are flagged as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath as mp

from .complexes import SimplicialComplex
from .precision import default_precision
from .viro import ViroSystem, log_fraction, mpf_fraction, predicted_solutions

DEDUP_LOG_DISTANCE = mp.mpf("1e-6")


def _row_terms(S: ViroSystem, lnt, u, row):
    """Nonzero terms of one equation as (point index, coeff, exponent)."""
    out = []
    for j in range(S.n_points):
        c = S.coefficients[row, j]
        if c == 0:
            continue
        e = mpf_fraction(S.heights[j]) * lnt + sum(
            mpf_fraction(a) * uk for a, uk in zip(S.configuration.points[j], u))
        out.append((j, mpf_fraction(c), e))
    return out


def evaluate(S: ViroSystem, t: Fraction, u: Sequence,
             prec: int | None = None):
    """Row-scaled residuals at log-point u.

    Returns (residuals, scales): residual_i = f_i(exp u) / exp(scale_i)
    where scale_i is the row's maximal term exponent.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    with mp.workprec(prec or default_precision()):
        lnt = log_fraction(t)
        residuals, scales = [], []
        for i in range(S.dimension):
            terms = _row_terms(S, lnt, u, i)
            m = max(e for _, _, e in terms)
            residuals.append(sum(c * mp.e ** (e - m) for _, c, e in terms))
            scales.append(m)
        return residuals, scales


def jacobian(S: ViroSystem, t: Fraction, u: Sequence,
             prec: int | None = None):
    """Jacobian in log coordinates, with the same row scaling as evaluate."""
    t = Fraction(t)
    with mp.workprec(prec or default_precision()):
        lnt = log_fraction(t)
        d = S.dimension
        J = mp.zeros(d)
        for i in range(d):
            terms = _row_terms(S, lnt, u, i)
            m = max(e for _, _, e in terms)
            for j, c, e in terms:
                w = c * mp.e ** (e - m)
                for k in range(d):
                    J[i, k] += w * mpf_fraction(S.configuration.points[j][k])
        return J


def _scaled_residual_norm(S, lnt, u):
    worst = mp.mpf(0)
    for i in range(S.dimension):
        terms = _row_terms(S, lnt, u, i)
        m = max(e for _, _, e in terms)
        worst = max(worst, abs(sum(c * mp.e ** (e - m) for _, c, e in terms)))
    return worst


@dataclass
class NewtonResult:
    status: str                      # converged | singular | diverged | max_iter
    log_point: tuple | None
    residual: object | None
    iterations: int


def newton_refine(S: ViroSystem, t: Fraction, u0: Sequence,
                  max_iter: int = 100, tol: float = 1e-30,
                  prec: int | None = None) -> NewtonResult:
    """Damped Newton in log coordinates.

    The step is halved (at most 30 times) while the scaled residual norm
    does not decrease.  Success requires both the residual and the step
    norm below tol within max_iter iterations; divergence, a singular
    Jacobian and iteration exhaustion are reported distinctly.
    """
    t = Fraction(t)
    with mp.workprec(prec or default_precision()):
        lnt = log_fraction(t)
        tol = mp.mpf(tol)
        u = mp.matrix([mp.mpf(x) for x in u0])
        for it in range(1, max_iter + 1):
            res, _ = evaluate(S, t, list(u), prec=prec)
            r = mp.matrix(res)
            rnorm = mp.norm(r, "inf")
            J = jacobian(S, t, list(u), prec=prec)
            try:
                step = mp.lu_solve(J, -r)
            except (ZeroDivisionError, TypeError):
                # mpmath signals a singular matrix inconsistently
                return NewtonResult("singular", None, rnorm, it)
            lam = mp.mpf(1)
            for _ in range(30):
                trial = u + lam * step
                if _scaled_residual_norm(S, lnt, list(trial)) < rnorm or rnorm < tol:
                    break
                lam /= 2
            else:
                return NewtonResult("diverged", None, rnorm, it)
            u = u + lam * step
            if not all(mp.isfinite(x) for x in u):
                return NewtonResult("diverged", None, rnorm, it)
            if rnorm < tol and mp.norm(lam * step, "inf") < tol:
                final, _ = evaluate(S, t, list(u), prec=prec)
                return NewtonResult("converged", tuple(u),
                                    mp.norm(mp.matrix(final), "inf"), it)
        return NewtonResult("max_iter", None, rnorm, max_iter)


def condition_estimate(J) -> object:
    """1-norm condition estimate of a small mpmath matrix."""
    try:
        Jinv = J ** -1
    except (ZeroDivisionError, TypeError):
        return mp.inf
    return mp.mnorm(J, 1) * mp.mnorm(Jinv, 1)


@dataclass
class Witness:
    log_point: tuple
    residual: object
    jacobian_condition: object
    facet: tuple[int, ...]


@dataclass
class CertifiedCount:
    """Floating-point-certified lower bound on distinct positive solutions."""

    count: int
    witnesses: list[Witness]
    min_separation: object | None
    failures: list[tuple[tuple[int, ...], str]]
    heuristic: bool = True           # not an interval-arithmetic certificate

    def to_json_dict(self, t: Fraction) -> dict:
        from .exactlinalg import format_rational
        return {
            "t": format_rational(Fraction(t)),
            "count": self.count,
            "heuristic": self.heuristic,
            "witnesses": [
                {
                    "log_x": [mp.nstr(x, 25) for x in w.log_point],
                    "residual": mp.nstr(w.residual, 8),
                    "jac_cond": mp.nstr(w.jacobian_condition, 8),
                    "facet": list(w.facet),
                }
                for w in self.witnesses
            ],
            "failures": [
                {"facet": list(f), "reason": r} for f, r in self.failures
            ],
        }


def certified_positive_count(S: ViroSystem, K: SimplicialComplex,
                             t: Fraction, max_iter: int = 100,
                             tol: float = 1e-30,
                             prec: int | None = None) -> CertifiedCount:
    """Refine every facet's predicted start; count the distinct survivors.

    Survivors must converge, have a nonsingular Jacobian, and be pairwise
    separated by more than the deduplication threshold in log distance.
    """
    t = Fraction(t)
    with mp.workprec(prec or default_precision()):
        witnesses: list[Witness] = []
        failures: list[tuple[tuple[int, ...], str]] = []
        for start in predicted_solutions(S, K, t, prec=prec):
            result = newton_refine(S, t, start.log_point, max_iter=max_iter,
                                   tol=tol, prec=prec)
            if result.status != "converged":
                failures.append((start.facet, result.status))
                continue
            J = jacobian(S, t, list(result.log_point), prec=prec)
            cond = condition_estimate(J)
            if not mp.isfinite(cond):
                failures.append((start.facet, "singular jacobian at root"))
                continue
            witnesses.append(Witness(result.log_point, result.residual,
                                     cond, start.facet))
        # deterministic single-threaded deduplication in facet order
        distinct: list[Witness] = []
        min_sep = None
        for w in witnesses:
            dup = False
            for kept in distinct:
                sep = mp.norm(mp.matrix(w.log_point) -
                              mp.matrix(kept.log_point), "inf")
                if min_sep is None or sep < min_sep:
                    min_sep = sep
                if sep < DEDUP_LOG_DISTANCE:
                    dup = True
            if dup:
                failures.append((w.facet, "duplicate root"))
            else:
                distinct.append(w)
        return CertifiedCount(len(distinct), distinct, min_sep, failures)
