"""Surveys of single-comb projections onto the lambda = -1 and lambda = +i eigenspaces.

A family fixes the seed phi(x, r, alpha, beta) up to its period
r = sqrt(q/p) with q, p coprime.  Projecting the seed onto the target
eigenspace mixes periods r and 1/r, whose common period is sqrt(q p).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .combcalc import (
    CanonicalComb,
    Comb,
    canonical_form,
    comb_allclose,
    comb_entropy_phase,
    comb_normalize,
    comb_project,
    phi,
)
from .quadreal import QuadReal
from .subspace import SubspaceSpec

__all__ = ["Family", "SurveyRow", "family_seed", "family_comb", "survey", "argmin",
           "series_count_formula", "best_known", "equal_up_to_phase"]

HALF = Fraction(1, 2)
TIE_TOL = 1e-10


class Family(enum.Enum):
    EVEN_ZERO = "even-zero"  # phi(x, r, 0, 0)     -> lambda = -1
    EVEN_HALF = "even-half"  # phi(x, r, 0, 1/2)   -> lambda = -1
    ODD_HALF = "odd-half"    # phi(x, r, 1/2, 1/2) -> lambda = +i

    @property
    def shift(self) -> tuple[Fraction, Fraction]:
        return {
            Family.EVEN_ZERO: (Fraction(0), Fraction(0)),
            Family.EVEN_HALF: (Fraction(0), HALF),
            Family.ODD_HALF: (HALF, HALF),
        }[self]

    @property
    def target(self) -> SubspaceSpec:
        return SubspaceSpec.eigen(1j if self is Family.ODD_HALF else -1)

    def check_target(self, sub: SubspaceSpec):
        if sub != self.target:
            raise ValueError(f"family {self.value} projects only onto {self.target.label()}")


@dataclass(frozen=True)
class SurveyRow:
    q: int
    p: int
    series_count: int
    entropy: float
    comb: CanonicalComb


def family_seed(family: Family, q: int, p: int) -> Comb:
    a, b = family.shift
    return Comb((phi(QuadReal.sqrt_ratio(q, p), a, b),))


def family_comb(family: Family, q: int, p: int) -> CanonicalComb:
    """Normalised canonical form of the projected seed for one (q, p)."""
    proj = comb_project(family_seed(family, q, p), family.target)
    return comb_normalize(canonical_form(proj))


def _degenerate(family: Family, q: int, p: int) -> bool:
    # at r = 1 these seeds are eigenvectors of another eigenvalue and project to zero
    return q == p == 1 and family is not Family.EVEN_HALF


def series_count_formula(family: Family, q: int, p: int) -> int:
    if _degenerate(family, q, p):
        return 0
    if family is Family.EVEN_ZERO:
        return q + p - 1
    if family is Family.EVEN_HALF:
        return p + q if p % 2 else q + p - 1
    return q + p - 1 if (q % 2 and p % 2) else q + p


def _row(family: Family, q: int, p: int) -> SurveyRow:
    c = family_comb(family, q, p)
    return SurveyRow(q, p, c.n_series, comb_entropy_phase(c), c)


def survey(family: Family, q_max: int = 10, p_max: int = 10,
           sub: SubspaceSpec | None = None) -> list[SurveyRow]:
    """All coprime (q, p) in range, sorted by entropy.

    Rows whose entropies agree within TIE_TOL are ordered by (q, p), so the
    first row is the lexicographically smallest minimiser.
    """
    if q_max < 1 or p_max < 1:
        raise ValueError("q_max and p_max must be >= 1")
    if sub is not None:
        family.check_target(sub)
    rows = [_row(family, q, p)
            for q in range(1, q_max + 1) for p in range(1, p_max + 1)
            if gcd(q, p) == 1 and not _degenerate(family, q, p)]
    rows.sort(key=lambda r: r.entropy)
    out, i = [], 0
    while i < len(rows):
        j = i + 1
        while j < len(rows) and rows[j].entropy - rows[i].entropy <= TIE_TOL:
            j += 1
        out.extend(sorted(rows[i:j], key=lambda r: (r.q, r.p)))
        i = j
    return out


def argmin(rows: list[SurveyRow]) -> SurveyRow:
    return rows[0]


def equal_up_to_phase(a: CanonicalComb, b: CanonicalComb, tol: float = 1e-12) -> bool:
    """Whether two combs differ only by a global unimodular factor."""
    # zero-weight copies put both combs on the same period and offsets
    ca, cb = a.to_comb(), b.to_comb()
    ra = canonical_form(ca + 0.0 * cb, drop=-1.0).amplitudes
    rb = canonical_form(cb + 0.0 * ca, drop=-1.0).amplitudes
    if ra.size == 0 or rb.size == 0:
        return ra.size == rb.size
    k = int(np.argmax(np.abs(ra)))
    if abs(ra[k]) <= tol:
        return bool(np.max(np.abs(rb)) <= tol)
    phase = rb[k] / ra[k]
    if abs(abs(phase) - 1.0) > 1e-9:
        return False
    return bool(np.max(np.abs(ra * phase - rb)) <= tol)


def best_known(sub: SubspaceSpec) -> CanonicalComb:
    """Lowest-entropy comb known for each subspace, normalised."""
    if sub.kind == "antisymmetric" or (sub.kind == "eigen" and sub.lam == -1j):
        return comb_normalize(canonical_form(phi(1, HALF, HALF)))
    if sub.kind == "unconstrained" or sub.lam == 1:
        return comb_normalize(canonical_form(phi(1, 0, 0)))
    if sub.lam == -1:
        r2 = QuadReal(1, 2)
        u = Comb((phi(r2, 0, 0, coeff=1 - float(r2)), phi(r2, HALF, 0)))
        return comb_normalize(canonical_form(u))
    return family_comb(Family.ODD_HALF, 3, 1)
