"""Exact calculus for finite combinations of periodic Dirac combs.

The building block is

    phi(x, r, alpha, beta) = sum_n exp(-2j*pi*beta*n) * delta(x - r*(n + alpha))

with ``r`` in ``Q*sqrt(d)`` and ``alpha``, ``beta`` rational.  Periods and
offsets are kept exact so that coinciding delta series are recognised
exactly; coefficients are complex floats.

After Gaussian (or other) regularisation with a wide envelope and narrow
peaks, the entropy and p-norms of such a comb reduce to closed forms in the
per-series amplitudes.  Those closed forms are implemented here.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InvalidExponent, NotInClass, NotNormalized
from .quadreal import QuadReal, _as_fraction
from .subspace import SubspaceSpec

__all__ = [
    "CombAtom",
    "Comb",
    "Series",
    "CanonicalComb",
    "Regularizer",
    "GAUSSIAN",
    "EntropyTerms",
    "phi",
    "atom_canonicalize",
    "comb_fourier",
    "comb_parity",
    "comb_project",
    "rebase",
    "canonical_form",
    "comb_norm_sq",
    "mixing_entropy",
    "comb_entropy_terms",
    "comb_entropy_x",
    "comb_entropy_k",
    "comb_entropy_phase",
    "comb_p_norm",
    "comb_p_norm_k",
    "comb_normalize",
    "comb_max_deviation",
    "comb_allclose",
    "parse_comb",
]

ZERO_AMPLITUDE = 1e-12
# auto-normalisation window for entropy operations
NORM_AUTO_TOL = 1e-3
# largest period extension accepted when resolving phase conflicts
MAX_EXTENSION = 10_000

LOG2 = math.log(2.0)


def cis_turns(t: Fraction) -> complex:
    """exp(2j*pi*t), exact at multiples of 1/4."""
    t = t % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if t in exact:
        return exact[t]
    return cmath.exp(2j * math.pi * float(t))


# ---------------------------------------------------------------------------
# atoms and combs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CombAtom:
    """``coeff * phi(x, period, alpha, beta)``."""

    coeff: complex
    period: QuadReal
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        p = self.period
        if not isinstance(p, QuadReal):
            p = QuadReal(p)
        if p.t == 0:
            raise ValueError("period must be non-zero")
        object.__setattr__(self, "period", p)
        object.__setattr__(self, "alpha", _as_fraction(self.alpha))
        object.__setattr__(self, "beta", _as_fraction(self.beta))

    def scaled(self, c: complex) -> CombAtom:
        return CombAtom(self.coeff * c, self.period, self.alpha, self.beta)

    def positions(self, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
        """Delta positions in [lo, hi] and their complex weights."""
        r = float(self.period)
        a = float(self.alpha)
        n0, n1 = sorted((lo / r - a, hi / r - a))
        n = np.arange(math.floor(n0), math.ceil(n1) + 1)
        x = r * (n + a)
        keep = (x >= lo) & (x <= hi)
        n = n[keep]
        # exp(-2 pi i beta n) with the phase reduced exactly
        b = self.beta
        turns = np.array([float((-b * int(k)) % 1) for k in n])
        return x[keep], self.coeff * np.exp(2j * np.pi * turns)


def phi(period, alpha=0, beta=0, coeff: complex = 1.0) -> CombAtom:
    """Convenience constructor; ``period`` may be a QuadReal or a rational."""
    return CombAtom(coeff, period if isinstance(period, QuadReal) else QuadReal(period), alpha, beta)


@dataclass(frozen=True)
class Comb:
    """A finite linear combination of atoms whose periods share one sqrt(d)."""

    atoms: tuple[CombAtom, ...] = ()

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        ds = {a.period.d for a in atoms}
        if len(ds) > 1:
            raise NotInClass(f"periods with square-free parts {sorted(ds)} have irrational ratios")

    @property
    def d(self) -> int:
        return self.atoms[0].period.d if self.atoms else 1

    def __add__(self, other) -> Comb:
        return Comb(self.atoms + _as_comb(other).atoms)

    def __sub__(self, other) -> Comb:
        return self + (-1.0) * _as_comb(other)

    def __mul__(self, c) -> Comb:
        return Comb(tuple(a.scaled(c) for a in self.atoms))

    __rmul__ = __mul__

    def __neg__(self) -> Comb:
        return self * -1.0

    def __len__(self):
        return len(self.atoms)

    def __str__(self):
        if not self.atoms:
            return "0"
        return " + ".join(
            f"{_fmt_complex(a.coeff)}*phi({a.period}, {a.alpha}, {a.beta})" for a in self.atoms
        )


def _fmt_complex(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    return f"({c.real!r}{c.imag:+.17g}j)"


@dataclass(frozen=True)
class Series:
    offset: Fraction
    beta: Fraction
    amplitude: complex


@dataclass(frozen=True)
class CanonicalComb:
    """Finitely many delta series with common period ``period``.

    Series ``k`` places weight ``amplitude * exp(-2j*pi*beta*n)`` at
    ``period * (n + offset)``.
    """

    period: QuadReal
    series: tuple[Series, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        offs = [s.offset for s in self.series]
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise ValueError("series offsets must be strictly increasing")
        if any(not 0 <= o < 1 for o in offs):
            raise ValueError("series offsets must lie in [0, 1)")

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([s.amplitude for s in self.series], dtype=complex)

    @property
    def n_series(self) -> int:
        return len(self.series)

    def to_comb(self) -> Comb:
        return Comb(tuple(CombAtom(s.amplitude, self.period, s.offset, s.beta) for s in self.series))

    def scaled(self, c: complex) -> CanonicalComb:
        return CanonicalComb(
            self.period, tuple(Series(s.offset, s.beta, s.amplitude * c) for s in self.series)
        )

    def __str__(self):
        rows = ", ".join(f"{s.offset}:{_fmt_complex(s.amplitude)}" for s in self.series)
        return f"CanonicalComb(period={self.period}, [{rows}])"


def _as_comb(c) -> Comb:
    if isinstance(c, Comb):
        return c
    if isinstance(c, CanonicalComb):
        return c.to_comb()
    if isinstance(c, CombAtom):
        return Comb((c,))
    raise TypeError(f"expected a comb, got {type(c).__name__}")


# ---------------------------------------------------------------------------
# atom algebra
# ---------------------------------------------------------------------------


def atom_canonicalize(atom: CombAtom) -> CombAtom:
    """Bring an atom to period > 0 and alpha, beta in [0, 1).

    Uses phi(r, a, b) = phi(-r, -a, -b) = phi(r, a, b + 1)
    and phi(r, a + k, b) = exp(2j*pi*b*k) phi(r, a, b).
    """
    c, r, a, b = atom.coeff, atom.period, atom.alpha, atom.beta
    if r.sign() < 0:
        r, a, b = -r, -a, -b
    b = b % 1
    k = math.floor(a)
    a = a - k
    # phi(a_old) = phi(a + k) = exp(2 pi i b k) phi(a)
    c = c * cis_turns(b * k)
    return CombAtom(c, r, a, b)


def _fourier_atom(atom: CombAtom) -> CombAtom:
    # phi~(r, a, b) = r^-1 exp(2 pi i a b) phi(1/r, -b, a), valid for r > 0
    atom = atom_canonicalize(atom)
    r, a, b = atom.period, atom.alpha, atom.beta
    c = atom.coeff * cis_turns(a * b) / float(r)
    return atom_canonicalize(CombAtom(c, r.reciprocal(), -b, a))


def _parity_atom(atom: CombAtom) -> CombAtom:
    return atom_canonicalize(CombAtom(atom.coeff, atom.period, -atom.alpha, -atom.beta))


def comb_fourier(c) -> Comb:
    return Comb(tuple(_fourier_atom(a) for a in _as_comb(c).atoms))


def comb_parity(c) -> Comb:
    return Comb(tuple(_parity_atom(a) for a in _as_comb(c).atoms))


def _fourier_power(c: Comb, m: int) -> Comb:
    for _ in range(m % 4):
        c = comb_fourier(c)
    return c


def rebase(atom: CombAtom, n: int) -> Comb:
    """Rewrite one atom as ``n`` atoms with period ``n * r``.

    phi(r, a, b) = sum_{k<n} exp(-2j*pi*b*k) phi(n r, (k + a)/n, n b).
    """
    if int(n) != n or n < 1:
        raise ValueError(f"rebase factor must be a positive integer, got {n!r}")
    n = int(n)
    atoms = []
    for k in range(n):
        c = atom.coeff * cis_turns(-atom.beta * k)
        atoms.append(
            atom_canonicalize(CombAtom(c, atom.period * n, (k + atom.alpha) / n, n * atom.beta))
        )
    return Comb(tuple(atoms))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _rational_lcm(values: Iterable[Fraction]) -> Fraction:
    num, den = 1, 0
    for v in values:
        num = _lcm(num, v.numerator)
        den = gcd(den, v.denominator)
    return Fraction(num, den or 1)


def _rebase_rows(rows, n: int):
    """Rebase (offset, beta, coeff) rows at period R to period n R."""
    out = []
    for off, beta, coeff in rows:
        for k in range(n):
            out.append(((k + off) / n, (n * beta) % 1, coeff * cis_turns(-beta * k)))
    return out


def canonical_form(c, drop: float = ZERO_AMPLITUDE) -> CanonicalComb:
    """Reduce a comb to series sharing the least common period.

    Series landing on the same offset with different phase rates ``beta`` are
    resolved by extending the period until the rates agree; if that needs an
    extension beyond ``MAX_EXTENSION`` the comb is rejected with NotInClass.
    Series with ``|amplitude| <= drop`` are removed.
    """
    comb = _as_comb(c)
    atoms = [atom_canonicalize(a) for a in comb.atoms]
    if not atoms:
        return CanonicalComb(QuadReal(1), ())
    d = atoms[0].period.d
    base = _rational_lcm(a.period.t for a in atoms)
    rows = []
    for a in atoms:
        n = base / a.period.t
        assert n.denominator == 1
        rows.extend(_rebase_rows([(a.alpha, a.beta, a.coeff)], int(n)))

    ext = 1
    by_offset: dict[Fraction, set[Fraction]] = {}
    for off, beta, _ in rows:
        by_offset.setdefault(off, set()).add(beta)
    for betas in by_offset.values():
        bs = sorted(betas)
        for b in bs[1:]:
            ext = _lcm(ext, (b - bs[0]).denominator)
    if ext > MAX_EXTENSION:
        raise NotInClass(f"resolving phase conflicts needs a period extension of {ext}")
    if ext > 1:
        rows = _rebase_rows(rows, ext)

    sums: dict[Fraction, list] = {}
    for off, beta, coeff in rows:
        slot = sums.setdefault(off, [beta, 0j])
        if slot[0] != beta:
            raise NotInClass(f"conflicting phase rates at offset {off}")  # pragma: no cover
        slot[1] += coeff
    series = tuple(
        Series(off, slot[0], complex(slot[1]))
        for off, slot in sorted(sums.items())
        if abs(slot[1]) > drop
    )
    return CanonicalComb(QuadReal(base * ext, d), series)


def comb_max_deviation(a, b) -> float:
    """Largest series amplitude of ``a - b`` in fully resolved form."""
    diff = canonical_form(_as_comb(a) - _as_comb(b), drop=-1.0)
    amps = diff.amplitudes
    return float(np.max(np.abs(amps))) if amps.size else 0.0


def comb_allclose(a, b, tol: float = 1e-12) -> bool:
    return comb_max_deviation(a, b) <= tol


def comb_project(c, sub: SubspaceSpec) -> Comb:
    """Project onto a symmetry subspace.

    Fourier eigenspaces use (1/4) sum_m lam^-m F^m; for inputs of definite
    parity matching the eigenvalue this collapses to (1 + lam^-1 F)/2, and
    for the opposite parity the result is empty.
    """
    comb = Comb(tuple(atom_canonicalize(a) for a in _as_comb(c).atoms))
    if sub.kind == "unconstrained":
        return comb
    if sub.kind == "antisymmetric":
        return 0.5 * (comb - comb_parity(comb))
    lam = sub.lam
    even_target = lam.imag == 0
    par = comb_parity(comb)
    if comb_allclose(par, comb):
        if not even_target:
            return Comb()
        return 0.5 * (comb + (1 / lam) * comb_fourier(comb))
    if comb_allclose(par, -comb):
        if even_target:
            return Comb()
        return 0.5 * (comb + (1 / lam) * comb_fourier(comb))
    out = Comb()
    for m in range(4):
        out = out + lam ** (-m) * _fourier_power(comb, m)
    return 0.25 * out


# ---------------------------------------------------------------------------
# regularised norms and entropies
# ---------------------------------------------------------------------------


def _gaussian_p_integral(p: float) -> float:
    # int |2^(1/4) exp(-pi x^2)|^p dx
    return 2.0 ** (p / 4.0) / math.sqrt(p)


@dataclass(frozen=True)
class Regularizer:
    """Entropies and p-integrals of one normalised, even regularising profile.

    ``p_integral_k`` is the p-integral of the profile's Fourier transform; it
    defaults to ``p_integral`` (self-dual profiles).
    """

    entropy_x: float
    entropy_k: float
    p_integral: Callable[[float], float] = field(compare=False)
    p_integral_k: Callable[[float], float] | None = field(default=None, compare=False)

    @property
    def entropy(self) -> float:
        return self.entropy_x + self.entropy_k

    def p_integral_fourier(self, p: float) -> float:
        return (self.p_integral_k or self.p_integral)(p)


GAUSSIAN = Regularizer((1 - LOG2) / 2, (1 - LOG2) / 2, _gaussian_p_integral)


def _canon(c) -> CanonicalComb:
    return c if isinstance(c, CanonicalComb) else canonical_form(c)


def comb_norm_sq(c) -> float:
    """Squared 2-norm of the regularised state: sum |b_k|^2 / r."""
    c = _canon(c)
    return float(np.sum(np.abs(c.amplitudes) ** 2) / float(c.period))


def comb_normalize(c) -> CanonicalComb:
    c = _canon(c)
    n2 = comb_norm_sq(c)
    if n2 == 0.0:
        raise NotNormalized("cannot normalize an empty comb")
    return c.scaled(1.0 / math.sqrt(n2))


def mixing_entropy(c) -> float:
    """Shannon entropy of the series weights |b_k|^2 / sum |b_j|^2."""
    w = np.abs(_canon(c).amplitudes) ** 2
    tot = w.sum()
    if tot == 0.0:
        raise NotNormalized("empty comb has no series weights")
    rho = w[w > 0] / tot
    return float(-np.sum(rho * np.log(rho)))


def _check_norm(c: CanonicalComb) -> float:
    n2 = comb_norm_sq(c)
    if not abs(n2 - 1.0) < NORM_AUTO_TOL:
        raise NotNormalized(f"comb has squared norm {n2:.9g}; call comb_normalize first")
    return n2


@dataclass(frozen=True)
class EntropyTerms:
    """Breakdown of the regularised phase-space entropy of a comb."""

    profile_x: float
    profile_k: float
    mixing_x: float
    mixing_k: float
    log_period_x: float
    log_period_k: float
    norm_sq: float
    n_series_x: int
    n_series_k: int

    @property
    def s_x(self) -> float:
        return self.profile_x + self.mixing_x - self.log_period_x

    @property
    def s_k(self) -> float:
        return self.profile_k + self.mixing_k - self.log_period_k

    @property
    def total(self) -> float:
        return self.s_x + self.s_k


def comb_entropy_terms(
    c, reg: Regularizer = GAUSSIAN, peak: Regularizer | None = None
) -> EntropyTerms:
    """Entropy decomposition; ``reg`` is the envelope, ``peak`` the narrow profile.

    In momentum space the roles swap: the Fourier image of the peak becomes the
    envelope and vice versa, so both profiles enter through their k-entropies.
    """
    peak = peak or reg
    cx = _canon(c)
    n2 = _check_norm(cx)
    ck = canonical_form(comb_fourier(cx))
    return EntropyTerms(
        profile_x=reg.entropy_x + peak.entropy_x,
        profile_k=reg.entropy_k + peak.entropy_k,
        mixing_x=mixing_entropy(cx),
        mixing_k=mixing_entropy(ck),
        log_period_x=math.log(float(cx.period)),
        log_period_k=math.log(float(ck.period)),
        norm_sq=n2,
        n_series_x=cx.n_series,
        n_series_k=ck.n_series,
    )


def comb_entropy_x(c, reg: Regularizer = GAUSSIAN, peak: Regularizer | None = None) -> float:
    """S_x = S_x(envelope) + S_x(peak) + S(b) - log r."""
    peak = peak or reg
    cx = _canon(c)
    _check_norm(cx)
    return reg.entropy_x + peak.entropy_x + mixing_entropy(cx) - math.log(float(cx.period))


def comb_entropy_k(c, reg: Regularizer = GAUSSIAN, peak: Regularizer | None = None) -> float:
    return comb_entropy_terms(c, reg, peak).s_k


def comb_entropy_phase(c, reg: Regularizer = GAUSSIAN, peak: Regularizer | None = None) -> float:
    return comb_entropy_terms(c, reg, peak).total


def comb_p_norm(c, p: float, reg: Regularizer = GAUSSIAN, peak: Regularizer | None = None) -> float:
    """(sum |b_k|^p / r * I_env(p) * I_peak(p))^(1/p)."""
    if not p >= 1:
        raise InvalidExponent(f"p must be >= 1, got {p!r}")
    peak = peak or reg
    c = _canon(c)
    s = np.sum(np.abs(c.amplitudes) ** p) / float(c.period)
    return float((s * reg.p_integral(p) * peak.p_integral(p)) ** (1.0 / p))


def comb_p_norm_k(c, q: float, reg: Regularizer = GAUSSIAN, peak: Regularizer | None = None) -> float:
    """q-norm of the Fourier transform of the regularised comb."""
    if not q >= 1:
        raise InvalidExponent(f"q must be >= 1, got {q!r}")
    peak = peak or reg
    ck = canonical_form(comb_fourier(_canon(c)))
    s = np.sum(np.abs(ck.amplitudes) ** q) / float(ck.period)
    return float((s * reg.p_integral_fourier(q) * peak.p_integral_fourier(q)) ** (1.0 / q))


# ---------------------------------------------------------------------------
# text form:  coeff * phi(period, alpha, beta) + ...
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?j?|j)|(?P<name>phi|sqrt)|(?P<op>[-+*/(),]))"
)


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(m.lastgroup))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expect: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ValueError(f"expected {expect or 'token'}, found {tok!r}")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise ValueError(f"expected integer, found {tok!r}")
        return int(tok)

    def rational(self) -> Fraction:
        sign = 1
        while self.peek() in ("-", "+"):
            sign *= -1 if self.take() == "-" else 1
        num = self.integer()
        if self.peek() == "/" and self.peek(1) != "sqrt":
            self.take("/")
            return sign * Fraction(num, self.integer())
        return Fraction(sign * num)

    def period(self) -> QuadReal:
        if self.peek() == "sqrt":
            return QuadReal(1, self.sqrt())
        t = self.rational()
        if self.peek() == "*":
            self.take("*")
            return QuadReal(t, self.sqrt())
        if self.peek() == "/" and self.peek(1) == "sqrt":
            self.take("/")
            d = self.sqrt()
            return QuadReal(t / d, d)
        return QuadReal(t)

    def sqrt(self) -> int:
        self.take("sqrt")
        self.take("(")
        d = self.integer()
        self.take(")")
        if d < 1:
            raise ValueError("sqrt argument must be positive")
        return d

    def number(self) -> complex:
        tok = self.take()
        val = complex(tok if tok != "j" else "1j")
        if self.peek() == "/" and self.peek(1) and self.peek(1)[0].isdigit():
            self.take("/")
            val /= float(self.take())
        return val

    def coefficient(self) -> complex:
        if self.peek() != "(":
            return self.number()
        # parenthesised signed sum such as (1 - 0.5j) or (-1/2 + 3j)
        self.take("(")
        val = 0j
        while True:
            sign = 1.0
            while self.peek() in ("-", "+"):
                sign *= -1.0 if self.take() == "-" else 1.0
            val += sign * self.number()
            if self.peek() == ")":
                self.take(")")
                return val
            if self.peek() not in ("+", "-"):
                raise ValueError(f"malformed coefficient near {self.peek()!r}")

    def term(self) -> CombAtom:
        sign = 1.0
        while self.peek() in ("-", "+"):
            sign *= -1.0 if self.take() == "-" else 1.0
        coeff = 1.0 + 0j
        if self.peek() != "phi":
            coeff = self.coefficient()
            self.take("*")
        self.take("phi")
        self.take("(")
        r = self.period()
        self.take(",")
        a = self.rational()
        self.take(",")
        b = self.rational()
        self.take(")")
        return CombAtom(sign * coeff, r, a, b)

    def comb(self) -> Comb:
        atoms = [self.term()]
        while self.peek() in ("+", "-"):
            if self.peek() == "+":
                self.take("+")
            atoms.append(self.term())
        if self.peek() is not None:
            raise ValueError(f"trailing input at token {self.peek()!r}")
        return Comb(tuple(atoms))


def parse_comb(text: str) -> Comb:
    """Parse e.g. ``"(1-1.414j)*phi(sqrt(2), 0, 0) + phi(1/2*sqrt(2), 1/2, 0)"``.

    Grammar::

        comb   := term (('+' | '-') term)*
        term   := [coeff '*'] 'phi(' period ',' rational ',' rational ')'
        period := rational ['*' 'sqrt(' int ')'] | 'sqrt(' int ')'
                | rational '/' 'sqrt(' int ')'
        coeff  := real | imaginary | '(' python complex literal ')'
    """
    return _Parser(text).comb()
