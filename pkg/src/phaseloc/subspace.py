"""Constraint selectors: unconstrained, antisymmetric, or a Fourier eigenspace."""

from __future__ import annotations

from dataclasses import dataclass

EIGENVALUES = (1, -1j, -1, 1j)

_LAMBDA_NAMES = {"+1": 1, "1": 1, "-1": -1, "+i": 1j, "i": 1j, "-i": -1j}


@dataclass(frozen=True)
class SubspaceSpec:
    """``kind`` is one of ``"unconstrained"``, ``"antisymmetric"``, ``"eigen"``.

    For ``"eigen"`` the eigenvalue ``lam`` must be one of 1, -i, -1, i.
    """

    kind: str = "unconstrained"
    lam: complex | None = None

    def __post_init__(self):
        if self.kind not in ("unconstrained", "antisymmetric", "eigen"):
            raise ValueError(f"unknown subspace kind {self.kind!r}")
        if self.kind == "eigen":
            if self.lam is None or not any(abs(complex(self.lam) - e) < 1e-12 for e in EIGENVALUES):
                raise ValueError(f"eigenvalue must be a fourth root of unity, got {self.lam!r}")
            # snap to the exact root
            lam = min(EIGENVALUES, key=lambda e: abs(complex(self.lam) - e))
            object.__setattr__(self, "lam", complex(lam))
        elif self.lam is not None:
            raise ValueError("lam is only meaningful for eigen subspaces")

    @classmethod
    def unconstrained(cls) -> SubspaceSpec:
        return cls("unconstrained")

    @classmethod
    def antisymmetric(cls) -> SubspaceSpec:
        return cls("antisymmetric")

    @classmethod
    def eigen(cls, lam: complex) -> SubspaceSpec:
        return cls("eigen", lam)

    @classmethod
    def parse(cls, text: str) -> SubspaceSpec:
        """Parse ``unconstrained``, ``antisymmetric`` or ``eigen:<lam>`` (``+1``, ``-1``, ``+i``, ``-i``)."""
        t = text.strip().lower()
        if t in ("unconstrained", "none"):
            return cls.unconstrained()
        if t in ("antisymmetric", "odd"):
            return cls.antisymmetric()
        if t.startswith("eigen:"):
            t = t[len("eigen:"):]
        if t in _LAMBDA_NAMES:
            return cls.eigen(_LAMBDA_NAMES[t])
        raise ValueError(f"cannot parse subspace {text!r}")

    def label(self) -> str:
        if self.kind != "eigen":
            return self.kind
        return "eigen:" + {1: "+1", -1: "-1", 1j: "+i", -1j: "-i"}[self.lam]
