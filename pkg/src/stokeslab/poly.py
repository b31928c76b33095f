"""Polynomials q(z), their evaluation and turning points (roots).

Coefficients are stored ascending: q(z) = sum(coeffs[k] * z**k).  Root
finding uses a deterministic Aberth-Ehrlich simultaneous iteration followed
by a Newton polish, so repeated runs give bit-identical turning points.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import MultipleTurningPoint, NonConvergence

__all__ = [
    "Poly",
    "TurningPoint",
    "turning_points",
    "assert_simple",
    "real_turning_points",
    "classified_real_segments",
]


class Poly:
    """Polynomial with complex coefficients, ascending degree order."""

    __slots__ = ("coeffs", "degree")

    def __init__(self, coeffs: Sequence[complex]):
        cs = [complex(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if len(cs) < 2:
            raise ValueError("degree must be >= 1")
        if cs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        self.coeffs = tuple(cs)
        self.degree = len(cs) - 1

    @classmethod
    def from_roots(cls, roots: Iterable[complex], leading: complex = 1.0) -> "Poly":
        cs = np.array([complex(leading)])
        for r in roots:
            cs = np.convolve(cs, np.array([-complex(r), 1.0]))
        # np.convolve with [-r, 1] keeps ascending order
        return cls(cs.tolist())

    # -- evaluation ---------------------------------------------------------

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_with_deriv(self, z: complex) -> tuple[complex, complex]:
        """Horner evaluation of (q(z), q'(z)) in one pass."""
        p = 0j
        dp = 0j
        for c in reversed(self.coeffs):
            dp = dp * z + p
            p = p * z + c
        return p, dp

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    # -- structure ----------------------------------------------------------

    @property
    def is_real(self) -> bool:
        scale = max(abs(c) for c in self.coeffs)
        return all(abs(c.imag) <= 1e-14 * scale for c in self.coeffs)

    @property
    def is_even(self) -> bool:
        scale = max(abs(c) for c in self.coeffs)
        return all(abs(c) <= 1e-14 * scale for c in self.coeffs[1::2])

    def is_real_even_well(self) -> bool:
        """Real coefficients, even degree, positive leading coefficient."""
        return self.is_real and self.degree % 2 == 0 and self.coeffs[-1].real > 0

    def coeff_scale(self, z: complex) -> float:
        """sum |a_k| |z|^k, a backward-error scale for residual tests."""
        az = abs(z)
        s = 0.0
        zk = 1.0
        for c in self.coeffs:
            s += abs(c) * zk
            zk *= az
        return s

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)


@dataclass(frozen=True)
class TurningPoint:
    """A zero of q with its multiplicity; is_real uses a scale-aware tolerance."""

    z: complex
    multiplicity: int
    is_real: bool


def _aberth_roots(p: Poly, max_iter: int = 120) -> list[complex]:
    """All roots by Aberth-Ehrlich iteration with deterministic starts on a
    circle of radius given by the Cauchy bound."""
    n = p.degree
    an = p.coeffs[-1]
    cauchy = 1.0 + max(abs(c / an) for c in p.coeffs[:-1])
    # fixed angular offset keeps starts off the real axis and deterministic
    zs = [
        0.8 * cauchy * cmath.exp(2j * math.pi * (k + 0.354) / n)
        for k in range(n)
    ]
    for _ in range(max_iter):
        moved = 0.0
        new = list(zs)
        for i, z in enumerate(zs):
            pv, dv = p.eval_with_deriv(z)
            if pv == 0:
                continue
            if dv == 0:
                new[i] = z * (1 + 1e-6) + 1e-6
                moved = math.inf
                continue
            ratio = pv / dv
            s = 0j
            for j, w in enumerate(zs):
                if j != i:
                    dz = z - w
                    if dz != 0:
                        s += 1.0 / dz
            denom = 1.0 - ratio * s
            step = ratio / denom if denom != 0 else ratio
            new[i] = z - step
            moved = max(moved, abs(step))
        zs = new
        if moved < 1e-15 * cauchy:
            break
    return zs


def _newton_polish(p: Poly, z: complex, iters: int = 50) -> complex:
    for _ in range(iters):
        pv, dv = p.eval_with_deriv(z)
        if dv == 0:
            break
        step = pv / dv
        z = z - step
        if abs(step) <= 1e-16 * (1.0 + abs(z)):
            break
    return z


def turning_points(p: Poly, tol_cluster: float = 1e-9) -> list[TurningPoint]:
    """All roots of p, polished, clustered and (for real p) symmetrized.

    Roots within ``tol_cluster`` of each other are merged into a single
    turning point whose multiplicity is the cluster size.  For real
    coefficients the result is exactly closed under complex conjugation.
    Raises NonConvergence if any root fails to polish below 1e-12 * scale.
    """
    roots = [_newton_polish(p, z) for z in _aberth_roots(p)]
    for z in roots:
        # backward-error scale with |z| floored at 1 so that near-zero
        # multiple roots (residual ~ |z|^m) still count as converged
        scale = p.coeff_scale(complex(max(1.0, abs(z)), 0.0))
        if abs(p(z)) > 1e-12 * scale:
            raise NonConvergence(f"root {z} has residual {abs(p(z)):.3e}")

    # cluster nearby roots; a multiple root is only determined to ~sqrt(eps)
    # in double precision, so the cluster radius floors there
    radius = max(tol_cluster, 8.0 * math.sqrt(2.2e-16))
    roots.sort(key=lambda z: (z.real, z.imag))
    clusters: list[list[complex]] = []
    for z in roots:
        for cl in clusters:
            if abs(z - cl[0]) <= radius * (1.0 + abs(cl[0])):
                cl.append(z)
                break
        else:
            clusters.append([z])

    centers = [(sum(cl) / len(cl), len(cl)) for cl in clusters]

    if p.is_real:
        centers = _symmetrize_real(centers)

    tps = []
    for z, mult in centers:
        is_real = abs(z.imag) <= 1e-10 * (1.0 + abs(z))
        if is_real:
            z = complex(z.real, 0.0)
        tps.append(TurningPoint(z=z, multiplicity=mult, is_real=is_real))
    tps.sort(key=lambda t: (t.z.real, t.z.imag))
    return tps


def _symmetrize_real(centers: list[tuple[complex, int]]) -> list[tuple[complex, int]]:
    """Average conjugate pairs and flatten near-real roots, exactly pairing
    the root multiset under conjugation."""
    out: list[tuple[complex, int]] = []
    used = [False] * len(centers)
    for i, (z, m) in enumerate(centers):
        if used[i]:
            continue
        if abs(z.imag) <= 1e-10 * (1.0 + abs(z)):
            out.append((complex(z.real, 0.0), m))
            used[i] = True
            continue
        # find the conjugate partner
        best, bestd = None, math.inf
        for j in range(len(centers)):
            if j == i or used[j]:
                continue
            d = abs(centers[j][0] - z.conjugate())
            if d < bestd:
                best, bestd = j, d
        if best is not None and bestd <= 1e-6 * (1.0 + abs(z)) and centers[best][1] == m:
            w = centers[best][0]
            avg = complex(0.5 * (z.real + w.real), 0.5 * (z.imag - w.imag))
            out.append((avg, m))
            out.append((avg.conjugate(), m))
            used[i] = used[best] = True
        else:
            out.append((z, m))
            used[i] = True
    return out


def assert_simple(tps: list[TurningPoint]) -> None:
    """Raise MultipleTurningPoint unless every turning point is simple."""
    for tp in tps:
        if tp.multiplicity != 1:
            raise MultipleTurningPoint(tp.z, tp.multiplicity)


def real_turning_points(tps: list[TurningPoint]) -> list[float]:
    return sorted(tp.z.real for tp in tps if tp.is_real)


def classified_real_segments(p: Poly, tps: list[TurningPoint]) -> list[tuple[float, float, str]]:
    """Segments between consecutive real turning points, labeled by the sign
    of q there: 'stokes' where q < 0, 'anti_stokes' where q > 0."""
    xs = real_turning_points(tps)
    out = []
    for a, b in zip(xs[:-1], xs[1:]):
        mid = p(complex(0.5 * (a + b), 0.0))
        kind = "stokes" if mid.real < 0 else "anti_stokes"
        out.append((a, b, kind))
    return out
