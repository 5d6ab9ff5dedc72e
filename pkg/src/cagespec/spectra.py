"""Spectra of Cayley sum graphs.

Two independent routes are provided: an exact character-based computation
(eigenvalues come from chi(S) for real characters and +-|chi(S)| for conjugate
pairs, with eigenvectors assembled from the characters), and a from-scratch
cyclic Jacobi eigensolver that knows nothing about the group structure.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .abelian import FiniteAbelianGroup
from .caysum import CaySumGraph, SumSet, total_semiedge_count

__all__ = [
    "EIGENSOLVER_TOL",
    "MATCH_TOL",
    "SpectrumPartition",
    "EigenPair",
    "ConvergenceError",
    "character_spectrum",
    "sum_set_spectrum",
    "canonical_unmatched",
    "spectrum_is_paired",
    "eigenvectors",
    "numeric_spectrum",
    "multiset_close",
]

EIGENSOLVER_TOL = 1e-12
MATCH_TOL = 1e-8


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi sweep budget is exhausted before convergence."""


@dataclass(frozen=True)
class SpectrumPartition:
    """Spectrum split into the unmatched multiset and the paired (+-) part.

    unmatched_raw holds the exact integer eigenvalues coming from real
    characters; unmatched_canonical is the same multiset after cancelling
    complete {lambda, -lambda} pairs into the paired part.  paired holds one
    nonnegative magnitude per conjugate character pair; each contributes the
    eigenvalue pair +-magnitude.
    """

    semiedge_total: int
    unmatched_raw: tuple[int, ...]
    unmatched_canonical: tuple[int, ...]
    paired: tuple[float, ...]

    def full(self) -> list[float]:
        """The complete eigenvalue multiset, descending."""
        values = [float(v) for v in self.unmatched_raw]
        for p in self.paired:
            values.append(p)
            values.append(-p)
        values.sort(reverse=True)
        return values

    def to_json(self) -> dict:
        return {
            "s": self.semiedge_total,
            "M_raw": list(self.unmatched_raw),
            "M_canonical": list(self.unmatched_canonical),
            "paired": list(self.paired),
            "full": self.full(),
        }


@lru_cache(maxsize=128)
def _unit_roots(den: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * k / den) for k in range(den))


def sum_set_spectrum(
    group: FiniteAbelianGroup,
    s: SumSet,
    semiedge_total: int | None = None,
) -> SpectrumPartition:
    """Exact spectrum partition of CayS(group, s) straight from the sum set.

    Real (involutive) characters contribute chi(S) as exact integers; each
    conjugate character pair contributes the magnitude |chi(S)| once.  The
    semiedge total (the adjacency trace) is recomputed arithmetically unless
    supplied, and checked against the sum of the real character values.
    """
    if s.group != group:
        raise ValueError("sum set belongs to a different group")
    moduli = group.moduli
    s_elements = s.elements

    raw = []
    for a in group.involutive_elements():
        active = tuple(j for j, aj in enumerate(a) if aj != 0)
        total = 0
        for x in s_elements:
            total += -1 if sum(x[j] for j in active) % 2 else 1
        raw.append(total)

    den = group._lcm
    roots = _unit_roots(den)
    weights = tuple(den // n for n in moduli)
    paired: list[float] = []
    if len(moduli) == 2:
        # rank-2 fast path: plane quotients are the bulk caller, so keep the
        # inner loop on plain ints
        m0, m1 = moduli
        w0, w1 = weights
        sw = [(x0 * w0, x1 * w1) for x0, x1 in s_elements]
        for a0 in range(m0):
            na0 = (-a0) % m0
            if a0 > na0:
                continue
            full_row = a0 < na0
            for a1 in range(m1):
                if not full_row and a1 >= (-a1) % m1:
                    continue
                z = 0j
                for x0, x1 in sw:
                    z += roots[(a0 * x0 + a1 * x1) % den]
                paired.append(abs(z))
    else:
        s_weighted = [tuple(xj * w for xj, w in zip(x, weights)) for x in s_elements]
        for a in group.conjugate_pair_reps():
            z = 0j
            for xw in s_weighted:
                z += roots[sum(aj * xj for aj, xj in zip(a, xw)) % den]
            paired.append(abs(z))

    if semiedge_total is None:
        semiedge_total = total_semiedge_count(group, s)
    if sum(raw) != semiedge_total:
        raise AssertionError(
            f"trace identity violated: sum of real character values {sum(raw)} "
            f"!= semiedge total {semiedge_total}"
        )
    raw_sorted = tuple(sorted(raw, reverse=True))
    return SpectrumPartition(
        semiedge_total=semiedge_total,
        unmatched_raw=raw_sorted,
        unmatched_canonical=canonical_unmatched(raw_sorted),
        paired=tuple(sorted(paired, reverse=True)),
    )


def character_spectrum(graph: CaySumGraph) -> SpectrumPartition:
    """Exact spectrum partition of a Cayley sum graph from its characters."""
    return sum_set_spectrum(graph.group, graph.sum_set, graph.total_semiedges)


def canonical_unmatched(values: Iterable[int]) -> tuple[int, ...]:
    """Cancel complete {lambda, -lambda} pairs out of an integer multiset.

    For each magnitude the min(count(+), count(-)) pairs migrate to the paired
    part of the spectrum; zeros cancel two at a time.  What remains is the
    canonical unmatched multiset, returned descending.
    """
    counts = Counter(int(v) for v in values)
    result: list[int] = []
    for mag in sorted({abs(v) for v in counts}, reverse=True):
        if mag == 0:
            if counts.get(0, 0) % 2:
                result.append(0)
            continue
        pos, neg = counts.get(mag, 0), counts.get(-mag, 0)
        if pos > neg:
            result.extend([mag] * (pos - neg))
        elif neg > pos:
            result.extend([-mag] * (neg - pos))
    return tuple(sorted(result, reverse=True))


def spectrum_is_paired(full: Sequence[float], unmatched: Iterable[float], tol: float = MATCH_TOL) -> bool:
    """True iff (full - unmatched) is negation-symmetric.

    Each unmatched value is removed once (nearest match within tol); the
    remainder is then paired greedily, largest against most negative.
    """
    remaining = sorted(float(v) for v in full)
    for value in unmatched:
        target = float(value)
        best = None
        for idx, candidate in enumerate(remaining):
            err = abs(candidate - target)
            if best is None or err < best[0]:
                best = (err, idx)
        if best is None or best[0] > tol:
            return False
        remaining.pop(best[1])
    lo, hi = 0, len(remaining) - 1
    while lo < hi:
        if abs(remaining[lo] + remaining[hi]) > tol:
            return False
        lo += 1
        hi -= 1
    return lo > hi


def multiset_close(xs: Sequence[float], ys: Sequence[float], tol: float = MATCH_TOL) -> bool:
    """Compare two real multisets by sorting and elementwise tolerance."""
    if len(xs) != len(ys):
        return False
    return all(abs(a - b) <= tol for a, b in zip(sorted(xs), sorted(ys)))


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray
    residual: float


def eigenvectors(graph: CaySumGraph) -> list[EigenPair]:
    """A complete orthonormal eigensystem assembled from characters.

    Real characters give +-1 eigenvectors for the exact integer eigenvalues.
    For a conjugate pair with value lambda = |chi(S)| > 0, a unimodular alpha
    with alpha^2 chi(S) = |chi(S)| is chosen; Re(alpha chi) and Im(alpha chi)
    are eigenvectors for +lambda and -lambda.  When chi(S) = 0, alpha = 1 and
    both parts belong to the doubly degenerate eigenvalue 0.
    """
    group = graph.group
    n = group.order
    elements = group.element_tuple
    adjacency = graph.adjacency_matrix().astype(float)
    pairs: list[EigenPair] = []

    def finish(value: float, vec: np.ndarray) -> None:
        vec = vec / np.linalg.norm(vec)
        residual = float(np.max(np.abs(adjacency @ vec - value * vec)))
        pairs.append(EigenPair(value=value, vector=vec, residual=residual))

    s_elements = graph.sum_set.elements
    for a in group.involutive_elements():
        active = tuple(j for j, aj in enumerate(a) if aj != 0)
        value = 0
        for x in s_elements:
            value += -1 if sum(x[j] for j in active) % 2 else 1
        vec = np.array(
            [-1.0 if sum(x[j] for j in active) % 2 else 1.0 for x in elements]
        )
        finish(float(value), vec)

    den = group._lcm
    weights = tuple(den // m for m in group.moduli)
    for a in group.conjugate_pair_reps():
        aw = tuple(aj * w for aj, w in zip(a, weights))
        phases = np.array([sum(aj * xj for aj, xj in zip(aw, x)) % den for x in elements])
        chi = np.exp(2j * np.pi * phases / den)
        chi_s = 0j
        for x in s_elements:
            chi_s += cmath.exp(2j * math.pi * (sum(aj * xj for aj, xj in zip(aw, x)) % den) / den)
        value = abs(chi_s)
        if value < 1e-12:
            alpha = 1.0 + 0j
            value = 0.0
        else:
            alpha = cmath.exp(-1j * cmath.phase(chi_s) / 2)
        rotated = alpha * chi
        finish(value, rotated.real.copy())
        finish(-value, rotated.imag.copy())

    return pairs


def numeric_spectrum(
    a: np.ndarray,
    tol: float = EIGENSOLVER_TOL,
    max_sweeps: int = 100,
) -> list[float]:
    """Eigenvalues of a real symmetric matrix, descending, by cyclic Jacobi.

    Sweeps row by row, rotating away each off-diagonal entry; terminates when
    the off-diagonal Frobenius norm is at most tol.  This solver is the
    group-blind oracle for character_spectrum and deliberately uses nothing
    from the rest of the package.
    """
    work = np.array(a, dtype=float)
    if work.ndim != 2 or work.shape[0] != work.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {work.shape}")
    if not np.array_equal(work, work.T):
        raise ValueError("matrix is not symmetric")
    n = work.shape[0]
    if n == 1:
        return [float(work[0, 0])]

    threshold = tol / n  # all entries below this => off-diagonal norm <= tol
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        # summed directly over the off-diagonal entries; subtracting the
        # diagonal from the full Frobenius norm cancels catastrophically
        off = math.sqrt(float(np.sum(work[off_mask] ** 2)))
        if off <= tol:
            return sorted((float(x) for x in np.diag(work)), reverse=True)
        for p in range(n - 1):
            row_p = work[p]
            for q in range(p + 1, n):
                apq = row_p[q]
                if abs(apq) <= threshold:
                    continue
                app = work[p, p]
                aqq = work[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = work[p, :].copy()
                rq = work[q, :].copy()
                work[p, :] = c * rp - s * rq
                work[q, :] = s * rp + c * rq
                cp = work[:, p].copy()
                cq = work[:, q].copy()
                work[:, p] = c * cp - s * cq
                work[:, q] = s * cp + c * cq
                work[p, q] = 0.0
                work[q, p] = 0.0
    raise ConvergenceError(f"Jacobi failed to reach off-norm {tol} in {max_sweeps} sweeps")
