"""Finite abelian groups, their characters, and integer-lattice quotients."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .intlinalg import IntMatrix, snf

__all__ = [
    "Element",
    "FiniteAbelianGroup",
    "QuotientMap",
    "quotient_group",
    "DegenerateLatticeError",
]

Element = tuple[int, ...]  # group elements are tuples of residues, one per modulus


class DegenerateLatticeError(ValueError):
    """Raised when a sublattice basis is singular, so the quotient is infinite."""


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct product Z_n1 x ... x Z_nu of cyclic groups.

    Moduli equal to 1 are dropped at construction.  The trivial group has an
    empty modulus tuple and a single element, the empty tuple.
    """

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        cleaned = tuple(int(n) for n in self.moduli if int(n) != 1)
        for n in cleaned:
            if n < 1:
                raise ValueError(f"modulus must be a positive integer, got {n}")
        object.__setattr__(self, "moduli", cleaned)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def element_tuple(self) -> tuple[Element, ...]:
        """All elements in ascending lexicographic order."""
        return tuple(itertools.product(*(range(n) for n in self.moduli)))

    def elements(self) -> tuple[Element, ...]:
        return self.element_tuple

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == len(self.moduli)
            and all(isinstance(c, int) and 0 <= c < n for c, n in zip(x, self.moduli))
        )

    def _check(self, x) -> None:
        if not self.contains(x):
            raise ValueError(f"{x!r} is not an element of the group with moduli {self.moduli}")

    def index_of(self, x: Element) -> int:
        """Lexicographic rank of an element (the row/column index convention)."""
        self._check(x)
        idx = 0
        for c, n in zip(x, self.moduli):
            idx = idx * n + c
        return idx

    def reduce(self, vector) -> Element:
        """Reduce an arbitrary integer vector componentwise into the group."""
        if len(vector) != len(self.moduli):
            raise ValueError(f"vector {vector!r} has wrong length for moduli {self.moduli}")
        return tuple(int(v) % n for v, n in zip(vector, self.moduli))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.moduli))

    def sub(self, x: Element, y: Element) -> Element:
        return tuple((a - b) % n for a, b, n in zip(x, y, self.moduli))

    def neg(self, x: Element) -> Element:
        return tuple((-a) % n for a, n in zip(x, self.moduli))

    def double(self, x: Element) -> Element:
        return tuple((2 * a) % n for a, n in zip(x, self.moduli))

    @cached_property
    def _lcm(self) -> int:
        return math.lcm(*self.moduli) if self.moduli else 1

    def character_value(self, a: Element, x: Element) -> complex:
        """chi_a(x) = exp(2 pi i * sum_j a_j x_j / n_j).

        The phase is accumulated as an exact fraction over lcm(moduli) and
        reduced mod 1 before the single trigonometric evaluation.
        """
        self._check(a)
        self._check(x)
        den = self._lcm
        num = sum(aj * xj * (den // n) for aj, xj, n in zip(a, x, self.moduli)) % den
        return cmath.exp(2j * math.pi * num / den)

    def is_involutive(self, a: Element) -> bool:
        """True iff a + a = 0, i.e. the character chi_a takes only values +-1."""
        return all(2 * c % n == 0 for c, n in zip(a, self.moduli))

    def character_sign(self, a: Element, x: Element) -> int:
        """Exact +-1 value of chi_a(x) for an involutive label a (integer arithmetic only)."""
        self._check(a)
        self._check(x)
        if not self.is_involutive(a):
            raise ValueError(f"label {a} is not involutive; chi takes non-real values")
        parity = sum(xj for aj, xj in zip(a, x) if aj != 0)
        return -1 if parity % 2 else 1

    def involutive_elements(self) -> list[Element]:
        """Elements with a + a = 0, in lexicographic order; count is prod(2 if n even else 1)."""
        choices = [(0,) if n % 2 else (0, n // 2) for n in self.moduli]
        return [tuple(c) for c in itertools.product(*choices)]

    def conjugate_pair_reps(self) -> list[Element]:
        """One representative per pair {a, -a} with a != -a, the lexicographic minimum."""
        reps = []
        for a in self.element_tuple:
            na = self.neg(a)
            if a < na:
                reps.append(a)
        return reps


@dataclass(frozen=True)
class QuotientMap:
    """The projection Z^d -> Z^d / L for a full-rank integer column lattice L.

    transform is a unimodular row transform carrying L onto a diagonal lattice;
    an integer vector projects to (transform @ x) mod diagonal, with coordinates
    of modulus 1 dropped.  The kernel is exactly the column lattice of L.
    """

    dim: int
    transform: IntMatrix
    diagonal: tuple[int, ...]
    group: FiniteAbelianGroup

    @cached_property
    def _active_rows(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        # transform rows paired with their moduli, skipping dropped (modulus 1) coordinates
        return tuple(
            (row, n) for row, n in zip(self.transform.rows, self.diagonal) if n != 1
        )

    def project(self, vector) -> Element:
        if len(vector) != self.dim:
            raise ValueError(f"vector {vector!r} has wrong length for dimension {self.dim}")
        out = []
        for row, n in self._active_rows:
            acc = 0
            for rv, xv in zip(row, vector):
                acc += rv * xv
            out.append(acc % n)
        return tuple(out)


def quotient_group(basis: IntMatrix) -> QuotientMap:
    """Quotient of Z^d by the lattice spanned by the columns of basis."""
    decomposition = snf(basis)
    diag = decomposition.d.diagonal()
    if any(x == 0 for x in diag):
        raise DegenerateLatticeError(f"sublattice basis is singular: {basis.to_lists()}")
    return QuotientMap(
        dim=basis.dim,
        transform=decomposition.u,
        diagonal=diag,
        group=FiniteAbelianGroup(diag),
    )
