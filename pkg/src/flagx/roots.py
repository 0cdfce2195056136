"""Classical root systems in orthonormal ambient coordinates.

Type A_{n-1} lives in R^n (the epsilon basis, roots in the sum-zero
hyperplane); types B_n, C_n, D_n live in R^n (the omega basis).  The integer
``n`` passed to :func:`build_root_system` is the classical parameter of
su(n), so(2n+1), sp(n) and so(2n) respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Sequence

from .linalg import solve_in_span

Vector = tuple[Q, ...]

FAMILIES = ("A", "B", "C", "D")

# smallest admissible classical parameter n per family
MIN_N = {"A": 2, "B": 2, "C": 3, "D": 3}


class DomainError(ValueError):
    """Mathematically invalid input (unsupported family, rank, subset, ...)."""


def vec(*coords) -> Vector:
    return tuple(Q(c) for c in coords)


def unit(n: int, i: int, scale=1) -> Vector:
    return tuple(Q(scale) if k == i else Q(0) for k in range(n))


def add(u: Sequence[Q], v: Sequence[Q]) -> Vector:
    if len(u) != len(v):
        raise DomainError("dimension mismatch")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Q], v: Sequence[Q]) -> Vector:
    if len(u) != len(v):
        raise DomainError("dimension mismatch")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence[Q]) -> Vector:
    c = Q(c)
    return tuple(c * a for a in u)


def dot(u: Sequence[Q], v: Sequence[Q]) -> Q:
    if len(u) != len(v):
        raise DomainError("dimension mismatch")
    return sum((a * b for a, b in zip(u, v)), Q(0))


def is_zero(u: Sequence[Q]) -> bool:
    return all(a == 0 for a in u)


def sum_of(roots: Iterable[Sequence[Q]]) -> Vector:
    roots = list(roots)
    if not roots:
        raise DomainError("sum_of needs at least one vector")
    total = tuple(Q(a) for a in roots[0])
    for r in roots[1:]:
        total = add(total, r)
    return total


@dataclass(frozen=True)
class RootSystem:
    family: str
    n: int
    rank: int
    ambient_dim: int
    roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    form_scale: Q = Q(1)

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def algebra_name(self) -> str:
        return {
            "A": f"su({self.n})",
            "B": f"so({2 * self.n + 1})",
            "C": f"sp({self.n})",
            "D": f"so({2 * self.n})",
        }[self.family]

    def inner(self, u: Sequence[Q], v: Sequence[Q]) -> Q:
        return inner(u, v, self)

    def with_scale(self, form_scale) -> "RootSystem":
        form_scale = Q(form_scale)
        if form_scale <= 0:
            raise DomainError("form_scale must be positive")
        return RootSystem(
            self.family,
            self.n,
            self.rank,
            self.ambient_dim,
            self.roots,
            self.simple_roots,
            self.positive_roots,
            form_scale,
        )

    def delta(self) -> Vector:
        return sum_of(self.positive_roots)

    def simple_coefficients(self, root: Sequence[Q]) -> tuple[Q, ...]:
        """Coordinates of ``root`` with respect to the simple roots."""
        coeffs = solve_in_span(self.simple_roots, root)
        if coeffs is None:
            raise DomainError(f"{root} is not in the root lattice span")
        return tuple(coeffs)


def inner(u: Sequence[Q], v: Sequence[Q], system: RootSystem) -> Q:
    return system.form_scale * dot(u, v)


def _positive_roots(family: str, n: int) -> list[Vector]:
    pos: list[Vector] = []
    for i in range(n):
        for j in range(i + 1, n):
            diff = tuple(Q(1) if k == i else Q(-1) if k == j else Q(0) for k in range(n))
            pos.append(diff)
            if family != "A":
                pos.append(tuple(Q(1) if k in (i, j) else Q(0) for k in range(n)))
    if family == "B":
        pos.extend(unit(n, i) for i in range(n))
    elif family == "C":
        pos.extend(unit(n, i, 2) for i in range(n))
    return sorted(pos)


def _simple_roots(family: str, n: int) -> list[Vector]:
    chain = [sub(unit(n, i), unit(n, i + 1)) for i in range(n - 1)]
    if family == "A":
        return chain
    last = {
        "B": unit(n, n - 1),
        "C": unit(n, n - 1, 2),
        "D": add(unit(n, n - 2), unit(n, n - 1)),
    }[family]
    return chain + [last]


def build_root_system(family: str, n: int, form_scale=1) -> RootSystem:
    family = str(family).upper()
    if family not in FAMILIES:
        raise DomainError(f"unsupported family {family!r} (expected one of A, B, C, D)")
    if not isinstance(n, int) or n < MIN_N[family]:
        raise DomainError(f"type {family} needs n >= {MIN_N[family]}, got {n}")
    form_scale = Q(form_scale)
    if form_scale <= 0:
        raise DomainError("form_scale must be positive")
    pos = _positive_roots(family, n)
    neg = [scale(-1, r) for r in pos]
    rank = n - 1 if family == "A" else n
    return RootSystem(
        family=family,
        n=n,
        rank=rank,
        ambient_dim=n,
        roots=tuple(sorted(pos + neg)),
        simple_roots=tuple(_simple_roots(family, n)),
        positive_roots=tuple(pos),
        form_scale=form_scale,
    )


def n_for_rank(family: str, rank: int) -> int:
    """Classical parameter n for a Lie rank (A_r is su(r+1))."""
    return rank + 1 if family.upper() == "A" else rank

