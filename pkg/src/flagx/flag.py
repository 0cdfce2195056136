"""Generalized flag manifolds G/H from a parabolic choice of simple roots.

``pi0`` is the set of 1-based simple-root indices that generate the root
system of the isotropy subalgebra h.  The empty set gives the full flag G/T.
The complex structure is the one induced by the standard positive system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Sequence

from . import linalg
from .roots import (
    DomainError,
    RootSystem,
    Vector,
    add,
    build_root_system,
    dot,
    is_zero,
    sub,
    sum_of,
)


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, never bad input."""


@dataclass(frozen=True)
class FlagManifold:
    system: RootSystem
    pi0: tuple[int, ...]
    r_h: tuple[Vector, ...]
    r_m_plus: tuple[Vector, ...]
    delta_m: Vector
    dim_complex: int
    center_dim: int

    @property
    def is_full(self) -> bool:
        return not self.pi0

    @property
    def pi0_roots(self) -> tuple[Vector, ...]:
        return tuple(self.system.simple_roots[i - 1] for i in self.pi0)

    @property
    def label(self) -> str:
        if self.is_full:
            return f"{self.system.label} full flag"
        return f"{self.system.label} / <{','.join(map(str, self.pi0))}>"

    def in_weight_space(self, v: Sequence[Q]) -> bool:
        if len(v) != self.system.ambient_dim:
            return False
        return self.system.family != "A" or sum(v) == 0


@dataclass(frozen=True)
class TRootClass:
    rho: Vector
    multiplicity: int
    beta: Q
    members: tuple[Vector, ...]


@dataclass(frozen=True)
class TRootDecomposition:
    classes: tuple[TRootClass, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


def _normalize_pi0(system: RootSystem, pi0: Iterable[int]) -> tuple[int, ...]:
    idx = sorted(set(int(i) for i in pi0))
    for i in idx:
        if not 1 <= i <= system.rank:
            raise DomainError(
                f"parabolic index {i} out of range 1..{system.rank} for {system.label}"
            )
    if len(idx) == system.rank:
        raise DomainError("pi0 is the full simple system; G/H would be a point")
    return tuple(idx)


def build_flag(system: RootSystem, pi0: Iterable[int] = ()) -> FlagManifold:
    pi0 = _normalize_pi0(system, pi0)
    gens = [system.simple_roots[i - 1] for i in pi0]
    r_h = tuple(r for r in system.roots if linalg.solve_in_span(gens, r) is not None)
    h_set = set(r_h)
    r_m_plus = tuple(r for r in system.positive_roots if r not in h_set)
    delta_m = sum_of(r_m_plus)
    return FlagManifold(
        system=system,
        pi0=pi0,
        r_h=r_h,
        r_m_plus=r_m_plus,
        delta_m=delta_m,
        dim_complex=len(r_m_plus),
        center_dim=system.rank - len(pi0),
    )


def project_to_center(v: Sequence[Q], flag: FlagManifold) -> Vector:
    """Orthogonal projection onto the complement of span(pi0) in the weight space.

    On these realizations the Killing form on the Cartan subalgebra is a
    multiple of the standard dot product, so dot-orthogonality suffices.
    """
    v = tuple(Q(x) for x in v)
    if len(v) != flag.system.ambient_dim:
        raise DomainError("dimension mismatch")
    if not flag.in_weight_space(v):
        raise DomainError("vector is not in the weight space (type A coordinates must sum to 0)")
    gens = flag.pi0_roots
    if not gens:
        return v
    gram = [[dot(a, b) for b in gens] for a in gens]
    coeffs = linalg.solve(gram, [dot(a, v) for a in gens])
    out = v
    for c, a in zip(coeffs, gens):
        out = sub(out, tuple(c * x for x in a))
    return out


def t_root_decomposition(flag: FlagManifold) -> TRootDecomposition:
    system = flag.system
    groups: dict[Vector, list[Vector]] = {}
    for alpha in flag.r_m_plus:
        groups.setdefault(project_to_center(alpha, flag), []).append(alpha)
    classes = []
    for rho, members in groups.items():
        betas = {system.inner(a, flag.delta_m) for a in members}
        if len(betas) != 1:
            raise ConsistencyError(f"beta not constant on T-root class {rho}: {sorted(betas)}")
        beta = betas.pop()
        if beta <= 0:
            raise ConsistencyError(f"non-positive beta {beta} on T-root class {rho}")
        classes.append(TRootClass(rho, len(members), beta, tuple(members)))
    classes.sort(key=lambda c: (c.beta, c.rho))
    return TRootDecomposition(tuple(classes))


def closure_violations(flag: FlagManifold) -> list[tuple[Vector, Vector, Vector]]:
    """Pairs violating (R_h + R_m+) & R <= R_m+ or (R_m+ + R_m+) & R <= R_m+."""
    roots = set(flag.system.roots)
    m_plus = set(flag.r_m_plus)
    bad = []
    for a in flag.r_h + flag.r_m_plus:
        for b in flag.r_m_plus:
            s = add(a, b)
            if s in roots and s not in m_plus:
                bad.append((a, b, s))
    return bad


def check_flag_invariants(flag: FlagManifold) -> None:
    """Raise ConsistencyError if any structural invariant of ``flag`` fails."""
    system = flag.system
    h_set = set(flag.r_h)
    if any(tuple(-x for x in r) not in h_set for r in flag.r_h):
        raise ConsistencyError("R_h not closed under negation")
    if closure_violations(flag):
        raise ConsistencyError("invariant ordering closure fails")
    for beta in flag.r_h:
        if system.inner(flag.delta_m, beta) != 0:
            raise ConsistencyError("delta_m not orthogonal to R_h")
    for alpha in flag.r_m_plus:
        if system.inner(alpha, flag.delta_m) <= 0:
            raise ConsistencyError("delta_m not positive on R_m+")
    if sum(c.multiplicity for c in t_root_decomposition(flag)) != flag.dim_complex:
        raise ConsistencyError("T-root multiplicities do not add up to dim_C M")
    if is_zero(flag.delta_m):
        raise ConsistencyError("delta_m vanishes")


def su_3n_flag(n: int, form_scale=1) -> FlagManifold:
    """SU(3n)/S(U(n) x U(n) x U(n)) with the standard complex structure."""
    system = build_root_system("A", 3 * n, form_scale)
    pi0 = [i for i in range(1, 3 * n) if i not in (n, 2 * n)]
    return build_flag(system, pi0)
