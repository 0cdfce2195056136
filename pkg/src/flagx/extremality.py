"""Criticality of the Kahler-Einstein metric for the first-eigenvalue functional.

The test is the vector identity

    sum_j (mu / beta_j - 1) * m_j * rho_j = 0,    mu = ||delta_m||^2 / dim_C M,

over the positive T-root classes (rho_j, m_j, beta_j) of the flag.  It only
carries information when the center of h has dimension at least two; for
``center_dim < 2`` the verdict is NOT_APPLICABLE.

All verdicts are exact and assume that G is (locally) the full isometry
group of the Kahler-Einstein metric; exceptions to that are not detected.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Sequence

from .flag import FlagManifold, TRootDecomposition, build_flag, t_root_decomposition
from .roots import MIN_N, DomainError, Vector, build_root_system, is_zero, n_for_rank

ISOMETRY_CAVEAT = (
    "assumes G is locally the full isometry group of the Kahler-Einstein metric"
)


class Verdict(str, enum.Enum):
    EXTREMAL = "EXTREMAL"
    NOT_EXTREMAL = "NOT_EXTREMAL"
    NOT_APPLICABLE = "NOT_APPLICABLE"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ExtremalityReport:
    mu: Q
    residual: Vector
    verdict: Verdict
    center_dim: int
    decomposition: TRootDecomposition
    caveat: str = ISOMETRY_CAVEAT


def mu(flag: FlagManifold) -> Q:
    return flag.system.inner(flag.delta_m, flag.delta_m) / flag.dim_complex


def check_extremality(flag: FlagManifold) -> ExtremalityReport:
    decomposition = t_root_decomposition(flag)
    m = mu(flag)
    residual = tuple(Q(0) for _ in range(flag.system.ambient_dim))
    for cls in decomposition:
        c = (m / cls.beta - 1) * cls.multiplicity
        residual = tuple(r + c * x for r, x in zip(residual, cls.rho))
    if flag.center_dim < 2:
        verdict = Verdict.NOT_APPLICABLE
    elif is_zero(residual):
        verdict = Verdict.EXTREMAL
    else:
        verdict = Verdict.NOT_EXTREMAL
    return ExtremalityReport(m, residual, verdict, flag.center_dim, decomposition)


def pairing_sum(flag: FlagManifold, simple_index: int) -> Q:
    """sum over R+ of <alpha, s> / <alpha, delta> for the simple root s (full flags)."""
    if not flag.is_full:
        raise DomainError("the scalar pairing reduction is only defined for full flags")
    system = flag.system
    if not 1 <= simple_index <= system.rank:
        raise DomainError(f"simple index {simple_index} out of range 1..{system.rank}")
    s = system.simple_roots[simple_index - 1]
    total = Q(0)
    for alpha in system.positive_roots:
        num = system.inner(alpha, s)
        if num:
            total += num / system.inner(alpha, flag.delta_m)
    return total


def pairing_residual(flag: FlagManifold, simple_index: int) -> Q:
    """mu * pairing_sum - ||s||^2; vanishes whenever the metric is extremal."""
    total = pairing_sum(flag, simple_index)
    s = flag.system.simple_roots[simple_index - 1]
    return mu(flag) * total - flag.system.inner(s, s)


def check_product(flags: Sequence[FlagManifold]) -> Verdict:
    """Verdict for the product of the given irreducible factors.

    A factor with one-dimensional center has an identically zero residual and
    constrains nothing, so it counts as compatible inside a product.
    """
    if not flags:
        raise DomainError("check_product needs at least one factor")
    reports = [check_extremality(f) for f in flags]
    if len(reports) == 1:
        return reports[0].verdict
    if all(is_zero(r.residual) for r in reports):
        return Verdict.EXTREMAL
    return Verdict.NOT_EXTREMAL


# survey defaults, in Lie rank
SURVEY_MIN_RANK = {"A": 2, "B": 2, "C": 3, "D": 3}
SURVEY_MAX_RANK = {"A": 9, "B": 8, "C": 8, "D": 8}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("FLAGX_THREADS", "") or os.cpu_count() or 1))
    except ValueError:
        return 1


def _survey_one(family: str, rank: int, form_scale) -> tuple[str, int, ExtremalityReport]:
    system = build_root_system(family, n_for_rank(family, rank), form_scale)
    return family, rank, check_extremality(build_flag(system, ()))


def survey_full_flags(
    families: Iterable[str],
    max_rank: int | None = None,
    min_rank: int | None = None,
    form_scale=1,
) -> list[tuple[str, int, ExtremalityReport]]:
    """One report per (family, Lie rank), families in A, B, C, D order."""
    fams = sorted({f.upper() for f in families})
    if not fams:
        raise DomainError("empty family set")
    jobs = []
    for fam in fams:
        if fam not in SURVEY_MIN_RANK:
            raise DomainError(f"unsupported family {fam!r}")
        lo = SURVEY_MIN_RANK[fam] if min_rank is None else max(min_rank, 1)
        # smallest Lie rank the family admits
        lo = max(lo, MIN_N[fam] - 1 if fam == "A" else MIN_N[fam])
        hi = SURVEY_MAX_RANK[fam] if max_rank is None else max_rank
        jobs.extend((fam, r) for r in range(lo, hi + 1))
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(lambda job: _survey_one(*job, form_scale), jobs))
