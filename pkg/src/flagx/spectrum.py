"""Compact Lie algebras, invariant Kahler metrics and the Casimir on the torus.

The compact real form is realized by skew-Hermitian matrices inside the
classical complex algebra, using for each positive root a real root vector
E_a with E_{-a} = E_a^T.  The real basis is

    H_1..H_r  (torus),  then  X_a = E_a - E_a^T,  Y_a = i(E_a + E_a^T)

for a in R+ (sorted as in the root system).  With real weights a(H) one has
[H, X_a] = a(H) Y_a and [H, Y_a] = -a(H) X_a.  Complex matrices are stored
as real 2N x 2N integer blocks [[Re, -Im], [Im, Re]], so brackets, structure
constants and the Killing form are computed exactly.

Conventions: the complex structure is J X_a = Y_a, J Y_a = -X_a and the
metric attached to xi in the center is g(u, v) = B([xi, J u], v), which is
positive exactly when a(xi) > 0 for every a in R_m+.  The operator reported
on the torus is D = -sum_i ad(v_i)^2 for a g-orthonormal basis (v_i) of m;
the sign makes its spectrum nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache, reduce
from typing import Sequence

import numpy as np
import scipy.linalg

from . import linalg
from .flag import ConsistencyError, FlagManifold
from .roots import DomainError, RootSystem, Vector, build_root_system, dot


class ChamberError(DomainError):
    """xi is off the center or outside the open Weyl chamber."""


# --------------------------------------------------------------------------
# matrix realizations


def _defining_data(system: RootSystem):
    """Matrix size, torus diagonal map and real root vectors in g^C.

    Returns (N, diag, root_vectors) where ``diag(a)`` is the real diagonal of
    the complex Cartan element with weight coordinates ``a`` and
    ``root_vectors[alpha]`` is an integer N x N matrix.
    """
    fam, n = system.family, system.n

    def elem(N, entries):
        m = np.zeros((N, N), dtype=np.int64)
        for (p, q), v in entries.items():
            m[p, q] += v
        return m

    vectors: dict[Vector, np.ndarray] = {}
    if fam == "A":
        N = n

        def diag(a):
            return list(a)

        for alpha in system.positive_roots:
            i = alpha.index(1)
            j = alpha.index(-1)
            vectors[alpha] = elem(N, {(i, j): 1})
    elif fam in ("B", "D"):
        N = 2 * n + 1 if fam == "B" else 2 * n
        mid = n if fam == "B" else None

        def bar(p):
            return N - 1 - p

        def diag(a):
            d = list(a) + ([0] if fam == "B" else []) + [-x for x in reversed(a)]
            return d

        for alpha in system.positive_roots:
            nz = [k for k, x in enumerate(alpha) if x != 0]
            if len(nz) == 1:  # short root e_i of B_n
                i = nz[0]
                vectors[alpha] = elem(N, {(i, mid): 1, (mid, bar(i)): -1})
            else:
                i, j = nz
                q = j if alpha[j] < 0 else bar(j)
                vectors[alpha] = elem(N, {(i, q): 1, (bar(q), bar(i)): -1})
    elif fam == "C":
        N = 2 * n

        def diag(a):
            return list(a) + [-x for x in a]

        for alpha in system.positive_roots:
            nz = [k for k, x in enumerate(alpha) if x != 0]
            if len(nz) == 1:  # long root 2 e_i
                i = nz[0]
                vectors[alpha] = elem(N, {(i, n + i): 1})
            else:
                i, j = nz
                if alpha[j] < 0:
                    vectors[alpha] = elem(N, {(i, j): 1, (n + j, n + i): -1})
                else:
                    vectors[alpha] = elem(N, {(i, n + j): 1, (j, n + i): 1})
    else:  # pragma: no cover - guarded by build_root_system
        raise DomainError(f"unsupported family {fam}")
    return N, diag, vectors


def _exact_int(a: np.ndarray) -> np.ndarray:
    out = np.rint(a)
    if np.abs(a).max(initial=0) >= 2**52 or not np.array_equal(out, a):
        raise ConsistencyError("lost exactness in integer arithmetic")
    return out.astype(np.int64)


def _realify(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    return np.block([[re, -im], [im, re]])


def torus_ambient_basis(system: RootSystem) -> list[Vector]:
    """Weight coordinates of the torus generators H_1..H_r."""
    n = system.ambient_dim
    e = [tuple(Q(int(k == i)) for k in range(n)) for i in range(n)]
    if system.family == "A":
        return [tuple(x - y for x, y in zip(e[k], e[n - 1])) for k in range(n - 1)]
    return e


@dataclass(frozen=True, eq=False)
class AlgebraRealization:
    system: RootSystem
    labels: tuple[str, ...]
    torus: tuple[Vector, ...]
    pos_roots: tuple[Vector, ...]
    matrices: np.ndarray = field(repr=False)  # (d, 2N, 2N) realified integer matrices
    struct: np.ndarray = field(repr=False)  # (d, d, d) ints; [e_i, e_j] = sum_k struct[i,j,k]/denom e_k
    denom: int = 1
    killing_gram: tuple[tuple[Q, ...], ...] = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def rank(self) -> int:
        return len(self.torus)

    def x_index(self, alpha: Sequence[Q]) -> int:
        return self.rank + 2 * self.pos_roots.index(tuple(alpha))

    def y_index(self, alpha: Sequence[Q]) -> int:
        return self.x_index(alpha) + 1

    def structure_constant(self, i: int, j: int, k: int) -> Q:
        return Q(int(self.struct[i, j, k]), self.denom)

    def ad(self, i: int) -> np.ndarray:
        """ad(e_i) as an object array of Fractions (column j = [e_i, e_j])."""
        return _fractions(self.struct[i].T, self.denom)

    def ad_tensor(self) -> np.ndarray:
        """All ad(e_i), shape (d, d, d), exact.  Shared; do not mutate."""
        return _ad_tensor_cached(self.system.family, self.system.n)

    def ad_tensor_float(self) -> np.ndarray:
        return self.struct.transpose(0, 2, 1) / self.denom

    def killing(self) -> np.ndarray:
        return np.array(self.killing_gram, dtype=object)

    def trace_form(self) -> np.ndarray:
        """Tr(XY) on the defining (complex) matrices."""
        # Tr(R_X R_Y) = 2 Re Tr(XY), and Tr(XY) is real on skew-Hermitian matrices
        tr = np.einsum("iab,jba->ij", self.matrices, self.matrices)
        return _fractions(tr, 2)

    def bracket(self, u: Sequence, v: Sequence) -> np.ndarray:
        u = np.asarray(u, dtype=object)
        v = np.asarray(v, dtype=object)
        ad = self.ad_tensor()
        return np.einsum("i,ikj,j->k", u, ad, v)


def _fractions(a: np.ndarray, denom: int) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    flat_in = a.reshape(-1)
    flat_out = out.reshape(-1)
    for idx, x in enumerate(flat_in):
        flat_out[idx] = Q(int(x), denom)
    return out


@lru_cache(maxsize=32)
def _build_algebra_cached(family: str, n: int) -> AlgebraRealization:
    system = build_root_system(family, n)
    N, diag, vectors = _defining_data(system)
    zero = np.zeros((N, N), dtype=np.int64)
    mats = []
    labels = []
    torus = torus_ambient_basis(system)
    for k, h in enumerate(torus):
        d = diag(h)
        if any(Q(x).denominator != 1 for x in d):  # pragma: no cover
            raise ConsistencyError("non-integral torus generator")
        im = np.diag(np.array([int(x) for x in d], dtype=np.int64))
        mats.append(_realify(zero, im))
        labels.append(f"H{k + 1}")
    for idx, alpha in enumerate(system.positive_roots):
        e = vectors[alpha]
        mats.append(_realify(e - e.T, zero))
        mats.append(_realify(zero, e + e.T))
        labels.extend([f"X{idx + 1}", f"Y{idx + 1}"])
    mats = np.array(mats)
    d = len(mats)
    flat = mats.reshape(d, -1)

    gram = flat @ flat.T
    r = len(torus)
    off = gram.copy()
    off[:r, :r] = 0
    np.fill_diagonal(off, 0)
    if np.any(off):
        raise ConsistencyError("root vectors are not Frobenius-orthogonal")
    ginv = [[Q(0)] * d for _ in range(d)]
    tinv = linalg.inverse([[Q(int(x)) for x in row[:r]] for row in gram[:r]])
    for i in range(r):
        ginv[i][:r] = tinv[i]
    for i in range(r, d):
        ginv[i][i] = Q(1, int(gram[i, i]))
    denom = reduce(math.lcm, (x.denominator for row in ginv for x in row), 1)
    ginv_int = np.array([[int(x * denom) for x in row] for row in ginv], dtype=np.int64)

    # small integers throughout, so float64 BLAS products are exact; checked below
    mf = mats.astype(float)
    comm = np.matmul(mf[:, None], mf[None, :])
    comm = comm - comm.transpose(1, 0, 2, 3)
    proj = comm.reshape(d * d, -1) @ flat.T.astype(float)  # Frobenius products with the basis
    struct_f = proj @ ginv_int.T.astype(float)
    struct = _exact_int(struct_f).reshape(d, d, d)  # scaled by denom
    recon = struct.reshape(d * d, d).astype(float) @ flat.astype(float)
    if not np.array_equal(recon, denom * comm.reshape(d * d, -1)):
        raise ConsistencyError("basis does not close under the bracket")

    # Tr(ad_i ad_j) = sum_{k,l} struct[i,l,k] struct[j,k,l]
    sf = struct.astype(float)
    kl2 = _exact_int(sf.reshape(d, d * d) @ sf.transpose(0, 2, 1).reshape(d, d * d).T)
    killing = tuple(tuple(Q(int(x), denom * denom) for x in row) for row in kl2)
    return AlgebraRealization(
        system=system,
        labels=tuple(labels),
        torus=tuple(torus),
        pos_roots=system.positive_roots,
        matrices=mats,
        struct=struct,
        denom=int(denom),
        killing_gram=killing,
    )


@lru_cache(maxsize=32)
def _ad_tensor_cached(family: str, n: int) -> np.ndarray:
    alg = _build_algebra_cached(family, n)
    return _fractions(alg.struct.transpose(0, 2, 1), alg.denom)


def build_algebra(family: str, n: int) -> AlgebraRealization:
    """Compact real form of the classical algebra with parameter n (su(n), so(2n+1), ...)."""
    return _build_algebra_cached(str(family).upper(), int(n))


def is_ad_invariant(alg: AlgebraRealization) -> bool:
    """Exact check of B([Z,X],Y) + B(X,[Z,Y]) = 0 over all basis triples."""
    scale = alg.denom**2
    kk = np.array([[int(x * scale) for x in row] for row in alg.killing_gram], dtype=np.int64)
    for z in range(alg.dim):
        ad = alg.struct[z].T
        if np.any(ad.T @ kk + kk @ ad):
            return False
    return True


# --------------------------------------------------------------------------
# exact rational matrices as (integer array, common denominator)


def _ratmat(values) -> tuple[np.ndarray, int]:
    arr = np.asarray(values, dtype=object)
    den = reduce(math.lcm, (Q(x).denominator for x in arr.reshape(-1)), 1)
    ints = np.empty(arr.shape, dtype=object)
    ints.reshape(-1)[:] = [int(Q(x) * den) for x in arr.reshape(-1)]
    return ints, den


def _int_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product; int64 when no overflow is possible."""
    amax = int(np.abs(a).max(initial=0))
    bmax = int(np.abs(b).max(initial=0))
    if amax * bmax * max(a.shape[-1], 1) < 2**62:
        return a.astype(np.int64).dot(b.astype(np.int64)).astype(object)
    return a.astype(object).dot(b.astype(object))


def _unrat(ints: np.ndarray, den: int) -> np.ndarray:
    out = np.empty(ints.shape, dtype=object)
    out.reshape(-1)[:] = [Q(int(x), den) for x in ints.reshape(-1)]
    return out


# --------------------------------------------------------------------------
# invariant metrics


def _exact(values) -> bool:
    return all(isinstance(x, (Q, int)) for x in values)


@dataclass(frozen=True, eq=False)
class MetricParameter:
    """xi = sum_k coords[k] H_k, an element of the center of h."""

    flag: FlagManifold
    coords: tuple

    @property
    def exact(self) -> bool:
        return _exact(self.coords)

    @property
    def ambient(self) -> tuple:
        torus = torus_ambient_basis(self.flag.system)
        zero = Q(0) if self.exact else 0.0
        return tuple(
            sum((c * h[i] for c, h in zip(self.coords, torus)), zero)
            for i in range(self.flag.system.ambient_dim)
        )

    def root_value(self, alpha: Sequence[Q]):
        """alpha(xi) as a real weight."""
        a = self.ambient
        if self.exact:
            return dot(alpha, a)
        return float(sum(float(x) * y for x, y in zip(alpha, a)))


# relative tolerance for the center condition when xi is given in floats
_FLOAT_CENTER_TOL = 1e-12


def metric_parameter(flag: FlagManifold, coords: Sequence, check: bool = True) -> MetricParameter:
    """Wrap torus coordinates, validating center and chamber membership."""
    if len(coords) != flag.system.rank:
        raise DomainError(f"xi needs {flag.system.rank} coordinates, got {len(coords)}")
    if _exact(coords):
        coords = tuple(Q(c) for c in coords)
    else:
        coords = tuple(float(c) for c in coords)
    xi = MetricParameter(flag, coords)
    if check:
        _check_chamber(xi)
    return xi


def _check_chamber(xi: MetricParameter) -> None:
    flag = xi.flag
    values = [xi.root_value(a) for a in flag.r_m_plus]
    if xi.exact:
        off_center = any(xi.root_value(b) != 0 for b in flag.r_h)
    else:
        size = max(abs(v) for v in values) or 1.0
        off_center = any(abs(xi.root_value(b)) > _FLOAT_CENTER_TOL * size for b in flag.r_h)
    if off_center:
        raise ChamberError("xi is not in the center of h (some root of h is nonzero on it)")
    if any(v <= 0 for v in values):
        raise ChamberError("xi is outside the open Weyl chamber (metric not positive definite)")


def _killing_torus(alg: AlgebraRealization) -> list[list[Q]]:
    r = alg.rank
    return [list(row[:r]) for row in alg.killing_gram[:r]]


def ke_parameter(flag: FlagManifold) -> MetricParameter:
    """The element whose Killing dual is delta_m (the Kahler-Einstein metric)."""
    alg = build_algebra(flag.system.family, flag.system.n)
    neg_k = [[-x for x in row] for row in _killing_torus(alg)]
    rhs = [dot(flag.delta_m, h) for h in alg.torus]
    return metric_parameter(flag, linalg.solve(neg_k, rhs))


def _as_array(values, exact: bool) -> np.ndarray:
    if exact:
        return np.array(values, dtype=object)
    return np.array([[float(x) for x in row] for row in values], dtype=float)


def m_indices(flag: FlagManifold) -> list[int]:
    alg = build_algebra(flag.system.family, flag.system.n)
    out = []
    for alpha in flag.r_m_plus:
        out.extend([alg.x_index(alpha), alg.y_index(alpha)])
    return out


def _partner(alg: AlgebraRealization, flag: FlagManifold) -> tuple[list[int], list[int], list[int]]:
    """m indices, the index of J e_a for each, and the sign of J e_a."""
    idx, jidx, sign = [], [], []
    for alpha in flag.r_m_plus:
        x, y = alg.x_index(alpha), alg.y_index(alpha)
        idx += [x, y]
        jidx += [y, x]
        sign += [1, -1]
    return idx, jidx, sign


def metric_gram(flag: FlagManifold, xi: MetricParameter, check: bool = True) -> np.ndarray:
    """Gram matrix of g_xi on the basis X_a, Y_a (a in R_m+) of m."""
    if check:
        _check_chamber(xi)
    alg = build_algebra(flag.system.family, flag.system.n)
    idx, jidx, sign = _partner(alg, flag)
    r = alg.rank
    # g(e_a, e_b) = B([xi, J e_a], e_b) = sign_a * (K ad_xi)[b, J(a)]
    if xi.exact:
        c, lc = _ratmat(xi.coords)
        ad_xi = sum(int(c[k]) * alg.struct[k].T.astype(object) for k in range(r))
        kill, lk = _ratmat(alg.killing_gram)
        prod = _int_dot(kill[idx, :], ad_xi[:, jidx]) * np.array(sign, dtype=object)
        gram = _unrat(prod.T, lc * alg.denom * lk)
        if any(gram[i, j] != gram[j, i] for i in range(len(idx)) for j in range(i)):
            raise ConsistencyError("metric Gram matrix is not symmetric")
    else:
        ad = alg.ad_tensor_float()
        ad_xi = sum(c * ad[k] for k, c in enumerate(xi.coords))
        kill = np.array([[float(x) for x in row] for row in alg.killing_gram])
        gram = (kill[idx, :].dot(ad_xi[:, jidx]) * np.array(sign, dtype=float)).T
        if not np.allclose(gram, gram.T, atol=1e-12 * max(1.0, np.abs(gram).max())):
            raise ConsistencyError("metric Gram matrix is not symmetric")
    if check and not is_positive_definite(gram, xi.exact):
        raise ChamberError("metric is not positive definite")
    return gram


def is_positive_definite(gram: np.ndarray, exact: bool) -> bool:
    if exact:
        return linalg.is_positive_definite([list(row) for row in gram])
    try:
        np.linalg.cholesky(np.asarray(gram, dtype=float))
    except np.linalg.LinAlgError:
        return False
    return True


def volume_ratio(flag: FlagManifold, xi: MetricParameter):
    """prod a(xi) / prod a(xi_KE) over R_m+; equals 1 at the Kahler-Einstein point."""
    _check_chamber(xi)
    ke = ke_parameter(flag)
    num = reduce(lambda p, a: p * xi.root_value(a), flag.r_m_plus, Q(1) if xi.exact else 1.0)
    den = reduce(lambda p, a: p * ke.root_value(a), flag.r_m_plus, Q(1))
    return num / den if xi.exact else num / float(den)


# --------------------------------------------------------------------------
# Casimir of the adjoint representation on the torus


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    d_matrix: np.ndarray  # (rank, rank), column k = D(H_k) in torus coordinates
    eigenvalues: tuple[float, ...]
    charpoly: tuple  # det(x I - D), highest degree first
    exact: bool
    center_matrix: np.ndarray  # D restricted to the center, in center_basis coordinates
    center_eigenvalues: tuple[float, ...]

    @property
    def lambda1_candidate(self) -> float:
        """Smallest eigenvalue on the center.

        It is an eigenvalue of the Laplacian (an upper bound for lambda_1),
        not necessarily lambda_1 itself.  For full flags the center is the
        whole torus.
        """
        return self.center_eigenvalues[0]

    def charpoly_at(self, x):
        return linalg.polyval(self.charpoly, Q(x) if self.exact else float(x))

    def has_eigenvalue(self, x, rel_tol: float = 1e-9) -> bool:
        """Exact test when rational, else |p(x)| <= rel_tol * ||p||."""
        value = self.charpoly_at(x)
        if self.exact:
            return value == 0
        norm = float(np.linalg.norm(np.array(self.charpoly, dtype=float)))
        return abs(value) <= rel_tol * norm


def casimir_columns(
    flag: FlagManifold, xi: MetricParameter, columns: Sequence[int], gram: np.ndarray | None = None
) -> np.ndarray:
    """Columns of -sum_ij G^{ij} ad(e_i) ad(e_j), summed over the m-basis.

    G^{ij} is the inverse metric Gram matrix, so the operator equals
    -sum ad(v)^2 over any g-orthonormal basis v of m; no square roots needed.
    """
    alg = build_algebra(flag.system.family, flag.system.n)
    if gram is None:
        gram = metric_gram(flag, xi)
    idx = m_indices(flag)
    cols = list(columns)
    if not xi.exact:
        ad = alg.ad_tensor_float()
        ginv = np.linalg.inv(np.asarray(gram, dtype=float))
        first = np.stack([ad[i][:, cols] for i in idx])
        acc = np.einsum("ab,bkc->akc", ginv, first)
        return -np.einsum("aik,akc->ic", ad[idx], acc)
    ginv = _inverse_exact(gram)
    gi, lg = _ratmat(ginv)
    ad_int = alg.struct.transpose(0, 2, 1).astype(object)  # scaled by denom
    out = np.zeros((alg.dim, len(cols)), dtype=object)
    for a, i in enumerate(idx):
        acc = np.zeros((alg.dim, len(cols)), dtype=object)
        for b, k in enumerate(idx):
            if gi[a, b] != 0:
                acc = acc + int(gi[a, b]) * ad_int[k][:, cols]
        if any(x != 0 for x in acc.reshape(-1)):
            out = out + _int_dot(ad_int[i], acc)
    return _unrat(-out, lg * alg.denom**2)


def _inverse_exact(gram: np.ndarray) -> np.ndarray:
    n = gram.shape[0]
    if all(gram[i, j] == 0 for i in range(n) for j in range(n) if i != j):
        out = np.zeros((n, n), dtype=object) + Q(0)
        for i in range(n):
            out[i, i] = 1 / Q(gram[i, i])
        return out
    return np.array(linalg.inverse([list(r) for r in gram]), dtype=object)


def center_basis(flag: FlagManifold) -> list[list[Q]]:
    """Torus coordinates of a basis of the center c (roots of h vanish on it)."""
    alg = build_algebra(flag.system.family, flag.system.n)
    r = alg.rank
    rows = [[dot(a, h) for h in alg.torus] for a in flag.pi0_roots]
    if not rows:
        return [[Q(int(i == k)) for i in range(r)] for k in range(r)]
    red, pivots = linalg.rref(rows)
    free = [c for c in range(r) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * r
        v[f] = Q(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def _generalized_eigs(sym: np.ndarray, metric: np.ndarray) -> tuple[float, ...]:
    sym = np.asarray(sym, dtype=float)
    sym = (sym + sym.T) / 2
    eig = scipy.linalg.eigh(sym, np.asarray(metric, dtype=float), eigvals_only=True)
    return tuple(float(x) for x in sorted(eig))


def casimir_on_torus(flag: FlagManifold, xi: MetricParameter) -> SpectrumReport:
    _check_chamber(xi)
    alg = build_algebra(flag.system.family, flag.system.n)
    r = alg.rank
    exact = xi.exact
    block = casimir_columns(flag, xi, range(r))
    leak = block[r:, :]
    if exact:
        if any(x != 0 for x in leak.reshape(-1)):
            raise ConsistencyError("Casimir does not preserve the torus")
    elif np.abs(leak).max(initial=0.0) > 1e-9 * max(1.0, float(np.abs(block).max())):
        raise ConsistencyError("Casimir does not preserve the torus")
    d = block[:r, :]
    neg_k = -_as_array(_killing_torus(alg), exact)
    # D is self-adjoint for -B: solve (-K D) v = lam (-K) v
    eig = _generalized_eigs(neg_k.dot(d), neg_k)

    # restriction to the center c, the H-fixed part of the torus
    cb = _as_array(center_basis(flag), exact).T  # (r, dim c)
    gram_c = cb.T.dot(neg_k).dot(cb)
    proj = cb.T.dot(neg_k).dot(d).dot(cb)
    if exact:
        d_center = np.array(linalg.matmul(linalg.inverse([list(x) for x in gram_c]), [list(x) for x in proj]), dtype=object)
        if any(x != 0 for x in (d.dot(cb) - cb.dot(d_center)).reshape(-1)):
            raise ConsistencyError("Casimir does not preserve the center")
        cp = tuple(linalg.charpoly([list(row) for row in d]))
    else:
        d_center = np.linalg.solve(np.asarray(gram_c, float), np.asarray(proj, float))
        cp = tuple(float(c) for c in np.poly(np.asarray(d, dtype=float)))
    center_eig = _generalized_eigs(proj, gram_c)
    return SpectrumReport(d, eig, cp, exact, d_center, center_eig)
