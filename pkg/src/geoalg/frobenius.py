"""Stokes-matrix realization of the level-graded disc algebras.

A unipotent upper-triangular matrix S (a Stokes matrix) generates the
symmetric form G = S + S^T and the reflection matrices

    M_k = 1 - E_k G,       (E_k)_{ij} = delta_{ik} delta_{kj},

which realize the monodromies of an n-dimensional Fuchsian system.  The
product of a trailing run of reflections M_h = M_nt ... M_n plays the role
of the clashed-hole monodromy: it has a block structure with an identity
head and the tail -St^{-1} St^T built from the trailing principal Stokes
block St, and it intertwines G via G M_h = M_h^{-T} G.  The family

    G^{(k)} = G M_h^k

then carries the level-graded Poisson algebra of the disc with a marked
hole: for head indices i, j < nt the bracket of the invariant trace
functions n - 4 + (G^{(k)}_{i,j})^2, pushed through the chain rule to the
scalars G^{(k)}_{i,j}, equals 1/4 times the structure constants of the
level-graded algebra of rank nt - 1.  The 1/4 factor (in the bracket
normalization fixed by ks_calculus, the one that reproduces the disc
algebra exactly in the two-dimensional realization) is the single
cross-module normalization constant and is pinned here.

The module also builds Stokes matrices from the fat-graph geodesic
functions at special shear values, recovering the integer matrices
[[1,3,3],[0,1,3],[0,0,1]] and [[1,4,6,4],[0,1,4,6],[0,0,1,4],[0,0,0,1]].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .poly_core import Expr, Mat, E, ZERO, ONE, const, parse_gen
from .dn_algebra import dn_algebra, _pair_bracket
from .ks_calculus import ks_bracket_numeric
from .fatgraph import geodesic_function
from .braid import act_An, adjacent


# ---------------------------------------------------------------------------
# Stokes matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StokesMatrix:
    """Unipotent upper-triangular matrix with exact (or symbolic) entries."""

    mat: Mat

    def __post_init__(self):
        n, m = self.mat.shape
        if n != m:
            raise ValueError("square matrices only")
        for i in range(n):
            if self.mat[i, i] != ONE:
                raise ValueError("diagonal entries must be 1")
            for j in range(i):
                if not self.mat[i, j].is_zero():
                    raise ValueError("lower-triangular entries must vanish")

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    @staticmethod
    def from_rows(rows) -> "StokesMatrix":
        coerced = [[a if isinstance(a, Expr) else const(a) for a in row]
                   for row in rows]
        return StokesMatrix(Mat(coerced))

    @staticmethod
    def symbolic(n: int, prefix: str = "s") -> "StokesMatrix":
        rows = [[ONE if i == j else (E(f"{prefix}_{i + 1}_{j + 1}") if i < j
                                     else ZERO)
                 for j in range(n)] for i in range(n)]
        return StokesMatrix(Mat(rows))

    def symmetrization(self) -> Mat:
        """G = S + S^T, the symmetric form with diagonal 2."""
        return self.mat + self.mat.transpose()

    def trailing_block(self, nt: int) -> "StokesMatrix":
        """The principal block on rows/columns nt..n."""
        rows = [[self.mat[i, j] for j in range(nt - 1, self.n)]
                for i in range(nt - 1, self.n)]
        return StokesMatrix(Mat(rows))

    def inverse(self) -> Mat:
        """Exact inverse via the terminating geometric series of 1 - S."""
        n = self.n
        nil = Mat.identity(n) + self.mat.scale(const(-1))
        out = Mat.identity(n)
        power = Mat.identity(n)
        for _ in range(n - 1):
            power = power * nil
            out = out + power
        return out


def all_ones_stokes(m: int) -> StokesMatrix:
    return StokesMatrix.from_rows(
        [[1 if i <= j else 0 for j in range(m)] for i in range(m)])


def random_stokes(n: int, rng) -> StokesMatrix:
    """Random rational Stokes matrix with a nondegenerate symmetric form."""
    while True:
        rows = [[1 if i == j else
                 (Fraction(rng.randint(-9, 9), rng.randint(1, 7)) if i < j
                  else 0)
                 for j in range(n)] for i in range(n)]
        s = StokesMatrix.from_rows(rows)
        if not s.symmetrization().det().is_zero():
            return s


# ---------------------------------------------------------------------------
# monodromies and the clash block
# ---------------------------------------------------------------------------


def monodromy_from_stokes(s: StokesMatrix, k: int) -> Mat:
    """M_k = 1 - E_k (S + S^T); an involutive reflection (1-based k)."""
    n = s.n
    if not 1 <= k <= n:
        raise ValueError(f"index {k} out of range 1..{n}")
    g = s.symmetrization()
    rows = [[(ONE if i == j else ZERO) - (g[i, j] if i == k - 1 else ZERO)
             for j in range(n)] for i in range(n)]
    return Mat(rows)


def monodromies(s: StokesMatrix):
    return [monodromy_from_stokes(s, k) for k in range(1, s.n + 1)]


def reflection_check(s: StokesMatrix, k: int) -> bool:
    """M_k^2 = 1 exactly (the diagonal of G is 2)."""
    m = monodromy_from_stokes(s, k)
    return m * m == Mat.identity(s.n)


def product_identity(s: StokesMatrix) -> bool:
    """S M_1 M_2 ... M_n = -S^T."""
    prod = s.mat
    for m in monodromies(s):
        prod = prod * m
    return prod == s.mat.transpose().scale(const(-1))


def clash_monodromy(s: StokesMatrix, nt: int) -> Mat:
    """M_h = M_nt M_{nt+1} ... M_n."""
    out = Mat.identity(s.n)
    for k in range(nt, s.n + 1):
        out = out * monodromy_from_stokes(s, k)
    return out


def clash_monodromy_inverse(s: StokesMatrix, nt: int) -> Mat:
    """M_h^{-1} = M_n ... M_nt (each factor is an involution)."""
    out = Mat.identity(s.n)
    for k in range(s.n, nt - 1, -1):
        out = out * monodromy_from_stokes(s, k)
    return out


def tail_matrix(st: StokesMatrix) -> Mat:
    """-St^{-1} St^T for a trailing Stokes block St."""
    return (st.inverse() * st.mat.transpose()).scale(const(-1))


@dataclass(frozen=True)
class ClashReport:
    mh: Mat
    b_block: Mat
    tail: Mat
    head_identity_ok: bool
    zero_block_ok: bool
    tail_ok: bool
    intertwining_ok: bool

    @property
    def ok(self) -> bool:
        return (self.head_identity_ok and self.zero_block_ok
                and self.tail_ok and self.intertwining_ok)


def clash_block(s: StokesMatrix, nt: int) -> ClashReport:
    """Block structure of M_h: identity head, tail -St^{-1} St^T, and the
    intertwining G M_h = M_h^{-T} G."""
    n = s.n
    if not 1 <= nt <= n:
        raise ValueError(f"clash start {nt} out of range 1..{n}")
    mh = clash_monodromy(s, nt)
    h = nt - 1  # head size
    head_ok = all(mh[i, j] == (ONE if i == j else ZERO)
                  for i in range(h) for j in range(h))
    zero_ok = all(mh[i, j].is_zero() for i in range(h) for j in range(h, n))
    b_block = (Mat([[mh[i, j] for j in range(h)] for i in range(h, n)])
               if h else None)
    lower = Mat([[mh[i, j] for j in range(h, n)] for i in range(h, n)])
    tail = tail_matrix(s.trailing_block(nt))
    tail_ok = lower == tail
    g = s.symmetrization()
    mh_inv_t = clash_monodromy_inverse(s, nt).transpose()
    inter_ok = g * mh == mh_inv_t * g
    return ClashReport(mh, b_block, tail, head_ok, zero_ok, tail_ok, inter_ok)


# ---------------------------------------------------------------------------
# the level-graded generator family G^{(k)} = G M_h^k
# ---------------------------------------------------------------------------


def gk_family(s: StokesMatrix, nt: int, k: int) -> Mat:
    """G^{(k)} = G M_h^k; negative k uses the reversed reflection product."""
    g = s.symmetrization()
    step = clash_monodromy(s, nt) if k >= 0 else clash_monodromy_inverse(s, nt)
    out = g
    for _ in range(abs(k)):
        out = out * step
    return out


def gk_mirror_check(s: StokesMatrix, nt: int, k: int) -> bool:
    """G^{(-k)} = (G^{(k)})^T, the mirror rule of the level grading."""
    return gk_family(s, nt, -k) == gk_family(s, nt, k).transpose()


# ---------------------------------------------------------------------------
# level-p condition on the tail
# ---------------------------------------------------------------------------


def characteristic_polynomial(m: Mat, var: str = "eta") -> Expr:
    n = m.shape[0]
    eta = E(var)
    shifted = Mat([[m[i, j] - (eta if i == j else ZERO) for j in range(n)]
                   for i in range(n)])
    return shifted.det()


def level_p_condition(st: StokesMatrix, p: int, head: int = 2) -> dict:
    """Periodicity of the clash monodromy from its tail block.

    Checks (-St^{-1} St^T)^p = 1 and nondegeneracy of St + St^T; when both
    hold, the reflection product of ANY Stokes matrix with trailing block St
    has order p, which is certified on a symbolic head of the given size.
    """
    m = st.n
    tail = tail_matrix(st)
    power = Mat.identity(m)
    partial = Mat.zero(m)
    for _ in range(p):
        partial = partial + power
        power = power * tail
    report = {
        "tail_power_identity": power == Mat.identity(m),
        "nondegenerate": not st.symmetrization().det().is_zero(),
        "partial_sum_zero": partial == Mat.zero(m),
        "full_period": None,
    }
    if not (report["tail_power_identity"] and report["nondegenerate"]):
        return report
    # embed under a fully symbolic head: the conclusion must be identical in
    # the head entries, not an accident of special values
    n = head + m
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(ONE)
            elif i > j:
                row.append(ZERO)
            elif i < head:
                row.append(E(f"b_{i + 1}_{j + 1}"))
            else:
                row.append(st.mat[i - head, j - head])
        rows.append(row)
    full = StokesMatrix(Mat(rows))
    mh = clash_monodromy(full, head + 1)
    acc = Mat.identity(n)
    for _ in range(p):
        acc = acc * mh
    report["full_period"] = acc == Mat.identity(n)
    return report


def all_ones_report(m: int) -> dict:
    """Tail spectrum for the all-ones trailing block: the characteristic
    polynomial is (-1)^m (1 + eta + ... + eta^m) and the eigenvalues are the
    nontrivial (m+1)-st roots of unity."""
    st = all_ones_stokes(m)
    tail = tail_matrix(st)
    char = characteristic_polynomial(tail)
    expected = ZERO
    for i in range(m + 1):
        expected = expected + E("eta") ** i
    if m % 2:
        expected = -expected
    tail_num = np.array([[float(tail[i, j].as_rational()) for j in range(m)]
                         for i in range(m)])
    eigs = sorted(np.linalg.eigvals(tail_num.astype(complex)),
                  key=lambda z: np.angle(z))
    roots = sorted((np.exp(2j * np.pi * k / (m + 1)) for k in range(1, m + 1)),
                   key=np.angle)
    return {
        "char_poly_ok": char == expected,
        "eigenvalues_ok": max(abs(a - b) for a, b in zip(eigs, roots)) < 1e-9,
        "level_p": level_p_condition(st, m + 1),
    }


# ---------------------------------------------------------------------------
# numeric bracket realization
# ---------------------------------------------------------------------------


REALIZATION_FACTOR = Fraction(1, 4)


def _trace_scalar(i: int, j: int, k: int, nt: int):
    """Tr(M_i M_h^k M_j M_h^{-k}), an invariant equal to n-4+(G^{(k)}_ij)^2."""

    def f(mats):
        n = len(mats)
        mh = np.eye(n, dtype=complex)
        for r in range(nt - 1, n):
            mh = mh @ mats[r]
        return np.trace(mats[i - 1] @ np.linalg.matrix_power(mh, k)
                        @ mats[j - 1] @ np.linalg.matrix_power(mh, -k))

    return f


def _eval_generator_expr(e: Expr, values) -> float:
    total = 0.0
    for mono, coeff in e.terms():
        x = float(coeff)
        for name, power in mono:
            x *= float(values[parse_gen(name)]) ** power
        total += x
    return total


_PAIR_CACHE: dict = {}


def realization_check(s: StokesMatrix, rank: int, levels: int = 1,
                      tol: float = 1e-9, pairs=None) -> dict:
    """Brackets of G^{(k)}_{i,j} vs 1/4 x level-graded structure constants.

    The first *rank* indices survive as marked points; the trailing block
    of size n - rank is clashed into the hole (nt = rank + 1).  The left
    side differentiates the invariant trace functions numerically and
    divides out the chain-rule factor 2 G^{(k)}_{i,j} per slot; the right
    side evaluates the closed-form structure constants at the exact
    G^{(k)} values.
    """
    n = s.n
    if not 1 <= rank < n:
        raise ValueError("rank must leave a nonempty trailing block")
    nt = rank + 1
    alg = dn_algebra(rank)
    gens = [(i, j, 0) for i in range(1, rank + 1)
            for j in range(i + 1, rank + 1)]
    for k in range(1, levels + 1):
        gens += [(i, j, k) for i in range(1, rank + 1)
                 for j in range(1, rank + 1)]
    if pairs is None:
        pairs = [(a, b) for idx, a in enumerate(gens) for b in gens[idx:]]
    exact = {}
    for k in range(2 * levels + 1):
        gk = gk_family(s, nt, k)
        for i in range(1, rank + 1):
            for j in range(1, rank + 1):
                exact[(i, j, k)] = gk[i - 1, j - 1].as_rational()
    if any(v == 0 for v in exact.values()):
        raise ValueError("degenerate point: a generator value vanishes")
    mats = [np.array([[float(monodromy_from_stokes(s, k)[i, j].as_rational())
                       for j in range(n)] for i in range(n)])
            for k in range(1, n + 1)]
    factor = float(REALIZATION_FACTOR)
    worst = 0.0
    for a, b in pairs:
        key = (rank, a, b)
        if key not in _PAIR_CACHE:
            _PAIR_CACHE[key] = _pair_bracket(alg, a, b)
        rhs = factor * _eval_generator_expr(_PAIR_CACHE[key], exact)
        ga = float(exact[a if not (a[2] == 0 and a[0] > a[1])
                         else (a[1], a[0], 0)])
        gb = float(exact[b if not (b[2] == 0 and b[0] > b[1])
                         else (b[1], b[0], 0)])
        lhs = ks_bracket_numeric(_trace_scalar(*a, nt), _trace_scalar(*b, nt),
                                 mats) / (4 * ga * gb)
        worst = max(worst, abs(lhs - rhs))
    return {"pairs": len(pairs), "max_deviation": worst, "ok": worst < tol}


def realization_suite(trials: int, rank: int = 3, clash: int = 2,
                      levels: int = 1, tol: float = 1e-9,
                      seed: int = 0) -> dict:
    """Run realization_check at random rational points (resampling the rare
    degenerate draws) and aggregate the worst deviation."""
    import random

    rng = random.Random(seed)
    worst = 0.0
    done = 0
    while done < trials:
        s = random_stokes(rank + clash, rng)
        try:
            rep = realization_check(s, rank, levels=levels, tol=tol)
        except ValueError:
            continue
        worst = max(worst, rep["max_deviation"])
        done += 1
    return {"trials": done, "max_deviation": worst, "ok": worst < tol}


# ---------------------------------------------------------------------------
# Stokes matrices from shear coordinates
# ---------------------------------------------------------------------------


def teich_stokes(n: int, shears=None) -> StokesMatrix:
    """The unipotent matrix of geodesic functions, optionally at a point.

    *shears* binds the half-variables s1..sn, t1..t(n-3) (exponentials of
    half shear coordinates); unbound variables stay symbolic.
    """
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row.append(ONE)
            elif i < j:
                e = geodesic_function(n, i, j)
                if shears:
                    e = e.subst(shears)
                row.append(e)
            else:
                row.append(ZERO)
        rows.append(row)
    return StokesMatrix(Mat(rows))


def _fold_fourth_root(e: Expr, var: str, base: int) -> Expr:
    """Evaluate at var = base^{1/4}; only fourth powers may survive."""
    out = ZERO
    for k, coeff in e.coeffs_in(var).items():
        if k % 4:
            raise ValueError(f"stray power {k} of {var} at the special point")
        out = out + coeff * const(Fraction(base) ** (k // 4))
    return out


def a3_star() -> StokesMatrix:
    """All shear coordinates zero: every geodesic function equals 3."""
    point = {f"s{i}": ONE for i in range(1, 4)}
    return teich_stokes(3, point)


def a4_star() -> StokesMatrix:
    """Alternating half-log-2 shears, zero inner shear: rows 4, 6, 4.

    The half-variables are fourth roots of 2, handled exactly through a
    fresh symbol folded at the end.
    """
    q = E("qr")
    point = {"s1": q, "s2": q ** -1, "s3": q, "s4": q ** -1, "t1": ONE}
    raw = teich_stokes(4, point)
    folded = raw.mat.map(lambda e: _fold_fourth_root(e, "qr", 2))
    return StokesMatrix(folded)


def braid_orbit_monitor(s: StokesMatrix, words: int = 10, length: int = 6,
                        seed: int = 0) -> dict:
    """Track whether |G_{i,j}| > 2 persists along random braid words.

    Infinite braid orbits (hence non-algebraic isomonodromic flows) require
    every off-diagonal entry to stay outside [-2, 2]; this is a monitored
    property at a concrete point, not a proof.
    """
    import random

    rng = random.Random(seed)
    n = s.n
    start_ok = all(abs(s.mat[i, j].as_rational()) > 2
                   for i in range(n) for j in range(i + 1, n))
    all_ok = start_ok
    for _ in range(words):
        mat = s.mat
        for _ in range(length):
            mat = act_An(adjacent(rng.randint(1, n - 1),
                                  inverse=rng.random() < 0.5), mat)
        ok = all(abs(mat[i, j].as_rational()) > 2
                 for i in range(n) for j in range(i + 1, n))
        all_ok = all_ok and ok
    return {"start_ok": start_ok, "orbit_ok": all_ok}
