"""Fat graphs with pending edges and the geometry behind the A_n algebra.

The disc with n orbifold points is described by a caterpillar-shaped spine:
n-2 three-valent vertices in a row, pending edges Z_1 (left end), Z_2 ..
Z_{n-1} (hanging below vertices 1 .. n-2) and Z_n (right end), and inner
edges Y_1 .. Y_{n-3} joining consecutive vertices.  Each pending edge ends
at an orbifold (dot) vertex where a geodesic undergoes an inversion F.

Matrix conventions (SL(2) lifts):

    R = [[1,1],[-1,0]]   L = [[0,1],[-1,-1]]   F = [[0,1],[-1,0]]
    X_Z = [[0, -e^{Z/2}], [e^{-Z/2}, 0]]

with the shear exponentials carried by the half-variables s_i = e^{Z_i/2}
and t_j = e^{Y_j/2}, so every matrix entry is an exact Laurent polynomial.

The Poisson structure is the vertex-cyclic bracket on shear coordinates;
on the half-variables the chain rule gives d/dX = (u/2) u d/du with
u = e^{X/2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly_core import Expr, Mat, E, ZERO, ONE, const

HALF = Fraction(1, 2)

R_MAT = Mat([[1, 1], [-1, 0]])
L_MAT = Mat([[0, 1], [-1, -1]])
F_MAT = Mat([[0, 1], [-1, 0]])


def x_edge(var: str) -> Mat:
    """Edge matrix X for the edge whose half-variable is *var*."""
    u = E(var)
    return Mat([[ZERO, -u], [u ** -1, ZERO]])


def _letter_matrix(letter) -> Mat:
    if letter == "R":
        return R_MAT
    if letter == "L":
        return L_MAT
    if letter == "F":
        return F_MAT
    kind, var = letter
    assert kind == "X"
    return x_edge(var)


@dataclass(frozen=True)
class Mat2Word:
    """A word in {R, L, F, X(edge)} with an overall sign."""

    letters: tuple
    sign: int = 1

    def evaluate(self) -> Mat:
        m = Mat.identity(2)
        for letter in self.letters:
            m = m * _letter_matrix(letter)
        if self.sign < 0:
            m = -m
        return m

    def inverse(self) -> "Mat2Word":
        # Letterwise: X^-1 = -X, R^-1 = -L, L^-1 = -R, F^-1 = -F.
        inv = {"R": "L", "L": "R", "F": "F"}
        out = []
        sign = self.sign
        for letter in reversed(self.letters):
            if isinstance(letter, str):
                out.append(inv[letter])
            else:
                out.append(letter)
            sign = -sign
        return Mat2Word(tuple(out), sign)


@dataclass(frozen=True)
class FatGraph:
    """The canonical caterpillar spine for the disc with n orbifold points."""

    n: int
    # Each entry: the counterclockwise cyclic order of half-variables of the
    # edges incident to one 3-valent vertex.
    vertex_orders: tuple

    @property
    def pending_vars(self):
        return tuple(f"s{i}" for i in range(1, self.n + 1))

    @property
    def inner_vars(self):
        return tuple(f"t{j}" for j in range(1, self.n - 2))

    def edge_vars(self):
        return self.pending_vars + self.inner_vars


def canonical_disc_graph(n: int) -> FatGraph:
    """Caterpillar graph: n pending edges, n-3 inner edges, n-2 vertices."""
    if n < 3:
        raise ValueError("the disc graph needs at least 3 orbifold points")
    orders = []
    for v in range(1, n - 1):
        left = "s1" if v == 1 else f"t{v - 1}"
        down = f"s{v + 1}"
        right = f"s{n}" if v == n - 2 else f"t{v}"
        orders.append((left, down, right))
    return FatGraph(n, tuple(orders))


def basis_words(n: int):
    """The traceless generators gamma_1..gamma_n of the Fuchsian group.

    gamma_i travels from the base edge Z_1 along the spine to the i-th
    pending edge, turns around the dot (one inversion F) and travels back.
    Each word evaluates to a trace-zero SL(2) matrix.
    """
    if n < 3:
        raise ValueError("n >= 3 required")
    words = [Mat2Word(("F",))]
    for i in range(2, n + 1):
        out = [("X", "s1")]
        if i == 2:
            out += ["L", ("X", "s2")]
        elif i < n:
            for j in range(1, i - 1):
                out += ["R", ("X", f"t{j}")]
            out += ["L", ("X", f"s{i}")]
        else:
            for j in range(1, n - 2):
                out += ["R", ("X", f"t{j}")]
            out += ["R", ("X", f"s{n}")]
        ret = [("X", out[-1][1])]
        back = [l[1] for l in out[1:-1] if isinstance(l, tuple)]
        back = back[::-1]  # inner stops, innermost first on the way home
        # Around an intermediate dot the way home starts with an R turn;
        # after the far-end dot (i = n) every homeward turn is an L.
        turns = (["L"] if i == n else ["R"]) + ["L"] * len(back)
        for turn, var in zip(turns, back + ["s1"]):
            ret += [turn, ("X", var)]
        words.append(Mat2Word(tuple(out + ["F"] + ret), -1))
    return words


def geodesic_function(n: int, i: int, j: int) -> Expr:
    """G_{i,j} = -Tr(gamma_i gamma_j), a Laurent polynomial in s, t."""
    if not (1 <= i < j <= n):
        raise ValueError("need 1 <= i < j <= n")
    words = basis_words(n)
    return -(words[i - 1].evaluate() * words[j - 1].evaluate()).trace()


def _half_derivative(f: Expr, var: str) -> Expr:
    # d/dX in terms of u = e^{X/2}:  (u/2) df/du.
    return f.diff(var) * E(var) * const(HALF)


def goldman_bracket(f: Expr, g: Expr, graph: FatGraph) -> Expr:
    """The vertex-cyclic Poisson bracket on shear coordinates."""
    allowed = set(graph.edge_vars())
    foreign = (f.symbols() | g.symbols()) - allowed
    if foreign:
        raise ValueError(f"foreign variables {sorted(foreign)} for this graph")
    df = {v: _half_derivative(f, v) for v in allowed}
    dg = {v: _half_derivative(g, v) for v in allowed}
    out = ZERO
    for order in graph.vertex_orders:
        for a, b in zip(order, order[1:] + order[:1]):
            out = out + df[a] * dg[b] - dg[a] * df[b]
    return out


def perimeter_identity(n: int) -> bool:
    """Tr((gamma_1..gamma_n)^-1) = (-1)^{n-1} (e^{P/2} + e^{-P/2})."""
    words = basis_words(n)
    # Paths compose right to left: the matrix of gamma_1 ... gamma_n acts
    # with gamma_1 applied first.
    prod = Mat.identity(2)
    for w in reversed(words):
        prod = prod * w.evaluate()
    a, b = prod.rows[0]
    c, d = prod.rows[1]
    inv_trace = a + d  # adjugate of an SL(2) matrix has the same trace
    del b, c
    half_per = ONE
    for i in range(1, n + 1):
        half_per = half_per * E(f"s{i}", 2)
    for j in range(1, n - 2):
        half_per = half_per * E(f"t{j}", 2)
    rhs = half_per + half_per.inverse()
    if (n - 1) % 2 == 1:
        rhs = -rhs
    return inv_trace == rhs


def skein_check(a: Mat2Word, b: Mat2Word) -> bool:
    """Tr A Tr B = Tr(AB) + Tr(AB^-1), exactly on the evaluated matrices."""
    ma, mb = a.evaluate(), b.evaluate()
    mb_inv = b.inverse().evaluate()
    return ma.trace() * mb.trace() == (ma * mb).trace() + (ma * mb_inv).trace()


def _reduce_quadratic(e: Expr, var: str, csum: Expr) -> Expr:
    """Reduce var-exponents modulo var + var^-1 = csum (var^2 - csum*var + 1 = 0)."""
    v = E(var)
    v_inv_poly = csum - v  # var^-1 expressed polynomially
    out = ZERO
    for k, coeff in e.coeffs_in(var).items():
        if k >= 0:
            power = v ** 0
            base = v
            factor = base ** k
        else:
            factor = v_inv_poly ** (-k)
        out = out + coeff * factor
    # now polynomial in var with degree possibly > 1: reduce with v^2 = csum*v - 1
    while True:
        pieces = out.coeffs_in(var)
        top = max(pieces, default=0)
        if top <= 1:
            return out
        rewritten = ZERO
        for k, coeff in pieces.items():
            if k == top:
                rewritten = rewritten + coeff * (csum * v - ONE) * v ** (top - 2)
            else:
                rewritten = rewritten + coeff * v ** k
        out = rewritten


def clashed_hole_coords() -> bool:
    """The two-dot turnaround equals a single hole-edge turnaround.

    Checks X_Y R X_{Z2} F X_{Z2} R X_{Z1} F X_{Z1} R X_Y =
    X_{Yh} R X_{Zh} R X_{Yh} under the coordinate identifications
    Y + Z1 + Z2 = Yh + Zh/2 and e^{Zh/2} + e^{-Zh/2} = G_{12}-expression.
    """
    y, z1, z2 = E("y"), E("z1"), E("z2")
    lhs = (x_edge("y") * R_MAT * x_edge("z2") * F_MAT * x_edge("z2") * R_MAT
           * x_edge("z1") * F_MAT * x_edge("z1") * R_MAT * x_edge("y"))
    # Fresh quarter-variable q4 = e^{Zh/4}: zh = q4^2, yh = y z1 z2 / q4.
    yh = y * z1 * z2 * E("q4", -1)
    zh = E("q4", 2)
    xq = Mat([[ZERO, -yh], [yh ** -1, ZERO]])
    xz = Mat([[ZERO, -zh], [zh ** -1, ZERO]])
    rhs = xq * R_MAT * xz * R_MAT * xq
    csum = z1 ** 2 * z2 ** 2 + z1 ** -2 * z2 ** -2 + z1 ** 2 * z2 ** -2
    for p in range(2):
        for q in range(2):
            diff = lhs[p, q] - rhs[p, q]
            # entries depend on q4 only through even powers; fold q4^2 -> zh
            folded = ZERO
            for k, coeff in diff.coeffs_in("q4").items():
                if k % 2:
                    return False
                folded = folded + coeff * E("zh") ** (k // 2)
            if not _reduce_quadratic(folded, "zh", csum).is_zero():
                return False
    return True


def clashed_geodesic_function() -> Expr:
    """G_{n+1,n+2} in the clashed coordinates (the rel2 right-hand side)."""
    z1, z2 = E("z1"), E("z2")
    return z1 ** 2 * z2 ** 2 + z1 ** -2 * z2 ** -2 + z1 ** 2 * z2 ** -2
