"""Step matrices, C/D-matrix products, mutation colors, and pair coefficients.

The C-matrix after n steps is the product A_1*...*A_n of elementary step
matrices, each differing from the identity only in the row of the mutated
vertex; the D-matrix is the analogous product of E-kind matrices.  Colors
are read off the sign of the mutated column of the previous C-matrix, which
sign coherence keeps well-defined.  Every trace is cross-checked entrywise
against the direct frozen-arrow simulation from the quiver module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import intmat
from .errors import ConsistencyError, IndexOrder, SignCoherenceViolation
from .intmat import Matrix
from .quiver import FramedState, GeneralizedQuiver, mutate_b, mutate_c


def _step_matrix_from_b(b: Matrix, k: int, kind: str, variant: str) -> Matrix:
    """Elementary matrix for a mutation at 0-based vertex k on state b.

    E-kind counts arrows attached to the mutated vertex, A-kind arrows
    attached to the far endpoint; green uses the arrows opposing the frozen
    ones (outgoing), red the incoming ones.
    """
    n = len(b)
    if kind not in ("a", "e"):
        raise ValueError("kind must be 'a' or 'e'")
    if variant not in ("green", "red"):
        raise ValueError("variant must be 'green' or 'red'")
    row = []
    for u in range(n):
        if u == k:
            row.append(-1)
        elif kind == "e":
            row.append(max(b[k][u], 0) if variant == "green" else max(-b[k][u], 0))
        else:
            row.append(max(-b[u][k], 0) if variant == "green" else max(b[u][k], 0))
    return tuple(
        tuple(row[j] if i == k else int(i == j) for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True)
class StepMatrix:
    m: Matrix
    kind: str      # 'a' or 'e'
    variant: str   # 'green' or 'red'
    step: int      # 1-based step index
    vertex: int    # 1-based mutated vertex


def step_matrix(state: FramedState, vertex: int, kind: str, variant: str,
                step: int = 0) -> StepMatrix:
    """Step matrix for mutating `state` at a 1-based vertex."""
    v = state.quiver.v
    if not 1 <= vertex <= v:
        raise ValueError(f"vertex {vertex} out of range 1..{v}")
    m = _step_matrix_from_b(state.quiver.b, vertex - 1, kind, variant)
    return StepMatrix(m, kind, variant, step, vertex)


def _column_color(c: Matrix, k: int) -> str:
    col = [row[k] for row in c]
    if all(x >= 0 for x in col) and any(x > 0 for x in col):
        return "green"
    if all(x <= 0 for x in col) and any(x < 0 for x in col):
        return "red"
    raise SignCoherenceViolation(
        f"column {k + 1} is mixed-sign or zero: {col}; this indicates a bug"
    )


@dataclass(frozen=True)
class MutationTrace:
    """Per-step record of a framed mutation sequence.

    Index 0 of the matrix lists is the initial state; entry i corresponds to
    the framed quiver after i mutations.  All fields are immutable, so a
    trace can be queried concurrently.
    """

    quiver: GeneralizedQuiver
    seq: tuple[int, ...]
    b_mats: tuple[Matrix, ...]
    c_mats: tuple[Matrix, ...]
    d_mats: tuple[Matrix, ...]
    cinv_mats: tuple[Matrix, ...]
    dinv_mats: tuple[Matrix, ...]
    colors: tuple[str, ...]
    r_monomials: tuple[tuple[int, ...], ...]
    a_steps: tuple[Matrix, ...] = field(repr=False, default=())
    e_steps: tuple[Matrix, ...] = field(repr=False, default=())
    estar_steps: tuple[Matrix, ...] = field(repr=False, default=())

    @property
    def n(self) -> int:
        return len(self.seq)

    @property
    def v(self) -> int:
        return self.quiver.v

    def vertex(self, i: int) -> int:
        """1-based vertex mutated at step i (1-based)."""
        return self.seq[i - 1]

    def r(self, i: int) -> tuple[int, ...]:
        return self.r_monomials[i - 1]

    def color(self, i: int) -> str:
        return self.colors[i - 1]

    def delta(self, i: int, j: int) -> int:
        """+1 when steps i and j have the same color; step 0 counts red."""
        ci = "red" if i == 0 else self.color(i)
        cj = "red" if j == 0 else self.color(j)
        return 1 if ci == cj else -1


def trace(q: GeneralizedQuiver, seq) -> MutationTrace:
    """Run a mutation sequence, accumulating B, C, D and the r-monomials.

    The C-matrix is accumulated as a product of A-kind step matrices and,
    independently, by the direct frozen-arrow rule; the two must agree
    entrywise, otherwise a ConsistencyError is raised.
    """
    seq = tuple(int(k) for k in seq)
    v = q.v
    for k in seq:
        if not 1 <= k <= v:
            raise ValueError(f"vertex {k} out of range 1..{v}")
    b = q.b
    c = d = cinv = dinv = intmat.identity(v)
    c_sim = intmat.identity(v)
    b_mats, c_mats, d_mats = [b], [c], [d]
    cinv_mats, dinv_mats = [cinv], [dinv]
    colors: list[str] = []
    r_monomials: list[tuple[int, ...]] = []
    a_steps: list[Matrix] = []
    e_steps: list[Matrix] = []
    estar_steps: list[Matrix] = []

    for k in seq:
        kk = k - 1
        color = _column_color(c, kk)
        other = "red" if color == "green" else "green"
        a_i = _step_matrix_from_b(b, kk, "a", color)
        e_i = _step_matrix_from_b(b, kk, "e", color)
        estar_i = _step_matrix_from_b(b, kk, "e", other)
        c = intmat.mat_mul(c, a_i)
        d = intmat.mat_mul(d, e_i)
        cinv = intmat.mat_mul(a_i, cinv)
        dinv = intmat.mat_mul(e_i, dinv)
        c_sim = mutate_c(c_sim, b, kk)
        if c_sim != c:
            raise ConsistencyError(
                f"C-matrix product disagrees with the frozen-arrow simulation "
                f"at step {len(colors) + 1}"
            )
        b = mutate_b(b, kk)
        colors.append(color)
        r_monomials.append(tuple(abs(row[kk]) for row in c))
        b_mats.append(b)
        c_mats.append(c)
        d_mats.append(d)
        cinv_mats.append(cinv)
        dinv_mats.append(dinv)
        a_steps.append(a_i)
        e_steps.append(e_i)
        estar_steps.append(estar_i)

    return MutationTrace(
        quiver=q,
        seq=seq,
        b_mats=tuple(b_mats),
        c_mats=tuple(c_mats),
        d_mats=tuple(d_mats),
        cinv_mats=tuple(cinv_mats),
        dinv_mats=tuple(dinv_mats),
        colors=tuple(colors),
        r_monomials=tuple(r_monomials),
        a_steps=tuple(a_steps),
        e_steps=tuple(e_steps),
        estar_steps=tuple(estar_steps),
    )


def c_between(tr: MutationTrace, m: int, n: int, kind: str = "c") -> Matrix:
    """The between-step matrix C_m^{-1} C_n (or the D analogue).

    Valid for any 0 <= m, n <= len(trace); n < m is allowed and simply
    produces the inverse of the (n, m) matrix.
    """
    if not 0 <= m <= tr.n or not 0 <= n <= tr.n:
        raise ValueError("indices out of trace range")
    if kind == "c":
        return intmat.mat_mul(tr.cinv_mats[m], tr.c_mats[n])
    if kind == "d":
        return intmat.mat_mul(tr.dinv_mats[m], tr.d_mats[n])
    raise ValueError("kind must be 'c' or 'd'")


def coeff_a(tr: MutationTrace, i: int, j: int) -> int:
    """Pair coefficient a(i,j) = D_{i,j}^{-1}[v_j, v_i], for 1 <= i <= j."""
    if i > j:
        raise IndexOrder(f"need i <= j, got ({i}, {j})")
    if not 1 <= i or not j <= tr.n:
        raise ValueError("indices out of trace range")
    m = intmat.mat_mul(tr.dinv_mats[j], tr.d_mats[i])
    return m[tr.vertex(j) - 1][tr.vertex(i) - 1]


def coeff_b(tr: MutationTrace, i: int, j: int) -> int:
    """Pair coefficient b(i,j) = (E*_j E_j D_{i,j}^{-1})[v_j, v_i]; 0 when i=j."""
    if i > j:
        raise IndexOrder(f"need i <= j, got ({i}, {j})")
    if not 1 <= i or not j <= tr.n:
        raise ValueError("indices out of trace range")
    if i == j:
        return 0
    m = intmat.mat_mul(tr.dinv_mats[j], tr.d_mats[i])
    m = intmat.mat_mul(tr.e_steps[j - 1], m)
    m = intmat.mat_mul(tr.estar_steps[j - 1], m)
    return m[tr.vertex(j) - 1][tr.vertex(i) - 1]


@dataclass(frozen=True)
class SignCoherenceReport:
    ok: bool
    violations: tuple[str, ...]


def check_sign_coherence(tr: MutationTrace) -> SignCoherenceReport:
    """Verify uniform nonzero column signs and det = +-1 for every C_i."""
    violations = []
    for i, c in enumerate(tr.c_mats):
        for col in range(tr.v):
            entries = [row[col] for row in c]
            if not (all(x >= 0 for x in entries) or all(x <= 0 for x in entries)):
                violations.append(f"C_{i} column {col + 1} is mixed-sign")
            if all(x == 0 for x in entries):
                violations.append(f"C_{i} column {col + 1} is zero")
        if intmat.det(c) not in (1, -1):
            violations.append(f"det C_{i} is not a unit")
    return SignCoherenceReport(not violations, tuple(violations))
