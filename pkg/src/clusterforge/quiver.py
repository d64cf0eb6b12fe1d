"""Exchange-matrix quivers, framed mutation, and the F-polynomial recurrence.

Conventions.  The entry b[i][j] of a stored exchange matrix is the signed
number of edges attached to vertex i+1 running from i+1 to j+1 (negative
when they run inward).  For plain quivers this is the usual "positive entry
means arrows i -> j" matrix; the attachment reading only matters in the
skew-symmetrizable case.  The framed block c[i][j] counts arrows from the
frozen companion of vertex i+1 into base vertex j+1, attached to the base
vertex, so the initial framed state has c equal to the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import intmat
from .errors import InexactDivision, NotSkewSymmetrizable
from .intmat import Matrix
from .laurent import LaurentPolynomial, exact_divide


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class GeneralizedQuiver:
    """A skew-symmetrizable exchange matrix with its symmetrizer."""

    b: Matrix
    d: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.b)

    @property
    def is_skew_symmetric(self) -> bool:
        return self.b == intmat.neg(intmat.transpose(self.b))


def _find_symmetrizer(b: Matrix) -> tuple[int, ...]:
    """Positive integer d with diag(d)*b skew-symmetric, by ratio propagation."""
    n = len(b)
    weights: list[Fraction | None] = [None] * n
    for root in range(n):
        if weights[root] is not None:
            continue
        weights[root] = Fraction(1)
        stack = [root]
        component = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if b[i][j] == 0 and b[j][i] == 0:
                    continue
                if b[i][j] == 0 or b[j][i] == 0 or _sign(b[i][j]) == _sign(b[j][i]):
                    raise NotSkewSymmetrizable(
                        f"entries ({i + 1},{j + 1}) cannot be symmetrized"
                    )
                ratio = Fraction(-b[i][j], b[j][i])
                if weights[j] is None:
                    weights[j] = weights[i] * ratio
                    stack.append(j)
                    component.append(j)
                elif weights[j] != weights[i] * ratio:
                    raise NotSkewSymmetrizable("inconsistent ratios around a cycle")
        denom = lcm(*(weights[i].denominator for i in component))
        scaled = [int(weights[i] * denom) for i in component]
        shrink = gcd(*scaled)
        for i, value in zip(component, scaled):
            weights[i] = Fraction(value, shrink)
    d = tuple(int(w) for w in weights)
    _check_symmetrizer(b, d)
    return d


def _check_symmetrizer(b: Matrix, d) -> None:
    n = len(b)
    for i in range(n):
        for j in range(n):
            if d[i] * b[i][j] != -d[j] * b[j][i]:
                raise NotSkewSymmetrizable("diag(d)*b is not skew-symmetric")


def make_quiver(b, d=None) -> GeneralizedQuiver:
    """Validate an exchange matrix and compute (or check) its symmetrizer."""
    b = intmat.freeze(b)
    n = len(b)
    if any(len(row) != n for row in b):
        raise ValueError("exchange matrix must be square")
    if any(b[i][i] != 0 for i in range(n)):
        raise ValueError("exchange matrix must have zero diagonal")
    if d is not None:
        d = tuple(int(x) for x in d)
        if len(d) != n or any(x <= 0 for x in d):
            raise ValueError("symmetrizer must be a positive vector of length v")
        _check_symmetrizer(b, d)
    else:
        d = _find_symmetrizer(b)
    return GeneralizedQuiver(b, d)


def mutate_b(b: Matrix, k: int) -> Matrix:
    """Standard exchange-matrix mutation at 0-based vertex k."""
    n = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + _sign(b[i][k]) * max(b[i][k] * b[k][j], 0))
        out.append(tuple(row))
    return tuple(out)


def mutate_c(c: Matrix, b: Matrix, k: int) -> Matrix:
    """Frozen-arrow block update for a mutation at 0-based vertex k.

    This is the standard rule applied to the frozen rows of the extended
    matrix, written directly on c; it makes no use of sign coherence.
    """
    n = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == k:
                row.append(-c[i][j])
            else:
                row.append(c[i][j] + _sign(c[i][k]) * max(-c[i][k] * b[j][k], 0))
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class FramedState:
    """Immutable framed-quiver snapshot: exchange matrix, frozen block, labels."""

    quiver: GeneralizedQuiver
    c: Matrix
    labels: tuple[LaurentPolynomial, ...]


def framed_state(q: GeneralizedQuiver) -> FramedState:
    one = LaurentPolynomial.one(q.v)
    return FramedState(q, intmat.identity(q.v), (one,) * q.v)


def mutate(state: FramedState, k: int) -> FramedState:
    """Mutate a framed state at 1-based vertex k; pure, returns a new state.

    The label at k becomes (S1 + S2)/V_k where S1 collects the inward edges
    attached to k (base labels and frozen y-variables alike) and S2 the
    outward ones.  The division is exact by the Laurent phenomenon; an
    InexactDivision here means the implementation is broken.
    """
    q = state.quiver
    v = q.v
    if not 1 <= k <= v:
        raise ValueError(f"vertex {k} out of range 1..{v}")
    kk = k - 1
    b, c = q.b, state.c

    s_in = LaurentPolynomial.one(v)
    s_out = LaurentPolynomial.one(v)
    for j in range(v):
        if b[kk][j] > 0:
            s_out = s_out * state.labels[j] ** b[kk][j]
        elif b[kk][j] < 0:
            s_in = s_in * state.labels[j] ** (-b[kk][j])
    for i in range(v):
        if c[i][kk] > 0:
            s_in = s_in * LaurentPolynomial.variable(v, i + 1) ** c[i][kk]
        elif c[i][kk] < 0:
            s_out = s_out * LaurentPolynomial.variable(v, i + 1) ** (-c[i][kk])

    try:
        new_label = exact_divide(s_in + s_out, state.labels[kk])
    except InexactDivision as exc:
        raise InexactDivision(
            f"exchange at vertex {k} is not exact; this indicates a bug"
        ) from exc

    labels = list(state.labels)
    labels[kk] = new_label
    new_quiver = GeneralizedQuiver(mutate_b(b, kk), q.d)
    return FramedState(new_quiver, mutate_c(c, b, kk), tuple(labels))


def fpoly_recurrence(q: GeneralizedQuiver, seq) -> list[LaurentPolynomial]:
    """F-polynomials F_1..F_n along a mutation sequence (1-based vertices).

    F_i is the label at the vertex mutated at step i.  Each F_i is validated
    to be a genuine polynomial with positive coefficients and constant term 1.
    """
    state = framed_state(q)
    out = []
    for step, k in enumerate(seq, start=1):
        state = mutate(state, k)
        f = state.labels[k - 1]
        if not f.is_polynomial():
            raise InexactDivision(f"F_{step} has negative exponents")
        if f.constant_term != 1 or any(c <= 0 for c in f.terms.values()):
            raise InexactDivision(f"F_{step} is not a positive polynomial with unit constant")
        out.append(f)
    return out


def degree_bounds(q: GeneralizedQuiver, seq) -> tuple[int, ...]:
    """Componentwise exponent bound for F_n, via the recurrence in max-plus.

    Products become vector sums, sums componentwise maxima, and the exact
    division a vector subtraction.  Because F-polynomials have positive
    coefficients the result is the true componentwise degree vector.
    """
    from .cmatrix import trace  # deferred: cmatrix imports this module

    tr = trace(q, seq)
    return _degree_bounds_from_trace(tr, len(tuple(seq)))


def _degree_bounds_from_trace(tr, n: int) -> tuple[int, ...]:
    v = tr.v
    bounds = [(0,) * v for _ in range(v)]
    current = (0,) * v
    for step in range(1, n + 1):
        kk = tr.seq[step - 1] - 1
        b = tr.b_mats[step - 1]
        deg_in = [0] * v
        deg_out = [0] * v
        for j in range(v):
            if b[kk][j] > 0:
                deg_out = [x + b[kk][j] * y for x, y in zip(deg_out, bounds[j])]
            elif b[kk][j] < 0:
                deg_in = [x - b[kk][j] * y for x, y in zip(deg_in, bounds[j])]
        r_side = deg_in if tr.colors[step - 1] == "green" else deg_out
        for i in range(v):
            r_side[i] += tr.r_monomials[step - 1][i]
        new = tuple(
            max(a, b) - c for a, b, c in zip(deg_in, deg_out, bounds[kk])
        )
        bounds[kk] = new
        current = new
    return current
