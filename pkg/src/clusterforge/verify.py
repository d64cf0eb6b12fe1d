"""Cross-check battery shared by the CLI verify subcommand and the tests.

Every check compares two independent computations of the same object or
asserts a structural invariant that must hold for any framed quiver.
"""

from __future__ import annotations

from . import intmat
from .closedform import fpoly_formula, fpoly_product_form
from .cmatrix import check_sign_coherence, trace
from .errors import ConsistencyError
from .quiver import GeneralizedQuiver, degree_bounds, fpoly_recurrence
from .stabilization import deform, fundamentals, is_polynomial


def run_verification(q: GeneralizedQuiver, seq) -> dict[str, bool]:
    """Run all cross-method checks for one quiver and sequence."""
    seq = tuple(seq)
    n = len(seq)
    results: dict[str, bool] = {}

    try:
        tr = trace(q, seq)
        results["cmatrix product matches simulation"] = True
    except ConsistencyError:
        results["cmatrix product matches simulation"] = False
        return results

    report = check_sign_coherence(tr)
    results["sign coherence and unit determinants"] = report.ok

    results["step matrices are involutions"] = all(
        intmat.mat_mul(m, m) == intmat.identity(tr.v)
        for m in tr.a_steps + tr.e_steps + tr.estar_steps
    )

    results["symmetrizer preserved"] = all(
        all(
            q.d[i] * b[i][j] == -q.d[j] * b[j][i]
            for i in range(tr.v)
            for j in range(tr.v)
        )
        for b in tr.b_mats
    )

    fs = fpoly_recurrence(q, seq)
    f_n = fs[-1] if fs else None
    results["recurrence yields positive unit-constant polynomials"] = all(
        f.is_polynomial() and f.constant_term == 1
        and all(c > 0 for c in f.terms.values())
        for f in fs
    )

    formula = fpoly_formula(tr, n)
    product = fpoly_product_form(tr, n)
    if f_n is None:
        results["formula equals recurrence"] = formula == 1
        results["product form equals recurrence"] = product == 1
    else:
        results["formula equals recurrence"] = formula == f_n
        results["product form equals recurrence"] = product == f_n

    if f_n is not None:
        bound = degree_bounds(q, seq)
        results["support within degree bounds"] = all(
            all(e <= b for e, b in zip(exps, bound)) for exps in f_n.terms
        )

    if n and all(color == "green" for color in tr.colors):
        s_n = deform(f_n, tr.c_mats[n])
        results["green deformation is a polynomial"] = is_polynomial(s_n)[0]
        results["green r-monomials pairwise distinct"] = (
            len(set(tr.r_monomials)) == n
        )
        fset = fundamentals(tr, n)
        results["fundamental coefficient identity"] = all(
            e.coefficient_check is not False for e in fset.entries
        )

    return results
