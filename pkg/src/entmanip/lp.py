"""Self-contained dense simplex solver for small inequality-form LPs.

Solves  maximize c.x  subject to  B x <= q,  x >= 0  on dense tableaus with
Bland's anti-cycling pivot rule.  Instances here are tiny (tens of variables
at most), so the implementation favours determinism and auditability over
speed: plain Python lists, ``math.fsum`` for the dot products that matter,
and an exact-rational mode that reruns the identical pivot logic over
``fractions.Fraction`` so saturation identities can be certified without
floating-point doubt.

A brute-force vertex enumerator doubles as an independent oracle for small
instances, and :func:`verify_solution` recomputes feasibility and reduced
costs of a claimed optimum from its stated basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

PIVOT_TOL = 1e-11
ENUMERATION_LIMIT = 12
_MAX_PIVOTS_FACTOR = 64

__all__ = [
    "PIVOT_TOL",
    "ENUMERATION_LIMIT",
    "LpProblem",
    "LpSolution",
    "simplex_solve",
    "verify_solution",
    "enumerate_vertices",
    "constraint_residuals",
]


@dataclass(frozen=True)
class LpProblem:
    """maximize objective.x  s.t.  constraint_matrix x <= bounds, x >= 0.

    Entries may be floats or ``Fraction``s; dimensions are validated, the
    sign of the bounds is not (concentration instances always have
    nonnegative bounds, and the solver guards the rest).
    """

    objective: tuple
    constraint_matrix: tuple
    bounds: tuple

    def __post_init__(self):
        objective = tuple(self.objective)
        matrix = tuple(tuple(row) for row in self.constraint_matrix)
        bounds = tuple(self.bounds)
        if not objective:
            raise ValueError("objective must have at least one coefficient")
        if len(matrix) != len(bounds):
            raise ValueError("constraint matrix and bounds disagree on row count")
        for row in matrix:
            if len(row) != len(objective):
                raise ValueError("constraint row length must match variable count")
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "constraint_matrix", matrix)
        object.__setattr__(self, "bounds", bounds)

    @property
    def num_variables(self) -> int:
        return len(self.objective)

    @property
    def num_constraints(self) -> int:
        return len(self.bounds)


@dataclass(frozen=True)
class LpSolution:
    """Solver output: structural values, objective, basis and reduced costs.

    ``basis`` lists basic column indices over the extended variable order
    (structural columns first, then one slack per constraint).  For a
    maximization optimum every reduced cost (z_j - c_j) is nonnegative up to
    tolerance.  ``status`` is one of ``optimal``, ``unbounded``,
    ``infeasible``; only ``optimal`` solutions carry values.
    """

    values: tuple
    objective_value: object
    basis: tuple
    reduced_costs: tuple
    status: str

    def __post_init__(self):
        if self.status not in ("optimal", "unbounded", "infeasible"):
            raise ValueError(f"unknown status {self.status!r}")
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "basis", tuple(sorted(self.basis)))
        object.__setattr__(self, "reduced_costs", tuple(self.reduced_costs))


def _dot(a, b):
    if any(isinstance(x, Fraction) for x in a) or any(
        isinstance(x, Fraction) for x in b
    ):
        return sum(x * y for x, y in zip(a, b))
    return math.fsum(float(x) * float(y) for x, y in zip(a, b))


def constraint_residuals(prob: LpProblem, values) -> tuple:
    """Componentwise B.x - q; exact when problem and values are rational."""
    values = tuple(values)
    if len(values) != prob.num_variables:
        raise ValueError("value vector length must match variable count")
    return tuple(
        _dot(row, values) - q
        for row, q in zip(prob.constraint_matrix, prob.bounds)
    )


def _non_optimal(status: str) -> LpSolution:
    return LpSolution((), None, (), (), status)


def simplex_solve(
    prob: LpProblem, exact: bool = False, pivot_tol: float = PIVOT_TOL
) -> LpSolution:
    """Solve an inequality-form LP by the primal simplex method.

    Parameters
    ----------
    prob : LpProblem
        Maximization problem with x >= 0; slack variables are added
        internally, so nonnegative bounds give an immediate feasible basis.
    exact : bool
        Rerun the identical pivot logic over ``Fraction`` values (inputs
        are converted exactly); comparisons then use zero tolerance and the
        returned values are exact rationals.
    pivot_tol : float
        Pivot/optimality tolerance in float mode.

    Entering columns follow Bland's least-index rule and ratio ties leave
    the smallest basic index, so the result is deterministic and the method
    cannot cycle on degenerate vertices.  When alternative optima exist
    (zero objective weights make that routine here), a final sweep of
    zero-reduced-cost pivots moves residual slack into the lowest-indexed
    structural variables, so the returned vertex saturates as many
    constraints as the optimal face allows; the objective value is
    unaffected.  Bounds below ``-pivot_tol`` whose rows have nonnegative
    coefficients make the instance provably infeasible (x >= 0); other
    negative bounds are outside the supported form and raise
    ``ValueError``.
    """
    n, m = prob.num_variables, prob.num_constraints
    if exact:
        conv = lambda x: x if isinstance(x, Fraction) else Fraction(x)
        tol = 0
    else:
        conv = float
        tol = pivot_tol
    c = [conv(x) for x in prob.objective]
    rows = [[conv(x) for x in row] for row in prob.constraint_matrix]
    q = [conv(x) for x in prob.bounds]

    for l in range(m):
        if q[l] < -tol:
            if all(x >= 0 for x in rows[l]):
                return _non_optimal("infeasible")
            raise ValueError(
                "negative bound with mixed-sign row: instance is outside the "
                "supported inequality form"
            )

    zero, one = conv(0), conv(1)
    width = n + m + 1
    tableau = []
    for i in range(m):
        row = rows[i] + [zero] * m + [q[i]]
        row[n + i] = one
        tableau.append(row)
    zrow = [-x for x in c] + [zero] * m + [zero]
    basis = list(range(n, n + m))

    max_pivots = _MAX_PIVOTS_FACTOR * (n + m + 4)
    for _ in range(max_pivots):
        entering = next(
            (j for j in range(n + m) if zrow[j] < -tol), None
        )
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > tol:
                ratio = tableau[i][-1] / coeff
                key = (ratio, basis[i])
                if best is None or key < best:
                    best = key
                    leaving = i
        if leaving is None:
            return _non_optimal("unbounded")
        _pivot(tableau, zrow, leaving, entering, width)
        basis[leaving] = entering
    else:
        raise RuntimeError("simplex failed to terminate (pivot cap reached)")

    _absorb_slack(tableau, zrow, basis, n, m, width, tol)

    extended = [zero] * (n + m)
    for i in range(m):
        extended[basis[i]] = tableau[i][-1]
    values = tuple(extended[:n])
    objective = _dot(c, values)
    return LpSolution(values, objective, tuple(basis), tuple(zrow[:-1]), "optimal")


def _absorb_slack(tableau, zrow, basis, n, m, width, tol):
    """Exchange basic slack for zero-reduced-cost structural columns.

    Runs at a primal/dual optimal tableau.  Every executed pivot enters a
    nonbasic structural column whose reduced cost vanishes and evicts a
    slack, so it walks the optimal face without changing the objective and
    the structural count strictly grows (at most n pivots).  Needed so that
    degenerate objectives still return the constraint-saturating vertex.
    """
    in_basis = set(basis)
    changed = True
    while changed:
        changed = False
        for j in range(n):
            if j in in_basis or abs(zrow[j]) > tol:
                continue
            best = None
            leaving = None
            for i in range(m):
                coeff = tableau[i][j]
                if coeff > tol:
                    ratio = tableau[i][-1] / coeff
                    # prefer rows holding slack variables on ratio ties
                    key = (ratio, 0 if basis[i] >= n else 1, basis[i])
                    if best is None or key < best:
                        best = key
                        leaving = i
            if leaving is None or basis[leaving] < n:
                continue
            _pivot(tableau, zrow, leaving, j, width)
            in_basis.discard(basis[leaving])
            in_basis.add(j)
            basis[leaving] = j
            changed = True


def _pivot(tableau, zrow, leaving, entering, width):
    pivot = tableau[leaving][entering]
    prow = tableau[leaving]
    for k in range(width):
        prow[k] = prow[k] / pivot
    prow[entering] = type(pivot)(1) if not isinstance(pivot, float) else 1.0
    for row in tableau:
        if row is prow:
            continue
        factor = row[entering]
        if factor:
            for k in range(width):
                row[k] -= factor * prow[k]
            row[entering] = 0 if not isinstance(factor, float) else 0.0
    factor = zrow[entering]
    if factor:
        for k in range(width):
            zrow[k] -= factor * prow[k]
        zrow[entering] = 0 if not isinstance(factor, float) else 0.0


def _solve_square(matrix, rhs):
    """Gaussian elimination with partial pivoting; raises on singularity.

    Works for float and ``Fraction`` entries alike; for floats a pivot below
    1e-13 (relative to the largest remaining entry) counts as singular.
    """
    size = len(rhs)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    exact = any(isinstance(x, Fraction) for row in a for x in row)
    for col in range(size):
        pivot_row = max(range(col, size), key=lambda r: abs(a[r][col]))
        pivot = a[pivot_row][col]
        if exact:
            if pivot == 0:
                raise ZeroDivisionError("singular matrix")
        else:
            scale = max(abs(a[r][k]) for r in range(col, size) for k in range(size))
            if scale == 0 or abs(pivot) <= 1e-13 * max(scale, 1.0):
                raise ZeroDivisionError("singular matrix")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        prow = a[col]
        for r in range(size):
            if r == col:
                continue
            factor = a[r][col] / pivot
            if factor:
                for k in range(col, size + 1):
                    a[r][k] -= factor * prow[k]
    return [a[i][size] / a[i][i] for i in range(size)]


def _extended_column(prob: LpProblem, j: int) -> list:
    n, m = prob.num_variables, prob.num_constraints
    if j < n:
        return [prob.constraint_matrix[i][j] for i in range(m)]
    return [1 if i == j - n else 0 for i in range(m)]


def _extended_cost(prob: LpProblem, j: int):
    return prob.objective[j] if j < prob.num_variables else 0


def _basis_solution(prob: LpProblem, basis):
    """Basic solution (extended vector) for a basis; raises if singular."""
    m = prob.num_constraints
    columns = [_extended_column(prob, j) for j in basis]
    matrix = [[columns[k][i] for k in range(m)] for i in range(m)]
    basic_values = _solve_square(matrix, list(prob.bounds))
    extended = [0.0] * (prob.num_variables + m)
    for j, value in zip(basis, basic_values):
        extended[j] = value
    return extended


def _basis_reduced_costs(prob: LpProblem, basis):
    """Reduced costs z_j - c_j for every extended column, from the basis."""
    m = prob.num_constraints
    columns = [_extended_column(prob, j) for j in basis]
    # y solves  (A_B)^T y = c_B ; rows of the transposed system are the
    # basis columns themselves
    matrix = [list(col) for col in columns]
    rhs = [_extended_cost(prob, j) for j in basis]
    y = _solve_square(matrix, rhs)
    costs = []
    for j in range(prob.num_variables + m):
        col = _extended_column(prob, j)
        costs.append(_dot(y, col) - _extended_cost(prob, j))
    return costs


def verify_solution(prob: LpProblem, sol: LpSolution, tol: float = 1e-9) -> bool:
    """Independently check a claimed optimum against its stated basis.

    Recomputes the basic solution and reduced costs from ``sol.basis`` and
    verifies: claimed values are feasible, they agree with the basis
    solution, the objective matches, and every reduced cost satisfies the
    maximization sign condition.  A singular basis matrix fails the
    verification rather than raising.
    """
    if sol.status != "optimal":
        return False
    n, m = prob.num_variables, prob.num_constraints
    if len(sol.basis) != m or len(sol.values) != n:
        return False
    try:
        extended = _basis_solution(prob, sol.basis)
        reduced = _basis_reduced_costs(prob, sol.basis)
    except ZeroDivisionError:
        return False
    if any(x < -tol for x in extended):
        return False
    if any(abs(float(extended[j]) - float(sol.values[j])) > tol for j in range(n)):
        return False
    residuals = constraint_residuals(prob, sol.values)
    if any(r > tol for r in residuals):
        return False
    if any(v < -max(tol, 1e-12) for v in sol.values):
        return False
    if abs(float(_dot(prob.objective, sol.values)) - float(sol.objective_value)) > tol:
        return False
    return all(d >= -tol for d in reduced)


def enumerate_vertices(prob: LpProblem, tol: float = 1e-9) -> LpSolution:
    """Exact brute-force optimum over all basic feasible solutions.

    Intended as an independent oracle for tiny bounded instances (at most
    ``ENUMERATION_LIMIT`` total variables including slacks): every basis
    subset is solved directly and the best feasible vertex wins.  Raises
    ``ValueError`` above the size limit.
    """
    n, m = prob.num_variables, prob.num_constraints
    if n + m > ENUMERATION_LIMIT:
        raise ValueError(
            f"instance too large for vertex enumeration ({n + m} > "
            f"{ENUMERATION_LIMIT} variables)"
        )
    best = None
    best_basis = None
    best_values = None
    for basis in combinations(range(n + m), m):
        try:
            extended = _basis_solution(prob, basis)
        except ZeroDivisionError:
            continue
        if any(x < -tol for x in extended):
            continue
        objective = _dot(prob.objective, extended[:n])
        if best is None or objective > best:
            best = objective
            best_basis = basis
            best_values = tuple(extended[:n])
    if best is None:
        return _non_optimal("infeasible")
    try:
        reduced = tuple(_basis_reduced_costs(prob, best_basis))
    except ZeroDivisionError:
        reduced = ()  # near-singular winning basis; values still stand
    return LpSolution(best_values, best, best_basis, reduced, "optimal")
