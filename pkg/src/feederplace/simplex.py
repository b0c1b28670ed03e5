"""Exact linear programming over rationals.

Small dense two-phase simplex with Bland's rule, everything in Fraction
arithmetic.  Problem sizes here are tiny (tens of variables), so clarity and
exactness win over speed: verdicts must not depend on floating-point
tolerances.
"""

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    pivot_row = tableau[row]
    for r, current in enumerate(tableau):
        if r == row:
            continue
        factor = current[col]
        if factor:
            tableau[r] = [a - factor * b for a, b in zip(current, pivot_row)]
    basis[row] = col


def _optimize(tableau: list[list[Fraction]], basis: list[int], n_cols: int) -> bool:
    """Run simplex iterations until optimal; returns False when unbounded.

    The last tableau row holds reduced costs for a maximization; Bland's rule
    (lowest eligible index) guarantees termination without cycling.
    """
    m = len(tableau) - 1
    while True:
        obj = tableau[-1]
        col = next((j for j in range(n_cols) if obj[j] < 0), None)
        if col is None:
            return True
        best_row, best_ratio = None, None
        for r in range(m):
            coeff = tableau[r][col]
            if coeff > 0:
                ratio = tableau[r][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[best_row])
                ):
                    best_row, best_ratio = r, ratio
        if best_row is None:
            return False
        _pivot(tableau, basis, best_row, col)


def solve_equality_lp(
    matrix: list[list[Fraction]], rhs: list[Fraction], objective: list[Fraction]
) -> tuple[str, list[Fraction] | None, Fraction | None]:
    """Maximize objective . x subject to matrix @ x == rhs, x >= 0.

    Returns (status, x, value); status is 'optimal', 'infeasible' or 'unbounded'.
    """
    m, n = len(matrix), len(objective)
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in matrix[i]]
        b = Fraction(rhs[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row + [b])

    # Phase 1: artificial basis, drive the infeasibility measure to zero.
    tableau = []
    for i in range(m):
        art = [_ZERO] * m
        art[i] = _ONE
        tableau.append(rows[i][:n] + art + [rows[i][n]])
    basis = [n + i for i in range(m)]
    tableau.append([_ZERO] * n + [_ONE] * m + [_ZERO])
    for i in range(m):  # zero out reduced costs of the artificial basis
        tableau[-1] = [a - b for a, b in zip(tableau[-1], tableau[i])]
    _optimize(tableau, basis, n + m)
    if -tableau[-1][-1] != 0:
        return "infeasible", None, None

    # Pivot lingering artificials out of the basis where possible.
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if tableau[r][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, r, col)

    # Phase 2 on the real objective. Rows whose basis is still artificial are
    # redundant equalities pinned at zero; keep them but block their columns.
    tableau[-1] = [-Fraction(c) for c in objective] + [_ZERO] * m + [_ZERO]
    for r in range(m):
        factor = tableau[-1][basis[r]]
        if factor:
            tableau[-1] = [a - factor * b for a, b in zip(tableau[-1], tableau[r])]
    if not _optimize(tableau, basis, n):
        return "unbounded", None, None

    x = [_ZERO] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tableau[r][-1]
    value = sum(c * v for c, v in zip(objective, x))
    return "optimal", x, value


def max_uniform_slack(rows: list[list[Fraction]], n_vars: int) -> list[Fraction] | None:
    """Find l > 0 (componentwise), sum(l) == 1, row . l == 0 for every row.

    Maximizes the smallest component; returns one maximizing vector, or None
    when no strictly positive solution exists.  Substituting u = l - t keeps
    the problem in standard nonnegative form.  With zero variables every row
    is an empty sum, so the empty vector counts as a (vacuous) witness.
    """
    if n_vars == 0:
        return []
    matrix = []
    rhs = []
    for row in rows:
        matrix.append(list(row) + [sum(row)])
        rhs.append(_ZERO)
    matrix.append([_ONE] * n_vars + [Fraction(n_vars)])
    rhs.append(_ONE)
    objective = [_ZERO] * n_vars + [_ONE]
    status, x, value = solve_equality_lp(matrix, rhs, objective)
    if status != "optimal" or value is None or value <= 0:
        return None
    t = x[n_vars]
    return [u + t for u in x[:n_vars]]
