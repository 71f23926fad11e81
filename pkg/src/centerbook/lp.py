"""Exact linear feasibility over the rationals.

A small dense phase-1 simplex with Bland's rule: every pivot is a Fraction
operation, so there is no tolerance anywhere and no cycling. Sized for the
handful of variables a book template produces, not for production LP work.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import BoundsError

LinearRow = tuple[Mapping[str, Fraction], str, Fraction]  # (coefficients, op, rhs)


def find_feasible_point(
    rows: Sequence[LinearRow],
    bounds: Mapping[str, tuple[Fraction, Fraction]],
) -> dict[str, Fraction] | None:
    """A point satisfying every row and every bound, or None if there is none.

    Rows use op "<=" or ">=". Bounds must be finite with lo <= hi; they
    are part of the system, not a hint.
    """
    names = list(bounds)
    for name in names:
        lo, hi = bounds[name]
        if lo > hi:
            raise BoundsError(f"{name}: empty bounds [{lo}, {hi}]")
    free = [name for name in names if bounds[name][0] != bounds[name][1]]
    lows = {name: bounds[name][0] for name in names}

    # Shift x = lo + y (y >= 0) and normalize every row to "<=".
    matrix: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def add_row(coeffs: Mapping[str, Fraction], limit: Fraction) -> bool:
        row = [Fraction(coeffs.get(name, 0)) for name in free]
        if any(row):
            matrix.append(row)
            rhs.append(limit)
            return True
        return limit >= 0

    for coeffs, op, bound in rows:
        unknown = set(coeffs) - set(names)
        if unknown:
            raise BoundsError(f"no bounds given for variable(s) {sorted(unknown)}")
        shifted = bound - sum(
            (Fraction(c) * lows[name] for name, c in coeffs.items()), Fraction(0)
        )
        if op == "<=":
            ok = add_row(coeffs, shifted)
        elif op == ">=":
            ok = add_row({name: -Fraction(c) for name, c in coeffs.items()}, -shifted)
        else:
            raise ValueError(f"unsupported op {op!r}")
        if not ok:
            return None

    for name in free:
        lo, hi = bounds[name]
        add_row({name: Fraction(1)}, hi - lo)

    solution = _phase_one(matrix, rhs, len(free))
    if solution is None:
        return None
    point = {name: lows[name] for name in names}
    for index, name in enumerate(free):
        point[name] = lows[name] + solution[index]
    return point


def _phase_one(
    matrix: list[list[Fraction]], rhs: list[Fraction], n_vars: int
) -> list[Fraction] | None:
    """Solve A y <= b, y >= 0 for a basic feasible point via artificials."""
    m = len(matrix)
    if m == 0:
        return [Fraction(0)] * n_vars

    artificial_rows = [i for i in range(m) if rhs[i] < 0]
    n_slack = m
    n_art = len(artificial_rows)
    width = n_vars + n_slack + n_art

    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    art_col = {row: n_vars + n_slack + k for k, row in enumerate(artificial_rows)}
    for i in range(m):
        negate = rhs[i] < 0
        sign = Fraction(-1 if negate else 1)
        row = [sign * value for value in matrix[i]]
        row += [Fraction(0)] * (n_slack + n_art)
        row_rhs = sign * rhs[i]
        row[n_vars + i] = sign  # slack
        if negate:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(n_vars + i)
        tableau.append(row + [row_rhs])

    is_artificial = [col >= n_vars + n_slack for col in range(width)]
    # Minimize the artificial sum; start with reduced costs for the basis above.
    objective = [Fraction(0)] * (width + 1)
    for col in range(width):
        objective[col] = (Fraction(1) if is_artificial[col] else Fraction(0))
    for i in range(m):
        if is_artificial[basis[i]]:
            for col in range(width + 1):
                objective[col] -= tableau[i][col]

    while True:
        entering = next(
            (col for col in range(width) if objective[col] < 0), None
        )
        if entering is None:
            break
        best_ratio: Fraction | None = None
        leaving = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][width] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            raise RuntimeError("phase-1 objective unbounded; solver invariant broken")
        _pivot(tableau, objective, basis, leaving, entering, width)

    infeasibility = -objective[width]
    if infeasibility > 0:
        return None

    solution = [Fraction(0)] * n_vars
    for i in range(m):
        if basis[i] < n_vars:
            solution[basis[i]] = tableau[i][width]
    return solution


def _pivot(tableau, objective, basis, row: int, col: int, width: int) -> None:
    pivot_value = tableau[row][col]
    tableau[row] = [value / pivot_value for value in tableau[row]]
    for i in range(len(tableau)):
        if i != row and tableau[i][col] != 0:
            factor = tableau[i][col]
            tableau[i] = [
                value - factor * pivot_row
                for value, pivot_row in zip(tableau[i], tableau[row])
            ]
    if objective[col] != 0:
        factor = objective[col]
        for j in range(width + 1):
            objective[j] -= factor * tableau[row][j]
    basis[row] = col
