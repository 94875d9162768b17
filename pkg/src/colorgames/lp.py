"""Exact linear feasibility over the rationals.

The solver runs a phase-1 simplex with Bland's pivoting rule on
Fraction arithmetic: no tolerances, no floating point, guaranteed
termination under degeneracy.  Only weak relations are supported;
callers encode strict positivity through a normalization row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .arena import ContractError

RELATIONS = ("=", "<=", ">=")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ContractError(f"unknown relation {self.relation!r}")

    def holds(self, x) -> bool:
        lhs = sum(c * v for c, v in zip(self.coeffs, x) if c)
        if self.relation == "=":
            return lhs == self.rhs
        if self.relation == "<=":
            return lhs <= self.rhs
        return lhs >= self.rhs


class LinearSystem:
    """A conjunction of exact linear constraints over m variables."""

    def __init__(self, num_vars: int, constraints=()):
        self.num_vars = num_vars
        self.constraints: list[Constraint] = []
        for con in constraints:
            if isinstance(con, Constraint):
                self.add_constraint(con)
            else:
                self.add(*con)

    def add_constraint(self, con: Constraint) -> None:
        if len(con.coeffs) != self.num_vars:
            raise ContractError(
                f"constraint has {len(con.coeffs)} coefficients, "
                f"system has {self.num_vars} variables")
        self.constraints.append(con)

    def add(self, coeffs, relation: str, rhs) -> None:
        self.add_constraint(Constraint(
            tuple(Fraction(c) for c in coeffs), relation, Fraction(rhs)))

    def satisfied_by(self, x) -> bool:
        if len(x) != self.num_vars:
            return False
        return all(con.holds(x) for con in self.constraints)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    assignment: tuple[Fraction, ...] | None = None


def solve_feasibility(system: LinearSystem) -> FeasibilityResult:
    """Decide exact feasibility; a Feasible result carries an assignment
    that satisfies every constraint with zero residual."""
    m = system.num_vars

    # Rows of the form  c*x_j >= 0 (c > 0)  or  c*x_j <= 0 (c < 0)  are
    # absorbed as variable sign restrictions instead of tableau rows.
    nonneg = [False] * m
    rows: list[Constraint] = []
    for con in system.constraints:
        nz = [(j, c) for j, c in enumerate(con.coeffs) if c != 0]
        if len(nz) == 1 and con.rhs == 0:
            j, c = nz[0]
            if (con.relation == ">=" and c > 0) or (con.relation == "<=" and c < 0):
                nonneg[j] = True
                continue
        rows.append(con)

    # Column layout: nonnegative variables keep one column, free
    # variables are split x = pos - neg.
    pos_col = [0] * m
    neg_col = [-1] * m
    ncols = 0
    for j in range(m):
        pos_col[j] = ncols
        ncols += 1
        if not nonneg[j]:
            neg_col[j] = ncols
            ncols += 1
    nstruct = ncols + sum(1 for con in rows if con.relation != "=")

    tableau: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    zero, one = Fraction(0), Fraction(1)
    slack_at = ncols
    art_at = nstruct
    for con in rows:
        row = [zero] * (nstruct + len(rows))
        for j, c in enumerate(con.coeffs):
            if c:
                row[pos_col[j]] = Fraction(c)
                if neg_col[j] >= 0:
                    row[neg_col[j]] = Fraction(-c)
        b = Fraction(con.rhs)
        if con.relation == "<=":
            row[slack_at] = one
            slack_col = slack_at
            slack_at += 1
        elif con.relation == ">=":
            row[slack_at] = -one
            slack_col = slack_at
            slack_at += 1
        else:
            slack_col = -1
        if b < 0:
            row = [-v for v in row]
            b = -b
        # A slack entering with +1 serves as the initial basic variable;
        # otherwise the row gets an artificial variable.
        if slack_col >= 0 and row[slack_col] == 1:
            basis.append(slack_col)
        else:
            row[art_at] = one
            basis.append(art_at)
            art_at += 1
        tableau.append(row)
        rhs.append(b)

    width = nstruct + len(rows)
    artificial = [False] * width
    for c in range(nstruct, art_at):
        artificial[c] = True

    # Phase-1 objective: minimize the sum of artificial variables.
    zrow = [zero] * width
    for i, row in enumerate(tableau):
        if artificial[basis[i]]:
            for j in range(width):
                if row[j]:
                    zrow[j] -= row[j]
    for c in range(nstruct, art_at):
        zrow[c] = zero

    barred = [False] * width  # artificials barred after leaving the basis

    max_iters = 1000 + 50 * (len(rows) + width)
    for _ in range(max_iters):
        # Bland: entering column is the smallest index with negative
        # reduced cost.
        enter = -1
        for j in range(width):
            if zrow[j] < 0 and not barred[j]:
                enter = j
                break
        if enter < 0:
            break
        # Leaving row: minimum ratio, ties by smallest basic variable.
        leave = -1
        best = None
        for i, row in enumerate(tableau):
            a = row[enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise RuntimeError("phase-1 objective unbounded; solver bug")
        _pivot(tableau, rhs, zrow, enter, leave)
        out = basis[leave]
        if artificial[out]:
            barred[out] = True
        basis[leave] = enter
    else:
        raise RuntimeError("simplex exceeded its iteration budget")

    zval = sum(rhs[i] for i in range(len(rows)) if artificial[basis[i]])
    if zval != 0:
        return FeasibilityResult(False)

    values = [zero] * width
    for i, c in enumerate(basis):
        values[c] = rhs[i]
    x = []
    for j in range(m):
        v = values[pos_col[j]]
        if neg_col[j] >= 0:
            v -= values[neg_col[j]]
        x.append(v)
    assignment = tuple(x)
    if not system.satisfied_by(assignment):
        raise RuntimeError("simplex produced an assignment that fails "
                           "exact re-checking; solver bug")
    return FeasibilityResult(True, assignment)


def _pivot(tableau, rhs, zrow, enter, leave):
    prow = tableau[leave]
    piv = prow[enter]
    if piv != 1:
        inv = 1 / piv
        for j, v in enumerate(prow):
            if v:
                prow[j] = v * inv
        rhs[leave] *= inv
    nz = [j for j, v in enumerate(prow) if v]
    pb = rhs[leave]
    for i, row in enumerate(tableau):
        if i == leave:
            continue
        f = row[enter]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
            rhs[i] -= f * pb
    f = zrow[enter]
    if f:
        for j in nz:
            zrow[j] -= f * prow[j]


def integer_scale(assignment, system: LinearSystem) -> list[int]:
    """Rescale a rational solution of an (up to one normalization row)
    homogeneous system into a nonnegative integer solution.

    Homogeneous constraints are invariant under positive scaling, so
    multiplying by the least common multiple of the denominators keeps
    them satisfied exactly.
    """
    inhomogeneous = [con for con in system.constraints if con.rhs != 0]
    if len(inhomogeneous) > 1:
        raise ContractError(
            "system has more than one non-homogeneous constraint")
    values = [Fraction(v) for v in assignment]
    if any(v < 0 for v in values):
        raise ContractError("assignment has negative entries")
    if all(v == 0 for v in values):
        raise ContractError("assignment has no positive entry")
    scale = lcm(*(v.denominator for v in values)) if values else 1
    scaled = [int(v * scale) for v in values]
    for con in system.constraints:
        if con.rhs == 0 and not con.holds(scaled):
            raise RuntimeError("scaled solution violates a homogeneous "
                               "constraint; scaling bug")
    return scaled
