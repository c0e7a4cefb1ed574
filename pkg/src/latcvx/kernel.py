"""Exact rational arithmetic kernel: vectors, matrices, linear systems, LP.

Scalars are Python ints or fractions.Fraction; nothing in this package ever
rounds.  Vectors are plain tuples of scalars, matrices are tuples of row
tuples.  The simplex solver uses Bland's rule, so repeated calls on the same
problem return bit-identical outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class LatcvxError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(LatcvxError, ValueError):
    """An operation was called on input violating its preconditions."""


class InputError(LatcvxError, ValueError):
    """Malformed external input (JSON, rational strings, CLI values)."""


class SingularMatrixError(PreconditionError):
    pass


class InconsistentSystemError(LatcvxError):
    """Linear system has no solution."""


class DegenerateError(PreconditionError):
    """A region that must be full-dimensional is not."""


class EmptyRegionError(PreconditionError):
    pass


class UnboundedRegionError(PreconditionError):
    pass


class CertificationError(LatcvxError):
    """A construction failed the certificate it is guaranteed to satisfy."""


# ---------------------------------------------------------------------------
# rational scalars


def parse_rational(s):
    """Parse "p/q" or "p" into a Fraction (lowest terms, q > 0)."""
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    if not isinstance(s, str):
        raise InputError(f"expected rational string, got {type(s).__name__}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}") from exc


def format_rational(x) -> str:
    """Render a scalar as "p/q", or "p" when the denominator is 1."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_decimal(x, places: int) -> str:
    """Exact half-up decimal rendering of a rational, for display only."""
    f = Fraction(x)
    scale = 10 ** places
    num = f.numerator * scale * 2 + (f.denominator if f >= 0 else -f.denominator)
    q = num // (2 * f.denominator)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, scale)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"


# ---------------------------------------------------------------------------
# vectors (plain tuples)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(u, s):
    return tuple(a * s for a in u)


def vdot(u, v):
    return sum(a * b for a, b in zip(u, v))


def is_zero_vector(u) -> bool:
    return all(a == 0 for a in u)


def primitive_integer_vector(u):
    """Scale a nonzero rational vector by a positive factor to a content-1
    integer vector.  Returns (vector, factor) with vector = factor * u."""
    if is_zero_vector(u):
        raise PreconditionError("zero vector has no primitive scaling")
    fracs = [Fraction(a) for a in u]
    mult = lcm(*(f.denominator for f in fracs))
    ints = [f.numerator * (mult // f.denominator) for f in fracs]
    g = gcd(*(abs(a) for a in ints))
    return tuple(a // g for a in ints), Fraction(mult, g)


def sign_normalize(u):
    """Flip sign so the first nonzero entry is positive."""
    for a in u:
        if a != 0:
            return u if a > 0 else vneg(u)
    return u


def class_rep(u):
    """Canonical representative of the pair {u, -u}: the lex-larger one."""
    n = vneg(u)
    return u if u >= n else n


# ---------------------------------------------------------------------------
# matrices (tuples of row tuples)


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_transpose(m):
    return tuple(zip(*m))


def mat_vec(m, v):
    return tuple(vdot(row, v) for row in m)


def mat_mul(a, b):
    bt = mat_transpose(b)
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def mat_scale(m, s):
    return tuple(tuple(a * s for a in row) for row in m)


def _echelon(rows):
    """Row-reduce in place (list of lists); returns pivot column list."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [a / pv for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def mat_rank(m) -> int:
    if not m:
        return 0
    rows = [list(map(Fraction, row)) for row in m]
    return len(_echelon(rows))


def mat_det(m):
    n = len(m)
    rows = [list(map(Fraction, row)) for row in m]
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def mat_inverse(m):
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(row[n:]) for row in aug)


def solve_linear_system(a_rows, b):
    """Solve A.x = b exactly.

    Returns (particular_solution, null_space_basis); the null basis vectors
    are sign-normalized so their first nonzero entry is positive.  Raises
    InconsistentSystemError when no solution exists.
    """
    m = len(a_rows)
    if m != len(b):
        raise PreconditionError("row count of A must match length of b")
    n = len(a_rows[0]) if m else 0
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a_rows, b)]
    nrows = len(aug)
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][n] != 0:
            raise InconsistentSystemError("system has no solution")
    particular = [Fraction(0)] * n
    for row_idx, c in enumerate(pivots):
        particular[c] = aug[row_idx][n]
    free = [c for c in range(n) if c not in pivots]
    null_basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for row_idx, c in enumerate(pivots):
            vec[c] = -aug[row_idx][fc]
        null_basis.append(sign_normalize(tuple(vec)))
    return tuple(particular), tuple(null_basis)


# ---------------------------------------------------------------------------
# exact linear programming (two-phase simplex, Bland's rule)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LE = "<="
EQ = "=="


@dataclass(frozen=True)
class LpProblem:
    """max/min objective.x subject to lhs[i].x (<= | ==) rhs[i], x free."""

    objective: tuple
    lhs: tuple
    rhs: tuple
    senses: tuple
    maximize: bool = True

    def __post_init__(self):
        n = len(self.objective)
        if len(self.lhs) != len(self.rhs) or len(self.lhs) != len(self.senses):
            raise PreconditionError("inconsistent LP row counts")
        for row in self.lhs:
            if len(row) != n:
                raise PreconditionError("inconsistent LP column counts")
        for s in self.senses:
            if s not in (LE, EQ):
                raise PreconditionError(f"bad sense {s!r}")


@dataclass(frozen=True)
class LpOutcome:
    status: str
    value: Fraction | None = None
    optimizer: tuple | None = None


def _pivot(rows, basis, r, c):
    pv = rows[r][c]
    rows[r] = [a / pv for a in rows[r]]
    prow = rows[r]
    for i in range(len(rows)):
        if i != r and rows[i][c] != 0:
            f = rows[i][c]
            rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
    basis[r] = c


def _simplex(rows, basis, cost, ncols):
    """Maximize over the tableau; cost is the reduced-cost row (list length
    ncols + 1, last entry the objective value).  Returns True, or False when
    unbounded.  Bland's rule throughout."""
    while True:
        enter = next((c for c in range(ncols) if cost[c] > 0), None)
        if enter is None:
            return True
        leave = None
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return False
        _pivot(rows, basis, leave, enter)
        f = cost[enter]
        prow = rows[leave]
        for c in range(ncols + 1):
            cost[c] -= f * prow[c]


def solve_lp(p: LpProblem) -> LpOutcome:
    """Exact two-phase simplex.  Deterministic: Bland's rule, fixed column
    order (x+ block, x- block, slacks, artificials)."""
    n = len(p.objective)
    m = len(p.lhs)
    nle = sum(1 for s in p.senses if s == LE)
    base_cols = 2 * n + nle

    rows = []
    slack_no = 0
    needs_art = []
    for i in range(m):
        a = [Fraction(x) for x in p.lhs[i]]
        row = a + [-x for x in a] + [Fraction(0)] * nle + [Fraction(p.rhs[i])]
        if p.senses[i] == LE:
            row[2 * n + slack_no] = Fraction(1)
            slack_no += 1
        if row[-1] < 0:
            row = [-x for x in row]
        rows.append(row)

    basis = [-1] * m
    for i in range(m):
        if p.senses[i] == LE:
            sc = 2 * n + sum(1 for j in range(i) if p.senses[j] == LE)
            if rows[i][sc] == 1:
                basis[i] = sc
        if basis[i] < 0:
            needs_art.append(i)

    nart = len(needs_art)
    ncols = base_cols + nart
    for i in range(m):
        rhs = rows[i].pop()
        rows[i].extend([Fraction(0)] * nart)
        rows[i].append(rhs)
    for k, i in enumerate(needs_art):
        rows[i][base_cols + k] = Fraction(1)
        basis[i] = base_cols + k

    if nart:
        cost = [Fraction(0)] * (ncols + 1)
        for i in needs_art:
            for c in range(ncols + 1):
                cost[c] += rows[i][c]
        for k in range(nart):
            cost[base_cols + k] = Fraction(0)
        _simplex(rows, basis, cost, ncols)
        if cost[-1] != 0:
            return LpOutcome(INFEASIBLE)
        drop = []
        for i in range(m):
            if basis[i] >= base_cols:
                c = next((c for c in range(base_cols) if rows[i][c] != 0), None)
                if c is None:
                    drop.append(i)
                else:
                    _pivot(rows, basis, i, c)
        for i in reversed(drop):
            del rows[i]
            del basis[i]
        rows = [row[:base_cols] + [row[-1]] for row in rows]
        ncols = base_cols

    sign = 1 if p.maximize else -1
    cost = [sign * Fraction(x) for x in p.objective]
    cost += [-c for c in cost] + [Fraction(0)] * (ncols - 2 * n) + [Fraction(0)]
    for i, b in enumerate(basis):
        if cost[b] != 0:
            f = cost[b]
            prow = rows[i]
            for c in range(ncols + 1):
                cost[c] -= f * prow[c]
    if not _simplex(rows, basis, cost, ncols):
        return LpOutcome(UNBOUNDED)

    vals = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        vals[b] = rows[i][-1]
    x = tuple(vals[j] - vals[n + j] for j in range(n))
    value = sum(Fraction(c) * xi for c, xi in zip(p.objective, x))
    return LpOutcome(OPTIMAL, value, x)


def lp_maximize(objective, ineqs, eqs=()):
    """Convenience wrapper: max objective.x s.t. n.x <= c and e.x == d."""
    lhs = tuple(tuple(n) for n, _ in ineqs) + tuple(tuple(n) for n, _ in eqs)
    rhs = tuple(c for _, c in ineqs) + tuple(c for _, c in eqs)
    senses = (LE,) * len(ineqs) + (EQ,) * len(eqs)
    return solve_lp(LpProblem(tuple(objective), lhs, rhs, senses, True))
