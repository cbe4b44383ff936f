"""Exact integer matrices and Smith Normal Form with tracked multipliers.

Everything here runs on arbitrary-precision Python integers; nothing rounds
or overflows.  The elimination keeps four matrices in sync so that
``u @ s @ v == a`` holds exactly at every step, and the inverse of the right
multiplier is accumulated on the fly instead of being inverted afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .errors import GraphFormatError, InternalInconsistency, SizeLimit

MINOR_DIM_LIMIT = 12


@dataclass(frozen=True)
class IntMatrix:
    """Immutable row-major integer matrix."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n))
                               for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries))
                         if self.entries else tuple((),) * 0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        if other.entries:
            ocols = list(zip(*other.entries))
        else:
            ocols = [()] * other.cols
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ocols)
            for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, data)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        k = self.rows
        if k == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for i in range(k - 1):
            if m[i][i] == 0:
                for r in range(i + 1, k):
                    if m[r][i]:
                        m[i], m[r] = m[r], m[i]
                        sign = -sign
                        break
                else:
                    return 0
            piv = m[i][i]
            for r in range(i + 1, k):
                row_r = m[r]
                row_i = m[i]
                lead = row_r[i]
                for c in range(i + 1, k):
                    row_r[c] = (row_r[c] * piv - lead * row_i[c]) // prev
                row_r[i] = 0
            prev = piv
        return sign * m[k - 1][k - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1


@dataclass(frozen=True)
class SnfResult:
    """Factorization a = u @ s @ v with unimodular u, v and tracked v_inv."""

    s: IntMatrix
    u: IntMatrix
    v: IntMatrix
    v_inv: IntMatrix
    invariant_factors: tuple[int, ...]


@dataclass(frozen=True)
class IncidenceSnfSummary:
    """alpha is the trailing invariant-factor slot of a component's incidence
    matrix: 0 for bipartite components (or when the slot is absent, as for
    trees), 2 otherwise."""

    alpha: int
    rank: int


def snf(a: IntMatrix) -> SnfResult:
    """Smith Normal Form of any rectangular integer matrix.

    Pivots are chosen by minimal absolute value, ties broken by lowest
    (row, col) index, which keeps the output deterministic and damps
    coefficient growth.  Diagonal entries come out nonnegative with the
    divisibility chain s[i][i] | s[i+1][i+1] enforced in-loop.
    """
    n, m = a.rows, a.cols
    s = [list(row) for row in a.entries]
    # ucols[j] is column j of u; v is stored by rows; vinv_cols[j] is
    # column j of v^-1.  With these orientations every elementary
    # operation below touches contiguous lists only.
    ucols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    v = [[1 if j == i else 0 for j in range(m)] for i in range(m)]
    vinv_cols = [[1 if i == j else 0 for i in range(m)] for j in range(m)]

    def _combine(dst, src, q):
        # dst += q * src, elementwise; q == +-1 fast paths matter here.
        if q == 1:
            return [x + y for x, y in zip(dst, src)]
        if q == -1:
            return [x - y for x, y in zip(dst, src)]
        return [x + q * y for x, y in zip(dst, src)]

    def row_add(i, j, q):
        # s[i,:] += q * s[j,:]
        s[i] = _combine(s[i], s[j], q)
        ucols[j] = _combine(ucols[j], ucols[i], -q)

    def row_swap(i, j):
        s[i], s[j] = s[j], s[i]
        ucols[i], ucols[j] = ucols[j], ucols[i]

    def row_negate(i):
        s[i] = [-x for x in s[i]]
        ucols[i] = [-x for x in ucols[i]]

    def col_add(j, i, q, lo):
        # s[:,j] += q * s[:,i]; rows above lo are already zero in both
        # columns, so they are skipped.
        for r in range(lo, n):
            row = s[r]
            x = row[i]
            if x:
                row[j] += q * x
        v[i] = _combine(v[i], v[j], -q)
        vinv_cols[j] = _combine(vinv_cols[j], vinv_cols[i], q)

    def col_swap(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        v[i], v[j] = v[j], v[i]
        vinv_cols[i], vinv_cols[j] = vinv_cols[j], vinv_cols[i]

    def find_pivot(t):
        # Lexicographically first entry of minimal absolute value; an
        # entry of absolute value 1 cannot be beaten, so return early.
        best = None
        best_abs = 0
        for i in range(t, n):
            row = s[i]
            for j in range(t, m):
                x = row[j]
                if x:
                    ax = x if x > 0 else -x
                    if ax == 1:
                        return i, j
                    if best is None or ax < best_abs:
                        best = (i, j)
                        best_abs = ax
        return best

    rank = 0
    for t in range(min(n, m)):
        piv = find_pivot(t)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if s[t][t] < 0:
            row_negate(t)
        while True:
            # Clear the pivot row first: incidence-style inputs have sparse
            # columns, so column combinations cause almost no fill-in, and
            # afterwards clearing the pivot column touches nothing else.
            restart = False
            row_t = s[t]
            for j in range(t + 1, m):
                x = row_t[j]
                if x:
                    q = x // row_t[t]
                    if q:
                        col_add(j, t, -q, t)
                    if row_t[j]:
                        # Positive remainder beats the pivot; promote it.
                        col_swap(t, j)
                        restart = True
                        break
            if restart:
                continue
            for i in range(t + 1, n):
                x = s[i][t]
                if x:
                    q = x // s[t][t]
                    if q:
                        row_add(i, t, -q)
                    if s[i][t]:
                        row_swap(t, i)
                        restart = True
                        break
            if restart:
                continue
            p = s[t][t]
            if p != 1:
                offender = None
                for i in range(t + 1, n):
                    row = s[i]
                    for j in range(t + 1, m):
                        if row[j] % p:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is not None:
                    # Pull the offending row up so the next rounds shrink
                    # the pivot to a divisor of the whole trailing block.
                    row_add(t, offender, 1)
                    continue
            break
        rank = t + 1

    s_mat = IntMatrix.from_rows(s, m)
    u_mat = IntMatrix.from_rows(list(zip(*ucols)) if ucols else [], n)
    v_mat = IntMatrix.from_rows(v, m)
    vinv_mat = IntMatrix.from_rows(list(zip(*vinv_cols)) if vinv_cols else [], m)
    factors = tuple(s[k][k] for k in range(rank))
    return SnfResult(s=s_mat, u=u_mat, v=v_mat, v_inv=vinv_mat,
                     invariant_factors=factors)


def incidence_snf_summary(a: IntMatrix, res: SnfResult,
                          bipartite: bool) -> IncidenceSnfSummary:
    """Read alpha off the SNF of one component's incidence matrix.

    `bipartite` is the combinatorial verdict for the same component; a
    disagreement with the algebra means the SNF (or the caller) is broken.
    """
    n = a.rows
    factors = res.invariant_factors
    rank = len(factors)
    if n >= 1 and a.cols >= n and rank == n:
        alpha = factors[n - 1]
    else:
        alpha = 0
    if alpha not in (0, 2):
        raise InternalInconsistency(
            f"incidence SNF ended in {alpha}, expected 0 or 2")
    if (alpha == 0) != bipartite:
        raise InternalInconsistency(
            f"alpha={alpha} contradicts bipartite={bipartite}")
    return IncidenceSnfSummary(alpha=alpha, rank=rank)


def gcd_maximal_minors(a: IntMatrix) -> int:
    """gcd of all maximal (row-count sized) minors, brute force.

    Returns 0 when there are no such minors (more rows than columns) or
    when they all vanish.  Guarded: this is an oracle-scale routine.
    """
    if a.rows > MINOR_DIM_LIMIT or a.cols > MINOR_DIM_LIMIT:
        raise SizeLimit(
            f"minor enumeration capped at {MINOR_DIM_LIMIT}x{MINOR_DIM_LIMIT},"
            f" got {a.rows}x{a.cols}")
    r = a.rows
    if r == 0:
        return 1
    if a.cols < r:
        return 0
    g = 0
    for cols in combinations(range(a.cols), r):
        sub = IntMatrix.from_rows(
            [[row[c] for c in cols] for row in a.entries], r)
        g = gcd(g, abs(sub.det()))
        if g == 1:
            return 1
    return g


def parse_matrix(text: str) -> IntMatrix:
    """Parse the CLI matrix dump format: "rows cols" then one line per row."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty matrix input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError("first line must be 'rows cols'")
    try:
        rows, cols = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError("first line must be 'rows cols'") from None
    if rows < 0 or cols < 0:
        raise GraphFormatError("matrix dimensions must be nonnegative")
    if len(lines) != rows + 1:
        raise GraphFormatError(f"expected {rows} data lines, got {len(lines) - 1}")
    data = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != cols:
            raise GraphFormatError(f"expected {cols} entries per row: {ln!r}")
        try:
            data.append([int(x) for x in parts])
        except ValueError:
            raise GraphFormatError(f"non-integer matrix entry in {ln!r}") from None
    return IntMatrix.from_rows(data, cols)


def format_matrix(a: IntMatrix) -> str:
    out = [f"{a.rows} {a.cols}"]
    out.extend(" ".join(str(x) for x in row) for row in a.entries)
    return "\n".join(out) + "\n"
