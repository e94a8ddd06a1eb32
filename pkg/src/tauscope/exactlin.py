"""Exact dense linear algebra over Q or a prime field.

Everything downstream (Hom spaces, kernels, closure predicates) tests exact
equalities, so there is no floating point anywhere.  Pivoting is
deterministic (first nonzero entry, scanning left to right, top to bottom),
which makes every derived artifact byte-for-byte reproducible.

Matrices are immutable; all operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple


class FpElement:
    """Residue in a prime field, normalised to 0 <= val < p."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def __add__(self, other):
        return FpElement(self.val + other.val, self.p)

    def __sub__(self, other):
        return FpElement(self.val - other.val, self.p)

    def __mul__(self, other):
        return FpElement(self.val * other.val, self.p)

    def __truediv__(self, other):
        if other.val == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return FpElement(self.val * pow(other.val, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.val == other.val and self.p == other.p
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"{self.val}"


class Rationals:
    """Field descriptor for exact rational arithmetic."""

    characteristic = 0

    def of(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Field descriptor for GF(p), p prime (not verified beyond p >= 2)."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("prime modulus must be >= 2")
        self.p = p
        self.characteristic = p

    def of(self, x) -> FpElement:
        if isinstance(x, FpElement):
            return x
        if isinstance(x, Fraction):
            return FpElement(x.numerator, self.p) / FpElement(x.denominator, self.p)
        return FpElement(int(x), self.p)

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def format(self, x) -> str:
        return str(x.val)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


class Matrix:
    """Immutable dense matrix; rows is a tuple of row tuples."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, nrows: int, ncols: int, rows):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(tuple(field.of(x) for x in row) for row in rows)
        if len(self.rows) != nrows or any(len(r) != ncols for r in self.rows):
            raise ValueError("entry grid does not match declared shape")

    @staticmethod
    def _raw(field, nrows: int, ncols: int, rows) -> "Matrix":
        """Trusted constructor: entries are already field elements."""
        m = object.__new__(Matrix)
        m.field = field
        m.nrows = nrows
        m.ncols = ncols
        m.rows = rows
        return m

    @staticmethod
    def from_rows(field, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        return Matrix(field, len(rows), len(rows[0]) if rows else 0, rows)

    @staticmethod
    def zeros(field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return Matrix(field, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return Matrix(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def column(field, entries) -> "Matrix":
        return Matrix(field, len(entries), 1, [[x] for x in entries])

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def row(self, i: int):
        return self.rows[i]

    def col(self, j: int):
        return tuple(r[j] for r in self.rows)

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, self.ncols, self.nrows,
                           tuple(tuple(self.rows[i][j] for i in range(self.nrows))
                                 for j in range(self.ncols)))

    def add(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in add")
        return Matrix._raw(self.field, self.nrows, self.ncols,
                           tuple(tuple(a + b for a, b in zip(r1, r2))
                                 for r1, r2 in zip(self.rows, other.rows)))

    def sub(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in sub")
        return Matrix._raw(self.field, self.nrows, self.ncols,
                           tuple(tuple(a - b for a, b in zip(r1, r2))
                                 for r1, r2 in zip(self.rows, other.rows)))

    def neg(self) -> "Matrix":
        return Matrix._raw(self.field, self.nrows, self.ncols,
                           tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> "Matrix":
        c = self.field.of(c)
        return Matrix._raw(self.field, self.nrows, self.ncols,
                           tuple(tuple(c * a for a in r) for r in self.rows))

    def _int_rows(self):
        """(integer rows, common denominator) for a rational matrix."""
        from math import gcd
        den = 1
        for row in self.rows:
            for x in row:
                d = x.denominator
                if d != 1:
                    den = den * d // gcd(den, d)
        if den == 1:
            return [[x.numerator for x in row] for row in self.rows], 1
        return [[x.numerator * (den // x.denominator) for x in row]
                for row in self.rows], den

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch in mul: {self.shape()} x {other.shape()}")
        if isinstance(self.field, Rationals):
            arows, da = self._int_rows()
            brows, db = other._int_rows()
            bcols = list(zip(*brows)) if brows else []
            den = da * db
            out = tuple(tuple(Fraction(sum(a * b for a, b in zip(row, col)), den)
                              for col in bcols)
                        for row in arows)
            return Matrix._raw(self.field, self.nrows, other.ncols, out)
        z = self.field.zero
        cols = other.transpose().rows
        out = tuple(tuple(sum((a * b for a, b in zip(row, col)), z) for col in cols)
                    for row in self.rows)
        return Matrix._raw(self.field, self.nrows, other.ncols, out)

    def apply(self, vec):
        """Multiply with a column vector given as a tuple."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        z = self.field.zero
        return tuple(sum((a * b for a, b in zip(row, vec)), z) for row in self.rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Matrix(self.field, self.nrows, self.ncols + other.ncols,
                      [r1 + r2 for r1, r2 in zip(self.rows, other.rows)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    @staticmethod
    def block_diag(field, blocks) -> "Matrix":
        nrows = sum(b.nrows for b in blocks)
        ncols = sum(b.ncols for b in blocks)
        z = field.zero
        rows = []
        coff = 0
        for b in blocks:
            for r in b.rows:
                rows.append([z] * coff + list(r) + [z] * (ncols - coff - b.ncols))
            coff += b.ncols
        return Matrix(field, nrows, ncols, rows)

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        return Matrix(self.field, len(row_idx), len(col_idx),
                      [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def rank(self) -> int:
        return rref(self).rank

    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape() == other.shape()
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"


class RrefResult(NamedTuple):
    reduced: Matrix
    pivots: tuple
    rank: int


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form with deterministic pivoting.

    Pivot choice: first nonzero entry scanning left to right, top to bottom.
    Over the rationals the elimination runs fraction-free on integer rows;
    the result (the unique RREF) is identical either way.
    """
    if isinstance(m.field, Rationals):
        return _rref_qq(m)
    rows = [list(r) for r in m.rows]
    pivots = []
    pr = 0
    for pc in range(m.ncols):
        sel = None
        for i in range(pr, m.nrows):
            if rows[i][pc]:
                sel = i
                break
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = m.field.one / rows[pr][pc]
        rows[pr] = [x * inv for x in rows[pr]]
        for i in range(m.nrows):
            if i != pr and rows[i][pc]:
                c = rows[i][pc]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == m.nrows:
            break
    return RrefResult(Matrix._raw(m.field, m.nrows, m.ncols,
                                  tuple(tuple(r) for r in rows)),
                      tuple(pivots), len(pivots))


def _rref_qq(m: Matrix) -> RrefResult:
    from math import gcd
    n, p = m.nrows, m.ncols
    irows = []
    for row in m.rows:
        den = 1
        for x in row:
            d = x.denominator
            den = den * d // gcd(den, d)
        irows.append([int(x.numerator * (den // x.denominator)) for x in row])
    pivots = []
    pr = 0
    for pc in range(p):
        sel = None
        for i in range(pr, n):
            if irows[i][pc]:
                sel = i
                break
        if sel is None:
            continue
        irows[pr], irows[sel] = irows[sel], irows[pr]
        prow = irows[pr]
        pv = prow[pc]
        for i in range(n):
            row = irows[i]
            if i != pr and row[pc]:
                c = row[pc]
                new = [a * pv - b * c for a, b in zip(row, prow)]
                g = 0
                for x in new:
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g > 1:
                    new = [x // g for x in new]
                irows[i] = new
        pivots.append(pc)
        pr += 1
        if pr == n:
            break
    zero = Fraction(0)
    out = [(zero,) * p] * n
    for r, pc in enumerate(pivots):
        pv = irows[r][pc]
        out[r] = tuple(Fraction(x, pv) for x in irows[r])
    return RrefResult(Matrix._raw(m.field, n, p, tuple(out)), tuple(pivots), len(pivots))


def kernel_basis(m: Matrix) -> Matrix:
    """Columns span the right null space; count = ncols - rank."""
    red, pivots, rank = rref(m)
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    z, o = m.field.zero, m.field.one
    cols = []
    for f in free:
        v = [z] * m.ncols
        v[f] = o
        for r, p in enumerate(pivots):
            v[p] = -red.rows[r][f]
        cols.append(v)
    return Matrix(m.field, m.ncols, len(cols), [[cols[k][i] for k in range(len(cols))]
                                                for i in range(m.ncols)])


def solve(m: Matrix, b) -> tuple | None:
    """One solution of m x = b (free variables zero), or None if inconsistent."""
    sols = solve_matrix(m, Matrix.column(m.field, b))
    if sols is None:
        return None
    return sols.col(0)


def solve_matrix(m: Matrix, b: Matrix) -> Matrix | None:
    """Solve m X = b column-wise; None exactly when some column is unsolvable."""
    if b.nrows != m.nrows:
        raise ValueError("right-hand side height mismatch")
    red, pivots, rank = rref(m.hstack(b))
    z = m.field.zero
    # a pivot in the appended block means the system is inconsistent
    if any(p >= m.ncols for p in pivots):
        return None
    out = [[z] * b.ncols for _ in range(m.ncols)]
    for r, p in enumerate(pivots):
        for j in range(b.ncols):
            out[p][j] = red.rows[r][m.ncols + j]
    return Matrix(m.field, m.ncols, b.ncols, out)


# ---------------------------------------------------------------------------
# subspace utilities (subspaces of K^n are matrices whose columns span them)

def column_space_basis(m: Matrix) -> Matrix:
    """Deterministic basis of the column space (pivot columns of m)."""
    pivots = rref(m).pivots
    return m.submatrix(range(m.nrows), pivots)


def row_reduce_basis(vectors, field, n) -> list:
    """Reduce a list of length-n row vectors to a deterministic basis."""
    if not vectors:
        return []
    m = Matrix(field, len(vectors), n, vectors)
    red, _, rank = rref(m)
    return [red.rows[i] for i in range(rank)]


def in_span(vectors, v, field) -> bool:
    """Is v in the span of the given row vectors?"""
    if not vectors:
        return all(not x for x in v)
    m = Matrix(field, len(v), len(vectors), [[vec[i] for vec in vectors] for i in range(len(v))])
    return solve(m, v) is not None


def span_dim(vectors, field, n) -> int:
    return len(row_reduce_basis(vectors, field, n))


def same_span(vs1, vs2, field, n) -> bool:
    return row_reduce_basis(vs1, field, n) == row_reduce_basis(vs2, field, n)


def quotient_map(sub: Matrix) -> Matrix:
    """Projection K^n -> K^(n-k) with kernel exactly colspace(sub).

    Coordinates are the non-pivot positions of the reduced basis, so the
    result is deterministic.
    """
    n = sub.nrows
    red, pivots, rank = rref(sub.transpose())
    piv_rows = red.rows[:rank]
    free = [j for j in range(n) if j not in set(pivots)]
    z, o = sub.field.zero, sub.field.one
    # q(v) = v reduced modulo the subspace, restricted to free coordinates
    rows = []
    for f in free:
        row = [z] * n
        row[f] = o
        for r, p in enumerate(pivots):
            row[p] = -piv_rows[r][f]
        rows.append(row)
    return Matrix(sub.field, len(free), n, rows)


def section_of_quotient(sub: Matrix) -> Matrix:
    """Right inverse of quotient_map(sub): free coordinates embed back."""
    n = sub.nrows
    _, pivots, _ = rref(sub.transpose())
    free = [j for j in range(n) if j not in set(pivots)]
    z, o = sub.field.zero, sub.field.one
    cols = []
    for f in free:
        v = [z] * n
        v[f] = o
        cols.append(v)
    return Matrix(sub.field, n, len(free), [[c[i] for c in cols] for i in range(n)])


# ---------------------------------------------------------------------------
# polynomials (coefficient tuples, low degree first) and coprime splitting

def poly_degree(f) -> int:
    d = len(f) - 1
    while d >= 0 and not f[d]:
        d -= 1
    return d


def poly_trim(f, field):
    d = poly_degree(f)
    return tuple(f[: d + 1]) if d >= 0 else (field.zero,)


def poly_add(f, g, field):
    n = max(len(f), len(g))
    z = field.zero
    return poly_trim(tuple((f[i] if i < len(f) else z) + (g[i] if i < len(g) else z)
                           for i in range(n)), field)


def poly_mul(f, g, field):
    z = field.zero
    out = [z] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return poly_trim(tuple(out), field)


def poly_divmod(f, g, field):
    g = poly_trim(g, field)
    dg = poly_degree(g)
    if dg < 0:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    z = field.zero
    quot = [z] * max(len(f) - dg, 1)
    lead = g[dg]
    for i in range(poly_degree(tuple(rem)), dg - 1, -1):
        if not rem[i]:
            continue
        c = rem[i] / lead
        quot[i - dg] = c
        for j in range(dg + 1):
            rem[i - dg + j] = rem[i - dg + j] - c * g[j]
    return poly_trim(tuple(quot), field), poly_trim(tuple(rem), field)


def poly_monic(f, field):
    d = poly_degree(f)
    if d < 0:
        return (field.zero,)
    lead = f[d]
    return tuple(x / lead for x in f[: d + 1])


def poly_gcd(f, g, field):
    a, b = poly_trim(f, field), poly_trim(g, field)
    while poly_degree(b) >= 0:
        _, r = poly_divmod(a, b, field)
        a, b = b, r
    return poly_monic(a, field)


def poly_derivative(f, field):
    if len(f) <= 1:
        return (field.zero,)
    out = []
    for i in range(1, len(f)):
        c = f[i]
        k = field.of(i)
        out.append(k * c)
    return poly_trim(tuple(out), field)


def poly_eval_matrix(f, m: Matrix) -> Matrix:
    """Evaluate the polynomial at a square matrix (Horner)."""
    n = m.nrows
    acc = Matrix.zeros(m.field, n, n)
    for c in reversed(f):
        acc = acc.mul(m)
        if c:
            acc = acc.add(Matrix.identity(m.field, n).scale(c))
    return acc


def minimal_polynomial(m: Matrix):
    """Monic minimal polynomial via the first dependency among powers."""
    if m.nrows != m.ncols:
        raise ValueError("minimal polynomial needs a square matrix")
    n = m.nrows
    if n == 0:
        return (m.field.one,)
    flats = []
    power = Matrix.identity(m.field, n)
    while True:
        flat = tuple(x for row in power.rows for x in row)
        if flats:
            sys = Matrix(m.field, n * n, len(flats),
                         [[flats[k][i] for k in range(len(flats))] for i in range(n * n)])
            sol = solve(sys, flat)
            if sol is not None:
                coeffs = [-c for c in sol] + [m.field.one]
                return poly_trim(tuple(coeffs), m.field)
        flats.append(flat)
        power = power.mul(m)


def squarefree_decomposition(f, field):
    """Return [(g, k)] with f = prod g^k, g monic squarefree, pairwise coprime."""
    f = poly_monic(f, field)
    if poly_degree(f) <= 0:
        return []
    p = field.characteristic
    df = poly_derivative(f, field)
    if poly_degree(df) < 0:
        # char p and f = u(x^p): take the p-th root and scale multiplicities
        if p == 0:
            raise AssertionError("zero derivative of nonconstant poly in char 0")
        root = tuple(f[i] for i in range(0, len(f), p))
        return [(g, k * p) for g, k in squarefree_decomposition(root, field)]
    out = []
    # Yun's algorithm; in char p the leftover gcd collects p-th powers
    a = poly_gcd(f, df, field)
    b, _ = poly_divmod(f, a, field)
    c, _ = poly_divmod(df, a, field)
    d = poly_add(c, tuple(-x for x in poly_derivative(b, field)), field)
    k = 1
    while poly_degree(b) > 0:
        g = poly_gcd(b, d, field)
        if poly_degree(g) > 0:
            out.append((g, k))
        b, _ = poly_divmod(b, g, field)
        c, _ = poly_divmod(d, g, field)
        d = poly_add(c, tuple(-x for x in poly_derivative(b, field)), field)
        k += 1
    if p > 0:
        rem = f
        for g, kk in out:
            for _ in range(kk):
                rem, _ = poly_divmod(rem, g, field)
        if poly_degree(rem) > 0:
            out.extend((g, k * p) for g, k in squarefree_decomposition(rem, field))
    return out


def _integer_divisors(n: int):
    n = abs(n)
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def rational_roots(f, field):
    """Roots of f in the base field (exhaustive for small prime fields)."""
    f = poly_trim(f, field)
    if field.characteristic > 0:
        p = field.characteristic
        if p > 10000:
            return []
        roots = []
        for v in range(p):
            x = FpElement(v, p)
            acc = field.zero
            for c in reversed(f):
                acc = acc * x + c
            if not acc:
                roots.append(x)
        return roots
    # rational root theorem on the integer-cleared polynomial
    from math import lcm
    roots = []
    g = list(f)
    zero = Fraction(0)
    while g and not g[0]:
        if zero not in roots:
            roots.append(zero)
        g = g[1:]
    if poly_degree(tuple(g)) <= 0:
        return sorted(roots)
    den = lcm(*[c.denominator for c in g]) if len(g) > 1 else g[0].denominator
    ints = [int(c * den) for c in g]
    lead, const = ints[-1], ints[0]
    cands = set()
    for pnum in _integer_divisors(const):
        for qden in _integer_divisors(lead):
            cands.add(Fraction(pnum, qden))
            cands.add(Fraction(-pnum, qden))
    for r in sorted(cands):
        acc = Fraction(0)
        for c in reversed(g):
            acc = acc * r + c
        if not acc and r not in roots:
            roots.append(r)
    return sorted(roots)


def coprime_split(m: Matrix):
    """Split K^n into invariant subspaces along coprime factors of min poly.

    Returns [(factor, basis)] where the factors are pairwise coprime with
    product the minimal polynomial and basis columns span ker factor(m).
    Factor granularity: squarefree decomposition refined by roots found in
    the base field.
    """
    if m.nrows != m.ncols:
        raise ValueError("coprime_split needs a square matrix")
    field = m.field
    if m.nrows == 0:
        return []
    mu = minimal_polynomial(m)
    pieces = []
    for g, k in squarefree_decomposition(mu, field):
        rest = g
        for r in rational_roots(g, field):
            lin = (-r, field.one)
            pieces.append(_poly_power(lin, k, field))
            rest, _ = poly_divmod(rest, lin, field)
        if poly_degree(rest) > 0:
            pieces.append(_poly_power(poly_monic(rest, field), k, field))
    out = []
    for f in pieces:
        basis = kernel_basis(poly_eval_matrix(f, m))
        out.append((f, basis))
    return out


def _poly_power(f, k, field):
    acc = (field.one,)
    for _ in range(k):
        acc = poly_mul(acc, f, field)
    return acc
