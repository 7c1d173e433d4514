"""Dense matrices over a Laurent polynomial ring: determinants, minors and elementary ideals."""

from __future__ import annotations

from itertools import combinations, permutations

from .errors import ComputationError
from .laurent import LaurentPoly, canonicalize, divexact, gcd_poly

__all__ = [
    "RingMatrix",
    "determinant",
    "det_cofactor",
    "det_leibniz",
    "minors_gcd",
    "delete_column",
    "delete_block_column",
    "apply_action",
    "block_matrix",
    "stack_blocks",
]


class RingMatrix:
    """Immutable ``rows x cols`` matrix of :class:`LaurentPoly` sharing one coefficient ring."""

    __slots__ = ("rows", "cols", "p", "_entries")

    def __init__(self, entries, p=None, cols=None):
        rows = [list(r) for r in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        self.rows = len(rows)
        self.cols = cols
        self.p = p
        out = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
            line = []
            for x in r:
                if isinstance(x, int):
                    x = LaurentPoly.constant(x, p)
                elif x.p != p:
                    raise ValueError("entries must share the matrix coefficient ring")
                line.append(x)
            out.append(tuple(line))
        self._entries = tuple(out)

    @classmethod
    def identity(cls, n, p=None):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p, cols=n)

    @classmethod
    def zeros(cls, rows, cols, p=None):
        return cls([[0] * cols for _ in range(rows)], p, cols=cols)

    @classmethod
    def from_ints(cls, rows, p=None, power=0):
        """Lift an integer matrix, multiplying every entry by ``t^power``."""
        return cls([[LaurentPoly.monomial(c, power, p) for c in r] for r in rows], p,
                   cols=len(rows[0]) if rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self._entries[i][j]

    def row(self, i):
        return self._entries[i]

    def tolist(self):
        return [list(r) for r in self._entries]

    @property
    def shape(self):
        return self.rows, self.cols

    def is_square(self):
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and self.p == other.p and self._entries == other._entries

    def __hash__(self):
        return hash((self.shape, self.p, self._entries))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RingMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._entries, other._entries)],
                          self.p, cols=self.cols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RingMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._entries, other._entries)],
                          self.p, cols=self.cols)

    def __neg__(self):
        return RingMatrix([[-a for a in r] for r in self._entries], self.p, cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return RingMatrix([[a * other for a in r] for r in self._entries], self.p, cols=self.cols)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = LaurentPoly(None, self.p)
        out = []
        for r in self._entries:
            line = []
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(r):
                    if a:
                        b = other._entries[k][j]
                        if b:
                            acc = acc + a * b
                line.append(acc)
            out.append(line)
        return RingMatrix(out, self.p, cols=other.cols)

    __rmul__ = __mul__

    def submatrix(self, rows, cols):
        return RingMatrix([[self._entries[i][j] for j in cols] for i in rows], self.p, cols=len(cols))

    def inverse(self):
        """Inverse over the Laurent ring; the determinant must be a unit."""
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        d = determinant(self)
        if not d.is_unit():
            raise ComputationError(f"matrix is not invertible over the Laurent ring (det = {d})")
        dinv = d.unit_inverse()
        if n == 1:
            return RingMatrix([[dinv]], self.p)
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = self.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
                cof = determinant(minor)
                adj[i][j] = cof * dinv if (i + j) % 2 == 0 else -(cof * dinv)
        return RingMatrix(adj, self.p)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self._entries)
        return f"RingMatrix([{body}], p={self.p})"


def determinant(m: RingMatrix) -> LaurentPoly:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Pivots are taken as the nonzero entry of smallest degree span in the
    current column; every division is exact in the Laurent ring.
    """
    if not m.is_square():
        raise ValueError(f"determinant of a non-square {m.shape} matrix")
    n = m.rows
    p = m.p
    if n == 0:
        return LaurentPoly.constant(1, p)
    a = m.tolist()
    sign = 1
    prev = LaurentPoly.constant(1, p)
    for k in range(n - 1):
        pivot_row = None
        for i in range(k, n):
            if a[i][k] and (pivot_row is None or a[i][k].width < a[pivot_row][k].width
                            or (a[i][k].width == a[pivot_row][k].width
                                and len(a[i][k].terms) < len(a[pivot_row][k].terms))):
                pivot_row = i
        if pivot_row is None:
            return LaurentPoly(None, p)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = piv * a[i][j]
                if aik and a[k][j]:
                    num = num - aik * a[k][j]
                a[i][j] = divexact(num, prev) if num else num
            a[i][k] = LaurentPoly(None, p)
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_cofactor(m: RingMatrix) -> LaurentPoly:
    """Determinant by Laplace expansion along the first row (small matrices only)."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return LaurentPoly.constant(1, m.p)
    if n == 1:
        return m[0, 0]
    total = LaurentPoly(None, m.p)
    rest = list(range(1, n))
    for j in range(n):
        if not m[0, j]:
            continue
        minor = det_cofactor(m.submatrix(rest, [c for c in range(n) if c != j]))
        term = m[0, j] * minor
        total = total + term if j % 2 == 0 else total - term
    return total


def det_leibniz(m: RingMatrix) -> LaurentPoly:
    """Determinant as a signed sum over permutations."""
    n = m.rows
    total = LaurentPoly(None, m.p)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = LaurentPoly.constant(1, m.p)
        for i, j in enumerate(perm):
            term = term * m[i, j]
            if not term:
                break
        total = total - term if inv % 2 else total + term
    return total


def minors_gcd(m: RingMatrix, k: int) -> LaurentPoly:
    """Canonical gcd of all ``k x k`` minors; the zero polynomial if they all vanish.

    This generates the smallest principal ideal containing the ideal of
    ``k``-minors. ``k = 0`` gives 1 by the empty-minor convention.
    """
    if k < 0 or k > min(m.rows, m.cols):
        raise ValueError(f"minor size {k} out of range for a {m.shape} matrix")
    if k == 0:
        return LaurentPoly.constant(1, m.p)
    g = LaurentPoly(None, m.p)
    for rows in combinations(range(m.rows), k):
        for cols in combinations(range(m.cols), k):
            d = determinant(m.submatrix(rows, cols))
            if d:
                g = canonicalize(d) if g.is_zero() else gcd_poly(g, d)
                if g.is_constant():
                    return g
    return g


def delete_column(m: RingMatrix, j: int) -> RingMatrix:
    if not 0 <= j < m.cols:
        raise IndexError(f"column {j} out of range for {m.cols} columns")
    keep = [c for c in range(m.cols) if c != j]
    return m.submatrix(range(m.rows), keep)


def delete_block_column(m: RingMatrix, j: int, n: int) -> RingMatrix:
    """Delete the ``j``-th block of ``n`` consecutive columns."""
    if not 0 <= j < m.cols // max(n, 1):
        raise IndexError(f"block column {j} out of range")
    keep = [c for c in range(m.cols) if not n * j <= c < n * (j + 1)]
    return m.submatrix(range(m.rows), keep)


def block_matrix(blocks, p=None) -> RingMatrix:
    """Assemble a matrix from a 2D grid of equally sized square blocks."""
    if not blocks:
        return RingMatrix([], p, cols=0)
    rows = []
    for brow in blocks:
        height = brow[0].rows
        for i in range(height):
            line = []
            for b in brow:
                line.extend(b.row(i))
            rows.append(line)
    cols = sum(b.cols for b in blocks[0])
    return RingMatrix(rows, p, cols=cols)


def stack_blocks(blocks) -> RingMatrix:
    """Stack matrices vertically."""
    rows = []
    for b in blocks:
        rows.extend(b.tolist())
    return RingMatrix(rows, blocks[0].p, cols=blocks[0].cols)


def apply_action(jac, assign, n=None, p=None) -> RingMatrix:
    """Push a Fox Jacobian through a group-ring homomorphism.

    ``assign`` maps generator index -> ``n x n`` :class:`RingMatrix`.  Each
    group-ring entry becomes an ``n x n`` block, so an ``r x m`` Jacobian
    becomes an ``nr x nm`` matrix.
    """
    from .freegroup import Specializer

    spec = Specializer(assign, n=n, p=p)
    blocks = [[spec(e) for e in row] for row in jac.entries]
    if not blocks:
        return RingMatrix([], spec.p, cols=spec.n * jac.num_generators)
    return block_matrix(blocks, spec.p)
