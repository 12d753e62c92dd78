"""Exact dense linear algebra over the rationals and prime fields.

Everything downstream (algebra/coalgebra presentations, corings, the Morita
context, the Galois and cleft analyses) reduces to rank computations over an
exact field, so this module is deliberately self-contained: field elements,
dense matrices, canonical subspaces and quotient spaces, with no floating
point anywhere.

Rational entries are plain Python ``int`` whenever the value is integral and
``fractions.Fraction`` otherwise; both are exact and interoperate, and the
integer fast path matters because structure constants are almost always small
integers.  Prime-field entries are ints in ``[0, p)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

Scalar = Union[int, Fraction]


class ExactLAError(Exception):
    """Base error for this package's exact linear algebra layer."""


class ShapeError(ExactLAError):
    """Dimension or shape mismatch."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: the rationals (kind "Q") or a prime field (kind "Fp").

    The ground ring is restricted to fields so that every downstream check is
    a rank computation; this is a recorded scope restriction of the engine.
    """

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Q", "Fp"):
            raise ShapeError(f"unknown field kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ShapeError(f"Fp requires a prime p, got {self.p!r}")
        elif self.p is not None:
            raise ShapeError("Q admits no modulus")

    # -- element protocol -------------------------------------------------
    @property
    def zero(self) -> Scalar:
        return 0

    @property
    def one(self) -> Scalar:
        return 1

    def normalize(self, x) -> Scalar:
        """Canonical representative: reduced Fraction/int for Q, [0,p) for Fp.

        The ``type(x) is int`` fast path matters: Fraction's isinstance check
        goes through an ABC and would dominate every hot loop otherwise.
        """
        if self.kind == "Fp":
            if type(x) is int:
                return x % self.p
            if isinstance(x, Fraction):
                if x.denominator == 1:
                    return x.numerator % self.p
                return (x.numerator * pow(x.denominator, self.p - 2, self.p)) % self.p
            return x % self.p
        if type(x) is int:
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def add(self, a, b) -> Scalar:
        if self.kind == "Fp":
            return (a + b) % self.p
        return self.normalize(a + b)

    def sub(self, a, b) -> Scalar:
        if self.kind == "Fp":
            return (a - b) % self.p
        return self.normalize(a - b)

    def mul(self, a, b) -> Scalar:
        if self.kind == "Fp":
            return (a * b) % self.p
        return self.normalize(a * b)

    def neg(self, a) -> Scalar:
        if self.kind == "Fp":
            return (-a) % self.p
        return -a

    def inv(self, a) -> Scalar:
        if self.kind == "Fp":
            a %= self.p
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, self.p - 2, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.normalize(Fraction(1, 1) / Fraction(a))

    def div(self, a, b) -> Scalar:
        if self.kind == "Fp":
            return (a * self.inv(b)) % self.p
        if b == 0:
            raise ZeroDivisionError("division by 0")
        return self.normalize(Fraction(a) / Fraction(b))

    # -- serialization ----------------------------------------------------
    def scalar_to_str(self, x) -> str:
        return str(self.normalize(x))

    def scalar_from_str(self, s) -> Scalar:
        if isinstance(s, int):
            return self.normalize(s)
        if isinstance(s, str):
            return self.normalize(Fraction(s))
        raise ShapeError(f"cannot parse scalar {s!r}")

    def scalar_to_json(self, x):
        x = self.normalize(x)
        if self.kind == "Fp":
            return x
        return x if isinstance(x, int) else str(x)

    def to_json(self) -> dict:
        if self.kind == "Fp":
            return {"kind": "Fp", "p": self.p}
        return {"kind": "Q"}

    @staticmethod
    def from_json(obj: dict) -> "FieldSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ShapeError("field spec must be an object with a 'kind'")
        if obj["kind"] == "Fp":
            return FieldSpec("Fp", int(obj["p"]))
        if obj["kind"] == "Q":
            return FieldSpec("Q")
        raise ShapeError(f"unknown field kind {obj['kind']!r}")

    def random_scalar(self, rng, span: int = 5) -> Scalar:
        if self.kind == "Fp":
            return rng.randrange(self.p)
        return rng.randint(-span, span)


QQ = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("Fp", p)


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------


class DenseMatrix:
    """Immutable dense matrix over an exact field, row-major storage."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimensions")
        entries = [field.normalize(x) for x in entries]
        if len(entries) != rows * cols:
            raise ShapeError(f"need {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("DenseMatrix is immutable")

    # -- constructors -----------------------------------------------------
    @staticmethod
    def from_rows(field: FieldSpec, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "DenseMatrix":
        rows = list(rows)
        if not rows:
            return DenseMatrix(field, 0, 0 if cols is None else cols, [])
        w = len(rows[0])
        if any(len(r) != w for r in rows):
            raise ShapeError("ragged rows")
        flat = [x for r in rows for x in r]
        return DenseMatrix(field, len(rows), w, flat)

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "DenseMatrix":
        e = [0] * (n * n)
        for i in range(n):
            e[i * n + i] = 1
        return DenseMatrix(field, n, n, e)

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "DenseMatrix":
        return DenseMatrix(field, rows, cols, [0] * (rows * cols))

    @staticmethod
    def column(field: FieldSpec, vec: Sequence[Scalar]) -> "DenseMatrix":
        return DenseMatrix(field, len(vec), 1, list(vec))

    # -- access -----------------------------------------------------------
    def get(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def row_lists(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(not x for x in self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DenseMatrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, tuple(self.entries)))

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols} over {self.field.kind})"

    # -- arithmetic ---------------------------------------------------------
    def _check_same_shape(self, other: "DenseMatrix"):
        if self.rows != other.rows or self.cols != other.cols or self.field != other.field:
            raise ShapeError("shape/field mismatch")

    def add(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check_same_shape(other)
        f = self.field
        return DenseMatrix(f, self.rows, self.cols,
                           [a + b for a, b in zip(self.entries, other.entries)])

    def sub(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check_same_shape(other)
        f = self.field
        return DenseMatrix(f, self.rows, self.cols,
                           [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c: Scalar) -> "DenseMatrix":
        return DenseMatrix(self.field, self.rows, self.cols, [c * x for x in self.entries])

    def mul(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.cols != other.rows or self.field != other.field:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, m, q = self.rows, self.cols, other.cols
        out = [0] * (n * q)
        oe = other.entries
        se = self.entries
        for i in range(n):
            base = i * m
            obase = i * q
            for k in range(m):
                a = se[base + k]
                if not a:
                    continue
                rb = k * q
                for j in range(q):
                    b = oe[rb + j]
                    if b:
                        out[obase + j] += a * b
        return DenseMatrix(self.field, n, q, out)

    def apply(self, vec: Sequence[Scalar]) -> list:
        """Matrix times column vector, returned as a plain list."""
        if len(vec) != self.cols:
            raise ShapeError("vector length mismatch")
        f = self.field
        out = [0] * self.rows
        se = self.entries
        for j, v in enumerate(vec):
            if not v:
                continue
            for i in range(self.rows):
                a = se[i * self.cols + j]
                if a:
                    out[i] += a * v
        return [f.normalize(x) for x in out]

    def transpose(self) -> "DenseMatrix":
        out = [0] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j * self.rows + i] = self.entries[i * self.cols + j]
        return DenseMatrix(self.field, self.cols, self.rows, out)

    def hstack(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.rows != other.rows or self.field != other.field:
            raise ShapeError("hstack mismatch")
        rows = [self.row(i) + other.row(i) for i in range(self.rows)]
        return DenseMatrix.from_rows(self.field, rows, cols=self.cols + other.cols)

    def vstack(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.cols != other.cols or self.field != other.field:
            raise ShapeError("vstack mismatch")
        return DenseMatrix(self.field, self.rows + other.rows, self.cols,
                           self.entries + other.entries)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        f = self.field
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[f.scalar_to_json(self.get(i, j)) for j in range(self.cols)]
                        for i in range(self.rows)],
        }

    @staticmethod
    def from_json(field: FieldSpec, obj: dict) -> "DenseMatrix":
        try:
            rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"bad matrix JSON: {exc}")
        if len(entries) != rows:
            raise ShapeError("matrix JSON row count mismatch")
        parsed = []
        for r in entries:
            if len(r) != cols:
                raise ShapeError("matrix JSON col count mismatch")
            parsed.append([field.scalar_from_str(x) for x in r])
        return DenseMatrix.from_rows(field, parsed, cols=cols)


def kron(M: DenseMatrix, N: DenseMatrix) -> DenseMatrix:
    """Kronecker product; row index (i_M, i_N) -> i_M*rows(N)+i_N, same for cols."""
    if M.field != N.field:
        raise ShapeError("field mismatch")
    rows, cols = M.rows * N.rows, M.cols * N.cols
    out = [0] * (rows * cols)
    for im in range(M.rows):
        for jm in range(M.cols):
            a = M.entries[im * M.cols + jm]
            if not a:
                continue
            rbase = im * N.rows
            cbase = jm * N.cols
            for i2 in range(N.rows):
                orow = (rbase + i2) * cols + cbase
                nrow = i2 * N.cols
                for j2 in range(N.cols):
                    b = N.entries[nrow + j2]
                    if b:
                        out[orow + j2] = a * b
    return DenseMatrix(M.field, rows, cols, out)


def kron_vec(field: FieldSpec, v: Sequence[Scalar], w: Sequence[Scalar]) -> list:
    """Coordinates of v tensor w under the (i,j) -> i*len(w)+j convention."""
    out = [0] * (len(v) * len(w))
    lw = len(w)
    for i, a in enumerate(v):
        if not a:
            continue
        base = i * lw
        for j, b in enumerate(w):
            if b:
                out[base + j] = field.normalize(a * b)
    return out


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _row_reduce_q(rows: list) -> tuple:
    """Fraction-free (Bareiss-style) reduction to RREF over Q.

    Rows are scaled to integers first; forward elimination uses the Bareiss
    update with exact division by the previous pivot, rows are gcd-reduced to
    control growth, and pivots are normalized to 1 only at the very end.
    Returns (rref_rows, pivot_cols).
    """
    work = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        ir = [int(x * den) if isinstance(x, Fraction) else x * den for x in r]
        g = 0
        for x in ir:
            g = gcd(g, x)
        if g > 1:
            ir = [x // g for x in ir]
        work.append(ir)
    m = len(work)
    n = len(work[0]) if m else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if work[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        work[r], work[pr] = work[pr], work[r]
        piv_row = work[r]
        piv = piv_row[c]
        # The Bareiss update divides by the previous pivot; that division is
        # exact only while rows stay unscaled, so no gcd reduction here.
        for i in range(r + 1, m):
            row = work[i]
            f = row[c]
            if f:
                for j in range(c, n):
                    row[j] = (piv * row[j] - f * piv_row[j]) // prev
            else:
                for j in range(c, n):
                    if row[j]:
                        row[j] = (piv * row[j]) // prev
        pivots.append(c)
        prev = piv
        r += 1
        if r == m:
            break
    # back elimination, still on integer rows
    for idx in range(len(pivots) - 1, -1, -1):
        c = pivots[idx]
        prow = work[idx]
        piv = prow[c]
        for i in range(idx):
            row = work[i]
            f = row[c]
            if f:
                for j in range(n):
                    row[j] = piv * row[j] - f * prow[j]
                g = 0
                for x in row:
                    g = gcd(g, x)
                if g > 1:
                    for j in range(n):
                        row[j] //= g
    out = []
    for idx, c in enumerate(pivots):
        row = work[idx]
        piv = row[c]
        if piv == 1:
            out.append(list(row))
        else:
            out.append([QQ.normalize(Fraction(x, piv)) for x in row])
    return out, pivots


def _row_reduce_fp(rows: list, p: int) -> tuple:
    work = [[x % p for x in r] for r in rows]
    m = len(work)
    n = len(work[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if work[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        work[r], work[pr] = work[pr], work[r]
        row = work[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            for j in range(c, n):
                if row[j]:
                    row[j] = row[j] * inv % p
        for i in range(m):
            if i == r:
                continue
            f = work[i][c]
            if f:
                other = work[i]
                for j in range(c, n):
                    if row[j]:
                        other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return [work[i] for i in range(len(pivots))], pivots


def row_reduce(field: FieldSpec, rows: Iterable[Sequence[Scalar]]) -> tuple:
    """Unique reduced row echelon form of the span; returns (rows, pivot_cols)."""
    rows = [list(r) for r in rows]
    rows = [r for r in rows if any(x for x in r)]
    if not rows:
        return [], []
    if field.kind == "Fp":
        return _row_reduce_fp(rows, field.p)
    return _row_reduce_q(rows)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of k^n, held as the unique reduced-echelon basis (rows)."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, rref_rows: list, pivots: list):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = DenseMatrix.from_rows(field, rref_rows, cols=ambient_dim)
        self.pivots = list(pivots)

    @staticmethod
    def from_spanning(field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence[Scalar]]) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ShapeError("spanning vector has wrong length")
        rows, pivots = row_reduce(field, vecs)
        return Subspace(field, ambient_dim, rows, pivots)

    @staticmethod
    def zero(field: FieldSpec, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, [], [])

    @staticmethod
    def full(field: FieldSpec, ambient_dim: int) -> "Subspace":
        eye = DenseMatrix.identity(field, ambient_dim)
        return Subspace(field, ambient_dim, eye.row_lists(), list(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient_dim})"

    def reduce(self, vec: Sequence[Scalar]) -> list:
        """Remainder of vec modulo this subspace (zero iff vec is a member)."""
        f = self.field
        v = [f.normalize(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length mismatch")
        rows = self.basis
        for r, c in enumerate(self.pivots):
            coef = v[c]
            if coef:
                base = r * rows.cols
                for j in range(c, self.ambient_dim):
                    b = rows.entries[base + j]
                    if b:
                        v[j] = f.sub(v[j], f.mul(coef, b))
        return v

    def contains(self, vec: Sequence[Scalar]) -> bool:
        return all(not x for x in self.reduce(vec))

    def coords(self, vec: Sequence[Scalar]) -> list:
        """Coordinates of a member vector in the echelon basis."""
        f = self.field
        v = [f.normalize(x) for x in vec]
        out = [v[c] for c in self.pivots]
        if any(x for x in self.reduce(vec)):
            raise ExactLAError("vector is not in the subspace")
        return out

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(other.basis.row(i)) for i in range(other.dim))

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("ambient mismatch")
        return Subspace.from_spanning(
            self.field, self.ambient_dim,
            self.basis.row_lists() + other.basis.row_lists())

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("ambient mismatch")
        # rows of [B1; B2] whose kernel combos express common vectors
        b1 = self.basis
        b2 = other.basis
        stacked = b1.transpose().hstack(b2.transpose())
        ker = kernel(stacked)
        vecs = []
        for i in range(ker.dim):
            coeffs = ker.basis.row(i)[:b1.rows]
            v = [0] * self.ambient_dim
            for r, c in enumerate(coeffs):
                if c:
                    row = b1.row(r)
                    for j in range(self.ambient_dim):
                        if row[j]:
                            v[j] += c * row[j]
            vecs.append([self.field.normalize(x) for x in v])
        return Subspace.from_spanning(self.field, self.ambient_dim, vecs)


class SubspaceBuilder:
    """Incremental reduced-echelon accumulator with sparse rows.

    Used for large, very sparse generating families (balanced-tensor relation
    spans) where materializing a dense matrix would be wasteful.  Rows are
    dicts col->coeff with unit leading coefficient; the full RREF invariant is
    maintained on every insertion.
    """

    def __init__(self, field: FieldSpec, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = {}  # leading col -> {col: coeff}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce_sparse(self, vec: dict) -> dict:
        # Eliminate every pivot-column hit, smallest first.  Pivot rows carry
        # no other pivot columns (full RREF invariant), so each elimination
        # introduces only non-pivot columns and the sweep terminates.
        f = self.field
        while vec:
            hit = None
            for c in vec:
                if c in self.rows and (hit is None or c < hit):
                    hit = c
            if hit is None:
                return vec
            row = self.rows[hit]
            coef = vec[hit]
            for c, b in row.items():
                nv = f.sub(vec.get(c, 0), f.mul(coef, b))
                if nv:
                    vec[c] = nv
                else:
                    vec.pop(c, None)
        return vec

    def insert(self, vec) -> bool:
        """Insert a vector (dict or dense sequence); True if the dim grew."""
        f = self.field
        if isinstance(vec, dict):
            v = {c: f.normalize(x) for c, x in vec.items() if f.normalize(x)}
        else:
            v = {c: f.normalize(x) for c, x in enumerate(vec) if f.normalize(x)}
        v = self._reduce_sparse(v)
        if not v:
            return False
        lead = min(v)
        inv = f.inv(v[lead])
        if inv != 1:
            v = {c: f.mul(x, inv) for c, x in v.items()}
        for row in self.rows.values():
            coef = row.get(lead)
            if coef:
                for c, b in v.items():
                    nv = f.sub(row.get(c, 0), f.mul(coef, b))
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        self.rows[lead] = v
        return True

    def contains(self, vec) -> bool:
        f = self.field
        if isinstance(vec, dict):
            v = {c: f.normalize(x) for c, x in vec.items() if f.normalize(x)}
        else:
            v = {c: f.normalize(x) for c, x in enumerate(vec) if f.normalize(x)}
        return not self._reduce_sparse(v)

    def to_subspace(self) -> Subspace:
        pivots = sorted(self.rows)
        dense = []
        for lead in pivots:
            row = [0] * self.ambient_dim
            for c, x in self.rows[lead].items():
                row[c] = x
            dense.append(row)
        return Subspace(self.field, self.ambient_dim, dense, pivots)


# ---------------------------------------------------------------------------
# the operations of the module contract
# ---------------------------------------------------------------------------


def kernel(M: DenseMatrix) -> Subspace:
    """Right null space {v : Mv = 0} in canonical echelon form."""
    f = M.field
    rows, pivots = row_reduce(f, M.row_lists())
    n = M.cols
    pivset = set(pivots)
    vecs = []
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for r, c in enumerate(pivots):
            coef = rows[r][free]
            if coef:
                v[c] = f.neg(coef)
        vecs.append(v)
    return Subspace.from_spanning(f, n, vecs)


def image(M: DenseMatrix) -> Subspace:
    """Column space in canonical form."""
    return Subspace.from_spanning(M.field, M.rows, M.transpose().row_lists())


def solve(M: DenseMatrix, b: Sequence[Scalar]) -> Optional[list]:
    """One solution of Mv = b, or None; free variables are set to zero."""
    if len(b) != M.rows:
        raise ShapeError("rhs length mismatch")
    f = M.field
    aug = [M.row(i) + [f.normalize(b[i])] for i in range(M.rows)]
    rows, pivots = row_reduce(f, aug)
    n = M.cols
    for r, c in enumerate(pivots):
        if c == n:
            return None  # pivot in the augmented column: inconsistent
    v = [0] * n
    for r, c in enumerate(pivots):
        v[c] = rows[r][n]
    # rows may involve free columns; with free vars = 0 the pivot values above
    # already solve the reduced system, since RREF rows read x_c + sum = rhs.
    return [f.normalize(x) for x in v]


def solve_matrix(M: DenseMatrix, B: DenseMatrix) -> Optional[DenseMatrix]:
    """Solve M X = B column by column under the same determinism rule."""
    if B.rows != M.rows:
        raise ShapeError("rhs shape mismatch")
    cols = []
    for j in range(B.cols):
        x = solve(M, B.col(j))
        if x is None:
            return None
        cols.append(x)
    return DenseMatrix.from_rows(M.field, cols, cols=M.cols).transpose()


@dataclass
class QuotientSpace:
    """k^n / relations with an explicit projection/section pair.

    projection is (q x n), section is (n x q); projection . section = id and
    the kernel of projection is exactly the relation subspace.
    """

    ambient_dim: int
    relations: Subspace
    projection: DenseMatrix
    section: DenseMatrix

    @property
    def dim(self) -> int:
        return self.projection.rows

    @property
    def field(self) -> FieldSpec:
        return self.projection.field

    def project(self, vec: Sequence[Scalar]) -> list:
        return self.projection.apply(vec)

    def lift(self, qvec: Sequence[Scalar]) -> list:
        return self.section.apply(qvec)


def quotient(ambient_dim: int, relations: Subspace) -> QuotientSpace:
    """Quotient of k^n by a subspace, with canonical coordinates.

    Quotient coordinates are indexed by the non-pivot columns of the relation
    echelon basis; the class of e_f for a free column f maps to the f-th
    coordinate, which makes the section simply the inclusion of those e_f.
    """
    if relations.ambient_dim != ambient_dim:
        raise ShapeError("relations live in the wrong ambient space")
    f = relations.field
    free = [c for c in range(ambient_dim) if c not in set(relations.pivots)]
    qdim = len(free)
    # projection: reduce modulo relations, then read the free coordinates
    proj_rows = []
    for fc in free:
        row = [0] * ambient_dim
        row[fc] = 1
        for r, c in enumerate(relations.pivots):
            coef = relations.basis.get(r, fc)
            if coef:
                row[c] = f.neg(coef)
        proj_rows.append(row)
    projection = DenseMatrix.from_rows(f, proj_rows, cols=ambient_dim)
    sec_rows = []
    for i in range(ambient_dim):
        row = [0] * qdim
        if i in free:
            row[free.index(i)] = 1
        sec_rows.append(row)
    section = DenseMatrix.from_rows(f, sec_rows, cols=qdim)
    return QuotientSpace(ambient_dim, relations, projection, section)


# ---------------------------------------------------------------------------
# small vector helpers shared by the algebra layer
# ---------------------------------------------------------------------------


def vec_add(field: FieldSpec, v: Sequence[Scalar], w: Sequence[Scalar]) -> list:
    return [field.add(a, b) for a, b in zip(v, w)]

def vec_sub(field: FieldSpec, v: Sequence[Scalar], w: Sequence[Scalar]) -> list:
    return [field.sub(a, b) for a, b in zip(v, w)]

def vec_scale(field: FieldSpec, c: Scalar, v: Sequence[Scalar]) -> list:
    return [field.mul(c, x) for x in v]

def vec_is_zero(v: Sequence[Scalar]) -> bool:
    return all(not x for x in v)


def vector_to_json(field: FieldSpec, v: Sequence[Scalar]) -> list:
    return [field.scalar_to_json(x) for x in v]


def vector_from_json(field: FieldSpec, obj) -> list:
    if not isinstance(obj, list):
        raise ShapeError("vector JSON must be a list")
    return [field.scalar_from_str(x) for x in obj]


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, no spaces drift, canonical scalars."""
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1)
