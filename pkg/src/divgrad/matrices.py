"""Exact matrices over R, C, H and real-linear algebra on their coordinates.

Entries are raw scalar tuples (see ``scalars``).  Every entry that occurs has
real coordinates in Q(sqrt2), so real spans, ranks and kernels are computed
exactly over Q(sqrt2) on those coordinates.  A plain Q-flattening would
overcount: I and sqrt2*I are Q-independent but R-dependent.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from . import scalars as S
from .scalars import (REAL_DIM, qnorm, raw_add, raw_inv, raw_mul, raw_neg, raw_one, raw_real_coords,
                      raw_from_real_coords, raw_real_scale, raw_zero, rq_inv, rq_mul)


class MatrixError(ValueError):
    code = "matrix"


class SingularMatrix(MatrixError):
    def __init__(self, msg, stage):
        super().__init__(msg)
        self.stage = stage


def _to_raw(kind, x):
    if isinstance(x, S._Exact):
        if x.kind != kind:
            raise S.KindMismatch(f"entry of kind {x.kind} in a {kind} matrix")
        return x.coeffs
    if isinstance(x, S.RATIONAL_TYPES):
        return (qnorm(x),) + (0,) * (len(raw_zero(kind)) - 1)
    if isinstance(x, str):
        return S.scalar_parse(x, kind).coeffs
    raise TypeError(f"cannot use {x!r} as a matrix entry")


class MatrixExact:
    __slots__ = ("kind", "n", "e", "_hash")

    def __init__(self, kind: str, n: int, entries: Sequence):
        if kind not in S.KINDS:
            raise MatrixError(f"unknown kind {kind!r}")
        if len(entries) != n * n:
            raise MatrixError(f"{n}x{n} matrix needs {n * n} entries, got {len(entries)}")
        self.kind = kind
        self.n = n
        self.e = tuple(entries)
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, kind: str, rows) -> "MatrixExact":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise MatrixError("matrix must be square")
        return cls(kind, n, [_to_raw(kind, x) for r in rows for x in r])

    @classmethod
    def identity(cls, kind: str, n: int) -> "MatrixExact":
        z, o = raw_zero(kind), raw_one(kind)
        return cls(kind, n, [o if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, kind: str, n: int) -> "MatrixExact":
        return cls(kind, n, [raw_zero(kind)] * (n * n))

    @classmethod
    def scalar(cls, kind: str, n: int, c) -> "MatrixExact":
        c = _to_raw(kind, c)
        z = raw_zero(kind)
        return cls(kind, n, [c if i == j else z for i in range(n) for j in range(n)])

    # access --------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return S.CLASS_OF[self.kind]._raw(self.e[i * self.n + j])

    def rows(self):
        cls = S.CLASS_OF[self.kind]
        n = self.n
        return [[cls._raw(self.e[i * n + j]) for j in range(n)] for i in range(n)]

    def is_zero(self) -> bool:
        return not any(any(c) for c in self.e)

    # arithmetic ----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, MatrixExact):
            raise TypeError("expected a MatrixExact")
        if other.kind != self.kind:
            raise S.KindMismatch(f"cannot combine {self.kind} and {other.kind} matrices")
        if other.n != self.n:
            raise MatrixError(f"size mismatch {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        return MatrixExact(self.kind, self.n, [raw_add(x, y) for x, y in zip(self.e, other.e)])

    def __sub__(self, other):
        self._check(other)
        return MatrixExact(self.kind, self.n, [S.raw_sub(x, y) for x, y in zip(self.e, other.e)])

    def __neg__(self):
        return MatrixExact(self.kind, self.n, [raw_neg(x) for x in self.e])

    def __mul__(self, other):
        if isinstance(other, MatrixExact):
            return self.matmul(other)
        c = _to_raw(self.kind, other)
        return MatrixExact(self.kind, self.n, [raw_mul(self.kind, x, c) for x in self.e])

    def __rmul__(self, other):
        c = _to_raw(self.kind, other)
        return MatrixExact(self.kind, self.n, [raw_mul(self.kind, c, x) for x in self.e])

    def matmul(self, other: "MatrixExact") -> "MatrixExact":
        self._check(other)
        n, kind = self.n, self.kind
        mul = S._MUL[kind]
        width = len(raw_zero(kind))
        a, b = self.e, other.e
        # sparse row-times-matrix; entries of the constructions are mostly zero
        bnz = [[(j, b[k * n + j]) for j in range(n) if any(b[k * n + j])] for k in range(n)]
        out = []
        for i in range(n):
            acc = [None] * n
            for k in range(n):
                aik = a[i * n + k]
                if not any(aik):
                    continue
                for j, bkj in bnz[k]:
                    p = mul(aik, bkj)
                    acc[j] = p if acc[j] is None else tuple(x + y for x, y in zip(acc[j], p))
            out.extend(tuple(qnorm(v) for v in c) if c is not None else (0,) * width for c in acc)
        return MatrixExact(kind, n, out)

    def scale_real(self, r) -> "MatrixExact":
        """Multiply by a real number r given as a Q(sqrt2) pair."""
        return MatrixExact(self.kind, self.n, [raw_real_scale(self.kind, x, r) for x in self.e])

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = MatrixExact.identity(self.kind, self.n)
        base = self
        while k:
            if k & 1:
                out = out.matmul(base)
            base = base.matmul(base)
            k >>= 1
        return out

    def kron(self, other: "MatrixExact") -> "MatrixExact":
        """Kronecker product; a real factor is embedded into the other's kind."""
        if self.kind == other.kind:
            kind = self.kind
            f = lambda x, y: raw_mul(kind, x, y)  # noqa: E731
        elif self.kind == "R":
            kind = other.kind
            f = lambda x, y: raw_real_scale(kind, y, x)  # noqa: E731
        elif other.kind == "R":
            kind = self.kind
            f = lambda x, y: raw_real_scale(kind, x, y)  # noqa: E731
        else:
            raise S.KindMismatch(f"no Kronecker product for kinds {self.kind} and {other.kind}")
        n1, n2 = self.n, other.n
        n = n1 * n2
        out = [None] * (n * n)
        for i1 in range(n1):
            for j1 in range(n1):
                x = self.e[i1 * n1 + j1]
                for i2 in range(n2):
                    row = (i1 * n2 + i2) * n
                    for j2 in range(n2):
                        out[row + j1 * n2 + j2] = f(x, other.e[i2 * n2 + j2])
        return MatrixExact(kind, n, out)

    def inverse(self) -> "MatrixExact":
        """Gauss-Jordan with left row operations; valid over the skew field H."""
        n, kind = self.n, self.kind
        a = [list(self.e[i * n:(i + 1) * n]) for i in range(n)]
        inv = [[raw_one(kind) if i == j else raw_zero(kind) for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if any(a[r][c])), None)
            if piv is None:
                raise SingularMatrix(f"singular matrix: no pivot in column {c}", stage=c)
            a[c], a[piv] = a[piv], a[c]
            inv[c], inv[piv] = inv[piv], inv[c]
            p = raw_inv(kind, a[c][c])
            a[c] = [raw_mul(kind, p, x) for x in a[c]]
            inv[c] = [raw_mul(kind, p, x) for x in inv[c]]
            for r in range(n):
                if r != c and any(a[r][c]):
                    m = a[r][c]
                    a[r] = [S.raw_sub(x, raw_mul(kind, m, y)) for x, y in zip(a[r], a[c])]
                    inv[r] = [S.raw_sub(x, raw_mul(kind, m, y)) for x, y in zip(inv[r], inv[c])]
        return MatrixExact(kind, n, [x for row in inv for x in row])

    def is_invertible(self) -> bool:
        try:
            self.inverse()
        except SingularMatrix:
            return False
        return True

    def scalar_value(self):
        """c if self == c*I (raw scalar), else None."""
        n = self.n
        c = self.e[0]
        for i in range(n):
            for j in range(n):
                x = self.e[i * n + j]
                if i == j:
                    if x != c:
                        return None
                elif any(x):
                    return None
        return c

    def real_scalar_value(self):
        """r (a Q(sqrt2) pair) if self == r*I with r real, else None."""
        c = self.scalar_value()
        if c is None:
            return None
        coords = raw_real_coords(self.kind, c)
        if any(any(x) for x in coords[1:]):
            return None
        return tuple(coords[0])

    def real_trace(self):
        """Real part of the trace, as a Q(sqrt2) pair."""
        acc = (0, 0)
        for i in range(self.n):
            acc = S.rq_add(acc, raw_real_coords(self.kind, self.e[i * self.n + i])[0])
        return acc

    def ratio_to(self, other: "MatrixExact"):
        """Scalar lam with self == lam * other (left multiple), or None."""
        self._check(other)
        kind = self.kind
        for x, y in zip(self.e, other.e):
            if any(y):
                lam = raw_mul(kind, x, raw_inv(kind, y))
                break
        else:
            return raw_zero(kind) if self.is_zero() else None
        lam_m = MatrixExact.scalar(kind, self.n, S.CLASS_OF[kind]._raw(lam))
        return lam if lam_m.matmul(other) == self else None

    # comparison ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, MatrixExact):
            return NotImplemented
        return self.kind == other.kind and self.n == other.n and self.e == other.e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self.n, self.e))
        return self._hash

    def __repr__(self):
        rows = "; ".join(", ".join(S.format_raw(self.kind, self.e[i * self.n + j]) for j in range(self.n))
                         for i in range(self.n))
        return f"MatrixExact({self.kind}, [{rows}])"

    # real coordinates ------------------------------------------------------
    def real_vector(self) -> dict:
        """Sparse real coordinates: index -> Q(sqrt2) pair (nonzero only)."""
        d = REAL_DIM[self.kind]
        out = {}
        for idx, x in enumerate(self.e):
            if not any(x):
                continue
            for k, c in enumerate(raw_real_coords(self.kind, x)):
                if c[0] or c[1]:
                    out[idx * d + k] = tuple(c)
        return out

    @classmethod
    def from_real_vector(cls, kind: str, n: int, vec: dict) -> "MatrixExact":
        d = REAL_DIM[kind]
        out = []
        for idx in range(n * n):
            coords = [vec.get(idx * d + k, (0, 0)) for k in range(d)]
            out.append(raw_from_real_coords(kind, coords))
        return cls(kind, n, out)

    @property
    def real_dim(self) -> int:
        return self.n * self.n * REAL_DIM[self.kind]


def algebra_dim(kind: str, n: int) -> int:
    return n * n * REAL_DIM[kind]


def kron(a: MatrixExact, b: MatrixExact) -> MatrixExact:
    return a.kron(b)


def lin_comb(coeffs: Sequence, mats: Sequence[MatrixExact]) -> MatrixExact:
    """sum r_i M_i with real coefficients r_i (Q(sqrt2) pairs)."""
    if not mats:
        raise MatrixError("empty combination")
    vec: dict = {}
    for r, m in zip(coeffs, mats):
        if not (r[0] or r[1]):
            continue
        for k, v in m.real_vector().items():
            vec[k] = S.rq_add(vec.get(k, (0, 0)), rq_mul(r, v))
    vec = {k: v for k, v in vec.items() if v[0] or v[1]}
    return MatrixExact.from_real_vector(mats[0].kind, mats[0].n, vec)


# ---------------------------------------------------------------------------
# linear algebra over Q(sqrt2) on sparse vectors

def _axpy(y: dict, a, x: dict) -> None:
    """y -= a * x in place."""
    for k, v in x.items():
        cur = y.get(k)
        p = rq_mul(a, v)
        nv = (qnorm(cur[0] - p[0]), qnorm(cur[1] - p[1])) if cur is not None else (-p[0], -p[1])
        if nv[0] or nv[1]:
            y[k] = nv
        else:
            y.pop(k, None)


class Subspace:
    """Incremental echelon basis of a real subspace, tracking generator combinations.

    Each stored row is (pivot, vector, combo) where vector has value 1 at its
    pivot and 0 at every earlier pivot, and ``vector == sum combo[i] * gen_i``.
    """

    def __init__(self, vectors: Iterable[dict] = ()):
        self.rows: list[tuple[int, dict, dict]] = []
        self.ngens = 0
        self.relations: list[dict] = []  # kernel of the generator map
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict):
        """(residual, combo) with residual = v - sum combo[i] * gen_i."""
        r = dict(v)
        combo: dict = {}
        for piv, vec, cmb in self.rows:
            a = r.get(piv)
            if a is None:
                continue
            _axpy(r, a, vec)
            _axpy(combo, a, cmb)
        return r, {k: (-x[0], -x[1]) for k, x in combo.items()}

    def add(self, v: dict) -> bool:
        """Append a generator; returns True if it enlarged the span."""
        idx = self.ngens
        self.ngens += 1
        r, combo = self.reduce(v)
        # residual = v - combo.gens, so as a combination: e_idx - combo
        tracked = {k: (-x[0], -x[1]) for k, x in combo.items()}
        tracked[idx] = (1, 0)
        if not r:
            self.relations.append(tracked)
            return False
        piv = min(r)
        inv = rq_inv(r[piv])
        vec = {k: rq_mul(inv, x) for k, x in r.items()}
        cmb = {k: rq_mul(inv, x) for k, x in tracked.items()}
        self.rows.append((piv, vec, cmb))
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def coordinates(self, v: dict):
        """Coefficients (generator index -> pair) expressing v, or None."""
        r, combo = self.reduce(v)
        return None if r else combo

    def basis_vectors(self) -> list[dict]:
        return [vec for _, vec, _ in self.rows]


def real_rank(mats: Iterable[MatrixExact]) -> int:
    return Subspace(m.real_vector() for m in mats).dim


def span_contains(basis: Sequence[MatrixExact], m: MatrixExact) -> bool:
    return Subspace(b.real_vector() for b in basis).contains(m.real_vector())


def real_kernel(images: Sequence[dict]) -> list[dict]:
    """Basis of {c : sum c_i images[i] = 0}, as sparse coefficient dicts."""
    return Subspace(images).relations


def concat_vectors(parts: Sequence[dict], width: int) -> dict:
    out = {}
    for k, p in enumerate(parts):
        off = k * width
        for i, v in p.items():
            out[off + i] = v
    return out


def same_span(a: Sequence[MatrixExact], b: Sequence[MatrixExact]) -> bool:
    sa = Subspace(m.real_vector() for m in a)
    if sa.dim != real_rank(b):
        return False
    return all(sa.contains(m.real_vector()) for m in b)
