"""Graded matrix algebras: building blocks, products, coarsenings and checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import scalars as S
from .groups import DirectProduct, Element, FinAbelianGroup, GroupError, GroupHom, format_element
from .matrices import (MatrixExact, SingularMatrix, Subspace, algebra_dim, concat_vectors, lin_comb,
                       real_kernel)


class GradingError(ValueError):
    code = "invalid-grading"


class GradedMatrixAlgebra:
    """A matrix algebra over R, C or H split into homogeneous components.

    ``components`` maps a degree in ``group`` to a real basis of that
    component.  Degrees with an empty basis are dropped.  A graded
    subalgebra (e.g. a centralizer) uses the same class with ``full=False``.
    """

    def __init__(self, kind: str, n: int, group: FinAbelianGroup,
                 components: Mapping[Element, Sequence[MatrixExact]], full: bool = True):
        if kind not in S.KINDS:
            raise GradingError(f"unknown kind {kind!r}")
        comps = {}
        for t, basis in components.items():
            group.check(t)
            basis = tuple(basis)
            for m in basis:
                if m.kind != kind or m.n != n:
                    raise GradingError(f"component {format_element(t)} holds a {m.kind} {m.n}x{m.n} matrix")
            if basis:
                comps[t] = basis
        self.kind = kind
        self.n = n
        self.group = group
        self.components = dict(sorted(comps.items()))
        self.full = full
        self._spaces: dict = {}

    @property
    def support(self) -> tuple[Element, ...]:
        return tuple(self.components)

    def component(self, t: Element) -> tuple[MatrixExact, ...]:
        return self.components.get(t, ())

    @property
    def dim(self) -> int:
        return algebra_dim(self.kind, self.n)

    @property
    def component_dim(self) -> int | None:
        dims = {len(b) for b in self.components.values()}
        return dims.pop() if len(dims) == 1 else None

    def space(self, t: Element) -> Subspace:
        sp = self._spaces.get(t)
        if sp is None:
            sp = Subspace(m.real_vector() for m in self.component(t))
            self._spaces[t] = sp
        return sp

    def identity(self) -> MatrixExact:
        return MatrixExact.identity(self.kind, self.n)

    def degree_of(self, m: MatrixExact) -> Element | None:
        """Degree of a nonzero homogeneous element, else None."""
        v = m.real_vector()
        if not v:
            return None
        for t in self.components:
            if self.space(t).contains(v):
                return t
        return None

    def representative(self, t: Element) -> MatrixExact:
        return self.components[t][0]

    def __repr__(self):
        return (f"GradedMatrixAlgebra({self.kind}, n={self.n}, group={self.group}, "
                f"support={len(self.components)}, dims={self.component_dim})")


# ---------------------------------------------------------------------------
# building blocks

def _m(kind, rows):
    return MatrixExact.from_rows(kind, rows)


def _blocks():
    R, C, H = "R", "C", "H"
    I2 = _m(R, [[1, 0], [0, 1]])
    X = _m(R, [[0, 1], [1, 0]])
    Y = _m(R, [[-1, 0], [0, 1]])
    Z = _m(R, [[0, -1], [1, 0]])
    cI = _m(C, [[1, 0], [0, 1]])
    wd = _m(C, [["w", 0], [0, "-w"]])
    iI = _m(C, [["w2", 0], [0, "w2"]])
    w3d = _m(C, [["w3", 0], [0, "-w3"]])
    cX = _m(C, [[0, 1], [1, 0]])
    aw = _m(C, [[0, "-w"], ["w", 0]])
    ai = _m(C, [[0, "w2"], ["w2", 0]])
    aw3 = _m(C, [[0, "-w3"], ["w3", 0]])
    q = {s: _m(H, [[s]]) for s in ("1", "i", "j", "k")}
    z22 = FinAbelianGroup(2)
    z2 = FinAbelianGroup(1)
    return {
        "H1": (H, 1, z22, {(0, 0): [q["1"]], (1, 0): [q["i"]], (0, 1): [q["j"]], (1, 1): [q["k"]]}),
        "M2R1": (R, 2, z22, {(0, 0): [I2], (1, 0): [X], (0, 1): [Y], (1, 1): [Z]}),
        "C1": (C, 1, z2, {(0,): [_m(C, [[1]])], (1,): [_m(C, [["w2"]])]}),
        "M2C1": (C, 2, FinAbelianGroup(1, 1), {
            (0, 0): [cI], (0, 1): [wd], (0, 2): [iI], (0, 3): [w3d],
            (1, 0): [cX], (1, 1): [aw], (1, 2): [ai], (1, 3): [aw3]}),
        "H2": (H, 1, z2, {(0,): [q["1"], q["i"]], (1,): [q["j"], q["k"]]}),
        "M2R2": (R, 2, z2, {(0,): [I2, Z], (1,): [X, Y]}),
        "M2C2": (C, 2, FinAbelianGroup(0, 1), {
            (0,): [cI, ai], (1,): [wd, aw3], (2,): [iI, cX], (3,): [w3d, aw]}),
        # trivially graded division algebras, used as tensor factors
        "H0": (H, 1, FinAbelianGroup(0), {(): [q["1"], q["i"], q["j"], q["k"]]}),
        "R0": (R, 1, FinAbelianGroup(0), {(): [_m(R, [[1]])]}),
        "C0": (C, 1, FinAbelianGroup(0), {(): [_m(C, [[1]]), _m(C, [["w2"]])]}),
    }


BLOCK_NAMES = ("H1", "M2R1", "C1", "M2C1", "H2", "M2R2", "M2C2")
EXTRA_BLOCKS = ("H0", "R0", "C0")
_BLOCK_CACHE: dict = {}


def build_block(name: str) -> GradedMatrixAlgebra:
    if not _BLOCK_CACHE:
        _BLOCK_CACHE.update(_blocks())
    if name not in _BLOCK_CACHE:
        raise GradingError(f"unknown block {name!r}; expected one of {', '.join(BLOCK_NAMES + EXTRA_BLOCKS)}")
    kind, n, group, comps = _BLOCK_CACHE[name]
    return GradedMatrixAlgebra(kind, n, group, comps)


# ---------------------------------------------------------------------------
# tensor products

def _quat_left_right(p, q):
    """Real 4x4 matrix (raw Q(sqrt2) pairs, row-major) of x -> p x conj(q)."""
    units = [(1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 0, 1, 0)]
    qc = S.h_conj(q)
    cols = [S.h_mul(S.h_mul(p, u), qc) for u in units]
    return [[cols[c][2 * r:2 * r + 2] for c in range(4)] for r in range(4)]


def hh_realize(a: MatrixExact, b: MatrixExact) -> MatrixExact:
    """M_a(H) (x) M_b(H) -> M_4ab(R) via p (x) q -> (x -> p x conj(q))."""
    na, nb = a.n, b.n
    n = 4 * na * nb
    out = [(0, 0)] * (n * n)
    for i in range(na):
        for j in range(na):
            p = a.e[i * na + j]
            if not any(p):
                continue
            for k in range(nb):
                for l in range(nb):
                    q = b.e[k * nb + l]
                    if not any(q):
                        continue
                    blk = _quat_left_right(p, q)
                    r0 = (i * nb + k) * 4
                    c0 = (j * nb + l) * 4
                    for r in range(4):
                        for c in range(4):
                            out[(r0 + r) * n + c0 + c] = tuple(blk[r][c])
    return MatrixExact("R", n, out)


def quaternion_to_complex(a: MatrixExact) -> MatrixExact:
    """M_a(H) -> M_2a(C), q = z1 + z2 j -> [[z1, z2], [-conj z2, conj z1]]."""
    na = a.n
    n = 2 * na
    out = [None] * (n * n)
    for i in range(na):
        for j in range(na):
            w, x, y, z = (a.e[i * na + j][2 * s:2 * s + 2] for s in range(4))
            z1 = S.c8_from_re_im(w, x)
            z2 = S.c8_from_re_im(y, z)
            blk = [[z1, z2], [S.raw_neg(S.c8_conj(z2)), S.c8_conj(z1)]]
            for r in range(2):
                for c in range(2):
                    out[(2 * i + r) * n + 2 * j + c] = blk[r][c]
    return MatrixExact("C", n, out)


def tensor_kind(k1: str, k2: str) -> str:
    if k1 == "R":
        return k2
    if k2 == "R":
        return k1
    if k1 == "H" and k2 == "H":
        return "R"
    if {k1, k2} == {"H", "C"}:
        return "C"
    raise GradingError(f"unsupported kind pair ({k1},{k2}): C (x) C is not simple")


def tensor_matrices(a: MatrixExact, b: MatrixExact) -> MatrixExact:
    tensor_kind(a.kind, b.kind)
    if a.kind == "H" and b.kind == "H":
        return hh_realize(a, b)
    if a.kind == "H" and b.kind == "C":
        return quaternion_to_complex(a).kron(b)
    if a.kind == "C" and b.kind == "H":
        return a.kron(quaternion_to_complex(b))
    return a.kron(b)


def product_grading(a: GradedMatrixAlgebra, b: GradedMatrixAlgebra) -> GradedMatrixAlgebra:
    kind = tensor_kind(a.kind, b.kind)
    try:
        dp = DirectProduct(a.group, b.group)
    except GroupError as exc:
        raise GradingError(str(exc)) from exc
    comps = {}
    for g, ba in a.components.items():
        for h, bb in b.components.items():
            comps[dp.pair(g, h)] = [tensor_matrices(x, y) for x in ba for y in bb]
    n = next(iter(comps.values()))[0].n
    return GradedMatrixAlgebra(kind, n, dp.group, comps)


def tensor_product(algebras: Sequence[GradedMatrixAlgebra]) -> GradedMatrixAlgebra:
    if not algebras:
        return build_block("R0")
    acc = algebras[0]
    for b in algebras[1:]:
        acc = product_grading(acc, b)
    return acc


def coarsen_along_hom(a: GradedMatrixAlgebra, phi: GroupHom) -> GradedMatrixAlgebra:
    if phi.source != a.group:
        raise GradingError(f"homomorphism source {phi.source} is not the grading group {a.group}")
    comps: dict = {}
    for t, basis in a.components.items():
        comps.setdefault(phi(t), []).extend(basis)
    return GradedMatrixAlgebra(a.kind, a.n, phi.target, comps, full=a.full)


def relabel_degrees(a: GradedMatrixAlgebra, mapping) -> GradedMatrixAlgebra:
    """Move each component to mapping(t); mapping must be injective on the support."""
    comps = {}
    for t, basis in a.components.items():
        u = mapping(t)
        if u in comps:
            raise GradingError("relabeling is not injective on the support")
        comps[u] = basis
    group = getattr(mapping, "target", a.group)
    return GradedMatrixAlgebra(a.kind, a.n, group, comps, full=a.full)


# ---------------------------------------------------------------------------
# validation

@dataclass
class GradingReport:
    ok: bool
    violations: list = field(default_factory=list)
    products_checked: int = 0

    def __bool__(self):
        return self.ok

    def first(self) -> str:
        return self.violations[0] if self.violations else ""


def check_grading(a: GradedMatrixAlgebra, max_violations: int = 10) -> GradingReport:
    """Direct-sum decomposition plus D_g D_h in D_gh for all basis pairs."""
    v: list[str] = []
    grp = a.group
    e = grp.identity
    total = Subspace()
    for t, basis in a.components.items():
        if a.space(t).dim != len(basis):
            v.append(f"component {format_element(t)}: basis is linearly dependent")
        for m in basis:
            total.add(m.real_vector())
    expected = sum(len(b) for b in a.components.values())
    if total.dim != expected:
        v.append("components are not independent: the sum is not direct")
    if a.full and total.dim != a.dim:
        v.append(f"components span dimension {total.dim}, algebra has dimension {a.dim}")
    if e not in a.components or not a.space(e).contains(a.identity().real_vector()):
        v.append("identity is not in the neutral component")
    checked = 0
    items = list(a.components.items())
    for g, bg in items:
        for h, bh in items:
            gh = grp.mul(g, h)
            for i, x in enumerate(bg):
                for j, y in enumerate(bh):
                    checked += 1
                    p = x.matmul(y).real_vector()
                    if not p:
                        continue
                    if gh not in a.components or not a.space(gh).contains(p):
                        v.append(f"product of component {format_element(g)}[{i}] and "
                                 f"{format_element(h)}[{j}] leaves component {format_element(gh)}")
                        if len(v) >= max_violations:
                            return GradingReport(False, v, checked)
    return GradingReport(not v, v, checked)


@dataclass
class NeutralKind:
    tag: str  # "R", "C" or "H"
    J: MatrixExact | None = None
    J_square: tuple | None = None  # real c with J^2 = c I (c = -1 when normalizable)
    triple: tuple | None = None  # (u, v, w) pure quaternion units of D_e, squares negative


@dataclass
class DivisionReport:
    ok: bool
    neutral: NeutralKind | None
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _neutral_kind(a: GradedMatrixAlgebra, violations: list) -> NeutralKind | None:
    e = a.group.identity
    de = a.component(e)
    I = a.identity()
    if not de or not a.space(e).contains(I.real_vector()):
        violations.append("identity is not in the neutral component")
        return None
    d = len(de)
    if d == 1:
        return NeutralKind("R")
    if d == 2:
        y = next(m for m in de if not Subspace([I.real_vector()]).contains(m.real_vector()))
        sp = Subspace([I.real_vector(), y.real_vector()])
        co = sp.coordinates(y.matmul(y).real_vector())
        if co is None:
            violations.append("neutral component is not closed under squaring")
            return None
        p, q = co.get(0, (0, 0)), co.get(1, (0, 0))
        half_q = S.rq_mul(q, (S.mpq(1, 2), 0))
        J = y - I.scale_real(half_q)
        c = S.rq_add(p, S.rq_mul(half_q, half_q))  # J^2 = c I
        if not (c[0] or c[1]) or S.rq_sign(c) > 0:
            violations.append("neutral component of dimension 2 contains zero divisors (J^2 is not negative)")
            return None
        root = S.rq_sqrt(S.rq_neg(c))
        if root is not None:
            J = J.scale_real(S.rq_inv(root))
            c = (-1, 0)
        return NeutralKind("C", J, c)
    if d == 4:
        trI = I.real_trace()
        pure = []
        for m in de:
            r = S.rq_mul(m.real_trace(), S.rq_inv(trI))
            x = m - I.scale_real(r)
            if not x.is_zero():
                pure.append(x)
        if not pure:
            violations.append("neutral component has no trace-zero part")
            return None
        u = pure[0]
        cu = u.matmul(u).real_scalar_value()
        if cu is None or not (cu[0] or cu[1]) or S.rq_sign(cu) > 0:
            violations.append("neutral component: a trace-zero element does not square to a negative scalar")
            return None
        v = None
        for x in pure[1:]:
            s = (u.matmul(x) + x.matmul(u)).real_scalar_value()
            if s is None:
                violations.append("neutral component: trace-zero elements do not anticommute up to scalars")
                return None
            lam = S.rq_mul(s, S.rq_inv(S.rq_mul((2, 0), cu)))  # x - lam u anticommutes with u
            cand = x - u.scale_real(lam)
            if not cand.is_zero():
                v = cand
                break
        if v is None:
            violations.append("neutral component of dimension 4 has a 1-dimensional trace-zero part")
            return None
        w = u.matmul(v)
        squares = []
        for x in (u, v, w):
            c = x.matmul(x).real_scalar_value()
            if c is None or not (c[0] or c[1]) or S.rq_sign(c) > 0:
                violations.append("neutral component of dimension 4 is not a quaternion division algebra")
                return None
            squares.append(c)
        if Subspace(m.real_vector() for m in (I, u, v, w)).dim != 4:
            violations.append("neutral component of dimension 4 is not spanned by a quaternion basis")
            return None
        return NeutralKind("H", triple=(u, v, w))
    violations.append(f"neutral component has dimension {d}, expected 1, 2 or 4")
    return None


def check_division_grading(a: GradedMatrixAlgebra, grading_checked: bool = False) -> DivisionReport:
    violations: list[str] = []
    if not grading_checked:
        rep = check_grading(a)
        if not rep.ok:
            return DivisionReport(False, None, rep.violations)
    nk = _neutral_kind(a, violations)
    if nk is None:
        return DivisionReport(False, None, violations)
    e = a.group.identity
    de = a.component(e)
    d = len(de)
    for t, basis in a.components.items():
        if len(basis) != d:
            violations.append(f"component {format_element(t)} has dimension {len(basis)}, neutral has {d}")
            continue
        x = basis[0]
        try:
            x.inverse()
        except SingularMatrix as exc:
            violations.append(f"component {format_element(t)}: element 0 is not invertible ({exc})")
            continue
        if Subspace((b.matmul(x)).real_vector() for b in de).dim != d:
            violations.append(f"component {format_element(t)} is not D_e times one element")
    return DivisionReport(not violations, nk, violations)


# ---------------------------------------------------------------------------
# centralizers

def commutant_basis(basis: Sequence[MatrixExact], elems: Sequence[MatrixExact],
                    sign: int = 1) -> list[MatrixExact]:
    """Elements d of span(basis) with s d = sign * d s for every s in elems."""
    if not basis:
        return []
    if not elems:
        return list(basis)
    width = basis[0].real_dim
    images = []
    for x in basis:
        parts = []
        for s in elems:
            c = s.matmul(x) - x.matmul(s) if sign == 1 else s.matmul(x) + x.matmul(s)
            parts.append(c.real_vector())
        images.append(concat_vectors(parts, width))
    out = []
    for rel in real_kernel(images):
        coeffs = [rel.get(i, (0, 0)) for i in range(len(basis))]
        out.append(lin_comb(coeffs, basis))
    return out


def centralizer(a: GradedMatrixAlgebra, elems: Sequence[MatrixExact]) -> GradedMatrixAlgebra:
    comps = {t: commutant_basis(b, elems) for t, b in a.components.items()}
    return GradedMatrixAlgebra(a.kind, a.n, a.group, comps, full=False)


def trivial_grading(kind: str, n: int, basis: Sequence[MatrixExact] | None = None) -> GradedMatrixAlgebra:
    """Whole algebra in degree e of the trivial group (standard real basis)."""
    if basis is None:
        basis = []
        for idx in range(n * n):
            for k in range(S.REAL_DIM[kind]):
                vec = {idx * S.REAL_DIM[kind] + k: (1, 0)}
                basis.append(MatrixExact.from_real_vector(kind, n, vec))
    return GradedMatrixAlgebra(kind, n, FinAbelianGroup(0), {(): basis})


def degree_changed(a: GradedMatrixAlgebra, moves: Mapping[Element, Element]) -> GradedMatrixAlgebra:
    """Copy with some components moved to other degrees (components at a shared target merge)."""
    comps: dict = {}
    for t, basis in a.components.items():
        comps.setdefault(moves.get(t, t), []).extend(basis)
    return GradedMatrixAlgebra(a.kind, a.n, a.group, comps, full=a.full)


def conjugate_grading(a: GradedMatrixAlgebra, p: MatrixExact) -> GradedMatrixAlgebra:
    """Apply the inner automorphism x -> P x P^-1 to every component."""
    pinv = p.inverse()
    comps = {t: [p.matmul(m).matmul(pinv) for m in b] for t, b in a.components.items()}
    return GradedMatrixAlgebra(a.kind, a.n, a.group, comps, full=a.full)
