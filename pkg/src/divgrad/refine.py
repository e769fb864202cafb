"""Structural decompositions: refinement, double centralizer, Clifford presentation."""
from __future__ import annotations

from dataclasses import dataclass

from . import scalars as S
from .classify import ClassificationError, centralizer_support, extract_mu, neutral_and_center
from .forms import SymplecticFamily, polarize, radical_and_type, symplectic_basis
from .graded import GradedMatrixAlgebra, centralizer, commutant_basis
from .groups import Element, FinAbelianGroup, GroupHom
from .matrices import MatrixExact, Subspace


class RefinementError(ClassificationError):
    code = "refine-precondition"


def refining_element(a: GradedMatrixAlgebra) -> tuple[MatrixExact, Element]:
    """Homogeneous X with X^2 central that does not commute with D_e (deterministic)."""
    d = a.component_dim
    e = a.group.identity
    if d == 4:
        I = a.identity()
        tr = I.real_trace()
        for m in a.component(e):
            x = m - I.scale_real(S.rq_mul(m.real_trace(), S.rq_inv(tr)))
            if not x.is_zero():
                return x, e
        raise RefinementError("neutral component has no trace-zero element")
    if d == 2:
        info = neutral_and_center(a)
        if info.de_is_center:
            raise RefinementError("neutral component is the centre: no proper refinement of this kind")
        de = a.component(e)
        K = set(centralizer_support(a, de))
        for t, basis in a.components.items():
            if t not in K:
                return basis[0], t
        raise RefinementError("every component commutes with the neutral component")
    raise RefinementError(f"refinement needs component dimension 2 or 4, got {d}")


def refine(a: GradedMatrixAlgebra) -> GradedMatrixAlgebra:
    """Split each component into the +1 and -1 eigenspaces of d -> X d X^-1.

    The result is graded by Z2 x G with the new coordinate first.
    """
    x, _ = refining_element(a)
    g = a.group
    big = FinAbelianGroup(g.a + 1, g.b)
    comps = {}
    for t, basis in a.components.items():
        comps[(0,) + t] = commutant_basis(basis, [x], sign=1)
        comps[(1,) + t] = commutant_basis(basis, [x], sign=-1)
    out = GradedMatrixAlgebra(a.kind, a.n, big, comps, full=a.full)
    for t in a.components:
        if len(out.component((0,) + t)) + len(out.component((1,) + t)) != len(a.components[t]):
            raise RefinementError("conjugation by X does not split a component into eigenspaces")
    return out


def projection_hom(big: FinAbelianGroup, small: FinAbelianGroup) -> GroupHom:
    """Z2 x G -> G forgetting the first coordinate."""
    gens = [small.identity] + small.generators()
    return GroupHom(big, small, gens)


def same_components(a: GradedMatrixAlgebra, b: GradedMatrixAlgebra) -> bool:
    if a.support != b.support:
        return False
    for t in a.support:
        sa = a.space(t)
        if sa.dim != b.space(t).dim or not all(sa.contains(m.real_vector()) for m in b.component(t)):
            return False
    return True


# ---------------------------------------------------------------------------

@dataclass
class DoubleCentralizerSplit:
    neutral: tuple
    centralizer: GradedMatrixAlgebra
    dims_ok: bool
    commute_ok: bool
    generates_ok: bool

    @property
    def ok(self) -> bool:
        return self.dims_ok and self.commute_ok and self.generates_ok


def double_centralizer_split(a: GradedMatrixAlgebra) -> DoubleCentralizerSplit:
    e = a.group.identity
    de = a.component(e)
    if len(de) != 4 or a.component_dim != 4:
        raise ClassificationError("double centralizer split needs dimension-4 components")
    c = centralizer(a, de)
    cdim = sum(len(b) for b in c.components.values())
    dims_ok = 4 * cdim == a.dim
    commute_ok = all(x.matmul(y) == y.matmul(x) for x in de for b in c.components.values() for y in b)
    prods = Subspace(x.matmul(y).real_vector() for x in de for b in c.components.values() for y in b)
    return DoubleCentralizerSplit(tuple(de), c, dims_ok, commute_ok, prods.dim == a.dim)


def centralizer_grading(a: GradedMatrixAlgebra) -> GradedMatrixAlgebra:
    return double_centralizer_split(a).centralizer


# ---------------------------------------------------------------------------

@dataclass
class CliffordPresentation:
    generators: tuple  # degrees e_1..e_r
    matrices: tuple  # representatives X_i
    squares: tuple  # real c_i with X_i^2 = c_i I (Q(sqrt2) pairs)
    signs: tuple  # mu(e_i)
    anticommute: bool

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def signature(self) -> int:
        return sum(1 for s in self.signs if s == 1)


def clifford_generators(group: FinAbelianGroup, fam: SymplecticFamily) -> list[Element]:
    """e_{2i-1} = a_i P_i, e_{2i} = b_i P_i with P_i = prod_{j<i} a_j b_j; then f P_{m+1}."""
    out = []
    p = group.identity
    for a, b in fam.pairs:
        out.append(group.mul(a, p))
        out.append(group.mul(b, p))
        p = group.mul(p, group.mul(a, b))
    if fam.f is not None:
        out.append(group.mul(fam.f, p))
    return out


def clifford_presentation(a: GradedMatrixAlgebra) -> CliffordPresentation:
    if a.component_dim != 1:
        raise ClassificationError("Clifford presentation needs dimension-1 components")
    group = a.group
    T = a.support
    if any(group.elem_order(t) == 4 for t in T):
        raise ClassificationError("Clifford presentation covers elementary supports only")
    mu = extract_mu(a, T)
    beta = polarize(mu)
    ft = radical_and_type(beta, mu)
    if ft.tag == "II" and a.kind != "C":
        raise ClassificationError("type II Clifford presentation is for complex algebras")
    if not ft.regular:
        raise ClassificationError("form is not regular")
    gens = clifford_generators(group, symplectic_basis(beta))
    mats = tuple(a.representative(t) for t in gens)
    squares = tuple(x.matmul(x).real_scalar_value() for x in mats)
    anti = all(mats[i].matmul(mats[j]) == -(mats[j].matmul(mats[i]))
               for i in range(len(mats)) for j in range(i + 1, len(mats)))
    return CliffordPresentation(tuple(gens), mats, squares, tuple(mu(t) for t in gens), anti)


# ---------------------------------------------------------------------------

@dataclass
class StructureConstants:
    """X_u X_v = sigma(u, v) X_{uv} for chosen representatives of a dim-1 grading."""

    group: FinAbelianGroup
    reps: dict
    sigma: dict  # (u, v) -> raw scalar

    @classmethod
    def of(cls, a: GradedMatrixAlgebra) -> "StructureConstants":
        if a.component_dim != 1:
            raise ClassificationError("structure constants need dimension-1 components")
        g = a.group
        reps = {t: a.representative(t) for t in a.support}
        sigma = {}
        for u in a.support:
            for v in a.support:
                lam = reps[u].matmul(reps[v]).ratio_to(reps[g.mul(u, v)])
                if lam is None:
                    raise ClassificationError("product of representatives is not a multiple of the target")
                sigma[(u, v)] = lam
        return cls(g, reps, sigma)

    def _mul(self, x, y):
        kind = next(iter(self.reps.values())).kind
        return S.raw_mul(kind, x, y)

    def cocycle_ok(self) -> bool:
        g = self.group
        T = list(self.reps)
        for u in T:
            for v in T:
                for w in T:
                    lhs = self._mul(self.sigma[(u, v)], self.sigma[(g.mul(u, v), w)])
                    rhs = self._mul(self.sigma[(v, w)], self.sigma[(u, g.mul(v, w))])
                    if lhs != rhs:
                        return False
        return True

    def beta(self, u, v) -> int:
        """sigma(u,v) / sigma(v,u), which must be +-1."""
        kind = next(iter(self.reps.values())).kind
        lam = S.raw_mul(kind, self.sigma[(u, v)], S.raw_inv(kind, self.sigma[(v, u)]))
        if tuple(lam) == S.raw_one(kind):
            return 1
        if tuple(lam) == S.raw_neg(S.raw_one(kind)):
            return -1
        raise ClassificationError("sigma ratio is not +-1")

    def beta_multiplicative(self) -> bool:
        g = self.group
        T = list(self.reps)
        return all(self.beta(g.mul(u, v), w) == self.beta(u, w) * self.beta(v, w)
                   for u in T for v in T for w in T)
