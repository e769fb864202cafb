"""{+1,-1}-valued form theory on finite abelian 2-groups.

Alternating bicharacters are kept as GF(2) bilinear forms on T/T^2 and pulled
back to T; this is faithful because beta(u^2, v) = beta(u, v)^2 = +1.
Quadratic forms are full value tables on an elementary abelian subgroup.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import gf2
from .gf2 import QuotientCoords
from .groups import Element, FinAbelianGroup, GroupError, shape_of


class FormError(ValueError):
    code = "invalid-form"


def _check_subgroup_elems(group: FinAbelianGroup, elems) -> tuple[Element, ...]:
    elems = tuple(sorted(set(elems)))
    for t in elems:
        group.check(t)
    return elems


# ---------------------------------------------------------------------------
# bicharacters

class Bicharacter:
    """Alternating bicharacter on a subgroup T of ``group``."""

    def __init__(self, group: FinAbelianGroup, elements: Sequence[Element], matrix: Sequence[int],
                 coords: QuotientCoords | None = None):
        self.group = group
        self.elements = tuple(sorted(elements))
        self.coords = coords or QuotientCoords(group, self.elements)
        self.matrix = tuple(matrix)  # row i: bitmask of j with beta(r_i, r_j) = -1

    def __call__(self, u: Element, v: Element) -> int:
        cu, cv = self.coords.coord[u], self.coords.coord[v]
        acc = 0
        i = 0
        while cu:
            if cu & 1:
                acc ^= gf2.parity(self.matrix[i] & cv)
            cu >>= 1
            i += 1
        return -1 if acc else 1

    def table(self) -> dict[tuple[Element, Element], int]:
        return {(u, v): self(u, v) for u in self.elements for v in self.elements}

    def restrict(self, elems: Sequence[Element]) -> "Bicharacter":
        elems = tuple(sorted(elems))
        return bicharacter_from_function(self.group, elems, self)

    def is_trivial(self) -> bool:
        return not any(self.matrix)

    def __eq__(self, other):
        if not isinstance(other, Bicharacter):
            return NotImplemented
        return (self.group == other.group and self.elements == other.elements
                and all(self(u, v) == other(u, v) for u in self.coords.reps for v in self.coords.reps))

    def __hash__(self):
        return hash((self.group, self.elements, tuple(sorted(self.table().items()))))

    def __repr__(self):
        minus = [(u, v) for u in self.elements for v in self.elements if u < v and self(u, v) == -1]
        return f"Bicharacter(T={len(self.elements)} elements, -1 on {minus})"


def bicharacter_from_function(group, elems, fn) -> Bicharacter:
    coords = QuotientCoords(group, elems)
    rows = []
    for r in coords.reps:
        row = 0
        for j, s in enumerate(coords.reps):
            if fn(r, s) == -1:
                row |= 1 << j
        rows.append(row)
    return Bicharacter(group, coords.elements, rows, coords)


def check_bicharacter(group: FinAbelianGroup, elems: Sequence[Element],
                      table: Mapping[tuple[Element, Element], int]) -> Bicharacter:
    """Validate a total {+-1} table on T x T; raise on the first violated axiom."""
    elems = _check_subgroup_elems(group, elems)
    es = set(elems)
    for u in elems:
        for v in elems:
            val = table.get((u, v))
            if val not in (1, -1):
                raise FormError(f"table value at {(u, v)} is {val!r}, not +-1")
    for t in elems:
        if table[(t, t)] != 1:
            raise FormError(f"not alternating: beta({t},{t}) = -1")
    for u in elems:
        for v in elems:
            uv = group.mul(u, v)
            if uv not in es:
                raise FormError("domain is not a subgroup")
            for w in elems:
                if table[(uv, w)] != table[(u, w)] * table[(v, w)]:
                    raise FormError(f"not multiplicative in the first variable at {(u, v, w)}")
                if table[(w, uv)] != table[(w, u)] * table[(w, v)]:
                    raise FormError(f"not multiplicative in the second variable at {(w, u, v)}")
    return bicharacter_from_function(group, elems, lambda u, v: table[(u, v)])


# ---------------------------------------------------------------------------
# quadratic forms

@dataclass(frozen=True)
class QuadraticForm:
    group: FinAbelianGroup
    values: Mapping[Element, int] = field(hash=False)

    @property
    def elements(self) -> tuple[Element, ...]:
        return tuple(sorted(self.values))

    def __call__(self, t: Element) -> int:
        return self.values[t]

    def key(self):
        return tuple(sorted(self.values.items()))

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return self.group == other.group and self.key() == other.key()

    def __hash__(self):
        return hash((self.group, self.key()))

    def restrict(self, elems) -> "QuadraticForm":
        return QuadraticForm(self.group, {t: self.values[t] for t in elems})


def polarize(mu: QuadraticForm) -> Bicharacter:
    """beta(u,v) = mu(uv) mu(u)^-1 mu(v)^-1; raises if mu is not quadratic."""
    group = mu.group
    elems = mu.elements
    if any(group.elem_order(t) > 2 for t in elems):
        raise FormError("quadratic forms live on elementary abelian groups")
    if mu(group.identity) != 1:
        raise FormError("mu(e) must be +1")

    def beta(u, v):
        return mu(group.mul(u, v)) * mu(u) * mu(v)

    b = bicharacter_from_function(group, elems, beta)
    for u in elems:
        for v in elems:
            if b(u, v) != beta(u, v):
                raise FormError(f"polarization is not bimultiplicative at {(u, v)}: mu is not quadratic")
    return b


# ---------------------------------------------------------------------------
# radical and type

@dataclass(frozen=True)
class FormType:
    tag: str  # "I", "II" or "nonregular"
    semineutral: Element | None
    radical: tuple[Element, ...]

    @property
    def regular(self) -> bool:
        return self.tag in ("I", "II")


def radical(beta: Bicharacter) -> tuple[Element, ...]:
    ker = gf2.kernel(beta.matrix, beta.coords.dim)
    # all combinations of kernel vectors, lifted to every element with that class
    masks = {0}
    for k in ker:
        masks |= {m ^ k for m in masks}
    return tuple(sorted(t for t in beta.elements if beta.coords.coord[t] in masks))


def radical_and_type(beta: Bicharacter, mu: QuadraticForm | None = None) -> FormType:
    rad = radical(beta)
    if len(rad) == 1:
        return FormType("I", None, rad)
    if len(rad) == 2:
        f = rad[1]
        if mu is not None and mu(f) != -1:
            return FormType("nonregular", None, rad)
        return FormType("II", f, rad)
    return FormType("nonregular", None, rad)


# ---------------------------------------------------------------------------
# symplectic bases

@dataclass(frozen=True)
class SymplecticFamily:
    pairs: tuple[tuple[Element, Element], ...]
    f: Element | None = None

    @property
    def m(self) -> int:
        return len(self.pairs)

    def members(self) -> list[Element]:
        return [x for p in self.pairs for x in p]


def check_symplectic(beta: Bicharacter, fam: SymplecticFamily) -> bool:
    mem = fam.members()
    for i, x in enumerate(mem):
        for j, y in enumerate(mem):
            want = -1 if (i // 2 == j // 2 and i != j) else 1
            if beta(x, y) != want:
                return False
    return True


def _first_hyperbolic_pair(group, beta, elems):
    order2 = [t for t in elems if group.elem_order(t) == 2]
    for u, v in itertools.combinations(order2, 2):
        if beta(u, v) == -1:
            return u, v
    return None


def symplectic_basis(beta: Bicharacter) -> SymplecticFamily:
    """Symplectic basis/family by repeated hyperbolic splitting T = H x H^perp."""
    ftype = radical_and_type(beta)
    if not ftype.regular:
        raise FormError(f"bicharacter is not regular (radical of order {len(ftype.radical)})")
    group = beta.group
    rest = list(beta.elements)
    pairs = []
    f = ftype.semineutral
    while len(rest) > len(ftype.radical):
        has4 = any(group.elem_order(t) == 4 for t in rest)
        if has4 and len(rest) == 8:
            b = next(t for t in rest if group.elem_order(t) == 4)
            a = next(t for t in rest if group.elem_order(t) == 2 and beta(t, b) == -1)
            pairs.append((a, b))
            break
        hp = _first_hyperbolic_pair(group, beta, rest)
        if hp is None:
            raise FormError("no hyperbolic pair of order-2 elements found")
        a, b = hp
        pairs.append((a, b))
        rest = [t for t in rest if beta(a, t) == 1 and beta(b, t) == 1]
    return SymplecticFamily(tuple(pairs), f)


def transvect_basis(beta: Bicharacter, fam: SymplecticFamily, rng: random.Random, steps: int = 8) -> SymplecticFamily:
    """Apply random symplectic transvections x -> x + beta[x,v] v to a type-I basis."""
    group = beta.group
    elems = [t for t in beta.elements if any(t)]
    pairs = [list(p) for p in fam.pairs]
    for _ in range(steps):
        v = rng.choice(elems)
        for p in pairs:
            for idx in (0, 1):
                if beta(p[idx], v) == -1:
                    p[idx] = group.mul(p[idx], v)
    return SymplecticFamily(tuple(tuple(p) for p in pairs), fam.f)


# ---------------------------------------------------------------------------
# Arf invariant

def _mprod(x: int, y: int) -> int:
    return -1 if (x == -1 and y == -1) else 1


def arf_product(mu: QuadraticForm, fam: SymplecticFamily) -> int:
    out = 1
    for a, b in fam.pairs:
        out *= _mprod(mu(a), mu(b))
    return out


def arf_majority(mu: QuadraticForm) -> int:
    total = sum(mu.values.values())
    if total == 0:
        raise FormError("no majority value: form is not of type I")
    return 1 if total > 0 else -1


def arf(mu: QuadraticForm) -> int:
    beta = polarize(mu)
    ft = radical_and_type(beta, mu)
    if ft.tag != "I":
        raise FormError(f"Arf invariant needs a type I form, got {ft.tag}")
    via_basis = arf_product(mu, symplectic_basis(beta))
    via_count = arf_majority(mu)
    if via_basis != via_count:
        raise AssertionError("Arf invariant: product formula and majority count disagree")
    return via_basis


# ---------------------------------------------------------------------------
# nice maps

@dataclass(frozen=True)
class NiceMap:
    group: FinAbelianGroup
    T: tuple[Element, ...]
    K: tuple[Element, ...]
    values: Mapping[Element, int] = field(hash=False)
    form_type: FormType = None
    sign: int | None = None  # type I only
    beta: Bicharacter | None = field(default=None, compare=False, hash=False)

    def __call__(self, t: Element) -> int:
        return self.values[t]

    def induced_form(self, g: Element) -> QuadraticForm:
        return induced_form(self.group, self.K, self.values, g)

    @property
    def semineutral(self):
        return self.form_type.semineutral

    def key(self):
        return tuple(sorted(self.values.items()))


def induced_form(group, K, nu, g) -> QuadraticForm:
    return QuadraticForm(group, {k: nu[group.mul(g, k)] * nu[g] for k in K})


def check_nice_map(group: FinAbelianGroup, T: Sequence[Element], K: Sequence[Element],
                   nu: Mapping[Element, int]) -> NiceMap:
    T = _check_subgroup_elems(group, T)
    K = _check_subgroup_elems(group, K)
    if 2 * len(K) != len(T) or not set(K) <= set(T):
        raise FormError("K must be an index-2 subgroup of T")
    if any(group.elem_order(k) > 2 for k in K):
        raise FormError("K must be elementary abelian")
    outside = [t for t in T if t not in set(K)]
    if set(nu) != set(outside) or any(v not in (1, -1) for v in nu.values()):
        raise FormError("nu must be a +-1 map on T minus K")
    g = outside[0]
    mu_g = induced_form(group, K, nu, g)
    try:
        beta = polarize(mu_g)
    except FormError as exc:
        raise FormError(f"not a nice map: {exc}") from exc
    for h in outside[1:]:
        mu_h = induced_form(group, K, nu, h)
        if polarize(mu_h) != beta:
            raise FormError("not a nice map: induced forms have different polarizations")
    ft = radical_and_type(beta, mu_g)
    sign = None
    if ft.tag == "I":
        sign = nu[g] * arf(mu_g)
    return NiceMap(group, T, K, dict(nu), ft, sign, beta)


# ---------------------------------------------------------------------------
# enumeration

MAX_ENUM_ORDER = 2 ** 10
MAX_UNFILTERED_RANK = 5


def form_from_basis(group, coords: QuotientCoords, linear: int, matrix: Sequence[int]) -> QuadraticForm:
    """mu(sum c_i r_i) = prod mu(r_i)^c_i * prod_{i<j} beta(r_i,r_j)^{c_i c_j}."""
    k = coords.dim
    values = {}
    for t in coords.elements:
        c = coords.coord[t]
        acc = gf2.parity(linear & c)
        for i in range(k):
            if c >> i & 1:
                upper = matrix[i] & c & ~((2 << i) - 1)
                acc ^= gf2.parity(upper)
        values[t] = -1 if acc else 1
    return QuadraticForm(group, values)


def enumerate_quadratic_forms(group: FinAbelianGroup, elems: Sequence[Element] | None = None,
                              beta: Bicharacter | None = None) -> list[QuadraticForm]:
    elems = group.elements if elems is None else _check_subgroup_elems(group, elems)
    if any(group.elem_order(t) > 2 for t in elems):
        raise FormError("quadratic forms need an elementary abelian domain")
    if len(elems) > MAX_ENUM_ORDER:
        raise FormError(f"group of order {len(elems)} too large to enumerate")
    coords = QuotientCoords(group, elems)
    k = coords.dim
    if beta is not None:
        mats = [[sum(1 << j for j, s in enumerate(coords.reps) if beta(r, s) == -1) for r in coords.reps]]
    else:
        if k > MAX_UNFILTERED_RANK:
            raise FormError(f"unfiltered enumeration limited to rank {MAX_UNFILTERED_RANK}")
        mats = list(alternating_matrices(k))
    out = []
    for mat in mats:
        for lin in range(1 << k):
            out.append(form_from_basis(group, coords, lin, mat))
    return out


def alternating_matrices(k: int):
    """All symmetric zero-diagonal GF(2) matrices of size k (as row bitmasks)."""
    slots = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for bits in range(1 << len(slots)):
        rows = [0] * k
        for s, (i, j) in enumerate(slots):
            if bits >> s & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield rows


def bicharacters_on(group: FinAbelianGroup, elems: Sequence[Element]):
    coords = QuotientCoords(group, elems)
    for rows in alternating_matrices(coords.dim):
        yield Bicharacter(group, coords.elements, rows, coords)


def group_shape(group: FinAbelianGroup, elems) -> tuple[int, int]:
    return shape_of(group, elems)


__all__ = [
    "Bicharacter", "QuadraticForm", "FormType", "NiceMap", "SymplecticFamily", "FormError",
    "check_bicharacter", "polarize", "radical_and_type", "radical", "symplectic_basis",
    "check_symplectic", "transvect_basis", "arf", "arf_product", "arf_majority",
    "check_nice_map", "induced_form", "enumerate_quadratic_forms", "bicharacters_on",
    "form_from_basis", "alternating_matrices", "bicharacter_from_function", "GroupError",
]
