"""Invariant extraction, classification, isomorphism and equivalence."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from . import scalars as S
from .forms import (Bicharacter, FormError, NiceMap, QuadraticForm, arf, bicharacter_from_function,
                    check_nice_map, polarize, radical_and_type)
from .graded import (GradedMatrixAlgebra, NeutralKind, _neutral_kind, centralizer, check_division_grading)
from .groups import (Element, FinAbelianGroup, format_element, is_subgroup, shape_of, shape_str,
                     sub_two_torsion)
from .matrices import MatrixExact

CASES = ("1a", "1b", "1c", "1d", "2a", "2b", "2c", "2d", "2e", "2f", "3a", "3b", "3c", "3d")

# ambient kind -> abstract kind of the centralizer of an H-neutral component
CENTRALIZER_KIND = {"R": "H", "H": "R", "C": "C"}


class ClassificationError(ValueError):
    code = "unclassifiable"


class NotDivisionGrading(ClassificationError):
    code = "not-division"


class DeferredCase(ClassificationError):
    code = "deferred"


class AmbientMismatch(ClassificationError):
    code = "ambient-mismatch"


# ---------------------------------------------------------------------------
# records

def _sign_str(v: int) -> str:
    return "+" if v == 1 else "-"


@dataclass(frozen=True)
class ClassificationRecord:
    """Invariants attached to a division grading, in a hashable canonical form.

    ``mu`` and ``nu`` are sorted (element, sign) tuples; ``beta`` lists the
    pairs u < v with beta(u, v) = -1 on its domain (T for 1d, K for 2d);
    ``beta_c`` (case 2f) lists (u, v, k) with beta(u, v) = i^k, k != 0.
    """

    case: str
    kind: str
    n: int
    dim: int
    group: FinAbelianGroup
    T: tuple
    mu: tuple | None = None
    beta: tuple | None = None
    K: tuple | None = None
    nu: tuple | None = None
    f: Element | None = None
    centralizer: "ClassificationRecord | None" = None
    beta_c: tuple | None = None
    deferred: bool = False

    @property
    def m(self) -> int:
        return self.n.bit_length() - 1

    @property
    def shape(self) -> str:
        return shape_str(shape_of(self.group, self.T))

    def mu_form(self) -> QuadraticForm:
        return QuadraticForm(self.group, dict(self.mu))

    def nu_map(self) -> dict:
        return dict(self.nu)

    def beta_form(self) -> Bicharacter:
        dom = self.K if self.case == "2d" else self.T
        minus = set(self.beta)

        def b(u, v):
            return -1 if (u, v) in minus or (v, u) in minus else 1
        return bicharacter_from_function(self.group, dom, b)

    def summary(self) -> str:
        out = f"case {self.case}, T = {self.shape}"
        if self.case in ("1a", "1b"):
            out += f", Arf = {'+1' if self.case == '1a' else '-1'}"
        if self.case in ("1a", "1b", "1c", "1d"):
            if self.f is not None:
                out += f", f = {format_element(self.f)}"
            vals = ",".join(_sign_str(v) for t, v in self.mu if any(t))
            out += f", mu = {vals}" if vals else ""
        elif self.case in ("2a", "2b", "2c", "2d"):
            out += f", K = {shape_str(shape_of(self.group, self.K))}"
            out += ", nu = " + ",".join(_sign_str(v) for _, v in self.nu)
        elif self.case == "2e":
            out += ", [nu] = " + ",".join(_sign_str(v) for _, v in self.nu)
        elif self.case == "2f":
            out += ", deferred (complex-linear grading)"
        elif self.centralizer is not None:
            out += f", centralizer: {self.centralizer.summary()}"
        return out


# ---------------------------------------------------------------------------
# neutral component and centre

@dataclass
class CenterInfo:
    neutral: NeutralKind
    center_degrees: tuple
    f: Element | None
    de_is_center: bool


def iI_matrix(n: int) -> MatrixExact:
    return MatrixExact.scalar("C", n, S.Cyclo8(0, 0, 1, 0))


def neutral_and_center(a: GradedMatrixAlgebra) -> CenterInfo:
    violations: list = []
    nk = _neutral_kind(a, violations)
    if nk is None:
        raise NotDivisionGrading(violations[0])
    e = a.group.identity
    if a.kind != "C":
        return CenterInfo(nk, (e,), None, False)
    f = a.degree_of(iI_matrix(a.n))
    if f is None:
        raise ClassificationError("iI is not homogeneous: centre is not a graded subalgebra")
    degs = (e,) if f == e else (e, f)
    return CenterInfo(nk, degs, f, f == e and len(a.component(e)) == 2)


# ---------------------------------------------------------------------------
# extractors

def _real_sign_of_square(x: MatrixExact, what: str) -> int:
    c = x.matmul(x).real_scalar_value()
    if c is None or not (c[0] or c[1]):
        raise ClassificationError(f"{what}: square is not a nonzero real multiple of I")
    return S.rq_sign(c)


def _commutation_sign(xu: MatrixExact, xv: MatrixExact) -> int:
    lam = xu.matmul(xv).ratio_to(xv.matmul(xu))
    if lam is None:
        raise ClassificationError("commutator quotient is not a scalar")
    coords = S.raw_real_coords(xu.kind, lam)
    if any(any(c) for c in coords[1:]) or tuple(coords[0]) not in ((1, 0), (-1, 0)):
        raise ClassificationError("commutator quotient is not +-I")
    return 1 if coords[0][0] == 1 else -1


def extract_mu(a: GradedMatrixAlgebra, elems: Sequence[Element] | None = None) -> QuadraticForm:
    """mu(t) = sign(c) where X_t^2 = c I, over T_2 (or ``elems``)."""
    group = a.group
    if elems is None:
        elems = sub_two_torsion(group, a.support)
    vals = {}
    for t in elems:
        vals[t] = _real_sign_of_square(a.representative(t), f"degree {format_element(t)}")
    return QuadraticForm(group, vals)


def extract_beta(a: GradedMatrixAlgebra, elems: Sequence[Element] | None = None,
                 full_table: bool = False) -> Bicharacter:
    """beta from X_u X_v = beta(u,v) X_v X_u on the support (or ``elems``)."""
    group = a.group
    elems = tuple(sorted(a.support if elems is None else elems))
    cache: dict = {}

    def b(u, v):
        if u == v:
            return 1
        key = (u, v) if u < v else (v, u)
        if key not in cache:
            cache[key] = _commutation_sign(a.representative(key[0]), a.representative(key[1]))
        return cache[key]

    beta = bicharacter_from_function(group, elems, b)
    if full_table:
        for u in elems:
            for v in elems:
                if beta(u, v) != b(u, v):
                    raise ClassificationError("commutation signs are not a bicharacter")
    return beta


def centralizer_support(a: GradedMatrixAlgebra, elems: Sequence[MatrixExact]) -> tuple:
    """Degrees whose representative commutes with every element of ``elems``."""
    out = []
    for t in a.support:
        x = a.representative(t)
        if all(x.matmul(s) == s.matmul(x) for s in elems):
            out.append(t)
    return tuple(out)


def extract_K_and_nu(a: GradedMatrixAlgebra, info: CenterInfo | None = None):
    """(K, nu) for dim-2 gradings with D_e != Z(D); nu as a dict."""
    info = info or neutral_and_center(a)
    group = a.group
    T = a.support
    de = a.component(group.identity)
    K = centralizer_support(a, de)
    if 2 * len(K) != len(T):
        raise ClassificationError(f"centralizer support has {len(K)} elements, expected {len(T) // 2}")
    has4 = any(group.elem_order(t) == 4 for t in T)
    ks = set(K)
    if not has4 or any(group.elem_order(k) == 4 for k in K):
        dom = [t for t in T if t not in ks and group.elem_order(t) <= 2]
        nu = {t: _real_sign_of_square(a.representative(t), f"degree {format_element(t)}") for t in dom}
        return K, nu
    # K = T_2: signs relative to the lex-least order-4 degree, via squares in R iI
    iI = iI_matrix(a.n)
    outside = [t for t in T if t not in ks]
    g0 = outside[0]

    def r_sign(t):
        x = a.representative(t)
        lam = x.matmul(x).ratio_to(iI)
        if lam is None:
            raise ClassificationError(f"degree {format_element(t)}: square is not a multiple of iI")
        re, im = S.raw_real_coords("C", lam)
        if im[0] or im[1] or not (re[0] or re[1]):
            raise ClassificationError(f"degree {format_element(t)}: square is not a real multiple of iI")
        return S.rq_sign(re)

    s0 = r_sign(g0)
    return K, {t: r_sign(t) * s0 for t in outside}


# ---------------------------------------------------------------------------
# classification

def _elementary(group, elems) -> bool:
    return all(group.elem_order(t) <= 2 for t in elems)


def _mu_tuple(mu: QuadraticForm) -> tuple:
    return tuple(sorted(mu.values.items()))


def _beta_tuple(beta: Bicharacter) -> tuple:
    el = beta.elements
    return tuple((u, v) for i, u in enumerate(el) for v in el[i + 1:] if beta(u, v) == -1)


def _n_from(kind: str, real_dim: int) -> int:
    from math import isqrt
    n2 = real_dim // S.REAL_DIM[kind]
    n = isqrt(n2)
    if n * n != n2:
        raise ClassificationError(f"real dimension {real_dim} does not fit a {kind} matrix algebra")
    return n


def _classify_dim1(a: GradedMatrixAlgebra, kind: str, n: int, full_checks: bool) -> ClassificationRecord:
    """Dimension-1 invariants; ``kind`` is the abstract kind (may differ from a.kind)."""
    group = a.group
    T = a.support
    if kind in ("R", "H"):
        if not _elementary(group, T):
            raise ClassificationError(f"support of a {kind}-kind dim-1 grading must be elementary abelian")
        mu = extract_mu(a, T)
        beta = polarize(mu)
        if full_checks and extract_beta(a, T) != beta:
            raise ClassificationError("commutation signs disagree with the polarization of mu")
        ft = radical_and_type(beta, mu)
        if ft.tag != "I":
            raise ClassificationError(f"quadratic form is {ft.tag}, expected type I")
        ar = arf(mu)
        case = "1a" if ar == 1 else "1b"
        if (kind == "R") != (ar == 1):
            raise ClassificationError(f"Arf invariant {ar:+d} is impossible for kind {kind}")
        return ClassificationRecord(case, kind, n, 1, group, T, mu=_mu_tuple(mu))
    f = a.degree_of(iI_matrix(a.n))
    if f is None or f == group.identity:
        raise ClassificationError("iI is not homogeneous of order 2")
    if _elementary(group, T):
        mu = extract_mu(a, T)
        beta = polarize(mu)
        if full_checks and extract_beta(a, T) != beta:
            raise ClassificationError("commutation signs disagree with the polarization of mu")
        ft = radical_and_type(beta, mu)
        if ft.tag != "II" or ft.semineutral != f:
            raise ClassificationError("expected a type II form with semineutral element deg(iI)")
        return ClassificationRecord("1c", kind, n, 1, group, T, mu=_mu_tuple(mu), f=f)
    beta = extract_beta(a, T, full_table=full_checks)
    T2 = sub_two_torsion(group, T)
    mu = extract_mu(a, T2)
    ft = radical_and_type(beta)
    if ft.tag != "II" or ft.semineutral != f or mu(f) != -1:
        raise ClassificationError("expected a type II bicharacter with semineutral element deg(iI)")
    if polarize(mu) != beta.restrict(T2):
        raise ClassificationError("mu on T_2 does not polarize to beta")
    return ClassificationRecord("1d", kind, n, 1, group, T, mu=_mu_tuple(mu), beta=_beta_tuple(beta), f=f)


def _complex_beta(a: GradedMatrixAlgebra) -> tuple:
    T = a.support
    iunit = {(1, 0, 0, 0): 0, (0, 0, 1, 0): 1, (-1, 0, 0, 0): 2, (0, 0, -1, 0): 3}
    out = []
    for i, u in enumerate(T):
        for v in T[i + 1:]:
            xu, xv = a.representative(u), a.representative(v)
            lam = xu.matmul(xv).ratio_to(xv.matmul(xu))
            if lam is None or tuple(lam) not in iunit:
                raise ClassificationError("commutator quotient is not a fourth root of unity")
            k = iunit[tuple(lam)]
            if k:
                out.append((u, v, k))
    return tuple(out)


def classify(a: GradedMatrixAlgebra, validate: bool = False, full_checks: bool = False) -> ClassificationRecord:
    """Classification record of a division grading.

    ``validate`` runs the full grading and division checks first (raising
    NotDivisionGrading); ``full_checks`` additionally cross-checks every
    derived table against direct commutation computations.
    """
    if validate:
        rep = check_division_grading(a)
        if not rep.ok:
            raise NotDivisionGrading(rep.violations[0])
    group = a.group
    T = a.support
    if not is_subgroup(group, T):
        raise NotDivisionGrading("support is not a subgroup")
    d = a.component_dim
    if d not in (1, 2, 4):
        raise NotDivisionGrading(f"component dimensions are not uniform 1, 2 or 4 (got {d})")
    kind, n = a.kind, a.n
    if d == 1:
        return _classify_dim1(a, kind, n, full_checks)
    info = neutral_and_center(a)
    if d == 4:
        de = a.component(group.identity)
        c = centralizer(a, de)
        if c.support != T or c.component_dim != 1:
            raise ClassificationError("centralizer of the neutral component is not a dim-1 grading on T")
        ck = CENTRALIZER_KIND[kind]
        inner = _classify_dim1(c, ck, _n_from(ck, len(T)), full_checks)
        case = {"1a": "3b", "1b": "3a", "1c": "3c", "1d": "3d"}[inner.case]
        return ClassificationRecord(case, kind, n, 4, group, T, centralizer=inner)
    # d == 2
    if info.de_is_center:
        return ClassificationRecord("2f", kind, n, 2, group, T, beta_c=_complex_beta(a), deferred=True)
    K, nu = extract_K_and_nu(a, info)
    if _elementary(group, T):
        try:
            nm = check_nice_map(group, T, K, nu)
        except FormError as exc:
            raise ClassificationError(str(exc)) from exc
        tag = nm.form_type.tag
        if kind == "R" and tag == "I" and nm.sign == 1:
            case = "2a"
        elif kind == "H" and tag == "I" and nm.sign == -1:
            case = "2b"
        elif kind == "C" and tag == "II":
            case = "2c"
        else:
            raise ClassificationError(f"nice map of type {tag} (sign {nm.sign}) is impossible for kind {kind}")
        return ClassificationRecord(case, kind, n, 2, group, T, K=K, nu=tuple(sorted(nu.items())))
    if kind != "C":
        raise ClassificationError(f"support with elements of order 4 is impossible for kind {kind}")
    f = info.f
    T2 = sub_two_torsion(group, T)
    if any(group.elem_order(k) == 4 for k in K):
        beta = extract_beta(a, K, full_table=full_checks)
        ft = radical_and_type(beta)
        if ft.tag != "II" or ft.semineutral != f:
            raise ClassificationError("bicharacter on K is not of type II with semineutral deg(iI)")
        K2 = tuple(k for k in K if k in set(T2))
        try:
            nm = check_nice_map(group, T2, K2, nu)
        except FormError as exc:
            raise ClassificationError(str(exc)) from exc
        g = min(nu)
        if nm.beta != beta.restrict(K2) or nm.induced_form(g)(f) != -1:
            raise ClassificationError("nice map is incompatible with the bicharacter on K")
        return ClassificationRecord("2d", kind, n, 2, group, T, K=K, beta=_beta_tuple(beta),
                                    nu=tuple(sorted(nu.items())), f=f)
    if K != T2:
        raise ClassificationError("centralizer support is neither T_2 nor contains order-4 elements")
    try:
        nm = check_nice_map(group, T, K, nu)
    except FormError as exc:
        raise ClassificationError(str(exc)) from exc
    if nm.form_type.tag != "II" or nm.semineutral != f:
        raise ClassificationError("[nu] is not of type II with semineutral deg(iI)")
    return ClassificationRecord("2e", kind, n, 2, group, T, K=K, nu=tuple(sorted(nu.items())), f=f)


# ---------------------------------------------------------------------------
# comparisons

@dataclass
class Verdict:
    value: bool
    reason: str
    records: tuple = ()

    def __bool__(self):
        return self.value


def _as_record(x) -> ClassificationRecord:
    return x if isinstance(x, ClassificationRecord) else classify(x)


def is_isomorphic(a, b) -> Verdict:
    ra, rb = _as_record(a), _as_record(b)
    if ra.group != rb.group:
        raise AmbientMismatch(f"different ambient groups {ra.group} and {rb.group}")
    if ra == rb:
        why = "equal invariants"
        if ra.deferred:
            why += " (complex-linear case compared by (T, beta) only)"
        return Verdict(True, why, (ra, rb))
    for fld in ("kind", "n", "dim", "case", "T", "K", "mu", "beta", "nu", "f", "centralizer", "beta_c"):
        if getattr(ra, fld) != getattr(rb, fld):
            return Verdict(False, f"invariants differ in {fld}", (ra, rb))
    return Verdict(False, "invariants differ", (ra, rb))


def is_equivalent(a, b) -> Verdict:
    ra, rb = _as_record(a), _as_record(b)
    if ra.deferred and rb.deferred:
        raise DeferredCase("equivalence of complex-linear gradings (case 2f) is not decided here")
    ka = (ra.dim, ra.kind, ra.n, ra.case)
    kb = (rb.dim, rb.kind, rb.n, rb.case)
    if ka == kb:
        return Verdict(True, f"both case {ra.case}, {ra.kind}, n = {ra.n}", (ra, rb))
    return Verdict(False, f"case {ra.case} ({ra.kind}, n = {ra.n}) vs case {rb.case} ({rb.kind}, n = {rb.n})",
                   (ra, rb))


def record_with(r: ClassificationRecord, **kw) -> ClassificationRecord:
    return replace(r, **kw)
