"""Canonical representatives, realization from invariants, payload enumeration.

A *recipe* is a list of (block name, generator images in G).  It is
assembled as the product grading of the blocks, coarsened along the
homomorphism from the product group to G given by the images.
"""
from __future__ import annotations

from typing import Iterator, Sequence

from .classify import (CENTRALIZER_KIND, ClassificationError, ClassificationRecord, DeferredCase, classify,
                       _beta_tuple, _mu_tuple)
from .forms import (Bicharacter, FormError, QuadraticForm, check_nice_map, enumerate_quadratic_forms,
                    induced_form, polarize, radical_and_type, symplectic_basis, bicharacters_on)
from .graded import GradedMatrixAlgebra, GradingError, build_block, coarsen_along_hom, tensor_product
from .groups import (Element, FinAbelianGroup, GroupHom, index2_subgroups, span, sub_two_torsion)

Recipe = list


class RealizationError(ValueError):
    code = "invalid-payload"


# ---------------------------------------------------------------------------
# assembling recipes

def assemble(group: FinAbelianGroup, recipe: Recipe) -> GradedMatrixAlgebra:
    if not recipe:
        recipe = [("R0", [])]
    blocks = [build_block(name) for name, _ in recipe]
    prod = tensor_product(blocks)
    z2_imgs, z4_imgs = [], []
    for blk, (_, imgs) in zip(blocks, recipe):
        imgs = [tuple(x) for x in imgs]
        if len(imgs) != blk.group.rank:
            raise GradingError(f"block needs {blk.group.rank} generator images, got {len(imgs)}")
        z2_imgs.extend(imgs[:blk.group.a])
        z4_imgs.extend(imgs[blk.group.a:])
    phi = GroupHom(prod.group, group, z2_imgs + z4_imgs)
    return coarsen_along_hom(prod, phi)


# ---------------------------------------------------------------------------
# canonical representatives

CASE_MIN_M = {"1a": 0, "1b": 0, "1c": 0, "1d": 1, "2a": 1, "2b": 0, "2c": 1, "2d": 2, "2e": 1,
              "3a": 2, "3b": 0, "3c": 1, "3d": 2}


def canonical_recipe(case: str, m: int) -> list[str]:
    if case == "2f":
        raise DeferredCase("case 2f has no canonical representative here")
    if case not in CASE_MIN_M:
        raise ClassificationError(f"unknown case tag {case!r}")
    if m < CASE_MIN_M[case]:
        raise ClassificationError(f"case {case} needs m >= {CASE_MIN_M[case]}, got {m}")
    R = ["M2R1"]
    return {
        "1a": R * m,
        "1b": R * m + ["H1"],
        "1c": R * m + ["C1"],
        "1d": R * (m - 1) + ["M2C1"],
        "2a": ["M2R2"] + R * (m - 1),
        "2b": ["H2"] + R * m,
        "2c": ["M2R2"] + R * (m - 1) + ["C1"],
        "2d": ["M2R2"] + R * (m - 2) + ["M2C1"],
        "2e": ["M2C2"] + R * (m - 1),
        "3a": ["H0"] + R * (m - 2) + ["H1"],
        "3b": ["H0"] + R * m,
        "3c": ["H0"] + R * (m - 1) + ["C1"],
        "3d": ["H0"] + R * (m - 2) + ["M2C1"],
    }[case]


def canonical_representative(case: str, m: int) -> GradedMatrixAlgebra:
    names = canonical_recipe(case, m)
    return tensor_product([build_block(nm) for nm in names]) if names else build_block("R0")


# ---------------------------------------------------------------------------
# sub-recipes from forms

def recipe_type1(group: FinAbelianGroup, mu: QuadraticForm) -> Recipe:
    beta = polarize(mu)
    fam = symplectic_basis(beta)
    if fam.f is not None:
        raise RealizationError("type I form expected")
    out = []
    for a, b in fam.pairs:
        ab = group.mul(a, b)
        ma, mb = mu(a), mu(b)
        if ma == -1 and mb == -1:
            out.append(("H1", [a, b]))
        elif ma == 1 and mb == 1:
            out.append(("M2R1", [a, b]))
        elif ma == 1:
            out.append(("M2R1", [a, ab]))
        else:
            out.append(("M2R1", [ab, b]))
    return out


def _fix_plus(group, mu, x, f):
    return x if mu(x) == 1 else group.mul(x, f)


def recipe_type2(group: FinAbelianGroup, mu: QuadraticForm) -> Recipe:
    beta = polarize(mu)
    ft = radical_and_type(beta, mu)
    if ft.tag != "II":
        raise RealizationError("type II form expected")
    fam = symplectic_basis(beta)
    f = fam.f
    out = [("M2R1", [_fix_plus(group, mu, a, f), _fix_plus(group, mu, b, f)]) for a, b in fam.pairs]
    out.append(("C1", [f]))
    return out


def recipe_z4(group: FinAbelianGroup, beta: Bicharacter, mu: QuadraticForm) -> Recipe:
    """Dim-1 complex grading with an order-4 element: (T, beta, mu on T_2)."""
    ft = radical_and_type(beta)
    if ft.tag != "II":
        raise RealizationError("bicharacter must be of type II")
    fam = symplectic_basis(beta)
    f = fam.f
    if mu(f) != -1:
        raise RealizationError("mu(f) must be -1")
    out = []
    for a, b in fam.pairs[:-1]:
        out.append(("M2R1", [_fix_plus(group, mu, a, f), _fix_plus(group, mu, b, f)]))
    a, b = fam.pairs[-1]
    if group.power(b, 2) != f:
        raise RealizationError("last symplectic pair does not carry the order-4 element")
    out.append(("M2C1", [_fix_plus(group, mu, a, f), b]))
    return out


def greedy_complement(group: FinAbelianGroup, elems: Sequence[Element], f: Element) -> tuple:
    """Lex-greedy subgroup A of the elementary group ``elems`` with elems = <f> x A."""
    chosen: list = []
    cur = set(span(group, [f]))
    for t in sorted(elems):
        if t not in cur:
            chosen.append(t)
            cur = set(span(group, chosen + [f]))
    return span(group, chosen)


# ---------------------------------------------------------------------------
# realization

def _dim1_recipe(r: ClassificationRecord) -> Recipe:
    g = r.group
    if r.case in ("1a", "1b"):
        return recipe_type1(g, r.mu_form())
    if r.case == "1c":
        return recipe_type2(g, r.mu_form())
    if r.case == "1d":
        return recipe_z4(g, r.beta_form(), r.mu_form())
    raise RealizationError(f"not a dimension-1 case: {r.case}")


def realization_recipe(r: ClassificationRecord) -> Recipe:
    g = r.group
    if r.case == "2f":
        raise DeferredCase("case 2f (complex-linear) is not realized here")
    if r.dim == 1:
        return _dim1_recipe(r)
    if r.dim == 4:
        if r.centralizer is None:
            raise RealizationError("dim-4 record without centralizer record")
        return [("H0", [])] + _dim1_recipe(r.centralizer)
    nu = r.nu_map()
    Kset = set(r.K)
    if r.case in ("2a", "2b", "2c"):
        t0 = min(t for t in r.T if t not in Kset)
        mu_g = induced_form(g, r.K, nu, t0)
        head = ("M2R2" if nu[t0] == 1 else "H2", [t0])
        sub = recipe_type2(g, mu_g) if r.case == "2c" else recipe_type1(g, mu_g)
        return [head] + sub
    if r.case == "2d":
        t0 = min(nu)
        K2 = sub_two_torsion(g, r.K)
        mu_g = induced_form(g, K2, nu, t0)
        head = ("M2R2" if nu[t0] == 1 else "H2", [t0])
        return [head] + recipe_z4(g, r.beta_form(), mu_g)
    if r.case == "2e":
        g0 = min(nu)
        A = greedy_complement(g, r.K, r.f)
        mu_a = QuadraticForm(g, {x: nu[g.mul(g0, x)] * nu[g0] for x in A})
        return [("M2C2", [g0])] + recipe_type1(g, mu_a)
    raise RealizationError(f"unknown case {r.case}")


def realize_from_invariants(r: ClassificationRecord) -> GradedMatrixAlgebra:
    if KIND_OF_CASE.get(r.case, r.kind) != r.kind:
        raise RealizationError(f"case {r.case} lives over {KIND_OF_CASE[r.case]}, record declares {r.kind}")
    try:
        recipe = realization_recipe(r)
    except FormError as exc:
        raise RealizationError(str(exc)) from exc
    a = assemble(r.group, recipe)
    if a.kind != r.kind or a.n != r.n:
        raise RealizationError(f"payload realizes {a.kind} n={a.n}, record declares {r.kind} n={r.n}")
    if a.support != tuple(sorted(r.T)):
        raise RealizationError("realized support differs from T")
    got = classify(a).case
    if got != r.case:
        raise RealizationError(f"payload realizes case {got}, record declares {r.case}")
    return a


# ---------------------------------------------------------------------------
# payload enumeration (full support T = G)

def _n_for(case: str, order: int) -> int:
    k = order.bit_length() - 1
    m = {"1a": k // 2, "1b": k // 2 - 1, "1c": (k - 1) // 2, "1d": (k - 1) // 2,
         "2a": (k + 1) // 2, "2b": (k - 1) // 2, "2c": k // 2, "2d": k // 2, "2e": k // 2,
         "3a": (k + 2) // 2, "3b": k // 2, "3c": (k + 1) // 2, "3d": (k + 1) // 2}[case]
    return 2 ** m


KIND_OF_CASE = {"1a": "R", "1b": "H", "1c": "C", "1d": "C", "2a": "R", "2b": "H", "2c": "C",
                "2d": "C", "2e": "C", "3a": "R", "3b": "H", "3c": "C", "3d": "C"}
DIM_OF_CASE = {c: int(c[0]) if c[0] != "3" else 4 for c in KIND_OF_CASE}


def support_shapes(case: str, max_order: int = 16) -> list[tuple[int, int]]:
    """Group shapes (a, b) of the supports of a case, up to the given order."""
    out = []
    for m in range(0, 8):
        a, b = {
            "1a": (2 * m, 0), "1b": (2 * m + 2, 0), "1c": (2 * m + 1, 0), "1d": (2 * m - 1, 1),
            "2a": (2 * m - 1, 0), "2b": (2 * m + 1, 0), "2c": (2 * m, 0), "2d": (2 * m - 2, 1),
            "2e": (2 * m - 2, 1), "3a": (2 * m - 2, 0), "3b": (2 * m, 0), "3c": (2 * m - 1, 0),
            "3d": (2 * m - 3, 1)}[case]
        if m < CASE_MIN_M[case] or a < 0:
            continue
        if 2 ** a * 4 ** b <= max_order:
            out.append((a, b))
    return out


def _dim1_payloads(case: str, group: FinAbelianGroup, kind: str, n: int) -> Iterator[ClassificationRecord]:
    T = group.elements
    if case in ("1a", "1b"):
        want = 1 if case == "1a" else -1
        for mu in enumerate_quadratic_forms(group):
            beta = polarize(mu)
            if radical_and_type(beta, mu).tag != "I":
                continue
            if (sum(mu.values.values()) > 0) == (want == 1):
                yield ClassificationRecord(case, kind, n, 1, group, T, mu=_mu_tuple(mu))
    elif case == "1c":
        for mu in enumerate_quadratic_forms(group):
            ft = radical_and_type(polarize(mu), mu)
            if ft.tag == "II":
                yield ClassificationRecord(case, kind, n, 1, group, T, mu=_mu_tuple(mu), f=ft.semineutral)
    elif case == "1d":
        f = group.distinguished_f()
        T2 = group.two_torsion()
        for beta in bicharacters_on(group, T):
            ft = radical_and_type(beta)
            if ft.tag != "II":
                continue
            for mu in enumerate_quadratic_forms(group, T2, beta.restrict(T2)):
                if mu(f) == -1:
                    yield ClassificationRecord(case, kind, n, 1, group, T, mu=_mu_tuple(mu),
                                               beta=_beta_tuple(beta), f=f)


def _nice_maps(group, T, K, forms) -> Iterator[dict]:
    """All nu on T minus K whose induced form at g = min(T minus K) is in ``forms``."""
    Kset = set(K)
    g = min(t for t in T if t not in Kset)
    for mu in forms:
        for s in (1, -1):
            yield {group.mul(g, k): s * mu(k) for k in K}


def enumerate_payloads(case: str, group: FinAbelianGroup) -> Iterator[ClassificationRecord]:
    """Every valid record of ``case`` with full support T = group."""
    kind = KIND_OF_CASE[case]
    n = _n_for(case, group.order)
    T = group.elements
    if case in ("1a", "1b", "1c", "1d"):
        yield from _dim1_payloads(case, group, kind, n)
        return
    if case in ("3a", "3b", "3c", "3d"):
        inner = {"3a": "1b", "3b": "1a", "3c": "1c", "3d": "1d"}[case]
        ck = CENTRALIZER_KIND[kind]
        for rc in _dim1_payloads(inner, group, ck, _n_for(inner, group.order)):
            yield ClassificationRecord(case, kind, n, 4, group, T, centralizer=rc)
        return
    if case in ("2a", "2b", "2c"):
        for K in index2_subgroups(group, T):
            forms = enumerate_quadratic_forms(group, K)
            for nu in _nice_maps(group, T, K, forms):
                try:
                    nm = check_nice_map(group, T, K, nu)
                except FormError:
                    continue
                tag, sign = nm.form_type.tag, nm.sign
                ok = {"2a": tag == "I" and sign == 1, "2b": tag == "I" and sign == -1, "2c": tag == "II"}[case]
                if ok:
                    yield ClassificationRecord(case, kind, n, 2, group, T, K=K, nu=tuple(sorted(nu.items())))
        return
    f = group.distinguished_f()
    T2 = group.two_torsion()
    if case == "2d":
        for K in index2_subgroups(group, T):
            if not any(group.elem_order(k) == 4 for k in K):
                continue
            K2 = sub_two_torsion(group, K)
            for beta in bicharacters_on(group, K):
                if radical_and_type(beta).tag != "II":
                    continue
                forms = enumerate_quadratic_forms(group, K2, beta.restrict(K2))
                for nu in _nice_maps(group, T2, K2, [mu for mu in forms if mu(f) == -1]):
                    yield ClassificationRecord(case, kind, n, 2, group, T, K=K, beta=_beta_tuple(beta),
                                               nu=tuple(sorted(nu.items())), f=f)
        return
    if case == "2e":
        g0 = min(t for t in T if t not in set(T2))
        for mu in enumerate_quadratic_forms(group, T2):
            ft = radical_and_type(polarize(mu), mu)
            if ft.tag != "II" or ft.semineutral != f:
                continue
            nu = {group.mul(g0, k): mu(k) for k in T2}  # normalized: nu(g0) = +1
            yield ClassificationRecord(case, kind, n, 2, group, T, K=T2, nu=tuple(sorted(nu.items())), f=f)
        return
    raise ClassificationError(f"no payload enumeration for case {case}")


def all_payloads(max_order: int = 16) -> Iterator[ClassificationRecord]:
    for case in KIND_OF_CASE:
        for a, b in support_shapes(case, max_order):
            yield from enumerate_payloads(case, FinAbelianGroup(a, b))
