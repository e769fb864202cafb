"""Brute-force cross-checks of the construction and classification pipeline.

Each suite returns a VerificationReport; failures carry a small datum that
reproduces the problem.  Suites are deterministic given their seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import gf2
from . import scalars as S
from .classify import DeferredCase, classify, is_equivalent, is_isomorphic, neutral_and_center
from .forms import (Bicharacter, FormError, SymplecticFamily, arf_majority, arf_product, bicharacter_from_function,
                    enumerate_quadratic_forms, symplectic_basis, transvect_basis)
from .graded import (BLOCK_NAMES, GradedMatrixAlgebra, build_block, check_division_grading, check_grading,
                     coarsen_along_hom, conjugate_grading, relabel_degrees, tensor_product)
from .groups import FinAbelianGroup, GroupHom, format_element, shape_of, shape_str
from .matrices import MatrixExact
from .realize import (CASE_MIN_M, DIM_OF_CASE, KIND_OF_CASE, canonical_representative, enumerate_payloads,
                      realize_from_invariants, support_shapes)
from .refine import projection_hom, refine, same_components


@dataclass
class VerificationReport:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)  # (description, datum)
    seed: int | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, what: str, datum=None) -> None:
        self.failures.append((what, datum))

    def format(self) -> str:
        head = f"{self.suite}: {'pass' if self.passed else 'FAIL'} ({self.cases} cases"
        head += f", seed {self.seed})" if self.seed is not None else ")"
        lines = [head]
        lines += [f"  note: {n}" for n in self.notes]
        lines += [f"  failure: {w}" + (f" [{d}]" if d is not None else "") for w, d in self.failures]
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# dense rank over Q(sqrt2), kept apart from the library's sparse echelon code

def _dense(m: MatrixExact) -> list:
    vec = m.real_vector()
    return [vec.get(i, (0, 0)) for i in range(m.real_dim)]


def dense_rank(rows: list[list]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != (0, 0)), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = S.rq_inv(rows[rank][c])
        prow = [S.rq_mul(x, inv) for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][c] != (0, 0):
                f = rows[i][c]
                rows[i] = [S.rq_sub(x, S.rq_mul(f, y)) for x, y in zip(rows[i], prow)]
        rank += 1
    return rank


def block_product_failures(a: GradedMatrixAlgebra) -> tuple[int, list]:
    """Recompute every basis product and test membership by rank; returns (checks, offending pairs)."""
    g = a.group
    dense = {t: [_dense(m) for m in b] for t, b in a.components.items()}
    ranks = {t: dense_rank(rows) for t, rows in dense.items()}
    bad = []
    checks = 0
    for u, bu in a.components.items():
        for v, bv in a.components.items():
            w = g.mul(u, v)
            for i, x in enumerate(bu):
                for j, y in enumerate(bv):
                    checks += 1
                    p = _dense(x.matmul(y))
                    if all(c == (0, 0) for c in p):
                        continue
                    if w not in dense or dense_rank(dense[w] + [p]) != ranks[w]:
                        bad.append((format_element(u), i, format_element(v), j))
    return checks, bad


def corrupt_block(a: GradedMatrixAlgebra, degree, index: int = 0) -> GradedMatrixAlgebra:
    """Negate the first nonzero off-diagonal entry (or the first entry) of one basis matrix."""
    m = a.components[degree][index]
    n = m.n
    cells = [(i, j) for i in range(n) for j in range(n) if i != j] + [(i, i) for i in range(n)]
    i, j = next(c for c in cells if m.e[c[0] * n + c[1]] != S.raw_zero(m.kind))
    rows = [[m[r, c] for c in range(n)] for r in range(n)]
    rows[i][j] = -rows[i][j]
    comps = dict(a.components)
    basis = list(comps[degree])
    basis[index] = MatrixExact.from_rows(m.kind, rows)
    comps[degree] = basis
    return GradedMatrixAlgebra(a.kind, a.n, a.group, comps, full=a.full)


def verify_blocks(blocks: dict) -> VerificationReport:
    rep = VerificationReport("building-blocks")
    for name, a in blocks.items():
        rep.cases += 1
        checks, bad = block_product_failures(a)
        rep.notes.append(f"{name}: {checks} product checks")
        if bad:
            u, i, v, j = bad[0]
            rep.fail(f"{name}: product {u}[{i}] * {v}[{j}] leaves its component", bad[0])
        gr = check_grading(a)
        if not gr.ok:
            if not bad:
                rep.fail(f"{name}: {gr.first()}")
            continue
        dr = check_division_grading(a, grading_checked=True)
        if not dr.ok:
            rep.fail(f"{name}: {dr.violations[0]}")
    return rep


def corrupted_example() -> GradedMatrixAlgebra:
    """M2R1 in a non-monomial basis with one sign flipped; sign flips on monomial bases only merge components."""
    a = conjugate_grading(build_block("M2R1"), MatrixExact.from_rows("R", [[1, 1], [0, 1]]))
    return corrupt_block(a, (1, 0))


def verify_building_blocks() -> VerificationReport:
    return verify_blocks({name: build_block(name) for name in BLOCK_NAMES})


# ---------------------------------------------------------------------------

def list_shape(case: str, m: int) -> str:
    """Support shape claimed for a list entry."""
    for a, b in support_shapes(case, 2 ** 40):
        if _m_of(case, a, b) == m:
            return shape_str((a, b))
    raise ValueError(f"no list entry {case} with m = {m}")


def _m_of(case: str, a: int, b: int) -> int:
    k = a + 2 * b
    return {"1a": k // 2, "1b": k // 2 - 1, "1c": (k - 1) // 2, "1d": (k - 1) // 2,
            "2a": (k + 1) // 2, "2b": (k - 1) // 2, "2c": k // 2, "2d": k // 2, "2e": k // 2,
            "3a": (k + 2) // 2, "3b": k // 2, "3c": (k + 1) // 2, "3d": (k + 1) // 2}[case]


def random_automorphism(group: FinAbelianGroup, rng: random.Random) -> GroupHom:
    elems = group.elements
    inv = [x for x in elems if group.elem_order(x) <= 2]
    four = [x for x in elems if group.elem_order(x) == 4]
    while True:
        images = [rng.choice(inv) for _ in range(group.a)] + [rng.choice(four) for _ in range(group.b)]
        phi = GroupHom(group, group, images)
        if phi.is_bijective():
            return phi


def complex_linear_example() -> GradedMatrixAlgebra:
    """The 2x2 complex block coarsened so that iI becomes neutral."""
    a = build_block("M2C1")
    return coarsen_along_hom(a, GroupHom(a.group, FinAbelianGroup(2), [(1, 0), (0, 1)]))


def verify_case_list(max_m: int = 2, seed: int = 0) -> VerificationReport:
    rep = VerificationReport("list", seed=seed)
    rng = random.Random(seed)
    built = {}
    for case, lo in CASE_MIN_M.items():
        for m in range(lo, max_m + 1):
            rep.cases += 1
            key = f"{case} m={m}"
            a = canonical_representative(case, m)
            dr = check_division_grading(a)
            if not dr.ok:
                rep.fail(f"{key}: not a division grading", dr.violations[:1])
                continue
            if a.kind != KIND_OF_CASE[case] or a.n != 2 ** m:
                rep.fail(f"{key}: built M_{a.n}({a.kind})")
            got = shape_str(shape_of(a.group, a.support))
            if got != list_shape(case, m):
                rep.fail(f"{key}: support {got}, expected {list_shape(case, m)}")
            if a.component_dim != DIM_OF_CASE[case]:
                rep.fail(f"{key}: component dimension {a.component_dim}")
            r = classify(a)
            if r.case != case:
                rep.fail(f"{key}: classified as {r.case}")
            twin = relabel_degrees(a, random_automorphism(a.group, rng))
            if not is_equivalent(a, twin):
                rep.fail(f"{key}: not equivalent to a relabeled copy")
            built[key] = r
    keys = list(built)
    for i, x in enumerate(keys):
        for y in keys[i + 1:]:
            if is_equivalent(built[x], built[y]):
                rep.fail(f"{x} and {y} reported equivalent")
    _check_separations(rep)
    return rep


def _check_separations(rep: VerificationReport) -> None:
    # D_e = Z(D) separates the complex-linear case from 2c
    c2 = canonical_representative("2c", 1)
    f2 = complex_linear_example()
    rep.cases += 1
    if neutral_and_center(c2).de_is_center or not neutral_and_center(f2).de_is_center:
        rep.fail("2c/2f: centre test does not separate")
    if classify(f2).case != "2f" or is_equivalent(c2, f2):
        rep.fail("2c/2f: complex-linear example not separated")
    try:
        is_equivalent(f2, f2)
        rep.fail("2f: equivalence was decided")
    except DeferredCase:
        pass
    # order-4 elements in the centralizer support separate 2d from 2e
    for case, expect in (("2d", True), ("2e", False)):
        a = canonical_representative(case, 2)
        rep.cases += 1
        de = a.component(a.group.identity)
        K = [t for t in a.support if all(x.matmul(y) == y.matmul(x) for x in de for y in a.component(t))]
        if any(a.group.elem_order(t) == 4 for t in K) != expect:
            rep.fail(f"{case}: order-4 test on the centralizer support fails")


# ---------------------------------------------------------------------------

def standard_symplectic(group: FinAbelianGroup) -> Bicharacter:
    """beta(e_{2i-1}, e_{2i}) = -1 on Z2^{2m}."""
    def b(u, v):
        s = 0
        for i in range(0, group.a - 1, 2):
            s += u[i] * v[i + 1] + u[i + 1] * v[i]
        return -1 if s % 2 else 1
    return bicharacter_from_function(group, group.elements, b)


def verify_arf_independence(m: int, trials: int = 100, seed: int = 0) -> VerificationReport:
    rep = VerificationReport(f"arf m={m}", seed=seed)
    if m == 0:
        return rep
    rng = random.Random(seed)
    group = FinAbelianGroup(2 * m)
    beta = standard_symplectic(group)
    fam0 = symplectic_basis(beta)
    plus = minus = 0
    for mu in enumerate_quadratic_forms(group, beta=beta):
        rep.cases += 1
        maj = arf_majority(mu)
        plus += maj == 1
        minus += maj == -1
        fam = fam0
        for _ in range(trials):
            fam = transvect_basis(beta, fam, rng)
            if arf_product(mu, fam) != maj:
                rep.fail("product formula disagrees with majority", (mu.key, fam.pairs))
                break
    rep.notes.append(f"{plus} forms with Arf +1, {minus} with Arf -1")
    return rep


# ---------------------------------------------------------------------------

HH_RELABELING = ((1, 0, 1, 0), (1, 1, 1, 0), (0, 1, 0, 1), (0, 1, 1, 1))  # a1', b1', a2', b2'


def _real_sign_of_square(x: MatrixExact) -> int:
    return S.rq_sign(x.matmul(x).real_scalar_value())


def _commute_sign(x: MatrixExact, y: MatrixExact) -> int:
    return 1 if x.matmul(y) == y.matmul(x) else -1


def verify_hh_relabeling() -> VerificationReport:
    rep = VerificationReport("hh-relabeling")
    hh = tensor_product([build_block("H1"), build_block("H1")])
    g = hh.group
    phi = GroupHom(g, g, HH_RELABELING)  # new basis -> old degrees
    if not phi.is_bijective():
        rep.fail("relabeling is not an automorphism")
        return rep
    inv = {phi(x): x for x in g.elements}
    relabeled = relabel_degrees(hh, lambda t: inv[t])
    for i, x in enumerate(g.generators()):
        rep.cases += 1
        if _real_sign_of_square(relabeled.representative(x)) != 1:
            rep.fail(f"mu on new basis element {i} is not +1", format_element(x))
    gens = g.generators()
    for x in gens:
        for y in gens:
            rep.cases += 1
            old = _commute_sign(hh.representative(x), hh.representative(y))
            new = _commute_sign(hh.representative(phi(x)), hh.representative(phi(y)))
            if old != new:
                rep.fail("relabeling is not symplectic", (format_element(x), format_element(y)))
    for a, what in ((hh, "H1 x H1"), (relabeled, "relabeled")):
        rep.cases += 1
        if classify(a).case != "1a":
            rep.fail(f"{what} does not classify as 1a")
    rr = tensor_product([build_block("M2R1"), build_block("M2R1")])
    target = realize_from_invariants(classify(rr))
    rep.cases += 1
    if not is_isomorphic(relabeled, target):
        rep.fail("relabeled grading is not isomorphic to the M2R1 x M2R1 realization")
    return rep


# ---------------------------------------------------------------------------

def verify_refinement_chain(max_m: int = 2) -> VerificationReport:
    rep = VerificationReport("refinement")
    for case, lo in CASE_MIN_M.items():
        if DIM_OF_CASE[case] == 1:
            continue
        for m in range(lo, max_m + 1):
            rep.cases += 1
            key = f"{case} m={m}"
            a = canonical_representative(case, m)
            chain = [a]
            while chain[-1].component_dim != 1 and len(chain) < 3:
                chain.append(refine(chain[-1]))
            last = chain[-1]
            steps = len(chain) - 1
            if steps != {2: 1, 4: 2}[a.component_dim]:
                rep.fail(f"{key}: {steps} refinements")
                continue
            if not check_division_grading(last).ok:
                rep.fail(f"{key}: refinement is not a division grading")
            want = "Z2^1 x " if steps == 1 else "Z2^2 x "
            sa, sb = shape_of(a.group, a.support)
            la, lb = shape_of(last.group, last.support)
            if (la, lb) != (sa + steps, sb):
                rep.fail(f"{key}: refined support {shape_str((la, lb))} is not {want}T")
            back = last
            for prev in reversed(chain[:-1]):
                back = coarsen_along_hom(back, projection_hom(back.group, prev.group))
            if not same_components(back, a):
                rep.fail(f"{key}: coarsening does not restore the components")
    return rep


# ---------------------------------------------------------------------------
# counting

class UnsupportedShape(ValueError):
    code = "unsupported-shape"


def _cases_for(kind: str, dim: int, group: FinAbelianGroup) -> list[str]:
    out = []
    for c, k in KIND_OF_CASE.items():
        if k != kind or DIM_OF_CASE[c] != dim:
            continue
        if (group.a, group.b) in support_shapes(c, group.order):
            out.append(c)
    return out


def _count_dim1_elementary(case: str, k: int) -> int:
    """Forms on Z2^k of type I (with Arf sign) or II, counted one bicharacter at a time."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    total = 0
    for bits in range(1 << len(pairs)):
        rows = [0] * k
        for idx, (i, j) in enumerate(pairs):
            if bits >> idx & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        r = gf2.rank(rows)
        upper = [row & ~((1 << (i + 1)) - 1) for i, row in enumerate(rows)]
        if case in ("1a", "1b"):
            if r != k:
                continue
            zeros = 0
            for x in range(1 << k):
                q = 0
                for i in range(k):
                    if x >> i & 1:
                        q ^= gf2.parity(upper[i] & x)
                zeros += q == 0
            # the forms with this polarization are x -> q0(x) + B(c, x); Arf flips with q0(c)
            arf_q0 = 1 if 2 * zeros > 1 << k else -1
            plus = zeros if arf_q0 == 1 else (1 << k) - zeros
            total += plus if case == "1a" else (1 << k) - plus
        elif case == "1c":
            if r == k - 1:
                total += 1 << (k - 1)  # linear part on the radical must send f to -1
    return total


def count_isomorphism_classes(kind: str, T: FinAbelianGroup, dim: int = 1) -> int:
    """Isomorphism classes of division gradings with support T, component dimension dim.

    Complex-linear gradings (component dimension 2 with neutral part equal to the
    centre) are not counted.
    """
    if T.order > 64:
        raise UnsupportedShape(f"|T| = {T.order} exceeds 64")
    if dim == 2 and T.order > 32:
        raise UnsupportedShape("dimension-2 counts are enumerated only up to |T| = 32")
    total = 0
    for case in _cases_for(kind, dim, T):
        if T.b == 0 and case in ("1a", "1b", "1c"):
            total += _count_dim1_elementary(case, T.a)
        elif T.b == 0 and case in ("3a", "3b", "3c"):
            total += _count_dim1_elementary({"3a": "1b", "3b": "1a", "3c": "1c"}[case], T.a)
        else:
            total += sum(1 for _ in enumerate_payloads(case, T))
    return total


def count_by_realization(kind: str, T: FinAbelianGroup, dim: int = 1) -> int:
    """Second path: realize every payload, re-classify from matrices, count distinct records."""
    seen = set()
    for case in _cases_for(kind, dim, T):
        for r in enumerate_payloads(case, T):
            a = realize_from_invariants(r)
            seen.add(classify(a))
    return len(seen)


def verify_counts(max_order: int = 16) -> VerificationReport:
    rep = VerificationReport("counts")
    for kind in "RCH":
        for dim in (1, 2, 4):
            for a in range(0, 5):
                for b in (0, 1):
                    T = FinAbelianGroup(a, b)
                    if T.order > max_order:
                        continue
                    rep.cases += 1
                    try:
                        x = count_isomorphism_classes(kind, T, dim)
                        y = count_by_realization(kind, T, dim)
                    except (FormError, UnsupportedShape) as exc:
                        rep.fail(f"{kind} dim {dim} on {T}: {exc}")
                        continue
                    if x != y:
                        rep.fail(f"{kind} dim {dim} on {T}: enumeration {x}, realization {y}")
                    elif x:
                        rep.notes.append(f"{kind} dim {dim} on {shape_str((a, b))}: {x}")
    return rep


# ---------------------------------------------------------------------------

SUITES = ("blocks", "list", "arf", "hh", "refine", "counts")


def run_suite(name: str, seed: int = 0, max_m: int = 2) -> list[VerificationReport]:
    if name == "blocks":
        return [verify_building_blocks()]
    if name == "list":
        return [verify_case_list(max_m, seed)]
    if name == "arf":
        return [verify_arf_independence(m, 100, seed + m) for m in range(0, 4)]
    if name == "hh":
        return [verify_hh_relabeling()]
    if name == "refine":
        return [verify_refinement_chain(max_m)]
    if name == "counts":
        return [verify_counts()]
    if name == "all":
        out = []
        for s in SUITES:
            out += run_suite(s, seed, max_m)
        return out
    raise ValueError(f"unknown suite {name!r}")


def run_all(seed: int = 0, max_m: int = 2) -> list[VerificationReport]:
    return run_suite("all", seed, max_m)
