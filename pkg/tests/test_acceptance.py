"""Acceptance gate.  Each test prints one pass/fail line; the lines are repeated
in the terminal summary under "acceptance criteria".  All checks are exact."""
import contextlib
import glob
import io
import os
import time

import pytest

from divgrad import gda
from divgrad.classify import classify, extract_mu, is_isomorphic
from divgrad.cli import main
from divgrad.forms import arf, arf_majority, bicharacter_from_function, enumerate_quadratic_forms, polarize
from divgrad.graded import (BLOCK_NAMES, build_block, check_division_grading, check_grading, coarsen_along_hom,
                            relabel_degrees, tensor_product)
from divgrad.groups import FinAbelianGroup, GroupHom, shape_of, shape_str
from divgrad.oracle import (HH_RELABELING, complex_linear_example, count_by_realization, count_isomorphism_classes,
                            verify_arf_independence, verify_counts)
from divgrad.realize import CASE_MIN_M, all_payloads, canonical_representative, realize_from_invariants
from divgrad.refine import projection_hom, refine, same_components

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

# claimed (kind, component dimension, support shape (a, b) as a function of m) per list entry
CLAIMS = {
    "1a": ("R", 1, lambda m: (2 * m, 0)),
    "1b": ("H", 1, lambda m: (2 * m + 2, 0)),
    "1c": ("C", 1, lambda m: (2 * m + 1, 0)),
    "1d": ("C", 1, lambda m: (2 * m - 1, 1)),
    "2a": ("R", 2, lambda m: (2 * m - 1, 0)),
    "2b": ("H", 2, lambda m: (2 * m + 1, 0)),
    "2c": ("C", 2, lambda m: (2 * m, 0)),
    "2d": ("C", 2, lambda m: (2 * m - 2, 1)),
    "2e": ("C", 2, lambda m: (2 * m - 2, 1)),
    "3a": ("R", 4, lambda m: (2 * m - 2, 0)),
    "3b": ("H", 4, lambda m: (2 * m, 0)),
    "3c": ("C", 4, lambda m: (2 * m - 1, 0)),
    "3d": ("C", 4, lambda m: (2 * m - 3, 1)),
}
LIST = [(c, m) for c in CLAIMS for m in range(CASE_MIN_M[c], 3)]


def cli(*argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = main(list(argv))
    return status, out.getvalue(), err.getvalue()


def test_criterion_1_building_blocks(criterion):
    t0 = time.perf_counter()
    bad = []
    for name in BLOCK_NAMES:
        a = build_block(name)
        if not check_grading(a).ok or not check_division_grading(a, grading_checked=True).ok:
            bad.append(name)
    dt = time.perf_counter() - t0
    criterion(1, "building blocks", not bad and dt < 1.0,
              f"{len(BLOCK_NAMES) - len(bad)}/{len(BLOCK_NAMES)} blocks are division gradings in {dt:.2f} s")


def test_criterion_2_form_theory(criterion):
    t0 = time.perf_counter()
    g = FinAbelianGroup(2)
    nontrivial = bicharacter_from_function(g, g.elements,
                                           lambda u, v: -1 if (u[0] * v[1] + u[1] * v[0]) % 2 else 1)
    forms = [mu for mu in enumerate_quadratic_forms(g) if polarize(mu) == nontrivial]
    arf_h = arf(extract_mu(build_block("H1")))
    arf_r = arf(extract_mu(build_block("M2R1")))
    majorities = sorted(arf_majority(mu) for mu in forms)
    reports = [verify_arf_independence(m, trials=100, seed=m) for m in (1, 2, 3)]
    dt = time.perf_counter() - t0
    ok = (len(forms) == 4 and majorities == [-1, 1, 1, 1] and arf_h == -1 and arf_r == 1
          and all(r.passed for r in reports) and dt < 30)
    criterion(2, "form theory", ok,
              f"{len(forms)} forms with the nontrivial bicharacter, Arf(H) = {arf_h:+d}, Arf(M2(R)) = {arf_r:+d}, "
              f"product formula = majority over 100 random bases for m = 1..3 "
              f"({sum(r.cases for r in reports)} forms) in {dt:.1f} s")


@pytest.mark.slow
def test_criterion_3_classification_table(criterion, tmp_path):
    t0 = time.perf_counter()
    problems = []
    docs = {}
    for case, m in LIST:
        path = str(tmp_path / f"{case}_m{m}.gda")
        assert cli("canonical", case, str(m), "--out", path)[0] == 0
        docs[(case, m)] = path
        rec_path = str(tmp_path / f"{case}_m{m}.gdr")
        status, out, _ = cli("classify", path, "--out", rec_path)
        r = gda.load_record(rec_path)
        kind, dim, shape = CLAIMS[case]
        want = shape_str(shape(m))
        got = shape_str(shape_of(r.group, r.T))
        if status != 0 or not out.startswith(f"case {case},") or r.case != case:
            problems.append(f"{case} m={m}: classified as {out.strip()!r}")
        if got != want or r.dim != dim or r.kind != kind or r.n != 2 ** m:
            problems.append(f"{case} m={m}: {r.kind} n={r.n} dim {r.dim} on {got}, claimed {kind} dim {dim} on {want}")
        # a relabeled copy of the same entry must be equivalent to it
        a = gda.load_algebra(path)
        twin = relabel_degrees(a, _shear(a.group))
        twin_path = str(tmp_path / f"{case}_m{m}_twin.gda")
        with open(twin_path, "w", encoding="utf-8") as fh:
            fh.write(gda.format_document(twin))
        if not cli("equiv", path, twin_path)[1].startswith("yes"):
            problems.append(f"{case} m={m}: not equivalent to its relabeled copy")

    f2 = str(tmp_path / "2f.gda")
    with open(f2, "w", encoding="utf-8") as fh:
        fh.write(gda.format_document(complex_linear_example()))
    entries = list(docs.items()) + [(("2f", 1), f2)]
    pairs = 0
    for i, (x, px) in enumerate(entries):
        for y, py in entries[i + 1:]:
            pairs += 1
            status, out, _ = cli("equiv", px, py)
            if status != 0 or not out.startswith("no"):
                problems.append(f"{x} vs {y}: {out.splitlines()[0] if out else status}")
    # the two separating tests, on the matrices themselves
    c2 = canonical_representative("2c", 1)
    de = c2.component(c2.group.identity)
    f2a = complex_linear_example()
    de_f = f2a.component(f2a.group.identity)
    if _is_central(c2, de) or not _is_central(f2a, de_f):
        problems.append("D_e = Z(D) does not separate 2c from 2f")
    for case, expect in (("2d", True), ("2e", False)):
        a = canonical_representative(case, 2)
        de = a.component(a.group.identity)
        K = [t for t in a.support if all(x.matmul(y) == y.matmul(x) for x in de for y in a.component(t))]
        if any(a.group.elem_order(t) == 4 for t in K) != expect:
            problems.append(f"{case}: order-4 test on supp(C_D(D_e)) gives the wrong answer")
    dt = time.perf_counter() - t0
    criterion(3, "classification table", not problems and dt < 300,
              f"{len(LIST)} entries with m <= 2 match tag, support and dimension; {pairs} cross-tag pairs 'no', "
              f"{len(LIST)} relabeled twins 'yes' in {dt:.0f} s" + ("" if not problems else f"; {problems[:3]}"))


def _shear(group):
    """x_1 -> x_1 x_2 on the first two generators (identity on a cyclic group)."""
    gens = group.generators()
    if len(gens) >= 2 and group.elem_order(gens[1]) == 2:
        gens = [group.mul(gens[0], gens[1])] + gens[1:]
    return GroupHom(group, group, gens)


def _is_central(a, elems):
    basis = [x for b in a.components.values() for x in b]
    return all(x.matmul(y) == y.matmul(x) for x in elems for y in basis)


def test_criterion_4_hh_relabeling(criterion, tmp_path):
    hh = tensor_product([build_block("H1"), build_block("H1")])
    g = hh.group
    phi = GroupHom(g, g, list(HH_RELABELING))
    inv = {phi(x): x for x in g.elements}
    relabeled = relabel_degrees(hh, lambda t: inv[t])
    mu = extract_mu(relabeled)
    new_basis = g.generators()
    signs = [mu(t) for t in new_basis]
    rr = tensor_product([build_block("M2R1"), build_block("M2R1")])
    verdict = is_isomorphic(relabeled, rr)
    # the same through the command line
    relabel_arg = " ".join("(" + ",".join(map(str, x)) + ")" for x in HH_RELABELING)
    p1, p2 = str(tmp_path / "hh.gda"), str(tmp_path / "rr.gda")
    cli("build", "H1", "H1", "--relabel", relabel_arg, "--out", p1)
    cli("build", "M2R1", "M2R1", "--out", p2)
    status, out, _ = cli("iso", p1, p2)
    ok = signs == [1, 1, 1, 1] and verdict.value and status == 0 and out.startswith("yes")
    criterion(4, "H x H relabeling", ok,
              f"mu on the new basis = {signs}, isomorphic to M2(R) x M2(R): {bool(verdict.value)} "
              f"(command line: {out.splitlines()[0] if out else status})")


@pytest.mark.slow
def test_criterion_5_round_trips(criterion):
    t0 = time.perf_counter()
    total, bad, cases = 0, [], set()
    for r in all_payloads(max_order=16):
        total += 1
        cases.add(r.case)
        if classify(realize_from_invariants(r)) != r:
            bad.append(r.summary())
    dt = time.perf_counter() - t0
    criterion(5, "round trips", not bad and len(cases) == 13,
              f"{total - len(bad)}/{total} payloads on groups of order <= 16 "
              f"({len(cases)} cases) survive realize then classify in {dt:.0f} s")


def test_criterion_6_refinement(criterion):
    done, problems = 0, []
    for case, m in LIST:
        a = canonical_representative(case, m)
        if a.component_dim == 1:
            continue
        steps = [a]
        while steps[-1].component_dim > 1:
            steps.append(refine(steps[-1]))
        b = steps[-1]
        k = len(steps) - 1
        want_support = {(0,) * k + t for t in a.support}
        got_support = {t[k:] for t in b.support}
        full = len(b.support) == 2 ** k * len(a.support)
        if k != {2: 1, 4: 2}[a.component_dim]:
            problems.append(f"{case} m={m}: {k} steps")
        if not check_division_grading(b).ok or b.component_dim != 1:
            problems.append(f"{case} m={m}: refinement is not a dim-1 division grading")
        if got_support != set(a.support) or not full or not want_support <= set(b.support):
            problems.append(f"{case} m={m}: support is not Z2^{k} x T")
        back = b
        for prev in reversed(steps[:-1]):
            back = coarsen_along_hom(back, projection_hom(back.group, prev.group))
            if not same_components(back, prev):
                problems.append(f"{case} m={m}: coarsening does not recover the components")
                break
        done += 1
    criterion(6, "refinement", not problems and done > 0,
              f"{done} dim-2/dim-4 representatives refine to dim 1 on Z2^k x T and coarsen back exactly"
              + ("" if not problems else f"; {problems[:3]}"))


@pytest.mark.slow
def test_criterion_7_counts(criterion):
    t0 = time.perf_counter()
    rep = verify_counts(max_order=16)
    z2sq = FinAbelianGroup(2)
    r_count = (count_isomorphism_classes("R", z2sq), count_by_realization("R", z2sq))
    h_count = (count_isomorphism_classes("H", z2sq), count_by_realization("H", z2sq))
    dt = time.perf_counter() - t0
    criterion(7, "counting", rep.passed and r_count == (3, 3) and h_count == (1, 1),
              f"{rep.cases} shapes agree across enumeration and realize-and-classify; Z2^2 on M2(R): {r_count[0]}, "
              f"on H: {h_count[0]} ({dt:.0f} s)")


def test_criterion_8_serialization(criterion):
    paths = sorted(glob.glob(os.path.join(FIXTURES, "*.gda")) + glob.glob(os.path.join(FIXTURES, "*.gdr")))
    exact, inputs, bad = 0, [], []
    for p in paths:
        with open(p, encoding="utf-8") as fh:
            text = fh.read()
        name = os.path.basename(p)
        if name.startswith(("handwritten_", "bad_")):
            inputs.append((name, text))
            continue
        fmt = gda.format_record(gda.parse_record(text)) if p.endswith(".gdr") else \
            gda.format_document(gda.parse_document(text))
        if fmt == text:
            exact += 1
        else:
            bad.append(name)
    # non-canonical inputs: hand-written text reaches a byte-stable form, malformed text is rejected
    for name, text in inputs:
        if name.startswith("bad_"):
            try:
                gda.parse_document(text)
                bad.append(name)
            except gda.DocumentError:
                pass
        else:
            once = gda.format_document(gda.parse_document(text))
            if gda.format_document(gda.parse_document(once)) != once:
                bad.append(name)
    criterion(8, "serialization", not bad and exact > 0,
              f"{exact}/{len(paths) - len(inputs)} canonical fixtures round-trip byte for byte; "
              f"{len(inputs)} non-canonical inputs handled" + ("" if not bad else f"; failing: {bad}"))
