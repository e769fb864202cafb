"""Text serialization of graded algebras (``gda 1``) and classification records (``gdr 1``).

A document lists the coefficient kind, the matrix size, the ambient group and
then one block per homogeneous component::

    gda 1
    kind H
    n 1
    group Z2^2
    component (0,0):
    [ 1 ]
    component (0,1):
    [ j ]

Degrees are additive exponent tuples.  Blank lines and ``#`` comments are
ignored on input; the canonical output has neither, lists components in
increasing degree order, and reproduces itself byte for byte.
"""
from __future__ import annotations

from .classify import ClassificationRecord
from .graded import GradedMatrixAlgebra
from .groups import GroupError, format_element, parse_element, parse_group
from .matrices import MatrixExact
from .scalars import KINDS, ScalarParseError, format_raw, scalar_parse


class DocumentError(ValueError):
    code = "parse"

    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.col = col


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield no, body


def _keyword(entry, key: str) -> str:
    no, body = entry
    head, _, rest = body.strip().partition(" ")
    if head != key or not rest.strip():
        raise DocumentError(f"expected '{key} <value>'", no, 1)
    return rest.strip()


# ---------------------------------------------------------------------------
# matrices

def format_matrix(m: MatrixExact) -> str:
    rows = []
    for i in range(m.n):
        rows.append(", ".join(format_raw(m.kind, m.e[i * m.n + j]) for j in range(m.n)))
    return "[ " + " ; ".join(rows) + " ]"


def parse_matrix(body: str, kind: str, n: int, line: int | None = None) -> MatrixExact:
    s = body.rstrip()
    start = len(s) - len(s.lstrip())
    if not s.strip().startswith("[") or not s.endswith("]"):
        raise DocumentError("matrix must be written as [ a, b ; c, d ]", line, start + 1)
    inner_off = s.index("[") + 1
    inner = s[inner_off:-1]
    rows = []
    pos = inner_off
    for row_text in inner.split(";"):
        row = []
        cpos = pos
        for cell in row_text.split(","):
            lead = len(cell) - len(cell.lstrip())
            col = cpos + lead + 1
            if not cell.strip():
                raise DocumentError("empty matrix entry", line, col)
            try:
                row.append(scalar_parse(cell.strip(), kind))
            except ScalarParseError as exc:
                off = getattr(exc, "pos", None)
                raise DocumentError(f"bad scalar {cell.strip()!r}: {exc}", line,
                                    col + off if isinstance(off, int) else col) from exc
            cpos += len(cell) + 1
        rows.append(row)
        pos += len(row_text) + 1
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DocumentError(f"matrix is not {n} x {n}", line, start + 1)
    return MatrixExact.from_rows(kind, rows)


# ---------------------------------------------------------------------------
# documents

def format_document(a: GradedMatrixAlgebra) -> str:
    out = ["gda 1", f"kind {a.kind}", f"n {a.n}", f"group {a.group}"]
    for t in sorted(a.components):
        basis = a.components[t]
        if not basis:
            continue
        out.append(f"component {format_element(t)}:")
        out.extend(format_matrix(m) for m in basis)
    return "\n".join(out) + "\n"


def parse_document(text: str) -> GradedMatrixAlgebra:
    entries = list(_lines(text))
    if not entries:
        raise DocumentError("empty document", 1, 1)
    no, body = entries[0]
    if body.strip() != "gda 1":
        raise DocumentError("expected header 'gda 1'", no, 1)
    if len(entries) < 4:
        raise DocumentError("truncated header", entries[-1][0])
    kind = _keyword(entries[1], "kind")
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}", entries[1][0], 6)
    n_text = _keyword(entries[2], "n")
    if not n_text.isdigit() or int(n_text) < 1:
        raise DocumentError(f"bad size {n_text!r}", entries[2][0], 3)
    n = int(n_text)
    try:
        group = parse_group(_keyword(entries[3], "group"))
    except GroupError as exc:
        raise DocumentError(str(exc), entries[3][0], 7) from exc
    comps: dict = {}
    current = None
    for no, body in entries[4:]:
        s = body.strip()
        if s.startswith("component"):
            lit = s[len("component"):].strip()
            if not lit.endswith(":"):
                raise DocumentError("component header must end with ':'", no, len(body))
            try:
                current = parse_element(lit[:-1], group)
            except GroupError as exc:
                raise DocumentError(str(exc), no, body.index("component") + 11) from exc
            if current in comps:
                raise DocumentError(f"component {format_element(current)} declared twice", no, 1)
            comps[current] = []
        elif s.startswith("["):
            if current is None:
                raise DocumentError("matrix before any component header", no, 1)
            comps[current].append(parse_matrix(body, kind, n, no))
        else:
            raise DocumentError(f"unexpected line {s!r}", no, 1)
    return GradedMatrixAlgebra(kind, n, group, comps)


def is_canonical(text: str) -> bool:
    try:
        return format_document(parse_document(text)) == text
    except DocumentError:
        return False


# ---------------------------------------------------------------------------
# classification records

def _sign(v: int) -> str:
    return "+" if v == 1 else "-"


def _elems(xs) -> str:
    return " ".join(format_element(x) for x in xs)


def _signed(pairs) -> str:
    return " ".join(f"{format_element(t)}{_sign(v)}" for t, v in pairs)


def _record_lines(r: ClassificationRecord) -> list[str]:
    out = [f"case {r.case}", f"kind {r.kind}", f"n {r.n}", f"dim {r.dim}", f"group {r.group}",
           f"T {_elems(r.T)}"]
    if r.mu is not None:
        out.append(f"mu {_signed(r.mu)}")
    if r.beta is not None:
        out.append(" ".join(["beta"] + [f"{format_element(u)}*{format_element(v)}" for u, v in r.beta]))
    if r.K is not None:
        out.append(f"K {_elems(r.K)}")
    if r.nu is not None:
        out.append(f"nu {_signed(r.nu)}")
    if r.f is not None:
        out.append(f"f {format_element(r.f)}")
    if r.beta_c is not None:
        out.append(" ".join(["beta_c"] + [f"{format_element(u)}*{format_element(v)}^{k}" for u, v, k in r.beta_c]))
    if r.deferred:
        out.append("deferred")
    if r.centralizer is not None:
        out.append("begin centralizer")
        out.extend(_record_lines(r.centralizer))
        out.append("end centralizer")
    return out


def format_record(r: ClassificationRecord) -> str:
    return "\n".join(["gdr 1"] + _record_lines(r)) + "\n"


def _parse_elems(text: str, group, no) -> tuple:
    out = []
    for tok in text.split():
        try:
            out.append(parse_element(tok, group))
        except GroupError as exc:
            raise DocumentError(str(exc), no) from exc
    return tuple(out)


def _parse_signed(text: str, group, no) -> tuple:
    out = []
    for tok in text.split():
        if tok[-1] not in "+-":
            raise DocumentError(f"expected a sign after {tok!r}", no)
        try:
            out.append((parse_element(tok[:-1], group), 1 if tok[-1] == "+" else -1))
        except GroupError as exc:
            raise DocumentError(str(exc), no) from exc
    return tuple(out)


def _parse_pairs(text: str, group, no, powered: bool) -> tuple:
    out = []
    for tok in text.split():
        k = None
        if powered:
            tok, _, ks = tok.rpartition("^")
            if not ks.isdigit():
                raise DocumentError(f"expected '^k' in {tok!r}", no)
            k = int(ks)
        u, sep, v = tok.partition("*")
        if not sep:
            raise DocumentError(f"expected 'u*v', got {tok!r}", no)
        try:
            pair = (parse_element(u, group), parse_element(v, group))
        except GroupError as exc:
            raise DocumentError(str(exc), no) from exc
        out.append(pair + ((k,) if powered else ()))
    return tuple(out)


def _parse_record_body(entries: list, i: int) -> tuple[ClassificationRecord, int]:
    fields: dict = {}
    group = None
    while i < len(entries):
        no, body = entries[i]
        key, _, rest = body.strip().partition(" ")
        rest = rest.strip()
        i += 1
        if key == "end":
            return _make_record(fields, no), i
        if key == "begin":
            if rest != "centralizer":
                raise DocumentError(f"unknown block {rest!r}", no)
            fields["centralizer"], i = _parse_record_body(entries, i)
            continue
        if key in ("case", "kind"):
            fields[key] = rest
        elif key in ("n", "dim"):
            if not rest.isdigit():
                raise DocumentError(f"bad integer {rest!r}", no)
            fields[key] = int(rest)
        elif key == "group":
            try:
                group = fields["group"] = parse_group(rest)
            except GroupError as exc:
                raise DocumentError(str(exc), no) from exc
        elif key in ("T", "K", "f"):
            if group is None:
                raise DocumentError("'group' must come first", no)
            xs = _parse_elems(rest, group, no)
            fields[key] = xs[0] if key == "f" else xs
        elif key in ("mu", "nu"):
            fields[key] = _parse_signed(rest, group, no)
        elif key == "beta":
            fields[key] = _parse_pairs(rest, group, no, False)
        elif key == "beta_c":
            fields[key] = _parse_pairs(rest, group, no, True)
        elif key == "deferred":
            fields[key] = True
        else:
            raise DocumentError(f"unknown field {key!r}", no)
    return _make_record(fields, entries[-1][0] if entries else None), i


def _make_record(fields: dict, no) -> ClassificationRecord:
    for key in ("case", "kind", "n", "dim", "group", "T"):
        if key not in fields:
            raise DocumentError(f"record lacks '{key}'", no)
    return ClassificationRecord(**fields)


def parse_record(text: str) -> ClassificationRecord:
    entries = list(_lines(text))
    if not entries or entries[0][1].strip() != "gdr 1":
        raise DocumentError("expected header 'gdr 1'", entries[0][0] if entries else 1, 1)
    r, i = _parse_record_body(entries, 1)
    if i != len(entries):
        raise DocumentError("trailing lines after record", entries[i][0])
    return r


def detect(text: str) -> str:
    """'gda', 'gdr' or '' from the header line."""
    for _, body in _lines(text):
        head = body.strip().split(" ")[0]
        return head if head in ("gda", "gdr") else ""
    return ""


def load_algebra(path: str) -> GradedMatrixAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def load_record(path: str) -> ClassificationRecord:
    with open(path, encoding="utf-8") as fh:
        return parse_record(fh.read())

