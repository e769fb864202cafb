"""Finite abelian groups Z2^a x Z4^b (b <= 1), written additively.

Elements are exponent tuples: ``a`` coordinates mod 2 followed by ``b``
coordinates mod 4.  Lexicographic order on these tuples is the canonical
order used for every deterministic choice in the package.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Element = tuple


class GroupError(ValueError):
    code = "invalid-group"


@dataclass(frozen=True)
class FinAbelianGroup:
    a: int
    b: int = 0

    def __post_init__(self):
        if self.a < 0 or self.b not in (0, 1):
            raise GroupError(f"unsupported group shape Z2^{self.a} x Z4^{self.b}")

    @property
    def moduli(self) -> tuple[int, ...]:
        return (2,) * self.a + (4,) * self.b

    @property
    def rank(self) -> int:
        return self.a + self.b

    @property
    def order(self) -> int:
        return 2 ** self.a * 4 ** self.b

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(itertools.product(*(range(m) for m in self.moduli)))

    def generators(self) -> list[Element]:
        gens = []
        for i in range(self.rank):
            g = [0] * self.rank
            g[i] = 1
            gens.append(tuple(g))
        return gens

    def check(self, x: Element) -> Element:
        if len(x) != self.rank or any(not 0 <= v < m for v, m in zip(x, self.moduli)):
            raise GroupError(f"{x} is not an element of {self}")
        return x

    def mul(self, x: Element, y: Element) -> Element:
        return tuple((u + v) % m for u, v, m in zip(x, y, self.moduli))

    def inv(self, x: Element) -> Element:
        return tuple((-u) % m for u, m in zip(x, self.moduli))

    def power(self, x: Element, k: int) -> Element:
        return tuple((u * k) % m for u, m in zip(x, self.moduli))

    def elem_order(self, x: Element) -> int:
        if not any(x):
            return 1
        return 4 if any(v % 2 for v in x[self.a:]) else 2

    def squares(self) -> tuple[Element, ...]:
        """T^2 = {t^2}."""
        return tuple(sorted({self.power(t, 2) for t in self.elements}))

    def two_torsion(self) -> tuple[Element, ...]:
        """T_2 = {t : t^2 = e}."""
        return tuple(t for t in self.elements if self.elem_order(t) <= 2)

    def distinguished_f(self) -> Element:
        """Generator of T^2 for the Z4 shape."""
        if self.b != 1:
            raise GroupError(f"{self} has trivial T^2")
        return self.identity[:-1] + (2,)

    def span(self, gens: Iterable[Element]) -> tuple[Element, ...]:
        return span(self, gens)

    def __str__(self) -> str:
        parts = []
        if self.a or not self.b:
            parts.append(f"Z2^{self.a}")
        if self.b:
            parts.append("Z4")
        return " x ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "FinAbelianGroup":
        return parse_group(text)


def parse_group(text: str) -> FinAbelianGroup:
    """Parse ``Z2^a``, ``Z2^a x Z4`` or ``Z4``."""
    s = text.strip()
    parts = [p.strip() for p in s.split("x")] if s else []
    a = b = 0
    seen_z4 = False
    for idx, p in enumerate(parts):
        if p == "Z4":
            if seen_z4 or idx != len(parts) - 1:
                raise GroupError(f"bad group literal {text!r}: Z4 must appear once, last")
            seen_z4 = True
            b = 1
        elif p == "Z2":
            a += 1
        else:
            m = re.fullmatch(r"Z2\^(\d+)", p)
            if not m:
                raise GroupError(f"bad group literal {text!r}")
            a += int(m.group(1))
    if not parts:
        raise GroupError("empty group literal")
    return FinAbelianGroup(a, b)


def parse_element(text: str, group: FinAbelianGroup | None = None) -> Element:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise GroupError(f"bad element literal {text!r}")
    body = s[1:-1].strip()
    try:
        x = tuple(int(v) for v in body.split(",")) if body else ()
    except ValueError as exc:
        raise GroupError(f"bad element literal {text!r}") from exc
    if group is not None:
        group.check(x)
    return x


def format_element(x: Element) -> str:
    return "(" + ",".join(str(v) for v in x) + ")"


def span(group: FinAbelianGroup, gens: Iterable[Element]) -> tuple[Element, ...]:
    """Subgroup generated by ``gens`` (sorted)."""
    elems = {group.identity}
    for g in gens:
        group.check(g)
        if g in elems:
            continue
        new = set(elems)
        frontier = list(elems)
        while frontier:
            x = frontier.pop()
            y = group.mul(x, g)
            if y not in new:
                new.add(y)
                frontier.append(y)
        elems = new
    return tuple(sorted(elems))


def is_subgroup(group: FinAbelianGroup, elems: Iterable[Element]) -> bool:
    s = set(elems)
    if group.identity not in s:
        return False
    return all(group.mul(x, y) in s for x in s for y in s)


def cosets(group: FinAbelianGroup, sub: Sequence[Element]) -> list[tuple[Element, ...]]:
    seen: set = set()
    out = []
    for t in group.elements:
        if t in seen:
            continue
        c = tuple(sorted(group.mul(t, k) for k in sub))
        seen.update(c)
        out.append(c)
    return out


def sub_squares(group: FinAbelianGroup, elems: Iterable[Element]) -> tuple[Element, ...]:
    return tuple(sorted({group.power(t, 2) for t in elems}))


def sub_two_torsion(group: FinAbelianGroup, elems: Iterable[Element]) -> tuple[Element, ...]:
    return tuple(sorted(t for t in elems if group.elem_order(t) <= 2))


def shape_of(group: FinAbelianGroup, elems: Sequence[Element]) -> tuple[int, int]:
    """Isomorphism type (a, b) of a subgroup: Z2^a x Z4^b."""
    n = len(elems)
    has4 = any(group.elem_order(t) == 4 for t in elems)
    k = n.bit_length() - 1
    if has4:
        return (k - 2, 1)
    return (k, 0)


def shape_str(shape: tuple[int, int]) -> str:
    return str(FinAbelianGroup(*shape))


def index2_subgroups(group: FinAbelianGroup, elems: Sequence[Element]) -> list[tuple[Element, ...]]:
    """All subgroups of index 2 in the subgroup ``elems`` (kernels of maps onto Z2)."""
    from .gf2 import QuotientCoords

    qc = QuotientCoords(group, elems)
    out = []
    for functional in range(1, 1 << qc.dim):
        ker = tuple(t for t in elems if bin(qc.coord[t] & functional).count("1") % 2 == 0)
        out.append(ker)
    return sorted(out)


@dataclass(frozen=True)
class Subgroup:
    group: FinAbelianGroup
    gens: tuple[Element, ...]

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return span(self.group, self.gens)

    def __contains__(self, x) -> bool:
        return x in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


class GroupHom:
    """Homomorphism given by the images of the standard generators of ``source``."""

    def __init__(self, source: FinAbelianGroup, target: FinAbelianGroup, images: Sequence[Element]):
        images = tuple(tuple(x) for x in images)
        if len(images) != source.rank:
            raise GroupError(f"need {source.rank} generator images, got {len(images)}")
        for img, m in zip(images, source.moduli):
            target.check(img)
            if target.power(img, m) != target.identity:
                raise GroupError(f"image {img} has order not dividing {m}")
        self.source = source
        self.target = target
        self.images = images

    def __call__(self, x: Element) -> Element:
        out = self.target.identity
        for v, img in zip(x, self.images):
            if v:
                out = self.target.mul(out, self.target.power(img, v))
        return out

    def is_injective(self) -> bool:
        return len({self(x) for x in self.source.elements}) == self.source.order

    def is_bijective(self) -> bool:
        return self.source == self.target and self.is_injective()

    @classmethod
    def identity(cls, group: FinAbelianGroup) -> "GroupHom":
        return cls(group, group, group.generators())


class DirectProduct:
    """G x H with the Z2 coordinates of G, then of H, then the (single) Z4 coordinate."""

    def __init__(self, left: FinAbelianGroup, right: FinAbelianGroup):
        if left.b + right.b > 1:
            raise GroupError(f"{left} x {right} has two Z4 factors")
        self.left = left
        self.right = right
        self.group = FinAbelianGroup(left.a + right.a, left.b + right.b)

    def pair(self, g: Element, h: Element) -> Element:
        la, ra = self.left.a, self.right.a
        return tuple(g[:la]) + tuple(h[:ra]) + tuple(g[la:]) + tuple(h[ra:])

    def split(self, p: Element) -> tuple[Element, Element]:
        la, ra = self.left.a, self.right.a
        z2l, z2r, z4 = p[:la], p[la:la + ra], p[la + ra:]
        g = z2l + (z4 if self.left.b else ())
        h = z2r + (z4 if self.right.b else ())
        return g, h

    def left_generator_images(self) -> list[Element]:
        return [self.pair(g, self.right.identity) for g in self.left.generators()]

    def right_generator_images(self) -> list[Element]:
        return [self.pair(self.left.identity, h) for h in self.right.generators()]
