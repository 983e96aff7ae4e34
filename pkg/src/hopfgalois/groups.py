"""Finite groups given by multiplication tables, and finite right G-sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Elements are ``0..order-1``; ``table[a][b]`` is the index of ``a*b``."""

    table: tuple
    identity: int = 0
    name: str = ""

    def __post_init__(self):
        n = len(self.table)
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        if any(len(r) != n for r in self.table):
            raise GroupError("multiplication table is not square")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise GroupError("table entry out of range")
        e = self.identity
        for a in range(n):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise GroupError(f"{e} is not an identity")
        for a in range(n):
            if sorted(self.table[a]) != list(range(n)):
                raise GroupError(f"row {a} is not a permutation; no inverse")
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupError(f"not associative at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse(self) -> tuple:
        e = self.identity
        return tuple(self.table[a].index(e) for a in range(self.order))

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(self.order))

    def subgroups(self) -> list:
        """All subgroups as sorted tuples (brute force; fine for desk-scale orders)."""
        n = self.order
        found = set()
        for gens in itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(3)):
            found.add(self.generated(gens))
        return sorted(found, key=lambda s: (len(s), s))

    def generated(self, gens: Sequence[int]) -> tuple:
        els = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.table[a][g]
                    if b not in els:
                        els.add(b)
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(els))

    def conjugate(self, sub: Sequence[int], g: int) -> tuple:
        gi = self.inv(g)
        return tuple(sorted(self.table[self.table[gi][h]][g] for h in sub))

    def subgroup_classes(self) -> list:
        """One representative per conjugacy class of subgroups."""
        reps = []
        seen = set()
        for s in self.subgroups():
            if s in seen:
                continue
            cls = {self.conjugate(s, g) for g in self.elements()}
            seen |= cls
            reps.append(s)
        return reps


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"Z{n}")


def group_from_permutations(perms: Sequence[Sequence[int]], name: str = "") -> tuple:
    """Close a set of permutations under composition.

    Returns ``(group, elements)``; the product ``a*b`` means "first a, then b",
    so ``x -> elements[g][x]`` is a right action ``x.g``.
    """
    perms = [tuple(p) for p in perms]
    if not perms:
        raise GroupError("need at least one permutation (include the identity)")
    n = len(perms[0])
    ident = tuple(range(n))
    for p in perms:
        if sorted(p) != list(ident):
            raise GroupError(f"{p} is not a permutation of {n} points")
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in perms:
                c = tuple(g[a[x]] for x in range(n))
                if c not in index:
                    index[c] = len(elems)
                    elems.append(c)
                    nxt.append(c)
        frontier = nxt

    def compose(a, b):  # first a then b
        return tuple(b[a[x]] for x in range(n))

    table = [[index[compose(a, b)] for b in elems] for a in elems]
    return FiniteGroup(tuple(map(tuple, table)), 0, name), elems


def symmetric_group(n: int) -> FiniteGroup:
    perms = [tuple(range(n))]
    if n >= 2:
        perms.append((1, 0) + tuple(range(2, n)))
        perms.append(tuple(range(1, n)) + (0,))
    g, _ = group_from_permutations(perms, f"S{n}")
    return g


def klein_four() -> FiniteGroup:
    t = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
    return FiniteGroup(t, 0, "V4")


def product_group(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    t = tuple(tuple(g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(g.order * m))
              for a in range(g.order * m))
    return FiniteGroup(t, g.identity * m + h.identity, f"{g.name}x{h.name}")


def small_groups(max_order: int) -> list:
    """One group per isomorphism class of order <= max_order (max_order <= 7)."""
    if max_order > 7:
        raise GroupError("small_groups is tabulated up to order 7")
    out = []
    for n in range(1, max_order + 1):
        out.append(cyclic_group(n))
        if n == 4:
            out.append(klein_four())
        if n == 6:
            out.append(symmetric_group(3))
    return out


@dataclass(frozen=True, eq=False)
class GSet:
    """A finite set ``0..points-1`` with a right action ``action[x][g] = x.g``."""

    group: FiniteGroup
    action: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(tuple(r) for r in self.action))
        G = self.group
        n = len(self.action)
        for x, row in enumerate(self.action):
            if len(row) != G.order:
                raise GroupError(f"point {x}: action row has wrong length")
            if any(not 0 <= y < n for y in row):
                raise GroupError(f"point {x}: image out of range")
            if row[G.identity] != x:
                raise GroupError(f"x.e != x at point {x}")
        for x in range(n):
            for g in G.elements():
                for h in G.elements():
                    if self.action[self.action[x][g]][h] != self.action[x][G.mul(g, h)]:
                        raise GroupError(f"(x.g).h != x.(gh) at x={x}, g={g}, h={h}")

    @property
    def points(self) -> int:
        return len(self.action)

    def act(self, x: int, g: int) -> int:
        return self.action[x][g]

    def orbits(self) -> list:
        seen = set()
        out = []
        for x in range(self.points):
            if x in seen:
                continue
            orb = sorted({self.act(x, g) for g in self.group.elements()})
            seen.update(orb)
            out.append(tuple(orb))
        return out

    def stabilizer(self, x: int) -> tuple:
        return tuple(g for g in self.group.elements() if self.act(x, g) == x)

    def disjoint_union(self, other: "GSet") -> "GSet":
        if other.group is not self.group:
            raise GroupError("disjoint union needs the same group object")
        n = self.points
        rows = list(self.action) + [tuple(y + n for y in r) for r in other.action]
        return GSet(self.group, tuple(rows), f"{self.name}+{other.name}")


def coset_space(group: FiniteGroup, sub: Sequence[int]) -> GSet:
    """The transitive right G-set of right cosets ``Hx`` with ``Hx.g = Hxg``."""
    cosets = []
    index = {}
    for g in group.elements():
        c = tuple(sorted(group.mul(h, g) for h in sub))
        if c not in index:
            index[c] = len(cosets)
            cosets.append(c)
    rows = []
    for c in cosets:
        rep = c[0]
        rows.append(tuple(index[tuple(sorted(group.mul(h, group.mul(rep, g)) for h in sub))]
                          for g in group.elements()))
    return GSet(group, tuple(rows), f"{group.name}/{len(sub)}")


def regular_gset(group: FiniteGroup) -> GSet:
    """G acting on itself by right translation."""
    return GSet(group, tuple(tuple(group.mul(x, g) for g in group.elements()) for x in group.elements()),
                f"{group.name}-regular")


def trivial_gset(group: FiniteGroup, points: int = 1) -> GSet:
    return GSet(group, tuple((x,) * group.order for x in range(points)), f"{group.name}-trivial-{points}")


def enumerate_gsets(group: FiniteGroup, max_points: int, min_points: int = 1) -> list:
    """All G-sets with ``min_points..max_points`` points, one per isomorphism class.

    A finite G-set is a disjoint union of transitive ones, and transitive
    G-sets correspond to conjugacy classes of subgroups; so isomorphism
    classes are multisets of subgroup classes with total size in range.
    """
    blocks = [coset_space(group, s) for s in group.subgroup_classes()]
    out = []

    def rec(start: int, chosen: list, size: int):
        if min_points <= size <= max_points and chosen:
            g = chosen[0]
            for b in chosen[1:]:
                g = g.disjoint_union(b)
            tag = "+".join(str(blocks.index(b)) for b in chosen)
            out.append(GSet(group, g.action, f"{group.name}[{tag}]"))
        for i in range(start, len(blocks)):
            b = blocks[i]
            if size + b.points <= max_points:
                rec(i, chosen + [b], size + b.points)

    rec(0, [], 0)
    out.sort(key=lambda s: (s.points, s.name))
    return out


def is_free(s: GSet) -> bool:
    """Every stabilizer trivial, by direct scan of the action table."""
    e = s.group.identity
    return all(s.act(x, g) != x for x in range(s.points) for g in s.group.elements() if g != e)
