"""Finite groups as Cayley tables over dense element indices 0..order-1."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

MAX_VALIDATED_ORDER = 512


class NotAGroup(ValueError):
    """Raised when a Cayley table violates a group axiom."""

    def __init__(self, reason: str, witness: tuple = ()):
        self.reason = reason
        self.witness = tuple(witness)
        super().__init__(f"not a group ({reason}); witness {self.witness}")


class NotClosed(ValueError):
    pass


class UnsupportedParameter(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    label: Optional[str] = None
    element_labels: Optional[tuple[str, ...]] = None
    # member -> parent index, set when the group was extracted from a subgroup
    parent_map: Optional[tuple[int, ...]] = None

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def prod(self, elements: Sequence[int]) -> int:
        out = self.identity
        row = self.cayley
        for g in elements:
            out = row[out][g]
        return out

    def conj(self, g: int, a: int) -> int:
        """Return g a g^-1."""
        return self.cayley[self.cayley[g][a]][self.inverses[g]]

    def elements(self) -> range:
        return range(self.order)

    @property
    def is_abelian(self) -> bool:
        t = self.cayley
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def name_of(self, a: int) -> str:
        if self.element_labels is not None:
            return self.element_labels[a]
        return str(a)


@dataclass(frozen=True)
class ConjugacyData:
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)


def from_cayley_table(
    table: Sequence[Sequence[int]],
    label: Optional[str] = None,
    element_labels: Optional[Sequence[str]] = None,
    trusted: bool = False,
) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines.

    Identity and inverses are located, never declared. Associativity is
    checked exhaustively up to order 512; larger tables are refused unless
    ``trusted`` is set.
    """
    n = len(table)
    if n == 0:
        raise NotAGroup("empty-table")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotAGroup("not-square", (i,))
        r = tuple(int(x) for x in row)
        for j, x in enumerate(r):
            if not 0 <= x < n:
                raise NotAGroup("entry-out-of-range", (i, j, x))
        rows.append(r)
    t = tuple(rows)
    if element_labels is not None and len(element_labels) != n:
        raise ValueError("element_labels length does not match order")

    identity = None
    for e in range(n):
        if all(t[e][x] == x and t[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no-identity")

    inverses = []
    for x in range(n):
        y = next((y for y in range(n) if t[x][y] == identity and t[y][x] == identity), None)
        if y is None:
            raise NotAGroup("missing-inverse", (x,))
        inverses.append(y)

    for x in range(n):
        if len(set(t[x])) != n:
            raise NotAGroup("not-a-bijection-row", (x,))

    if n > MAX_VALIDATED_ORDER:
        if not trusted:
            raise UnsupportedParameter(
                f"order {n} exceeds {MAX_VALIDATED_ORDER}; pass trusted=True to skip the axiom check"
            )
    else:
        for x in range(n):
            tx = t[x]
            for y in range(n):
                txy = t[tx[y]]
                ty = t[y]
                for z in range(n):
                    if txy[z] != tx[ty[z]]:
                        raise NotAGroup("non-associative", (x, y, z))

    return FiniteGroup(
        order=n,
        cayley=t,
        identity=identity,
        inverses=tuple(inverses),
        label=label,
        element_labels=tuple(element_labels) if element_labels is not None else None,
    )


def load_cayley_file(path: str | Path) -> FiniteGroup:
    """Read ``{"order": n, "table": [[...]], "labels": [...]}``."""
    path = Path(path)
    data = json.loads(path.read_text())
    if not isinstance(data, dict) or "table" not in data:
        raise ValueError(f"{path}: expected an object with a 'table' field")
    table = data["table"]
    if "order" in data and data["order"] != len(table):
        raise ValueError(f"{path}: declared order {data['order']} but table has {len(table)} rows")
    return from_cayley_table(table, label=path.stem, element_labels=data.get("labels"))


def _cyclic(n: int) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return from_cayley_table(table, label=f"C{n}", element_labels=[f"r^{a}" for a in range(n)])


def _dihedral(n: int) -> FiniteGroup:
    # index i < n is r^i, index n + i is r^i s; s r s = r^-1
    def decode(x):
        return (x % n, x >= n)

    def encode(i, refl):
        return (i % n) + (n if refl else 0)

    table = []
    for x in range(2 * n):
        i, a = decode(x)
        row = []
        for y in range(2 * n):
            j, b = decode(y)
            row.append(encode(i - j if a else i + j, a != b))
        table.append(row)
    labels = [f"r^{i}" for i in range(n)] + [f"r^{i}s" for i in range(n)]
    return from_cayley_table(table, label=f"D{n}", element_labels=labels)


def _symmetric(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(i) = p(q(i)): q acts first
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    labels = ["".join(str(v + 1) for v in p) for p in perms]
    return from_cayley_table(table, label=f"S{n}", element_labels=labels)


_QUAT_UNITS = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def _quaternion() -> FiniteGroup:
    # 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
    elems = [(s, u) for u in "1ijk" for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = _QUAT_UNITS[u1, u2]
            row.append(index[(s1 * s2 * s, u)])
        table.append(row)
    labels = [("" if s > 0 else "-") + u for s, u in elems]
    return from_cayley_table(table, label="Q8", element_labels=labels)


def _klein() -> FiniteGroup:
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return from_cayley_table(table, label="Klein", element_labels=["e", "a", "b", "ab"])


def builtin_group(family: str, n: int = 0) -> FiniteGroup:
    """Return one of the built-in groups.

    Element indexing: cyclic groups use residues; dihedral ``n`` has r^i at
    index i and r^i s at index n + i; symmetric groups list permutations in
    lexicographic one-line order with right-to-left composition; the
    quaternion group is 1, -1, i, -i, j, -j, k, -k.
    """
    if family == "cyclic":
        if n < 1:
            raise UnsupportedParameter(f"cyclic group needs n >= 1, got {n}")
        return _cyclic(n)
    if family == "dihedral":
        if n < 2:
            raise UnsupportedParameter(f"dihedral group needs n >= 2, got {n}")
        return _dihedral(n)
    if family == "symmetric":
        if not 1 <= n <= 5:
            raise UnsupportedParameter(f"symmetric group needs 1 <= n <= 5, got {n}")
        return _symmetric(n)
    if family == "quaternion":
        if n not in (0, 8):
            raise UnsupportedParameter(f"quaternion group has fixed order 8, got {n}")
        return _quaternion()
    if family == "klein":
        return _klein()
    raise UnsupportedParameter(f"unknown group family {family!r}")


def conjugacy_classes(G: FiniteGroup) -> ConjugacyData:
    class_of = [-1] * G.order
    classes = []
    for x in G.elements():
        if class_of[x] >= 0:
            continue
        orbit = sorted({G.conj(g, x) for g in G.elements()})
        for y in orbit:
            class_of[y] = len(classes)
        classes.append(tuple(orbit))
    return ConjugacyData(
        classes=tuple(classes),
        representatives=tuple(c[0] for c in classes),
        class_of=tuple(class_of),
    )


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    if not 0 <= g < G.order:
        raise IndexError(f"element {g} out of range for order {G.order}")
    t = G.cayley
    return Subgroup(G, tuple(x for x in G.elements() if t[x][g] == t[g][x]))


def subgroup_as_group(S: Subgroup) -> FiniteGroup:
    """Re-index a subgroup as a standalone group; ``parent_map`` records the embedding."""
    G = S.parent
    members = tuple(sorted(set(S.members)))
    pos = {m: i for i, m in enumerate(members)}
    if G.identity not in pos:
        raise NotClosed(f"identity {G.identity} missing from subgroup")
    table = []
    for a in members:
        if G.inv(a) not in pos:
            raise NotClosed(f"inverse of {a} missing from subgroup")
        row = []
        for b in members:
            c = G.mul(a, b)
            if c not in pos:
                raise NotClosed(f"product {a}*{b}={c} leaves the subgroup")
            row.append(pos[c])
        table.append(row)
    labels = None
    if G.element_labels is not None:
        labels = [G.element_labels[m] for m in members]
    H = from_cayley_table(table, label=f"sub({G.label})", element_labels=labels)
    return FiniteGroup(
        order=H.order,
        cayley=H.cayley,
        identity=H.identity,
        inverses=H.inverses,
        label=H.label,
        element_labels=H.element_labels,
        parent_map=members,
    )


CORPUS = ("c1", "c2", "c3", "c4", "c5", "klein", "s3", "d4", "q8")


def group_by_name(name: str) -> FiniteGroup:
    """Resolve names c1..c8, klein, s3, s4, d3..d6, q8."""
    key = name.strip().lower()
    if key == "klein":
        return builtin_group("klein")
    if key == "q8":
        return builtin_group("quaternion", 8)
    if len(key) >= 2 and key[1:].isdigit():
        n = int(key[1:])
        fam = key[0]
        if fam == "c" and 1 <= n <= 8:
            return builtin_group("cyclic", n)
        if fam == "s" and 3 <= n <= 4:
            return builtin_group("symmetric", n)
        if fam == "d" and 3 <= n <= 6:
            return builtin_group("dihedral", n)
    raise UnsupportedParameter(f"unknown or unsupported group {name!r}")
