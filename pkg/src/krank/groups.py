"""Finite groups as dense Cayley tables, plus conjugacy-class machinery.

Elements are indices 0..order-1 and every group is stored as a full
order x order multiplication table.  Each builder fixes a documented
element ordering (cyclic = powers of the generator, symmetric =
lexicographic one-line notation, dihedral = rotations then reflections,
products = row-major pairs), so element-index maps written into model
files stay stable across runs.

All values are immutable after construction and all functions are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotAGroup, OrderBound

DEFAULT_ORDER_BOUND = 10000


@dataclass(frozen=True)
class FiniteGroup:
    """A validated finite group over element indices 0..order-1."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    label: str

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conjugate(self, g: int, h: int) -> int:
        """g * h * g^-1."""
        return self.table[self.table[g][h]][self.inverse[g]]

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label!r}, order={self.order})"


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes of a group and the class-level inversion pairing.

    classes are sorted index tuples, ordered by smallest member;
    inversion_pairing[c] is the class holding the inverses of class c;
    m counts the self-paired classes.
    """

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    inversion_pairing: tuple[int, ...]
    k: int
    m: int


@dataclass(frozen=True)
class CyclicSubgroupClasses:
    """One representative (as a sorted element tuple) per conjugacy class
    of cyclic subgroups; q is the number of classes."""

    representatives: tuple[tuple[int, ...], ...]
    q: int


def _check_order(order: int, max_order: int) -> None:
    if order > max_order:
        raise OrderBound(f"group order {order} exceeds the cap {max_order}")


def from_cayley_table(table, label: str = "table group") -> FiniteGroup:
    """Validate a square multiplication table and wrap it as a group.

    Identity and inverses are discovered from the table.  Raises
    NotAGroup naming the witnessing element or triple when an axiom
    fails; malformed input (non-square, entries out of range) raises
    ValueError.
    """
    rows = [tuple(int(x) for x in row) for row in table]
    n = len(rows)
    if n == 0:
        raise ValueError("multiplication table is empty")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise ValueError(f"entry {x} in row {i} is out of range 0..{n - 1}")

    identity = None
    for e in range(n):
        if all(rows[e][a] == a and rows[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup(f"{label}: no two-sided identity element")

    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            for c in range(n):
                if rows[ab][c] != rows[a][rows[b][c]]:
                    raise NotAGroup(
                        f"{label}: associativity fails at ({a}, {b}, {c}): "
                        f"({a}*{b})*{c} = {rows[ab][c]} but "
                        f"{a}*({b}*{c}) = {rows[a][rows[b][c]]}"
                    )

    inverse = []
    for a in range(n):
        for b in range(n):
            if rows[a][b] == identity and rows[b][a] == identity:
                inverse.append(b)
                break
        else:
            raise NotAGroup(f"{label}: element {a} has no two-sided inverse")

    return FiniteGroup(n, tuple(rows), identity, tuple(inverse), label)


def _compose(p, q):
    # apply q first, then p
    return tuple(p[q[i]] for i in range(len(q)))


def from_permutations(
    generators,
    label: str = "permutation group",
    degree: int | None = None,
    max_order: int = DEFAULT_ORDER_BOUND,
) -> FiniteGroup:
    """Close a set of permutations under composition and return the group.

    Each generator must be a bijection of {0..d-1} in one-line notation.
    Elements are ordered by breadth-first discovery from the identity
    (products taken generator by generator, in the order given).  An
    empty generator list yields the trivial group on `degree` points
    (default 1).  Raises OrderBound if the closure exceeds max_order.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if gens:
        d = len(gens[0])
    else:
        d = 1 if degree is None else degree
    if degree is not None and gens and degree != d:
        raise ValueError(f"degree {degree} does not match generator length {d}")
    for g in gens:
        if len(g) != d or sorted(g) != list(range(d)):
            raise ValueError(f"generator {g} is not a permutation of 0..{d - 1}")

    identity = tuple(range(d))
    elements = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = _compose(p, g)
                if q not in index:
                    if len(elements) >= max_order:
                        raise OrderBound(
                            f"closure of {label} exceeds the order cap {max_order}"
                        )
                    index[q] = len(elements)
                    elements.append(q)
                    new.append(q)
        frontier = new

    return _group_from_elements(elements, index, label)


def _group_from_elements(elements, index, label: str) -> FiniteGroup:
    n = len(elements)
    table = tuple(
        tuple(index[_compose(p, q)] for q in elements) for p in elements
    )
    d = len(elements[0])
    inverse = []
    for p in elements:
        ip = [0] * d
        for i, pi in enumerate(p):
            ip[pi] = i
        inverse.append(index[tuple(ip)])
    return FiniteGroup(n, table, index[tuple(range(d))], tuple(inverse), label)


def trivial() -> FiniteGroup:
    return FiniteGroup(1, ((0,),), 0, (0,), "1")


def cyclic(n: int, max_order: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Cyclic group of order n; element i is the i-th power of the generator."""
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    _check_order(n, max_order)
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inverse = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, table, 0, inverse, f"C{n}")


def symmetric_elements(n: int) -> tuple[tuple[int, ...], ...]:
    """All permutations of {0..n-1} in lexicographic one-line notation.

    This is the element ordering used by symmetric(); exported so that
    element-index maps into symmetric groups can be built externally.
    """
    return tuple(itertools.permutations(range(n)))


def symmetric(n: int, max_order: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Symmetric group on n letters; elements in lexicographic one-line order,
    composition (p*q)(x) = p(q(x))."""
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    order = 1
    for i in range(2, n + 1):
        order *= i
    _check_order(order, max_order)
    elements = list(symmetric_elements(n))
    index = {p: i for i, p in enumerate(elements)}
    return _group_from_elements(elements, index, f"S{n}")


def dihedral(n: int, max_order: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Dihedral group of order 2n (n >= 2): indices 0..n-1 are the rotations
    r^k, indices n..2n-1 are the reflections r^k s."""
    if n < 2:
        raise ValueError("dihedral group needs n >= 2")
    _check_order(2 * n, max_order)

    def mul(a, b):
        k1, f1 = a % n, a // n
        k2, f2 = b % n, b // n
        k = (k1 - k2) % n if f1 else (k1 + k2) % n
        return k + n * ((f1 + f2) % 2)

    table = tuple(tuple(mul(a, b) for b in range(2 * n)) for a in range(2 * n))
    inverse = tuple(((-a) % n) if a < n else a for a in range(2 * n))
    return FiniteGroup(2 * n, table, 0, inverse, f"D{n}")


def direct_product(
    g: FiniteGroup, h: FiniteGroup, max_order: int = DEFAULT_ORDER_BOUND
) -> FiniteGroup:
    """Direct product; element a*|H| + b encodes the pair (a, b)."""
    order = g.order * h.order
    _check_order(order, max_order)
    hn = h.order

    table = tuple(
        tuple(
            g.table[a1][a2] * hn + h.table[b1][b2]
            for a2 in range(g.order)
            for b2 in range(hn)
        )
        for a1 in range(g.order)
        for b1 in range(hn)
    )
    inverse = tuple(
        g.inverse[a] * hn + h.inverse[b]
        for a in range(g.order)
        for b in range(hn)
    )
    identity = g.identity * hn + h.identity
    return FiniteGroup(order, table, identity, inverse, f"{g.label} x {h.label}")


def conjugacy_data(group: FiniteGroup) -> ConjugacyData:
    """Partition the elements into conjugacy classes and pair each class
    with the class of its inverses."""
    n = group.order
    table = group.table
    inv = group.inverse
    class_of = [-1] * n
    classes = []
    for h in range(n):
        if class_of[h] >= 0:
            continue
        orbit = {table[table[g][h]][inv[g]] for g in range(n)}
        ci = len(classes)
        classes.append(tuple(sorted(orbit)))
        for x in orbit:
            class_of[x] = ci
    pairing = tuple(class_of[inv[cls[0]]] for cls in classes)
    m = sum(1 for ci, cj in enumerate(pairing) if ci == cj)
    return ConjugacyData(tuple(classes), tuple(class_of), pairing, len(classes), m)


def cyclic_subgroup_generated(group: FiniteGroup, g: int) -> tuple[int, ...]:
    """The cyclic subgroup <g> as a sorted element tuple."""
    members = [group.identity]
    x = g
    while x != group.identity:
        members.append(x)
        x = group.table[x][g]
    return tuple(sorted(members))


def cyclic_subgroup_classes(group: FiniteGroup) -> CyclicSubgroupClasses:
    """Enumerate the distinct cyclic subgroups <g> and partition them into
    conjugation orbits; representatives keep first-seen order."""
    n = group.order
    table = group.table
    inv = group.inverse

    distinct = []
    seen = set()
    for g in range(n):
        sub = frozenset(cyclic_subgroup_generated(group, g))
        if sub not in seen:
            seen.add(sub)
            distinct.append(sub)

    representatives = []
    assigned = set()
    for sub in distinct:
        if sub in assigned:
            continue
        representatives.append(tuple(sorted(sub)))
        for g in range(n):
            conj = frozenset(table[table[g][s]][inv[g]] for s in sub)
            assigned.add(conj)

    return CyclicSubgroupClasses(tuple(representatives), len(representatives))
