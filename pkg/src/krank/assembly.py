"""Rank assembly for K_n(Z[G]) over cell complexes and graphs of groups.

Two assembly paths, both exact:

* trivial-isotropy cell complexes (dimension <= 2): the value in degree n
  is sum_p b_p * rank K_{n-p}(Z), with Betti numbers from exact rational
  ranks of the integer boundary matrices;

* finite graphs of finite groups: the value in degree n is
  cok_n + ker_{n-1} of the edge-to-vertex map on rationalized K-groups,
  where the map's rank per degree comes from a BoundaryModel (zero map,
  the unit-inclusion model for trivial edge groups, or user-supplied
  ranks).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    ChainComplexViolation,
    ModelMismatch,
    NotAHomomorphism,
    NotInjective,
    RankOutOfBounds,
    UnsupportedDimension,
)
from .groups import FiniteGroup
from .invariants import KRankFunction, k_rank_function, rank_k_integers
from .linalg import as_int_matrix, matmul, rational_rank


@dataclass(frozen=True)
class CellComplex:
    """A finite cell complex with trivial isotropy, given by cell counts per
    dimension and integer boundary matrices (column = boundary of a cell)."""

    dims: tuple[int, ...]
    boundaries: tuple[tuple[tuple[int, ...], ...], ...]
    label: str = "cell complex"

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 0 for d in dims):
            raise ValueError("dims must be a nonempty list of nonnegative counts")
        mats = []
        if len(self.boundaries) != len(dims) - 1:
            raise ValueError(
                f"expected {len(dims) - 1} boundary matrices, got {len(self.boundaries)}"
            )
        for p, mat in enumerate(self.boundaries, start=1):
            rows = as_int_matrix(mat)
            if len(rows) != dims[p - 1]:
                raise ValueError(
                    f"boundary {p}: {len(rows)} rows, expected dims[{p - 1}] = {dims[p - 1]}"
                )
            for row in rows:
                if len(row) != dims[p]:
                    raise ValueError(
                        f"boundary {p}: row length {len(row)}, expected dims[{p}] = {dims[p]}"
                    )
            mats.append(tuple(tuple(row) for row in rows))
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "boundaries", tuple(mats))

    @property
    def dimension(self) -> int:
        return len(self.dims) - 1

    @cached_property
    def betti(self) -> tuple[int, ...]:
        for p in range(len(self.boundaries) - 1):
            product = matmul(self.boundaries[p], self.boundaries[p + 1])
            if any(x != 0 for row in product for x in row):
                raise ChainComplexViolation(
                    f"{self.label}: boundary {p + 1} o boundary {p + 2} is nonzero"
                )
        ranks = [rational_rank(mat) for mat in self.boundaries]
        ranks = [0] + ranks + [0]  # ranks[p] = rank of the map out of p-cells
        return tuple(
            self.dims[p] - ranks[p] - ranks[p + 1] for p in range(len(self.dims))
        )


def betti_numbers(complex_: CellComplex) -> tuple[int, ...]:
    """Rational Betti numbers b_0..b_d; raises ChainComplexViolation if
    consecutive boundaries do not compose to zero."""
    return complex_.betti


def rank_trivial_isotropy(complex_: CellComplex, n: int) -> int:
    """rank K_n for a trivial-isotropy complex: sum_p b_p * rank K_{n-p}(Z).

    Only dimensions <= 2 are accepted; the rational collapse that the
    formula encodes is not established beyond that range.
    """
    if complex_.dimension > 2:
        raise UnsupportedDimension(
            f"{complex_.label}: dimension {complex_.dimension} > 2"
        )
    return sum(
        b * rank_k_integers(n - p) for p, b in enumerate(betti_numbers(complex_))
    )


class BoundaryModel:
    """Model for the rank of the edge-to-vertex K-theory map per degree."""


@dataclass(frozen=True)
class ZeroMap(BoundaryModel):
    """All edge-to-vertex morphisms are zero."""


@dataclass(frozen=True)
class UnitInclusion(BoundaryModel):
    """Every edge group is trivial and each edge maps the unit K_n(Z)
    summand into its endpoint vertices; the map then acts as the graph
    incidence matrix on unit coordinates (the unit summand splits off
    rationally via the augmentation) and its rank in degree n is
    rank(incidence) * rank K_n(Z)."""


@dataclass(frozen=True)
class UserSupplied(BoundaryModel):
    """Explicit per-degree ranks: `pairs` lists (degree, rank); any degree
    n > 1 not listed uses tail_pattern = (rank at n%4==1, ==2, ==3, ==0);
    unlisted degrees n <= 1 default to 0."""

    pairs: tuple[tuple[int, int], ...]
    tail_pattern: tuple[int, int, int, int]

    def rank_at(self, n: int) -> int:
        for degree, rank in self.pairs:
            if degree == n:
                return rank
        if n > 1:
            return self.tail_pattern[(n - 1) % 4]
        return 0


@dataclass(frozen=True)
class GraphVertex:
    name: str
    group: FiniteGroup
    rank_minus1: int | None = None


@dataclass(frozen=True)
class GraphEdge:
    """An edge of a graph of groups: the edge group plus injections of it
    into the head and tail vertex groups, as element-index maps."""

    name: str
    group: FiniteGroup
    head: str
    tail: str
    head_map: tuple[int, ...]
    tail_map: tuple[int, ...]
    rank_minus1: int | None = None


def _check_injection(mapping, source: FiniteGroup, target: FiniteGroup, where: str):
    if len(mapping) != source.order:
        raise ValueError(
            f"{where}: map has {len(mapping)} entries, expected {source.order}"
        )
    for x in mapping:
        if not 0 <= x < target.order:
            raise ValueError(f"{where}: image {x} out of range 0..{target.order - 1}")
    for a in range(source.order):
        for b in range(source.order):
            if mapping[source.table[a][b]] != target.table[mapping[a]][mapping[b]]:
                raise NotAHomomorphism(
                    f"{where}: f({a}*{b}) = {mapping[source.table[a][b]]} but "
                    f"f({a})*f({b}) = {target.table[mapping[a]][mapping[b]]}"
                )
    images = {}
    for a, fa in enumerate(mapping):
        if fa in images:
            raise NotInjective(
                f"{where}: elements {images[fa]} and {a} both map to {fa}"
            )
        images[fa] = a


@dataclass(frozen=True)
class GraphOfGroups:
    """A finite graph with finite vertex and edge groups; loops permitted.

    Edge injections are checked pointwise against both Cayley tables at
    construction time.
    """

    vertices: tuple[GraphVertex, ...]
    edges: tuple[GraphEdge, ...]
    boundary_model: BoundaryModel
    label: str = "graph of groups"

    def __post_init__(self):
        names = [v.name for v in self.vertices]
        if len(set(names)) != len(names):
            raise ValueError("duplicate vertex names")
        edge_names = [e.name for e in self.edges]
        if len(set(edge_names)) != len(edge_names):
            raise ValueError("duplicate edge names")
        by_name = {v.name: v for v in self.vertices}
        for e in self.edges:
            for end, mapping in (("head", e.head_map), ("tail", e.tail_map)):
                vname = getattr(e, end)
                if vname not in by_name:
                    raise ValueError(f"edge {e.name}: unknown {end} vertex {vname!r}")
                _check_injection(
                    mapping, e.group, by_name[vname].group,
                    f"edge {e.name} {end} map into {vname}",
                )
        if isinstance(self.boundary_model, UserSupplied):
            seen = set()
            for degree, rank in self.boundary_model.pairs:
                if degree in seen:
                    raise ValueError(f"duplicate user-supplied degree {degree}")
                seen.add(degree)
                if rank < 0:
                    raise ValueError(f"negative user-supplied rank at degree {degree}")
            if any(r < 0 for r in self.boundary_model.tail_pattern):
                raise ValueError("negative rank in user-supplied tail pattern")

    @cached_property
    def vertex_ranks(self) -> tuple[KRankFunction, ...]:
        return tuple(k_rank_function(v.group, v.rank_minus1) for v in self.vertices)

    @cached_property
    def edge_ranks(self) -> tuple[KRankFunction, ...]:
        return tuple(k_rank_function(e.group, e.rank_minus1) for e in self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Vertex-by-edge incidence matrix: +1 at the head, -1 at the tail,
        zero column for a loop."""
        idx = {v.name: i for i, v in enumerate(self.vertices)}
        cols = len(self.edges)
        rows = [[0] * cols for _ in self.vertices]
        for j, e in enumerate(self.edges):
            if e.head != e.tail:
                rows[idx[e.head]][j] += 1
                rows[idx[e.tail]][j] -= 1
        return tuple(tuple(r) for r in rows)

    @cached_property
    def incidence_rank(self) -> int:
        return rational_rank(self.incidence)


def dims_e_v(graph: GraphOfGroups, n: int) -> tuple[int, int]:
    """(dim E_n, dim V_n): total edge and vertex K-rank in degree n."""
    dim_e = sum(f.evaluate(n) for f in graph.edge_ranks)
    dim_v = sum(f.evaluate(n) for f in graph.vertex_ranks)
    return dim_e, dim_v


def boundary_rank(graph: GraphOfGroups, n: int) -> int:
    """Rank of the edge-to-vertex map in degree n under the graph's model."""
    model = graph.boundary_model
    if isinstance(model, ZeroMap):
        return 0
    if isinstance(model, UnitInclusion):
        for e in graph.edges:
            if e.group.order != 1:
                raise ModelMismatch(
                    f"{graph.label}: unit-inclusion model needs trivial edge "
                    f"groups, but edge {e.name} has {e.group.label} "
                    f"(order {e.group.order})"
                )
        return graph.incidence_rank * rank_k_integers(n)
    if isinstance(model, UserSupplied):
        value = model.rank_at(n)
        dim_e, dim_v = dims_e_v(graph, n)
        bound = min(dim_e, dim_v)
        if not 0 <= value <= bound:
            raise RankOutOfBounds(
                f"{graph.label}: supplied rank {value} in degree {n} violates "
                f"0 <= rank <= min(dim E, dim V) = {bound}"
            )
        return value
    raise TypeError(f"unknown boundary model {model!r}")


def rank_graph_of_groups(graph: GraphOfGroups, n: int) -> int:
    """rank K_n(Z[G]) = cok_n + ker_{n-1} of the edge-to-vertex map."""
    rank, _ = _graph_degree(graph, n)
    return rank


def _graph_degree(graph: GraphOfGroups, n: int) -> tuple[int, str]:
    dim_e_n, dim_v_n = dims_e_v(graph, n)
    dim_e_prev, _ = dims_e_v(graph, n - 1)
    b_n = boundary_rank(graph, n)
    b_prev = boundary_rank(graph, n - 1)
    rank = (dim_v_n - b_n) + (dim_e_prev - b_prev)
    note = f"coker {dim_v_n}-{b_n}, ker {dim_e_prev}-{b_prev}"
    return rank, note


def _cell_degree(complex_: CellComplex, n: int) -> tuple[int, str]:
    rank = rank_trivial_isotropy(complex_, n)
    terms = " + ".join(
        f"{b}*{rank_k_integers(n - p)}"
        for p, b in enumerate(betti_numbers(complex_))
    )
    return rank, f"sum b_p * rankK(n-p) = {terms}"


def _finite_degree(fn: KRankFunction, n: int) -> tuple[int, str]:
    if n <= -2:
        note = "zero below degree -1"
    elif n == -1:
        note = "external K_-1 datum"
    elif n == 0:
        note = "rank K_0 = 1"
    elif n == 1:
        note = f"r - q = {fn.invariants.r} - {fn.invariants.q}"
    elif n % 2 == 0:
        note = "even degree > 1"
    elif n % 4 == 1:
        note = f"r = {fn.invariants.r}"
    else:
        note = f"c = {fn.invariants.c}"
    return fn.evaluate(n), note


@dataclass(frozen=True)
class RankTable:
    """Per-degree ranks over [n_lo, n_hi] with a provenance note each."""

    label: str
    n_lo: int
    n_hi: int
    ranks: tuple[int, ...]
    notes: tuple[str, ...]

    def rank(self, n: int) -> int:
        if not self.n_lo <= n <= self.n_hi:
            raise IndexError(f"degree {n} outside [{self.n_lo}, {self.n_hi}]")
        return self.ranks[n - self.n_lo]

    def rows(self):
        for i, n in enumerate(range(self.n_lo, self.n_hi + 1)):
            yield n, self.ranks[i], self.notes[i]


def rank_table(model, n_lo: int, n_hi: int, label: str | None = None) -> RankTable:
    """Tabulate ranks for a CellComplex, GraphOfGroups, or KRankFunction."""
    if n_lo > n_hi:
        raise ValueError(f"empty degree range [{n_lo}, {n_hi}]")
    if isinstance(model, CellComplex):
        degree = lambda n: _cell_degree(model, n)
    elif isinstance(model, GraphOfGroups):
        degree = lambda n: _graph_degree(model, n)
    elif isinstance(model, KRankFunction):
        degree = lambda n: _finite_degree(model, n)
    else:
        raise TypeError(f"cannot tabulate ranks for {type(model).__name__}")
    ranks = []
    notes = []
    for n in range(n_lo, n_hi + 1):
        rank, note = degree(n)
        ranks.append(rank)
        notes.append(note)
    return RankTable(
        label if label is not None else model.label,
        n_lo, n_hi, tuple(ranks), tuple(notes),
    )
