"""Named example models, group literals, and the model-file schema.

Group literals (JSON objects):
    {"kind": "trivial"}
    {"kind": "cyclic" | "symmetric" | "dihedral", "n": int}
    {"kind": "product", "factors": [literal, ...]}
    {"kind": "table", "table": [[int, ...], ...]}
and the equivalent command-line strings `trivial`, `cyclic:n`,
`symmetric:n`, `dihedral:n`, `product:(a,b,...)`.

Model files are JSON objects with "name", "kind", and a payload:
    kind "finite_group":    {"group": literal, "rank_minus1"?: int}
    kind "cell_complex":    {"dims": [int, ...], "boundaries": [matrix, ...]}
    kind "graph_of_groups": {"vertices": [{"name", "group", "rank_minus1"?}],
                             "edges": [{"name", "group", "head", "tail",
                                        "head_map", "tail_map", "rank_minus1"?}],
                             "boundary_model": "zero" | "unit_inclusion"
                                 | {"user_supplied": {"pairs": [[n, rank], ...],
                                    "tail_pattern": [r1, r2, r3, r0]}}}
    kind "named_example":   {"example": name, "params"?: {...}}
Unknown fields are rejected with the offending JSON path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .assembly import (
    CellComplex,
    GraphEdge,
    GraphOfGroups,
    GraphVertex,
    UnitInclusion,
    UserSupplied,
    ZeroMap,
    rank_table,
)
from .errors import ParameterOutOfRange, SchemaError
from .groups import (
    FiniteGroup,
    cyclic,
    dihedral,
    direct_product,
    from_cayley_table,
    symmetric,
    symmetric_elements,
    trivial,
)
from .invariants import KRankFunction, k_rank_function

EXAMPLE_NAMES = ("free_group", "free_product", "psl2z", "surface", "fn_sn", "finite")
MODEL_KINDS = ("finite_group", "cell_complex", "graph_of_groups", "named_example")


# ---------------------------------------------------------------------------
# group literals

def group_from_literal(spec, path: str = "$") -> FiniteGroup:
    """Build a FiniteGroup from a JSON group literal."""
    if not isinstance(spec, dict):
        raise SchemaError(path, "group literal must be an object")
    kind = spec.get("kind")
    if kind == "trivial":
        _only_keys(spec, {"kind"}, path)
        return trivial()
    if kind in ("cyclic", "symmetric", "dihedral"):
        _only_keys(spec, {"kind", "n"}, path)
        n = _int_field(spec, "n", path)
        builder = {"cyclic": cyclic, "symmetric": symmetric, "dihedral": dihedral}[kind]
        try:
            return builder(n)
        except ValueError as exc:
            raise SchemaError(f"{path}.n", str(exc)) from exc
    if kind == "product":
        _only_keys(spec, {"kind", "factors"}, path)
        factors = spec.get("factors")
        if not isinstance(factors, list) or not factors:
            raise SchemaError(f"{path}.factors", "expected a nonempty list")
        groups = [
            group_from_literal(f, f"{path}.factors[{i}]") for i, f in enumerate(factors)
        ]
        result = groups[0]
        for g in groups[1:]:
            result = direct_product(result, g)
        return result
    if kind == "table":
        _only_keys(spec, {"kind", "table"}, path)
        table = spec.get("table")
        if not isinstance(table, list):
            raise SchemaError(f"{path}.table", "expected a list of rows")
        try:
            return from_cayley_table(table)
        except ValueError as exc:
            raise SchemaError(f"{path}.table", str(exc)) from exc
    raise SchemaError(f"{path}.kind", f"unknown group kind {kind!r}")


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on sep, ignoring separators inside parentheses."""
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current))
    return parts


def group_literal_from_string(text: str) -> dict:
    """Parse a command-line group literal into its JSON object form."""
    s = text.strip()
    if s == "trivial":
        return {"kind": "trivial"}
    if s.startswith("product:"):
        inner = s[len("product:"):].strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise ValueError(f"product literal needs parentheses: {text!r}")
        factors = [
            group_literal_from_string(part)
            for part in split_top_level(inner[1:-1])
            if part.strip()
        ]
        if not factors:
            raise ValueError(f"empty product literal: {text!r}")
        return {"kind": "product", "factors": factors}
    for kind in ("cyclic", "symmetric", "dihedral"):
        prefix = kind + ":"
        if s.startswith(prefix):
            try:
                n = int(s[len(prefix):])
            except ValueError:
                raise ValueError(f"expected an integer after {prefix!r} in {text!r}")
            return {"kind": kind, "n": n}
    raise ValueError(
        f"cannot parse group literal {text!r}; expected trivial, cyclic:n, "
        "symmetric:n, dihedral:n, or product:(a,b,...)"
    )


def group_from_string(text: str) -> FiniteGroup:
    return group_from_literal(group_literal_from_string(text))


def quaternion8() -> FiniteGroup:
    """The quaternion group of order 8, built from its Cayley table.

    Element order: 1, -1, i, -i, j, -j, k, -k.
    """
    # basis products with signs: _basis[a][b] = (sign, axis)
    basis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(a, b):
        (b1, s1), (b2, s2) = divmod(a, 2), divmod(b, 2)
        sign, axis = basis[(b1, b2)]
        negative = (s1 + s2 + (0 if sign == 1 else 1)) % 2
        return axis * 2 + negative

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return from_cayley_table(table, "Q8")


def catalog_groups() -> list[FiniteGroup]:
    """The finite groups exercised by the self-verification oracles,
    all of order <= 48."""
    groups = [trivial()]
    groups += [cyclic(n) for n in range(2, 25)]
    groups += [dihedral(n) for n in range(2, 25)]
    groups += [symmetric(n) for n in range(2, 5)]
    groups.append(direct_product(cyclic(2), cyclic(2)))
    groups.append(quaternion8())
    groups.append(direct_product(cyclic(2), cyclic(4)))
    groups.append(direct_product(cyclic(3), cyclic(3)))
    groups.append(direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2))))
    groups.append(direct_product(symmetric(3), cyclic(2)))
    groups.append(direct_product(dihedral(4), cyclic(3)))
    groups.append(direct_product(quaternion8(), cyclic(3)))
    return groups


# ---------------------------------------------------------------------------
# named examples

@dataclass(frozen=True)
class ExpandedExample:
    """A named example expanded into core models; models[0] is the primary
    representation, any further entries are equivalent alternates."""

    name: str
    label: str
    models: tuple


def _trivial_edge(name: str, head: str, tail: str) -> GraphEdge:
    t = trivial()
    return GraphEdge(name, t, head, tail, (0,), (0,), rank_minus1=0)


def wedge_of_circles(m: int, label: str | None = None) -> CellComplex:
    zero_row = tuple([(0,) * m]) if m else ((),)
    return CellComplex(
        (1, m), (zero_row,), label or f"wedge of {m} circles"
    )


def surface_complex(genus: int) -> CellComplex:
    d1 = ((0,) * (2 * genus),)
    d2 = tuple((0,) for _ in range(2 * genus))
    return CellComplex((1, 2 * genus, 1), (d1, d2), f"genus-{genus} surface")


def free_group_loop_graph(m: int) -> GraphOfGroups:
    t = trivial()
    vertex = GraphVertex("v0", t)
    edges = tuple(
        GraphEdge(f"e{i}", t, "v0", "v0", (0,), (0,), rank_minus1=0)
        for i in range(m)
    )
    return GraphOfGroups(
        (vertex,), edges, UnitInclusion(), f"F{m} as a {m}-loop graph"
    )


def free_product_graph(
    groups, rank_minus1=None, label: str | None = None
) -> GraphOfGroups:
    """Path-shaped tree of groups with trivial edge groups, one vertex per
    free factor, under the unit-inclusion boundary model."""
    groups = list(groups)
    if not groups:
        raise ParameterOutOfRange("free product needs at least one factor")
    data = list(rank_minus1) if rank_minus1 is not None else [None] * len(groups)
    if len(data) != len(groups):
        raise ParameterOutOfRange(
            f"{len(groups)} factors but {len(data)} rank_minus1 values"
        )
    vertices = tuple(
        GraphVertex(f"v{i}", g, rm) for i, (g, rm) in enumerate(zip(groups, data))
    )
    edges = tuple(
        _trivial_edge(f"e{i}", f"v{i}", f"v{i + 1}") for i in range(len(groups) - 1)
    )
    if label is None:
        label = " * ".join(g.label for g in groups)
    return GraphOfGroups(vertices, edges, UnitInclusion(), label)


def psl2z_graph() -> GraphOfGroups:
    """PSL2(Z) as the free product C2 * C3: an interval with a trivial edge
    group; both K_-1 data are 0."""
    return free_product_graph(
        [cyclic(2), cyclic(3)], rank_minus1=[0, 0], label="PSL2(Z)"
    )


def _symmetric_index(n: int) -> dict:
    return {p: i for i, p in enumerate(symmetric_elements(n))}


def embed_fixing_last(n: int) -> tuple[int, ...]:
    """Point-stabilizer inclusion of S_{n-1} into S_n fixing the last letter."""
    index = _symmetric_index(n)
    return tuple(
        index[p + (n - 1,)] for p in symmetric_elements(n - 1)
    )


def embed_fixing_first(n: int) -> tuple[int, ...]:
    """Point-stabilizer inclusion of S_{n-1} into S_n fixing the first letter."""
    index = _symmetric_index(n)
    return tuple(
        index[(0,) + tuple(x + 1 for x in p)] for p in symmetric_elements(n - 1)
    )


def fn_sn_graph(n: int) -> GraphOfGroups:
    """F_n : S_n (the symmetric group permuting the free generators) as a
    single loop with vertex group S_n and edge group S_{n-1}, mapped in by
    the two standard point-stabilizer inclusions; all edge-to-vertex
    morphisms are zero, and both K_-1 data are 0."""
    vertex = GraphVertex("v", symmetric(n), rank_minus1=0)
    edge = GraphEdge(
        "e", symmetric(n - 1), "v", "v",
        embed_fixing_last(n), embed_fixing_first(n),
        rank_minus1=0,
    )
    return GraphOfGroups((vertex,), (edge,), ZeroMap(), f"F{n}:S{n}")


def _param_int(params, key, path):
    value = params.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{path}.{key}", f"expected an integer, got {value!r}")
    return value


def expand_example(name: str, params: dict | None = None) -> ExpandedExample:
    """Expand a named example into its core model(s).

    free_group(m>=1) expands to both the wedge-of-circles complex and the
    equivalent loop graph; the other examples expand to a single model.
    """
    params = dict(params or {})
    path = "$.params"

    if name == "free_group":
        params.setdefault("m", 1)
        _only_keys(params, {"m"}, path)
        m = _param_int(params, "m", path)
        if m < 1:
            raise ParameterOutOfRange(f"free_group needs m >= 1, got {m}")
        return ExpandedExample(
            name, f"free group F{m}",
            (wedge_of_circles(m, f"F{m} as a wedge of {m} circles"),
             free_group_loop_graph(m)),
        )

    if name == "free_product":
        _only_keys(params, {"groups", "rank_minus1"}, path)
        literals = params.get("groups")
        if not isinstance(literals, list) or not literals:
            raise SchemaError(f"{path}.groups", "expected a nonempty list of group literals")
        groups = [
            group_from_literal(lit, f"{path}.groups[{i}]")
            for i, lit in enumerate(literals)
        ]
        data = params.get("rank_minus1")
        if data is not None and (
            not isinstance(data, list)
            or len(data) != len(groups)
            or any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in data)
        ):
            raise SchemaError(
                f"{path}.rank_minus1",
                "expected one nonnegative integer per factor",
            )
        graph = free_product_graph(groups, data)
        return ExpandedExample(name, graph.label, (graph,))

    if name == "psl2z":
        _only_keys(params, set(), path)
        return ExpandedExample(name, "PSL2(Z)", (psl2z_graph(),))

    if name == "surface":
        params.setdefault("g", 2)
        _only_keys(params, {"g"}, path)
        g = _param_int(params, "g", path)
        if g < 2:
            raise ParameterOutOfRange(f"surface needs genus g >= 2, got {g}")
        return ExpandedExample(
            name, f"genus-{g} surface group", (surface_complex(g),)
        )

    if name == "fn_sn":
        params.setdefault("n", 2)
        _only_keys(params, {"n"}, path)
        n = _param_int(params, "n", path)
        if n < 2:
            raise ParameterOutOfRange(f"fn_sn needs n >= 2, got {n}")
        return ExpandedExample(name, f"F{n}:S{n}", (fn_sn_graph(n),))

    if name == "finite":
        _only_keys(params, {"group", "rank_minus1"}, path)
        literal = params.get("group")
        if literal is None:
            raise SchemaError(f"{path}.group", "missing group literal")
        group = group_from_literal(literal, f"{path}.group")
        rm = params.get("rank_minus1")
        if rm is not None and (not isinstance(rm, int) or isinstance(rm, bool) or rm < 0):
            raise SchemaError(f"{path}.rank_minus1", "expected a nonnegative integer")
        return ExpandedExample(
            name, group.label, (k_rank_function(group, rm),)
        )

    raise SchemaError("$.example", f"unknown example {name!r}")


# ---------------------------------------------------------------------------
# model files

@dataclass(frozen=True)
class ModelSpec:
    """A parsed model file: name, kind, the canonical payload, and the
    constructed core model (excluded from equality)."""

    name: str
    kind: str
    payload: dict
    model: object = field(compare=False)


def _only_keys(obj: dict, allowed: set, path: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"{path}.{sorted(unknown)[0]}", "unknown field")


def _string_field(obj: dict, key: str, path: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or not value:
        raise SchemaError(f"{path}.{key}", "expected a nonempty string")
    return value


def _int_field(obj: dict, key: str, path: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{path}.{key}", f"expected an integer, got {value!r}")
    return value


def _optional_rank_minus1(obj: dict, path: str):
    if "rank_minus1" not in obj:
        return None
    value = obj["rank_minus1"]
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise SchemaError(f"{path}.rank_minus1", "expected a nonnegative integer")
    return value


def _int_list(value, path: str) -> list[int]:
    if not isinstance(value, list):
        raise SchemaError(path, "expected a list of integers")
    out = []
    for i, x in enumerate(value):
        if not isinstance(x, int) or isinstance(x, bool):
            raise SchemaError(f"{path}[{i}]", f"expected an integer, got {x!r}")
        out.append(x)
    return out


def _parse_boundary_model(value, path: str):
    if value == "zero":
        return ZeroMap(), "zero"
    if value == "unit_inclusion":
        return UnitInclusion(), "unit_inclusion"
    if isinstance(value, dict):
        _only_keys(value, {"user_supplied"}, path)
        body = value.get("user_supplied")
        if not isinstance(body, dict):
            raise SchemaError(f"{path}.user_supplied", "expected an object")
        _only_keys(body, {"pairs", "tail_pattern"}, f"{path}.user_supplied")
        raw_pairs = body.get("pairs", [])
        if not isinstance(raw_pairs, list):
            raise SchemaError(f"{path}.user_supplied.pairs", "expected a list")
        pairs = []
        for i, item in enumerate(raw_pairs):
            pair = _int_list(item, f"{path}.user_supplied.pairs[{i}]")
            if len(pair) != 2:
                raise SchemaError(
                    f"{path}.user_supplied.pairs[{i}]", "expected [degree, rank]"
                )
            pairs.append((pair[0], pair[1]))
        tail = _int_list(
            body.get("tail_pattern"), f"{path}.user_supplied.tail_pattern"
        )
        if len(tail) != 4:
            raise SchemaError(
                f"{path}.user_supplied.tail_pattern", "expected four entries"
            )
        model = UserSupplied(tuple(pairs), tuple(tail))
        canonical = {
            "user_supplied": {
                "pairs": [[d, r] for d, r in pairs],
                "tail_pattern": list(tail),
            }
        }
        return model, canonical
    raise SchemaError(
        path, 'expected "zero", "unit_inclusion", or {"user_supplied": ...}'
    )


def _parse_graph_payload(data: dict, path: str = "$"):
    _only_keys(data, {"vertices", "edges", "boundary_model"}, path)
    raw_vertices = data.get("vertices")
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise SchemaError(f"{path}.vertices", "expected a nonempty list")
    vertices = []
    vertex_payload = []
    for i, item in enumerate(raw_vertices):
        vpath = f"{path}.vertices[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(vpath, "expected an object")
        _only_keys(item, {"name", "group", "rank_minus1"}, vpath)
        vname = _string_field(item, "name", vpath)
        group = group_from_literal(item.get("group"), f"{vpath}.group")
        rm = _optional_rank_minus1(item, vpath)
        vertices.append(GraphVertex(vname, group, rm))
        entry = {"name": vname, "group": item["group"]}
        if rm is not None:
            entry["rank_minus1"] = rm
        vertex_payload.append(entry)

    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise SchemaError(f"{path}.edges", "expected a list")
    edges = []
    edge_payload = []
    for i, item in enumerate(raw_edges):
        epath = f"{path}.edges[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(epath, "expected an object")
        _only_keys(
            item,
            {"name", "group", "head", "tail", "head_map", "tail_map", "rank_minus1"},
            epath,
        )
        ename = _string_field(item, "name", epath)
        group = group_from_literal(item.get("group"), f"{epath}.group")
        head = _string_field(item, "head", epath)
        tail = _string_field(item, "tail", epath)
        head_map = tuple(_int_list(item.get("head_map"), f"{epath}.head_map"))
        tail_map = tuple(_int_list(item.get("tail_map"), f"{epath}.tail_map"))
        rm = _optional_rank_minus1(item, epath)
        known = {v.name for v in vertices}
        if head not in known:
            raise SchemaError(f"{epath}.head", f"unknown vertex {head!r}")
        if tail not in known:
            raise SchemaError(f"{epath}.tail", f"unknown vertex {tail!r}")
        edges.append(GraphEdge(ename, group, head, tail, head_map, tail_map, rm))
        entry = {
            "name": ename, "group": item["group"], "head": head, "tail": tail,
            "head_map": list(head_map), "tail_map": list(tail_map),
        }
        if rm is not None:
            entry["rank_minus1"] = rm
        edge_payload.append(entry)

    if "boundary_model" not in data:
        raise SchemaError(f"{path}.boundary_model", "missing")
    model, model_payload = _parse_boundary_model(
        data["boundary_model"], f"{path}.boundary_model"
    )
    payload = {
        "vertices": vertex_payload,
        "edges": edge_payload,
        "boundary_model": model_payload,
    }
    return payload, (tuple(vertices), tuple(edges), model)


def parse_model(text: str, name_hint: str = "model") -> ModelSpec:
    """Parse and validate model-file content into a ModelSpec.

    Raises SchemaError with the offending JSON path for structural
    problems; group/injection validation errors (NotAGroup,
    NotAHomomorphism, NotInjective) propagate with their witnesses.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise SchemaError("$", "top level must be an object")
    name = _string_field(data, "name", "$")
    kind = data.get("kind")
    if kind not in MODEL_KINDS:
        raise SchemaError("$.kind", f"expected one of {', '.join(MODEL_KINDS)}")
    body = {k: v for k, v in data.items() if k not in ("name", "kind")}

    if kind == "finite_group":
        _only_keys(body, {"group", "rank_minus1"}, "$")
        if "group" not in body:
            raise SchemaError("$.group", "missing group literal")
        group = group_from_literal(body["group"], "$.group")
        rm = _optional_rank_minus1(body, "$")
        payload = {"group": body["group"]}
        if rm is not None:
            payload["rank_minus1"] = rm
        return ModelSpec(name, kind, payload, k_rank_function(group, rm))

    if kind == "cell_complex":
        _only_keys(body, {"dims", "boundaries"}, "$")
        dims = _int_list(body.get("dims"), "$.dims")
        raw = body.get("boundaries")
        if not isinstance(raw, list):
            raise SchemaError("$.boundaries", "expected a list of matrices")
        boundaries = []
        for p, mat in enumerate(raw):
            if not isinstance(mat, list):
                raise SchemaError(f"$.boundaries[{p}]", "expected a list of rows")
            rows = tuple(
                tuple(_int_list(row, f"$.boundaries[{p}][{r}]"))
                for r, row in enumerate(mat)
            )
            boundaries.append(rows)
        try:
            model = CellComplex(tuple(dims), tuple(boundaries), name)
        except ValueError as exc:
            raise SchemaError("$.boundaries", str(exc)) from exc
        payload = {
            "dims": dims,
            "boundaries": [[list(row) for row in mat] for mat in boundaries],
        }
        return ModelSpec(name, kind, payload, model)

    if kind == "graph_of_groups":
        payload, (vertices, edges, model) = _parse_graph_payload(body)
        graph = GraphOfGroups(vertices, edges, model, name)
        return ModelSpec(name, kind, payload, graph)

    # named_example
    _only_keys(body, {"example", "params"}, "$")
    example = body.get("example")
    if example not in EXAMPLE_NAMES:
        raise SchemaError("$.example", f"expected one of {', '.join(EXAMPLE_NAMES)}")
    params = body.get("params", {})
    if not isinstance(params, dict):
        raise SchemaError("$.params", "expected an object")
    expanded = expand_example(example, params)
    payload = {"example": example}
    if params:
        payload["params"] = params
    return ModelSpec(name, kind, payload, expanded)


def render_model(spec: ModelSpec) -> str:
    """Serialize a ModelSpec back to model-file JSON (round-trip stable)."""
    data = {"name": spec.name, "kind": spec.kind}
    data.update(spec.payload)
    return json.dumps(data, indent=2) + "\n"


def spec_rank_table(spec: ModelSpec, n_lo: int, n_hi: int):
    """Rank table for a parsed model; named examples use their primary model."""
    model = spec.model
    label = spec.name
    if isinstance(model, ExpandedExample):
        label = f"{spec.name} ({model.label})"
        model = model.models[0]
    return rank_table(model, n_lo, n_hi, label=label)
