"""Quivers with marked vertices, their representations, and invariant theory.

Only the groups ``GL(v_i)`` at marked vertices act. The two reduction steps
turn such data into a quiver where every vertex but one extra vertex
``inf`` (of dimension 1) is marked, and then mark ``inf`` too after extending
the character. Invariants are traces of cycles through marked vertices and
matrix coordinates of paths that start and end at unmarked vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PreconditionError, ShapeError
from .exactalg import Matrix, Subspace, subspace_contains


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        edges = tuple((int(s), int(t)) for s, t in self.edges)
        object.__setattr__(self, "edges", edges)
        for s, t in edges:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise ShapeError(f"edge ({s}, {t}) leaves the vertex range 0..{self.vertex_count - 1}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(edges):
                raise ShapeError("one label per edge is required")
            object.__setattr__(self, "labels", labels)

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels is not None else f"e{e}"

    def source(self, e: int) -> int:
        return self.edges[e][0]

    def target(self, e: int) -> int:
        return self.edges[e][1]

    def out_edges(self, v: int) -> list[int]:
        return [e for e, (s, _) in enumerate(self.edges) if s == v]


@dataclass(frozen=True)
class MarkedQuiver:
    quiver: Quiver
    marked: frozenset[int]
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "marked", frozenset(int(i) for i in self.marked))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        n = self.quiver.vertex_count
        if len(self.dims) != n:
            raise ShapeError(f"{len(self.dims)} dimensions given for {n} vertices")
        if any(d < 0 for d in self.dims):
            raise ShapeError("dimensions must be nonnegative")
        if not self.marked <= set(range(n)):
            raise ShapeError("marked vertices must be vertex ids")

    @property
    def marked_list(self) -> list[int]:
        return sorted(self.marked)

    @property
    def unmarked_list(self) -> list[int]:
        return [v for v in range(self.quiver.vertex_count) if v not in self.marked]

    def is_marked(self, v: int) -> bool:
        return v in self.marked

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def edge_shape(self, e: int) -> tuple[int, int]:
        s, t = self.quiver.edges[e]
        return (self.dims[t], self.dims[s])

    def to_json(self) -> dict:
        out = {
            "vertices": self.quiver.vertex_count,
            "edges": [list(e) for e in self.quiver.edges],
            "marked": self.marked_list,
            "dims": list(self.dims),
        }
        if self.quiver.labels is not None:
            out["labels"] = list(self.quiver.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> MarkedQuiver:
        try:
            q = Quiver(int(data["vertices"]), tuple(tuple(e) for e in data["edges"]), data.get("labels"))
            return cls(q, frozenset(data["marked"]), tuple(data["dims"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed quiver JSON: {exc}") from exc


@dataclass(frozen=True)
class Character:
    """Integer weights aligned with the sorted marked vertices."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def weight_map(self, mq: MarkedQuiver) -> dict[int, int]:
        if len(self.weights) != len(mq.marked):
            raise ShapeError(f"character has {len(self.weights)} weights for {len(mq.marked)} marked vertices")
        return dict(zip(mq.marked_list, self.weights))


@dataclass(frozen=True)
class Representation:
    marked_quiver: MarkedQuiver
    maps: tuple[Matrix, ...]
    modulus: int | None = None

    def __post_init__(self):
        maps = tuple(self.maps)
        object.__setattr__(self, "maps", maps)
        mq = self.marked_quiver
        if len(maps) != len(mq.quiver.edges):
            raise ShapeError(f"{len(maps)} matrices for {len(mq.quiver.edges)} edges")
        for e, m in enumerate(maps):
            if m.shape != mq.edge_shape(e):
                raise ShapeError(f"edge {mq.quiver.label(e)}: expected {mq.edge_shape(e)}, got {m.shape}")
            if m.modulus != self.modulus:
                raise ShapeError("mixed domains among representation matrices")

    def to_json(self) -> dict:
        out = {"quiver": self.marked_quiver.to_json(), "maps": [m.to_json() for m in self.maps]}
        if self.modulus is not None:
            out["modulus"] = self.modulus
            out["maps"] = [m.to_json()["entries"] for m in self.maps]
        return out

    @classmethod
    def from_json(cls, data: dict) -> Representation:
        mq = MarkedQuiver.from_json(data["quiver"])
        modulus = data.get("modulus")
        modulus = int(modulus) if modulus is not None else None
        maps = []
        for e, grid in enumerate(data["maps"]):
            r, c = mq.edge_shape(e)
            maps.append(Matrix.from_json(grid, r, c, modulus))
        return cls(mq, tuple(maps), modulus)


@dataclass(frozen=True)
class SubrepWitness:
    subspaces: tuple[Subspace, ...]

    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.subspaces)

    def to_json(self) -> dict:
        return {"subspaces": [s.to_json() for s in self.subspaces], "dims": list(self.dims())}


# -- named quivers ------------------------------------------------------------


def sigma_quiver(n: int, m: int, p: int) -> MarkedQuiver:
    """State vertex 0 (marked, loop A), input 1, output 2; edges A, B, C, D."""
    q = Quiver(3, ((0, 0), (1, 0), (0, 2), (1, 2)), ("A", "B", "C", "D"))
    return MarkedQuiver(q, frozenset({0}), (n, m, p))


def lomadze_quiver(n: int, m: int, p: int) -> MarkedQuiver:
    """Vertices n, n+p (both marked) and p+m; edges K, L: 0 -> 1 and M: 2 -> 1."""
    q = Quiver(3, ((0, 1), (0, 1), (2, 1)), ("K", "L", "M"))
    return MarkedQuiver(q, frozenset({0, 1}), (n, n + p, p + m))


def helmke_quiver(n: int, m: int, p: int) -> MarkedQuiver:
    """Vertices n, n, p (marked) and p, m (unmarked); edges E, A, B, C, D, F."""
    q = Quiver(
        5,
        ((0, 1), (0, 1), (4, 1), (0, 2), (4, 2), (3, 2)),
        ("E", "A", "B", "C", "D", "F"),
    )
    return MarkedQuiver(q, frozenset({0, 1, 2}), (n, n, p, p, m))


# -- subrepresentations ---------------------------------------------------------


def _check_witness(rep: Representation, s: SubrepWitness):
    dims = rep.marked_quiver.dims
    if len(s.subspaces) != len(dims):
        raise ShapeError("one subspace per vertex is required")
    for i, (sub, d) in enumerate(zip(s.subspaces, dims)):
        if sub.ambient_dim != d:
            raise ShapeError(f"vertex {i}: subspace of k^{sub.ambient_dim} but dimension is {d}")


def subrep_is_valid(rep: Representation, s: SubrepWitness) -> bool:
    """Every edge map carries the source subspace into the target subspace."""
    _check_witness(rep, s)
    q = rep.marked_quiver.quiver
    for e, (src, tgt) in enumerate(q.edges):
        moved = s.subspaces[src].image_under(rep.maps[e])
        if not subspace_contains(s.subspaces[tgt], moved):
            return False
    return True


def pairing(chi: Character, s: SubrepWitness, mq: MarkedQuiver) -> int:
    w = chi.weight_map(mq)
    return sum(s.subspaces[i].dim * w[i] for i in mq.marked_list)


def pairing_dims(chi: Character, dims: Sequence[int], mq: MarkedQuiver) -> int:
    w = chi.weight_map(mq)
    return sum(dims[i] * w[i] for i in mq.marked_list)


# -- group action -----------------------------------------------------------------


def act_representation(blocks: Sequence[Matrix], rep: Representation) -> Representation:
    """``(g_i) . (r_a) = g_t(a) r_a g_s(a)^-1``; blocks follow the sorted marked vertices."""
    mq = rep.marked_quiver
    if len(blocks) != len(mq.marked):
        raise ShapeError("one group block per marked vertex is required")
    g = dict(zip(mq.marked_list, blocks))
    inv = {v: b.inverse() for v, b in g.items()}
    out = []
    for e, (s, t) in enumerate(mq.quiver.edges):
        m = rep.maps[e]
        if t in g:
            m = g[t] @ m
        if s in g:
            m = m @ inv[s]
        out.append(m)
    return Representation(mq, tuple(out), rep.modulus)


# -- reduction steps ----------------------------------------------------------------


@dataclass(frozen=True)
class EdgeOrigin:
    """Where a reduced edge came from: ``kind`` is ``keep``, ``row`` or ``col``."""

    edge: int
    kind: str
    index: int | None = None


@dataclass(frozen=True)
class StepOneTable:
    vertex_map: tuple[int, ...]
    origins: tuple[EdgeOrigin, ...]
    source: MarkedQuiver = field(compare=False)

    @property
    def infinity(self) -> int:
        return len(self.source.marked)


def unmarked_edges(mq: MarkedQuiver) -> list[int]:
    return [
        e
        for e, (s, t) in enumerate(mq.quiver.edges)
        if not mq.is_marked(s) and not mq.is_marked(t)
    ]


def strip_unmarked_edges(mq: MarkedQuiver) -> tuple[MarkedQuiver, list[int]]:
    """Drop edges joining two unmarked vertices; the group does not see them."""
    removed = unmarked_edges(mq)
    keep = [e for e in range(len(mq.quiver.edges)) if e not in removed]
    q = mq.quiver
    labels = tuple(q.labels[e] for e in keep) if q.labels is not None else None
    stripped = Quiver(q.vertex_count, tuple(q.edges[e] for e in keep), labels)
    return MarkedQuiver(stripped, mq.marked, mq.dims), removed


def strip_representation(rep: Representation) -> tuple[Representation, list[tuple[int, Matrix]]]:
    """Strip unmarked-to-unmarked edges, returning their matrices (invariant coordinates)."""
    stripped, removed = strip_unmarked_edges(rep.marked_quiver)
    maps = tuple(m for e, m in enumerate(rep.maps) if e not in removed)
    return Representation(stripped, maps, rep.modulus), [(e, rep.maps[e]) for e in removed]


def reduce_step_one(mq: MarkedQuiver) -> tuple[MarkedQuiver, StepOneTable]:
    """Collapse all unmarked vertices into one vertex ``inf`` of dimension 1.

    Marked vertices keep their relative order and become ``0..k-1``; ``inf``
    is vertex ``k``. An edge between a marked ``i`` and an unmarked ``j``
    becomes ``dims[j]`` parallel edges between ``i`` and ``inf`` with the same
    orientation: one per row (edge into ``j``) or column (edge out of ``j``).
    """
    bad = unmarked_edges(mq)
    if bad:
        raise PreconditionError(
            f"edges {[mq.quiver.label(e) for e in bad]} join two unmarked vertices; strip them first"
        )
    marked = mq.marked_list
    inf = len(marked)
    vmap = tuple(marked.index(v) if v in mq.marked else inf for v in range(mq.quiver.vertex_count))
    new_edges, labels, origins = [], [], []
    q = mq.quiver
    for e, (s, t) in enumerate(q.edges):
        name = q.label(e)
        if mq.is_marked(s) and mq.is_marked(t):
            new_edges.append((vmap[s], vmap[t]))
            labels.append(name)
            origins.append(EdgeOrigin(e, "keep"))
        elif mq.is_marked(s):
            for r in range(mq.dims[t]):
                new_edges.append((vmap[s], inf))
                labels.append(f"{name}[{r},:]")
                origins.append(EdgeOrigin(e, "row", r))
        else:
            for c in range(mq.dims[s]):
                new_edges.append((inf, vmap[t]))
                labels.append(f"{name}[:,{c}]")
                origins.append(EdgeOrigin(e, "col", c))
    reduced = MarkedQuiver(
        Quiver(inf + 1, tuple(new_edges), tuple(labels)),
        frozenset(range(inf)),
        tuple(mq.dims[v] for v in marked) + (1,),
    )
    return reduced, StepOneTable(vmap, tuple(origins), mq)


def transport_representation(rep: Representation, table: StepOneTable) -> Representation:
    """Split marked/unmarked blocks into rows or columns along the reduction table."""
    if rep.marked_quiver != table.source:
        raise ShapeError("representation does not live on the quiver the table was built for")
    reduced, _ = reduce_step_one(table.source)
    maps = []
    for o in table.origins:
        m = rep.maps[o.edge]
        if o.kind == "keep":
            maps.append(m)
        elif o.kind == "row":
            maps.append(m.submatrix([o.index], range(m.cols)))
        else:
            maps.append(m.submatrix(range(m.rows), [o.index]))
    return Representation(reduced, tuple(maps), rep.modulus)


def extend_character_step_two(chi: Character, mq: MarkedQuiver) -> Character:
    """Weights on every vertex: copied on marked ones, ``-sum chi_i v_i`` at ``inf``."""
    unmarked = mq.unmarked_list
    if len(unmarked) != 1 or mq.dims[unmarked[0]] != 1:
        raise PreconditionError("extending the character needs exactly one unmarked vertex, of dimension 1")
    w = chi.weight_map(mq)
    inf = unmarked[0]
    w[inf] = -sum(w[i] * mq.dims[i] for i in mq.marked_list)
    return Character(tuple(w[v] for v in range(mq.quiver.vertex_count)))


def mark_all(mq: MarkedQuiver) -> MarkedQuiver:
    return MarkedQuiver(mq.quiver, frozenset(range(mq.quiver.vertex_count)), mq.dims)


# -- cycles, paths, invariants ---------------------------------------------------------


def _walks_from(mq: MarkedQuiver, start: int, max_len: int) -> Iterable[tuple[int, ...]]:
    q = mq.quiver
    out = {v: q.out_edges(v) for v in range(q.vertex_count)}
    stack = [((), start)]
    while stack:
        path, v = stack.pop()
        if path:
            yield path
        if len(path) < max_len:
            for e in reversed(out[v]):
                stack.append((path + (e,), q.target(e)))


def canonical_rotation(cycle: Sequence[int]) -> tuple[int, ...]:
    cyc = tuple(cycle)
    return min(cyc[i:] + cyc[:i] for i in range(len(cyc)))


def cycle_vertices(mq: MarkedQuiver, cycle: Sequence[int]) -> list[int]:
    return [mq.quiver.source(e) for e in cycle]


def enumerate_cycles(mq: MarkedQuiver, max_len: int, marked_only: bool = False) -> list[tuple[int, ...]]:
    """Oriented cycles of length ``<= max_len`` up to rotation (least rotation kept).

    With ``marked_only``, only cycles passing through a marked vertex, i.e.
    those that can be read as starting and ending there.
    """
    if max_len < 1:
        raise PreconditionError("max_len must be at least 1")
    found: set[tuple[int, ...]] = set()
    q = mq.quiver
    for v in range(q.vertex_count):
        for path in _walks_from(mq, v, max_len):
            if q.target(path[-1]) == v and path == canonical_rotation(path):
                found.add(path)
    cycles = sorted(found, key=lambda c: (len(c), c))
    if marked_only:
        cycles = [c for c in cycles if any(mq.is_marked(u) for u in cycle_vertices(mq, c))]
    return cycles


def enumerate_unmarked_paths(mq: MarkedQuiver, max_len: int) -> list[tuple[int, ...]]:
    """Oriented paths (edges may repeat) of length ``<= max_len`` from an unmarked vertex to an unmarked vertex."""
    if max_len < 1:
        raise PreconditionError("max_len must be at least 1")
    q = mq.quiver
    paths = [
        path
        for v in mq.unmarked_list
        for path in _walks_from(mq, v, max_len)
        if not mq.is_marked(q.target(path[-1]))
    ]
    return sorted(paths, key=lambda c: (len(c), c))


@dataclass(frozen=True)
class Generator:
    """An invariant function: ``trace`` of a cycle or a ``coord`` entry of a path."""

    kind: str
    edges: tuple[int, ...]
    entry: tuple[int, int] | None = None

    def name(self, mq: MarkedQuiver) -> str:
        labels = [mq.quiver.label(e) for e in reversed(self.edges)]
        runs: list[list] = []
        for x in labels:
            if runs and runs[-1][0] == x:
                runs[-1][1] += 1
            else:
                runs.append([x, 1])
        parts = [x if k == 1 else f"{x}^{k}" for x, k in runs]
        word = "".join(parts) if all(len(x) == 1 for x in labels) else "*".join(parts)
        if self.kind == "trace":
            return f"tr({word})"
        s, t = mq.quiver.source(self.edges[0]), mq.quiver.target(self.edges[-1])
        if mq.dims[s] == 1 and mq.dims[t] == 1:
            return word
        return f"{word}[{self.entry[0]},{self.entry[1]}]"

    def to_json(self, mq: MarkedQuiver) -> dict:
        out = {"kind": self.kind, "edges": list(self.edges), "name": self.name(mq)}
        if self.entry is not None:
            out["entry"] = list(self.entry)
        return out


def generator_length_bound(mq: MarkedQuiver) -> int:
    return mq.total_dim**2


def invariant_generators(mq: MarkedQuiver, max_len: int | None = None) -> list[Generator]:
    """Traces of marked cycles and coordinates of unmarked-to-unmarked paths.

    Lengths are bounded by ``N^2`` with ``N`` the total dimension; a smaller
    ``max_len`` truncates the list further.
    """
    bound = generator_length_bound(mq)
    cap = bound if max_len is None else min(max_len, bound)
    if cap < 1:
        return []
    gens = [Generator("trace", c) for c in enumerate_cycles(mq, cap, marked_only=True)]
    for path in enumerate_unmarked_paths(mq, cap):
        s, t = mq.quiver.source(path[0]), mq.quiver.target(path[-1])
        for i in range(mq.dims[t]):
            for j in range(mq.dims[s]):
                gens.append(Generator("coord", path, (i, j)))
    return gens


def compose_path(rep: Representation, edges: Sequence[int]) -> Matrix:
    """``r_{a_s} o ... o r_{a_1}`` for the path ``a_1, ..., a_s``."""
    m = rep.maps[edges[0]]
    for e in edges[1:]:
        m = rep.maps[e] @ m
    return m


def evaluate_generator(rep: Representation, g: Generator):
    q = rep.marked_quiver.quiver
    for a, b in zip(g.edges, g.edges[1:]):
        if q.target(a) != q.source(b):
            raise ShapeError("generator edges do not form a path")
    m = compose_path(rep, g.edges)
    if g.kind == "trace":
        if not m.is_square():
            raise ShapeError("trace of a non-closed path")
        return sum((m[i, i] for i in range(m.rows)), m.scalar(0))
    i, j = g.entry
    return m[i, j]


def _reachable(mq: MarkedQuiver, v: int) -> set[int]:
    """Vertices reachable from ``v`` by a path of length >= 1."""
    q = mq.quiver
    seen: set[int] = set()
    frontier = [q.target(e) for e in q.out_edges(v)]
    while frontier:
        u = frontier.pop()
        if u in seen:
            continue
        seen.add(u)
        frontier.extend(q.target(e) for e in q.out_edges(u))
    return seen


def is_quotient_projective(mq: MarkedQuiver) -> bool:
    """No oriented cycle and no oriented path between unmarked vertices."""
    n = mq.quiver.vertex_count
    if any(v in _reachable(mq, v) for v in range(n)):
        return False
    return not any(
        not mq.is_marked(u) for v in mq.unmarked_list for u in _reachable(mq, v)
    )
