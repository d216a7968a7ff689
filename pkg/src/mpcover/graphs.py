"""Complete multipartite graphs with 2-edge-colorings.

A shape K_{a1,...,ak} is stored as its part-size vector sorted descending;
vertices 0..n-1 are numbered so that each part occupies a contiguous block.
Edges (u < v, u and v in different parts) are ordered lexicographically and a
2-coloring is a dense bitstring over that order: bit i = 1 means edge i is
blue, 0 means red.  All distance work runs on per-color bitmask adjacency
rows, so a BFS step is one OR-fold over the frontier.

Includes the layer decompositions used by the cover constructions: single-root
color-BFS layers split over a 3-group partition of the parts, the four
"sent-color" sectors of a vertex and its clone (the co-part vertex in a size-2
part), and the nine blue-distance cells of a clone pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptySet, InvalidShape, InvalidVertex, NoUniqueClone

# Colors.  Blue is color 1 and is the bit value 1 in stored bitstrings.
RED = 0
BLUE = 1
COLORS = (RED, BLUE)
COLOR_NAMES = {RED: "red", BLUE: "blue"}

# Distance sentinel for "unreachable"; larger than any real distance and
# stable under the +1 arithmetic done by bounded scans.
INF = 1 << 30


def other_color(c: int) -> int:
    return 1 - c


def color_from_name(name: str) -> int:
    try:
        return {"red": RED, "blue": BLUE}[name]
    except KeyError:
        raise InvalidShape(f"unknown color name {name!r}")


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int):
    """Yield the set bit positions of a mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ============================================================================
# SHAPES
# ============================================================================

class MultipartiteShape:
    """Canonical complete multipartite shape.

    Immutable; equality and hashing go by the part-size vector.
    """

    __slots__ = ("part_sizes", "n", "k", "part_id", "part_start", "edges",
                 "edge_index", "m", "full_mask", "adjacent_mask")

    def __init__(self, part_sizes):
        sizes = tuple(sorted(part_sizes, reverse=True))
        if not sizes or any(a < 1 for a in sizes):
            raise InvalidShape(f"part sizes must be a nonempty list of "
                               f"positive integers, got {list(part_sizes)!r}")
        self.part_sizes = sizes
        self.k = len(sizes)
        self.n = sum(sizes)
        part_id = []
        starts = []
        at = 0
        for p, a in enumerate(sizes):
            starts.append(at)
            part_id.extend([p] * a)
            at += a
        self.part_id = tuple(part_id)
        self.part_start = tuple(starts)
        edges = []
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if part_id[u] != part_id[v]:
                    edges.append((u, v))
        self.edges = tuple(edges)
        self.edge_index = {e: i for i, e in enumerate(edges)}
        self.m = len(edges)
        self.full_mask = (1 << self.n) - 1
        adj = []
        for u in range(self.n):
            p = part_id[u]
            block = ((1 << sizes[p]) - 1) << starts[p]
            adj.append(self.full_mask & ~block)
        self.adjacent_mask = tuple(adj)

    def part_of(self, u: int) -> int:
        self.check_vertex(u)
        return self.part_id[u]

    def part_vertices(self, p: int) -> range:
        return range(self.part_start[p], self.part_start[p] + self.part_sizes[p])

    def clone_of(self, u: int) -> int:
        """The co-part vertex of u; defined only in a part of size 2."""
        self.check_vertex(u)
        p = self.part_id[u]
        if self.part_sizes[p] != 2:
            raise NoUniqueClone(f"vertex {u} lies in a part of size "
                                f"{self.part_sizes[p]}, not 2")
        s = self.part_start[p]
        return s + 1 if u == s else s

    def check_vertex(self, u: int) -> None:
        if not isinstance(u, int) or not 0 <= u < self.n:
            raise InvalidVertex(f"vertex {u!r} outside 0..{self.n - 1}")

    def __eq__(self, other):
        return (isinstance(other, MultipartiteShape)
                and self.part_sizes == other.part_sizes)

    def __hash__(self):
        return hash(self.part_sizes)

    def __repr__(self):
        return f"MultipartiteShape({list(self.part_sizes)})"


def build_shape(part_sizes) -> MultipartiteShape:
    """Canonicalize a part-size list into a shape (sizes sorted descending)."""
    return MultipartiteShape(part_sizes)


# ============================================================================
# COLORINGS
# ============================================================================

class EdgeColoring:
    """A 2-coloring of a shape's edges, stored as a bitstring (1 = blue).

    Immutable; per-color adjacency rows are precomputed at construction, and
    the all-pairs distance matrices are cached on first use.
    """

    __slots__ = ("shape", "bits", "adj", "_dist")

    def __init__(self, shape: MultipartiteShape, bits: int):
        if not 0 <= bits < (1 << shape.m):
            raise InvalidShape(f"bitstring out of range for {shape.m} edges")
        self.shape = shape
        self.bits = bits
        red = [0] * shape.n
        blue = [0] * shape.n
        for i, (u, v) in enumerate(shape.edges):
            if (bits >> i) & 1:
                blue[u] |= 1 << v
                blue[v] |= 1 << u
            else:
                red[u] |= 1 << v
                red[v] |= 1 << u
        self.adj = (tuple(red), tuple(blue))
        self._dist = [None, None]

    @classmethod
    def from_edges(cls, shape: MultipartiteShape, colored_edges) -> "EdgeColoring":
        """Build from [(u, v, color)] covering every edge exactly once."""
        seen = set()
        bits = 0
        for u, v, c in colored_edges:
            if isinstance(c, str):
                c = color_from_name(c)
            e = (u, v) if u < v else (v, u)
            i = shape.edge_index.get(e)
            if i is None:
                raise InvalidShape(f"{e} is not an edge of {shape!r}")
            if i in seen:
                raise InvalidShape(f"edge {e} colored twice")
            seen.add(i)
            if c == BLUE:
                bits |= 1 << i
        if len(seen) != shape.m:
            raise InvalidShape(f"{shape.m - len(seen)} edges left uncolored")
        return cls(shape, bits)

    @classmethod
    def all_same(cls, shape: MultipartiteShape, c: int) -> "EdgeColoring":
        return cls(shape, (1 << shape.m) - 1 if c == BLUE else 0)

    @property
    def n(self) -> int:
        return self.shape.n

    def color_of(self, u: int, v: int) -> int:
        e = (u, v) if u < v else (v, u)
        return (self.bits >> self.shape.edge_index[e]) & 1

    def swap_colors(self) -> "EdgeColoring":
        return EdgeColoring(self.shape, self.bits ^ ((1 << self.shape.m) - 1))

    def permute(self, perm) -> "EdgeColoring":
        """Coloring with vertex u relabeled perm[u] (must respect parts)."""
        shape = self.shape
        if sorted(perm) != list(range(shape.n)):
            raise InvalidVertex(f"{perm!r} is not a permutation of 0..{shape.n - 1}")
        for p in range(shape.k):
            images = {shape.part_id[perm[u]] for u in shape.part_vertices(p)}
            if len(images) != 1:
                raise InvalidVertex(f"permutation splits part {p} across "
                                    f"parts {sorted(images)}")
        bits = 0
        idx = self.shape.edge_index
        for i, (u, v) in enumerate(self.shape.edges):
            if (self.bits >> i) & 1:
                a, b = perm[u], perm[v]
                bits |= 1 << idx[(a, b) if a < b else (b, a)]
        return EdgeColoring(self.shape, bits)

    def distances(self, c: int):
        """All-pairs color-c distance matrix (tuple of tuples, INF-padded)."""
        if self._dist[c] is None:
            rows = self.adj[c]
            full = self.shape.full_mask
            self._dist[c] = tuple(
                tuple(_bfs_dists(rows, v, full, self.shape.n))
                for v in range(self.shape.n))
        return self._dist[c]

    def __eq__(self, other):
        return (isinstance(other, EdgeColoring)
                and self.shape == other.shape and self.bits == other.bits)

    def __hash__(self):
        return hash((self.shape.part_sizes, self.bits))

    def __repr__(self):
        return (f"EdgeColoring({list(self.shape.part_sizes)}, "
                f"bits=0x{self.bits:x})")


def _bfs_dists(adj_rows, root: int, allowed: int, n: int):
    """Distance list from root using only edges inside ``allowed``."""
    dist = [INF] * n
    if not (allowed >> root) & 1:
        return dist
    dist[root] = 0
    seen = 1 << root
    frontier = seen
    d = 0
    while frontier:
        nxt = 0
        for v in bits_of(frontier):
            nxt |= adj_rows[v]
        nxt &= allowed & ~seen
        d += 1
        for v in bits_of(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


# ============================================================================
# DISTANCES AND DIAMETERS
# ============================================================================

def color_distance(chi: EdgeColoring, c: int, u: int, v: int) -> int:
    """Shortest color-c path length between u and v (INF if none)."""
    chi.shape.check_vertex(u)
    chi.shape.check_vertex(v)
    return chi.distances(c)[u][v]


def color_diameter(chi: EdgeColoring, c: int, S=None) -> int:
    """Diameter of the color-c graph induced on S (INF if disconnected).

    S defaults to the whole vertex set; a singleton has diameter 0.
    """
    if S is None:
        vs = range(chi.n)
        allowed = chi.shape.full_mask
    else:
        vs = sorted(set(S))
        if not vs:
            raise EmptySet("diameter of an empty vertex set")
        for v in vs:
            chi.shape.check_vertex(v)
        allowed = mask_of(vs)
    return diameter_in_mask(chi, c, allowed)


def diameter_in_mask(chi: EdgeColoring, c: int, allowed: int) -> int:
    """Diameter of the color-c graph induced on a vertex bitmask."""
    rows = chi.adj[c]
    best = 0
    vs = list(bits_of(allowed))
    for u in vs:
        dist = _bfs_dists(rows, u, allowed, chi.n)
        worst = max(dist[v] for v in vs)
        if worst >= INF:
            return INF
        if worst > best:
            best = worst
    return best


def eccentricity(chi: EdgeColoring, c: int, v: int) -> int:
    """Max color-c distance from v to any other vertex (INF if some unreachable)."""
    row = chi.distances(c)[v]
    return max(row)


# ============================================================================
# LAYER DECOMPOSITIONS
# ============================================================================

@dataclass(frozen=True)
class LayerPartition:
    """Color-BFS layers from a root, bucketed per group of a 3-group split.

    ``dist`` holds exact distances (INF for unreachable); buckets collapse
    everything at distance >= 4 into index 4.  ``group_of`` maps each vertex
    to its group index, and ``cells[g][i]`` (0 <= i <= 4) lists the vertices
    of group g in bucket i, ascending.
    """

    root: int
    color: int
    dist: tuple
    group_of: tuple
    cells: tuple

    def layer(self, g: int, i: int) -> tuple:
        return self.cells[g][i]

    def bucket(self, v: int) -> int:
        return min(self.dist[v], 4)


def bfs_layers(chi: EdgeColoring, c: int, root: int, tripartition) -> LayerPartition:
    """Layer the graph by color-c distance from root, per tripartition group.

    ``tripartition`` is a sequence of at most 3 collections of part indices
    covering every part exactly once.  Group 0 plays the role of the root's
    group in the constructions, but no relation between root and groups is
    enforced here.
    """
    shape = chi.shape
    shape.check_vertex(root)
    groups = [tuple(g) for g in tripartition]
    if len(groups) > 3 or sorted(p for g in groups for p in g) != list(range(shape.k)):
        raise InvalidShape(f"tripartition {groups!r} must split the "
                           f"{shape.k} parts into at most 3 groups")
    group_of_part = {}
    for gi, g in enumerate(groups):
        for p in g:
            group_of_part[p] = gi
    group_of = tuple(group_of_part[shape.part_id[v]] for v in range(shape.n))
    dist = chi.distances(c)[root]
    cells = [[[] for _ in range(5)] for _ in groups]
    for v in range(shape.n):
        cells[group_of[v]][min(dist[v], 4)].append(v)
    return LayerPartition(
        root=root, color=c, dist=tuple(dist), group_of=group_of,
        cells=tuple(tuple(tuple(cell) for cell in row) for row in cells))


@dataclass(frozen=True)
class CloneProfile:
    """The four sent-color sectors of a clone pair.

    ``sectors[(i, j)]`` is the set of common neighbors sending color i to v
    and color j to the clone v'.  The four sets are disjoint and union to
    V minus the pair.
    """

    v: int
    clone: int
    sectors: dict

    def sector(self, i: int, j: int) -> frozenset:
        return self.sectors[(i, j)]


def clone_profile(chi: EdgeColoring, v: int) -> CloneProfile:
    """Split V minus {v, v'} by the color pair each vertex sends to (v, v')."""
    vp = chi.shape.clone_of(v)
    sectors = {}
    for i in COLORS:
        for j in COLORS:
            sectors[(i, j)] = frozenset(
                bits_of(chi.adj[i][v] & chi.adj[j][vp]))
    return CloneProfile(v=v, clone=vp, sectors=sectors)


@dataclass(frozen=True)
class BiLayerPartition:
    """Nine-cell split of V minus a clone pair by blue distances.

    ``cell(i, j)`` (i, j in 1..3) holds the vertices at blue distance i from
    x and j from x', where 3 means "at least 3" (unreachable included).
    """

    x: int
    clone: int
    cells: dict

    def cell(self, i: int, j: int) -> frozenset:
        return self.cells[(i, j)]

    def row(self, i: int) -> frozenset:
        return self.cells[(i, 1)] | self.cells[(i, 2)] | self.cells[(i, 3)]

    def col(self, j: int) -> frozenset:
        return self.cells[(1, j)] | self.cells[(2, j)] | self.cells[(3, j)]


def bilayer_partition(chi: EdgeColoring, x: int) -> BiLayerPartition:
    """Blue bi-distance cells from a size-2-part vertex and its clone."""
    xp = chi.shape.clone_of(x)
    dx = chi.distances(BLUE)[x]
    dxp = chi.distances(BLUE)[xp]
    cells = {(i, j): [] for i in (1, 2, 3) for j in (1, 2, 3)}
    for v in range(chi.n):
        if v in (x, xp):
            continue
        cells[(min(dx[v], 3), min(dxp[v], 3))].append(v)
    return BiLayerPartition(
        x=x, clone=xp,
        cells={ij: frozenset(vs) for ij, vs in cells.items()})


# ============================================================================
# FILE FORMAT
# ============================================================================

def coloring_to_json(chi: EdgeColoring, compact: bool = False, labels=None) -> dict:
    """Standard coloring JSON; ``compact`` emits the hex bitstring form."""
    obj = {"parts": list(chi.shape.part_sizes)}
    if compact:
        obj["bits"] = f"{chi.bits:x}"
    else:
        obj["edges"] = [[u, v, COLOR_NAMES[(chi.bits >> i) & 1]]
                        for i, (u, v) in enumerate(chi.shape.edges)]
    if labels:
        obj["labels"] = dict(labels)
    return obj


def coloring_from_json(obj: dict) -> EdgeColoring:
    """Read either the edge-list or the hex-bits coloring form.

    Part sizes may appear in any order; vertices are renumbered to the
    canonical layout (sizes descending, stable for ties, blocks contiguous).
    """
    try:
        raw_sizes = [int(a) for a in obj["parts"]]
    except (KeyError, TypeError, ValueError):
        raise InvalidShape("coloring JSON needs a 'parts' list of integers")
    shape = build_shape(raw_sizes)
    # Stable mapping from the file's vertex numbering to the canonical one.
    order = sorted(range(len(raw_sizes)), key=lambda p: (-raw_sizes[p], p))
    file_start = [0] * len(raw_sizes)
    at = 0
    for p, a in enumerate(raw_sizes):
        file_start[p] = at
        at += a
    vmap = [0] * shape.n
    new_at = 0
    for p in order:
        for off in range(raw_sizes[p]):
            vmap[file_start[p] + off] = new_at
            new_at += 1

    if "edges" in obj:
        return EdgeColoring.from_edges(
            shape, [(vmap[u], vmap[v], c) for u, v, c in obj["edges"]])
    if "bits" in obj:
        file_bits = int(obj["bits"], 16)
        file_part = []
        for p, a in enumerate(raw_sizes):
            file_part.extend([p] * a)
        bits = 0
        i = 0
        for u in range(shape.n):
            for v in range(u + 1, shape.n):
                if file_part[u] == file_part[v]:
                    continue
                if (file_bits >> i) & 1:
                    a, b = vmap[u], vmap[v]
                    e = (a, b) if a < b else (b, a)
                    bits |= 1 << shape.edge_index[e]
                i += 1
        if file_bits >> i:
            raise InvalidShape("bitstring longer than the edge count")
        return EdgeColoring(shape, bits)
    raise InvalidShape("coloring JSON needs 'edges' or 'bits'")
