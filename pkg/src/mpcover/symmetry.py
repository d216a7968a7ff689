"""Coloring symmetries and orbit-leader enumeration.

The symmetry group of a shape's colorings is the product of the symmetric
groups inside each part, the permutations of equal-size parts, and the global
color swap.  A coloring is *canonical* when its edge bitstring is
lexicographically minimal over its orbit (compared edge 0 first, red < blue).
Keys are the bitstring read most-significant-bit-first, so lexicographic
order on colorings is numeric order on keys.

Enumeration is an orderly depth-first scan of the binary prefix tree: at each
node every group element maintains a scan pointer comparing the permuted
image against the chosen prefix, a subtree is abandoned as soon as some image
is provably smaller, and an element is dropped once its image is provably
larger.  Visiting leaves in key order makes the enumeration restartable from
any key, which is what checkpoints and work sharding rely on.

For shapes whose full group is too large to expand, enumeration falls back
to a smaller subgroup (per-part cyclic shifts, cyclic rotation of equal-size
part families, and the color swap).  Subgroup leaders are a superset of the
full-group leaders covering every orbit, so max/min aggregates over classes
are unchanged; only the class count inflates.
"""

from __future__ import annotations

from itertools import permutations, product

from .errors import CapExceeded
from .graphs import EdgeColoring, MultipartiteShape

# Expanding the full group is worthwhile up to roughly this many vertex
# permutations; 7!*2*2 for a [7,1,1] shape is the largest acceptance-relevant
# full expansion.
FULL_EXPANSION_CAP = 20160


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


class SymmetryGroup:
    """Expanded coloring symmetries of a shape.

    ``elements`` holds (inverse-edge-permutation, flip) pairs, flip meaning
    the global color swap; ``order`` is the order of the *full* group even
    when only a subgroup was expanded (``is_full`` tells which).
    """

    __slots__ = ("shape", "order", "elements", "is_full")

    def __init__(self, shape: MultipartiteShape, elements, is_full: bool, order: int):
        self.shape = shape
        self.elements = elements
        self.is_full = is_full
        self.order = order


def size_families(shape: MultipartiteShape):
    """Part indices grouped by part size, descending size order."""
    fams = {}
    for p, a in enumerate(shape.part_sizes):
        fams.setdefault(a, []).append(p)
    return [fams[a] for a in sorted(fams, reverse=True)]


def vertex_group_order(shape: MultipartiteShape) -> int:
    """Order of the vertex-permutation group (color swap not included)."""
    out = 1
    for a in shape.part_sizes:
        out *= _factorial(a)
    for fam in size_families(shape):
        out *= _factorial(len(fam))
    return out


def _perm_from_assignment(shape, part_map, offsets):
    """Vertex permutation sending part p to part_map[p] with given offsets."""
    perm = [0] * shape.n
    for p in range(shape.k):
        q = part_map[p]
        for o in range(shape.part_sizes[p]):
            perm[shape.part_start[p] + o] = shape.part_start[q] + offsets[p][o]
    return perm


def _full_vertex_perms(shape):
    fams = size_families(shape)
    fam_perms = [list(permutations(fam)) for fam in fams]
    within = [list(permutations(range(a))) for a in shape.part_sizes]
    for fam_choice in product(*fam_perms):
        part_map = [0] * shape.k
        for fam, image in zip(fams, fam_choice):
            for p, q in zip(fam, image):
                part_map[p] = q
        for offsets in product(*within):
            yield _perm_from_assignment(shape, part_map, offsets)


def _cyclic_vertex_perms(shape):
    fams = size_families(shape)
    fam_rots = [[fam[r:] + fam[:r] for r in range(len(fam))] for fam in fams]
    within = [[tuple((o + t) % a for o in range(a)) for t in range(a)]
              for a in shape.part_sizes]
    for fam_choice in product(*fam_rots):
        part_map = [0] * shape.k
        for fam, image in zip(fams, fam_choice):
            for p, q in zip(fam, image):
                part_map[p] = q
        for offsets in product(*within):
            yield _perm_from_assignment(shape, part_map, offsets)


def edge_perm(shape: MultipartiteShape, vperm) -> tuple:
    """Edge-index permutation induced by a vertex permutation."""
    idx = shape.edge_index
    out = [0] * shape.m
    for i, (u, v) in enumerate(shape.edges):
        a, b = vperm[u], vperm[v]
        out[i] = idx[(a, b) if a < b else (b, a)]
    return tuple(out)


def symmetry_group(shape: MultipartiteShape,
                   cap: int = FULL_EXPANSION_CAP) -> SymmetryGroup:
    """Expand the coloring symmetries, tiering down to a subgroup when huge."""
    full_vorder = vertex_group_order(shape)
    use_full = full_vorder <= cap
    vperms = _full_vertex_perms(shape) if use_full else _cyclic_vertex_perms(shape)
    elements = []
    for vperm in vperms:
        ep = edge_perm(shape, vperm)
        inv = [0] * shape.m
        for i, j in enumerate(ep):
            inv[j] = i
        inv = tuple(inv)
        identity = inv == tuple(range(shape.m))
        for flip in (0, 1):
            if identity and not flip:
                continue  # the identity never constrains anything
            elements.append((inv, flip))
    return SymmetryGroup(shape, elements, use_full, 2 * full_vorder)


# ============================================================================
# ORDERLY ENUMERATION
# ============================================================================

def bits_to_key(bits: int, m: int) -> int:
    """LSB-first stored bitstring -> MSB-first comparison key."""
    key = 0
    for j in range(m):
        key = (key << 1) | ((bits >> j) & 1)
    return key


def key_to_bits(key: int, m: int) -> int:
    return bits_to_key(key, m)  # bit reversal is an involution


def canonical_classes(shape: MultipartiteShape, group: SymmetryGroup | None,
                      lo: int = 0, hi: int | None = None, start: int = 0):
    """Yield (key, bits) of orbit leaders with key in [max(lo, start), hi).

    Keys come out strictly ascending.  With ``group=None`` every coloring is
    its own class (raw enumeration).
    """
    m = shape.m
    if hi is None:
        hi = 1 << m
    lo = max(lo, start)
    if lo >= hi:
        return
    if group is None:
        for key in range(lo, hi):
            yield key, key_to_bits(key, m)
        return
    if m == 0:
        yield 0, 0
        return

    elements = group.elements
    b = [0] * m

    def dfs(depth, pref, alive):
        if pref >= hi:
            return
        if depth == m:
            yield pref, sum(b[i] << i for i in range(m))
            return
        width = 1 << (m - depth - 1)
        for bit in (0, 1):
            child_pref = pref | (bit << (m - depth - 1))
            if child_pref + width <= lo or child_pref >= hi:
                continue
            b[depth] = bit
            nd = depth + 1
            child_alive = []
            pruned = False
            for idx, pos in alive:
                inv, flip = elements[idx]
                j = pos
                while j < nd and inv[j] < nd:
                    img = b[inv[j]] ^ flip
                    if img < b[j]:
                        pruned = True  # image beats every extension
                        break
                    if img > b[j]:
                        j = -1  # element can never beat this subtree
                        break
                    j += 1
                if pruned:
                    break
                if j >= 0:
                    child_alive.append((idx, j))
            if pruned:
                continue
            yield from dfs(nd, child_pref, child_alive)

    yield from dfs(0, 0, [(i, 0) for i in range(len(elements))])


# ============================================================================
# CANONICAL KEYS
# ============================================================================

def canonical_key(chi: EdgeColoring, group: SymmetryGroup | None = None) -> int:
    """Bits of the lexicographically minimal coloring in chi's full orbit.

    Equal keys characterize equal orbits.  Uses the expanded group when it is
    the full one, and falls back to pruned backtracking over vertex
    placements otherwise (the subgroup expansion would be unsound here).
    """
    if group is None or not group.is_full:
        group = None
    shape = chi.shape
    m = shape.m
    if group is not None:
        best = bits_to_key(chi.bits, m)
        for inv, flip in group.elements:
            key = 0
            bits = chi.bits
            for j in range(m):
                key = (key << 1) | (((bits >> inv[j]) & 1) ^ flip)
                if key > (best >> (m - 1 - j)):
                    key = -1
                    break
            if key >= 0 and key < best:
                best = key
        return key_to_bits(best, m)
    if vertex_group_order(shape) <= FULL_EXPANSION_CAP:
        return canonical_key(chi, symmetry_group(shape))
    return _lexmin_backtrack(chi)


def _lexmin_backtrack(chi: EdgeColoring, leaf_budget: int = 2_000_000) -> int:
    """Exact lex-min orbit member by assigning canonical slots one by one.

    Prunes on the contiguous determined edge prefix (the first-vertex star),
    which is weak but sound; a leaf budget guards against shapes where the
    full group is astronomically large.
    """
    shape = chi.shape
    m = shape.m
    n = shape.n
    fams = size_families(shape)
    fam_of_part = {}
    for fi, fam in enumerate(fams):
        for p in fam:
            fam_of_part[p] = fi
    best_key = None
    leaves = 0

    for flip in (0, 1):
        slot_orig = [-1] * n
        used = 0
        part_map = {}
        used_parts = set()

        def leaf_key():
            key = 0
            for (u, v) in shape.edges:
                a, b = slot_orig[u], slot_orig[v]
                key = (key << 1) | (chi.color_of(a, b) ^ flip)
            return key

        def prefix_beats_best(t):
            # Compare the determined edges (0, 1)..(0, t-1) against best.
            nonlocal best_key
            if best_key is None:
                return False
            a = slot_orig[0]
            key = 0
            count = 0
            for (u, v) in shape.edges:
                if u != 0 or v >= t:
                    break
                key = (key << 1) | (chi.color_of(a, slot_orig[v]) ^ flip)
                count += 1
            return count and key > (best_key >> (m - count))

        def assign(slot):
            nonlocal best_key, leaves, used
            if slot == n:
                leaves += 1
                if leaves > leaf_budget:
                    raise CapExceeded(
                        "canonical key backtracking exceeded its leaf budget")
                key = leaf_key()
                if best_key is None or key < best_key:
                    best_key = key
                return
            p = shape.part_id[slot]
            if p in part_map:
                sources = [part_map[p]]
            else:
                sources = [q for q in fams[fam_of_part[p]] if q not in used_parts]
            for q in sources:
                fresh = p not in part_map
                if fresh:
                    part_map[p] = q
                    used_parts.add(q)
                for orig in shape.part_vertices(q):
                    if (used >> orig) & 1:
                        continue
                    slot_orig[slot] = orig
                    used |= 1 << orig
                    if not prefix_beats_best(slot + 1):
                        assign(slot + 1)
                    used &= ~(1 << orig)
                    slot_orig[slot] = -1
                if fresh:
                    del part_map[p]
                    used_parts.discard(q)

        assign(0)
    return key_to_bits(best_key, m)


def orbit_of(chi: EdgeColoring, group: SymmetryGroup) -> set:
    """All bit-strings in chi's orbit under the expanded elements (tests)."""
    out = {chi.bits}
    for inv, flip in group.elements:
        flipmask = ((1 << chi.shape.m) - 1) if flip else 0
        img = 0
        for j in range(chi.shape.m):
            if (chi.bits >> inv[j]) & 1:
                img |= 1 << j
        out.add(img ^ flipmask)
    return out
