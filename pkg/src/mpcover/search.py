"""Exact cover-existence decisions and exhaustive shape surveys.

``cover_exists`` decides whether a coloring admits a cover by t monochromatic
pieces of diameter <= d (t in {1, 2}).  The decision ladder runs certificate
producers from cheap to expensive — spanning diameter, two stars at a vertex,
star + double-star pairs — and only then the exhaustive assignment of every
vertex to bag 1 / bag 2 / both.  Every positive answer is backed by a cover
that passed ``verify_cover``; classification is by certificate only.

``compute_D`` maximizes the per-coloring minimal feasible d over all
colorings of a shape up to symmetry.  The enumeration space is split into
contiguous key ranges; each range is advanced in resumable chunks, results
merge through a commutative monoid (max of min-d with smallest-key
tie-break, plus counters), so the outcome is independent of thread count,
chunk size, and kill/resume boundaries.  ``gk_survey`` is the same engine
pointed at the k-parts-of-size-2 shapes with the clone pruning rules on,
recording structural facts about any coloring that survives them.
"""

from __future__ import annotations

import os
import json
import tempfile
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from multiprocessing import get_context

from .construct import star_doublestar_search, two_stars_at
from .covers import make_cover, verify_cover
from .errors import CapExceeded, InvalidParameter, Unsupported
from .graphs import (BLUE, RED, EdgeColoring, MultipartiteShape,
                     bilayer_partition, bits_of, build_shape, diameter_in_mask,
                     other_color)
from .symmetry import (canonical_classes, key_to_bits, symmetry_group,
                       vertex_group_order)

DEFAULT_CAP_EDGES = 28
CAP_ENV_VAR = "MPCOVER_CAP_EDGES"

# Bag color pairs for the exhaustive search, in the order tried.  Same-color
# pairs are required: two components of one color can form a cover.
_PAIR_ORDER = ((BLUE, RED), (RED, BLUE), (BLUE, BLUE), (RED, RED))

_SECTOR_ORDER = ((RED, RED), (RED, BLUE), (BLUE, RED), (BLUE, BLUE))


def _star_mask(chi: EdgeColoring, c: int, v: int) -> int:
    return chi.adj[c][v] | (1 << v)


def _spanning_diameter(chi: EdgeColoring, c: int) -> int:
    worst = 0
    for row in chi.distances(c):
        w = max(row)
        if w > worst:
            worst = w
    return worst


# ============================================================================
# EXHAUSTIVE TWO-BAG SEARCH
# ============================================================================

def two_bag_cover(chi: EdgeColoring, d: int):
    """Exhaustive search for a 2-bag cover at diameter d; None if impossible.

    Every vertex is assigned to bag 1, bag 2, or both; bags get colors from
    ``_PAIR_ORDER``.  Pruning uses full-graph color distances (a lower bound
    for induced distances, so no feasible assignment is ever cut) and, at
    d = 2, a common-neighbor support test; leaves are checked exactly.
    """
    for c1, c2 in _PAIR_ORDER:
        cover = _two_bag_pair(chi, d, c1, c2)
        if cover is not None:
            return cover
    return None


def _two_bag_pair(chi: EdgeColoring, d: int, c1: int, c2: int):
    n = chi.n
    dist = (chi.distances(c1), chi.distances(c2))
    conf = ([0] * n, [0] * n)
    for b in (0, 1):
        for u in range(n):
            row = dist[b][u]
            cu = 0
            for v in range(n):
                if v != u and row[v] > d:
                    cu |= 1 << v
            conf[b][u] = cu
    adj = (chi.adj[c1], chi.adj[c2])
    # most-constrained vertices first
    order = sorted(range(n),
                   key=lambda v: (-(conf[0][v].bit_count()
                                    + conf[1][v].bit_count()), v))
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << order[i])
    same = c1 == c2

    def bag_ok(b, v, inb, exb):
        if inb & conf[b][v]:
            return False
        if d == 2:
            for u in bits_of(inb & ~adj[b][v]):
                if not (adj[b][u] & adj[b][v] & ~exb):
                    return False
        return True

    def dfs(i, in1, in2, ex1, ex2):
        if i == n:
            pieces = []
            for inb, c in ((in1, c1), (in2, c2)):
                if inb:
                    if diameter_in_mask(chi, c, inb) > d:
                        return None
                    pieces.append((c, bits_of(inb)))
            if not pieces:
                return None
            cover = make_cover(*pieces)
            return cover if verify_cover(chi, cover, d, 2) is None else None
        # a later vertex already barred from both bags kills the branch
        for u in bits_of(suffix[i]):
            if (in1 & conf[0][u]) and (in2 & conf[1][u]):
                return None
        v = order[i]
        bv = 1 << v
        choices = ((1, 1), (1, 0)) if (same and i == 0) else ((1, 1), (1, 0), (0, 1))
        for w1, w2 in choices:
            nex1 = ex1 if w1 else ex1 | bv
            nex2 = ex2 if w2 else ex2 | bv
            if w1 and not bag_ok(0, v, in1, nex1):
                continue
            if w2 and not bag_ok(1, v, in2, nex2):
                continue
            got = dfs(i + 1, in1 | bv if w1 else in1, in2 | bv if w2 else in2,
                      nex1, nex2)
            if got is not None:
                return got
        return None

    return dfs(0, 0, 0, 0, 0)


# ============================================================================
# CLONE-BASED PRUNING RULES
# ============================================================================

def _size2_vertices(shape: MultipartiteShape):
    return [v for v in range(shape.n)
            if shape.part_sizes[shape.part_id[v]] == 2]


def _clone_or_none(shape, v):
    p = shape.part_id[v]
    if shape.part_sizes[p] != 2:
        return None
    s = shape.part_start[p]
    return s + 1 if v == s else s


def _try(chi, d, *pieces):
    """Build and verify a candidate; None unless it certifies."""
    pieces = [(c, list(vs)) for c, vs in pieces]
    if any(not vs for _, vs in pieces):
        return None
    cover = make_cover(*pieces)
    return cover if verify_cover(chi, cover, d, 2) is None else None


def _prune_labeled(chi: EdgeColoring, d: int):
    """(cover, rule label) from the cheap certified constructions, else None.

    Rules in order: two stars at one vertex; an empty sent-color sector of a
    clone pair (both opposite-color stars); a vertex far from both ends of a
    clone pair (red-star pairs and star surgeries); a vertex adjacent to one
    end and far from the other (star plus a 5-cycle blow-up, with red-star
    fallbacks).  Soundness is by verification, never by derivation.
    """
    shape = chi.shape
    for u in range(chi.n):
        cover = two_stars_at(chi, u)
        if verify_cover(chi, cover, d, 2) is None:
            return cover, "two-stars"

    size2 = _size2_vertices(shape)

    for v in size2:
        vp = shape.clone_of(v)
        for i, j in _SECTOR_ORDER:
            if not (chi.adj[i][v] & chi.adj[j][vp]):
                cover = _try(chi, d,
                             (other_color(i), bits_of(_star_mask(chi, other_color(i), v))),
                             (other_color(j), bits_of(_star_mask(chi, other_color(j), vp))))
                if cover is not None:
                    return cover, "clone-star"

    for x in size2:
        if x != shape.part_start[shape.part_id[x]]:
            continue  # one pass per clone pair; orientations handle the swap
        bl = bilayer_partition(chi, x)
        for o in (0, 1):
            base, cob = (bl.x, bl.clone) if o == 0 else (bl.clone, bl.x)
            cell = (lambda i, j: bl.cell(i, j)) if o == 0 else (lambda i, j: bl.cell(j, i))

            # far from both ends
            for y in sorted(cell(3, 2) | cell(3, 3)):
                got = _try(chi, d,
                           (RED, bits_of(_star_mask(chi, RED, base))),
                           (RED, bits_of(_star_mask(chi, RED, y))))
                if got is not None:
                    return got, "far-clone"
                yp = _clone_or_none(shape, y)
                if yp is None:
                    continue
                if yp in cell(1, 1):
                    got = _try(chi, d,
                               (RED, list(bits_of(_star_mask(chi, RED, cob))) + [base]),
                               (BLUE, bits_of(_star_mask(chi, BLUE, cob))))
                elif yp in cell(1, 2) | cell(1, 3):
                    got = (_try(chi, d,
                                (RED, list(bits_of(_star_mask(chi, RED, yp))) + [y, base]),
                                (BLUE, bits_of(_star_mask(chi, BLUE, yp))))
                           or _try(chi, d,
                                   (RED, bits_of(_star_mask(chi, RED, y))),
                                   (BLUE, bits_of(_star_mask(chi, BLUE, yp)))))
                else:
                    got = None
                if got is not None:
                    return got, "far-clone"

            # adjacent to base, far from its clone
            mid = cell(2, 2)
            near_cob = cell(2, 1) | cell(3, 1)
            for y in sorted(cell(1, 3)):
                yp = _clone_or_none(shape, y)
                ring = sorted(({base, cob, y} | mid | near_cob) - ({yp} if yp is not None else set()))
                if yp is None or yp not in near_cob:
                    got = _try(chi, d,
                               (BLUE, bits_of(_star_mask(chi, BLUE, base))),
                               (RED, ring))
                    if got is not None:
                        return got, "near-clone"
                elif yp in cell(3, 1):
                    got = (_try(chi, d,
                                (RED, bits_of(_star_mask(chi, RED, yp))),
                                (RED, ring))
                           or _try(chi, d,
                                   (RED, bits_of(_star_mask(chi, RED, yp))),
                                   (RED, bits_of(_star_mask(chi, RED, cob)))))
                    if got is not None:
                        return got, "near-clone"
    return None, "none"


def prune_with_constructions(chi: EdgeColoring, d: int = 2):
    """Certified cover from the cheap construction rules, or None."""
    cover, _ = _prune_labeled(chi, d)
    return cover


def survivor_property_violations(chi: EdgeColoring, has_cover: bool):
    """Structural facts every prune survivor must satisfy; [] when clean.

    A coloring that reached the exhaustive stage with pruning on can have no
    empty sent-color sector and no vertex far from both ends of a clone pair
    (those patterns always yield certified covers).  When additionally no
    2-bag diameter-2 cover exists, vertices adjacent to exactly one end of a
    clone pair must have their own clones in the mirrored near-cell.  A
    violation signals a bug in the pruning rules, not a mathematical finding.
    """
    shape = chi.shape
    out = []
    size2 = _size2_vertices(shape)
    for v in size2:
        vp = shape.clone_of(v)
        if v > vp:
            continue
        for i, j in _SECTOR_ORDER:
            if not (chi.adj[i][v] & chi.adj[j][vp]):
                out.append(f"empty-sector v={v} pair=({i},{j})")
    for x in size2:
        if x != shape.part_start[shape.part_id[x]]:
            continue
        bl = bilayer_partition(chi, x)
        for i, j in ((3, 2), (2, 3), (3, 3)):
            if bl.cell(i, j):
                out.append(f"far-cell x={x} cell=({i},{j})")
        if not has_cover:
            for y in sorted(bl.cell(1, 3)):
                yp = _clone_or_none(shape, y)
                if yp is None or yp not in bl.cell(2, 1):
                    out.append(f"clone-location x={x} y={y}")
            for z in sorted(bl.cell(3, 1)):
                zp = _clone_or_none(shape, z)
                if zp is None or zp not in bl.cell(1, 2):
                    out.append(f"clone-location x={x} z={z}")
    return out


# ============================================================================
# DECISION LADDER
# ============================================================================

def _decide(chi: EdgeColoring, t: int, d: int, prune: bool):
    """(verified cover | None, label of the deciding rule)."""
    n = chi.n
    if n <= t:
        return make_cover(*((BLUE, [v]) for v in range(n))), "tiny"
    if d == 0:
        return None, "none"  # diameter-0 pieces are singletons; n > t
    for c in (RED, BLUE):
        if _spanning_diameter(chi, c) <= d:
            cover = make_cover((c, range(n)))
            if verify_cover(chi, cover, d, t) is None:
                return cover, "spanning"
    if t == 1:
        return None, "none"
    if d >= 2:
        if prune:
            cover, label = _prune_labeled(chi, d)
            if cover is not None:
                return cover, label
        else:
            for u in range(n):
                cover = two_stars_at(chi, u)
                if verify_cover(chi, cover, d, 2) is None:
                    return cover, "two-stars"
    if d >= 3:
        cover = star_doublestar_search(chi, d)
        if cover is not None:
            return cover, "star-doublestar"
    cover = two_bag_cover(chi, d)
    return cover, ("trichotomy" if cover is not None else "none")


def _check_td(t: int, d: int) -> None:
    if not isinstance(t, int) or t < 1:
        raise InvalidParameter(f"subgraph count must be a positive integer, got {t!r}")
    if t > 2:
        raise Unsupported(f"covers by {t} subgraphs are not supported (max 2)")
    if not isinstance(d, int) or d < 0:
        raise InvalidParameter(f"diameter bound must be a non-negative integer, got {d!r}")


def cover_exists(chi: EdgeColoring, t: int, d: int) -> bool:
    """Does chi admit a cover by t monochromatic pieces of diameter <= d?"""
    _check_td(t, d)
    cover, _ = _decide(chi, t, d, prune=False)
    return cover is not None


def find_cover(chi: EdgeColoring, t: int, d: int):
    """Like cover_exists but returns the verified witness cover (or None)."""
    _check_td(t, d)
    cover, _ = _decide(chi, t, d, prune=False)
    return cover


def min_cover_diameter(chi: EdgeColoring, t: int, d_max: int = 4,
                       prune: bool = False) -> int:
    """Least d <= d_max admitting a (t, d) cover, else d_max + 1."""
    d, _, _ = _min_cover_d(chi, t, d_max, prune, None)
    return d


def _min_cover_d(chi, t, d_max, prune, survey_d):
    """(min feasible d or d_max+1, deciding label, survey info or None)."""
    surv = None
    for d in range(d_max + 1):
        cover, label = _decide(chi, t, d, prune)
        if survey_d is not None and d == survey_d and prune and \
                (cover is None or label == "trichotomy"):
            has = cover is not None
            surv = (True, tuple(survivor_property_violations(chi, has)))
        if cover is not None:
            return d, label, surv
    return d_max + 1, "uncovered", surv


# ============================================================================
# SHAPE SURVEYS
# ============================================================================

@dataclass
class SearchResult:
    """Outcome of a shape survey: D, a witness attaining it, and counters.

    ``d`` is the max over coloring classes of the minimal feasible cover
    diameter; ``exceeded`` means some class had no cover at d_max (then
    d = d_max + 1 and the witness is such a class).  ``rules`` counts, per
    deciding rule, the classes whose minimal d was certified by that rule.
    """

    part_sizes: tuple
    t: int
    d: int
    exceeded: bool
    witness_bits: int
    classes: int
    rules: dict
    use_symmetry: bool = True
    survivors: int = 0
    violations: int = 0
    notes: tuple = ()
    seconds: float = 0.0

    def witness(self) -> EdgeColoring:
        return EdgeColoring(build_shape(self.part_sizes), self.witness_bits)

    def d_text(self) -> str:
        return f">{self.d - 1}" if self.exceeded else str(self.d)

    def to_json(self, timing: bool = False) -> dict:
        obj = {
            "shape": list(self.part_sizes),
            "t": self.t,
            "d": self.d,
            "exceeded": self.exceeded,
            "witness_bits": f"{self.witness_bits:x}",
            "classes_enumerated": self.classes,
            "pruned_by_rule": {k: self.rules[k] for k in sorted(self.rules)},
            "use_symmetry": self.use_symmetry,
            "seconds": round(self.seconds, 3) if timing else 0,
        }
        if self.survivors or self.violations:
            obj["survivors"] = self.survivors
            obj["property_violations"] = self.violations
            obj["violation_notes"] = list(self.notes)
        return obj

    TSV_HEADER = "shape\tt\tD\tclasses_enumerated\tpruned_by_rule\tseconds"

    def tsv_row(self, timing: bool = False) -> str:
        rules = ";".join(f"{k}={self.rules[k]}" for k in sorted(self.rules))
        secs = f"{self.seconds:.3f}" if timing else "0"
        return "\t".join([",".join(str(a) for a in self.part_sizes),
                          str(self.t), self.d_text(), str(self.classes),
                          rules or "-", secs])


def _merge_best(a, b):
    """Commutative merge of (min_d, key) candidates; bigger d, smaller key."""
    if a is None:
        return b
    if b is None:
        return a
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    return a if a[1] <= b[1] else b


_ENGINE_CACHE = {}


def _engine(sizes, use_symmetry):
    key = (tuple(sizes), use_symmetry)
    if key not in _ENGINE_CACHE:
        shape = build_shape(sizes)
        group = symmetry_group(shape) if use_symmetry else None
        _ENGINE_CACHE[key] = (shape, group)
    return _ENGINE_CACHE[key]


def _chunk_worker(args):
    """Advance one cursor range by up to ``limit`` classes (pure)."""
    (sizes, t, d_max, use_symmetry, prune, survey_d, lo, hi, pos, limit) = args
    shape, group = _engine(sizes, use_symmetry)
    classes = 0
    rules = Counter()
    best = None
    survivors = 0
    violations = 0
    notes = set()
    last_key = None
    for key, bits in canonical_classes(shape, group, lo=lo, hi=hi, start=pos):
        chi = EdgeColoring(shape, bits)
        min_d, label, surv = _min_cover_d(chi, t, d_max, prune, survey_d)
        classes += 1
        rules[label] += 1
        best = _merge_best(best, (min_d, key))
        if surv is not None:
            survivors += 1
            for note in surv[1]:
                violations += 1
                if len(notes) < 25:
                    notes.add(f"key={key:x} {note}")
        last_key = key
        if limit is not None and classes >= limit:
            break
    done = limit is None or classes < limit
    next_pos = hi if done else last_key + 1
    return (classes, dict(rules), best, survivors, violations,
            sorted(notes), next_pos)


# ---------------------------------------------------------------------------
# Checkpoints
# ---------------------------------------------------------------------------

CHECKPOINT_VERSION = 1


def save_checkpoint(path: str, state: dict) -> None:
    """Atomic JSON dump (write to a sibling temp file, then rename)."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(state, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: str) -> dict:
    with open(path) as fh:
        state = json.load(fh)
    if state.get("version") != CHECKPOINT_VERSION:
        raise InvalidParameter(f"unsupported checkpoint version in {path}")
    return state


def _checkpoint_config(sizes, t, d_max, use_symmetry, prune, survey_d):
    return {"shape": list(sizes), "t": t, "d_max": d_max,
            "use_symmetry": use_symmetry, "prune": prune,
            "survey_d": survey_d}


# ---------------------------------------------------------------------------
# The survey engine
# ---------------------------------------------------------------------------

def _edge_cap(cap_edges):
    if cap_edges is not None:
        return cap_edges
    try:
        return int(os.environ.get(CAP_ENV_VAR, DEFAULT_CAP_EDGES))
    except ValueError:
        return DEFAULT_CAP_EDGES


def _initial_ranges(m: int, use_symmetry: bool):
    # Orbit leaders always start with a red edge (the color swap would beat
    # them otherwise), so the top half of the key space is empty.
    span = 1 << m
    if use_symmetry and m >= 1:
        span = 1 << (m - 1)
    count = min(64, span)
    bounds = [span * i // count for i in range(count + 1)]
    return [[bounds[i], bounds[i + 1], bounds[i]] for i in range(count)]


def compute_D(part_sizes, t: int = 2, d_max: int = 4, *,
              use_symmetry: bool = True, prune: bool = True,
              threads: int = 1, checkpoint_path: str | None = None,
              checkpoint_every: int = 5000, cap_edges: int | None = None,
              stop_after_classes: int | None = None,
              survey_d: int | None = None):
    """Max over coloring classes of the minimal feasible cover diameter.

    Returns a SearchResult, or None when ``stop_after_classes`` ran out
    before the survey finished (progress lives in the checkpoint).  Results
    are byte-for-byte independent of ``threads``, chunking, and resume
    boundaries; wall-clock time is accumulated separately in ``seconds``.
    """
    sizes = tuple(part_sizes.part_sizes) if isinstance(part_sizes, MultipartiteShape) \
        else tuple(build_shape(part_sizes).part_sizes)
    _check_td(t, 0)
    if d_max < 0:
        raise InvalidParameter(f"d_max must be >= 0, got {d_max}")
    if threads < 1:
        raise InvalidParameter(f"threads must be >= 1, got {threads}")
    shape = build_shape(sizes)
    cap = _edge_cap(cap_edges)
    if shape.m > cap:
        order = 2 * vertex_group_order(shape)
        estimate = max(1, (1 << shape.m) // order)
        raise CapExceeded(
            f"shape {list(sizes)} has {shape.m} edges, over the cap of {cap} "
            f"(roughly {estimate} classes); raise {CAP_ENV_VAR} to proceed",
            estimate=estimate)

    config = _checkpoint_config(sizes, t, d_max, use_symmetry, prune, survey_d)
    ranges = _initial_ranges(shape.m, use_symmetry)
    classes = 0
    rules = Counter()
    best = None
    survivors = 0
    violations = 0
    notes = set()
    spent = 0.0

    if checkpoint_path and os.path.exists(checkpoint_path):
        state = load_checkpoint(checkpoint_path)
        if state["config"] != config:
            raise InvalidParameter(
                f"checkpoint {checkpoint_path} was written with different "
                f"settings: {state['config']} vs {config}")
        ranges = [list(r) for r in state["cursor_ranges"]]
        counts = state["counts"]
        classes = counts["classes_enumerated"]
        rules = Counter(counts["pruned_by_rule"])
        survivors = counts.get("survivors", 0)
        violations = counts.get("property_violations", 0)
        notes = set(counts.get("violation_notes", []))
        spent = counts.get("seconds", 0.0)
        if state["best"]["d"] is not None:
            best = (state["best"]["d"], int(state["best"]["witness_bits"], 16))

    def snapshot():
        return {
            "version": CHECKPOINT_VERSION,
            "shape": list(sizes),
            "t": t,
            "config": config,
            "cursor_ranges": [list(r) for r in ranges],
            "best": {"d": best[0] if best else None,
                     "witness_bits": f"{best[1]:x}" if best else None},
            "counts": {"classes_enumerated": classes,
                       "pruned_by_rule": {k: rules[k] for k in sorted(rules)},
                       "survivors": survivors,
                       "property_violations": violations,
                       "violation_notes": sorted(notes),
                       "seconds": round(spent, 3)},
        }

    budget = stop_after_classes
    prior_seconds = spent
    started = time.monotonic()
    pool = None
    if threads > 1:
        pool = ProcessPoolExecutor(max_workers=threads,
                                   mp_context=get_context("fork"))
    try:
        while True:
            pending = [i for i, (lo, hi, pos) in enumerate(ranges) if pos < hi]
            if not pending:
                break
            batch = pending[:max(threads, 1)]
            limit = checkpoint_every if (checkpoint_path or budget is not None) else None
            if budget is not None:
                limit = min(limit, max(1, budget))
            args = [(sizes, t, d_max, use_symmetry, prune, survey_d,
                     ranges[i][0], ranges[i][1], ranges[i][2], limit)
                    for i in batch]
            if pool is None:
                results = [_chunk_worker(a) for a in args]
            else:
                results = list(pool.map(_chunk_worker, args))
            for i, res in zip(batch, results):
                (done, chunk_rules, chunk_best, surv, viol, chunk_notes,
                 next_pos) = res
                classes += done
                rules.update(chunk_rules)
                best = _merge_best(best, chunk_best)
                survivors += surv
                violations += viol
                for note in chunk_notes:
                    if len(notes) < 25:
                        notes.add(note)
                ranges[i][2] = next_pos
                if budget is not None:
                    budget -= done
            spent = prior_seconds + (time.monotonic() - started)
            if checkpoint_path:
                save_checkpoint(checkpoint_path, snapshot())
            if budget is not None and budget <= 0:
                still = any(pos < hi for _, hi, pos in ranges)
                if still:
                    if checkpoint_path:
                        save_checkpoint(checkpoint_path, snapshot())
                    return None
    finally:
        if pool is not None:
            pool.shutdown()

    if best is None:
        raise InvalidParameter("empty enumeration; nothing to survey")
    d, key = best
    result = SearchResult(
        part_sizes=sizes, t=t, d=d, exceeded=d > d_max,
        witness_bits=key_to_bits(key, shape.m), classes=classes,
        rules={k: rules[k] for k in sorted(rules)},
        use_symmetry=use_symmetry, survivors=survivors,
        violations=violations, notes=tuple(sorted(notes)), seconds=spent)
    if checkpoint_path:
        save_checkpoint(checkpoint_path, snapshot())
    return result


def gk_survey(k: int, d: int = 2, *, d_max: int = 4, threads: int = 1,
              checkpoint_path: str | None = None, checkpoint_every: int = 5000,
              cap_edges: int | None = None,
              stop_after_classes: int | None = None):
    """Survey the shape with k parts of size 2, clone pruning on.

    Checkpointing is always on (a default path is derived from k).  Any
    class reaching the exhaustive stage at diameter ``d`` is counted as a
    survivor and checked against the structural facts the pruning rules
    should have exploited; violations indicate bugs, and are carried in the
    result.
    """
    if not isinstance(k, int) or k < 3:
        raise InvalidParameter(f"need k >= 3, got {k!r}")
    if checkpoint_path is None:
        checkpoint_path = f"gk{k}.checkpoint.json"
    return compute_D([2] * k, t=2, d_max=d_max, use_symmetry=True, prune=True,
                     threads=threads, checkpoint_path=checkpoint_path,
                     checkpoint_every=checkpoint_every, cap_edges=cap_edges,
                     stop_after_classes=stop_after_classes, survey_d=d)


def classify_tripartite(part_sizes) -> int:
    """Closed-form D for 3-part shapes (t = 2), no search.

    D = 3 exactly when the sorted sizes dominate [5,2,2] or [4,3,2]
    componentwise; D = 1 only for [1,1,1] and [2,1,1]; everything else is 2.
    Compare against compute_D for the brute-force cross-check.
    """
    shape = build_shape(part_sizes)
    if shape.k != 3:
        raise Unsupported(f"classification needs exactly 3 parts, "
                          f"got {list(shape.part_sizes)}")
    s = shape.part_sizes
    if s in ((1, 1, 1), (2, 1, 1)):
        return 1
    if (s[0] >= 5 and s[1] >= 2 and s[2] >= 2) or \
            (s[0] >= 4 and s[1] >= 3 and s[2] >= 2):
        return 3
    return 2


# ============================================================================
# MONOTONE EXTENSION
# ============================================================================

def check_monotone_extension(chi: EdgeColoring, x: int) -> EdgeColoring:
    """Clone x into its part: the new vertex copies x's edge colors.

    The new coloring lives on the shape with x's part one bigger; every edge
    between old vertices keeps its color, and the new vertex y gets
    color(v, y) = color(v, x) for every common neighbor v.  (y and x are in
    the same part, so they share all their neighbors and are non-adjacent.)
    """
    shape = chi.shape
    shape.check_vertex(x)
    p = shape.part_id[x]
    new_sizes = list(shape.part_sizes)
    new_sizes[p] += 1
    new_shape = build_shape(new_sizes)
    order = sorted(range(shape.k), key=lambda q: (-new_sizes[q], q))
    vmap = [0] * shape.n
    y = None
    at = 0
    for q in order:
        for off, old in enumerate(shape.part_vertices(q)):
            vmap[old] = at + off
        if q == p:
            y = at + shape.part_sizes[q]
        at += new_sizes[q]
    bits = 0
    for i, (u, v) in enumerate(shape.edges):
        if (chi.bits >> i) & 1:
            a, b = vmap[u], vmap[v]
            bits |= 1 << new_shape.edge_index[(a, b) if a < b else (b, a)]
    for w in range(shape.n):
        if shape.part_id[w] != p and chi.color_of(w, x) == BLUE:
            a, b = vmap[w], y
            bits |= 1 << new_shape.edge_index[(a, b) if a < b else (b, a)]
    return EdgeColoring(new_shape, bits)
