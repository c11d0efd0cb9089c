"""Unitary moves on diagram classes, shared by the ball explorer, the
enumerator, and random sampling.

A neighbor of a class [D] in X is [D . P . U] for a permutation diagram P
of the geometry (all bijections / rotations / identity) and a unitary
atom U.  For transistor atoms the neighbor class only depends on which
bottom wires feed the transistor and in which order, so moves are
enumerated as feed position tuples: arbitrary ordered tuples (braided),
cyclically consecutive blocks (annular), consecutive blocks (planar).
Linear moves right-multiply one bottom wire's coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import (
    CoefficientSystem,
    FreeSpec,
    GroupElement,
    TrivialSpec,
    coeff_multiply,
    identity as coeff_identity,
    nontrivial_elements,
)
from .errors import EnumerationError
from .picture import (
    Diagram,
    canonical_key,
    class_representative,
    eps,
    reduce,
    rel_sides,
    rotate_bottom,
    with_bottom_ports,
)

GEOMETRIES = ("braided", "annular", "planar")


@dataclass(frozen=True)
class BallConfig:
    pres: object
    coeffs: CoefficientSystem
    geometry: str = "braided"
    max_width: int = 12

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise ValueError(f"geometry must be one of {GEOMETRIES}")


def check_finite_coeffs(coeffs: CoefficientSystem) -> None:
    if coeffs.has_free():
        raise EnumerationError("free coefficient groups give infinite pins/balls")


# -- geometry-aware class keys ----------------------------------------------------

def geometry_class_key(d: Diagram, geometry: str) -> str:
    """Key of the vertex class of d: quotient by all permutation diagrams
    (braided), rotations (annular), or nothing (planar)."""
    if geometry == "braided":
        return canonical_key(d, "class")
    if geometry == "planar":
        return canonical_key(d, "exact")
    n = len(d.bottom_ports)
    return min(canonical_key(rotate_bottom(d, k)) for k in range(n))


def geometry_class_rep(d: Diagram, geometry: str) -> Diagram:
    """Deterministic representative of [d] (normalized bottom permutation)."""
    if geometry == "braided":
        return class_representative(d)
    if geometry == "planar":
        return d
    n = len(d.bottom_ports)
    return min((rotate_bottom(d, k) for k in range(n)), key=canonical_key)


# -- move enumeration --------------------------------------------------------------

def _feed_tuples(labels: tuple[str, ...], consumed: tuple[str, ...], geometry: str):
    n, k = len(labels), len(consumed)
    if k > n:
        return
    if geometry == "planar":
        for i0 in range(n - k + 1):
            if all(labels[i0 + j] == consumed[j] for j in range(k)):
                yield tuple(range(i0, i0 + k))
    elif geometry == "annular":
        for i0 in range(n):
            if all(labels[(i0 + j) % n] == consumed[j] for j in range(k)):
                yield tuple((i0 + j) % n for j in range(k))
    else:
        pools: dict[str, list[int]] = {}
        for i, lab in enumerate(labels):
            pools.setdefault(lab, []).append(i)
        acc: list[int] = []
        used: set[int] = set()

        def rec(j):
            if j == k:
                yield tuple(acc)
                return
            for p in pools.get(consumed[j], ()):
                if p not in used:
                    used.add(p)
                    acc.append(p)
                    yield from rec(j + 1)
                    acc.pop()
                    used.discard(p)

        yield from rec(0)


def apply_transistor_move(d: Diagram, rel_index: int, direction: int,
                          positions: tuple[int, ...], geometry: str = "braided") -> Diagram:
    """D . P . (eps(a)+T+eps(b)) built directly: the bottom wires at
    `positions` (in that order) feed the new transistor.  Not reduced."""
    top_side, bot_side = rel_sides(d.pres, rel_index, direction)
    sel = tuple(d.bottom_ports[p] for p in positions)
    if tuple(d.wires[w][0] for w in sel) != top_side:
        raise ValueError("selected wires do not spell the relation side")
    wires = dict(d.wires)
    tid = (max(d.transistors) if d.transistors else 0) + 1
    wid = (max(d.wires) if d.wires else 0) + 1
    produced = []
    for letter in bot_side:
        wires[wid] = (letter, coeff_identity(d.coeffs.spec(letter)))
        produced.append(wid)
        wid += 1
    transistors = dict(d.transistors)
    transistors[tid] = (rel_index, direction)
    t_top = dict(d.t_top)
    t_bot = dict(d.t_bot)
    t_top[tid] = sel
    t_bot[tid] = tuple(produced)

    ports = list(d.bottom_ports)
    pos_set = set(positions)
    if geometry == "planar":
        i0 = positions[0]
        new_ports = ports[:i0] + produced + ports[i0 + len(positions):]
    elif geometry == "annular":
        i0 = positions[0]
        rotated = ports[i0:] + ports[:i0]
        new_ports = produced + rotated[len(positions):]
    else:
        new_ports = [w for i, w in enumerate(ports) if i not in pos_set] + produced
    return Diagram(d.pres, d.coeffs, wires, transistors, t_top, t_bot,
                   d.top_ports, tuple(new_ports), d.annular)


def apply_linear_move(d: Diagram, position: int, g: GroupElement) -> Diagram:
    """Right-multiply the coefficient of the bottom wire at `position` by g."""
    w = d.bottom_ports[position]
    label, c = d.wires[w]
    wires = dict(d.wires)
    wires[w] = (label, coeff_multiply(c, g))
    return Diagram(d.pres, d.coeffs, wires, d.transistors, d.t_top, d.t_bot,
                   d.top_ports, d.bottom_ports, d.annular, _reduced=d._reduced)


def neighbor_diagrams(rep: Diagram, cfg: BallConfig):
    """All unitary moves from a reduced class representative.

    Yields (reduced result, kind, witness); witness is (rel_index,
    direction, positions) for transistor moves and (letter, delta) for
    linear ones.  Results still need class deduplication.
    """
    labels = rep.bot_word()
    width = len(labels)
    for rel_index in range(len(rep.pres.relations)):
        for direction in (1, -1):
            consumed, produced = rel_sides(rep.pres, rel_index, direction)
            if width - len(consumed) + len(produced) > cfg.max_width:
                continue
            for positions in _feed_tuples(labels, consumed, cfg.geometry):
                out = reduce(apply_transistor_move(rep, rel_index, direction,
                                                   positions, cfg.geometry))
                yield out, "transistor", (rel_index, direction, positions)
    for position, letter in enumerate(labels):
        spec = cfg.coeffs.spec(letter)
        if isinstance(spec, TrivialSpec):
            continue
        if isinstance(spec, FreeSpec):
            raise EnumerationError("free coefficient group in ball configuration")
        for g in nontrivial_elements(spec):
            yield apply_linear_move(rep, position, g), "linear", (letter, g)


# -- class BFS ----------------------------------------------------------------------

def normalize_base(base: Diagram, cfg: BallConfig) -> Diagram:
    d = reduce(base)
    if cfg.geometry == "annular" and not d.annular:
        d = Diagram(d.pres, d.coeffs, d.wires, d.transistors, d.t_top, d.t_bot,
                    d.top_ports, d.bottom_ports, True, _reduced=True)
    return geometry_class_rep(d, cfg.geometry)


def bfs_classes(base: Diagram, radius: int, cfg: BallConfig):
    """Breadth-first closure of the unitary moves to the given depth.

    Returns (reps, depths, edges): reps is a key-ordered-per-level list of
    class representatives, edges a dict (i, j) -> (kind, witness) with
    i < j.  Missed sibling edges are recovered when the child expands; a
    final closure pass adds the edges among the outermost shell, so the
    edge set is the full induced subgraph on the ball.
    """
    check_finite_coeffs(cfg.coeffs)
    root = normalize_base(base, cfg)
    root_key = geometry_class_key(root, cfg.geometry)
    index: dict[str, int] = {root_key: 0}
    reps: list[Diagram] = [root]
    depths: list[int] = [0]
    edges: dict[tuple[int, int], tuple[str, object]] = {}
    frontier = [0]
    for depth in range(1, radius + 1):
        found: dict[str, tuple[Diagram, int, str, object]] = {}
        for i in frontier:
            for out, kind, witness in neighbor_diagrams(reps[i], cfg):
                key = geometry_class_key(out, cfg.geometry)
                j = index.get(key)
                if j is None:
                    found.setdefault(key, (out, i, kind, witness))
                elif j != i:
                    a, b = (i, j) if i < j else (j, i)
                    edges.setdefault((a, b), (kind, witness))
        for key in sorted(found):
            out, parent, kind, witness = found[key]
            j = len(reps)
            index[key] = j
            reps.append(geometry_class_rep(out, cfg.geometry))
            depths.append(depth)
            edges.setdefault((parent, j), (kind, witness))
        frontier = [i for i in range(len(reps)) if depths[i] == depth]
        if not frontier:
            break
    for i in frontier:  # outermost shell: record edges back into the ball
        for out, kind, witness in neighbor_diagrams(reps[i], cfg):
            key = geometry_class_key(out, cfg.geometry)
            j = index.get(key)
            if j is not None and j != i:
                a, b = (i, j) if i < j else (j, i)
                edges.setdefault((a, b), (kind, witness))
    return reps, depths, edges


# -- enumeration ---------------------------------------------------------------------

def _anagram_placements(labels: tuple[str, ...], target: tuple[str, ...]):
    """All bijections sigma with labels[i] == target[sigma(i)], as tuples."""
    pools: dict[str, list[int]] = {}
    for j, lab in enumerate(target):
        pools.setdefault(lab, []).append(j)
    n = len(labels)
    acc = [0] * n
    used: set[int] = set()

    def rec(i):
        if i == n:
            yield tuple(acc)
            return
        for j in pools.get(labels[i], ()):
            if j not in used:
                used.add(j)
                acc[i] = j
                yield from rec(i + 1)
                used.discard(j)

    if sorted(labels) == sorted(target):
        yield from rec(0)


def enumerate_reduced(pres, coeffs, w, budget: int, geometry: str = "braided",
                      max_width: int = 12) -> list[Diagram]:
    """All reduced (w,w)-diagrams of the geometry with length <= budget,
    each once by exact key, deterministically ordered."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    check_finite_coeffs(coeffs)
    cfg = BallConfig(pres, coeffs, geometry, max_width)
    base = eps(pres, coeffs, tuple(w), annular=(geometry == "annular"))
    reps, depths, _ = bfs_classes(base, budget, cfg)
    target = tuple(w)
    out: dict[str, Diagram] = {}
    for rep in reps:
        labels = rep.bot_word()
        if geometry == "planar":
            if labels == target:
                out.setdefault(canonical_key(rep), rep)
        elif geometry == "annular":
            n = len(labels)
            for k in range(n):
                rot = rotate_bottom(rep, k)
                if rot.bot_word() == target:
                    out.setdefault(canonical_key(rot), rot)
        else:
            for sigma in _anagram_placements(labels, target):
                ports = [0] * len(labels)
                for i, j in enumerate(sigma):
                    ports[j] = rep.bottom_ports[i]
                d = with_bottom_ports(rep, tuple(ports))
                out.setdefault(canonical_key(d), d)
    return [out[k] for k in sorted(out)]
