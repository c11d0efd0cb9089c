"""Braided diagrams over a semigroup presentation with coefficient labels.

A diagram is a combinatorial object: labelled wires stretched between a
frame and transistors.  Every wire's bottom endpoint sits on the top side
of a transistor or on the bottom of the frame; its top endpoint sits on
the bottom side of a transistor or on the top of the frame.  Each
transistor realizes one oriented relation (positive: top word = lhs).
Plain semigroup diagrams are the special case where every wire carries
the identity coefficient.

Equivalence of diagrams preserves all orders and labels, so a diagram is
fully determined by its attachment combinatorics; `canonical_key` gives a
byte-comparable normal form via a deterministic traversal from the frame
top.  `reduce` cancels dipoles (the result is order-independent), and
`multiply` is reduce-after-concatenate, the group law on (w,w)-diagrams.

Sites are encoded as tuples:
    ("FT", i)       wire top endpoint at frame-top port i
    ("FB", i)       wire bottom endpoint at frame-bottom port i
    ("TT", t, i)    wire bottom endpoint at slot i on top of transistor t
    ("TB", t, i)    wire top endpoint at slot i on the bottom of transistor t
"""

from __future__ import annotations

from collections import deque

from .coeff import (
    CoefficientSystem,
    GroupElement,
    coeff_invert,
    coeff_multiply,
    coeff_serialize,
    identity,
    trivial_system,
)
from .errors import CompositionError
from .presentation import SemigroupPresentation, Word

LabelledWord = tuple[tuple[str, GroupElement], ...]


def rel_sides(pres: SemigroupPresentation, rel_index: int, direction: int) -> tuple[Word, Word]:
    """(top word, bottom word) of a transistor carrying the oriented relation."""
    lhs, rhs = pres.relations[rel_index]
    return (lhs, rhs) if direction == 1 else (rhs, lhs)


class Diagram:
    __slots__ = (
        "pres", "coeffs", "wires", "transistors", "t_top", "t_bot",
        "top_ports", "bottom_ports", "annular",
        "wire_top", "wire_bot", "_exact_key", "_class_key", "_reduced",
    )

    def __init__(self, pres, coeffs, wires, transistors, t_top, t_bot,
                 top_ports, bottom_ports, annular=False, _reduced=None):
        self.pres = pres
        self.coeffs = coeffs
        self.wires = wires                    # wid -> (label, coeff)
        self.transistors = transistors        # tid -> (rel_index, direction)
        self.t_top = t_top                    # tid -> tuple of wids (left to right)
        self.t_bot = t_bot
        self.top_ports = tuple(top_ports)
        self.bottom_ports = tuple(bottom_ports)
        self.annular = annular
        wt: dict[int, tuple] = {}
        wb: dict[int, tuple] = {}
        for i, w in enumerate(self.top_ports):
            wt[w] = ("FT", i)
        for i, w in enumerate(self.bottom_ports):
            wb[w] = ("FB", i)
        for tid, tup in t_top.items():
            for i, w in enumerate(tup):
                wb[w] = ("TT", tid, i)
        for tid, tup in t_bot.items():
            for i, w in enumerate(tup):
                wt[w] = ("TB", tid, i)
        self.wire_top = wt
        self.wire_bot = wb
        self._exact_key = None
        self._class_key = None
        self._reduced = _reduced

    # -- basic views ---------------------------------------------------------

    def top_word(self) -> Word:
        return tuple(self.wires[w][0] for w in self.top_ports)

    def bot_word(self) -> Word:
        return tuple(self.wires[w][0] for w in self.bottom_ports)

    def top_labelled(self) -> LabelledWord:
        return tuple(self.wires[w] for w in self.top_ports)

    def bot_labelled(self) -> LabelledWord:
        return tuple(self.wires[w] for w in self.bottom_ports)

    def num_transistors(self) -> int:
        return len(self.transistors)

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return canonical_key(self) == canonical_key(other)

    def __hash__(self):
        return hash(canonical_key(self))

    def __repr__(self):
        return (f"<Diagram ({'.'.join(self.top_word())} -> {'.'.join(self.bot_word())}) "
                f"{len(self.transistors)}T/{len(self.wires)}W"
                f"{' annular' if self.annular else ''}>")

    def validate(self) -> None:
        """Check structural invariants; raises ValueError on the first failure."""
        if not self.wires:
            raise ValueError("diagram must contain at least one wire")
        seen_top, seen_bot = set(), set()
        for w in self.top_ports:
            seen_top.add(w)
        for w in self.bottom_ports:
            seen_bot.add(w)
        for tid, (rel_index, direction) in self.transistors.items():
            if not (0 <= rel_index < len(self.pres.relations)) or direction not in (1, -1):
                raise ValueError(f"transistor {tid}: bad relation reference")
            top_side, bot_side = rel_sides(self.pres, rel_index, direction)
            if tuple(self.wires[w][0] for w in self.t_top[tid]) != top_side:
                raise ValueError(f"transistor {tid}: top labels do not spell the relation side")
            if tuple(self.wires[w][0] for w in self.t_bot[tid]) != bot_side:
                raise ValueError(f"transistor {tid}: bottom labels do not spell the relation side")
            seen_bot.update(self.t_top[tid])
            seen_top.update(self.t_bot[tid])
        for w, (label, coeff) in self.wires.items():
            if label not in self.pres.alphabet:
                raise ValueError(f"wire {w}: undeclared letter {label!r}")
            if coeff.spec != self.coeffs.spec(label):
                raise ValueError(f"wire {w}: coefficient from the wrong group")
            if w not in self.wire_top or w not in self.wire_bot:
                raise ValueError(f"wire {w}: missing an endpoint")
        if seen_top != set(self.wires) or seen_bot != set(self.wires):
            raise ValueError("every wire needs exactly one top and one bottom attachment")
        # transistor order must be acyclic (t1 < t2 when a wire rises from t1 to t2)
        above: dict[int, set[int]] = {t: set() for t in self.transistors}
        for w in self.wires:
            b, t = self.wire_bot[w], self.wire_top[w]
            if b[0] == "TT" and t[0] == "TB":
                above[b[1]].add(t[1])
        state: dict[int, int] = {}

        def dfs(t):
            state[t] = 1
            for u in above[t]:
                if state.get(u) == 1:
                    raise ValueError("transistor order has a cycle")
                if u not in state:
                    dfs(u)
            state[t] = 2

        for t in self.transistors:
            if t not in state:
                dfs(t)


# -- canonical keys ------------------------------------------------------------


def _traversal(d: Diagram) -> tuple[dict[int, int], dict[int, int]]:
    """Canonical numbering: BFS from the frame-top ports in order; transistors
    numbered at first visit, wires at discovery.  Independent of the
    bottom-port order (frame-bottom sites feed nothing)."""
    worder: dict[int, int] = {}
    torder: dict[int, int] = {}
    queue: deque[int] = deque()

    def disc(w: int):
        if w not in worder:
            worder[w] = len(worder)
            queue.append(w)

    for w in d.top_ports:
        disc(w)
    while queue:
        w = queue.popleft()
        for site in (d.wire_bot[w], d.wire_top[w]):
            if site[0] in ("TT", "TB"):
                tid = site[1]
                if tid not in torder:
                    torder[tid] = len(torder)
                    for w2 in d.t_top[tid]:
                        disc(w2)
                    for w2 in d.t_bot[tid]:
                        disc(w2)
    if len(worder) != len(d.wires):
        raise ValueError("diagram has wires unreachable from the frame top")
    return worder, torder


def _key_string(d: Diagram, bottom: tuple[int, ...], worder, torder) -> str:
    parts = [
        "a" if d.annular else "p",
        f"{hash((d.pres, d.coeffs)) & 0xFFFFFFFF:08x}",
        "B" + ",".join(map(str, bottom)),
    ]
    wire_items = sorted(((i, w) for w, i in worder.items()))
    parts.append("W" + ";".join(
        f"{d.wires[w][0]}:{coeff_serialize(d.wires[w][1])}" for _, w in wire_items))
    trans_items = sorted(((i, t) for t, i in torder.items()))
    parts.append("T" + ";".join(
        f"{d.transistors[t][0]}:{d.transistors[t][1]}:"
        f"{','.join(str(worder[w]) for w in d.t_top[t])}:"
        f"{','.join(str(worder[w]) for w in d.t_bot[t])}"
        for _, t in trans_items))
    return "|".join(parts)


def canonical_key(d: Diagram, mode: str = "exact") -> str:
    """Byte-comparable normal form.  mode='exact': equal keys iff the diagrams
    are equivalent; mode='class': equal keys iff they differ by right
    concatenation with a permutation diagram (the vertex classes of X)."""
    if mode == "exact":
        if d._exact_key is None:
            worder, torder = _traversal(d)
            d._exact_key = _key_string(d, tuple(worder[w] for w in d.bottom_ports), worder, torder)
        return d._exact_key
    if mode == "class":
        if d._class_key is None:
            worder, torder = _traversal(d)
            d._class_key = _key_string(d, tuple(sorted(worder[w] for w in d.bottom_ports)), worder, torder)
        return d._class_key
    raise ValueError(f"unknown key mode {mode!r}")


def class_representative(d: Diagram) -> Diagram:
    """The member of [d] whose bottom ports follow the canonical wire order."""
    worder, _ = _traversal(d)
    ports = tuple(sorted(d.bottom_ports, key=lambda w: worder[w]))
    out = Diagram(d.pres, d.coeffs, d.wires, d.transistors, d.t_top, d.t_bot,
                  d.top_ports, ports, d.annular, _reduced=d._reduced)
    return out


def rotate_bottom(d: Diagram, k: int) -> Diagram:
    """Right-concatenate the rotation sending top port i to bottom port i+k."""
    n = len(d.bottom_ports)
    k %= n
    ports = tuple(d.bottom_ports[(i - k) % n] for i in range(n))
    return Diagram(d.pres, d.coeffs, d.wires, d.transistors, d.t_top, d.t_bot,
                   d.top_ports, ports, d.annular, _reduced=d._reduced)


def with_bottom_ports(d: Diagram, ports: tuple[int, ...]) -> Diagram:
    if sorted(ports) != sorted(d.bottom_ports):
        raise ValueError("new bottom ports must be a permutation of the old")
    return Diagram(d.pres, d.coeffs, d.wires, d.transistors, d.t_top, d.t_bot,
                   d.top_ports, ports, d.annular, _reduced=d._reduced)


# -- construction atoms --------------------------------------------------------


def _resolve_labelled(pres, coeffs, labelled_word) -> LabelledWord:
    out = []
    for item in labelled_word:
        if isinstance(item, str):
            letter, elem = item, None
        else:
            letter, elem = item
        if letter not in pres.alphabet:
            raise ValueError(f"undeclared letter {letter!r}")
        spec = coeffs.spec(letter)
        if elem is None:
            elem = identity(spec)
        if elem.spec != spec:
            raise ValueError(f"element/spec mismatch at letter {letter!r}")
        out.append((letter, elem))
    return tuple(out)


def eps(pres: SemigroupPresentation, coeffs: CoefficientSystem | None,
        labelled_word, annular: bool = False) -> Diagram:
    """epsilon(u1...un): n wires frame-top to frame-bottom, no transistors."""
    if coeffs is None:
        coeffs = trivial_system(pres.alphabet)
    lw = _resolve_labelled(pres, coeffs, labelled_word)
    if not lw:
        raise ValueError("empty word")
    wires = {i: lw[i] for i in range(len(lw))}
    ports = tuple(range(len(lw)))
    return Diagram(pres, coeffs, wires, {}, {}, {}, ports, ports, annular, _reduced=True)


def atom_permutation(pres, coeffs, labelled_word, perm, annular: bool = False) -> Diagram:
    """Wire i runs from frame-top port i to frame-bottom port perm[i]."""
    if coeffs is None:
        coeffs = trivial_system(pres.alphabet)
    lw = _resolve_labelled(pres, coeffs, labelled_word)
    n = len(lw)
    perm = tuple(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a bijection on positions")
    wires = {i: lw[i] for i in range(n)}
    bottom = [0] * n
    for i in range(n):
        bottom[perm[i]] = i
    return Diagram(pres, coeffs, wires, {}, {}, {}, tuple(range(n)), tuple(bottom),
                   annular, _reduced=True)


def atom_transistor(pres, coeffs, a: Word, rel_index: int, direction: int,
                    b: Word, annular: bool = False) -> Diagram:
    """Planar diagram eps(a) + T + eps(b) with one transistor, identity labels."""
    if coeffs is None:
        coeffs = trivial_system(pres.alphabet)
    if not (0 <= rel_index < len(pres.relations)):
        raise ValueError("invalid relation reference")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    top_side, bot_side = rel_sides(pres, rel_index, direction)
    a, b = tuple(a), tuple(b)
    wires: dict[int, tuple[str, GroupElement]] = {}
    nid = 0

    def add(letter):
        nonlocal nid
        wires[nid] = (letter, identity(coeffs.spec(letter)))
        nid += 1
        return nid - 1

    left = [add(c) for c in a]
    t_in = [add(c) for c in top_side]
    right = [add(c) for c in b]
    t_out = [add(c) for c in bot_side]
    tid = 0
    top_ports = tuple(left + t_in + right)
    bottom_ports = tuple(left + t_out + right)
    return Diagram(pres, coeffs, wires, {tid: (rel_index, direction)},
                   {tid: tuple(t_in)}, {tid: tuple(t_out)},
                   top_ports, bottom_ports, annular, _reduced=True)


def atom_linear(pres, coeffs, word: Word, i: int, g: GroupElement,
                annular: bool = False) -> Diagram:
    """eps(word) with coefficient g != 1 at position i."""
    if g.is_identity():
        raise ValueError("linear diagram needs a nontrivial coefficient")
    lw = [(c, None) for c in word]
    lw[i] = (word[i], g)
    return eps(pres, coeffs, lw, annular)


# -- boundaries, concatenation, sum, inversion ---------------------------------


def boundaries(d: Diagram) -> tuple[LabelledWord, LabelledWord, Word, Word]:
    return d.top_labelled(), d.bot_labelled(), d.top_word(), d.bot_word()


def _relabel(d: Diagram, wire_off: int, trans_off: int):
    wires = {w + wire_off: v for w, v in d.wires.items()}
    transistors = {t + trans_off: v for t, v in d.transistors.items()}
    t_top = {t + trans_off: tuple(w + wire_off for w in tup) for t, tup in d.t_top.items()}
    t_bot = {t + trans_off: tuple(w + wire_off for w in tup) for t, tup in d.t_bot.items()}
    top = tuple(w + wire_off for w in d.top_ports)
    bottom = tuple(w + wire_off for w in d.bottom_ports)
    return wires, transistors, t_top, t_bot, top, bottom


def concat(d1: Diagram, d2: Diagram) -> Diagram:
    """Glue d2 below d1; merged wires carry (d1's coefficient)*(d2's).  Not reduced."""
    if d1.pres != d2.pres or d1.coeffs != d2.coeffs:
        raise CompositionError("presentation or coefficient system mismatch")
    if d1.bot_word() != d2.top_word():
        raise CompositionError(
            f"boundary mismatch: {'.'.join(d1.bot_word())} vs {'.'.join(d2.top_word())}")
    w_off = (max(d1.wires) if d1.wires else 0) + 1
    t_off = (max(d1.transistors) if d1.transistors else 0) + 1
    wires2, trans2, ttop2, tbot2, top2, bottom2 = _relabel(d2, w_off, t_off)

    wires = dict(d1.wires)
    wires.update(wires2)
    transistors = dict(d1.transistors)
    transistors.update(trans2)
    t_top = dict(d1.t_top)
    t_top.update(ttop2)
    t_bot = dict(d1.t_bot)
    t_bot.update(tbot2)

    # Merge each lower port wire of d1 with the matching upper port wire of d2:
    # keep the upper wire id, give it the lower wire's bottom endpoint.
    replace: dict[int, int] = {}
    for upper, lower in zip(d1.bottom_ports, top2):
        lu, cu = wires[upper]
        ll, cl = wires[lower]
        wires[upper] = (lu, coeff_multiply(cu, cl))
        replace[lower] = upper
        del wires[lower]
    bottom = tuple(replace.get(w, w) for w in bottom2)
    for t in list(tbot2):
        t_top[t] = tuple(replace.get(w, w) for w in t_top[t])
    return Diagram(d1.pres, d1.coeffs, wires, transistors, t_top, t_bot,
                   d1.top_ports, bottom, d1.annular or d2.annular)


def sum_diagrams(d1: Diagram, d2: Diagram) -> Diagram:
    """Side-by-side union (undefined for annular operands)."""
    if d1.pres != d2.pres or d1.coeffs != d2.coeffs:
        raise CompositionError("presentation or coefficient system mismatch")
    if d1.annular or d2.annular:
        raise CompositionError("sum is undefined for annular diagrams")
    w_off = (max(d1.wires) if d1.wires else 0) + 1
    t_off = (max(d1.transistors) if d1.transistors else 0) + 1
    wires2, trans2, ttop2, tbot2, top2, bottom2 = _relabel(d2, w_off, t_off)
    wires = dict(d1.wires)
    wires.update(wires2)
    transistors = dict(d1.transistors)
    transistors.update(trans2)
    t_top = dict(d1.t_top)
    t_top.update(ttop2)
    t_bot = dict(d1.t_bot)
    t_bot.update(tbot2)
    red = True if (d1._reduced and d2._reduced) else None
    return Diagram(d1.pres, d1.coeffs, wires, transistors, t_top, t_bot,
                   d1.top_ports + top2, d1.bottom_ports + bottom2, False, _reduced=red)


def invert(d: Diagram) -> Diagram:
    """Vertical mirror: boundaries and transistor sides exchanged, directions
    flipped, coefficients inverted."""
    wires = {w: (label, coeff_invert(c)) for w, (label, c) in d.wires.items()}
    transistors = {t: (r, -s) for t, (r, s) in d.transistors.items()}
    return Diagram(d.pres, d.coeffs, wires, transistors,
                   dict(d.t_bot), dict(d.t_top),
                   d.bottom_ports, d.top_ports, d.annular, _reduced=d._reduced)


# -- dipoles and reduction -------------------------------------------------------


def _find_dipole(wires, transistors, t_top, t_bot, wire_top) -> tuple[int, int] | None:
    """A dipole (t1 below, t2 above): the wires rising from t1's top are exactly
    t2's bottom side in order, the outer labels match, and every connecting
    wire carries the identity coefficient."""
    for t1 in transistors:
        conn = t_top[t1]
        site = wire_top[conn[0]]
        if site[0] != "TB" or site[2] != 0:
            continue
        t2 = site[1]
        if t_bot[t2] != conn:
            continue
        if any(not wires[w][1].is_identity() for w in conn):
            continue
        if tuple(wires[w][0] for w in t_top[t2]) != tuple(wires[w][0] for w in t_bot[t1]):
            continue
        return t1, t2
    return None


def is_reduced(d: Diagram) -> bool:
    if d._reduced:
        return True
    found = _find_dipole(d.wires, d.transistors, d.t_top, d.t_bot, d.wire_top) is not None
    if not found:
        d._reduced = True
    return not found


def reduce(d: Diagram, order: list[tuple[int, int]] | None = None, rng=None) -> Diagram:
    """Cancel dipoles until none remain.  The result is independent of the
    order in which dipoles are reduced; `rng` randomizes the order (used by
    the confluence tests)."""
    if d._reduced:
        return d
    wires = dict(d.wires)
    transistors = dict(d.transistors)
    t_top = dict(d.t_top)
    t_bot = dict(d.t_bot)
    bottom = list(d.bottom_ports)
    wire_top = dict(d.wire_top)
    wire_bot = dict(d.wire_bot)

    def all_dipoles():
        out = []
        for t1 in transistors:
            conn = t_top[t1]
            site = wire_top[conn[0]]
            if site[0] != "TB" or site[2] != 0:
                continue
            t2 = site[1]
            if t_bot[t2] != conn:
                continue
            if any(not wires[w][1].is_identity() for w in conn):
                continue
            if tuple(wires[w][0] for w in t_top[t2]) != tuple(wires[w][0] for w in t_bot[t1]):
                continue
            out.append((t1, t2))
        return out

    while True:
        dips = all_dipoles()
        if not dips:
            break
        if rng is not None:
            t1, t2 = dips[rng.randrange(len(dips))]
        else:
            t1, t2 = dips[0]
        for w in t_top[t1]:
            del wires[w], wire_top[w], wire_bot[w]
        uppers, lowers = t_top[t2], t_bot[t1]
        for a, b in zip(uppers, lowers):
            la, ca = wires[a]
            _, cb = wires[b]
            wires[a] = (la, coeff_multiply(ca, cb))
            site = wire_bot[b]
            wire_bot[a] = site
            if site[0] == "FB":
                bottom[site[1]] = a
            else:
                _, tid, idx = site
                tup = list(t_top[tid])
                tup[idx] = a
                t_top[tid] = tuple(tup)
            del wires[b], wire_top[b], wire_bot[b]
        for t in (t1, t2):
            del transistors[t], t_top[t], t_bot[t]
    return Diagram(d.pres, d.coeffs, wires, transistors, t_top, t_bot,
                   d.top_ports, tuple(bottom), d.annular, _reduced=True)


def multiply(d1: Diagram, d2: Diagram) -> Diagram:
    """The reduction of the concatenation; the group law on (w,w)-diagrams."""
    return reduce(concat(d1, d2))


def length(d: Diagram) -> int:
    """Transistors of the reduction plus its wires with nontrivial coefficients."""
    r = reduce(d)
    return len(r.transistors) + sum(1 for _, c in r.wires.values() if not c.is_identity())


# -- classification -------------------------------------------------------------


def _sweep_planar(d: Diagram) -> bool:
    """Fire transistors downward whenever their top wires occupy consecutive
    boundary slots in matching order; planar iff everything fires and no
    permutation remains.  Firing order is immaterial: blocks are disjoint and
    replacements are nonempty, so fireability is stable."""
    cut = list(d.top_ports)
    unfired = set(d.transistors)
    while unfired:
        pos = {w: i for i, w in enumerate(cut)}
        fired = None
        for tid in unfired:
            tt = d.t_top[tid]
            i0 = pos.get(tt[0])
            if i0 is None:
                continue
            if all(pos.get(w) == i0 + j for j, w in enumerate(tt)):
                fired = (tid, i0)
                break
        if fired is None:
            return False
        tid, i0 = fired
        cut[i0:i0 + len(d.t_top[tid])] = list(d.t_bot[tid])
        unfired.discard(tid)
    return cut == list(d.bottom_ports)


def _sweep_annular(d: Diagram) -> bool:
    """Cyclic variant: blocks may wrap around, and the final boundary only has
    to match up to rotation (winding shifts the basepoint)."""
    cut = list(d.top_ports)
    unfired = set(d.transistors)
    while unfired:
        n = len(cut)
        pos = {w: i for i, w in enumerate(cut)}
        fired = None
        for tid in unfired:
            tt = d.t_top[tid]
            if len(tt) > n:
                continue
            i0 = pos.get(tt[0])
            if i0 is None:
                continue
            if all(pos.get(w) == (i0 + j) % n for j, w in enumerate(tt)):
                fired = (tid, i0)
                break
        if fired is None:
            return False
        tid, i0 = fired
        cut = cut[i0:] + cut[:i0]
        cut = list(d.t_bot[tid]) + cut[len(d.t_top[tid]):]
        unfired.discard(tid)
    n = len(cut)
    target = list(d.bottom_ports)
    return any(cut[k:] + cut[:k] == target for k in range(n))


def classify_geometry(d: Diagram) -> str:
    """'planar' | 'annular_not_planar' | 'braided_only' (embeddability of the
    combinatorics, regardless of the annular flag)."""
    if _sweep_planar(d):
        return "planar"
    if _sweep_annular(d):
        return "annular_not_planar"
    return "braided_only"


def is_permutation_diagram(d: Diagram) -> bool:
    return not d.transistors and all(c.is_identity() for _, c in d.wires.values())


def classify_kind(d: Diagram) -> str:
    """'permutation' | 'transistor' | 'linear' | 'general' per the unitary-
    diagram definitions (transistor/linear must be planar)."""
    nontrivial = sum(1 for _, c in d.wires.values() if not c.is_identity())
    if not d.transistors and nontrivial == 0:
        return "permutation"
    if len(d.transistors) == 1 and nontrivial == 0 and classify_geometry(d) == "planar":
        return "transistor"
    if not d.transistors and nontrivial == 1 and classify_geometry(d) == "planar":
        return "linear"
    return "general"


# -- factorization ---------------------------------------------------------------


def factorize(d: Diagram) -> tuple[Diagram, list[tuple[Diagram, Diagram]]]:
    """Absolutely reduced alternating decomposition, peeled from the bottom.

    Returns (lead, [(U_1, P_1), ..., (U_n, P_n)]) with each U_i a unitary
    atom, each P_i a permutation diagram, n = length(d), and

        lead o U_1 o P_1 o ... o U_n o P_n == d   (exact concatenation).

    The trailing permutation is absorbed into P_n; the leading permutation
    cannot be avoided for braided diagrams whose first transistor attaches
    to scattered frame-top ports.
    """
    if not is_reduced(d):
        raise ValueError("factorize requires a reduced diagram")
    pres, coeffs = d.pres, d.coeffs
    rest = d
    rev: list[tuple[Diagram, Diagram]] = []
    while True:
        bot = rest.bottom_ports
        botword = rest.bot_word()
        # linear peel: a frame-bottom wire still carrying a coefficient
        lin = next((i for i, w in enumerate(bot) if not rest.wires[w][1].is_identity()), None)
        if lin is not None:
            w = bot[lin]
            g = rest.wires[w][1]
            u = atom_linear(pres, coeffs, botword, lin, g)
            p = eps(pres, coeffs, botword)
            wires = dict(rest.wires)
            wires[w] = (wires[w][0], identity(g.spec))
            rest = Diagram(pres, coeffs, wires, rest.transistors, rest.t_top,
                           rest.t_bot, rest.top_ports, rest.bottom_ports,
                           rest.annular, _reduced=True)
            rev.append((u, p))
            continue
        # transistor peel: a <-minimal transistor, all bottom wires on the frame
        tid = next((t for t in sorted(rest.transistors)
                    if all(rest.wire_bot[w][0] == "FB" for w in rest.t_bot[t])), None)
        if tid is None:
            break
        sel = rest.t_bot[tid]
        sel_set = set(sel)
        passing = [w for w in bot if w not in sel_set]
        first_pos = rest.wire_bot[sel[0]][1]
        p_ins = sum(1 for w in bot[:first_pos] if w not in sel_set)
        a_word = tuple(rest.wires[w][0] for w in passing[:p_ins])
        b_word = tuple(rest.wires[w][0] for w in passing[p_ins:])
        rel_index, direction = rest.transistors[tid]
        u = atom_transistor(pres, coeffs, a_word, rel_index, direction, b_word)
        # new rest: drop tid and its hanging wires; its top wires reach the frame
        new_bot = passing[:p_ins] + list(rest.t_top[tid]) + passing[p_ins:]
        transistors = {t: v for t, v in rest.transistors.items() if t != tid}
        t_top = {t: v for t, v in rest.t_top.items() if t != tid}
        t_bot = {t: v for t, v in rest.t_bot.items() if t != tid}
        wires = {w: v for w, v in rest.wires.items() if w not in sel_set}
        new_rest = Diagram(pres, coeffs, wires, transistors, t_top, t_bot,
                           rest.top_ports, tuple(new_bot), rest.annular, _reduced=True)
        # permutation matching (new_rest o u)'s bottom streams to rest's order
        m = len(rel_sides(pres, rel_index, direction)[1])
        sigma = [0] * len(bot)
        pass_positions = [i for i, w in enumerate(bot) if w not in sel_set]
        for j in range(p_ins):
            sigma[j] = pass_positions[j]
        for i, w in enumerate(sel):
            sigma[p_ins + i] = rest.wire_bot[w][1]
        for j in range(p_ins, len(passing)):
            sigma[m + j] = pass_positions[j]
        perm_word = tuple(rest.wires[bot[sigma[i]]][0] for i in range(len(bot)))
        p = atom_permutation(pres, coeffs, perm_word, sigma)
        rev.append((u, p))
        rest = new_rest
    lead = rest
    rev.reverse()
    return lead, rev
