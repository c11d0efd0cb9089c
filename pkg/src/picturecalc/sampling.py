"""Seeded random diagrams and group elements for the property suites."""

from __future__ import annotations

import random

from .coeff import CoefficientSystem
from .moves import BallConfig, apply_linear_move, apply_transistor_move, neighbor_diagrams
from .picture import Diagram, atom_permutation, concat, eps, invert, multiply, reduce


def _random_moves(d: Diagram, steps: int, rng: random.Random, cfg: BallConfig) -> Diagram:
    for _ in range(steps):
        options = [out for out, _, _ in neighbor_diagrams(d, cfg)]
        if not options:
            break
        d = options[rng.randrange(len(options))]
    return d


def random_walk_diagram(pres, coeffs: CoefficientSystem, w, steps: int,
                        rng: random.Random, geometry: str = "braided",
                        max_width: int = 12) -> Diagram:
    """Reduced (w,*)-diagram obtained by a random unitary-move walk."""
    cfg = BallConfig(pres, coeffs, geometry, max_width)
    base = eps(pres, coeffs, tuple(w), annular=(geometry == "annular"))
    return _random_moves(base, steps, rng, cfg)


def _boundary_match(u, v, geometry):
    """A permutation aligning bot word u onto v within the geometry, or None."""
    if geometry == "planar":
        return tuple(range(len(u))) if u == v else None
    if geometry == "annular":
        n = len(u)
        if n != len(v):
            return None
        for k in range(n):
            if tuple(u[(i + k) % n] for i in range(n)) == tuple(v):
                # send position i to position (i - k) mod n
                return tuple((i - k) % n for i in range(n))
        return None
    if sorted(u) != sorted(v):
        return None
    pools: dict[str, list[int]] = {}
    for j, lab in enumerate(v):
        pools.setdefault(lab, []).append(j)
    sigma = []
    for lab in u:
        sigma.append(pools[lab].pop())
    return tuple(sigma)


def random_element(pres, coeffs: CoefficientSystem, w, rng: random.Random,
                   geometry: str = "braided", steps: int = 4, attempts: int = 60,
                   max_width: int = 12) -> Diagram:
    """Random reduced (w,w)-diagram of the geometry: two independent walks
    glued back to back, their boundaries aligned by a geometry permutation."""
    w = tuple(w)
    a = random_walk_diagram(pres, coeffs, w, steps, rng, geometry, max_width)
    for _ in range(attempts):
        b = random_walk_diagram(pres, coeffs, w, rng.randrange(steps + 2), rng,
                                geometry, max_width)
        sigma = _boundary_match(a.bot_word(), b.bot_word(), geometry)
        if sigma is not None:
            align = atom_permutation(pres, coeffs, a.bot_word(), sigma,
                                     annular=a.annular)
            return reduce(concat(concat(a, align), invert(b)))
    # fallback: conjugate a label-preserving boundary permutation
    u = a.bot_word()
    n = len(u)
    sigma = None
    if geometry == "braided":
        for i in range(n):
            for j in range(i + 1, n):
                if u[i] == u[j]:
                    s = list(range(n))
                    s[i], s[j] = s[j], s[i]
                    sigma = tuple(s)
                    break
            if sigma:
                break
    elif geometry == "annular":
        for k in range(1, n):
            if tuple(u[(i - k) % n] for i in range(n)) == u:
                sigma = tuple((i + k) % n for i in range(n))
                break
    if sigma is not None:
        mid = atom_permutation(pres, coeffs, u, sigma, annular=a.annular)
        return reduce(concat(concat(a, mid), invert(a)))
    return multiply(a, invert(a))


def random_unreduced(pres, coeffs: CoefficientSystem, w, transistor_budget: int,
                     rng: random.Random, max_width: int = 12,
                     geometry: str = "braided") -> Diagram:
    """Diagram built by raw concatenation (dipoles kept) with about
    `transistor_budget` transistors; food for the confluence tests."""
    cfg = BallConfig(pres, coeffs, geometry, max_width)
    d = eps(pres, coeffs, tuple(w), annular=(geometry == "annular"))
    placed = 0
    while placed < transistor_budget:
        moves = list(_raw_moves(d, cfg))
        if not moves:
            break
        d, kind = moves[rng.randrange(len(moves))]
        if kind == "transistor":
            placed += 1
    return d


def _raw_moves(d: Diagram, cfg: BallConfig):
    """Unreduced variants of neighbor moves (concatenation only)."""
    from .coeff import TrivialSpec, nontrivial_elements
    from .moves import _feed_tuples
    from .picture import rel_sides

    labels = d.bot_word()
    width = len(labels)
    for rel_index in range(len(d.pres.relations)):
        for direction in (1, -1):
            consumed, produced = rel_sides(d.pres, rel_index, direction)
            if width - len(consumed) + len(produced) > cfg.max_width:
                continue
            for positions in _feed_tuples(labels, consumed, cfg.geometry):
                yield (apply_transistor_move(d, rel_index, direction, positions,
                                             cfg.geometry), "transistor")
    for position, letter in enumerate(labels):
        spec = cfg.coeffs.spec(letter)
        if isinstance(spec, TrivialSpec):
            continue
        for g in nontrivial_elements(spec):
            yield apply_linear_move(d, position, g), "linear"


def random_tree(rng: random.Random, arity: int, carets: int):
    """Grow a tree by replacing `carets` random leaves with nodes."""
    from .thompson import leaf_addresses, _replace

    forest = ((),)
    for _ in range(carets):
        leaves = leaf_addresses(forest)
        root, addr = leaves[rng.randrange(len(leaves))]
        forest = _replace(forest, root, addr, ((),) * arity)
    return forest[0]


def random_tree_pair(rng: random.Random, arity: int = 2, carets: int = 3,
                     roots: int = 1, reduced: bool = True):
    """Random (reduced) tree pair with `carets` carets per side."""
    from .thompson import TreePair, reduce_pair

    domain = tuple(random_tree(rng, arity, rng.randrange(carets + 1)) for _ in range(roots))
    carets_used = sum(_count_carets(t) for t in domain)
    image = _random_forest_with_carets(rng, arity, roots, carets_used)
    n_leaves = carets_used * (arity - 1) + roots
    perm = list(range(n_leaves))
    rng.shuffle(perm)
    tp = TreePair(arity, domain, image, tuple(perm))
    return reduce_pair(tp) if reduced else tp


def _count_carets(tree) -> int:
    if tree == ():
        return 0
    return 1 + sum(_count_carets(c) for c in tree)


def _random_forest_with_carets(rng, arity, roots, carets):
    from .thompson import leaf_addresses, _replace

    forest = ((),) * roots
    for _ in range(carets):
        leaves = leaf_addresses(forest)
        root, addr = leaves[rng.randrange(len(leaves))]
        forest = _replace(forest, root, addr, ((),) * arity)
    return forest
