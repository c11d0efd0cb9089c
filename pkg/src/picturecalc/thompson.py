"""Thompson's groups F < T < V as numbered tree pairs.

A tree is a nested tuple: () is a leaf, an internal node is the tuple of
its n children.  A pair holds a domain forest (drawn at the top of the
bridged diagram), an image forest, and the leaf bijection domain leaf i
-> image leaf perm[i].  The realized map sends the image subdivision onto
the domain subdivision (evaluate_map substitutes the image leaf's digit
prefix by the domain leaf's); this orientation makes the bridge to
diagrams over <x | x=x^n> a homomorphism for top-to-bottom concatenation.

Multiplication refines the middle (first factor's image against the
second's domain) and composes the bijections; a pair is reduced when no
caret sits below same-numbered, order-matched leaves on both sides.
"""

from __future__ import annotations

from dataclasses import dataclass

from .picture import (
    Diagram,
    atom_permutation,
    atom_transistor,
    concat,
    eps,
    invert,
    is_reduced,
    sum_diagrams,
)
from .coeff import trivial_system
from .presentation import SemigroupPresentation

Tree = tuple
Forest = tuple


def thompson_presentation(arity: int) -> SemigroupPresentation:
    return SemigroupPresentation(("x",), ((("x",), ("x",) * arity),))


def tree_leaves(tree: Tree) -> int:
    if tree == ():
        return 1
    return sum(tree_leaves(c) for c in tree)


def forest_leaves(forest: Forest) -> int:
    return sum(tree_leaves(t) for t in forest)


def leaf_addresses(forest: Forest) -> list[tuple[int, tuple[int, ...]]]:
    """(root index, digit path) of every leaf, left to right."""
    out = []

    def walk(tree, root, addr):
        if tree == ():
            out.append((root, addr))
            return
        for i, c in enumerate(tree):
            walk(c, root, addr + (i,))

    for r, t in enumerate(forest):
        walk(t, r, ())
    return out


def _merge_tree(t1: Tree, t2: Tree) -> Tree:
    if t1 == ():
        return t2
    if t2 == ():
        return t1
    return tuple(_merge_tree(a, b) for a, b in zip(t1, t2))


def merge_forest(f1: Forest, f2: Forest) -> Forest:
    if len(f1) != len(f2):
        raise ValueError("forests have different root counts")
    return tuple(_merge_tree(a, b) for a, b in zip(f1, f2))


def subtree_at(forest: Forest, root: int, addr: tuple[int, ...]) -> Tree:
    t = forest[root]
    for i in addr:
        t = t[i]
    return t


def _replace(forest: Forest, root: int, addr: tuple[int, ...], sub: Tree) -> Forest:
    def rep(tree, path):
        if not path:
            return sub
        return tuple(rep(c, path[1:]) if i == path[0] else c for i, c in enumerate(tree))

    return tuple(rep(t, addr) if r == root else t for r, t in enumerate(forest))


@dataclass(frozen=True)
class TreePair:
    arity: int
    domain: Forest
    image: Forest
    perm: tuple[int, ...]

    def __post_init__(self):
        nd, ni = forest_leaves(self.domain), forest_leaves(self.image)
        if nd != ni or sorted(self.perm) != list(range(nd)):
            raise ValueError("leaf bijection does not match the leaf counts")

    @property
    def roots(self) -> int:
        return len(self.domain)


def identity_pair(arity: int, roots: int = 1) -> TreePair:
    forest = ((),) * roots
    return TreePair(arity, forest, forest, tuple(range(roots)))


def _caret_sites(forest: Forest, arity: int):
    """(root, address, leftmost leaf index) of each all-leaf internal node."""
    out = []
    idx = 0

    def walk(tree, root, addr):
        nonlocal idx
        if tree == ():
            idx += 1
            return
        if all(c == () for c in tree):
            out.append((root, addr, idx))
        for i, c in enumerate(tree):
            walk(c, root, addr + (i,))

    for r, t in enumerate(forest):
        walk(t, r, ())
    return out


def reduce_pair(tp: TreePair) -> TreePair:
    n = tp.arity
    while True:
        image_carets = {leftmost: (root, addr)
                        for root, addr, leftmost in _caret_sites(tp.image, n)}
        hit = None
        for root, addr, i in _caret_sites(tp.domain, n):
            j = tp.perm[i]
            if all(tp.perm[i + t] == j + t for t in range(n)) and j in image_carets:
                hit = (root, addr, i, j)
                break
        if hit is None:
            return tp
        root, addr, i, j = hit
        iroot, iaddr = image_carets[j]
        domain = _replace(tp.domain, root, addr, ())
        image = _replace(tp.image, iroot, iaddr, ())
        perm = []
        for k in range(forest_leaves(tp.domain)):
            if i < k < i + n:
                continue
            v = tp.perm[k]
            perm.append(v - (n - 1) if v > j else v)
        tp = TreePair(n, domain, image, tuple(perm))


def is_reduced_pair(tp: TreePair) -> bool:
    return reduce_pair(tp) == tp


def _expand(tp: TreePair, refined: Forest, side: str) -> TreePair:
    """Graft, per leaf of `side`, the refined subtree onto both forests."""
    n = tp.arity
    if side == "image":
        leaf_list = leaf_addresses(tp.image)
        subs = [subtree_at(refined, r, a) for r, a in leaf_list]
        image = refined
        domain = tp.domain
        dom_addrs = leaf_addresses(tp.domain)
        for i, (r, a) in enumerate(dom_addrs):
            domain = _replace(domain, r, a, subs[tp.perm[i]])
        sizes_img = [tree_leaves(s) for s in subs]
        sizes_dom = [sizes_img[tp.perm[i]] for i in range(len(dom_addrs))]
    else:
        leaf_list = leaf_addresses(tp.domain)
        subs = [subtree_at(refined, r, a) for r, a in leaf_list]
        domain = refined
        image = tp.image
        img_addrs = leaf_addresses(tp.image)
        inv = [0] * len(tp.perm)
        for i, j in enumerate(tp.perm):
            inv[j] = i
        for j, (r, a) in enumerate(img_addrs):
            image = _replace(image, r, a, subs[inv[j]])
        sizes_dom = [tree_leaves(s) for s in subs]
        sizes_img = [sizes_dom[inv[j]] for j in range(len(img_addrs))]
    dom_off, acc = [], 0
    for s in sizes_dom:
        dom_off.append(acc)
        acc += s
    img_off, acc = [], 0
    for s in sizes_img:
        img_off.append(acc)
        acc += s
    perm = [0] * forest_leaves(domain)
    for i, j in enumerate(tp.perm):
        for t in range(sizes_dom[i]):
            perm[dom_off[i] + t] = img_off[j] + t
    return TreePair(n, domain, image, tuple(perm))


def tp_multiply(a: TreePair, b: TreePair) -> TreePair:
    """Composite pair (a's action after b's), reduced.  Mirrors diagram
    concatenation: a's image forest is refined against b's domain forest."""
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    if len(a.image) != len(b.domain):
        raise ValueError("root count mismatch")
    middle = merge_forest(a.image, b.domain)
    a2 = _expand(a, middle, "image")
    b2 = _expand(b, middle, "domain")
    perm = tuple(b2.perm[a2.perm[i]] for i in range(len(a2.perm)))
    return reduce_pair(TreePair(a.arity, a2.domain, b2.image, perm))


def tp_invert(a: TreePair) -> TreePair:
    inv = [0] * len(a.perm)
    for i, j in enumerate(a.perm):
        inv[j] = i
    return TreePair(a.arity, a.image, a.domain, tuple(inv))


def membership(tp: TreePair) -> str:
    """'F' | 'T_not_F' | 'V_not_T' from the reduced pair's leaf bijection."""
    tp = reduce_pair(tp)
    m = len(tp.perm)
    if all(tp.perm[i] == i for i in range(m)):
        return "F"
    for k in range(1, m):
        if all(tp.perm[i] == (i + k) % m for i in range(m)):
            return "T_not_F"
    return "V_not_T"


# -- n-adic rationals and evaluation ------------------------------------------------


@dataclass(frozen=True)
class NAdic:
    """numerator / base**exponent in [0,1), normalized (base does not divide
    the numerator unless the value is 0)."""

    numerator: int
    exponent: int
    base: int = 2

    def __post_init__(self):
        if self.base < 2 or self.exponent < 0 or not (0 <= self.numerator < self.base ** self.exponent):
            raise ValueError("need 0 <= numerator / base^exponent < 1")
        if self.numerator == 0 and self.exponent != 0:
            raise ValueError("zero is 0 / base^0")
        if self.numerator and self.numerator % self.base == 0:
            raise ValueError("numerator must not be divisible by the base")

    def digits(self, width: int) -> tuple[int, ...]:
        if width < self.exponent:
            raise ValueError("width too small")
        out = []
        v = self.numerator
        for _ in range(self.exponent):
            out.append(v % self.base)
            v //= self.base
        return tuple(reversed(out)) + (0,) * (width - self.exponent)

    def __str__(self):
        return f"{self.numerator}/{self.base}^{self.exponent}"


def nadic(numerator: int, exponent: int, base: int = 2) -> NAdic:
    while exponent > 0 and numerator % base == 0:
        numerator //= base
        exponent -= 1
    if numerator == 0:
        exponent = 0
    return NAdic(numerator, exponent, base)


def nadic_from_digits(digits, base: int) -> NAdic:
    num = 0
    for d in digits:
        num = num * base + d
    return nadic(num, len(digits), base)


def evaluate_map(tp: TreePair, q: NAdic) -> NAdic:
    """Apply the right-continuous map of the pair: find the image leaf whose
    digit address prefixes q, substitute the matching domain leaf's address."""
    if tp.roots != 1:
        raise ValueError("evaluation needs single-rooted pairs")
    if q.base != tp.arity:
        raise ValueError("base/arity mismatch")
    tp = reduce_pair(tp)
    img = [a for _, a in leaf_addresses(tp.image)]
    dom = [a for _, a in leaf_addresses(tp.domain)]
    width = max(max((len(a) for a in img), default=0), q.exponent)
    ds = q.digits(width)
    inv = [0] * len(tp.perm)
    for i, j in enumerate(tp.perm):
        inv[j] = i
    for j, addr in enumerate(img):
        if ds[:len(addr)] == addr:
            rest = ds[len(addr):]
            return nadic_from_digits(dom[inv[j]] + rest, q.base)
    raise AssertionError("image leaves do not cover [0,1)")


# -- bridge to diagrams over <x | x=x^n> --------------------------------------------


def _tree_diagram(tree: Tree, pres, coeffs) -> Diagram:
    if tree == ():
        return eps(pres, coeffs, "x")
    children = [_tree_diagram(c, pres, coeffs) for c in tree]
    below = children[0]
    for c in children[1:]:
        below = sum_diagrams(below, c)
    return concat(atom_transistor(pres, coeffs, (), 0, 1, ()), below)


def _forest_diagram(forest: Forest, pres, coeffs) -> Diagram:
    out = _tree_diagram(forest[0], pres, coeffs)
    for t in forest[1:]:
        out = sum_diagrams(out, _tree_diagram(t, pres, coeffs))
    return out


def tree_pair_to_diagram(tp: TreePair) -> Diagram:
    """Domain forest above (positive carets), image forest below, mirrored
    (negative carets), linked through the leaf bijection.  The result is
    reduced iff the pair is."""
    pres = thompson_presentation(tp.arity)
    coeffs = trivial_system(pres.alphabet)
    top = _forest_diagram(tp.domain, pres, coeffs)
    bot = invert(_forest_diagram(tp.image, pres, coeffs))
    link = atom_permutation(pres, coeffs, ("x",) * len(tp.perm), tp.perm)
    return concat(top, concat(link, bot))


def _is_thompson_presentation(pres) -> int | None:
    if len(pres.alphabet) == 1 and len(pres.relations) == 1:
        lhs, rhs = pres.relations[0]
        x = pres.alphabet[0]
        if lhs == (x,) and len(rhs) >= 2 and set(rhs) == {x}:
            return len(rhs)
    return None


def diagram_to_tree_pair(d: Diagram) -> TreePair:
    """Inverse bridge for reduced diagrams with trivial coefficients over
    <x | x=x^n>.

    Over these presentations a negative transistor directly above a
    positive one always forms a dipole, so a reduced diagram is literally
    a domain forest over a permutation over an inverted image forest, and
    the pair can be read off structurally.
    """
    n = _is_thompson_presentation(d.pres)
    if n is None:
        raise ValueError("diagram is not over a <x | x=x^n> presentation")
    if any(not c.is_identity() for _, c in d.wires.values()):
        raise ValueError("diagram has nontrivial coefficients")
    if not is_reduced(d):
        raise ValueError("diagram must be reduced")

    positive = {t for t, (_, s) in d.transistors.items() if s == 1}
    negative = {t for t, (_, s) in d.transistors.items() if s == -1}
    seen_pos, seen_neg = set(), set()
    dom_leaf_wires: list[int] = []
    img_leaf_wires: list[int] = []

    def walk_down(w) -> Tree:
        site = d.wire_bot[w]
        if site[0] == "TT" and site[1] in positive:
            t = site[1]
            seen_pos.add(t)
            return tuple(walk_down(c) for c in d.t_bot[t])
        dom_leaf_wires.append(w)
        return ()

    def walk_up(w) -> Tree:
        site = d.wire_top[w]
        if site[0] == "TB" and site[1] in negative:
            t = site[1]
            seen_neg.add(t)
            return tuple(walk_up(c) for c in d.t_top[t])
        img_leaf_wires.append(w)
        return ()

    domain = tuple(walk_down(w) for w in d.top_ports)
    image = tuple(walk_up(w) for w in d.bottom_ports)
    if seen_pos != positive or seen_neg != negative:
        raise ValueError("diagram does not have the forest-permutation-forest shape")
    if sorted(dom_leaf_wires) != sorted(img_leaf_wires):
        raise ValueError("forest leaves do not line up")
    img_index = {w: j for j, w in enumerate(img_leaf_wires)}
    perm = tuple(img_index[w] for w in dom_leaf_wires)
    return TreePair(n, domain, image, perm)
