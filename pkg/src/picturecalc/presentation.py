"""Semigroup presentations P = <Sigma | R> and basewords.

A presentation is an ordered alphabet together with an ordered list of
oriented relations (lhs, rhs).  Two conventions are enforced throughout:
a relation never has equal sides, and if (u, v) is stored then (v, u) is
not.  The positive direction of a transistor is lhs -> rhs.

Words are tuples of letter names.  The textual grammar is

    presentation := '<' ident (',' ident)* '|' rel (',' rel)* '>'
    rel          := word '=' word
    word         := atom ('.' atom)*
    atom         := ident ('^' uint)?

with whitespace insignificant.  Bare juxtaposition inside an atom (``xx``
for ``x.x``) is accepted only when every alphabet letter is a single
character, so multi-character letters like ``x1`` stay unambiguous.
Serialization always emits the canonical '.'-separated form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

Word = tuple[str, ...]

RESERVED = set("<>|=,.^")


def _letter_ok(name: str) -> bool:
    return bool(name) and not any(c.isspace() or c in RESERVED for c in name)


@dataclass(frozen=True)
class SemigroupPresentation:
    alphabet: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...]

    def letter_index(self, letter: str) -> int:
        return self.alphabet.index(letter)

    def __str__(self) -> str:
        return serialize_presentation(self)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def word_str(w: Word) -> str:
    return ".".join(w)


def validate_presentation(p: SemigroupPresentation) -> list[Violation]:
    """Return all invariant violations (empty list iff the presentation is valid)."""
    out: list[Violation] = []
    seen: set[str] = set()
    for a in p.alphabet:
        if not _letter_ok(a):
            out.append(Violation("bad_letter", repr(a)))
        if a in seen:
            out.append(Violation("duplicate_letter", a))
        seen.add(a)
    declared = set(p.alphabet)
    oriented: set[tuple[Word, Word]] = set()
    for i, (lhs, rhs) in enumerate(p.relations):
        for side in (lhs, rhs):
            if len(side) == 0:
                out.append(Violation("empty_word", f"relation {i}"))
            for letter in side:
                if letter not in declared:
                    out.append(Violation("undeclared_letter", f"{letter} in relation {i}"))
        if lhs == rhs:
            out.append(Violation("identity_relation", f"relation {i}: {word_str(lhs)}={word_str(rhs)}"))
        if (rhs, lhs) in oriented:
            out.append(Violation("swapped_pair", f"relation {i}: {word_str(lhs)}={word_str(rhs)}"))
        if (lhs, rhs) in oriented:
            out.append(Violation("duplicate_relation", f"relation {i}"))
        oriented.add((lhs, rhs))
    return out


# --- parsing ---------------------------------------------------------------

_PUNCT = set("<>|=,.^")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Yield (kind, value, position) with kind in {punct, ident, int}."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            toks.append(("punct", c, i))
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in _PUNCT:
            j += 1
        val = text[i:j]
        toks.append(("int" if val.isdigit() else "ident", val, i))
        i = j
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.textlen = len(text)

    def _peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else ("eof", "", self.textlen)

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, val, at = self._next()
        if kind == "eof" or val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", at)
        return val

    def ident(self) -> tuple[str, int]:
        kind, val, at = self._next()
        if kind not in ("ident", "int"):
            raise ParseError(f"expected identifier, found {val or 'end of input'!r}", at)
        return val, at


def _expand_atom(token: str, at: int, alphabet: tuple[str, ...]) -> list[str]:
    if token in alphabet:
        return [token]
    if all(len(a) == 1 for a in alphabet):
        letters = list(token)
        for c in letters:
            if c not in alphabet:
                raise ParseError(f"undeclared letter {c!r}", at)
        return letters
    raise ParseError(f"undeclared letter {token!r}", at)


def parse_presentation(text: str) -> SemigroupPresentation:
    p = _Parser(text)
    p.expect("<")
    alphabet: list[str] = []
    while True:
        name, at = p.ident()
        if not _letter_ok(name):
            raise ParseError(f"bad letter name {name!r}", at)
        if name in alphabet:
            raise ParseError(f"duplicate letter {name!r}", at)
        alphabet.append(name)
        kind, val, at = p._peek()
        if val == ",":
            p._next()
            continue
        break
    p.expect("|")
    alpha = tuple(alphabet)

    def parse_word() -> Word:
        letters: list[str] = []
        while True:
            tok, at = p.ident()
            expanded = _expand_atom(tok, at, alpha)
            kind, val, _ = p._peek()
            if val == "^":
                p._next()
                k, v, at2 = p._next()
                if k != "int" or int(v) < 1:
                    raise ParseError("power must be a positive integer", at2)
                expanded = expanded * int(v)
            letters.extend(expanded)
            kind, val, _ = p._peek()
            if val == ".":
                p._next()
                continue
            break
        return tuple(letters)

    relations: list[tuple[Word, Word]] = []
    while True:
        lhs = parse_word()
        p.expect("=")
        rhs = parse_word()
        relations.append((lhs, rhs))
        kind, val, _ = p._peek()
        if val == ",":
            p._next()
            continue
        break
    p.expect(">")
    kind, val, at = p._peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", at)

    pres = SemigroupPresentation(alpha, tuple(relations))
    bad = validate_presentation(pres)
    if bad:
        raise ParseError("; ".join(str(v) for v in bad))
    return pres


def serialize_presentation(p: SemigroupPresentation) -> str:
    rels = ", ".join(f"{word_str(l)}={word_str(r)}" for l, r in p.relations)
    return f"<{','.join(p.alphabet)} | {rels}>"


def parse_word(text: str, p: SemigroupPresentation) -> Word:
    """Parse a baseword in the presentation's alphabet (same atom grammar)."""
    parser = _Parser(text)
    letters: list[str] = []
    while True:
        tok, at = parser.ident()
        expanded = _expand_atom(tok, at, p.alphabet)
        kind, val, _ = parser._peek()
        if val == "^":
            parser._next()
            k, v, at2 = parser._next()
            if k != "int" or int(v) < 1:
                raise ParseError("power must be a positive integer", at2)
            expanded = expanded * int(v)
        letters.extend(expanded)
        kind, val, _ = parser._peek()
        if val == ".":
            parser._next()
            continue
        break
    kind, val, at = parser._peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", at)
    if not letters:
        raise ParseError("empty word")
    return tuple(letters)


# --- builtin fixtures -------------------------------------------------------

def builtin_presentation(name: str, params: list[int] | tuple[int, ...] = ()) -> tuple[SemigroupPresentation, Word]:
    """Named presentations from the example zoo, with their basewords.

    thompson            -> (<x | x=x.x>, x)
    higman(n, r)        -> (<x | x=x^n>, x^r)
    quasi_auto(n, r, p) -> (<x,a | x=x^n.a>, x^r.a^p)
    houghton(n, p)      -> (<a,r,x1..xn | r=x1...xn, xi=a.xi>, r.a^p)
    commuting_abc       -> (<a,b,c | ab=ba, ac=ca, bc=cb>, abc)
    """
    params = tuple(params)

    def need(k: int):
        if len(params) != k:
            raise ValueError(f"builtin {name!r} takes {k} parameter(s), got {len(params)}")

    if name == "thompson":
        need(0)
        pres = SemigroupPresentation(("x",), ((("x",), ("x", "x")),))
        return pres, ("x",)
    if name == "higman":
        need(2)
        n, r = params
        if n < 2 or r < 1:
            raise ValueError("higman requires n >= 2, r >= 1")
        pres = SemigroupPresentation(("x",), ((("x",), ("x",) * n),))
        return pres, ("x",) * r
    if name == "quasi_auto":
        need(3)
        n, r, p = params
        if n < 2 or r < 1 or p < 0:
            raise ValueError("quasi_auto requires n >= 2, r >= 1, p >= 0")
        pres = SemigroupPresentation(("x", "a"), ((("x",), ("x",) * n + ("a",)),))
        return pres, ("x",) * r + ("a",) * p
    if name == "houghton":
        need(2)
        n, p = params
        if n < 1 or p < 0:
            raise ValueError("houghton requires n >= 1, p >= 0")
        xs = tuple(f"x{i}" for i in range(1, n + 1))
        rels = [(("r",), xs)]
        rels.extend(((x,), ("a", x)) for x in xs)
        pres = SemigroupPresentation(("a", "r") + xs, tuple(rels))
        return pres, ("r",) + ("a",) * p
    if name == "commuting_abc":
        need(0)
        pres = SemigroupPresentation(
            ("a", "b", "c"),
            (
                (("a", "b"), ("b", "a")),
                (("a", "c"), ("c", "a")),
                (("b", "c"), ("c", "b")),
            ),
        )
        return pres, ("a", "b", "c")
    raise ValueError(f"unknown builtin presentation {name!r}")


BUILTIN_NAMES = ("thompson", "higman", "quasi_auto", "houghton", "commuting_abc")
