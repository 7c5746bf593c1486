"""Exact symbolic arithmetic over prefix codes on an n-letter alphabet.

Three layers share one string representation (words are strings of digit
characters ``'1'..'n'``):

* ``PolyElement`` — pairs ``(x, y)`` standing for the partial shift that
  reads a ``y``-prefix and writes an ``x``-prefix, with a multiplicative
  zero; multiplication is by prefix overlap.
* ``CnElement`` — finite orthogonal families of such pairs, the orthogonal
  completion: domains and ranges are antichains under the prefix order,
  canonical form merges every complete sibling family.  Units are exactly
  the pairs of maximal prefix codes (the finitary tree-pair group).
* ``CuntzArrow`` — arrows ``(x w, |x|-|y|, y w)`` of the shift groupoid
  over eventually periodic infinite words ``u v^w``, which are the
  finitely-representable points; composition is exact on normal forms.

``finite_depth_oracle`` expands an element into literal truncated arrows,
giving an independent semantics against which products and joins are
cross-checked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .config import DEFAULT_LIMITS
from .errors import BoundError, ParseError, StructureError

ALPHABET = "123456789"


def letters(n: int) -> str:
    return ALPHABET[:n]


def all_words(n: int, length: int):
    """Every word of exactly the given length, lexicographically."""
    for tup in iter_product(letters(n), repeat=length):
        yield "".join(tup)


# -- the polycyclic monoid ---------------------------------------------------------


@dataclass(frozen=True)
class PolyElement:
    """A pair ``x y^-1`` over the free monoid, or the zero element
    (both components None)."""

    x: str | None
    y: str | None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise StructureError("zero must have both components empty")

    @classmethod
    def zero(cls) -> "PolyElement":
        return cls(None, None)

    @classmethod
    def one(cls) -> "PolyElement":
        return cls("", "")

    @property
    def is_zero(self) -> bool:
        return self.x is None

    @property
    def is_idempotent(self) -> bool:
        return self.is_zero or self.x == self.y

    def inverse(self) -> "PolyElement":
        if self.is_zero:
            return self
        return PolyElement(self.y, self.x)

    def __str__(self) -> str:
        return format_poly(self)


def poly_mul(a: PolyElement, b: PolyElement) -> PolyElement:
    """Prefix-overlap product: (x, y)(u, v) joins when u extends y or y
    extends u, and is zero otherwise."""
    if a.is_zero or b.is_zero:
        return PolyElement.zero()
    x, y, u, v = a.x, a.y, b.x, b.y
    if u.startswith(y):
        return PolyElement(x + u[len(y):], v)
    if y.startswith(u):
        return PolyElement(x, v + y[len(u):])
    return PolyElement.zero()


def generator(i: int) -> PolyElement:
    """The i-th generator (1-based): the pair (a_i, empty)."""
    return PolyElement(ALPHABET[i - 1], "")


# -- the orthogonal completion ---------------------------------------------------------


def _prefix_incomparable(a: str, b: str) -> bool:
    return not (a.startswith(b) or b.startswith(a))


def _canonical_pairs(n: int, pairs) -> tuple[tuple[str, str], ...]:
    """Merge complete sibling families until none remain, then sort."""
    current = set(pairs)
    full = set(letters(n))
    while True:
        by_stem: dict[tuple[str, str], set] = {}
        for x, y in current:
            if x and y and x[-1] == y[-1]:
                by_stem.setdefault((x[:-1], y[:-1]), set()).add(x[-1])
        merged = False
        for (sx, sy), present in by_stem.items():
            if present == full:
                for c in full:
                    current.discard((sx + c, sy + c))
                current.add((sx, sy))
                merged = True
        if not merged:
            return tuple(sorted(current))


@dataclass(frozen=True)
class CnElement:
    """A finite orthogonal join of shift pairs, in canonical form.

    Use :meth:`make` to build one from an arbitrary pair family; the bare
    constructor insists the family is already canonical.
    """

    n: int
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not DEFAULT_LIMITS.alphabet_min <= self.n <= DEFAULT_LIMITS.alphabet_max:
            raise BoundError(
                f"alphabet size must lie in "
                f"[{DEFAULT_LIMITS.alphabet_min}, {DEFAULT_LIMITS.alphabet_max}]")
        ok = letters(self.n)
        for x, y in self.pairs:
            if any(c not in ok for c in x + y):
                raise StructureError(f"letter out of alphabet in ({x!r}, {y!r})")
        if self.pairs != _canonical_pairs(self.n, self.pairs):
            raise StructureError("pair family is not canonical")
        items = list(self.pairs)
        for i, (x, y) in enumerate(items):
            for u, v in items[i + 1:]:
                if not (_prefix_incomparable(x, u) and _prefix_incomparable(y, v)):
                    raise StructureError(
                        f"pairs ({x!r},{y!r}) and ({u!r},{v!r}) are not orthogonal")

    @classmethod
    def make(cls, n: int, pairs) -> "CnElement":
        return cls(n, _canonical_pairs(n, pairs))

    @classmethod
    def zero(cls, n: int) -> "CnElement":
        return cls(n, ())

    @classmethod
    def one(cls, n: int) -> "CnElement":
        return cls(n, (("", ""),))

    @property
    def is_zero(self) -> bool:
        return not self.pairs

    def max_length(self) -> int:
        return max((max(len(x), len(y)) for x, y in self.pairs), default=0)

    def inverse(self) -> "CnElement":
        return CnElement.make(self.n, [(y, x) for x, y in self.pairs])

    def __str__(self) -> str:
        return format_cn(self)


def embed_poly(n: int, a: PolyElement) -> CnElement:
    """The injective homomorphism sending x y^-1 to the singleton family."""
    if a.is_zero:
        return CnElement.zero(n)
    return CnElement.make(n, [(a.x, a.y)])


def cn_mul(a: CnElement, b: CnElement) -> CnElement:
    """Pairwise prefix products with zeros dropped, then canonicalized."""
    if a.n != b.n:
        raise StructureError("alphabet mismatch")
    out = set()
    for x, y in a.pairs:
        for u, v in b.pairs:
            p = poly_mul(PolyElement(x, y), PolyElement(u, v))
            if not p.is_zero:
                out.add((p.x, p.y))
    return CnElement.make(a.n, out)


def cn_join(a: CnElement, b: CnElement):
    """Least upper bound when the two families fit together as one partial
    shift; None when they are incompatible.

    Cross pairs with comparable domains must refine consistently (the finer
    one is dropped); comparable ranges over incomparable domains can never
    agree.
    """
    if a.n != b.n:
        raise StructureError("alphabet mismatch")
    keep = set(a.pairs) | set(b.pairs)
    for p in a.pairs:
        x, y = p
        for q in b.pairs:
            if p == q:
                continue
            u, v = q
            if v.startswith(y):
                if u != x + v[len(y):]:
                    return None
                keep.discard(q)
            elif y.startswith(v):
                if x != u + y[len(v):]:
                    return None
                keep.discard(p)
            elif not (_prefix_incomparable(x, u) and _prefix_incomparable(y, v)):
                return None
    return CnElement.make(a.n, keep)


def cn_join_all(parts) -> CnElement:
    parts = list(parts)
    acc = parts[0]
    for p in parts[1:]:
        acc = cn_join(acc, p)
        if acc is None:
            raise StructureError("orthogonal family failed to join")
    return acc


def is_maximal_prefix_code(n: int, code) -> bool:
    """Pairwise prefix-incomparable and complete: the Kraft sum over an
    n-ary alphabet is exactly one."""
    code = list(code)
    if not code:
        return False
    for i, a in enumerate(code):
        for b in code[i + 1:]:
            if not _prefix_incomparable(a, b):
                return False
    return sum(Fraction(1, n ** len(w)) for w in code) == 1


def is_unit(a: CnElement) -> bool:
    """Membership in the group of units: both coordinate families are
    maximal prefix codes."""
    return (is_maximal_prefix_code(a.n, [x for x, _ in a.pairs])
            and is_maximal_prefix_code(a.n, [y for _, y in a.pairs]))


def is_unit_definitional(a: CnElement) -> bool:
    """The defining test: A A^-1 = A^-1 A = 1 under the completed product."""
    one = CnElement.one(a.n)
    inv = a.inverse()
    return cn_mul(a, inv) == one and cn_mul(inv, a) == one


# -- the finite-depth oracle ---------------------------------------------------------


def _expand_pairs(n: int, pairs, depth: int) -> frozenset:
    out = set()
    for x, y in pairs:
        for tail in all_words(n, depth - len(y)):
            out.add((x + tail, y + tail))
    return frozenset(out)


def finite_depth_oracle(a: CnElement, depth: int) -> frozenset:
    """All arrows of the family truncated to source words of exactly the
    given depth, as (target, source) string pairs.  The integer component
    is the length difference, so it is left implicit."""
    if depth < a.max_length():
        raise BoundError(f"depth {depth} is below the longest string in the family")
    return _expand_pairs(a.n, a.pairs, depth)


def oracle_agrees_on_product(a: CnElement, b: CnElement) -> bool:
    """Compose the two truncated-arrow sets by literal prefix matching and
    compare with the expansion of the computed product."""
    depth = a.max_length() + b.max_length() + 1
    composed = set()
    for t2, s2 in finite_depth_oracle(b, depth):
        for x, y in a.pairs:
            if t2.startswith(y):
                composed.add((x + t2[len(y):], s2))
                break
    return composed == set(finite_depth_oracle(cn_mul(a, b), depth))


def oracle_agrees_on_join(a: CnElement, b: CnElement) -> bool:
    """The union of truncated-arrow sets is single-valued and injective
    exactly when the join exists; when it does, expansions agree.

    All sources are truncated to one depth, so a source collision is plain
    equality, but targets keep their length shifts: two distinct arrows
    with prefix-comparable targets always share a range point.
    """
    depth = max(a.max_length(), b.max_length(), 0) + 1
    union = finite_depth_oracle(a, depth) | finite_depth_oracle(b, depth)
    collision = False
    by_source: dict[str, str] = {}
    for t, s in union:
        if by_source.setdefault(s, t) != t:
            collision = True
            break
    if not collision:
        ordered = sorted(union)
        for (t1, _), (t2, _) in zip(ordered, ordered[1:]):
            if t2.startswith(t1):
                collision = True
                break
    joined = cn_join(a, b)
    if collision:
        return joined is None
    return joined is not None and finite_depth_oracle(joined, depth) == union


# -- eventually periodic words ------------------------------------------------------


def _primitive_root(word: str) -> str:
    for d in range(1, len(word) + 1):
        if len(word) % d == 0 and word == word[:d] * (len(word) // d):
            return word[:d]
    return word


@dataclass(frozen=True)
class EvPeriodicWord:
    """The infinite word pre . period^infinity in normal form: the period is
    primitive and the preperiod cannot be shortened by rotating the period.
    Normal forms are equal exactly when the infinite words are."""

    pre: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise StructureError("period must be non-empty")
        if _primitive_root(self.period) != self.period:
            raise StructureError("period is not primitive")
        if self.pre and self.pre[-1] == self.period[-1]:
            raise StructureError("preperiod can be shortened")

    @classmethod
    def make(cls, pre: str, period: str) -> "EvPeriodicWord":
        if not period:
            raise StructureError("period must be non-empty")
        period = _primitive_root(period)
        while pre and pre[-1] == period[-1]:
            period = period[-1] + period[:-1]
            pre = pre[:-1]
        return cls(pre, period)

    def prefix(self, length: int) -> str:
        if length <= len(self.pre):
            return self.pre[:length]
        reps = (length - len(self.pre)) // len(self.period) + 1
        return (self.pre + self.period * reps)[:length]

    def shift(self, count: int) -> "EvPeriodicWord":
        """Drop the first ``count`` letters."""
        if count <= len(self.pre):
            return EvPeriodicWord.make(self.pre[count:], self.period)
        offset = (count - len(self.pre)) % len(self.period)
        return EvPeriodicWord.make("", self.period[offset:] + self.period[:offset])

    def prepend(self, word: str) -> "EvPeriodicWord":
        return EvPeriodicWord.make(word + self.pre, self.period)

    def __str__(self) -> str:
        return format_ev(self)


def ev_words_agree_to(a: EvPeriodicWord, b: EvPeriodicWord, length: int) -> bool:
    return a.prefix(length) == b.prefix(length)


# -- the shift groupoid over eventually periodic words ----------------------------------


@dataclass(frozen=True)
class CuntzArrow:
    """An arrow (x w, |x|-|y|, y w): target prefix, stored length shift,
    source prefix and the shared eventually periodic tail.  Canonical form
    absorbs every common trailing letter of x and y into the tail, so the
    representation is minimal and equality is structural."""

    target_prefix: str
    shift: int
    source_prefix: str
    tail: EvPeriodicWord

    def __post_init__(self):
        if self.shift != len(self.target_prefix) - len(self.source_prefix):
            raise StructureError("stored shift disagrees with the prefix lengths")
        x, y = self.target_prefix, self.source_prefix
        if x and y and x[-1] == y[-1]:
            raise StructureError("arrow representation is not maximally absorbed")

    @classmethod
    def make(cls, x: str, y: str, tail: EvPeriodicWord) -> "CuntzArrow":
        while x and y and x[-1] == y[-1]:
            tail = tail.prepend(x[-1])
            x, y = x[:-1], y[:-1]
        return cls(x, len(x) - len(y), y, tail)

    @classmethod
    def identity(cls, word: EvPeriodicWord) -> "CuntzArrow":
        return cls("", 0, "", word)

    def source_word(self) -> EvPeriodicWord:
        return self.tail.prepend(self.source_prefix)

    def target_word(self) -> EvPeriodicWord:
        return self.tail.prepend(self.target_prefix)

    def inverse(self) -> "CuntzArrow":
        return CuntzArrow.make(self.source_prefix, self.target_prefix, self.tail)

    @property
    def is_identity(self) -> bool:
        return self.shift == 0 and not self.target_prefix and not self.source_prefix

    def __str__(self) -> str:
        return (f"({format_word(self.target_prefix)}|{format_ev(self.tail)}, "
                f"{self.shift}, {format_word(self.source_prefix)}|{format_ev(self.tail)})")


def cuntz_compose(g: CuntzArrow, h: CuntzArrow):
    """Defined exactly when the source word of g is the target word of h;
    the integer components add.  Returns None when undefined."""
    if g.source_word() != h.target_word():
        return None
    y, xh = g.source_prefix, h.target_prefix
    if xh.startswith(y):
        tail_piece = xh[len(y):]
        return CuntzArrow.make(g.target_prefix + tail_piece, h.source_prefix, h.tail)
    if y.startswith(xh):
        tail_piece = y[len(xh):]
        return CuntzArrow.make(g.target_prefix, h.source_prefix + tail_piece, g.tail)
    raise StructureError("prefixes of a shared word must be comparable")


# -- points of the groupoid as maximal filters of the polycyclic monoid -------------------


def ultrafilter_to_arrow(rep: PolyElement, tail_word: EvPeriodicWord) -> CuntzArrow:
    """Identify the maximal filter with representative x y^-1 over the point
    determined by the infinite word z with the groupoid arrow (x w, k, y w)
    where z = y w.  Demands that y is actually a prefix of z."""
    if rep.is_zero:
        raise StructureError("zero does not represent a filter")
    y = rep.y
    if tail_word.prefix(len(y)) != y:
        raise StructureError("representative source is not a prefix of the point word")
    return CuntzArrow.make(rep.x, y, tail_word.shift(len(y)))


def arrow_to_ultrafilter(g: CuntzArrow) -> tuple[PolyElement, EvPeriodicWord]:
    """The canonical representative pair and the point word of an arrow;
    mutually inverse with :func:`ultrafilter_to_arrow` on canonical data."""
    return PolyElement(g.target_prefix, g.source_prefix), g.source_word()


# -- text syntax -----------------------------------------------------------------------


_WORD_RE = re.compile(r"^(?:e|(?:a[1-9])+)$")
_EV_RE = re.compile(r"^(?P<pre>(?:e|(?:a[1-9])+)?)\((?P<per>e|(?:a[1-9])+)\)\^w$")


def format_word(w: str) -> str:
    return "e" if not w else "".join("a" + c for c in w)


def parse_word(text: str, n: int | None = None) -> str:
    text = text.strip()
    if not _WORD_RE.match(text):
        raise ParseError(f"malformed word {text!r}")
    word = "" if text == "e" else text[1::2]
    if n is not None and any(c not in letters(n) for c in word):
        raise ParseError(f"letter out of range in {text!r}")
    return word


def format_poly(p: PolyElement) -> str:
    if p.is_zero:
        return "0"
    return f"{format_word(p.x)}.{format_word(p.y)}*"


def parse_poly(text: str, n: int | None = None) -> PolyElement:
    text = text.strip()
    if text == "0":
        return PolyElement.zero()
    if not text.endswith("*") or "." not in text:
        raise ParseError(f"malformed pair {text!r}")
    left, right = text[:-1].split(".", 1)
    return PolyElement(parse_word(left, n), parse_word(right, n))


def format_cn(a: CnElement) -> str:
    inner = ", ".join(f"{format_word(x)}/{format_word(y)}" for x, y in a.pairs)
    return "{" + inner + "}"


def parse_cn(text: str, n: int) -> CnElement:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"malformed family {text!r}")
    body = text[1:-1].strip()
    if not body:
        return CnElement.zero(n)
    pairs = []
    for chunk in body.split(","):
        if chunk.count("/") != 1:
            raise ParseError(f"malformed pair {chunk.strip()!r}")
        x, y = chunk.split("/")
        pairs.append((parse_word(x, n), parse_word(y, n)))
    return CnElement.make(n, pairs)


def format_ev(w: EvPeriodicWord) -> str:
    head = format_word(w.pre) if w.pre else ""
    return f"{head}({format_word(w.period)})^w"


def parse_ev(text: str, n: int | None = None) -> EvPeriodicWord:
    match = _EV_RE.match(text.strip())
    if not match:
        raise ParseError(f"malformed eventually periodic word {text!r}")
    pre = parse_word(match["pre"], n) if match["pre"] else ""
    period = parse_word(match["per"], n)
    if not period:
        raise ParseError("period must be non-empty")
    return EvPeriodicWord.make(pre, period)


# -- seeded samplers ---------------------------------------------------------------------


def random_word(rng, n: int, max_len: int) -> str:
    return "".join(rng.choice(letters(n)) for _ in range(rng.randint(0, max_len)))


def random_poly(rng, n: int, max_len: int, zero_weight: float = 0.1) -> PolyElement:
    if rng.random() < zero_weight:
        return PolyElement.zero()
    return PolyElement(random_word(rng, n, max_len), random_word(rng, n, max_len))


def random_prefix_code(rng, n: int, splits: int) -> list[str]:
    """Leaves of a random n-ary tree grown by the given number of splits:
    always a maximal prefix code."""
    code = [""]
    for _ in range(splits):
        stem = code.pop(rng.randrange(len(code)))
        code.extend(stem + c for c in letters(n))
    return code


def random_unit(rng, n: int, max_splits: int) -> CnElement:
    splits = rng.randint(0, max_splits)
    targets = random_prefix_code(rng, n, splits)
    sources = random_prefix_code(rng, n, splits)
    rng.shuffle(sources)
    return CnElement.make(n, zip(targets, sources))


def random_cn_element(rng, n: int, max_splits: int) -> CnElement:
    """A random orthogonal family: paired subsets of two equal-size maximal
    prefix codes.  Complete subsets give units, proper ones do not."""
    splits = rng.randint(0, max_splits)
    targets = random_prefix_code(rng, n, splits)
    sources = random_prefix_code(rng, n, splits)
    rng.shuffle(sources)
    size = rng.randint(0, len(targets))
    return CnElement.make(n, list(zip(targets, sources))[:size])


def random_ev_word(rng, n: int, max_pre: int, max_period: int) -> EvPeriodicWord:
    period = "".join(rng.choice(letters(n)) for _ in range(rng.randint(1, max_period)))
    return EvPeriodicWord.make(random_word(rng, n, max_pre), period)


def random_arrow(rng, n: int, max_len: int, max_pre: int, max_period: int) -> CuntzArrow:
    return CuntzArrow.make(random_word(rng, n, max_len), random_word(rng, n, max_len),
                           random_ev_word(rng, n, max_pre, max_period))
