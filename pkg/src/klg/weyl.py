"""Combinatorics of the symmetric group S_m and the hyperoctahedral group C_n.

Conventions used throughout the package (fixed here once, to avoid
transposition bugs):

* Permutations are 1-based: ``w(i)`` is the image of ``i`` for
  ``i = 1, .., m``, stored as a tuple in one-line notation.
* ``C_n`` is realized inside ``S_{2n}`` as the permutations ``v`` with
  ``v(2n+1-i) = 2n+1 - v(i)``.  Its simple reflections are ``c_0``
  (transposing ``n`` and ``n+1``) and ``c_k = s_{n-k} s_{n+k}`` for
  ``k >= 1``.
* Matrices and diagrams use matrix coordinates: row 1 at the top, and the
  permutation matrix ``P(w)`` has its 1s in positions ``(w(j), j)``.
* Rothe diagrams are the boxes missed by all hooks, where each hook extends
  east and *north* from its dot (not south).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal, NamedTuple, Optional, Union


class Permutation:
    """A permutation of {1..m} in one-line notation.

    >>> Permutation((2, 1, 4, 3))(1)
    2
    """

    __slots__ = ("image",)

    def __init__(self, image):
        image = tuple(image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(image)}: {image!r}")
        object.__setattr__(self, "image", image)

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, val in enumerate(self.image, start=1):
            inv[val - 1] = i
        return Permutation(inv)

    def length(self) -> int:
        """Coxeter length in S_m, i.e. the number of inversions."""
        img = self.image
        return sum(
            1
            for i in range(len(img))
            for j in range(i + 1, len(img))
            if img[i] > img[j]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        if self.size <= 9:
            return f"Permutation({''.join(map(str, self.image))})"
        return f"Permutation({','.join(map(str, self.image))})"

    @staticmethod
    def identity(m: int) -> "Permutation":
        return Permutation(range(1, m + 1))

    @staticmethod
    def longest(m: int) -> "Permutation":
        return Permutation(range(m, 0, -1))


class CnElement:
    """An element of C_n, stored as its one-line notation in S_{2n}."""

    __slots__ = ("perm", "n")

    def __init__(self, image, n: Optional[int] = None):
        perm = image if isinstance(image, Permutation) else Permutation(image)
        if n is None:
            if perm.size % 2:
                raise ValueError("C_n elements live in S_{2n}; odd size given")
            n = perm.size // 2
        if perm.size != 2 * n:
            raise ValueError(f"size {perm.size} does not match rank {n}")
        img = perm.image
        for i in range(1, n + 1):
            if img[2 * n - i] != 2 * n + 1 - img[i - 1]:
                raise ValueError(f"{img} violates v(2n+1-i) = 2n+1-v(i)")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "n", n)

    @property
    def image(self):
        return self.perm.image

    def __call__(self, i: int) -> int:
        return self.perm.image[i - 1]

    def __mul__(self, other: "CnElement") -> "CnElement":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        return CnElement(compose(self.perm, other.perm), self.n)

    def inverse(self) -> "CnElement":
        return CnElement(self.perm.inverse(), self.n)

    def length(self) -> int:
        """Coxeter length in C_n (not in the ambient S_{2n})."""
        return _length_c(self.image, self.n)

    def right_gen(self, k: int) -> "CnElement":
        """The product v * c_k, done by swapping positions."""
        return CnElement(_apply_right_gen(self.image, k, self.n), self.n)

    def left_gen(self, k: int) -> "CnElement":
        """The product c_k * v, done by swapping values."""
        return CnElement(_apply_left_gen(self.image, k, self.n), self.n)

    def is_ascent(self, k: int) -> bool:
        """True iff v * c_k is longer than v."""
        n = self.n
        return self.image[n + k - 1] < self.image[n + k]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CnElement)
            and self.n == other.n
            and self.image == other.image
        )

    def __hash__(self) -> int:
        return hash((self.n, self.image))

    def __repr__(self) -> str:
        return f"CnElement({''.join(map(str, self.image)) if self.n <= 4 else self.image})"

    @staticmethod
    def identity(n: int) -> "CnElement":
        return CnElement(Permutation.identity(2 * n), n)

    @staticmethod
    def longest(n: int) -> "CnElement":
        return CnElement(Permutation.longest(2 * n), n)


Element = Union[Permutation, CnElement]


@dataclass(frozen=True)
class Word:
    """A word in simple generators: s_k (flavor "A") or c_k (flavor "C")."""

    letters: tuple
    flavor: Literal["A", "C"]
    size: int  # m for flavor "A", n for flavor "C"

    def __post_init__(self):
        lo, hi = (1, self.size - 1) if self.flavor == "A" else (0, self.size - 1)
        for a in self.letters:
            if not lo <= a <= hi:
                raise ValueError(f"letter {a} out of range [{lo}, {hi}]")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)


class EssentialBox(NamedTuple):
    p: int
    q: int
    rank: int


def compose(u: Permutation, v: Permutation) -> Permutation:
    """(u * v)(i) = u(v(i))."""
    if u.size != v.size:
        raise ValueError("size mismatch")
    ui = u.image
    return Permutation(tuple(ui[x - 1] for x in v.image))


def _apply_right_gen(img: tuple, k: int, n: int):
    # v * c_k swaps positions n+k, n+k+1 and (for k >= 1) n-k, n-k+1.
    lst = list(img)
    lst[n + k - 1], lst[n + k] = lst[n + k], lst[n + k - 1]
    if k != 0:
        lst[n - k - 1], lst[n - k] = lst[n - k], lst[n - k - 1]
    return tuple(lst)


def _apply_left_gen(img: tuple, k: int, n: int):
    # c_k * v swaps values n+k, n+k+1 and (for k >= 1) n-k, n-k+1.
    a, b = n + k, n + k + 1
    swap = {a: b, b: a}
    if k != 0:
        swap[n - k] = n - k + 1
        swap[n - k + 1] = n - k
    return tuple(swap.get(x, x) for x in img)


def generator_index_for_pair(x: int, n: int) -> int:
    """Index k of the generator c_k transposing the adjacent pair {x, x+1}."""
    if not 1 <= x < 2 * n:
        raise ValueError(f"pair {{{x}, {x + 1}}} out of range for rank {n}")
    return x - n if x >= n else n - x


def embed_generator(k: int, n: int) -> CnElement:
    """The simple reflection c_k of C_n as a permutation of {1..2n}."""
    if not 0 <= k < n:
        raise ValueError(f"generator index {k} out of range for rank {n}")
    return CnElement(_apply_right_gen(tuple(range(1, 2 * n + 1)), k, n), n)


def _length_c(img: tuple, n: int) -> int:
    # Signed-permutation length: sigma(i) = v(n+i)-n if positive side,
    # else -(n+1-v(n+i)); length = inv(sigma) + sum of |negative entries|.
    sigma = []
    for i in range(1, n + 1):
        x = img[n + i - 1]
        sigma.append(x - n if x > n else -(n + 1 - x))
    inv = sum(
        1
        for i in range(n)
        for j in range(i + 1, n)
        if sigma[i] > sigma[j]
    )
    return inv + sum(-s for s in sigma if s < 0)


def length(x: Element) -> int:
    return x.length()


def descents(v: CnElement) -> tuple:
    return tuple(k for k in range(v.n) if not v.is_ascent(k))


def ascents(v: CnElement) -> tuple:
    return tuple(k for k in range(v.n) if v.is_ascent(k))


def ascents_descents(v: CnElement) -> tuple:
    """Partition of the generator indices {0..n-1} into (ascents, descents)."""
    return ascents(v), descents(v)


def last_ascent(v: CnElement) -> Optional[int]:
    """The maximal k with l(v c_k) > l(v); None exactly when v = w_0."""
    for k in range(v.n - 1, -1, -1):
        if v.is_ascent(k):
            return k
    return None


def reduced_word(v: Element) -> Word:
    """A deterministic reduced word for v.

    The rule: repeatedly strip the smallest-index right descent.  The letters
    are emitted so that multiplying them left to right recovers v.
    """
    if isinstance(v, CnElement):
        n = v.n
        img = v.image
        collected = []
        ident = tuple(range(1, 2 * n + 1))
        while img != ident:
            for k in range(n):
                if img[n + k - 1] > img[n + k]:
                    collected.append(k)
                    img = _apply_right_gen(img, k, n)
                    break
        return Word(tuple(reversed(collected)), "C", n)
    m = v.size
    img = v.image
    collected = []
    ident = tuple(range(1, m + 1))
    while img != ident:
        for k in range(1, m):
            if img[k - 1] > img[k]:
                collected.append(k)
                lst = list(img)
                lst[k - 1], lst[k] = lst[k], lst[k - 1]
                img = tuple(lst)
                break
    return Word(tuple(reversed(collected)), "A", m)


def _bruhat_lower_set_c(v: CnElement) -> frozenset:
    return _bruhat_lower_set_c_cached(v.image, v.n)


@lru_cache(maxsize=None)
def _bruhat_lower_set_c_cached(v_img: tuple, n: int) -> frozenset:
    # Products of reduced subwords of a fixed reduced word for v.  Growing a
    # subword keeps it reduced iff each new letter increases length, so the
    # reachable set below is exactly {u : u <=_Br v}.
    word = reduced_word(CnElement(v_img, n))
    reach = {tuple(range(1, 2 * n + 1))}
    for k in word.letters:
        extra = set()
        for img in reach:
            nxt = _apply_right_gen(img, k, n)
            if img[n + k - 1] < img[n + k]:
                extra.add(nxt)
        reach |= extra
    return frozenset(reach)


@lru_cache(maxsize=None)
def _bruhat_lower_set_a_cached(v_img: tuple) -> frozenset:
    m = len(v_img)
    word = reduced_word(Permutation(v_img))
    reach = {tuple(range(1, m + 1))}
    for k in word.letters:
        extra = set()
        for img in reach:
            if img[k - 1] < img[k]:
                lst = list(img)
                lst[k - 1], lst[k] = lst[k], lst[k - 1]
                extra.add(tuple(lst))
        reach |= extra
    return frozenset(reach)


def bruhat_leq(u: Element, v: Element) -> bool:
    """u <= v in Bruhat order, via the subword criterion."""
    if isinstance(u, CnElement) != isinstance(v, CnElement):
        raise ValueError("elements from different groups")
    if u.length() > v.length():
        return False
    if isinstance(u, CnElement):
        if u.n != v.n:
            raise ValueError("rank mismatch")
        return u.image in _bruhat_lower_set_c_cached(v.image, v.n)
    if u.size != v.size:
        raise ValueError("size mismatch")
    return u.image in _bruhat_lower_set_a_cached(v.image)


def is_123_avoiding(x: Element) -> bool:
    """True iff the one-line notation has no increasing subsequence of length 3."""
    img = x.image
    m = len(img)
    for i, j, k in itertools.combinations(range(m), 3):
        if img[i] < img[j] < img[k]:
            return False
    return True


@lru_cache(maxsize=None)
def _weak_upset_of_square(n: int) -> frozenset:
    # All v with v >= square_word in two-sided weak order, by upward BFS
    # along length-increasing one-sided multiplications.
    from klg.symcell import square_word

    start = square_word(n)
    seen = {start.image}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            lx = x.length()
            for k in range(n):
                for y in (x.right_gen(k), x.left_gen(k)):
                    if y.length() == lx + 1 and y.image not in seen:
                        seen.add(y.image)
                        nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def two_sided_weak_geq_square(v: CnElement) -> bool:
    """v >= square_word in two-sided weak order (length-additive factorization)."""
    return v.image in _weak_upset_of_square(v.n)


def rothe_diagram(w: Element) -> frozenset:
    """D(w) = {(w(j), i) : i < j and w(i) < w(j)}, in matrix coordinates."""
    img = w.image
    m = len(img)
    return frozenset(
        (img[j - 1], i)
        for i in range(1, m + 1)
        for j in range(i + 1, m + 1)
        if img[i - 1] < img[j - 1]
    )


def rank_function(w: Element, p: int, q: int) -> int:
    """Number of 1s of P(w) weakly southwest of (p, q): |{i <= q : w(i) >= p}|."""
    img = w.image
    m = len(img)
    if not (1 <= p <= m and 1 <= q <= m):
        raise ValueError(f"({p}, {q}) out of range for size {m}")
    return sum(1 for i in range(q) if img[i] >= p)


def essential_set_A(w: Element) -> tuple:
    """Northeast corners of the connected components of D(w), with ranks."""
    diag = rothe_diagram(w)
    boxes = [
        EssentialBox(p, q, rank_function(w, p, q))
        for (p, q) in diag
        if (p - 1, q) not in diag and (p, q + 1) not in diag
    ]
    return tuple(sorted(boxes, key=lambda b: (b.q, b.p)))


def essential_set_C(w: CnElement) -> tuple:
    """The type C reduction of the essential set.

    Keeps the lower box of each mirrored pair (p >= n+1) and drops boxes whose
    rank condition is implied by that of the mirror column.
    """
    n = w.n
    ess_a = essential_set_A(w)
    positions = {(b.p, b.q) for b in ess_a}
    kept = []
    for b in ess_a:
        if b.p < n + 1:
            continue
        if b.q >= n + 1 and (b.p, 2 * n - b.q) in positions:
            if not rank_function(w, b.p, 2 * n - b.q) > b.rank + n - b.q:
                continue
        kept.append(b)
    return tuple(sorted(kept, key=lambda b: (b.q, b.p)))


def all_cn(n: int) -> Iterator[CnElement]:
    """All 2^n * n! elements of C_n, in a deterministic order."""
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((False, True), repeat=n):
            # the one-line is determined by positions n+1..2n
            right = [n + x if not neg else n + 1 - x for x, neg in zip(perm, signs)]
            left = [2 * n + 1 - x for x in reversed(right)]
            yield CnElement(tuple(left + right), n)


def all_small_patch(n: int) -> tuple:
    """All 123-avoiding elements of C_n (the small-patch opposite cells)."""
    return tuple(v for v in all_cn(n) if is_123_avoiding(v))


def permutation_to_json(w: Element) -> list:
    return list(w.image)


def diagram_to_json(diag: frozenset) -> list:
    return [list(box) for box in sorted(diag)]


def essential_boxes_to_json(boxes) -> list:
    return [{"p": b.p, "q": b.q, "rank": b.rank} for b in boxes]
