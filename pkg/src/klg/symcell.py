"""Small-patch coordinates: factorizations through the square word, the generic
partial-symmetric matrix, torus weights, and Bott-Samelson matrices.

A small patch is indexed by a 123-avoiding v in C_n.  Such a v factors as
``v = u_l * square_word * u_r`` with lengths adding; the factorization is
encoded by the increasing position sequences ``a`` (left-to-right minima,
``a_i = u_r^{-1}(i)``) and ``b`` (right-to-left maxima, ``b_i = 2n+1 -
a_{n+1-i}``).  The generic matrix then carries the coordinate z_ij at the two
positions ``(v(b_{n+1-j}), a_i)`` and ``(v(b_{n+1-i}), a_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from klg import polyring
from klg.polyring import Polynomial, Ring, lex_diag_order, named, zvar
from klg.weyl import (
    CnElement,
    Permutation,
    Word,
    embed_generator,
    generator_index_for_pair,
    is_123_avoiding,
    rothe_diagram,
)


class NotSmallPatchError(ValueError):
    """Raised when an operation needs a 123-avoiding group element."""


def square_word(n: int) -> CnElement:
    """The element whose permutation matrix is two antidiagonal n-blocks."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    img = tuple(range(n, 0, -1)) + tuple(range(2 * n, n, -1))
    return CnElement(img, n)


@dataclass(frozen=True)
class Factorization:
    """v = u_l * square_word * u_r with l(v) = l(u_l) + l(square) + l(u_r)."""

    v: CnElement
    u_l: CnElement
    u_r: CnElement
    a_seq: tuple
    b_seq: tuple

    @property
    def n(self) -> int:
        return self.v.n

    def validate(self) -> None:
        n = self.n
        sq = square_word(n)
        if self.u_l * sq * self.u_r != self.v:
            raise ValueError("u_l * square * u_r does not multiply to v")
        if (
            self.u_l.length() + sq.length() + self.u_r.length()
            != self.v.length()
        ):
            raise ValueError("factorization lengths do not add")
        ur_inv = self.u_r.inverse()
        if tuple(ur_inv(i) for i in range(1, n + 1)) != self.a_seq:
            raise ValueError("a_i != u_r^{-1}(i)")
        if tuple(2 * n + 1 - self.a_seq[n - i] for i in range(1, n + 1)) != self.b_seq:
            raise ValueError("b_i != 2n+1-a_{n+1-i}")

    def shift(self, k: int) -> "Factorization":
        """The induced factorization of v*c_k for an ascent c_k (u_l unchanged)."""
        if not self.v.is_ascent(k):
            raise ValueError(f"c_{k} is not an ascent of v")
        ck = embed_generator(k, self.n)
        a = tuple(sorted(ck(x) for x in self.a_seq))
        b = tuple(sorted(ck(x) for x in self.b_seq))
        f = Factorization(self.v * ck, self.u_l, self.u_r * ck, a, b)
        f.validate()
        return f


def _left_to_right_minima(img: Sequence[int]) -> set:
    minima, best = set(), None
    for pos, val in enumerate(img, start=1):
        if best is None or val < best:
            minima.add(pos)
            best = val
    return minima


def factorize(v: CnElement, minima: Optional[Sequence[int]] = None) -> Factorization:
    """Factor a 123-avoiding v through the square word.

    The minima selection is deterministic: whenever both members j, 2n+1-j of
    a mirror pair are left-to-right minima, the one with j <= n is chosen.  An
    explicit increasing, mirror-free sequence of left-to-right minima may be
    supplied instead to realize a different factorization.
    """
    n = v.n
    if not is_123_avoiding(v):
        raise NotSmallPatchError(f"{v!r} is not 123-avoiding")
    ltr = _left_to_right_minima(v.image)
    if minima is None:
        chosen = []
        for j in range(1, n + 1):
            mirror = 2 * n + 1 - j
            if j in ltr:
                chosen.append(j)
            elif mirror in ltr:
                chosen.append(mirror)
            else:
                raise AssertionError("mirror pair without a left-to-right minimum")
        a = tuple(sorted(chosen))
    else:
        a = tuple(minima)
        if len(a) != n or list(a) != sorted(set(a)):
            raise ValueError("minima must be n strictly increasing positions")
        if not set(a) <= ltr:
            raise ValueError("positions must be left-to-right minima")
        if any(2 * n + 1 - x in a for x in a):
            raise ValueError("minima must avoid mirror pairs")
    b = tuple(2 * n + 1 - a[n - i] for i in range(1, n + 1))

    # alpha phase: left multiplications pushing the minima values down to
    # n, n-1, .., 1
    x = v
    alphas = []
    while True:
        j = None
        for k in range(n, 0, -1):
            if x(a[k - 1]) > n + 1 - k:
                j = k
                break
        if j is None:
            break
        val = x(a[j - 1])
        idx = generator_index_for_pair(val - 1, n)
        alphas.append(idx)
        x = x.left_gen(idx)

    # beta phase: right multiplications sliding the minima positions to 1..n
    cur_a, cur_b = list(a), list(b)
    betas = []
    while True:
        j = None
        for k in range(1, n + 1):
            if cur_a[k - 1] > k:
                j = k
                break
        if j is None:
            break
        pos = cur_a[j - 1] - 1
        if pos not in cur_b:
            raise AssertionError("expected a right-to-left maximum just left of a_j")
        k = cur_b.index(pos) + 1
        idx = generator_index_for_pair(pos, n)
        betas.append(idx)
        x = x.right_gen(idx)
        aj, ank = cur_a[j - 1], cur_a[n - k]
        bk, bnj = cur_b[k - 1], cur_b[n - j]
        cur_a[j - 1], cur_b[k - 1] = bk, aj
        cur_a[n - k], cur_b[n - j] = bnj, ank

    if x != square_word(n):
        raise AssertionError("reduction did not terminate at the square word")

    u_l = CnElement.identity(n)
    for idx in alphas:
        u_l = u_l * embed_generator(idx, n)
    u_r = CnElement.identity(n)
    for idx in reversed(betas):
        u_r = u_r * embed_generator(idx, n)
    f = Factorization(v, u_l, u_r, a, b)
    f.validate()
    return f


@dataclass(frozen=True)
class GenericMatrix:
    """The generic matrix of a small patch: 1s at (v(i), i), coordinates z_ij
    inside the diagram of v, zeros elsewhere.  Stored sparsely."""

    n: int
    ones: frozenset
    var_at: dict  # (row, col) -> (i, j)

    def entry(self, r: int, c: int):
        if (r, c) in self.ones:
            return 1
        return self.var_at.get((r, c), 0)

    def positions_of(self, i: int, j: int) -> tuple:
        return tuple(sorted(pos for pos, v in self.var_at.items() if v == (i, j)))

    def variables(self) -> tuple:
        return tuple(sorted(set(self.var_at.values())))

    def render_ascii(self) -> str:
        labels = {}
        width = 1
        for r in range(1, 2 * self.n + 1):
            for c in range(1, 2 * self.n + 1):
                e = self.entry(r, c)
                if e == 0:
                    labels[r, c] = "."
                elif e == 1:
                    labels[r, c] = "1"
                else:
                    labels[r, c] = f"z{e[0]}{e[1]}"
                width = max(width, len(labels[r, c]))
        return "\n".join(
            " ".join(labels[r, c].ljust(width) for c in range(1, 2 * self.n + 1)).rstrip()
            for r in range(1, 2 * self.n + 1)
        )

    def to_json(self) -> dict:
        vars_json = []
        for (i, j) in self.variables():
            vars_json.append(
                {"i": i, "j": j, "positions": [list(p) for p in self.positions_of(i, j)]}
            )
        return {
            "n": self.n,
            "ones": [list(p) for p in sorted(self.ones)],
            "vars": vars_json,
        }

    def transport(self, left: CnElement, right: CnElement) -> "GenericMatrix":
        """The matrix P(left) * M * P(right), tracking entries by position."""
        move = lambda r, c: (left(r), right.inverse()(c))
        return GenericMatrix(
            self.n,
            frozenset(move(r, c) for (r, c) in self.ones),
            {move(r, c): v for (r, c), v in self.var_at.items()},
        )


def generic_matrix(f: Factorization) -> GenericMatrix:
    n = f.n
    v, a, b = f.v, f.a_seq, f.b_seq
    ones = frozenset((v(i), i) for i in range(1, 2 * n + 1))
    var_at = {}
    diagram = rothe_diagram(v)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if a[i - 1] < b[n - j] and v(a[i - 1]) < v(b[n - j]):
                p1 = (v(b[n - j]), a[i - 1])
                p2 = (v(b[n - i]), a[j - 1])
                for pos in {p1, p2}:
                    if pos not in diagram:
                        raise AssertionError(f"variable position {pos} outside D(v)")
                    var_at[pos] = (i, j)
    return GenericMatrix(n, ones, var_at)


def variables(f: Factorization) -> tuple:
    """The coordinates z_ij of the patch, ascending in the diagonal lex order."""
    return generic_matrix(f).variables()


def weight(f: Factorization, z: tuple) -> tuple:
    """Torus weight u_l.e_i + u_l.e_j of the coordinate z = (i, j)."""
    if z not in set(variables(f)):
        raise ValueError(f"z{z[0]}{z[1]} is not a coordinate of this patch")
    i, j = z
    w = [0] * f.n
    for idx in (i, j):
        for pos, val in _act_on_basis(f.u_l, idx):
            w[pos - 1] += val
    return tuple(w)


def _act_on_basis(u: CnElement, i: int):
    """u.e_i as [(coordinate, +-1)]: -e_{n+1-u(n+i)} or +e_{u(n+i)-n}."""
    n = u.n
    x = u(n + i)
    if x <= n:
        return ((n + 1 - x, -1),)
    return ((x - n, 1),)


def canonical_Q(f: Factorization) -> Word:
    """The word (j - i over ascending coordinates); a reduced word for w_0*v."""
    letters = tuple(j - i for (i, j) in variables(f))
    n = f.n
    q = Word(letters, "C", n)
    prod = CnElement.identity(n)
    for k in letters:
        prod = prod * embed_generator(k, n)
    target = CnElement.longest(n) * f.v
    if prod != target or len(letters) != target.length():
        raise AssertionError("coordinate word failed to be reduced for w_0*v")
    return q


# -- Bott-Samelson coordinates -------------------------------------------------

_FAMILY = "abcdefgh"


def bott_samelson_variables(q: Word) -> tuple:
    """Parameter names in word order: k-th occurrence of letter l is '<fam>k'."""
    counts = {}
    out = []
    for letter in q.letters:
        counts[letter] = counts.get(letter, 0) + 1
        out.append(f"{_FAMILY[letter]}{counts[letter]}")
    return tuple(out)


def default_bott_samelson_order(q: Word) -> polyring.MonomialOrder:
    """Lex with variables ranked by reverse word position (last letter largest)."""
    return lex_diag_order(named_ranking=tuple(reversed(bott_samelson_variables(q))))


def _one_parameter_factor(ring: Ring, k: int, n: int, x: Polynomial) -> list:
    size = 2 * n
    m = [[ring.one() if r == c else ring.zero() for c in range(size)] for r in range(size)]

    def put_block(top: int, upper_right):
        # 2x2 block [[x, upper_right], [-upper_right, 0]] at rows/cols top, top+1
        r = top - 1
        m[r][r] = x
        m[r][r + 1] = ring.const(upper_right)
        m[r + 1][r] = ring.const(-upper_right)
        m[r + 1][r + 1] = ring.zero()

    if k == 0:
        put_block(n, -1)
    else:
        put_block(n - k, -1)
        put_block(n + k, 1)
    return m


def _matmul(ring: Ring, a: list, b: list) -> list:
    size = len(a)
    out = []
    for r in range(size):
        row = []
        for c in range(size):
            acc = ring.zero()
            for t in range(size):
                if a[r][t] and b[t][c]:
                    acc = acc + a[r][t] * b[t][c]
            row.append(acc)
        out.append(row)
    return out


def bott_samelson_matrix(
    q: Word, n: int, order: Optional[polyring.MonomialOrder] = None
) -> tuple:
    """P(w_0) * C_{q_1}(x_1) * .. * C_{q_l}(x_l) with fresh parameters x_t.

    Returns (matrix, ring, parameter names in word order).  Requires q to be
    reduced; the cell it coordinatizes is the one of w_0 * (product of q).
    """
    prod = CnElement.identity(n)
    for k in q.letters:
        prod = prod * embed_generator(k, n)
    if prod.length() != len(q.letters):
        raise ValueError("word is not reduced")
    names = bott_samelson_variables(q)
    if order is None:
        order = default_bott_samelson_order(q)
    ring = Ring(order, [named(nm) for nm in names])
    size = 2 * n
    w0 = [
        [ring.one() if r == size - 1 - c else ring.zero() for c in range(size)]
        for r in range(size)
    ]
    mat = w0
    for letter, nm in zip(q.letters, names):
        mat = _matmul(ring, mat, _one_parameter_factor(ring, letter, n, ring.var(named(nm))))
    return mat, ring, names


def matrix_entries(mat: list) -> dict:
    """Sparse {(row, col): Polynomial} view of a dense polynomial matrix, 1-based."""
    out = {}
    for r, row in enumerate(mat, start=1):
        for c, p in enumerate(row, start=1):
            if p:
                out[(r, c)] = p
    return out


def ring_for_factorization(
    f: Factorization, order: Optional[polyring.MonomialOrder] = None
) -> Ring:
    return Ring(order or lex_diag_order(), [zvar(i, j) for (i, j) in variables(f)])


def generic_matrix_entries(f: Factorization, ring: Ring) -> dict:
    """The generic matrix with entries as ring elements."""
    gm = generic_matrix(f)
    out = {pos: ring.one() for pos in gm.ones}
    for pos, (i, j) in gm.var_at.items():
        out[pos] = ring.var(zvar(i, j))
    return out
