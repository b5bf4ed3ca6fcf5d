"""Exact sparse multivariate polynomials over Q, term orders, minors, Buchberger.

Variables are lightweight tagged tuples: ``("z", i, j)`` for a grid coordinate
z_ij (always i <= j) and ``("p", name)`` for a named parameter such as a
Bott-Samelson coordinate.  Polynomials live in a :class:`Ring`, which fixes a
term order and a variable list sorted by decreasing rank, so that monomials
become dense exponent tuples and lexicographic comparison is plain tuple
comparison.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class OrderError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    pass


def zvar(i: int, j: int) -> tuple:
    if i > j:
        raise ValueError(f"grid variable needs i <= j, got ({i}, {j})")
    return ("z", i, j)


def named(name: str) -> tuple:
    return ("p", name)


def var_label(v: tuple) -> str:
    if v[0] == "z":
        return f"z{v[1]}{v[2]}"
    return v[1]


def var_json_key(v: tuple) -> str:
    if v[0] == "z":
        return f"z_{v[1]}_{v[2]}"
    return v[1]


class MonomialOrder:
    """A term order given by a variable ranking plus an optional degree grading.

    Named variables outrank grid variables unless a ranking list is supplied;
    named variables missing from the ranking cannot be compared and raise
    :class:`OrderError`.
    """

    __slots__ = ("graded", "named_ranking", "_named_pos", "name")

    def __init__(self, graded: bool = False, named_ranking: Optional[Sequence[str]] = None):
        self.graded = graded
        self.named_ranking = tuple(named_ranking) if named_ranking else None
        self._named_pos = (
            {nm: i for i, nm in enumerate(self.named_ranking)}
            if self.named_ranking
            else None
        )
        self.name = ("grlex" if graded else "lex") + (
            "" if not self.named_ranking else f"[{'>'.join(self.named_ranking)}]"
        )

    def rank_key(self, v: tuple) -> tuple:
        """Sort key under which greater variables compare greater."""
        if v[0] == "z":
            return (0, v[1], v[2])
        if self._named_pos is None:
            raise OrderError(f"named variable {v[1]!r} has no ranking")
        if v[1] not in self._named_pos:
            raise OrderError(f"named variable {v[1]!r} missing from ranking")
        return (1, -self._named_pos[v[1]], 0)

    def compare(self, m1: dict, m2: dict) -> int:
        """Compare sparse monomials (var -> exponent maps); 1 if m1 > m2."""
        if self.graded:
            d1, d2 = sum(m1.values()), sum(m2.values())
            if d1 != d2:
                return 1 if d1 > d2 else -1
        for v in sorted(set(m1) | set(m2), key=self.rank_key, reverse=True):
            e1, e2 = m1.get(v, 0), m2.get(v, 0)
            if e1 != e2:
                return 1 if e1 > e2 else -1
        return 0


def lex_diag_order(named_ranking: Optional[Sequence[str]] = None) -> MonomialOrder:
    """Lexicographic order with z_ij > z_i'j' iff i > i' or (i = i' and j > j')."""
    return MonomialOrder(graded=False, named_ranking=named_ranking)


def graded_lex_diag_order(named_ranking: Optional[Sequence[str]] = None) -> MonomialOrder:
    """Total degree first, ties broken by the same variable ranking."""
    return MonomialOrder(graded=True, named_ranking=named_ranking)


class Ring:
    """A polynomial ring with a fixed variable list and term order."""

    __slots__ = ("order", "vars", "index", "nvars", "_zero_mono")

    def __init__(self, order: MonomialOrder, variables: Iterable[tuple]):
        self.order = order
        self.vars = tuple(sorted(set(variables), key=order.rank_key, reverse=True))
        self.index = {v: i for i, v in enumerate(self.vars)}
        self.nvars = len(self.vars)
        self._zero_mono = (0,) * self.nvars

    def key(self, mono: tuple):
        return (sum(mono), mono) if self.order.graded else mono

    def monomial(self, exps: dict) -> tuple:
        m = [0] * self.nvars
        for v, e in exps.items():
            m[self.index[v]] = e
        return tuple(m)

    def sparse(self, mono: tuple) -> dict:
        return {self.vars[i]: e for i, e in enumerate(mono) if e}

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._zero_mono: Fraction(1)})

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {self._zero_mono: c} if c else {})

    def var(self, v: tuple) -> "Polynomial":
        m = [0] * self.nvars
        m[self.index[v]] = 1
        return Polynomial(self, {tuple(m): Fraction(1)})

    def poly_from_sparse(self, terms: Iterable[tuple]) -> "Polynomial":
        """Build from (coeff, {var: exp}) pairs."""
        acc = {}
        for coeff, exps in terms:
            m = self.monomial(exps)
            acc[m] = acc.get(m, Fraction(0)) + Fraction(coeff)
        return Polynomial(self, {m: c for m, c in acc.items() if c})


def _mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("ring", "terms", "_lt")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lt = None

    def _check(self, other: "Polynomial"):
        if self.ring is not other.ring:
            raise ValueError("polynomials from different rings")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring is other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, Fraction(0)) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Polynomial(self.ring, res)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, Fraction(0)) - c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Polynomial(self.ring, res)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = res.get(m, Fraction(0)) + c1 * c2
                if s:
                    res[m] = s
                else:
                    res.pop(m, None)
        return Polynomial(self.ring, res)

    def scale(self, coeff, mono: tuple) -> "Polynomial":
        coeff = Fraction(coeff)
        if not coeff:
            return self.ring.zero()
        return Polynomial(
            self.ring, {_mono_mul(m, mono): c * coeff for m, c in self.terms.items()}
        )

    def lt(self) -> tuple:
        """Leading (monomial, coefficient) under the ring order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lt is None:
            key = self.ring.key
            m = max(self.terms, key=key)
            self._lt = (m, self.terms[m])
        return self._lt

    def constant_value(self):
        if len(self.terms) == 1 and self.ring._zero_mono in self.terms:
            return self.terms[self.ring._zero_mono]
        if not self.terms:
            return Fraction(0)
        return None

    def sorted_terms(self) -> list:
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({render_poly(self)})"

    def to_json(self) -> list:
        out = []
        for m, c in self.sorted_terms():
            out.append(
                {
                    "coeff": str(c),
                    "exps": {var_json_key(v): e for v, e in self.ring.sparse(m).items()},
                }
            )
        return out


def render_monomial(ring: Ring, mono: tuple) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e:
            lbl = var_label(ring.vars[i])
            parts.append(lbl if e == 1 else f"{lbl}^{e}")
    return "*".join(parts) if parts else "1"


def render_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for m, c in p.sorted_terms():
        mono = render_monomial(p.ring, m)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


def leading_term(p: Polynomial, order: Optional[MonomialOrder] = None) -> tuple:
    """Order-maximal term of p as (sparse monomial, coefficient)."""
    if order is None or order is p.ring.order:
        m, c = p.lt()
        return p.ring.sparse(m), c
    best = None
    for m in p.terms:
        sm = p.ring.sparse(m)
        if best is None or order.compare(sm, best) > 0:
            best = sm
    return best, p.terms[p.ring.monomial(best)]


def _neg_key(ring: Ring, m: tuple):
    if ring.order.graded:
        return (-sum(m), tuple(-x for x in m))
    return tuple(-x for x in m)


def reduce(p: Polynomial, gens: Sequence[Polynomial]) -> Polynomial:
    """Normal form of p modulo gens under the ring order (full tail reduction)."""
    gens = [g for g in gens if g]
    if not gens:
        return p
    ring = p.ring
    heads = [(g.lt()[0], g.lt()[1], g) for g in gens]
    work = dict(p.terms)
    heap = [(_neg_key(ring, m), m) for m in work]
    heapq.heapify(heap)
    remainder = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if not c:
            continue
        del work[m]
        for hm, hc, g in heads:
            if _mono_divides(hm, m):
                q = _mono_div(m, hm)
                factor = c / hc
                for gm, gc in g.terms.items():
                    t = _mono_mul(gm, q)
                    if t == m:
                        continue
                    s = work.get(t, Fraction(0)) - factor * gc
                    if s:
                        if t not in work:
                            heapq.heappush(heap, (_neg_key(ring, t), t))
                        work[t] = s
                    else:
                        work.pop(t, None)
                break
        else:
            remainder[m] = c
    return Polynomial(ring, remainder)


def spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    fm, fc = f.lt()
    gm, gc = g.lt()
    l = _mono_lcm(fm, gm)
    return f.scale(Fraction(1, 1) / fc, _mono_div(l, fm)) - g.scale(
        Fraction(1, 1) / gc, _mono_div(l, gm)
    )


@dataclass
class SPairCertificate:
    """Witness for a failed Groebner check: the first non-reducing S-pair."""

    i: int
    j: int
    lcm: dict
    remainder: Polynomial

    def describe(self, names: Optional[Sequence[str]] = None) -> str:
        a = names[self.i] if names else f"g{self.i}"
        b = names[self.j] if names else f"g{self.j}"
        lcm = "*".join(
            var_label(v) if e == 1 else f"{var_label(v)}^{e}"
            for v, e in sorted(self.lcm.items())
        )
        return f"S({a}, {b}) with lcm {lcm} reduces to {self.remainder}"


def _spair_queue(gens):
    ring = gens[0].ring
    pairs = []
    for i, j in itertools.combinations(range(len(gens)), 2):
        mi, mj = gens[i].lt()[0], gens[j].lt()[0]
        l = _mono_lcm(mi, mj)
        if l == _mono_mul(mi, mj):  # coprime leading monomials
            continue
        pairs.append((sum(l), l, i, j))
    pairs.sort(key=lambda t: (t[0], t[1], t[2], t[3]))
    return pairs


def is_groebner(gens: Sequence[Polynomial]):
    """Buchberger's criterion: returns (True, None) or (False, certificate).

    S-pairs with coprime leading monomials are skipped (product criterion);
    every other S-polynomial must reduce to zero.
    """
    gens = [g for g in gens if g]
    if not gens:
        return True, None
    for _, l, i, j in _spair_queue(gens):
        rem = reduce(spoly(gens[i], gens[j]), gens)
        if rem:
            ring = gens[0].ring
            return False, SPairCertificate(i, j, ring.sparse(l), rem)
    return True, None


def buchberger_completion(
    gens: Sequence[Polynomial], budget: Optional[int] = None
) -> list:
    """Complete gens to a reduced Groebner basis (normal selection strategy)."""
    basis = [g for g in gens if g]
    if not basis:
        return []
    ring = basis[0].ring
    steps = 0
    pending = _spair_queue(basis)
    processed = set()
    while pending:
        pending.sort(key=lambda t: (t[0], t[1], t[2], t[3]))
        deg, l, i, j = pending.pop(0)
        if (i, j) in processed:
            continue
        processed.add((i, j))
        # chain criterion: some other basis element divides the lcm and both
        # of its pairs with i, j are already handled
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _mono_divides(basis[k].lt()[0], l):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 in processed and p2 in processed:
                    skip = True
                    break
        if skip:
            continue
        steps += 1
        if budget is not None and steps > budget:
            raise BudgetExceededError(f"Buchberger budget of {budget} steps exceeded")
        rem = reduce(spoly(basis[i], basis[j]), basis)
        if rem:
            basis.append(rem)
            t = len(basis) - 1
            mt = rem.lt()[0]
            for s in range(t):
                ms = basis[s].lt()[0]
                ls = _mono_lcm(ms, mt)
                if ls != _mono_mul(ms, mt):
                    pending.append((sum(ls), ls, s, t))
    return interreduce(basis)


def interreduce(basis: Sequence[Polynomial]) -> list:
    """Minimalize and tail-reduce to the unique monic reduced Groebner basis."""
    basis = [g for g in basis if g]
    # minimal: drop g whose leading monomial is divisible by another's
    lts = [g.lt()[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        mi = lts[i]
        if any(
            j != i
            and _mono_divides(lts[j], mi)
            and (lts[j] != mi or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    # reduced: each element fully reduced against the others, made monic
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        r = reduce(g, others) if others else g
        if r:
            out.append(r.scale(Fraction(1) / r.lt()[1], r.ring._zero_mono))
    out.sort(key=lambda g: g.ring.key(g.lt()[0]))
    return out


class MonomialIdeal:
    """A monomial ideal given by its minimal generators (sparse monomials)."""

    __slots__ = ("gens",)

    def __init__(self, gens: Iterable[dict]):
        canon = {tuple(sorted(g.items())) for g in gens}
        minimal = []
        for g in canon:
            gd = dict(g)
            if any(h != g and _sparse_divides(dict(h), gd) for h in canon):
                continue
            minimal.append(g)
        object.__setattr__(self, "gens", tuple(sorted(minimal)))

    @staticmethod
    def zero() -> "MonomialIdeal":
        return MonomialIdeal([])

    @staticmethod
    def unit() -> "MonomialIdeal":
        return MonomialIdeal([{}])

    @staticmethod
    def from_var_sets(sets: Iterable[Iterable[tuple]]) -> "MonomialIdeal":
        return MonomialIdeal([{v: 1 for v in s} for s in sets])

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == ((),)

    def is_squarefree(self) -> bool:
        return all(e == 1 for g in self.gens for _, e in g)

    def supports(self) -> list:
        return [frozenset(v for v, _ in g) for g in self.gens]

    def contains_monomial(self, mono: dict) -> bool:
        return any(_sparse_divides(dict(g), mono) for g in self.gens)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialIdeal) and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __str__(self) -> str:
        if self.is_zero:
            return "<0>"
        gens = []
        for g in self.gens:
            gens.append(
                "*".join(var_label(v) if e == 1 else f"{var_label(v)}^{e}" for v, e in g)
                or "1"
            )
        return "<" + ", ".join(gens) + ">"

    def to_json(self) -> list:
        return [
            {var_json_key(v): e for v, e in g} for g in self.gens
        ]


def _sparse_divides(a: dict, b: dict) -> bool:
    return all(b.get(v, 0) >= e for v, e in a.items())


def initial_ideal(gb: Sequence[Polynomial]) -> MonomialIdeal:
    """Minimal monomial generators of the leading-term ideal of a basis."""
    gb = [g for g in gb if g]
    return MonomialIdeal([g.ring.sparse(g.lt()[0]) for g in gb])


class MatrixMinors:
    """Shared-cache symbolic minors of a matrix with Polynomial entries.

    Expansion is Laplace along the sparsest row or column of the submatrix,
    memoized on (row set, column set), so overlapping truncations reuse work.
    """

    def __init__(self, ring: Ring, entries: dict):
        self.ring = ring
        self.entries = {pos: p for pos, p in entries.items() if p}
        self._memo = {}
        self._row_support = {}
        self._col_support = {}
        for (r, c) in self.entries:
            self._row_support.setdefault(r, set()).add(c)
            self._col_support.setdefault(c, set()).add(r)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
        rows, cols = tuple(sorted(rows)), tuple(sorted(cols))
        if len(rows) != len(cols):
            raise ValueError("minor needs equally many rows and columns")
        return self._det(rows, cols)

    def _det(self, rows: tuple, cols: tuple) -> Polynomial:
        if not rows:
            return self.ring.one()
        memo = self._memo
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        colset = set(cols)
        rowset = set(rows)
        best_row, best_row_cnt = None, None
        for r in rows:
            cnt = len(self._row_support.get(r, ()) & colset)
            if best_row_cnt is None or cnt < best_row_cnt:
                best_row, best_row_cnt = r, cnt
        best_col, best_col_cnt = None, None
        for c in cols:
            cnt = len(self._col_support.get(c, ()) & rowset)
            if best_col_cnt is None or cnt < best_col_cnt:
                best_col, best_col_cnt = c, cnt
        total = self.ring.zero()
        if best_row_cnt <= best_col_cnt:
            r = best_row
            i = rows.index(r)
            sub_rows = rows[:i] + rows[i + 1 :]
            for j, c in enumerate(cols):
                entry = self.entries.get((r, c))
                if entry is None:
                    continue
                sub = self._det(sub_rows, cols[:j] + cols[j + 1 :])
                term = entry * sub
                total = total + term if (i + j) % 2 == 0 else total - term
        else:
            c = best_col
            j = cols.index(c)
            sub_cols = cols[:j] + cols[j + 1 :]
            for i, r in enumerate(rows):
                entry = self.entries.get((r, c))
                if entry is None:
                    continue
                sub = self._det(rows[:i] + rows[i + 1 :], sub_cols)
                term = entry * sub
                total = total + term if (i + j) % 2 == 0 else total - term
        memo[key] = total
        return total


def minor(
    ring: Ring, entries: dict, rows: Sequence[int], cols: Sequence[int]
) -> Polynomial:
    """One-off exact minor; prefer MatrixMinors when taking many."""
    return MatrixMinors(ring, entries).minor(rows, cols)
