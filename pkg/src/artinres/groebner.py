"""Buchberger machinery: S-polynomials, reduction, completion with the
Gebauer-Moeller criteria, elimination, saturation and Krull dimension."""

from __future__ import annotations

import heapq
import os
from operator import add, le, sub
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import Monomial, MonomialOrder, Polynomial, Ring, cdiv

DEFAULT_MAX_PAIRS = int(os.environ.get("ARTINRES_MAX_PAIRS", "100000"))


class ResourceCapExceeded(RuntimeError):
    pass


class EliminationOrderError(ValueError):
    pass


class EmptyVarietyError(ValueError):
    """Raised when a dimension is requested for the unit ideal."""


def _lcm(a, b):
    return tuple(map(max, a, b))


def _divides(a, b):
    return all(map(le, a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """(L/LT(f)) f - (L/LT(g)) g with L = lcm(LM f, LM g)."""
    f._check(g)
    mf, cf = f.lt()
    mg, cg = g.lt()
    L = _lcm(mf, mg)
    qf = tuple(map(sub, L, mf))
    qg = tuple(map(sub, L, mg))
    return f.mul_term(qf, cdiv(1, cf)) - g.mul_term(qg, cdiv(1, cg))


class _Divisors:
    """Reducer list with cached leading data for quick divisibility tests."""

    def __init__(self, ring: Ring, polys: Iterable[Polynomial] = ()):
        self.ring = ring
        self.items: list = []
        for p in polys:
            self.add(p)

    def add(self, p: Polynomial):
        if p.is_zero():
            return
        lm, lc = p.lt()
        tail = [(m, c) for m, c in p.terms.items() if m != lm]
        self.items.append((lm, self.ring.mask(lm), tail, lc, p))

    def find(self, m: Monomial):
        mk = self.ring.mask(m)
        for it in self.items:
            if it[1] & ~mk == 0 and _divides(it[0], m):
                return it
        return None

    def reduce(self, terms: dict, full: bool = True) -> dict:
        key = self.ring.key
        p = dict(terms)
        rem = {}
        while p:
            m = max(p, key=key)
            c = p.pop(m)
            it = self.find(m)
            if it is None:
                rem[m] = c
                if not full:
                    rem.update(p)
                    return rem
                continue
            glm, _, tail, glc, _ = it
            q = tuple(map(sub, m, glm))
            f = cdiv(c, glc)
            for gm, gc in tail:
                mm = tuple(map(add, gm, q))
                v = p.get(mm, 0) - f * gc
                if v:
                    p[mm] = v
                else:
                    p.pop(mm, None)
        return rem


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Fully reduced remainder of f on division by G."""
    if not G:
        return f
    for g in G:
        f._check(g)
    return Polynomial._raw(f.ring, _Divisors(f.ring, G).reduce(f.terms))


def reduce_step(f: Polynomial, g: Polynomial) -> tuple[Polynomial, bool]:
    """One reduction of f by g at the largest term of f divisible by LM(g).
    Returns the result and whether that term was the leading term."""
    glm, glc = g.lt()
    for k, (m, c) in enumerate(f.sorted_terms()):
        if _divides(glm, m):
            q = tuple(map(sub, m, glm))
            return f - g.mul_term(q, cdiv(c, glc)), k == 0
    raise ValueError("no term of f is divisible by LM(g)")


@dataclass
class BuchbergerReport:
    is_groebner: bool
    pairs_checked: int
    witness: tuple | None = None  # (i, j, remainder)

    def to_dict(self) -> dict:
        w = None
        if self.witness:
            i, j, rem = self.witness
            w = {"pair": [i, j], "remainder": str(rem)}
        return {"is_groebner": self.is_groebner, "pairs_checked": self.pairs_checked, "witness": w}


def buchberger_check(G: Sequence[Polynomial], max_pairs: int | None = None) -> BuchbergerReport:
    """Reduce every S-pair of G modulo G; G is a basis iff all vanish."""
    G = [g for g in G if not g.is_zero()]
    if not G:
        return BuchbergerReport(True, 0)
    ring = G[0].ring
    cap = DEFAULT_MAX_PAIRS if max_pairs is None else max_pairs
    total = len(G) * (len(G) - 1) // 2
    if total > cap:
        raise ResourceCapExceeded(f"{total} S-pairs exceeds the cap of {cap}")
    div = _Divisors(ring, G)
    count = 0
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            count += 1
            s = s_polynomial(G[i], G[j])
            rem = div.reduce(s.terms)
            if rem:
                return BuchbergerReport(False, count, (i, j, Polynomial._raw(ring, rem)))
    return BuchbergerReport(True, count)


def reduce_basis(G: Sequence[Polynomial]) -> list[Polynomial]:
    """The reduced Groebner basis spanned by a Groebner basis G."""
    G = [g.monic() for g in G if not g.is_zero()]
    if not G:
        return []
    ring = G[0].ring
    G.sort(key=lambda g: ring.key(g.lm()))
    keep = []
    for k, g in enumerate(G):
        lm = g.lm()
        if any(_divides(h.lm(), lm) for h in keep) or any(
                _divides(h.lm(), lm) and h.lm() != lm for h in G[k + 1:]):
            continue
        keep.append(g)
    out = []
    for k, g in enumerate(keep):
        others = _Divisors(ring, keep[:k] + keep[k + 1:])
        lm, lc = g.lt()
        tail = {m: c for m, c in g.terms.items() if m != lm}
        rem = others.reduce(tail)
        rem[lm] = lc
        out.append(Polynomial._raw(ring, rem).monic())
    out.sort(key=lambda g: ring.key(g.lm()), reverse=True)
    return out


def buchberger_complete(F: Sequence[Polynomial], max_pairs: int | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal generated by F (normal selection
    strategy with Gebauer-Moeller pair pruning)."""
    F = [f for f in F if not f.is_zero()]
    if not F:
        return []
    ring = F[0].ring
    for f in F:
        f._check(F[0])
    cap = DEFAULT_MAX_PAIRS if max_pairs is None else max_pairs
    key = ring.key

    polys: list[Polynomial] = []
    lms: list[Monomial] = []
    active: list[int] = []
    pairs: dict = {}
    heap: list = []
    seq = 0

    def update(h: int):
        nonlocal seq, active
        mh = lms[h]
        C = [(g, _lcm(lms[g], mh)) for g in active]
        D: list = []
        while C:
            g1, L1 = C.pop(0)
            if _coprime(lms[g1], mh) or not (
                    any(_divides(L2, L1) for _, L2 in C) or any(_divides(L2, L1) for _, L2 in D)):
                D.append((g1, L1))
        for (g1, g2), L in list(pairs.items()):
            if _divides(mh, L) and _lcm(lms[g1], mh) != L and _lcm(lms[g2], mh) != L:
                del pairs[(g1, g2)]
        for g, L in D:
            if _coprime(lms[g], mh):
                continue
            pairs[(g, h)] = L
            seq += 1
            heapq.heappush(heap, (key(L), seq, (g, h)))
        active = [g for g in active if not _divides(mh, lms[g])] + [h]

    def add(p: Polynomial):
        p = p.monic()
        div.add(p)
        polys.append(p)
        lms.append(p.lm())
        update(len(polys) - 1)

    div = _Divisors(ring)
    start = _interreduce(F)
    for f in sorted(start, key=lambda f: key(f.lm())):
        if f.is_constant():
            return [ring.one()]
        add(f)

    done = 0
    while heap:
        _, _, pr = heapq.heappop(heap)
        if pr not in pairs:
            continue
        del pairs[pr]
        done += 1
        if done > cap:
            raise ResourceCapExceeded(f"Buchberger completion exceeded {cap} S-pairs")
        i, j = pr
        s = s_polynomial(polys[i], polys[j])
        rem = div.reduce(s.terms)
        if rem:
            h = Polynomial._raw(ring, rem)
            if h.is_constant():
                return [ring.one()]
            add(h)
    return reduce_basis([polys[g] for g in active])


def _interreduce(F: Sequence[Polynomial]) -> list[Polynomial]:
    """Cheap autoreduction so that duplicate or dependent inputs drop out."""
    out: list[Polynomial] = []
    ring = F[0].ring
    for f in sorted(F, key=lambda f: (len(f.terms), ring.key(f.lm()))):
        rem = _Divisors(ring, out).reduce(f.terms) if out else dict(f.terms)
        if rem:
            out.append(Polynomial._raw(ring, rem).monic())
    return out


def ideal_contains(G: Sequence[Polynomial], f: Polynomial) -> bool:
    """Membership test; G must be a Groebner basis."""
    return normal_form(f, G).is_zero()


def eliminate(G: Sequence[Polynomial], names: Iterable[str], certificate: bool = True) -> list[Polynomial]:
    """G must be a Groebner basis.  Returns G intersected with the subring
    missing `names`, which is a Groebner basis of the elimination ideal when
    the order eliminates those variables, or (certificate=True) when every
    element involving them has one of them in its leading monomial."""
    G = list(G)
    if not G:
        return []
    ring = G[0].ring
    idx = [ring.vars.index(s) for s in names]
    k = ring.order.eliminates(ring.nvars)
    involves = [any(m[i] for m in g.terms for i in idx) for g in G]
    if not (idx and max(idx) < k):
        if not certificate:
            raise EliminationOrderError("monomial order does not eliminate the requested variables")
        for g, inv in zip(G, involves):
            if inv and not any(g.lm()[i] for i in idx):
                raise EliminationOrderError(
                    f"no elimination certificate: {g} involves an eliminated variable "
                    "but its leading monomial does not")
    return [g for g, inv in zip(G, involves) if not inv]


def ideal_equal(I: Sequence[Polynomial], J: Sequence[Polynomial], max_pairs: int | None = None) -> bool:
    """Compare reduced Groebner bases (both inputs must share one ring)."""
    A = buchberger_complete(I, max_pairs)
    B = buchberger_complete(J, max_pairs)
    if A and B:
        A[0]._check(B[0])
    return A == B


def _divide_out(p: Polynomial, i: int) -> Polynomial:
    k = min(m[i] for m in p.terms)
    if not k:
        return p
    t = {}
    for m, c in p.terms.items():
        e = list(m)
        e[i] -= k
        t[tuple(e)] = c
    return Polynomial._raw(p.ring, t)


def _homogeneous(F: Sequence[Polynomial]) -> bool:
    return all(f.is_homogeneous() for f in F)


def _saturate_by(F: Sequence[Polynomial], m: Polynomial, max_pairs: int | None) -> list[Polynomial]:
    """Generators of (F) : m^infinity for a single monomial m."""
    ring = F[0].ring
    mono = m.lm()
    deg = ring.vars.wdeg(mono)
    if _homogeneous(F):
        # adjoin u = m as the cheapest variable; u-power-free parts of a
        # degrevlex basis generate the u-saturation
        name = _fresh(ring, "u")
        big = ring.extended([name], [deg], order=MonomialOrder("degrevlex"))
        u = big.var(name)
        H = [f.map_to(big) for f in F] + [m.map_to(big) - u]
        G = buchberger_complete(H, max_pairs)
        iu = big.nvars - 1
        out = []
        mm = m.map_to(big)
        for g in G:
            g = _divide_out(g, iu)
            out.append(g.substitute({name: mm}).map_to(ring))
        return out
    # inhomogeneous input: (F + (1 - t m)) intersected with k[z]
    name = _fresh(ring, "t")
    big = ring.extended([name], [1], front=True, order=MonomialOrder("elim", 1))
    t = big.var(name)
    H = [f.map_to(big) for f in F] + [big.one() - t * m.map_to(big)]
    G = buchberger_complete(H, max_pairs)
    return [g.map_to(ring) for g in eliminate(G, [name], certificate=False)]


def _fresh(ring: Ring, base: str) -> str:
    name = base
    k = 0
    while name in ring.vars._index:
        k += 1
        name = f"{base}{k}"
    return name


def saturate_ideal(I: Sequence[Polynomial], m: Polynomial, strategy: str = "adjoin",
                   max_pairs: int | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of I : m^infinity for a monomial m.

    'adjoin' saturates by m in one go through a new variable u = m;
    'sequential' saturates by each variable of m in turn."""
    I = [f for f in I if not f.is_zero()]
    if not I:
        return []
    ring = I[0].ring
    if len(m.terms) != 1:
        raise ValueError("saturation is implemented for monomials only")
    mono = m.lm()
    if strategy == "adjoin":
        out = _saturate_by(I, ring.monomial(mono), max_pairs)
    elif strategy == "sequential":
        out = list(I)
        for i, x in enumerate(mono):
            if x:
                e = [0] * ring.nvars
                e[i] = 1
                out = _saturate_by(out, ring.monomial(e), max_pairs)
    else:
        raise ValueError(f"unknown saturation strategy {strategy!r}")
    return buchberger_complete(out, max_pairs)


def _min_hitting_set(sets: list[int]) -> int:
    """Size of a smallest set of variables meeting every support mask."""
    sets = sorted(set(sets), key=lambda s: bin(s).count("1"))
    minimal = []
    for s in sets:
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    best = [len(minimal)]

    def go(rest: list[int], used: int):
        if used >= best[0]:
            return
        if not rest:
            best[0] = used
            return
        s = min(rest, key=lambda x: bin(x).count("1"))
        bits = s
        while bits:
            b = bits & -bits
            bits ^= b
            go([t for t in rest if not t & b], used + 1)

    go(minimal, 0)
    return best[0]


def krull_dimension(I: Sequence[Polynomial], max_pairs: int | None = None,
                    groebner: bool = False) -> int:
    """Dimension of k[x]/I via the initial ideal: the number of variables
    minus a smallest set hitting every leading-monomial support."""
    I = [f for f in I if not f.is_zero()]
    if not I:
        raise ValueError("need at least one generator to know the ring")
    ring = I[0].ring
    G = list(I) if groebner else buchberger_complete(I, max_pairs)
    if any(g.is_constant() for g in G):
        raise EmptyVarietyError("the ideal is the unit ideal; its variety is empty")
    return ring.nvars - _min_hitting_set([ring.mask(g.lm()) for g in G])
