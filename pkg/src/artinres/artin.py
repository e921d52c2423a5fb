"""Invariant generators as cycles in the quiver, the quasideterminantal
relations, the exponent matrices M, K, Q and the verification drivers."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from . import groebner as gb
from . import lattice as lat
from .combinatorics import GroupParams, Quiver, build_quiver, hj_dual, ij_series
from .poly import Polynomial, Ring


def zname(i: int, j: int) -> str:
    return f"z{i}_{j}"


def parse_zname(s: str) -> tuple[int, int]:
    m = re.fullmatch(r"z(\d+)_(\d+)", s)
    if not m:
        raise ValueError(f"not a generator name: {s!r}")
    return int(m.group(1)), int(m.group(2))


@dataclass(frozen=True)
class Generator:
    i: int
    j: int
    path: tuple[str, ...]  # arrow labels in composable order

    @property
    def name(self) -> str:
        return zname(self.i, self.j)


@dataclass(frozen=True)
class Quasimatrix:
    """Top row a_1..a_{m+1}, bottom row b_1..b_{m+1}, and the middle
    products W_1..W_m (each a tuple of generator names, possibly empty)."""

    top: tuple[str, ...]
    bottom: tuple[str, ...]
    middle: tuple[tuple[str, ...], ...]

    @property
    def m(self) -> int:
        return len(self.middle)

    def window(self, i: int, j: int) -> list[str]:
        """Names in W_i ... W_j (1-based, empty when j < i)."""
        out = []
        for t in range(i, j + 1):
            out.extend(self.middle[t - 1])
        return out

    def render(self) -> str:
        cells_top = list(self.top)
        cells_mid = [" ".join(w) if w else "." for w in self.middle] + [""]
        cells_bot = list(self.bottom)
        width = max(len(x) for x in cells_top + cells_mid + cells_bot) + 2
        lines = []
        for k, row in enumerate((cells_top, cells_mid, cells_bot)):
            # middle entries sit between the columns they join
            pad = " " * (width // 2) if k == 1 else ""
            lines.append((pad + "".join(f"{x:^{width}}" for x in row)).rstrip())
        return "\n".join(lines)


class Artin:
    """All combinatorial data attached to one group, computed once."""

    def __init__(self, g: GroupParams):
        self.group = g
        self.quiver: Quiver = build_quiver(g)
        self.beta = hj_dual(g).coeffs
        self.m = len(self.beta)
        self.e = self.m + 2
        self.series = ij_series(g)
        self.s = [b - 1 for b in self.beta] + [0]  # s_1..s_{m+1}
        self.generators = _generators(self)
        self.by_name = {z.name: z for z in self.generators}
        self.names = [z.name for z in self.generators]
        self.degrees = {z.name: self.series.degree(z.i) for z in self.generators}
        self.ring = Ring.make(self.names, [self.degrees[s] for s in self.names])
        top = tuple(zname(t - 1, 0) for t in range(1, self.m + 2))
        bottom = tuple(zname(t, self.s[t - 1]) for t in range(1, self.m + 2))
        middle = tuple(tuple(zname(t, j) for j in range(self.s[t - 1] - 1, 0, -1))
                       for t in range(1, self.m + 1))
        self.quasimatrix = Quasimatrix(top, bottom, middle)
        self._quasiminors: dict = {}
        self.cache: dict = {}  # per-group memo for other modules

    @property
    def arrow_labels(self) -> list[str]:
        return self.quiver.labels

    def image(self, name: str) -> Counter:
        return Counter(self.by_name[name].path)

    def image_vector(self, name: str) -> tuple[int, ...]:
        c = self.image(name)
        return tuple(c[x] for x in self.arrow_labels)

    def mono(self, names) -> Polynomial:
        return self.ring.monomial(Counter(names))

    def ring_with_u(self) -> Ring:
        E = saturating_product_E(self)
        return self.ring.extended(["u"], [E.wdeg()], front=True)


@lru_cache(maxsize=256)
def artin(g: GroupParams) -> Artin:
    return Artin(g)


def _as_artin(g) -> Artin:
    if isinstance(g, Artin):
        return g
    return artin(g)


def _generators(A: Artin) -> list[Generator]:
    q, m = A.quiver, A.m
    gens = []
    if A.group.a == 1:
        ys = [q.extra(h) for h in range(A.group.r)]
        gens.append(Generator(0, 0, ("c1", ys[0])))
        for i in range(1, m + 1):
            gens.append(Generator(i, 0, ("c1", ys[i])))
            gens.append(Generator(i, 1, ("c2", ys[i - 1])))
        gens.append(Generator(m + 1, 0, ("c2", ys[m])))
    else:
        l = q.tails
        gens.append(Generator(0, 0, tuple(q.path_C(0))))
        for i in range(1, A.e - 1):
            gens.append(Generator(i, 0, tuple(q.path_C(l[i]) + [q.extra(i)])))
            for j in range(1, l[i] - l[i - 1] + 1):
                x = l[i] - j
                gens.append(Generator(i, j, (q.clockwise(x + 1), q.anticlockwise(x))))
            gens.append(Generator(i, l[i] - l[i - 1] + 1, tuple(q.path_A(l[i - 1]) + [q.extra(i - 1)])))
        gens.append(Generator(A.e - 1, 0, tuple(q.path_A(0))))
    gens.sort(key=lambda z: (z.i, z.j))
    for z in gens:
        _check_cycle(q, z.path)
    return gens


def _check_cycle(q: Quiver, path) -> None:
    if not path:
        raise ValueError("empty path")
    path = tuple(path)
    for x, y in zip(path, path[1:] + path[:1]):
        if q.arrow(x).head != q.arrow(y).tail:
            raise ValueError(f"path is not a closed composable cycle at {x} -> {y}")


def generator_set(g: GroupParams) -> list[Generator]:
    return list(artin(g).generators)


def phi_image(g, name: str) -> dict[str, int]:
    """Arrow exponents of the cycle chosen for generator `name`."""
    return dict(_as_artin(g).image(name))


# cycle decomposition

def decompose_cycle(g, path: list[str]) -> Counter:
    """Rewrite a closed path as a product of generators, following the
    case analysis on the first arrow (extra, clockwise, anticlockwise)."""
    A = _as_artin(g)
    q = A.quiver
    path = list(path)
    _check_cycle(q, tuple(path))
    table = {frozenset(Counter(z.path).items()): z.name for z in A.generators}

    def emit(arrows) -> str:
        key = frozenset(Counter(arrows).items())
        if key not in table:
            raise AssertionError(f"extracted piece {arrows} is not a generator image")
        return table[key]

    out: Counter = Counter()
    cyc = path
    if A.group.a == 1:
        k = next(i for i, x in enumerate(cyc) if q.arrow(x).tail == 0)
        cyc = cyc[k:] + cyc[:k]
        for t in range(0, len(cyc), 2):
            out[emit(cyc[t:t + 2])] += 1
        return out

    kind = lambda x: q.arrow(x).kind
    head = lambda x: q.arrow(x).head
    while cyc:
        extra = next((i for i, x in enumerate(cyc) if kind(x) == "extra"), None)
        if extra is not None:
            cyc = cyc[extra:] + cyc[:extra]
            kt, rest = cyc[0], cyc[1:]
            v = q.arrow(kt).tail
            direction = kind(rest[0])
            cur, j = 0, 0
            while j < len(rest) and kind(rest[j]) == direction:
                cur = head(rest[j])
                j += 1
                if cur == v:
                    break
            if cur == v:
                out[emit([kt] + rest[:j])] += 1
                cyc = rest[j:]
            elif kind(rest[j]) == "extra":
                out[emit(rest[:j] + [rest[j]])] += 1
                cyc = [kt] + rest[j + 1:]
            else:
                out[emit([rest[j - 1], rest[j]])] += 1
                cyc = [kt] + rest[:j - 1] + rest[j + 1:]
            continue
        direction = kind(cyc[0])
        start = q.arrow(cyc[0]).tail
        j = 0
        cur = start
        while j < len(cyc) and kind(cyc[j]) == direction:
            cur = head(cyc[j])
            j += 1
            if cur == start:
                break
        if cur == start:
            out[emit(cyc[:j])] += 1
            cyc = cyc[j:]
        else:
            out[emit([cyc[j - 1], cyc[j]])] += 1
            cyc = cyc[:j - 1] + cyc[j + 1:]
    return out


def random_closed_path(g, rng, max_len: int = 12) -> list[str]:
    """A random closed walk: a random walk closed up by a shortest return."""
    A = _as_artin(g)
    q = A.quiver
    out_arrows: dict[int, list[str]] = {}
    for x in q.arrows:
        out_arrows.setdefault(x.tail, []).append(x.label)
    start = rng.randrange(q.num_vertices)
    while True:
        walk = []
        v = start
        for _ in range(rng.randint(1, max(1, max_len // 2))):
            x = rng.choice(out_arrows[v])
            walk.append(x)
            v = q.arrow(x).head
        back = _shortest_path(q, out_arrows, v, start)
        total = walk + back
        if total and len(total) <= max_len:
            return total


def _shortest_path(q, out_arrows, src, dst) -> list[str]:
    if src == dst:
        return []
    prev = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for x in out_arrows[v]:
                w = q.arrow(x).head
                if w not in prev:
                    prev[w] = (v, x)
                    nxt.append(w)
        frontier = nxt
        if dst in prev:
            break
    path = []
    v = dst
    while prev[v] is not None:
        v, x = prev[v]
        path.append(x)
    return path[::-1]


# relations

def quasiminor(g, i: int, j: int) -> Polynomial:
    """a_i b_j - b_i W_i ... W_{j-1} a_j for 1 <= i < j <= m+1."""
    A = _as_artin(g)
    hit = A._quasiminors.get((i, j))
    if hit is not None:
        return hit
    Q = A.quasimatrix
    if not 1 <= i < j <= Q.m + 1:
        raise ValueError("need 1 <= i < j <= m+1")
    f = A.mono([Q.top[i - 1], Q.bottom[j - 1]]) - A.mono([Q.bottom[i - 1]] + Q.window(i, j - 1) + [Q.top[j - 1]])
    A._quasiminors[(i, j)] = f
    return f


def qdet_pairs(g) -> list[tuple[int, int]]:
    m = _as_artin(g).m
    return [(i, j) for i in range(1, m + 2) for j in range(i + 1, m + 2)]


def qdet_ideal(g) -> list[Polynomial]:
    return [quasiminor(g, i, j) for i, j in qdet_pairs(g)]


def saturating_product_E(g) -> Polynomial:
    """z_{0,0} times the bottom row without its first entry."""
    A = _as_artin(g)
    return A.mono([A.quasimatrix.top[0]] + list(A.quasimatrix.bottom[1:]))


def all_product(g) -> Polynomial:
    A = _as_artin(g)
    return A.mono(A.names)


def phi_kills(g, f: Polynomial) -> bool:
    """Does f map to zero under z -> its cycle (commutatively)?"""
    A = _as_artin(g)
    acc: Counter = Counter()
    for mono, c in f.terms.items():
        img = Counter()
        for s, x in zip(A.names, mono):
            if x:
                for arrow, k in A.image(s).items():
                    img[arrow] += k * x
        key = tuple(sorted(img.items()))
        acc[key] += c
    return all(v == 0 for v in acc.values())


# matrices

def m_columns(g) -> list[str]:
    A = _as_artin(g)
    m, Q = A.m, A.quasimatrix
    if A.group.a == 1:
        return ([zname(m + 1, 0)] + [zname(i, 1) for i in range(m, 0, -1)]
                + [zname(i, 0) for i in range(0, m + 1)])
    cols = [Q.bottom[t - 1] for t in range(m, 0, -1)]
    for t in range(1, m + 1):
        cols += [zname(t, j) for j in range(A.s[t - 1] - 1, 0, -1)]
    cols += [zname(m, 0), zname(0, 0), Q.bottom[m]]
    cols += [zname(t, 0) for t in range(1, m)]
    return cols


def m_rows(g) -> list[str]:
    A = _as_artin(g)
    q = A.quiver
    extras = [x.label for x in q.arrows if x.kind == "extra"]
    extras.sort(key=lambda s: int(s[1:]), reverse=True)
    if A.group.a == 1:
        return extras + ["a2", "a1", "c1", "c2"]
    n = q.n
    return extras + [q.anticlockwise(v) for v in range(n + 1)] + [f"c0_{n}"] + [q.clockwise(v) for v in range(n, 0, -1)]


def build_M(g) -> lat.Matrix:
    A = _as_artin(g)
    cols = m_columns(A)
    rows = m_rows(A)
    imgs = [A.image(c) for c in cols]
    return [[img[r] for img in imgs] for r in rows]


def k_relations(g) -> list[tuple[int, int]]:
    """The quasiminors f_{1,j} read as K columns: j = m+1 first, then 2..m."""
    m = _as_artin(g).m
    return [(1, m + 1)] + [(1, j) for j in range(2, m + 1)]


def _exponent_column(A: Artin, f: Polynomial, cols: list[str]) -> list[int]:
    idx = [A.ring.vars.index(c) for c in cols]
    v = [0] * len(cols)
    for mono, c in f.terms.items():
        for k, i in enumerate(idx):
            v[k] += c * mono[i]
    return v


def build_K(g) -> lat.Matrix:
    """Columns are exponent vectors (+1 on z_{0,0}) of the relations
    z00 b_j = b_1 W_1...W_{j-1} a_j, listed j = m+1, 2, ..., m."""
    A = _as_artin(g)
    cols = m_columns(A)
    vecs = [_exponent_column(A, quasiminor(A, i, j), cols) for i, j in k_relations(A)]
    return lat.transpose(vecs)


def build_Q(g) -> lat.Matrix:
    """Unitriangular companion [[I, K_top P], [0, I]] where P rescales and
    permutes the K columns so that their bottom block is the identity."""
    A = _as_artin(g)
    K = build_K(A)
    N = len(K)
    k = len(K[0])
    top, bottom = K[:N - k], K[N - k:]
    # bottom is a signed permutation matrix; its inverse is its transpose
    P = lat.transpose(bottom)
    if lat.matmul(bottom, P) != lat.identity(k):
        raise AssertionError("bottom block of K is not a signed permutation")
    KP = lat.matmul(top, P)
    Q = []
    for r in range(N - k):
        Q.append([int(r == c) for c in range(N - k)] + KP[r])
    for r in range(k):
        Q.append([0] * (N - k) + [int(r == c) for c in range(k)])
    return Q


def verify_kernel_spanning(g) -> dict:
    A = _as_artin(g)
    M, K = build_M(A), build_K(A)
    MK_zero = not any(any(r) for r in lat.matmul(M, K))
    rank = lat.smith_normal_form(M).rank
    kernel = lat.integer_kernel(M)
    span = lat.same_column_span_Z(K, kernel)
    return {
        "MK_zero": MK_zero,
        "rank_M": rank,
        "expected_rank": len(A.names) - A.m,
        "kernel_columns": len(kernel[0]) if kernel and kernel[0] else 0,
        "same_span": span,
        "ok": MK_zero and span and rank == len(A.names) - A.m,
    }


def check_Q(g) -> dict:
    A = _as_artin(g)
    Q, M = build_Q(A), build_M(A)
    N = len(Q)
    k = A.m
    unitri = all(Q[i][i] == 1 for i in range(N)) and all(Q[i][j] == 0 for i in range(N) for j in range(i))
    MQ = lat.matmul(M, Q)
    block = all(MQ[r][c] == M[r][c] for r in range(len(M)) for c in range(N - k)) and all(
        MQ[r][c] == 0 for r in range(len(M)) for c in range(N - k, N))
    return {"unitriangular": unitri, "unimodular": lat.is_unimodular(Q), "block_form": block}


def lattice_binomials(g, K: lat.Matrix | None = None) -> list[Polynomial]:
    """x^{v+} - x^{v-} for each kernel column v, in M's column order."""
    A = _as_artin(g)
    cols = m_columns(A)
    if K is None:
        K = lat.integer_kernel(build_M(A))
    out = []
    for v in zip(*K):
        pos = Counter({c: x for c, x in zip(cols, v) if x > 0})
        neg = Counter({c: -x for c, x in zip(cols, v) if x < 0})
        out.append(A.ring.monomial(pos) - A.ring.monomial(neg))
    return out


# S-polynomials in closed form and the reduction chains

def _cf(A: Artin, pieces) -> Polynomial:
    """Signed sum of monomials given as name lists."""
    out = A.ring.zero()
    for sign, names in pieces:
        out = out + A.mono(names) * sign
    return out


def closed_form_spoly(g, p1: tuple[int, int], p2: tuple[int, int]) -> Polynomial:
    """Closed-form S(f_{ij}, f_{kl}) for (i, j) < (k, l) lexicographically."""
    A = _as_artin(g)
    Q = A.quasimatrix
    (i, j), (k, l) = p1, p2
    if (i, j) == (k, l):
        return A.ring.zero()
    if (i, j) > (k, l):
        return -closed_form_spoly(A, p2, p1)
    a = lambda t: Q.top[t - 1]
    b = lambda t: Q.bottom[t - 1]
    W = Q.window
    if i < k:
        if j < k:
            return _cf(A, [(-1, [b(k)] + W(k, l - 1) + [a(l), a(i), b(j)]),
                           (1, [b(i)] + W(i, j - 1) + [a(j), a(k), b(l)])])
        if j < l:
            return _cf(A, [(-1, [b(k)] + W(j, l - 1) + [a(l), a(i), b(j)]),
                           (1, [b(i)] + W(i, k - 1) + [a(k), b(l), a(j)])])
        if j == l:
            return _cf(A, [(1, [b(i)] + W(i, k - 1) + [a(k), b(l)]), (-1, [b(k), a(i), b(l)])])
        return _cf(A, [(1, [b(i)] + W(i, k - 1) + W(l, j - 1) + [a(j), a(k), b(l)]),
                       (-1, [b(k), a(l), a(i), b(j)])])
    # i == k, j < l
    return _cf(A, [(-1, W(j, l - 1) + [a(l), a(k), b(j)]), (1, [a(j), a(k), b(l)])])


def closed_form_spoly_u(g, p: tuple[int, int]) -> Polynomial:
    """S(f_{ij}, E - u) in closed form, in the ring with u."""
    A = _as_artin(g)
    R = A.ring_with_u()
    Q = A.quasimatrix
    i, j = p
    E = saturating_product_E(A).map_to(R)
    u = R.var("u")
    first = R.monomial(Counter([Q.top[i - 1], Q.bottom[j - 1]]))
    second = R.monomial(Counter([Q.bottom[i - 1]] + Q.window(i, j - 1) + [Q.top[j - 1]]))
    return -u * first + second * E


def chain_for(p1, p2) -> list[tuple[int, int]]:
    """Quasiminors used, in order, to reduce S(f_p1, f_p2) to zero."""
    if p1 > p2:
        p1, p2 = p2, p1
    (i, j), (k, l) = p1, p2
    if p1 == p2:
        return []
    if i < k:
        if j < k:
            return [(k, l), (i, j)]
        if j < l:
            return [(j, l), (i, k)]
        if j == l:
            return [(i, k)]
        return [(i, k), (l, j)]
    return [(j, l)]


@dataclass
class ChainReplay:
    pair: tuple
    steps: int
    all_lead: bool
    reaches_zero: bool
    spoly: Polynomial | None = None


def replay_chain(g, p1, p2) -> ChainReplay:
    A = _as_artin(g)
    S = f = gb.s_polynomial(quasiminor(A, *p1), quasiminor(A, *p2))
    all_lead = True
    steps = chain_for(p1, p2)
    for pr in steps:
        f, lead = gb.reduce_step(f, quasiminor(A, *pr))
        all_lead = all_lead and lead
    return ChainReplay((p1, p2), len(steps), all_lead, f.is_zero(), S)


def replay_chain_u(g, p) -> ChainReplay:
    A = _as_artin(g)
    R = A.ring_with_u()
    E = saturating_product_E(A).map_to(R)
    h = E - R.var("u")
    fij = quasiminor(A, *p).map_to(R)
    S = gb.s_polynomial(fij, h)
    f, l1 = gb.reduce_step(S, h)
    f, l2 = gb.reduce_step(f, fij)
    return ChainReplay((p, "E-u"), 2, l1 and l2, f.is_zero(), S)


# drivers

def s_system(g) -> tuple[Ring, list[Polynomial]]:
    """QDet together with E - u, in the ring with u as the largest variable."""
    A = _as_artin(g)
    R = A.ring_with_u()
    S = [f.map_to(R) for f in qdet_ideal(A)]
    S.append(saturating_product_E(A).map_to(R) - R.var("u"))
    return R, S


def _is_reduced(G: list[Polynomial]) -> bool:
    lms = [g.lm() for g in G]
    for k, g in enumerate(G):
        for m in g.terms:
            for t, lm in enumerate(lms):
                if t != k and all(x <= y for x, y in zip(lm, m)):
                    return False
    return True


@dataclass
class TheoremReport:
    r: int
    a: int
    mode: str
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is True or (isinstance(v, dict) and v.get("ok", True)) for v in self.checks.values()
                   if isinstance(v, (bool, dict)))

    def to_dict(self) -> dict:
        return {"r": self.r, "a": self.a, "mode": self.mode, "ok": self.ok, "checks": self.checks}


SATURATION_STRATEGY = "adjoin"


def verify_theorem(g, mode: str = "buchberger_only", max_pairs: int | None = None,
                   strategy: str | None = None) -> TheoremReport:
    A = _as_artin(g)
    rep = TheoremReport(A.group.r, A.group.a, mode)
    if mode not in ("buchberger_only", "full_oracle"):
        raise ValueError(f"unknown mode {mode!r}")
    Q = qdet_ideal(A)
    rep.checks["qdet_count"] = len(Q) == A.m * (A.m + 1) // 2
    rep.checks["phi_kills_qdet"] = all(phi_kills(A, f) for f in Q)
    R, S = s_system(A)
    bc = gb.buchberger_check(S, max_pairs)
    rep.checks["groebner"] = {"ok": bc.is_groebner, **bc.to_dict()}
    rep.checks["S_reduced"] = {"ok": True, "value": _is_reduced([s.monic() for s in S])}
    elim = gb.eliminate(S, ["u"], certificate=True)
    rep.checks["elimination_is_qdet"] = sorted(map(str, elim)) == sorted(str(f.map_to(R)) for f in Q)
    if mode == "full_oracle":
        ks = verify_kernel_spanning(A)
        rep.checks["kernel"] = ks
        # the informal A/B/V block layout disagrees with the 7,2 fixture by a
        # convention shift, so M and K are always built from the definitions
        rep.checks["notes"] = ["M and K derived from definitions, not from the block description"]
        IL = lattice_binomials(A)
        sat = gb.saturate_ideal(IL, all_product(A), strategy or SATURATION_STRATEGY, max_pairs)
        rep.checks["saturation_equals_qdet"] = gb.ideal_equal(sat, Q, max_pairs)
    return rep
