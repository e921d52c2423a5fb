"""Continued fractions, i/j-series and the reconstruction-algebra quiver for
the cyclic group 1/r(1, a)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd


class InvalidGroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupParams:
    r: int
    a: int

    def __post_init__(self):
        if not isinstance(self.r, int) or not isinstance(self.a, int):
            raise InvalidGroupError("r and a must be integers")
        if self.r < 2:
            raise InvalidGroupError(f"need r >= 2, got r={self.r}")
        if not 1 <= self.a < self.r:
            raise InvalidGroupError(f"need 1 <= a < r, got a={self.a}, r={self.r}")
        if gcd(self.r, self.a) != 1:
            raise InvalidGroupError(f"gcd(r, a) must be 1, got gcd({self.r}, {self.a}) = {gcd(self.r, self.a)}")


@dataclass(frozen=True)
class HJExpansion:
    p: int
    q: int
    coeffs: tuple[int, ...]

    def evaluate(self) -> tuple[int, int]:
        """Fold the continued fraction back into a reduced pair (p, q)."""
        num, den = self.coeffs[-1], 1
        for c in reversed(self.coeffs[:-1]):
            num, den = c * num - den, num
        return num, den


def hj_expand(p: int, q: int) -> HJExpansion:
    """p/q = [c1, ..., ck] with every ci >= 2."""
    if not (isinstance(p, int) and isinstance(q, int)) or q < 1 or p <= q:
        raise InvalidGroupError(f"need integers p > q >= 1, got {p}/{q}")
    if gcd(p, q) != 1:
        raise InvalidGroupError(f"{p}/{q} is not reduced")
    coeffs = []
    x, y = p, q
    while y:
        c = -(-x // y)
        coeffs.append(c)
        x, y = y, c * y - x
    return HJExpansion(p, q, tuple(coeffs))


def hj_dual(g: GroupParams) -> HJExpansion:
    return hj_expand(g.r, g.r - g.a)


@dataclass(frozen=True)
class IJSeries:
    i: tuple[int, ...]
    j: tuple[int, ...]

    def degree(self, t: int) -> int:
        return self.i[t] + self.j[t]


def ij_series(g: GroupParams) -> IJSeries:
    beta = hj_dual(g).coeffs
    i = [g.r, g.r - g.a]
    j = [0, 1]
    for b in beta[:-1]:
        i.append(b * i[-1] - i[-2])
        j.append(b * j[-1] - j[-2])
    # the recursion runs one step past the last dual coefficient
    i.append(beta[-1] * i[-1] - i[-2])
    j.append(beta[-1] * j[-1] - j[-2])
    if i[-1] != 0 or j[-1] != g.r:
        raise AssertionError(f"i/j-series did not terminate at (0, r) for {g}")
    return IJSeries(tuple(i), tuple(j))


def invariant_monomials(g: GroupParams) -> list[tuple[int, int]]:
    s = ij_series(g)
    return list(zip(s.i, s.j))


def embedding_dimension(g: GroupParams) -> int:
    return len(invariant_monomials(g))


@dataclass(frozen=True)
class Arrow:
    label: str
    kind: str  # clockwise | anticlockwise | extra
    tail: int
    head: int
    alias: str | None = None


@dataclass(frozen=True)
class Quiver:
    group: GroupParams
    alpha: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    # tails[h] is the vertex l_h that k_h leaves from, 0 <= h <= e-2
    tails: tuple[int, ...]
    _by_label: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_label", {x.label: x for x in self.arrows})

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def num_vertices(self) -> int:
        return self.n + 1

    @property
    def e(self) -> int:
        return len(self.tails) + 1

    @property
    def labels(self) -> list[str]:
        return [x.label for x in self.arrows]

    def arrow(self, label: str) -> Arrow:
        return self._by_label[label]

    def is_cyclic_a1(self) -> bool:
        return self.group.a == 1

    def clockwise(self, v: int) -> str:
        """The clockwise arrow leaving vertex v."""
        n = self.n
        return f"c{v}_{(v - 1) % (n + 1)}"

    def anticlockwise(self, v: int) -> str:
        n = self.n
        return f"a{v}_{(v + 1) % (n + 1)}"

    def extra(self, h: int) -> str:
        """Label of k_h, resolving the two aliases at the ends."""
        if self.is_cyclic_a1():
            return ("a1", "a2")[h] if h < 2 else f"k{h - 1}"
        if h == 0:
            return self.clockwise(1)
        if h == self.e - 2:
            return self.anticlockwise(self.n)
        return f"k{h}"

    def path_C(self, l: int) -> list[str]:
        """Clockwise path from 0 to l (the whole circle when l = 0)."""
        n = self.n
        out = [f"c0_{n}"]
        v = n
        stop = l if l else 0
        while v != stop:
            out.append(self.clockwise(v))
            v -= 1
        return out

    def path_A(self, l: int) -> list[str]:
        n = self.n
        out = []
        v = 0
        while True:
            out.append(self.anticlockwise(v))
            v = (v + 1) % (n + 1)
            if v == l:
                return out

    def to_dict(self) -> dict:
        return {
            "r": self.group.r,
            "a": self.group.a,
            "alpha": list(self.alpha),
            "vertices": list(range(self.num_vertices)),
            "arrows": [
                {"label": x.label, "kind": x.kind, "tail": x.tail, "head": x.head, "alias": x.alias}
                for x in self.arrows
            ],
            "tails": list(self.tails),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Quiver":
        arrows = tuple(Arrow(x["label"], x["kind"], x["tail"], x["head"], x.get("alias")) for x in d["arrows"])
        return cls(GroupParams(d["r"], d["a"]), tuple(d["alpha"]), arrows, tuple(d["tails"]))

    def pretty(self) -> str:
        lines = [f"quiver for 1/{self.group.r}({1},{self.group.a}): {self.num_vertices} vertices, "
                 f"{len(self.arrows)} arrows", f"{'label':<8}{'kind':<15}{'tail':>5}{'head':>5}  alias"]
        for x in self.arrows:
            lines.append(f"{x.label:<8}{x.kind:<15}{x.tail:>5}{x.head:>5}  {x.alias or ''}")
        return "\n".join(lines)


def build_quiver(g: GroupParams) -> Quiver:
    beta = hj_dual(g).coeffs
    m = len(beta)
    e = m + 2
    if g.a == 1:
        arrows = [Arrow("c1", "clockwise", 0, 1), Arrow("c2", "clockwise", 0, 1),
                  Arrow("a1", "anticlockwise", 1, 0), Arrow("a2", "anticlockwise", 1, 0)]
        arrows += [Arrow(f"k{h}", "extra", 1, 0) for h in range(1, g.r - 1)]
        return Quiver(g, (g.r,), tuple(arrows), tuple([1] * (e - 1)))

    alpha = hj_expand(g.r, g.a).coeffs
    n = len(alpha)
    tails = [1]
    for v, al in enumerate(alpha, start=1):
        tails += [v] * (al - 2)
    tails.append(n)
    if len(tails) != e - 1:
        raise AssertionError("number of extra arrows disagrees with the dual expansion")
    arrows = []
    for v in range(n, -1, -1):
        arrows.append(Arrow(f"c{v}_{(v - 1) % (n + 1)}", "clockwise", v, (v - 1) % (n + 1),
                            "k0" if v == 1 else None))
    for v in range(n + 1):
        arrows.append(Arrow(f"a{v}_{(v + 1) % (n + 1)}", "anticlockwise", v, (v + 1) % (n + 1),
                            f"k{e - 2}" if v == n else None))
    for h in range(1, e - 2):
        arrows.append(Arrow(f"k{h}", "extra", tails[h], 0))
    return Quiver(g, alpha, tuple(arrows), tuple(tails))


def check_duality(q: Quiver) -> bool:
    """beta_t = l_t - l_{t-1} + 2 for every t."""
    beta = hj_dual(q.group).coeffs
    l = q.tails
    return all(beta[t - 1] == l[t] - l[t - 1] + 2 for t in range(1, len(l)))
