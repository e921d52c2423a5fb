"""Sparse commutative polynomials over Q with dense exponent tuples.

Coefficients are ints or Fractions; the int path is kept whenever a result is
integral, since almost everything here is a binomial with unit coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from operator import add, le, mul, neg, sub
from typing import Iterable, Mapping, Union

Monomial = tuple  # tuple[int, ...]
Coef = Union[int, Fraction]


def as_coef(x) -> Coef:
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_coef(Fraction(x))
    raise TypeError(f"unsupported coefficient {x!r}")


def cdiv(a: Coef, b: Coef) -> Coef:
    if b == 1:
        return a
    if b == -1:
        return -a
    if isinstance(a, int) and isinstance(b, int):
        q, rem = divmod(a, b)
        return q if rem == 0 else Fraction(a, b)
    return as_coef(Fraction(a) / b)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(map(add, m1, m2))


def mono_div(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(map(sub, m1, m2))


def mono_divides(m1: Monomial, m2: Monomial) -> bool:
    return all(map(le, m1, m2))


def mono_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(map(max, m1, m2))


def mono_gcd(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(map(min, m1, m2))


def support_mask(m: Monomial) -> int:
    mask = 0
    for i, x in enumerate(m):
        if x:
            mask |= 1 << i
    return mask


@dataclass(frozen=True)
class VarTable:
    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        for w in self.weights:
            if w <= 0:
                raise ValueError("weights must be positive")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.names)})

    @classmethod
    def standard(cls, names: Iterable[str]) -> "VarTable":
        names = tuple(names)
        return cls(names, (1,) * len(names))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def wdeg(self, m: Monomial) -> int:
        return sum(map(mul, self.weights, m))


@dataclass(frozen=True)
class MonomialOrder:
    """kind is 'degrevlex', 'lex' or 'elim'.  For 'elim' the first `block`
    variables are compared first (by weighted degree then revlex), the rest
    break ties the same way, which makes it an elimination order for them."""

    kind: str = "degrevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown order {self.kind!r}")
        if self.kind == "elim" and self.block <= 0:
            raise ValueError("elim order needs a positive block size")

    def eliminates(self, nvars: int) -> int:
        """How many leading variables this order eliminates."""
        if self.kind == "lex":
            return nvars
        if self.kind == "elim":
            return self.block
        return 0


def _revlex_part(weights, m):
    return (sum(map(mul, weights, m)), tuple(map(neg, reversed(m))))


class Ring:
    def __init__(self, vars: VarTable, order: MonomialOrder = MonomialOrder()):
        self.vars = vars
        self.order = order
        self.nvars = len(vars)
        self._keys: dict = {}
        self._masks: dict = {}
        self.zero_mono = (0,) * self.nvars

    @classmethod
    def make(cls, names, weights=None, order: str = "degrevlex", block: int = 0) -> "Ring":
        names = tuple(names)
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        return cls(VarTable(names, weights), MonomialOrder(order, block))

    def __eq__(self, other):
        return isinstance(other, Ring) and self.vars == other.vars and self.order == other.order

    def __hash__(self):
        return hash((self.vars, self.order))

    def __repr__(self):
        return f"Ring({list(self.vars.names)}, order={self.order.kind})"

    @property
    def names(self) -> tuple[str, ...]:
        return self.vars.names

    def key(self, m: Monomial):
        k = self._keys.get(m)
        if k is None:
            kind = self.order.kind
            if kind == "degrevlex":
                k = _revlex_part(self.vars.weights, m)
            elif kind == "lex":
                k = m
            else:
                b = self.order.block
                w = self.vars.weights
                k = (_revlex_part(w[:b], m[:b]), _revlex_part(w[b:], m[b:]))
            self._keys[m] = k
        return k

    def mask(self, m: Monomial) -> int:
        k = self._masks.get(m)
        if k is None:
            k = self._masks[m] = support_mask(m)
        return k

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.vars.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(s) for s in self.names]

    def monomial(self, exps: Mapping[str, int] | Iterable[int], coef: Coef = 1) -> "Polynomial":
        if isinstance(exps, (dict, Mapping)):
            e = [0] * self.nvars
            index = self.vars.index
            for s, x in exps.items():
                if x < 0:
                    raise ValueError("negative exponent")
                e[index(s)] += x
            exps = tuple(e)
        else:
            exps = tuple(exps)
            if len(exps) != self.nvars or any(x < 0 for x in exps):
                raise ValueError("bad exponent vector")
        return Polynomial(self, {exps: as_coef(coef)})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {self.zero_mono: as_coef(c)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def mono_str(self, m: Monomial) -> str:
        parts = []
        for s, x in zip(self.names, m):
            if x == 1:
                parts.append(s)
            elif x:
                parts.append(f"{s}^{x}")
        return "*".join(parts) if parts else "1"

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.vars, order)

    def permuted(self, names: Iterable[str], order: MonomialOrder | None = None) -> "Ring":
        names = tuple(names)
        w = tuple(self.vars.weights[self.vars.index(s)] for s in names)
        return Ring(VarTable(names, w), order or self.order)

    def extended(self, names: Iterable[str], weights: Iterable[int], front: bool = False,
                 order: MonomialOrder | None = None) -> "Ring":
        names, weights = tuple(names), tuple(weights)
        if front:
            vt = VarTable(names + self.names, weights + self.vars.weights)
        else:
            vt = VarTable(self.names + names, self.vars.weights + weights)
        return Ring(vt, order or self.order)


class Polynomial:
    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._lm = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._lm = None
        return p

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lm(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def lc(self) -> Coef:
        return self.terms[self.lm()]

    def lt(self) -> tuple[Monomial, Coef]:
        m = self.lm()
        return m, self.terms[m]

    def sorted_terms(self) -> list[tuple[Monomial, Coef]]:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.sorted_terms()]

    def wdeg(self) -> int:
        return max(self.ring.vars.wdeg(m) for m in self.terms) if self.terms else -1

    def is_homogeneous(self) -> bool:
        return len({self.ring.vars.wdeg(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def variables(self) -> set[str]:
        out = set()
        for m in self.terms:
            for s, x in zip(self.ring.names, m):
                if x:
                    out.add(s)
        return out

    def degree_in(self, name: str) -> int:
        i = self.ring.vars.index(name)
        return max((m[i] for m in self.terms), default=-1)

    # arithmetic
    def _check(self, other: "Polynomial"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_coef(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(map(add, m1, m2))
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return Polynomial._raw(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_term(self, mono: Monomial, coef: Coef) -> "Polynomial":
        return Polynomial._raw(self.ring, {tuple(map(add, m, mono)): c * coef
                                           for m, c in self.terms.items()})

    def monic(self) -> "Polynomial":
        lc = self.lc()
        if lc == 1:
            return self
        return Polynomial._raw(self.ring, {m: cdiv(c, lc) for m, c in self.terms.items()})

    def scale_to_primitive(self) -> "Polynomial":
        """Monic, used to compare ideal generators up to units."""
        return self.monic()

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({self.ring.zero_mono: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # evaluation
    def substitute(self, values: Mapping[str, "Polynomial | Coef"]) -> "Polynomial":
        """Replace variables by polynomials of the same ring (or constants)."""
        ring = self.ring
        idx = {}
        for s, v in values.items():
            idx[ring.vars.index(s)] = v if isinstance(v, Polynomial) else ring.const(v)
        if not idx:
            return self
        powers: dict = {}
        out = ring.zero()
        for m, c in self.terms.items():
            rest = list(m)
            term = None
            for i, p in idx.items():
                if m[i]:
                    key = (i, m[i])
                    if key not in powers:
                        powers[key] = p ** m[i]
                    term = powers[key] if term is None else term * powers[key]
                    rest[i] = 0
            base = Polynomial._raw(ring, {tuple(rest): c})
            out = out + (base if term is None else base * term)
        return out

    def evaluate(self, values: Mapping[str, Coef]) -> Coef:
        total: Coef = 0
        vals = [as_coef(values[s]) if s in values else None for s in self.ring.names]
        for m, c in self.terms.items():
            t = c
            for v, x in zip(vals, m):
                if x:
                    if v is None:
                        raise KeyError("missing value for a variable in evaluate")
                    t = t * v ** x
            total += t
        return as_coef(total) if not isinstance(total, int) else total

    def diff(self, name: str) -> "Polynomial":
        i = self.ring.vars.index(name)
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                t[tuple(e)] = c * m[i]
        return Polynomial._raw(self.ring, t)

    def map_to(self, ring: Ring) -> "Polynomial":
        """Move into another ring by variable name (missing variables must not occur)."""
        pos = []
        for i, s in enumerate(self.ring.names):
            pos.append(ring.vars.index(s) if s in ring.vars._index else None)
        t = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, x in enumerate(m):
                if x:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.ring.names[i]} not in target ring")
                    e[pos[i]] = x
            t[tuple(e)] = c
        return Polynomial._raw(ring, t)

    # text
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            ms = self.ring.mono_str(m)
            if ms == "1":
                body = str(a)
            elif a == 1:
                body = ms
            else:
                body = f"{a}*{ms}"
            if k == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-])|(\()|(\)))")


class ParseError(ValueError):
    pass


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse sums of signed terms like ``-3/2*x^2*y + z - 1``. Parentheses
    group sub-expressions and may be raised to powers."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = mt.end()
        num, name, caret, star, sign, lp, rp = mt.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif caret:
            tokens.append(("^", caret))
        elif star:
            tokens.append(("*", star))
        elif sign:
            tokens.append(("sign", sign))
        elif lp:
            tokens.append(("(", lp))
        elif rp:
            tokens.append((")", rp))
    tokens.append(("end", ""))
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None):
        nonlocal i
        t = tokens[i]
        if kind and t[0] != kind:
            raise ParseError(f"expected {kind}, got {t[1]!r}")
        i += 1
        return t

    def expr():
        total = ring.zero()
        sign = 1
        if peek()[0] == "sign":
            sign = -1 if take()[1] == "-" else 1
        total = total + term() * sign
        while peek()[0] == "sign":
            sign = -1 if take()[1] == "-" else 1
            total = total + term() * sign
        return total

    def term():
        p = factor()
        while peek()[0] in ("*", "name", "("):
            if peek()[0] == "*":
                take()
            p = p * factor()
        return p

    def factor():
        t = peek()
        if t[0] == "num":
            take()
            base = ring.const(Fraction(t[1]))
        elif t[0] == "name":
            take()
            try:
                base = ring.var(t[1])
            except KeyError as exc:
                raise ParseError(str(exc)) from None
        elif t[0] == "(":
            take()
            base = expr()
            take(")")
        else:
            raise ParseError(f"unexpected token {t[1]!r}")
        if peek()[0] == "^":
            take()
            k = take("num")[1]
            if "/" in k:
                raise ParseError("exponents must be non-negative integers")
            base = base ** int(k)
        return base

    if tokens[0][0] == "end":
        raise ParseError("empty polynomial")
    out = expr()
    if peek()[0] != "end":
        raise ParseError(f"trailing input near {peek()[1]!r}")
    return out


def leading_term(f: Polynomial) -> tuple[Monomial, Coef]:
    return f.lt()


def compare(ring: Ring, m1: Monomial, m2: Monomial) -> int:
    return ring.compare(m1, m2)


def rank_over_Q(rows: list[list]) -> int:
    """Rank of a rational matrix by fraction-exact elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / mat[rank][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank
