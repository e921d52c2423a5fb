"""Deformed relations on the quiver, affine charts of the deformed
representation space, and the fibres of the map to the parameter space."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import groebner as gb
from .artin import Artin, _as_artin, qdet_ideal, zname
from .poly import Polynomial, Ring, as_coef, rank_over_Q


def lname(i: int, j: int) -> str:
    return f"l{i}_{j}"


@dataclass(frozen=True)
class DeformationParams:
    """lambda_i = (lambda_{i,beta_i-1}, ..., lambda_{i,0}) for each step i."""

    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        vals = tuple(tuple(Fraction(x) for x in row) for row in self.values)
        object.__setattr__(self, "values", vals)

    def lam(self, i: int, j: int) -> Fraction:
        row = self.values[i - 1]
        return row[len(row) - 1 - j]

    def in_delta(self) -> bool:
        return all(sum(row) == 0 for row in self.values)

    def check_shape(self, beta: Sequence[int]):
        if len(self.values) != len(beta) or any(len(r) != b for r, b in zip(self.values, beta)):
            raise ValueError(f"lambda shape {[len(r) for r in self.values]} does not match beta {list(beta)}")

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.values]

    @classmethod
    def parse(cls, text: str | list) -> "DeformationParams":
        data = json.loads(text) if isinstance(text, str) else text
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("lambda must be a JSON list of lists of rationals")
        return cls(tuple(tuple(Fraction(str(x)) for x in r) for r in data))

    @classmethod
    def zero(cls, g) -> "DeformationParams":
        A = _as_artin(g)
        return cls(tuple((Fraction(0),) * b for b in A.beta))

    @classmethod
    def random(cls, g, seed: int | random.Random, bound: int = 100) -> "DeformationParams":
        """A point of the hyperplane arrangement with small random rationals."""
        A = _as_artin(g)
        rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        rows = []
        for b in A.beta:
            free = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(b - 1)]
            rows.append(tuple(free) + (-sum(free),))
        return cls(tuple(rows))


@dataclass
class Relation:
    step: int
    index: int  # j in lambda_{i,j}
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]
    poly: Polynomial  # lhs - rhs - lambda_{i,j}

    def render(self) -> str:
        lam = lname(self.step, self.index)
        return f"{'*'.join(self.lhs)} - {'*'.join(self.rhs)} = {lam}"


def relation_ring(g, symbolic: bool = False) -> Ring:
    return _relation_data(_as_artin(g), symbolic)[0]


def _relation_data(A: Artin, symbolic: bool):
    """The ring and the lambda-free binomials lhs - rhs, built once per group."""
    cache = A.cache.setdefault("relations", {})
    if symbolic not in cache:
        names = list(A.arrow_labels)
        if symbolic:
            for i, b in enumerate(A.beta, start=1):
                names += [lname(i, j) for j in range(b - 1, 0, -1)]
        R = Ring.make(names)
        rows = []
        for i, b in enumerate(A.beta, start=1):
            for t in range(b):
                lhs = A.by_name[zname(i, t)].path
                rhs = A.by_name[zname(i, (t + 1) % b)].path
                rows.append((i, b - 1 - t, lhs, rhs, R.monomial(_count(lhs)) - R.monomial(_count(rhs))))
        cache[symbolic] = (R, rows)
    return cache[symbolic]


def _lambda_poly(A: Artin, R: Ring, lam: DeformationParams | None, i: int, j: int) -> Polynomial:
    if lam is not None:
        return R.const(lam.lam(i, j))
    if j:
        return R.var(lname(i, j))
    # lambda_{i,0} is fixed by the sum-zero condition
    return -sum((R.var(lname(i, t)) for t in range(1, A.beta[i - 1])), R.zero())


def deformed_relations(g, lam: DeformationParams | None = None) -> list[Relation]:
    """Step-i relations with arrows treated as commuting variables.  With
    lam=None the parameters are symbolic and already restricted to the
    sum-zero hyperplanes."""
    A = _as_artin(g)
    if lam is not None:
        lam.check_shape(A.beta)
    R, rows = _relation_data(A, lam is None)
    return [Relation(i, j, lhs, rhs, base - _lambda_poly(A, R, lam, i, j)) for i, j, lhs, rhs, base in rows]


def _count(path) -> dict:
    d: dict = {}
    for x in path:
        d[x] = d.get(x, 0) + 1
    return d


def rep_variety_empty_check(g, lam: DeformationParams) -> dict:
    """Sum the relations of each step.  The arrows cancel, leaving
    -sum_j lambda_{i,j}; a nonzero constant means no representations."""
    A = _as_artin(g)
    lam.check_shape(A.beta)
    R, rows = _relation_data(A, False)
    telescoped = A.cache.get("telescoped")
    if telescoped is None:
        telescoped = {}
        for i, _, _, _, base in rows:
            telescoped[i] = telescoped.get(i, R.zero()) + base
        A.cache["telescoped"] = telescoped
    witness = None
    for i, s in sorted(telescoped.items()):
        if not s.is_zero():
            raise AssertionError(f"step {i} relations do not telescope: {s}")
        total = -sum(lam.values[i - 1])
        if total and witness is None:
            witness = {"step": i, "sum": str(total)}
    return {"empty": witness is not None, "witness": witness}


# charts

@dataclass
class Chart:
    name: str
    units: tuple[str, ...]
    coordinates: tuple[str, ...]
    step_order: tuple[int, ...]


def charts(g) -> list[Chart]:
    A = _as_artin(g)
    q = A.quiver
    steps = list(range(1, A.e - 1))
    if A.group.a == 1:
        last = q.extra(A.group.r - 1)
        return [Chart("W1", ("c2",), ("c1", last), tuple(reversed(steps))),
                Chart("W2", ("c1",), ("c2", "a1"), tuple(steps))]
    n = q.n
    l = q.tails
    out = []
    for t in range(n + 1):
        units = (q.path_C(t + 1) if t < n else []) + (q.path_A(t) if t > 0 else [])
        coords = (q.clockwise((t + 1) % (n + 1)), q.anticlockwise(t))
        s = next((j for j in steps if l[j] >= t + 1), steps[-1])
        order = [s] + [j for j in steps if j > s] + [j for j in reversed(steps) if j < s]
        out.append(Chart(f"W{t}", tuple(units), coords, tuple(order)))
    return out


def chart_by_name(g, name: str) -> Chart:
    for c in charts(g):
        if c.name == name:
            return c
    raise KeyError(f"no chart named {name!r}; choose from {[c.name for c in charts(g)]}")


@dataclass
class ChartResult:
    chart: str
    units: tuple[str, ...]
    free: tuple[str, ...]
    solved: dict = field(default_factory=dict)  # arrow -> Polynomial
    residual: list = field(default_factory=list)
    stuck: list = field(default_factory=list)
    certified: bool = False

    def to_dict(self) -> dict:
        return {
            "chart": self.chart,
            "units": list(self.units),
            "coordinates": list(self.free),
            "solved": {k: str(v) for k, v in self.solved.items()},
            "residual": [str(p) for p in self.residual],
            "stuck": [str(p) for p in self.stuck],
            "certified": self.certified,
        }


def _solvable(p: Polynomial, candidates: list[str]) -> tuple[str, Polynomial] | None:
    """A candidate variable occurring only as c*x with c a nonzero constant,
    together with x expressed from p = 0."""
    R = p.ring
    for x in candidates:
        i = R.vars.index(x)
        coef = None
        ok = False
        for m, c in p.terms.items():
            if m[i]:
                if m[i] != 1 or any(v for k, v in enumerate(m) if k != i) or coef is not None:
                    ok = False
                    break
                coef, ok = c, True
        if ok:
            rest = p - R.var(x) * coef
            return x, rest * as_coef(Fraction(-1) / coef)
    return None


def _normalise(p: Polynomial) -> Polynomial:
    return p.monic()


def _eliminate(g, relations: list[Relation], units: Sequence[str], coordinates: Sequence[str] | None,
               name: str) -> ChartResult:
    A = _as_artin(g)
    R = relations[0].poly.ring
    arrows = list(A.arrow_labels)
    ones = {u: 1 for u in units}
    todo = [rel.poly.substitute(ones) for rel in relations]
    fixed = set(units) | set(coordinates or ())
    solved: dict[str, Polynomial] = {}
    unknown = [x for x in arrows if x not in fixed]
    todo = [p for p in todo if p]
    progress = True
    while progress:
        progress = False
        for k, p in enumerate(todo):
            live = [x for x in unknown if x not in solved and p.degree_in(x) > 0]
            if not live:
                continue
            if coordinates is not None and len(live) != 1:
                continue
            hit = _solvable(p, live)
            if hit is None:
                continue
            x, expr = hit
            todo.pop(k)
            # substitute only the new value; earlier values never mention x
            # in the directed case, and are updated here otherwise
            sub = {x: expr}
            solved = {y: (e.substitute(sub) if e.degree_in(x) > 0 else e) for y, e in solved.items()}
            solved[x] = expr
            todo = [q for q in ((q.substitute(sub) if q.degree_in(x) > 0 else q) for q in todo) if q]
            progress = True
            break
    remaining = [x for x in unknown if x not in solved]
    stuck = [p for p in todo if any(p.degree_in(x) > 0 for x in remaining)]
    residual = []
    seen = set()
    for p in todo:
        if p in stuck:
            continue
        key = _normalise(p)
        if key not in seen:
            seen.add(key)
            residual.append(key)
    if coordinates is None:
        free = tuple(x for x in arrows if x not in solved and x not in units)
        residual = residual + [_normalise(p) for p in stuck if _normalise(p) not in seen]
        residual = _dedupe(residual)
        stuck = []
    else:
        free = tuple(coordinates)
    ordered = {x: solved[x] for x in arrows if x in solved}
    certified = not residual and not stuck and not remaining
    return ChartResult(name, tuple(units), free, ordered, residual, stuck, certified)


def _dedupe(polys: list[Polynomial]) -> list[Polynomial]:
    out = []
    for p in polys:
        if p not in out:
            out.append(p)
    return out


def chart_eliminate(g, chart: Chart | str, lam: DeformationParams | None = None) -> ChartResult:
    """Solve the relations on a standard chart by directed substitution.
    Certified when every non-unit arrow other than the two coordinates is
    solved and every relation reduces to zero."""
    A = _as_artin(g)
    if isinstance(chart, str):
        chart = chart_by_name(A, chart)
    rels = deformed_relations(A, lam)
    order = {s: k for k, s in enumerate(chart.step_order)}
    rels.sort(key=lambda r: order[r.step])
    return _eliminate(A, rels, chart.units, chart.coordinates, chart.name)


def chart_eliminate_custom(g, units: Sequence[str], lam: DeformationParams | None = None) -> ChartResult:
    """Same substitution engine on an arbitrary normalisation; whatever
    cannot be solved is returned as a residual ideal in the free arrows."""
    A = _as_artin(g)
    for u in units:
        A.quiver.arrow(u)
    rels = deformed_relations(A, lam)
    return _eliminate(A, rels, tuple(units), None, "custom")


def residual_in_free_ring(res: ChartResult) -> tuple[Ring, list[Polynomial]]:
    ring = Ring.make(res.free)
    return ring, [p.map_to(ring) for p in res.residual]


def jacobian_singular_at(I: Sequence[Polynomial], point: Mapping[str, object], dim: int | None = None) -> bool:
    """Jacobian criterion: singular iff rank J(point) < nvars - dim.  The
    dimension defaults to the Krull dimension of I."""
    I = [f for f in I if not f.is_zero()]
    if not I:
        return False
    ring = I[0].ring
    values = {s: as_coef(Fraction(str(point[s]))) for s in ring.names}
    for f in I:
        if f.evaluate(values) != 0:
            raise ValueError("point is not on the variety")
    if dim is None:
        dim = gb.krull_dimension(I)
    rows = [[f.diff(s).evaluate(values) for s in ring.names] for f in I]
    return rank_over_Q(rows) < ring.nvars - dim


# fibres

def fiber_relations(g, lam: DeformationParams) -> list[Polynomial]:
    """z_{i,j} - z_{i,j+1} - lambda_{i,beta_i-1-j}, j < beta_i - 1."""
    A = _as_artin(g)
    lam.check_shape(A.beta)
    R = A.ring
    out = []
    for i, b in enumerate(A.beta, start=1):
        for j in range(b - 1):
            out.append(R.var(zname(i, j)) - R.var(zname(i, j + 1)) - lam.lam(i, b - 1 - j))
    return out


def closing_relation_redundant(g, lam: DeformationParams) -> bool:
    A = _as_artin(g)
    R = A.ring
    rel = fiber_relations(A, lam)
    k = 0
    for i, b in enumerate(A.beta, start=1):
        mine = rel[k:k + b - 1]
        k += b - 1
        closing = R.var(zname(i, b - 1)) - R.var(zname(i, 0)) - lam.lam(i, 0)
        if closing + sum(mine, R.zero()) != R.const(-sum(lam.values[i - 1])):
            return False
    return lam.in_delta()


def pi_fiber_ideal(g, lam: DeformationParams) -> list[Polynomial]:
    return qdet_ideal(g) + fiber_relations(g, lam)


def fiber_dimension(g, lam: DeformationParams, max_pairs: int | None = None) -> int:
    return gb.krull_dimension(pi_fiber_ideal(g, lam), max_pairs)


def pi_map_eval(g, point: Mapping[str, object]) -> DeformationParams:
    """Consecutive differences around each step: lambda_{i,beta_i-1-j} =
    alpha_{i,j} - alpha_{i,j+1 mod beta_i}."""
    A = _as_artin(g)
    rows = []
    for i, b in enumerate(A.beta, start=1):
        vals = [Fraction(str(point[zname(i, j)])) for j in range(b)]
        rows.append(tuple(vals[j] - vals[(j + 1) % b] for j in range(b)))
    return DeformationParams(tuple(rows))


def point_from_chart(g, res: ChartResult, coords: Mapping[str, object], lam: DeformationParams) -> dict:
    """Evaluate a certified chart at given coordinates and push the
    representation to the generators."""
    A = _as_artin(g)
    vals = {u: Fraction(1) for u in res.units}
    vals.update({c: Fraction(str(v)) for c, v in coords.items()})
    for x, e in res.solved.items():
        vals[x] = Fraction(e.evaluate(vals))
    out = {}
    for z in A.generators:
        v = Fraction(1)
        for x in z.path:
            v *= vals[x]
        out[z.name] = v
    return out
