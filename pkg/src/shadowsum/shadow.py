"""Colored shadows: piece templates, boundary gluing, and state sums.

A shadow here is a 4-valent loop diagram on a surface whose complementary
regions carry half-integer weights (gleams).  The two building blocks are
fixed templates:

  S piece  (once-punctured torus):   2 loops, 1 crossing, 1 annular
           region with gleam 2 and 4 corners, 1 boundary port.
  A piece  (four-punctured sphere):  2 loops, 2 crossings, 4 annular
           regions with gleam 1 and 2 corners each, 4 boundary ports.

Gluing k S pieces and l A pieces along a perfect matching of their
k + 4l ports merges the port regions pairwise; merged regions add gleams,
corners and Euler characteristics.  Every merged region then has Euler
characteristic 0 and modified gleam (gleam - corners/2) equal to 0, and
the total gleam equals twice the crossing count, as befits a trivial
circle bundle.  Both facts are audited at build time.

The state of a surface coloring eta is the product over crossings of the
6j-symbol of (loop, region) colors arranged as

        over loop   i | j k     positions (i, j, k, l, m, n),
        under loop  l | m n     faces (i,j,k) (i,m,n) (j,l,n) (k,l,m)

times a per-region factor ((-1)^c [c+1])^euler * exp(2 u_c * modified_gleam)
with u_c = pi*sqrt(-1)*(c/2)(1 - (c+2)/r); the factor is 1 on every
in-family region.  The state sum adds states over all admissible surface
colorings and factors over connected components of the diagram.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import AdmissibilityError, ConsistencyError, PhaseMixError, SpecError
from .qarith import ONE, ZERO, QValue, RootContext, qint, qmul, qsum, qvalue
from .sixj import Tuple6, sixj, triple_admissible

# A surface coloring is a tuple of colors indexed by merged-region id.
SurfaceColoring = tuple


@dataclass(frozen=True)
class RegionSlot:
    gleam: Fraction
    corners: int
    euler: int

    @property
    def modified_gleam(self) -> Fraction:
        return self.gleam - Fraction(self.corners, 2)


@dataclass(frozen=True)
class CrossingSlot:
    loops: tuple  # (over, under) loop slots
    regions: tuple  # incident region slots in positions (j, k, m, n)


@dataclass(frozen=True)
class EdgeSlot:
    loop: int
    regions: tuple  # the two adjacent region slots (may coincide)


@dataclass(frozen=True)
class PieceTemplate:
    kind: str
    loops: int
    regions: tuple
    crossings: tuple
    edges: tuple
    ports: tuple  # port index -> adjacent region slot


def gleam_from_corners(corners: int) -> Fraction:
    """Local gleam rule reconstructed from the fixed templates: an
    annular region acquires gleam corners/2 from the crossing wedges.
    Reproduces both template gleams (4 corners -> 2, 2 corners -> 1);
    kept as a cross-check, the templates themselves hardcode the values.
    """
    return Fraction(corners, 2)


S_PIECE = PieceTemplate(
    kind="S",
    loops=2,
    regions=(RegionSlot(Fraction(2), 4, 0),),
    crossings=(CrossingSlot((0, 1), (0, 0, 0, 0)),),
    edges=(EdgeSlot(0, (0, 0)), EdgeSlot(1, (0, 0))),
    ports=(0,),
)

A_PIECE = PieceTemplate(
    kind="A",
    loops=2,
    regions=tuple(RegionSlot(Fraction(1), 2, 0) for _ in range(4)),
    # both crossings see the same four regions in the same positions;
    # any relabeling of the second vertex is absorbed by 6j symmetries
    crossings=(CrossingSlot((0, 1), (0, 1, 2, 3)), CrossingSlot((0, 1), (0, 1, 2, 3))),
    edges=(EdgeSlot(0, (0, 1)), EdgeSlot(0, (2, 3)), EdgeSlot(1, (0, 3)), EdgeSlot(1, (1, 2))),
    ports=(0, 1, 2, 3),
)


def port_names(k: int, l: int) -> list:
    names = [f"S{i}.p0" for i in range(k)]
    for j in range(l):
        names.extend(f"A{j}.p{p}" for p in range(4))
    return names


def auto_matching(k: int, l: int) -> tuple:
    """Canonical pairing: consecutive S pieces are glued to each other
    and each A piece is glued to itself along (p0,p1) and (p2,p3).
    Since k is even this consumes every port; no leftover rule is needed.
    """
    pairs = [(f"S{i}.p0", f"S{i + 1}.p0") for i in range(0, k, 2)]
    for j in range(l):
        pairs.append((f"A{j}.p0", f"A{j}.p1"))
        pairs.append((f"A{j}.p2", f"A{j}.p3"))
    return tuple(pairs)


@dataclass(frozen=True)
class GluingSpec:
    """k S pieces and l A pieces glued along a perfect port matching."""

    k: int
    l: int
    matching: tuple

    def __post_init__(self):
        if self.k < 0 or self.l < 0:
            raise SpecError("k and l must be nonnegative")
        if self.k % 2:
            raise SpecError(f"k must be even, got {self.k}")
        if self.k == 0 and self.l == 0:
            raise SpecError("empty gluing (k=0, l=0) is rejected")
        valid = set(port_names(self.k, self.l))
        seen = set()
        norm = []
        for pair in self.matching:
            if len(pair) != 2:
                raise SpecError(f"matching entries must be port pairs, got {pair!r}")
            a, b = pair
            if a not in valid or b not in valid:
                raise SpecError(f"unknown port in pair ({a!r}, {b!r})")
            if a == b:
                raise SpecError(f"port {a!r} matched to itself")
            if a in seen or b in seen:
                raise SpecError(f"port used twice in matching: ({a!r}, {b!r})")
            seen.update((a, b))
            norm.append((a, b) if a <= b else (b, a))
        if len(seen) != len(valid):
            missing = sorted(valid - seen)
            raise SpecError(f"matching is not perfect; unmatched ports: {missing}")
        object.__setattr__(self, "matching", tuple(sorted(norm)))

    @classmethod
    def auto(cls, k: int, l: int) -> "GluingSpec":
        return cls(k, l, auto_matching(k, l))

    @classmethod
    def from_dict(cls, data: dict) -> "GluingSpec":
        try:
            k, l = int(data["k"]), int(data["l"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"gluing spec needs integer fields 'k' and 'l': {exc}")
        matching = data.get("matching", "auto")
        if matching == "auto":
            return cls.auto(k, l)
        if not isinstance(matching, (list, tuple)):
            raise SpecError("'matching' must be \"auto\" or a list of port pairs")
        return cls(k, l, tuple(tuple(p) for p in matching))

    @classmethod
    def load(cls, path) -> "GluingSpec":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read gluing spec {path}: {exc}")
        return cls.from_dict(data)

    @property
    def loop_count(self) -> int:
        return 2 * (self.k + self.l)

    @property
    def crossing_count(self) -> int:
        return self.k + 2 * self.l


@dataclass(frozen=True)
class Region:
    gleam: Fraction
    corners: int
    euler: int

    @property
    def modified_gleam(self) -> Fraction:
        return self.gleam - Fraction(self.corners, 2)


@dataclass(frozen=True)
class Crossing:
    loops: tuple  # (over, under) loop ids; tuple positions (i, l)
    regions: tuple  # merged-region ids in positions (j, k, m, n)


@dataclass(frozen=True)
class Edge:
    loop: int
    regions: tuple


class ShadowGraph:
    """A glued (or synthetic) shadow: loops, crossings, merged regions,
    loop-arc edges, and the connected components of the region graph.

    Loop ids: S-piece loops first (2i, 2i+1 for piece S_i), then A-piece
    loops; a link coloring gamma is indexed by loop id.
    """

    def __init__(self, loops: int, regions: tuple, crossings: tuple, edges: tuple, spec: GluingSpec | None = None):
        self.loops = loops
        self.regions = tuple(regions)
        self.crossings = tuple(crossings)
        self.edges = tuple(edges)
        self.spec = spec
        self.components = self._connected_components()
        self._plans: dict = {}

    def total_gleam(self) -> Fraction:
        """Sum of region gleams minus twice the crossing count."""
        return sum((x.gleam for x in self.regions), Fraction(0)) - 2 * len(self.crossings)

    def _connected_components(self) -> tuple:
        parent = list(range(len(self.regions)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        for e in self.edges:
            union(e.regions[0], e.regions[1])
        for c in self.crossings:
            for x in c.regions[1:]:
                union(c.regions[0], x)
        groups: dict = {}
        for i in range(len(self.regions)):
            groups.setdefault(find(i), []).append(i)
        comps = []
        for root in sorted(groups):
            regs = tuple(groups[root])
            in_comp = set(regs)
            comps.append(
                _Component(
                    regions=regs,
                    crossings=tuple(c for c in self.crossings if c.regions[0] in in_comp),
                    edges=tuple(e for e in self.edges if e.regions[0] in in_comp),
                )
            )
        return tuple(comps)

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_plans"] = {}  # evaluation plans are per-process caches
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)

    def __repr__(self) -> str:
        tag = f" {self.spec.k}S+{self.spec.l}A" if self.spec else ""
        return (
            f"ShadowGraph({self.loops} loops, {len(self.crossings)} crossings, "
            f"{len(self.regions)} regions{tag})"
        )


@dataclass(frozen=True)
class _Component:
    regions: tuple
    crossings: tuple
    edges: tuple


def build_shadow(spec: GluingSpec) -> ShadowGraph:
    """Instantiate the templates, merge port regions along the matching,
    and audit the family invariants."""
    pieces = [("S", i, S_PIECE) for i in range(spec.k)] + [("A", j, A_PIECE) for j in range(spec.l)]

    slot_id: dict = {}
    slot_data = []
    loop_base: dict = {}
    loop_total = 0
    for kind, idx, tpl in pieces:
        loop_base[(kind, idx)] = loop_total
        loop_total += tpl.loops
        for s, reg in enumerate(tpl.regions):
            slot_id[(kind, idx, s)] = len(slot_data)
            slot_data.append(reg)

    # union-find over region slots via matched ports
    parent = list(range(len(slot_data)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def port_slot(name: str) -> int:
        piece, p = name.split(".")
        kind, idx = piece[0], int(piece[1:])
        tpl = S_PIECE if kind == "S" else A_PIECE
        return slot_id[(kind, idx, tpl.ports[int(p[1:])])]

    for a, b in spec.matching:
        ra, rb = find(port_slot(a)), find(port_slot(b))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    roots: dict = {}
    for s in range(len(slot_data)):
        roots.setdefault(find(s), []).append(s)
    region_of_slot = {}
    regions = []
    for rid, root in enumerate(sorted(roots)):
        slots = roots[root]
        for s in slots:
            region_of_slot[s] = rid
        regions.append(
            Region(
                gleam=sum((slot_data[s].gleam for s in slots), Fraction(0)),
                corners=sum(slot_data[s].corners for s in slots),
                euler=sum(slot_data[s].euler for s in slots),
            )
        )

    crossings = []
    edges = []
    for kind, idx, tpl in pieces:
        base = loop_base[(kind, idx)]
        for c in tpl.crossings:
            crossings.append(
                Crossing(
                    loops=(base + c.loops[0], base + c.loops[1]),
                    regions=tuple(region_of_slot[slot_id[(kind, idx, s)]] for s in c.regions),
                )
            )
        for e in tpl.edges:
            edges.append(
                Edge(
                    loop=base + e.loop,
                    regions=tuple(region_of_slot[slot_id[(kind, idx, s)]] for s in e.regions),
                )
            )

    g = ShadowGraph(loop_total, tuple(regions), tuple(crossings), tuple(edges), spec)

    # audits: trivial-bundle total gleam, per-region invariants, merge count
    if g.total_gleam() != 0:
        raise ConsistencyError(f"total gleam {g.total_gleam()} != 0 for {spec}")
    for rid, reg in enumerate(g.regions):
        if reg.euler != 0 or reg.modified_gleam != 0:
            raise ConsistencyError(f"region {rid} violates euler=0/modified-gleam=0: {reg}")
    if len(g.regions) != (spec.k + 4 * spec.l) // 2:
        raise ConsistencyError(
            f"expected {(spec.k + 4 * spec.l) // 2} merged regions, got {len(g.regions)}"
        )
    return g


def crossing_tuple(g: ShadowGraph, crossing: Crossing, gamma, eta) -> Tuple6:
    """Assemble the 6-tuple (i, j, k, l, m, n) of a crossing from the
    loop coloring gamma and surface coloring eta."""
    i, l = gamma[crossing.loops[0]], gamma[crossing.loops[1]]
    j, k, m, n = (eta[x] for x in crossing.regions)
    return Tuple6((i, j, k, l, m, n))


def _region_factor(ctx: RootContext, region: Region, color: int) -> QValue:
    """((-1)^c [c+1])^euler * exp(2 u_c x') as a QValue; identically one
    on in-family regions (euler = 0, modified gleam = 0).  Raises when
    the holonomy phase is not a quarter turn (out of family)."""
    out = ONE
    if region.euler != 0:
        v = qint(ctx, color + 1)
        if color % 2:
            v = -v
        out = v.power(region.euler)
    x_mod = region.modified_gleam
    if x_mod != 0:
        # exp(2 u_c x') = exp(i*pi * c*(r-c-2)/r * x') = sqrt(-1)^(2t), t exact
        two_t = 2 * Fraction(color * (ctx.r - color - 2), ctx.r) * x_mod
        if two_t.denominator != 1:
            raise PhaseMixError(
                f"region holonomy exp(2*u_{color}*{x_mod}) is not a quarter-turn phase at r={ctx.r}"
            )
        out = qmul(out, qvalue(int(two_t), 1, 0.0))
    return out


def coloring_admissible(g: ShadowGraph, r: int, gamma, eta) -> bool:
    """Every loop-arc edge triple (gamma(e), eta(X), eta(X')) admissible."""
    return all(
        triple_admissible(r, gamma[e.loop], eta[e.regions[0]], eta[e.regions[1]]) for e in g.edges
    )


def state(g: ShadowGraph, ctx: RootContext, gamma, eta) -> QValue:
    """Single-state value: product of crossing 6j-symbols and region factors."""
    _check_coloring(g, ctx.r, gamma, eta)
    if not coloring_admissible(g, ctx.r, gamma, eta):
        raise AdmissibilityError(f"surface coloring {tuple(eta)} not admissible for gamma={tuple(gamma)}")
    out = ONE
    for c in g.crossings:
        out = qmul(out, sixj(ctx, crossing_tuple(g, c, gamma, eta)))
        if out.sign == 0:
            return ZERO
    for rid, reg in enumerate(g.regions):
        out = qmul(out, _region_factor(ctx, reg, eta[rid]))
        if out.sign == 0:
            return ZERO
    return out


def _check_coloring(g: ShadowGraph, r: int, gamma, eta=None) -> None:
    if len(gamma) != g.loops:
        raise AdmissibilityError(f"gamma must color all {g.loops} loops, got {len(gamma)}")
    if any(not 0 <= c <= r - 2 for c in gamma):
        raise AdmissibilityError(f"gamma {tuple(gamma)} outside I_r at r={r}")
    if eta is not None:
        if len(eta) != len(g.regions):
            raise AdmissibilityError(f"eta must color all {len(g.regions)} regions, got {len(eta)}")
        if any(not 0 <= c <= r - 2 for c in eta):
            raise AdmissibilityError(f"eta {tuple(eta)} outside I_r at r={r}")


def enumerate_admissible(g: ShadowGraph, r: int, gamma):
    """Yield admissible surface colorings in lexicographic order over
    merged-region ids, pruning each edge as soon as both ends are colored."""
    _check_coloring(g, r, gamma)
    q = len(g.regions)
    # edges checkable once region t is colored
    ready: list = [[] for _ in range(q)]
    for e in g.edges:
        ready[max(e.regions)].append(e)
    eta = [0] * q

    def descend(t: int):
        if t == q:
            yield tuple(eta)
            return
        for color in range(r - 1):
            eta[t] = color
            if all(
                triple_admissible(r, gamma[e.loop], eta[e.regions[0]], eta[e.regions[1]])
                for e in ready[t]
            ):
                yield from descend(t + 1)

    yield from descend(0)


class _EvalPlan:
    """Per-(graph, context) evaluation plan for repeated state sums.

    Precomputes admissible-pair boolean tables per loop color and a
    per-crossing value cache keyed by the concrete colors involved, then
    enumerates each connected component independently (the state is a
    product over components, so the sum factors)."""

    def __init__(self, g: ShadowGraph, ctx: RootContext):
        self.g = g
        self.ctx = ctx
        r = ctx.r
        cols = np.arange(r - 1)
        x, y = np.meshgrid(cols, cols, indexing="ij")
        self._x, self._y = x, y
        self._pair: dict = {}
        self._cval: dict = {}
        self.comp_plans = [self._component_plan(c) for c in g.components]

    def pair_table(self, c: int) -> np.ndarray:
        tab = self._pair.get(c)
        if tab is None:
            x, y, r = self._x, self._y, self.ctx.r
            s = c + x + y
            tab = (s % 2 == 0) & (s <= 2 * (r - 2)) & (x + y >= c) & (np.abs(x - y) <= c)
            self._pair[c] = tab
        return tab

    def _component_plan(self, comp: _Component):
        order = list(comp.regions)
        pos = {rid: i for i, rid in enumerate(order)}
        self_edges: list = [[] for _ in order]
        cross_edges: list = [[] for _ in order]
        for e in comp.edges:
            a, b = pos[e.regions[0]], pos[e.regions[1]]
            if a == b:
                self_edges[a].append(e.loop)
            else:
                lo, hi = min(a, b), max(a, b)
                cross_edges[hi].append((lo, e.loop))
        cross_ready: list = [[] for _ in order]
        for c in comp.crossings:
            depth = max(pos[x] for x in c.regions)
            cross_ready[depth].append((c.loops, tuple(pos[x] for x in c.regions)))
        factors = []
        for i, rid in enumerate(order):
            reg = self.g.regions[rid]
            factors.append(reg if (reg.euler != 0 or reg.modified_gleam != 0) else None)
        return order, self_edges, cross_edges, cross_ready, factors

    def crossing_value(self, loops_colors: tuple, region_colors: tuple) -> QValue:
        key = (loops_colors, region_colors)
        val = self._cval.get(key)
        if val is None:
            i, l = loops_colors
            j, k, m, n = region_colors
            # edge pruning covers the crossing faces on glued graphs, but a
            # synthetic graph may omit edges, so keep the checked path here
            val = sixj(self.ctx, (i, j, k, l, m, n))
            self._cval[key] = val
        return val

    def component_states(self, ci: int, gamma) -> list:
        """All admissible states of component ci as QValues (deterministic
        lexicographic order in the component's region colors)."""
        order, self_edges, cross_edges, cross_ready, factors = self.comp_plans[ci]
        ctx, r = self.ctx, self.ctx.r
        depthmax = len(order)
        base = np.ones(r - 1, dtype=bool)
        out: list = []
        colors = [0] * depthmax
        partial = [ONE] * (depthmax + 1)

        def descend(d: int):
            if d == depthmax:
                out.append(partial[d])
                return
            allowed = base
            for loop in self_edges[d]:
                c = gamma[loop]
                if c % 2:
                    return  # self edge (c, m, m) needs even c
                allowed = allowed & self.pair_table(c).diagonal()
            for (lo, loop) in cross_edges[d]:
                allowed = allowed & self.pair_table(gamma[loop])[colors[lo]]
            for m in np.nonzero(allowed)[0]:
                colors[d] = int(m)
                val = partial[d]
                for (loops, regs) in cross_ready[d]:
                    val = qmul(
                        val,
                        self.crossing_value(
                            (gamma[loops[0]], gamma[loops[1]]),
                            tuple(colors[p] for p in regs),
                        ),
                    )
                    if val.sign == 0:
                        break
                if factors[d] is not None and val.sign != 0:
                    val = qmul(val, _region_factor(ctx, factors[d], colors[d]))
                partial[d + 1] = val
                descend(d + 1)

        descend(0)
        return out


def _plan(g: ShadowGraph, ctx: RootContext) -> _EvalPlan:
    plan = g._plans.get(id(ctx))
    if plan is None or plan.ctx is not ctx:
        plan = _EvalPlan(g, ctx)
        g._plans.clear()  # one context at a time; avoids unbounded growth
        g._plans[id(ctx)] = plan
    return plan


def component_state_values(g: ShadowGraph, ctx: RootContext, gamma) -> list:
    """Per-component lists of admissible state values; the full state sum
    is the product over components of each list's sum."""
    _check_coloring(g, ctx.r, gamma)
    plan = _plan(g, ctx)
    return [plan.component_states(ci, tuple(gamma)) for ci in range(len(g.components))]


def state_sum(g: ShadowGraph, ctx: RootContext, gamma) -> QValue:
    """Sum of states over all admissible surface colorings (exactly zero
    when none exist), factored over connected components."""
    _check_coloring(g, ctx.r, gamma)
    plan = _plan(g, ctx)
    total = ONE
    for ci in range(len(g.components)):
        comp_sum = qsum(plan.component_states(ci, tuple(gamma)))
        if comp_sum.sign == 0:
            return ZERO
        total = qmul(total, comp_sum)
    return total
