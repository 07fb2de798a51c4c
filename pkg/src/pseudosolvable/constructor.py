"""Witness groups for accepted certificates.

A witness has the shape R x| (S x K): S is the head group (absent for
solvable inputs), K = Q x| P is a metabelian scaffold of cyclic groups of
prime order on the O and D vertices, and R is a direct sum of one module per
non-anchor I vertex. The prime graph is assembled blockwise from verified
components instead of enumerating the whole witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import product
from math import prod

import numpy as np
from sympy import isprime, primitive_root

from . import cyclo
from .fplinear import (
    MatrixRep,
    PrimeField,
    RepError,
    induce_rep,
    induced_image,
    kernel_dim,
    twist_by_character,
)
from .graph import SimpleGraph, ThreeColoring, complement, induced_subgraph, orient_by_coloring
from .groups import (
    CapExceeded,
    FiniteGroup,
    SemidirectSpec,
    brute_force_semidirect,
    closure,
    head_group,
    prime_graph,
    semidirect_prime_graph,
)
from .heads import GROUP_OF, REP_FOR_PATTERN, head_rep, profile_mismatches
from .patterns import Certificate, as_sl25_shape, as_two_s5_shape, classify, validate_certificate

HEAD_ORDER = {"A5": 60, "SL25": 120, "TwoS5": 240}
MAX_RANK = 500
DEFAULT_PRIME_CAP = 2**31


class ConstructionError(RuntimeError):
    """A component failed verification; the message names it."""


@dataclass(frozen=True)
class ModulePlan:
    vertex: str
    near: tuple[int, ...]  # primes at distance 1 in the oriented scaffold
    far: tuple[int, ...]  # primes at distance 2
    r: int
    rep: str | None = None
    rank: int | None = None


@dataclass(frozen=True)
class GroupRecipe:
    primes: tuple[tuple[str, int], ...]
    actions: tuple[tuple[int, int], ...]
    head: str | None
    modules: tuple[ModulePlan, ...] = ()

    @cached_property
    def prime_of(self) -> dict[str, int]:
        return dict(self.primes)

    @cached_property
    def vertex_of(self) -> dict[int, str]:
        return {p: v for v, p in self.primes}

    @property
    def module_primes(self) -> set[int]:
        return {m.r for m in self.modules}

    @property
    def head_primes(self) -> set[int]:
        return {2, 3, 5} if self.head else set()

    @property
    def scaffold_primes(self) -> list[int]:
        skip = self.module_primes | self.head_primes
        return [p for _, p in self.primes if p not in skip]

    @property
    def acting_primes(self) -> list[int]:
        acting = {p for p, _ in self.actions}
        return [p for p in self.scaffold_primes if p in acting]

    @property
    def passive_primes(self) -> list[int]:
        acting = {p for p, _ in self.actions}
        return [p for p in self.scaffold_primes if p not in acting]

    def check(self) -> None:
        ps = [p for _, p in self.primes]
        if len(set(ps)) != len(ps):
            raise ValueError("assigned primes are not distinct")
        if any(not isprime(p) for p in ps):
            raise ValueError("assigned value is not prime")
        for p, q in self.actions:
            if (q - 1) % p:
                raise ValueError(f"{p} cannot act fixed-point-freely on C_{q}")
        h = HEAD_ORDER.get(self.head, 1)
        for m in self.modules:
            if (m.r - 1) % (h * prod(m.near) * prod(m.far)):
                raise ValueError(f"module prime {m.r} is not 1 mod |head|*|B|")


# ---------------------------------------------------------------------------
# Prime selection


def next_prime_1_mod(m: int, used: set[int], cap: int = DEFAULT_PRIME_CAP) -> int:
    """Smallest prime q > 5 with q = 1 mod m that is not in ``used``."""
    q = 1 + m
    while q <= cap:
        if q > 5 and q not in used and isprime(q):
            return q
        q += m
    raise CapExceeded(f"no prime = 1 mod {m} below {cap}")


def choose_head(cert: Certificate, prefer_fig3: bool = False) -> str | None:
    if cert.category == "SolvableTrivial":
        return None
    if cert.category == "Cat235":
        return "A5"
    if cert.fig2_admissible and not (prefer_fig3 and cert.fig3_admissible):
        return "SL25"
    return "TwoS5"


def _scaffold_orientation(cert: Certificate, gbar: SimpleGraph):
    anchors = {v for _, v in cert.anchors}
    rest = [v for v in gbar.vertices if v not in anchors]
    sub = induced_subgraph(gbar, rest)
    col = cert.coloring
    restricted = ThreeColoring(*(tuple(v for v in getattr(col, c) if v not in anchors) for c in ("O", "D", "I")))
    return rest, restricted, orient_by_coloring(sub, restricted)


def neighborhoods(cert: Certificate, gbar: SimpleGraph) -> dict[str, tuple[list[str], list[str]]]:
    """Distance-1 and distance-2 in-neighbourhoods of each non-anchor I vertex."""
    rest, col, dig = _scaffold_orientation(cert, gbar)
    out = {}
    for v in col.I:
        n1 = dig.predecessors(v)
        n2 = []
        for w in n1:
            if w in col.D:
                for u in dig.predecessors(w):
                    if u not in n1 and u not in n2:
                        n2.append(u)
        order = {x: i for i, x in enumerate(rest)}
        out[v] = (sorted(n1, key=order.__getitem__), sorted(n2, key=order.__getitem__))
    return out


def select_primes(
    cert: Certificate, gbar: SimpleGraph, prefer_fig3: bool = False, cap: int = DEFAULT_PRIME_CAP
) -> GroupRecipe:
    validate_certificate(cert, gbar)
    head = choose_head(cert, prefer_fig3)
    prime: dict[str, int] = {v: p for p, v in cert.prime_roles().items()}
    used = {2, 3, 5}
    rest, col, dig = _scaffold_orientation(cert, gbar)
    for v in col.O:
        prime[v] = next_prime_1_mod(1, used, cap)
        used.add(prime[v])
    for v in col.D:
        m = prod(prime[u] for u in dig.predecessors(v))
        prime[v] = next_prime_1_mod(m, used, cap)
        used.add(prime[v])
    actions = tuple((prime[u], prime[w]) for u, w in dig.arcs if u in col.O and w in col.D)
    hoods = neighborhoods(cert, gbar)
    modules = []
    for v in col.I:
        n1, n2 = hoods[v]
        near = tuple(prime[u] for u in n1)
        far = tuple(prime[u] for u in n2)
        r = next_prime_1_mod(HEAD_ORDER.get(head, 1) * prod(near) * prod(far), used, cap)
        used.add(r)
        prime[v] = r
        modules.append(ModulePlan(v, near, far, r))
    primes = tuple((v, prime[v]) for v in gbar.vertices)
    recipe = GroupRecipe(primes, actions, head, tuple(modules))
    recipe.check()
    return recipe


def plan_modules(cert: Certificate, recipe: GroupRecipe) -> GroupRecipe:
    patterns = dict(cert.patterns)
    plans = []
    for m in recipe.modules:
        if recipe.head is None:
            rep, degree = "trivial", 1
        else:
            pid = patterns[m.vertex]
            pid = as_two_s5_shape(pid) if recipe.head == "TwoS5" else as_sl25_shape(pid) if recipe.head == "SL25" else pid
            if pid not in REP_FOR_PATTERN:
                raise ConstructionError(f"pattern {pid} of {m.vertex} has no representation")
            rep = REP_FOR_PATTERN[pid]
            table = cyclo.load_table(GROUP_OF[rep])
            degree = table.degree(rep)
        rank = degree * prod(m.far)
        if rank > MAX_RANK:
            raise ConstructionError(f"module for {m.vertex} would have rank {rank} > {MAX_RANK}")
        plans.append(replace(m, rep=rep, rank=rank))
    return replace(recipe, modules=tuple(plans))


def build_recipe(gamma: SimpleGraph, prefer_fig3: bool = False):
    """classify -> select_primes -> plan_modules; returns (verdict, recipe or None)."""
    verdict = classify(gamma)
    if not verdict.realizable:
        return verdict, None
    gbar = complement(gamma)
    recipe = select_primes(verdict.certificate, gbar, prefer_fig3)
    return verdict, plan_modules(verdict.certificate, recipe)


# ---------------------------------------------------------------------------
# Scaffold K = Q x| P


class ScaffoldKind:
    """Pairs (x, y): x over the passive primes, y over the acting primes.

    (x, y)(x', y') = (x + y.x', y + y') where y scales coordinate q by
    the product of lam[p][q]^y_p.
    """

    def __init__(self, passive: list[int], acting: list[int], lam: dict[tuple[int, int], int]):
        self.qs, self.ps, self.lam = passive, acting, lam

    def identity(self):
        return ((0,) * len(self.qs), (0,) * len(self.ps))

    def act(self, y, x, sign: int = 1):
        out = []
        for q, xq in zip(self.qs, x):
            f = 1
            for p, yp in zip(self.ps, y):
                f = f * pow(self.lam.get((p, q), 1), sign * yp, q) % q
            out.append(xq * f % q)
        return tuple(out)

    def mul(self, a, b):
        x = tuple((u + v) % q for u, v, q in zip(a[0], self.act(a[1], b[0]), self.qs))
        y = tuple((u + v) % p for u, v, p in zip(a[1], b[1], self.ps))
        return (x, y)

    def inv(self, a):
        x = tuple(-v % q for v, q in zip(self.act(a[1], a[0], -1), self.qs))
        return (x, tuple(-v % p for v, p in zip(a[1], self.ps)))

    def check(self, a):
        pass

    def generator(self, prime: int):
        x = tuple(int(q == prime) for q in self.qs)
        y = tuple(int(p == prime) for p in self.ps)
        return (x, y)


def scaffold_kind(recipe: GroupRecipe) -> ScaffoldKind:
    lam = {}
    for p, q in recipe.actions:
        g = int(primitive_root(q))
        lam[(p, q)] = pow(g, (q - 1) // p, q)
        if lam[(p, q)] == 1:
            raise ConstructionError(f"scaffold: {p} does not act on C_{q}")
    return ScaffoldKind(recipe.passive_primes, recipe.acting_primes, lam)


def scaffold_graph(kind: ScaffoldKind) -> SimpleGraph:
    """Prime graph of K from generator commutation: p-q is a non-edge iff C_p moves C_q."""
    primes = kind.qs + kind.ps
    edges = []
    for i, a in enumerate(primes):
        for b in primes[i + 1 :]:
            ga, gb = kind.generator(a), kind.generator(b)
            if kind.mul(ga, gb) == kind.mul(gb, ga):
                edges.append((str(a), str(b)))
    return SimpleGraph.build([str(p) for p in primes], edges)


# ---------------------------------------------------------------------------
# Modules over S x B_v


class ModuleGroupKind:
    """Elements (s, x, y) of S x (Q1 x| PB); s indexes the head group (0 if none)."""

    def __init__(self, head: FiniteGroup | None, qs: list[int], ps: list[int], lam: dict):
        self.head = head
        self.scaf = ScaffoldKind(qs, ps, lam)

    def identity(self):
        return (0,) + self.scaf.identity()

    def mul(self, a, b):
        s = self.head.mul(a[0], b[0]) if self.head else 0
        return (s,) + self.scaf.mul(a[1:], b[1:])

    def inv(self, a):
        s = self.head.inv(a[0]) if self.head else 0
        return (s,) + self.scaf.inv(a[1:])

    def check(self, a):
        pass


@dataclass
class BuiltModule:
    plan: ModulePlan
    kind: ModuleGroupKind
    gens: list
    rep: MatrixRep
    sub_image: object
    transversal: list
    base_degree: int

    def image(self, g) -> np.ndarray:
        return induced_image(self.sub_image, self.kind.mul, self.kind.inv, self.transversal, g, self.base_degree)

    def fixed_dim(self, g) -> int:
        m = self.image(g)
        d, k = self.base_degree, len(self.transversal)
        r = self.rep.r
        blocks = [m[i * d : (i + 1) * d, i * d : (i + 1) * d] for i in range(k)]
        off = m.copy()
        for i in range(k):
            off[i * d : (i + 1) * d, i * d : (i + 1) * d] = 0
        if not off.any():
            eye = np.eye(d, dtype=np.int64)
            return sum(kernel_dim(b - eye, r) for b in blocks)
        return kernel_dim(m - np.eye(d * k, dtype=np.int64), r)


def build_module(recipe: GroupRecipe, plan: ModulePlan, lam: dict) -> BuiltModule:
    r = plan.r
    fld = PrimeField(r)
    acting = set(recipe.acting_primes)
    qs = [p for p in plan.near if p not in acting]
    p_near = [p for p in plan.near if p in acting]
    ps = p_near + list(plan.far)
    head = head_group(recipe.head) if recipe.head else None
    if head is not None:
        sigma = head_rep(plan.rep, r)
        if sigma.group != recipe.head:
            raise ConstructionError(f"module {plan.vertex}: {plan.rep} is not a rep of {recipe.head}")
        sigma_imgs = sigma.images(head)
        ngen = len(head.gens)
    else:
        sigma = MatrixRep("1", "trivial", r, (np.eye(1, dtype=np.int64),))
        sigma_imgs = [np.eye(1, dtype=np.int64)]
        ngen = 1
    # distance-1 primes act by a nontrivial scalar on H = S x Fit(B_v)
    twisted = sigma
    for p in qs + p_near:
        twisted = twist_by_character(twisted, p, fld.root_of_unity(p), label=f"c{p}")
    scalars = [int(g[0, 0]) for g in twisted.gens[ngen:]]
    nq, nnear = len(qs), len(p_near)
    kind = ModuleGroupKind(head, qs, ps, lam)

    def sub_image(h):
        s, x, y = h
        if any(y[nnear:]):
            return None
        f = 1
        for c, e in zip(scalars, list(x) + list(y[:nnear])):
            f = f * pow(c, e, r) % r
        return sigma_imgs[s] * f % r

    transversal = [(0, (0,) * nq, (0,) * nnear + tuple(t)) for t in product(*(range(p) for p in plan.far))]
    ident = kind.identity()
    gens = []
    if head is not None:
        gens += [(g,) + ident[1:] for g in head.gens]
    for p in qs + ps:
        gens.append((0,) + kind.scaf.generator(p))
    rep = induce_rep(
        sub_image, kind.mul, kind.inv, gens, transversal, sigma.degree, r,
        f"{recipe.head or '1'}xB", f"R[{plan.vertex}]",
    )
    if rep.degree != plan.rank:
        raise ConstructionError(f"module {plan.vertex}: rank {rep.degree} != planned {plan.rank}")
    return BuiltModule(plan, kind, gens, rep, sub_image, transversal, sigma.degree)


# ---------------------------------------------------------------------------
# Materialization


@dataclass
class MaterializedWitness:
    recipe: GroupRecipe
    head: FiniteGroup | None
    scaffold: FiniteGroup | None
    scaffold_graph: SimpleGraph
    modules: dict[str, BuiltModule]
    module_edges: dict[str, set[int]]
    prime_graph: SimpleGraph
    log: list[str] = field(default_factory=list)

    def order_primes(self) -> set[int]:
        ps = set()
        if self.head is not None:
            ps |= set(self.head.primes)
        ps |= set(self.recipe.scaffold_primes)
        ps |= {m.plan.r for m in self.modules.values() if m.plan.rank > 0}
        return ps

    def relabeled(self) -> SimpleGraph:
        mapping = {str(p): v for p, v in self.recipe.vertex_of.items()}
        return self.prime_graph.relabel(mapping)

    def summary(self) -> str:
        lines = [f"head {self.recipe.head or 'none'}"]
        k = prod(self.recipe.scaffold_primes)
        lines.append(f"scaffold order {k}" + (" (enumerated)" if self.scaffold is not None else ""))
        for v, m in self.modules.items():
            lines.append(f"module {v} rank {m.rep.degree} over F_{m.plan.r} fixes-for {sorted(self.module_edges[v])}")
        lines += self.log
        return "\n".join(lines) + "\n"


def materialize(recipe: GroupRecipe, scaffold_cap: int = 20_000, oracle_cap: int = 10**6) -> MaterializedWitness:
    try:
        recipe.check()
    except ValueError as exc:
        raise ConstructionError(f"recipe: {exc}") from None
    for m in recipe.modules:
        if m.rep is None or m.rank is None:
            raise ConstructionError(f"module {m.vertex} has no plan")
        if m.rank > MAX_RANK:
            raise ConstructionError(f"module {m.vertex} rank {m.rank} exceeds {MAX_RANK}")
    log: list[str] = []
    head = head_group(recipe.head) if recipe.head else None
    edges: set[frozenset] = set()

    if head is not None:
        for m in recipe.modules:
            bad = profile_mismatches(head_rep(m.rep, m.r), head, m.rep)
            if bad:
                raise ConstructionError(f"head rep {m.rep} over F_{m.r} disagrees with its character on {bad}")
        hg = prime_graph(head)
        edges |= {frozenset((int(a), int(b))) for a, b in hg.edge_list()}
        if 15 in head.orders:
            raise ConstructionError("head group has an element of order 15")

    kind = scaffold_kind(recipe)
    sg = scaffold_graph(kind)
    scaffold = None
    if prod(recipe.scaffold_primes) <= scaffold_cap:
        gens = [kind.generator(p) for p in kind.qs + kind.ps]
        scaffold = closure(kind, gens, cap=scaffold_cap + 1, name="K")
        enum = prime_graph(scaffold)
        if not enum.same_as(sg):
            raise ConstructionError("scaffold prime graph differs between enumeration and generator criterion")
        log.append("scaffold: enumeration agrees with criterion")
    edges |= {frozenset((int(a), int(b))) for a, b in sg.edge_list()}
    for h in recipe.head_primes:
        for p in recipe.scaffold_primes:
            edges.add(frozenset((h, p)))

    modules: dict[str, BuiltModule] = {}
    module_edges: dict[str, set[int]] = {}
    for plan in recipe.modules:
        built = build_module(recipe, plan, kind.lam)
        modules[plan.vertex] = built
        fixing = set()
        if head is not None:
            for c in head.classes:
                if c.order in (2, 3, 5) and c.order not in fixing:
                    if built.fixed_dim((c.representative,) + built.kind.identity()[1:]) > 0:
                        fixing.add(c.order)
        inside = set(plan.near) | set(plan.far)
        for p in recipe.scaffold_primes:
            if p not in inside or built.fixed_dim((0,) + built.kind.scaf.generator(p)) > 0:
                fixing.add(p)
        for p in plan.near:
            if p in fixing:
                raise ConstructionError(f"module {plan.vertex}: distance-1 prime {p} fixes a vector")
        for p in plan.far:
            if p not in fixing:
                raise ConstructionError(f"module {plan.vertex}: distance-2 prime {p} acts fixed-point-freely")
        module_edges[plan.vertex] = fixing
        edges |= {frozenset((plan.r, q)) for q in fixing}
        _module_oracle(built, head, fixing, oracle_cap, log)
    for i, a in enumerate(recipe.modules):
        for b in recipe.modules[i + 1 :]:
            edges.add(frozenset((a.r, b.r)))

    verts = [p for _, p in recipe.primes]
    graph = SimpleGraph.build([str(p) for p in verts], [tuple(str(x) for x in e) for e in edges])
    witness = MaterializedWitness(recipe, head, scaffold, sg, modules, module_edges, graph, log)
    if witness.order_primes() != set(verts):
        raise ConstructionError("primes dividing the witness order differ from the assigned primes")
    return witness


def _module_oracle(built: BuiltModule, head, fixing: set[int], cap: int, log: list[str]) -> None:
    plan = built.plan
    acting_order = (head.order if head else 1) * prod(plan.near) * prod(plan.far)
    if plan.r ** plan.rank * acting_order > cap:
        return
    grp = closure(built.kind, built.gens, cap=acting_order + 1, name=f"SxB[{plan.vertex}]")
    spec = SemidirectSpec(built.rep, grp)
    crit = semidirect_prime_graph(spec)
    brute = brute_force_semidirect(spec, cap)
    if not crit.same_as(brute):
        raise ConstructionError(f"module {plan.vertex}: criterion and brute force disagree")
    got = {int(b) if a == str(plan.r) else int(a) for a, b in crit.edge_list() if str(plan.r) in (a, b)}
    want = {q for q in fixing if q in grp.primes}
    if got != want:
        raise ConstructionError(f"module {plan.vertex}: kernel scan {sorted(want)} != oracle {sorted(got)}")
    log.append(f"module {plan.vertex}: brute-force oracle agrees ({plan.r ** plan.rank * acting_order} elements)")


# ---------------------------------------------------------------------------
# Roundtrip


@dataclass
class RoundtripReport:
    stages: list[tuple[str, bool, str]]
    verdict: object
    recipe: GroupRecipe | None = None
    witness: MaterializedWitness | None = None

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.stages)

    def format(self) -> str:
        return "".join(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n" for name, ok, detail in self.stages)


def roundtrip(gamma: SimpleGraph, prefer_fig3: bool = False) -> RoundtripReport:
    stages = []
    verdict = classify(gamma)
    if not verdict.realizable:
        stages.append(("classify", True, f"Unrealizable: {verdict.violation}; nothing to construct"))
        return RoundtripReport(stages, verdict)
    stages.append(("classify", True, f"Realizable {verdict.category}"))
    gbar = complement(gamma)
    try:
        recipe = plan_modules(verdict.certificate, select_primes(verdict.certificate, gbar, prefer_fig3))
    except (ConstructionError, CapExceeded, ValueError) as exc:
        stages.append(("construct", False, str(exc)))
        return RoundtripReport(stages, verdict)
    stages.append(("construct", True, f"head {recipe.head or 'none'}, {len(recipe.modules)} modules"))
    try:
        witness = materialize(recipe)
    except (ConstructionError, CapExceeded, RepError) as exc:
        stages.append(("materialize", False, str(exc)))
        return RoundtripReport(stages, verdict, recipe)
    stages.append(("materialize", True, f"{len(witness.prime_graph.edges)} prime-graph edges"))
    same = witness.relabeled().same_as(gamma)
    stages.append(("compare", same, "prime graph equals input" if same else "prime graph differs from input"))
    return RoundtripReport(stages, verdict, recipe, witness)


# ---------------------------------------------------------------------------
# Recipe text format


def format_recipe(recipe: GroupRecipe) -> str:
    lines = [f"head {recipe.head or 'none'}"]
    lines += [f"prime {v} {p}" for v, p in recipe.primes]
    lines += [f"act {p} {q}" for p, q in recipe.actions]
    for m in recipe.modules:
        lines.append(f"module {m.vertex} {m.rep or '-'} {m.r} {m.rank if m.rank is not None else '-'}")
        lines.append(" ".join(["near", m.vertex, *map(str, m.near)]))
        lines.append(" ".join(["far", m.vertex, *map(str, m.far)]))
    return "\n".join(lines) + "\n"


def parse_recipe(text: str) -> GroupRecipe:
    head = None
    primes, actions = [], []
    mods: dict[str, dict] = {}
    order: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        key, args = parts[0], parts[1:]
        try:
            if key == "head" and len(args) == 1:
                head = None if args[0] == "none" else args[0]
                if head is not None and head not in HEAD_ORDER:
                    raise ValueError(f"unknown head {args[0]!r}")
            elif key == "prime" and len(args) == 2:
                primes.append((args[0], int(args[1])))
            elif key == "act" and len(args) == 2:
                actions.append((int(args[0]), int(args[1])))
            elif key == "module" and len(args) == 4:
                v = args[0]
                order.append(v)
                mods[v] = {
                    "rep": None if args[1] == "-" else args[1],
                    "r": int(args[2]),
                    "rank": None if args[3] == "-" else int(args[3]),
                    "near": (),
                    "far": (),
                }
            elif key in ("near", "far") and args and args[0] in mods:
                mods[args[0]][key] = tuple(int(x) for x in args[1:])
            else:
                raise ValueError(f"malformed recipe line {raw.strip()!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    modules = tuple(
        ModulePlan(v, mods[v]["near"], mods[v]["far"], mods[v]["r"], mods[v]["rep"], mods[v]["rank"]) for v in order
    )
    recipe = GroupRecipe(tuple(primes), tuple(actions), head, modules)
    recipe.check()
    return recipe


__all__ = [
    "GroupRecipe",
    "ModulePlan",
    "MaterializedWitness",
    "RoundtripReport",
    "select_primes",
    "plan_modules",
    "build_recipe",
    "materialize",
    "roundtrip",
    "format_recipe",
    "parse_recipe",
]
