"""Quad-pattern library and the classifier for pseudo-solvable prime graphs.

All conditions are checked on the complement graph ``gbar``. A category is
witnessed by a :class:`Certificate` that can be serialized, parsed back and
re-validated independently of the search that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .graph import (
    CLASSES,
    Pin,
    SimpleGraph,
    ThreeColoring,
    Within,
    complement,
    constrained_three_coloring,
    satisfies,
    triangles,
)

# id -> (base shape, r-edges as anchor primes)
PATTERNS: dict[str, tuple[str, frozenset]] = {
    "F1a": ("triangle", frozenset()),
    "F1b": ("triangle", frozenset({5})),
    "F2a": ("35", frozenset()),
    "F2b": ("35", frozenset({2, 3, 5})),
    "F2c": ("35", frozenset({5})),
    "F2d": ("35", frozenset({2, 5})),
    "F2e": ("35", frozenset({2})),
    "F3a": ("35", frozenset()),
    "F3b": ("35", frozenset({5})),
    "F3c": ("35", frozenset({3, 5})),
    "F4a": ("35", frozenset({3})),
    "F4b": ("35", frozenset({2, 3})),
}
FIG1 = ("F1a", "F1b")
FIG2 = ("F2a", "F2b", "F2c", "F2d", "F2e")
FIG3 = ("F3a", "F3b", "F3c")
IMPOSSIBLE = ("F4a", "F4b")
# F2 shapes that are also F3 shapes
FIG2_TO_FIG3 = {"F2a": "F3a", "F2c": "F3b"}
FIG3_TO_FIG2 = {v: k for k, v in FIG2_TO_FIG3.items()}

CAT1_ROLES = {"a": 2, "b": 3, "c": 5}
CAT2_ROLES = {"alpha": 3, "beta": 5, "gamma": 2}
CATEGORIES = ("SolvableTrivial", "Cat235", "CatP35")


def _by_edges(base: str, r_edges: frozenset, family: tuple[str, ...]) -> str | None:
    for pid in family:
        if PATTERNS[pid] == (base, r_edges):
            return pid
    return None


def match_quad(gbar: SimpleGraph, anchors: dict[int, str], r: str) -> str | None:
    """Identify the {r,2,3,5} subgraph of ``gbar``.

    ``anchors`` maps the primes 2, 3, 5 to vertices. Shapes shared by the
    F2 and F3 families are reported under their F2 id. Returns None when the anchor
    base is neither the full triangle nor the single 3-5 edge, or when a
    triangle base carries r-edges other than r-5.
    """
    if r in anchors.values() or len(set(anchors.values())) != 3:
        raise ValueError("anchor roles collide with r")
    a2, a3, a5 = anchors[2], anchors[3], anchors[5]
    base_edges = {
        p for p, (u, v) in {23: (a2, a3), 25: (a2, a5), 35: (a3, a5)}.items()
        if gbar.has_edge(u, v)
    }
    r_edges = frozenset(p for p in (2, 3, 5) if gbar.has_edge(r, anchors[p]))
    if base_edges == {23, 25, 35}:
        return _by_edges("triangle", r_edges, FIG1)
    if base_edges == {35}:
        return _by_edges("35", r_edges, FIG2 + FIG3 + IMPOSSIBLE)
    return None


def as_two_s5_shape(pid: str) -> str | None:
    if pid in FIG3:
        return pid
    return FIG2_TO_FIG3.get(pid)


def as_sl25_shape(pid: str) -> str | None:
    if pid in FIG2:
        return pid
    return FIG3_TO_FIG2.get(pid)


@dataclass(frozen=True)
class Violation:
    condition: str
    message: str
    vertices: tuple[str, ...] = ()

    def __str__(self):
        if self.vertices:
            return f"{self.message} ({' '.join(self.vertices)})"
        return self.message


@dataclass(frozen=True)
class Certificate:
    category: str
    anchors: tuple[tuple[str, str], ...]
    coloring: ThreeColoring
    patterns: tuple[tuple[str, str], ...] = ()
    heads: str | None = None

    def anchor(self, role: str) -> str:
        return dict(self.anchors)[role]

    def prime_roles(self) -> dict[int, str]:
        """Anchor vertices keyed by the prime they play."""
        roles = CAT1_ROLES if self.category == "Cat235" else CAT2_ROLES
        return {roles[role]: v for role, v in self.anchors}

    @property
    def fig2_admissible(self) -> bool:
        return self.heads in ("fig2", "both")

    @property
    def fig3_admissible(self) -> bool:
        return self.heads in ("fig3", "both")


@dataclass(frozen=True)
class Verdict:
    outcome: str
    certificate: Certificate | None = None
    violation: Violation | None = None
    attempted: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if (self.certificate is None) == (self.violation is None):
            raise ValueError("exactly one of certificate / violation must be set")

    @property
    def realizable(self) -> bool:
        return self.outcome == "Realizable"

    @property
    def category(self) -> str | None:
        return self.certificate.category if self.certificate else None


def _unrealizable(v: Violation, attempted=()) -> Verdict:
    return Verdict("Unrealizable", violation=v, attempted=tuple(attempted))


def _realizable(c: Certificate, attempted=()) -> Verdict:
    return Verdict("Realizable", certificate=c, attempted=tuple(attempted))


NOT_COLORABLE = Violation("colorable", "complement not 3-colorable")


def check_solvable_trivial(gbar: SimpleGraph) -> bool:
    return not triangles(gbar) and constrained_three_coloring(gbar) is not None


def _cat1_constraints(a: str, b: str, c: str, gbar: SimpleGraph) -> list:
    rest = tuple(v for v in gbar.neighbors(c) if v not in (a, b))
    return [Pin(c, "D"), Pin(a, "I"), Pin(b, "O"), Within(rest, "I")]


def _cat2_constraints(anchors: tuple[str, str, str], gbar: SimpleGraph) -> list:
    hood = []
    for x in anchors:
        hood += [v for v in gbar.neighbors(x) if v not in anchors and v not in hood]
    order = {v: i for i, v in enumerate(gbar.vertices)}
    return [Within(tuple(sorted(hood, key=order.__getitem__)), "I")]


_CAT1_STAGES = ("colorable", "triangles", "patterns", "coloring")
_CAT2_STAGES = ("colorable", "anchors", "triangles", "patterns", "coloring")


def _furthest(current: Violation | None, new: Violation, stages) -> Violation:
    if current is None or stages.index(new.condition) > stages.index(current.condition):
        return new
    return current


def check_cat1(gbar: SimpleGraph) -> Verdict:
    """Category with the {2,3,5} triangle: search triangles and role maps."""
    if constrained_three_coloring(gbar) is None:
        return _unrealizable(NOT_COLORABLE)
    tris = triangles(gbar)
    if not tris:
        return _unrealizable(Violation("triangles", "complement has no triangle"))
    best: Violation | None = None
    for tri in tris:
        if len(tris) > 1:
            other = next(t for t in tris if t != tri)
            best = _furthest(best, Violation("triangles", "triangle not unique", other), _CAT1_STAGES)
            continue
        for a, b, c in permutations(tri):
            roles = {2: a, 3: b, 5: c}
            found = {}
            bad = None
            for r in gbar.vertices:
                if r in tri:
                    continue
                pid = match_quad(gbar, roles, r)
                if pid not in FIG1:
                    bad = Violation("patterns", f"quad of {r} is not an F1 shape", (r,))
                    break
                found[r] = pid
            if bad is not None:
                best = _furthest(best, bad, _CAT1_STAGES)
                continue
            coloring = constrained_three_coloring(gbar, _cat1_constraints(a, b, c, gbar))
            if coloring is None:
                best = _furthest(
                    best,
                    Violation("coloring", "no coloring puts the neighbours of the 5-vertex in one class", (c,)),
                    _CAT1_STAGES,
                )
                continue
            cert = Certificate(
                "Cat235",
                (("a", a), ("b", b), ("c", c)),
                coloring,
                tuple((r, found[r]) for r in gbar.vertices if r in found),
            )
            return _realizable(cert)
    return _unrealizable(best)


def _cat2_candidates(gbar: SimpleGraph):
    vs = gbar.vertices
    for al in vs:
        for be in vs:
            if be == al or not gbar.has_edge(al, be):
                continue
            for ga in vs:
                if ga in (al, be) or gbar.has_edge(ga, al) or gbar.has_edge(ga, be):
                    continue
                yield al, be, ga


def check_cat2(gbar: SimpleGraph) -> Verdict:
    """Category with a {p,3,5} triangle for an odd prime p."""
    if constrained_three_coloring(gbar) is None:
        return _unrealizable(NOT_COLORABLE)
    tris = triangles(gbar)
    if not tris:
        return _unrealizable(Violation("triangles", "complement has no triangle"))
    best: Violation | None = Violation(
        "anchors", "no edge alpha-beta with a vertex gamma adjacent to neither"
    )
    for al, be, ga in _cat2_candidates(gbar):
        outside = [t for t in tris if not {al, be} <= set(t)]
        if outside:
            best = _furthest(
                best, Violation("triangles", "triangle avoids the edge alpha-beta", outside[0]), _CAT2_STAGES
            )
            continue
        roles = {3: al, 5: be, 2: ga}
        fig2: dict[str, str] = {}
        fig3: dict[str, str] = {}
        bad = None
        for r in gbar.vertices:
            if r in (al, be, ga):
                continue
            pid = match_quad(gbar, roles, r)
            if pid is None or pid in IMPOSSIBLE:
                bad = Violation("patterns", f"quad of {r} is {pid or 'not an F2 or F3 shape'}", (r,))
                break
            if as_sl25_shape(pid):
                fig2[r] = as_sl25_shape(pid)
            if as_two_s5_shape(pid):
                fig3[r] = as_two_s5_shape(pid)
        others = [r for r in gbar.vertices if r not in (al, be, ga)]
        if bad is None:
            ok2 = len(fig2) == len(others)
            ok3 = len(fig3) == len(others)
            if not (ok2 or ok3):
                r2 = next(r for r in others if r not in fig3)
                r3 = next(r for r in others if r not in fig2)
                bad = Violation("patterns", "quads mix F2-only and F3-only shapes", (r2, r3))
        if bad is not None:
            best = _furthest(best, bad, _CAT2_STAGES)
            continue
        coloring = constrained_three_coloring(gbar, _cat2_constraints((al, be, ga), gbar))
        if coloring is None:
            best = _furthest(
                best,
                Violation("coloring", "no coloring puts the anchor neighbourhood in I", (al, be, ga)),
                _CAT2_STAGES,
            )
            continue
        heads = "both" if ok2 and ok3 else ("fig2" if ok2 else "fig3")
        chosen = fig2 if ok2 else fig3
        cert = Certificate(
            "CatP35",
            (("alpha", al), ("beta", be), ("gamma", ga)),
            coloring,
            tuple((r, chosen[r]) for r in others),
            heads,
        )
        return _realizable(cert)
    return _unrealizable(best)


def classify(gamma: SimpleGraph) -> Verdict:
    """Classify a candidate prime graph (not its complement)."""
    gbar = complement(gamma)
    attempted = ["solvable-trivial"]
    if check_solvable_trivial(gbar):
        coloring = constrained_three_coloring(gbar)
        return _realizable(Certificate("SolvableTrivial", (), coloring), attempted)
    if constrained_three_coloring(gbar) is None:
        return _unrealizable(NOT_COLORABLE, attempted)
    attempted.append("cat235")
    v1 = check_cat1(gbar)
    if v1.realizable:
        return _realizable(v1.certificate, attempted)
    attempted.append("catp35")
    v2 = check_cat2(gbar)
    if v2.realizable:
        return _realizable(v2.certificate, attempted)
    # report whichever search got further; cat235 wins ties
    s1 = _CAT1_STAGES.index(v1.violation.condition)
    s2 = _CAT2_STAGES.index(v2.violation.condition) - 1
    return _unrealizable(v1.violation if s1 >= s2 else v2.violation, attempted)


# ---------------------------------------------------------------------------
# Re-validation


class CertificateError(ValueError):
    pass


def validate_certificate(cert: Certificate, gbar: SimpleGraph) -> None:
    """Re-check every condition against the recorded evidence; raise on failure."""
    col = cert.coloring
    if not col.is_proper_for(gbar):
        raise CertificateError("coloring is not a proper 3-coloring of the complement")
    anchors = [v for _, v in cert.anchors]
    if len(set(anchors)) != len(anchors) or not set(anchors) <= set(gbar.vertices):
        raise CertificateError("anchors must be distinct existing vertices")
    if cert.category == "SolvableTrivial":
        if anchors or cert.patterns:
            raise CertificateError("solvable certificates carry no anchors or patterns")
        if triangles(gbar):
            raise CertificateError("complement has a triangle")
        return
    rest = [v for v in gbar.vertices if v not in anchors]
    assigned = dict(cert.patterns)
    if sorted(assigned) != sorted(rest):
        raise CertificateError("pattern assignment must cover exactly the non-anchor vertices")
    roles = cert.prime_roles()
    tris = triangles(gbar)
    if cert.category == "Cat235":
        if set(dict(cert.anchors)) != set(CAT1_ROLES):
            raise CertificateError("Cat235 needs anchors a, b, c")
        if [set(t) for t in tris] != [set(anchors)]:
            raise CertificateError("anchors must form the only triangle")
        for r in rest:
            if match_quad(gbar, roles, r) != assigned[r] or assigned[r] not in FIG1:
                raise CertificateError(f"pattern of {r} does not re-validate")
        a, b, c = (cert.anchor(x) for x in ("a", "b", "c"))
        if not satisfies(col, _cat1_constraints(a, b, c, gbar)):
            raise CertificateError("coloring is not in normalized form")
    elif cert.category == "CatP35":
        if set(dict(cert.anchors)) != set(CAT2_ROLES):
            raise CertificateError("CatP35 needs anchors alpha, beta, gamma")
        al, be, ga = (cert.anchor(x) for x in ("alpha", "beta", "gamma"))
        if not gbar.has_edge(al, be) or gbar.has_edge(ga, al) or gbar.has_edge(ga, be):
            raise CertificateError("anchor edges must be exactly alpha-beta")
        if not tris or any(not {al, be} <= set(t) for t in tris):
            raise CertificateError("every triangle must contain alpha-beta")
        if cert.heads not in ("fig2", "fig3", "both"):
            raise CertificateError("CatP35 needs a heads flag")
        family = FIG2 if cert.fig2_admissible else FIG3
        for r in rest:
            pid = match_quad(gbar, roles, r)
            want = as_sl25_shape(pid) if family is FIG2 else as_two_s5_shape(pid)
            if pid is None or want != assigned[r]:
                raise CertificateError(f"pattern of {r} does not re-validate")
        shapes = [match_quad(gbar, roles, r) for r in rest]
        ok2 = all(as_sl25_shape(p) for p in shapes)
        ok3 = all(as_two_s5_shape(p) for p in shapes)
        if cert.heads != ("both" if ok2 and ok3 else "fig2" if ok2 else "fig3" if ok3 else None):
            raise CertificateError("heads flag does not match the quad shapes")
        if not satisfies(col, _cat2_constraints((al, be, ga), gbar)):
            raise CertificateError("anchor neighbourhood is not inside I")
    else:
        raise CertificateError(f"unknown category {cert.category!r}")


# ---------------------------------------------------------------------------
# Text format


def format_certificate(cert: Certificate) -> str:
    lines = [f"category {cert.category}"]
    lines += [f"anchor {role} {v}" for role, v in cert.anchors]
    for name in CLASSES:
        members = getattr(cert.coloring, name)
        lines.append(" ".join(["class", name, *members]))
    lines += [f"pattern {v} {pid}" for v, pid in cert.patterns]
    if cert.heads:
        lines.append(f"heads {cert.heads}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    category = None
    anchors, patterns = [], []
    classes = {c: () for c in CLASSES}
    heads = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        key, args = parts[0], parts[1:]
        if key == "category" and len(args) == 1 and args[0] in CATEGORIES:
            category = args[0]
        elif key == "anchor" and len(args) == 2:
            anchors.append((args[0], args[1]))
        elif key == "class" and args and args[0] in CLASSES:
            classes[args[0]] = tuple(args[1:])
        elif key == "pattern" and len(args) == 2 and args[1] in PATTERNS:
            patterns.append((args[0], args[1]))
        elif key == "heads" and len(args) == 1 and args[0] in ("fig2", "fig3", "both"):
            heads = args[0]
        else:
            raise ValueError(f"line {lineno}: malformed certificate line {raw.strip()!r}")
    if category is None:
        raise ValueError("certificate has no category line")
    return Certificate(
        category,
        tuple(anchors),
        ThreeColoring(classes["O"], classes["D"], classes["I"]),
        tuple(patterns),
        heads,
    )
