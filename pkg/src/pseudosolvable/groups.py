"""Concrete finite groups: closure, element orders, classes and prime graphs.

Elements are hashable canonical encodings (permutations as image tuples,
matrices as row-major tuples). A :class:`FiniteGroup` keeps a breadth-first
word tree over its generators so that homomorphisms given on generators can be
evaluated on every element without solving the word problem.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Sequence

import numpy as np

from .graph import SimpleGraph

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    pass


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Element kinds


class PermKind:
    """Permutations of 0..n-1; the product a*b applies a first."""

    def __init__(self, n: int):
        self.n = n

    def identity(self):
        return tuple(range(self.n))

    def mul(self, a, b):
        return tuple(b[i] for i in a)

    def inv(self, a):
        out = [0] * self.n
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def check(self, a):
        if sorted(a) != list(range(self.n)):
            raise ValueError("not a permutation")


class MatKind:
    """Invertible d x d matrices over F_r as row-major tuples."""

    def __init__(self, d: int, r: int):
        self.d, self.r = d, r

    def identity(self):
        return tuple(int(i == j) for i in range(self.d) for j in range(self.d))

    def array(self, a) -> np.ndarray:
        return np.array(a, dtype=np.int64).reshape(self.d, self.d)

    def encode(self, m) -> tuple:
        return tuple(int(x) for x in (np.asarray(m, dtype=np.int64) % self.r).ravel())

    def mul(self, a, b):
        return self.encode(self.array(a) @ self.array(b))

    def inv(self, a):
        from .fplinear import mat_inv

        return self.encode(mat_inv(self.array(a), self.r))

    def check(self, a):
        from .fplinear import kernel_dim

        if len(a) != self.d * self.d:
            raise ValueError("wrong matrix size")
        if kernel_dim(self.array(a), self.r):
            raise ValueError("matrix is singular")


# ---------------------------------------------------------------------------
# Groups


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    name: str
    order: int
    size: int
    power_map: tuple[int, ...]
    representative: int
    members: frozenset


class FiniteGroup:
    def __init__(self, kind, elements: list, gens: tuple[int, ...], parent: list[int], via: list[int], name: str = ""):
        self.kind = kind
        self.elements = elements
        self.index = {x: i for i, x in enumerate(elements)}
        self.gens = gens
        self.parent = parent
        self.via = via
        self.name = name

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, i: int, j: int) -> int:
        return self.index[self.kind.mul(self.elements[i], self.elements[j])]

    def power(self, i: int, k: int) -> int:
        result, base = 0, i
        k %= self.orders[i]
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, i: int) -> int:
        return self.power(i, self.orders[i] - 1)

    def conj(self, x: int, g: int) -> int:
        """g^-1 x g."""
        return self.mul(self.mul(self.inv(g), x), g)

    def word(self, i: int) -> list[int]:
        out = []
        while i != 0:
            out.append(self.via[i])
            i = self.parent[i]
        return out[::-1]

    def index_of(self, element) -> int:
        return self.index[element]

    @cached_property
    def primes(self) -> list[int]:
        return prime_factors(self.order)

    @cached_property
    def orders(self) -> list[int]:
        n = self.order
        ps = prime_factors(n)
        mul, els, ident = self.kind.mul, self.elements, self.elements[0]

        def pw(x, k):
            result = ident
            while k:
                if k & 1:
                    result = mul(result, x)
                x = mul(x, x)
                k >>= 1
            return result

        out = []
        for x in els:
            m = n
            for p in ps:
                while m % p == 0 and pw(x, m // p) == ident:
                    m //= p
            out.append(m)
        return out

    def homomorphism_images(self, gen_images: Sequence, mul: Callable, identity) -> list:
        """Extend generator images along the word tree to every element."""
        if len(gen_images) != len(self.gens):
            raise ValueError("need one image per generator")
        out = [identity] + [None] * (self.order - 1)
        for i in range(1, self.order):
            out[i] = mul(out[self.parent[i]], gen_images[self.via[i]])
        return out

    def is_homomorphism(self, gen_images: Sequence, mul: Callable, identity, eq: Callable = None) -> bool:
        """True when the word-tree extension respects every generator product."""
        eq = eq or (lambda a, b: a == b)
        imgs = self.homomorphism_images(gen_images, mul, identity)
        for i in range(self.order):
            for j, g in enumerate(self.gens):
                k = self.mul(i, g)
                if not eq(mul(imgs[i], gen_images[j]), imgs[k]):
                    return False
        return True

    @cached_property
    def classes(self) -> list[ConjugacyClass]:
        return conjugacy_classes(self)

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c in self.classes:
            for m in c.members:
                out[m] = c.index
        return out


def closure(kind, generators: Sequence, cap: int = DEFAULT_CAP, name: str = "") -> FiniteGroup:
    """Breadth-first product closure of ``generators``."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        kind.check(g)
    ident = kind.identity()
    elements, parent, via = [ident], [-1], [-1]
    seen = {ident: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = elements[i]
        for j, s in enumerate(gens):
            y = kind.mul(x, s)
            if y not in seen:
                if len(elements) >= cap:
                    raise CapExceeded(f"group exceeds {cap} elements")
                seen[y] = len(elements)
                elements.append(y)
                parent.append(i)
                via.append(j)
                queue.append(seen[y])
    return FiniteGroup(kind, elements, tuple(seen[g] for g in gens), parent, via, name)


def conjugacy_classes(g: FiniteGroup) -> list[ConjugacyClass]:
    """Orbits under conjugation by the generators, with power maps."""
    owner = [-1] * g.order
    raw = []
    ginv = [g.inv(s) for s in g.gens]
    for start in range(g.order):
        if owner[start] >= 0:
            continue
        idx = len(raw)
        owner[start] = idx
        orbit, queue = [start], deque([start])
        while queue:
            x = queue.popleft()
            for s, si in zip(g.gens, ginv):
                y = g.mul(g.mul(si, x), s)
                if owner[y] < 0:
                    owner[y] = idx
                    orbit.append(y)
                    queue.append(y)
        raw.append(orbit)
    counters: dict[int, int] = {}
    out = []
    for idx, orbit in enumerate(raw):
        rep = orbit[0]
        o = g.orders[rep]
        letter = counters.get(o, 0)
        counters[o] = letter + 1
        pm, x = [], 0
        for _ in range(o):
            pm.append(owner[x])
            x = g.mul(x, rep)
        out.append(ConjugacyClass(idx, f"{o}{chr(65 + letter)}", o, len(orbit), tuple(pm), rep, frozenset(orbit)))
    return out


def prime_graph(g: FiniteGroup) -> SimpleGraph:
    ps = g.primes
    orders = set(g.orders)
    edges = [(p, q) for i, p in enumerate(ps) for q in ps[i + 1:] if any(o % (p * q) == 0 for o in orders)]
    return SimpleGraph.build([str(p) for p in ps], edges)


def match_classes(g: FiniteGroup, table) -> list[int]:
    """Map each concrete class to a character-table column.

    Columns are matched on (order, size, order and size of every power) and
    ties are broken by the first assignment consistent with the power maps.
    """
    classes = g.classes
    tcls = table.classes
    if len(classes) != len(tcls) or g.order != table.order:
        raise ValueError(f"group does not match the {table.group} table")

    def sig(order, size, pm, sizes):
        return (order, size, tuple((len(pm) // np.gcd(len(pm), k) if k else 1, sizes[c]) for k, c in enumerate(pm)))

    csz = [c.size for c in classes]
    tsz = [c.size for c in tcls]
    csig = [sig(c.order, c.size, c.power_map, csz) for c in classes]
    tsig = [sig(c.order, c.size, c.power_map, tsz) for c in tcls]
    options = [[j for j in range(len(tcls)) if tsig[j] == csig[i]] for i in range(len(classes))]
    mapping = [-1] * len(classes)
    used = set()

    def consistent() -> bool:
        for i, c in enumerate(classes):
            for k, ci in enumerate(c.power_map):
                if mapping[ci] != tcls[mapping[i]].power_map[k]:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(classes):
            return consistent()
        for j in options[i]:
            if j not in used:
                used.add(j)
                mapping[i] = j
                if search(i + 1):
                    return True
                used.discard(j)
        return False

    if not search(0):
        raise ValueError(f"no power-map consistent matching with the {table.group} table")
    return mapping


# ---------------------------------------------------------------------------
# Semidirect products V x| H


@dataclass(frozen=True)
class SemidirectSpec:
    rep: object  # fplinear.MatrixRep
    group: FiniteGroup

    def __post_init__(self):
        if len(self.rep.gens) != len(self.group.gens):
            raise ValueError("rep generators do not match the acting group")
        if self.group.order % self.rep.r == 0:
            raise ValueError("module characteristic divides the acting group order")

    @cached_property
    def images(self) -> list[np.ndarray]:
        from .fplinear import mat_mul

        r = self.rep.r
        ident = np.eye(self.rep.degree, dtype=np.int64)
        return self.group.homomorphism_images(list(self.rep.gens), lambda a, b: mat_mul(a, b, r), ident)


def semidirect_prime_graph(spec: SemidirectSpec) -> SimpleGraph:
    """Prime graph of V x| H by the fixed-vector criterion on prime-order elements."""
    from .fplinear import kernel_dim

    h, r = spec.group, spec.rep.r
    base = prime_graph(h)
    imgs = spec.images
    ident = np.eye(spec.rep.degree, dtype=np.int64)
    fixing = set()
    for i, o in enumerate(h.orders):
        if o in fixing or o not in h.primes:
            continue
        if kernel_dim(imgs[i] - ident, r) > 0:
            fixing.add(o)
    verts = sorted(set(h.primes) | {r})
    edges = [(str(a), str(b)) for a, b in base.edge_list()]
    edges += [(str(r), str(q)) for q in sorted(fixing)]
    return SimpleGraph.build([str(p) for p in verts], edges)


def brute_force_semidirect(spec: SemidirectSpec, cap: int = DEFAULT_CAP) -> SimpleGraph:
    """Prime graph of V x| H from the orders of all r^d * |H| elements."""
    h, r, d = spec.group, spec.rep.r, spec.rep.degree
    size = r**d * h.order
    if size > cap:
        raise CapExceeded(f"{size} elements exceed the cap {cap}")
    vecs = np.array(np.unravel_index(np.arange(r**d), (r,) * d), dtype=np.int64).T
    imgs = spec.images
    orders = set()
    for i in range(h.order):
        # (v,h)^k = (w_k, h^k) with w_{k+1} = w_k + rho(h^k) v
        w = vecs.copy()
        hk = i
        k = 1
        done = np.zeros(len(vecs), dtype=bool)
        while not done.all():
            if k > h.orders[i] * r:
                raise AssertionError("element order bound violated")
            if hk == 0:
                hit = ~done & ~w.any(axis=1)
                if hit.any():
                    orders.add(k)
                    done |= hit
            w = (w + vecs @ imgs[hk].T) % r
            hk = h.mul(hk, i)
            k += 1
    ps = sorted(set(h.primes) | {r})
    edges = [(str(p), str(q)) for a, p in enumerate(ps) for q in ps[a + 1:] if any(o % (p * q) == 0 for o in orders)]
    return SimpleGraph.build([str(p) for p in ps], edges)


# ---------------------------------------------------------------------------
# Group files


class GroupFormatError(ValueError):
    pass


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    img = list(range(n))
    if _CYCLE.sub("", text).strip():
        raise GroupFormatError(f"bad cycle notation {text!r}")
    for body in _CYCLE.findall(text):
        pts = [int(x) - 1 for x in body.replace(",", " ").split()]
        if any(not 0 <= p < n for p in pts) or len(set(pts)) != len(pts):
            raise GroupFormatError(f"bad cycle ({body}) for degree {n}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def parse_group(text: str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    lines = [ln.split("#", 1)[0].rstrip() for ln in text.splitlines()]
    body = [ln for ln in lines if ln.strip()]
    if not body:
        raise GroupFormatError("empty group file")
    head = body[0].split()
    if head[0] == "perm" and len(head) == 2:
        n = int(head[1])
        kind = PermKind(n)
        gens = [parse_cycles(ln.strip(), n) for ln in body[1:]]
        return closure(kind, gens, cap)
    if head[0] == "mat" and len(head) == 4 and head[2] == "mod":
        d, r = int(head[1]), int(head[3])
        kind = MatKind(d, r)
        start = lines.index(next(ln for ln in lines if ln.strip())) + 1
        blocks, cur = [], []
        for ln in lines[start:] + [""]:
            if ln.strip():
                cur.append([int(x) % r for x in ln.split()])
            elif cur:
                blocks.append(cur)
                cur = []
        gens = []
        for b in blocks:
            if len(b) != d or any(len(row) != d for row in b):
                raise GroupFormatError(f"generator block is not {d}x{d}")
            gens.append(tuple(x for row in b for x in row))
        return closure(kind, gens, cap)
    raise GroupFormatError(f"unknown header {body[0]!r}")


# ---------------------------------------------------------------------------
# Head groups

SL25_S = (1, 1, 0, 1)
SL25_T = (0, 4, 1, 0)
_D = np.array([[0, 1], [2, 0]])
_DINV = np.array([[0, 3], [1, 0]])


def _block(g: tuple) -> tuple:
    a = np.array(g).reshape(2, 2)
    b = (_D @ a @ _DINV) % 5
    m = np.zeros((4, 4), dtype=np.int64)
    m[:2, :2], m[2:, 2:] = a, b
    return tuple(int(x) for x in m.ravel())


SWAP = tuple(int(x) for x in np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]]).astype(int).ravel())


@lru_cache(maxsize=None)
def a5() -> FiniteGroup:
    return closure(PermKind(5), [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)], name="A5")


@lru_cache(maxsize=None)
def sl25() -> FiniteGroup:
    return closure(MatKind(2, 5), [SL25_S, SL25_T], name="SL25")


@lru_cache(maxsize=None)
def two_s5() -> FiniteGroup:
    """Order-240 double cover of S5 as SL(2,5) x| C2 inside GL(4,5)."""
    return closure(MatKind(4, 5), [_block(SL25_S), _block(SL25_T), SWAP], name="TwoS5")


def two_s5_to_sl25(x: tuple) -> tuple | None:
    """Top-left block of an element of the index-2 subgroup, else None."""
    m = np.array(x).reshape(4, 4)
    if m[:2, 2:].any():
        return None
    return tuple(int(v) for v in m[:2, :2].ravel())


HEADS = {"A5": a5, "SL25": sl25, "TwoS5": two_s5}


def head_group(name: str) -> FiniteGroup:
    if name not in HEADS:
        raise KeyError(f"unknown head group {name!r}")
    return HEADS[name]()


def find_epimorphism(src: FiniteGroup, dst: FiniteGroup) -> tuple[int, ...]:
    """First generator assignment extending to a surjective homomorphism src -> dst."""
    cands = []
    for s in src.gens:
        o = src.orders[s]
        cands.append([i for i in range(dst.order) if o % dst.orders[i] == 0 and dst.orders[i] > 1])
    for choice in _product(cands):
        imgs = [dst.elements[i] for i in choice]
        if not src.is_homomorphism(imgs, dst.kind.mul, dst.elements[0]):
            continue
        image = set(src.homomorphism_images(imgs, dst.kind.mul, dst.elements[0]))
        if len(image) == dst.order:
            return tuple(choice)
    raise ValueError("no epimorphism found")


def _product(lists):
    if not lists:
        yield ()
        return
    for x in lists[0]:
        for rest in _product(lists[1:]):
            yield (x,) + rest

