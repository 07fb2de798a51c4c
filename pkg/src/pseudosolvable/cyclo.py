"""Exact arithmetic in Q(zeta_120) and the character tables of the head groups.

The tables are embedded as data and validated on load by the orthogonality
relations, so a typo in a value is caught before it can influence a
fixed-point decision.
"""

from __future__ import annotations

import ast
import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import _chardata
from .patterns import FIG1, FIG2, FIG3, PATTERNS

N = 120


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists are lowest degree first; den is monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


PHI = cyclotomic_polynomial(N)
DEGREE = len(PHI) - 1  # 32


def _power_table() -> list[tuple[int, ...]]:
    # zeta^k expressed in the basis 1, zeta, ..., zeta^(DEGREE-1)
    rows = []
    cur = [1] + [0] * (DEGREE - 1)
    for _ in range(2 * N):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(DEGREE):
                cur[j] -= top * PHI[j]
    return rows


_POW = _power_table()


class Cyclotomic:
    """Element of Q(zeta_120) in the power basis reduced mod the 120th cyclotomic polynomial."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = (Fraction(0),) * DEGREE
        self.c = tuple(Fraction(x) for x in coeffs)
        if len(self.c) != DEGREE:
            raise ValueError("wrong number of coefficients")

    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        return cls((Fraction(q),) + (Fraction(0),) * (DEGREE - 1))

    @classmethod
    def zeta(cls, k: int = 1) -> "Cyclotomic":
        return cls(_POW[k % N])

    @classmethod
    def from_exponents(cls, terms: dict[int, Fraction]) -> "Cyclotomic":
        acc = [Fraction(0)] * DEGREE
        for k, coef in terms.items():
            row = _POW[k % N]
            for j in range(DEGREE):
                if row[j]:
                    acc[j] += coef * row[j]
        return cls(acc)

    def _lift(self, other) -> "Cyclotomic":
        return other if isinstance(other, Cyclotomic) else Cyclotomic.rational(other)

    def __add__(self, other):
        o = self._lift(other)
        return Cyclotomic(a + b for a, b in zip(self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(-a for a in self.c)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            q = Fraction(other)
            return Cyclotomic(a * q for a in self.c)
        prod = [Fraction(0)] * (2 * DEGREE - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        prod[i + j] += a * b
        acc = prod[:DEGREE]
        for k in range(DEGREE, len(prod)):
            if prod[k]:
                row = _POW[k]
                for j in range(DEGREE):
                    if row[j]:
                        acc[j] += prod[k] * row[j]
        return Cyclotomic(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                raise TypeError("division only by rationals")
            other = other.c[0]
        return self * (1 / Fraction(other))

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta -> zeta^k for k coprime to 120."""
        if gcd(k, N) != 1:
            raise ValueError("exponent must be a unit mod 120")
        return Cyclotomic.from_exponents({(j * k) % N: a for j, a in enumerate(self.c) if a})

    def conj(self) -> "Cyclotomic":
        return self.galois(-1 % N)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / N)
        return complex(sum(float(a) * z**j for j, a in enumerate(self.c) if a))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        return isinstance(other, Cyclotomic) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        terms = [f"{a}*z^{j}" for j, a in enumerate(self.c) if a]
        return "Cyclotomic(" + (" + ".join(terms) or "0") + ")"


ZETA5 = 24  # exponents of zeta_120 giving primitive 5th, 3rd, 8th roots
SQRT5 = Cyclotomic.from_exponents({ZETA5: 1, 2 * ZETA5: -1, 3 * ZETA5: -1, 4 * ZETA5: 1})
I_SQRT3 = Cyclotomic.from_exponents({40: 1, 80: -1})
I_SQRT2 = Cyclotomic.from_exponents({15: 1, 45: 1})
_NAMES = {"s5": SQRT5, "i3": I_SQRT3, "i2": I_SQRT2}


def parse_value(text: str) -> Cyclotomic:
    """Parse small arithmetic like ``(1-s5)/2`` over the named surds."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Cyclotomic.rational(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ValueError(f"unsupported character value {text!r}")

    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError:
        raise ValueError(f"unparseable character value {text!r}") from None
    return ev(tree)


# ---------------------------------------------------------------------------
# Character tables


@dataclass(frozen=True)
class ClassData:
    index: int
    name: str
    order: int
    size: int
    power_map: tuple[int, ...]

    def power(self, k: int) -> int:
        return self.power_map[k % self.order]


class CharacterTableError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterTable:
    group: str
    order: int
    classes: tuple[ClassData, ...]
    names: tuple[str, ...]
    characters: tuple[tuple[Cyclotomic, ...], ...]

    def index_of(self, rep) -> int:
        if isinstance(rep, int):
            if not 0 <= rep < len(self.names):
                raise IndexError(rep)
            return rep
        try:
            return self.names.index(rep)
        except ValueError:
            raise KeyError(f"{self.group} has no irreducible named {rep!r}") from None

    def degree(self, rep) -> int:
        return int(self.characters[self.index_of(rep)][0].to_fraction())

    def validate(self) -> None:
        cls = self.classes
        if sum(c.size for c in cls) != self.order:
            raise CharacterTableError(f"{self.group}: class sizes do not sum to the group order")
        for c in cls:
            if len(c.power_map) != c.order or c.power_map[0] != 0 or c.power_map[1 % c.order] != c.index:
                raise CharacterTableError(f"{self.group}: bad power map on {c.name}")
            if self.order % c.order or self.order % c.size:
                raise CharacterTableError(f"{self.group}: {c.name} order or size does not divide |G|")
            for k, img in enumerate(c.power_map):
                want = c.order // gcd(c.order, k) if k else 1
                if cls[img].order != want:
                    raise CharacterTableError(f"{self.group}: power {k} of {c.name} has wrong order")
        if any(v != 1 for v in self.characters[0]):
            raise CharacterTableError(f"{self.group}: first character is not trivial")
        degs = [self.degree(i) for i in range(len(self.names))]
        if sum(d * d for d in degs) != self.order:
            raise CharacterTableError(f"{self.group}: squared degrees do not sum to |G|")
        conj = [tuple(v.conj() for v in row) for row in self.characters]
        for i, chi in enumerate(self.characters):
            for j in range(i, len(self.characters)):
                s = Cyclotomic()
                for c, a, b in zip(cls, chi, conj[j]):
                    s = s + a * b * c.size
                if s != (self.order if i == j else 0):
                    raise CharacterTableError(
                        f"{self.group}: rows {self.names[i]}, {self.names[j]} are not orthonormal"
                    )


GROUPS = ("A5", "SL25", "TwoS5")
_RAW = {"A5": _chardata.A5, "SL25": _chardata.SL25, "TwoS5": _chardata.TWOS5}


@lru_cache(maxsize=None)
def load_table(group: str) -> CharacterTable:
    if group not in _RAW:
        raise KeyError(f"unknown head group {group!r}; expected one of {GROUPS}")
    raw = _RAW[group]
    classes = tuple(
        ClassData(i, name, order, size, tuple(pm))
        for i, (name, order, size, pm) in enumerate(raw["classes"])
    )
    names = tuple(name for name, _ in raw["characters"])
    chars = tuple(tuple(parse_value(v) for v in row) for _, row in raw["characters"])
    table = CharacterTable(group, raw["order"], classes, names, chars)
    table.validate()
    return table


def fixed_space_dim(table: CharacterTable, rep, class_id: int) -> int:
    """Dimension of the fixed space of g: the mean of chi over <g>."""
    chi = table.characters[table.index_of(rep)]
    c = table.classes[class_id]
    total = Cyclotomic()
    for k in range(c.order):
        total = total + chi[c.power(k)]
    value = total.to_fraction() / c.order
    if value.denominator != 1 or value < 0:
        raise CharacterTableError(f"{table.group}: non-integral fixed dimension {value} on {c.name}")
    return int(value)


def fixed_point_table(group: str) -> list[list[str]]:
    t = load_table(group)
    return [
        ["0" if fixed_space_dim(t, i, c.index) > 0 else "-" for c in t.classes]
        for i in range(len(t.names))
    ]


def expected_pattern(group: str) -> list[list[str]]:
    return [row.split() for row in _chardata.EXPECTED_PATTERNS[group]]


def format_pattern_table(group: str, rows: list[list[str]] | None = None) -> str:
    t = load_table(group)
    rows = fixed_point_table(group) if rows is None else rows
    width = max(len(n) for n in t.names)
    head = " " * width + "  " + " ".join(f"{c.order:>3}" for c in t.classes)
    body = [f"{n:<{width}}  " + " ".join(f"{e:>3}" for e in row) for n, row in zip(t.names, rows)]
    return "\n".join([f"{group}", head, *body]) + "\n"


def fixed_point_free_primes(group: str, rep) -> frozenset:
    """Primes q in {2,3,5} all of whose order-q classes fix no nonzero vector."""
    t = load_table(group)
    out = set()
    for q in (2, 3, 5):
        dims = [fixed_space_dim(t, rep, c.index) for c in t.classes if c.order == q]
        if dims and all(d == 0 for d in dims):
            out.add(q)
    return frozenset(out)


_FAMILY = {"A5": ("triangle", FIG1), "SL25": ("35", FIG2), "TwoS5": ("35", FIG3)}


def pattern_for_rep(group: str, rep: str) -> str:
    """Quad pattern realized by the semidirect action of ``rep`` on a new prime."""
    if (group, rep) not in _chardata.PATTERN_OF_REP:
        raise KeyError(f"{group} {rep} has no assigned quad pattern")
    base, family = _FAMILY[group]
    edges = fixed_point_free_primes(group, rep)
    for pid in family:
        if PATTERNS[pid] == (base, edges):
            return pid
    raise CharacterTableError(f"{group} {rep}: r-edges {sorted(edges)} match no pattern")


def assigned_patterns() -> dict[tuple[str, str], str]:
    return dict(_chardata.PATTERN_OF_REP)
