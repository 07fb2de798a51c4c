"""Linear algebra over prime fields and representation constructors.

Matrices are numpy integer arrays reduced mod r after every operation. With
r < 2^31 a dot product of length d can overflow int64 once (r-1)^2 * d
passes 2^63, so such products fall back to Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Sequence

import numpy as np
from sympy import isprime, primitive_root
from sympy.ntheory import sqrt_mod

from .groups import FiniteGroup, MatKind, closure

MAX_MODULUS = 2**31


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class PrimeField:
    r: int

    def __post_init__(self):
        if not (2 <= self.r < MAX_MODULUS) or not isprime(self.r):
            raise FieldError(f"{self.r} is not a prime below 2^31")

    @property
    def generator(self) -> int:
        return int(primitive_root(self.r))

    def root_of_unity(self, n: int) -> int:
        """Smallest primitive root raised to (r-1)/n: a primitive n-th root."""
        if (self.r - 1) % n:
            raise FieldError(f"F_{self.r} has no primitive {n}-th root of unity")
        return pow(self.generator, (self.r - 1) // n, self.r)

    def inv(self, a: int) -> int:
        if a % self.r == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.r)

    def sqrt(self, a: int) -> int:
        root = sqrt_mod(a % self.r, self.r)
        if root is None:
            raise FieldError(f"{a} is not a square mod {self.r}")
        return int(root)

    def element_order(self, a: int) -> int:
        a %= self.r
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = x * a % self.r
            k += 1
        return k


def _dtype(r: int, d: int):
    return np.int64 if (r - 1) ** 2 * max(d, 1) < 2**62 else object


def as_matrix(m, r: int) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError("matrices must be square with dimension >= 1")
    return np.mod(a.astype(_dtype(r, a.shape[0])), r)


def mat_mul(a: np.ndarray, b: np.ndarray, r: int) -> np.ndarray:
    dt = _dtype(r, a.shape[1])
    return np.mod(a.astype(dt) @ b.astype(dt), r)


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.int64)


def _echelon(m: np.ndarray, r: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_r with Python ints; returns rows and pivots."""
    rows = [[int(x) % r for x in row] for row in np.asarray(m)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        inv = pow(rows[top][col], -1, r)
        rows[top] = [x * inv % r for x in rows[top]]
        for i in range(len(rows)):
            if i != top and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % r for x, y in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def rank(m: np.ndarray, r: int) -> int:
    """Row rank by vectorized elimination; entries stay below r^2 < 2^62."""
    a = np.mod(np.asarray(m).astype(object if r >= MAX_MODULUS else np.int64), r)
    nrows, ncols = a.shape
    top = 0
    for col in range(ncols):
        if top == nrows:
            break
        nz = np.nonzero(a[top:, col])[0]
        if nz.size == 0:
            continue
        piv = top + int(nz[0])
        if piv != top:
            a[[top, piv]] = a[[piv, top]]
        a[top] = a[top] * pow(int(a[top, col]), -1, r) % r
        below = a[top + 1 :, col].copy()
        hit = np.nonzero(below)[0]
        if hit.size:
            rows = top + 1 + hit
            a[rows] = (a[rows] - np.outer(below[hit], a[top])) % r
        top += 1
    return top


def kernel_dim(m: np.ndarray, r: int) -> int:
    """Dimension of the null space of a square or rectangular matrix."""
    return np.asarray(m).shape[1] - rank(m, r)


def nullspace(m: np.ndarray, r: int) -> list[list[int]]:
    rows, pivots = _echelon(m, r)
    ncols = np.asarray(m).shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(rows, pivots):
            v[p] = -row[f] % r
        basis.append(v)
    return basis


def det(m: np.ndarray, r: int) -> int:
    rows = [[int(x) % r for x in row] for row in np.asarray(m)]
    n = len(rows)
    result = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            result = -result
        result = result * rows[col][col] % r
        inv = pow(rows[col][col], -1, r)
        for i in range(col + 1, n):
            if rows[i][col]:
                f = rows[i][col] * inv % r
                rows[i] = [(x - f * y) % r for x, y in zip(rows[i], rows[col])]
    return result % r


def mat_inv(m: np.ndarray, r: int) -> np.ndarray:
    a = np.asarray(m)
    d = a.shape[0]
    aug = np.concatenate([np.mod(a.astype(object), r), np.eye(d, dtype=object)], axis=1)
    rows, pivots = _echelon(aug, r)
    if pivots[:d] != list(range(d)):
        raise ZeroDivisionError("matrix is singular")
    return as_matrix(np.array([row[d:] for row in rows[:d]], dtype=object), r)


# ---------------------------------------------------------------------------
# Representations


class RepError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MatrixRep:
    """Images of an ordered generator list in GL(d, F_r)."""

    group: str
    name: str
    r: int
    gens: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        PrimeField(self.r)
        mats = tuple(as_matrix(g, self.r) for g in self.gens)
        if not mats:
            raise RepError("a representation needs at least one generator")
        d = mats[0].shape[0]
        for m in mats:
            if m.shape != (d, d):
                raise RepError("generator images have different sizes")
            if kernel_dim(m, self.r):
                raise RepError("generator image is singular")
        object.__setattr__(self, "gens", mats)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"g{i}" for i in range(len(mats))))

    @property
    def degree(self) -> int:
        return self.gens[0].shape[0]

    def images(self, group: FiniteGroup) -> list[np.ndarray]:
        return group.homomorphism_images(list(self.gens), lambda a, b: mat_mul(a, b, self.r), identity(self.degree))

    def is_homomorphism_on(self, group: FiniteGroup) -> bool:
        return group.is_homomorphism(
            list(self.gens), lambda a, b: mat_mul(a, b, self.r), identity(self.degree), np.array_equal
        )

    def image_order(self, cap: int = 10**6) -> int:
        kind = MatKind(self.degree, self.r)
        return closure(kind, [kind.encode(g) for g in self.gens], cap).order

    def renamed(self, name: str) -> "MatrixRep":
        return MatrixRep(self.group, name, self.r, self.gens, self.labels)


def fixed_dims(rep: MatrixRep, group: FiniteGroup) -> list[int]:
    """kernel_dim(rho(g) - I) for every element of ``group``."""
    ident = identity(rep.degree)
    return [kernel_dim(m - ident, rep.r) for m in rep.images(group)]


@dataclass(frozen=True)
class BaseRep:
    """Generator matrices over Q(zeta_n); entries map exponents to rationals."""

    group: str
    name: str
    group_order: int
    n: int
    gens: tuple


def reduce_rep(base: BaseRep, fld: PrimeField, root: int | None = None, check_order: bool = True) -> MatrixRep:
    """Substitute an n-th root of unity of F_r for zeta_n and reduce."""
    r = fld.r
    if base.group_order % r == 0:
        raise FieldError(f"characteristic {r} divides |{base.group}| = {base.group_order}")
    if root is None:
        root = fld.root_of_unity(base.n)
    elif fld.element_order(root) != base.n:
        raise FieldError(f"{root} is not a primitive {base.n}-th root mod {r}")
    mats = []
    for g in base.gens:
        m = []
        for row in g:
            out_row = []
            for entry in row:
                acc = 0
                for k, c in entry.items():
                    c = Fraction(c)
                    acc += c.numerator * pow(c.denominator, -1, r) * pow(root, k, r)
                out_row.append(acc % r)
            m.append(out_row)
        mats.append(np.array(m, dtype=np.int64))
    rep = MatrixRep(base.group, base.name, r, tuple(mats))
    if check_order:
        got = rep.image_order(cap=base.group_order + 1)
        if got != base.group_order:
            raise RepError(f"reduced {base.name} generates a group of order {got}, not {base.group_order}")
    return rep


def inflate_rep(rep: MatrixRep, quotient: FiniteGroup, projection: Sequence[int], group: str, name: str | None = None) -> MatrixRep:
    """Pull ``rep`` back along a projection given by generator images in ``quotient``."""
    imgs = rep.images(quotient)
    return MatrixRep(group, name or f"inf({rep.name})", rep.r, tuple(imgs[i] for i in projection))


def tensor_rep(a: MatrixRep, b: MatrixRep, name: str | None = None) -> MatrixRep:
    if a.r != b.r:
        raise RepError("tensor factors live over different fields")
    if a.group != b.group or len(a.gens) != len(b.gens):
        raise RepError("tensor factors are reps of different groups")
    mats = tuple(np.mod(np.kron(x.astype(object), y.astype(object)), a.r) for x, y in zip(a.gens, b.gens))
    return MatrixRep(a.group, name or f"{a.name}*{b.name}", a.r, mats, a.labels)


def direct_sum(a: MatrixRep, b: MatrixRep, name: str | None = None) -> MatrixRep:
    if a.r != b.r or a.group != b.group or len(a.gens) != len(b.gens):
        raise RepError("summands are incompatible")
    mats = []
    for x, y in zip(a.gens, b.gens):
        m = np.zeros((a.degree + b.degree,) * 2, dtype=np.int64)
        m[: a.degree, : a.degree], m[a.degree :, a.degree :] = x, y
        mats.append(m)
    return MatrixRep(a.group, name or f"{a.name}+{b.name}", a.r, tuple(mats), a.labels)


def _sym_basis(d: int, k: int) -> list[tuple[int, ...]]:
    # exponent vectors of degree-k monomials
    out = []
    for combo in combinations_with_replacement(range(d), k):
        e = [0] * d
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _sym_matrix(a: np.ndarray, k: int, r: int) -> np.ndarray:
    d = a.shape[0]
    basis = _sym_basis(d, k)
    pos = {e: i for i, e in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)), dtype=object)
    zero = (0,) * d
    for col, beta in enumerate(basis):
        # x_j -> sum_i a[i, j] x_i
        poly = {zero: 1}
        for j, power in enumerate(beta):
            for _ in range(power):
                new: dict = {}
                for mono, c in poly.items():
                    for i in range(d):
                        if a[i, j]:
                            m = list(mono)
                            m[i] += 1
                            m = tuple(m)
                            new[m] = (new.get(m, 0) + c * int(a[i, j])) % r
                poly = new
        for mono, c in poly.items():
            out[pos[mono], col] = c % r
    return as_matrix(out, r)


def symmetric_power_rep(rep: MatrixRep, k: int, name: str | None = None) -> MatrixRep:
    """Action on homogeneous polynomials of degree k in the basis variables."""
    if k < 1:
        raise ValueError("symmetric power must be positive")
    mats = tuple(_sym_matrix(g, k, rep.r) for g in rep.gens)
    return MatrixRep(rep.group, name or f"Sym{k}({rep.name})", rep.r, mats, rep.labels)


def induced_image(
    sub_image: Callable,
    mul: Callable,
    inv: Callable,
    transversal: Sequence,
    x,
    degree: int,
) -> np.ndarray:
    """Block (i, j) is sigma(y_i x y_j^-1) when that element lies in H."""
    k = len(transversal)
    m = np.zeros((k * degree, k * degree), dtype=np.int64)
    for i, y in enumerate(transversal):
        hits = 0
        yx = mul(y, x)
        for j, z in enumerate(transversal):
            blk = sub_image(mul(yx, inv(z)))
            if blk is not None:
                m[i * degree : (i + 1) * degree, j * degree : (j + 1) * degree] = blk
                hits += 1
        if hits != 1:
            raise RepError("coset representatives do not form a transversal")
    return m


def induce_rep(
    sub_image: Callable,
    mul: Callable,
    inv: Callable,
    gens: Sequence,
    transversal: Sequence,
    degree: int,
    r: int,
    group: str,
    name: str,
) -> MatrixRep:
    """Induce sigma from a subgroup H; ``sub_image(g)`` is sigma(g) for g in H, else None.

    ``transversal`` lists right coset representatives y_i; elements may be of
    any type as long as ``mul`` and ``inv`` act on them.
    """
    for a in range(len(transversal)):
        for b in range(a + 1, len(transversal)):
            if sub_image(mul(transversal[a], inv(transversal[b]))) is not None:
                raise RepError("two coset representatives lie in the same coset")
    mats = tuple(induced_image(sub_image, mul, inv, transversal, g, degree) for g in gens)
    return MatrixRep(group, name, r, mats)


def twist_by_character(rep: MatrixRep, q: int, scalar: int, label: str | None = None) -> MatrixRep:
    """Rep of H x C_q where the new cyclic generator acts by ``scalar``."""
    fld = PrimeField(rep.r)
    if scalar % rep.r == 0 or fld.element_order(scalar) != q:
        raise FieldError(f"{scalar} does not have order {q} mod {rep.r}")
    mats = rep.gens + (np.mod(scalar * identity(rep.degree), rep.r),)
    return MatrixRep(rep.group + f"xC{q}", rep.name + f"@{scalar}", rep.r, mats, rep.labels + (label or f"c{q}",))


def extend_rep(
    rep: MatrixRep,
    sub: FiniteGroup,
    big: FiniteGroup,
    to_sub: Callable[[int], int | None],
    embed: Callable[[int], int],
    t: int,
    group: str,
    name: str,
) -> MatrixRep:
    """Extend a t-stable rep of an index-2 subgroup to ``big`` = H u Ht.

    ``to_sub`` and ``embed`` translate element indices between the two groups.
    Finds the intertwiner A with A sigma(h) = sigma(t h t^-1) A, rescales it so
    that A^2 = sigma(t^2), and sends h t to sigma(h) A.
    """
    r, d = rep.r, rep.degree
    imgs = rep.images(sub)
    tinv = big.inv(t)
    blocks = []
    for s in sub.gens:
        hs = embed(s)
        conj = to_sub(big.mul(big.mul(t, hs), tinv))
        if conj is None:
            raise RepError("subgroup is not normalized by t")
        # vec(A S) - vec(S' A) with column-major vec
        blocks.append(
            np.kron(imgs[s].T.astype(object), np.eye(d, dtype=object))
            - np.kron(np.eye(d, dtype=object), imgs[conj].astype(object))
        )
    basis = nullspace(np.mod(np.concatenate(blocks, axis=0), r), r)
    if len(basis) != 1:
        raise RepError(f"intertwiner space has dimension {len(basis)}; rep is not absolutely irreducible and t-stable")
    a = as_matrix(np.array(basis[0], dtype=object).reshape(d, d).T, r)
    u = to_sub(big.mul(t, t))
    if u is None:
        raise RepError("t^2 must lie in the subgroup")
    target = imgs[u]
    a2 = mat_mul(a, a, r)
    c = next(int(a2[i, j]) * pow(int(target[i, j]), -1, r) % r for i in range(d) for j in range(d) if target[i, j])
    if not np.array_equal(a2, np.mod(c * target.astype(object), r)):
        raise RepError("A^2 is not a scalar multiple of sigma(t^2)")
    fld = PrimeField(r)
    a = np.mod(a.astype(object) * fld.sqrt(fld.inv(c)), r)
    mats = []
    for s in big.gens:
        h = to_sub(s)
        if h is not None:
            mats.append(imgs[h])
        else:
            h = to_sub(big.mul(s, tinv))
            mats.append(mat_mul(imgs[h], a, r))
    return MatrixRep(group, name, r, tuple(mats))


# ---------------------------------------------------------------------------
# Dump format


def format_rep(rep: MatrixRep) -> str:
    lines = [f"rep {rep.group} {rep.name} {rep.degree} mod {rep.r}"]
    for i, g in enumerate(rep.gens):
        if i:
            lines.append("")
        lines += [" ".join(str(int(x)) for x in row) for row in g]
    return "\n".join(lines) + "\n"


def parse_rep(text: str) -> MatrixRep:
    lines = [ln.split("#", 1)[0].rstrip() for ln in text.splitlines()]
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise ValueError("empty rep file")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "rep" or head[4] != "mod":
        raise ValueError(f"bad rep header {lines[0]!r}")
    group, name, d, r = head[1], head[2], int(head[3]), int(head[5])
    blocks, cur = [], []
    for ln in lines[1:] + [""]:
        if ln.strip():
            cur.append([int(x) for x in ln.split()])
        elif cur:
            blocks.append(cur)
            cur = []
    for b in blocks:
        if len(b) != d or any(len(row) != d for row in b):
            raise ValueError(f"generator block is not {d}x{d}")
    return MatrixRep(group, name, r, tuple(np.array(b, dtype=np.int64) for b in blocks))
