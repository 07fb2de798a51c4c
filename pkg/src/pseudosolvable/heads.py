"""Concrete representations of the three head groups over a prime field.

Only two base representations are stored: the standard 4-dimensional action
of A5 (built from the permutation action) and a 2-dimensional faithful
representation of SL(2,5) over Q(zeta_5). Everything else is derived by
inflation, symmetric powers, tensor products, induction or extension, and
checked against the character tables.
"""

from __future__ import annotations

from fractions import Fraction as Fr
from functools import lru_cache

import numpy as np

from . import cyclo
from .fplinear import (
    BaseRep,
    MatrixRep,
    PrimeField,
    RepError,
    extend_rep,
    fixed_dims,
    induce_rep,
    inflate_rep,
    reduce_rep,
    symmetric_power_rep,
    tensor_rep,
)
from .groups import FiniteGroup, _block, a5, find_epimorphism, match_classes, sl25, two_s5, two_s5_to_sl25

DEFAULT_MODULUS = 241  # 240 | r - 1, so every root of unity the heads need exists


def _c(*coeffs) -> dict:
    return {k: Fr(c) for k, c in enumerate(coeffs) if c}


# Images of [[1,1],[0,1]] and [[0,-1],[1,0]] in a faithful 2-dim rep of SL(2,5),
# entries as polynomials in zeta_5 (binary icosahedral matrices).
RHO2_BASE = BaseRep(
    "SL25",
    "rho2",
    120,
    5,
    (
        ((_c(0, 0, 0, 1), _c()), (_c(), _c(0, 0, 1))),
        (
            (_c("1/5", "2/5", "3/5", "-1/5"), _c("-2/5", "-4/5", "-1/5", "-3/5")),
            (_c("-2/5", "-4/5", "-1/5", "-3/5"), _c("-1/5", "-2/5", "-3/5", "1/5")),
        ),
    ),
)


def t4_base() -> BaseRep:
    """Sum-zero part of the 5-point permutation module, basis e_i - e_4."""
    g = a5()
    mats = []
    for s in g.gens:
        perm = g.elements[s]
        col = np.zeros((4, 4), dtype=int)
        for i in range(4):
            a, b = perm[i], perm[4]
            if a < 4:
                col[a, i] += 1
            if b < 4:
                col[b, i] -= 1
        # products apply the left factor first, so use row action
        m = col.T
        mats.append(tuple(tuple(_c(int(x)) for x in row) for row in m))
    return BaseRep("A5", "t4", 60, 1, tuple(mats))


def trivial_rep(group: FiniteGroup, name: str, r: int) -> MatrixRep:
    return MatrixRep(group.name, name, r, tuple(np.ones((1, 1), dtype=np.int64) for _ in group.gens))


@lru_cache(maxsize=None)
def sl25_to_a5() -> tuple[int, ...]:
    """Images in A5 of the SL(2,5) generators under a fixed epimorphism."""
    return find_epimorphism(sl25(), a5())


def _descend(rep: MatrixRep, name: str) -> MatrixRep:
    """Rep of A5 from an SL(2,5) rep that is trivial on the centre."""
    big, small = sl25(), a5()
    proj = big.homomorphism_images([small.elements[i] for i in sl25_to_a5()], small.kind.mul, small.elements[0])
    imgs = rep.images(big)
    mats = []
    for s in small.gens:
        cands = [imgs[i] for i, x in enumerate(proj) if small.index[x] == s]
        if any(not np.array_equal(c, cands[0]) for c in cands):
            raise RepError(f"{rep.name} is not trivial on the kernel")
        mats.append(cands[0])
    return MatrixRep("A5", name, rep.r, tuple(mats))


def _to_sl25(i: int) -> int | None:
    x = two_s5_to_sl25(two_s5().elements[i])
    return None if x is None else sl25().index[x]


def _embed_sl25(j: int) -> int:
    return two_s5().index[_block(sl25().elements[j])]


def _swap() -> int:
    return two_s5().gens[2]


def _induce_to_two_s5(rep: MatrixRep, name: str) -> MatrixRep:
    imgs = rep.images(sl25())

    def sub_image(i):
        j = _to_sl25(i)
        return None if j is None else imgs[j]

    big = two_s5()
    return induce_rep(sub_image, big.mul, big.inv, big.gens, [0, _swap()], rep.degree, rep.r, "TwoS5", name)


def matches_table(rep: MatrixRep, group: FiniteGroup, name: str) -> bool:
    """Exact fixed-space dimension of every element agrees with the character of ``name``."""
    table = cyclo.load_table(group.name)
    cols = match_classes(group, table)
    want = [cyclo.fixed_space_dim(table, name, cols[group.class_of[i]]) for i in range(group.order)]
    return fixed_dims(rep, group) == want


def profile_mismatches(rep: MatrixRep, group: FiniteGroup, name: str) -> list[str]:
    """Class names where kernel dims disagree with the character table."""
    table = cyclo.load_table(group.name)
    cols = match_classes(group, table)
    dims = fixed_dims(rep, group)
    bad = []
    for c in group.classes:
        want = cyclo.fixed_space_dim(table, name, cols[c.index])
        if any(dims[m] != want for m in c.members):
            bad.append(table.classes[cols[c.index]].name)
    return bad


@lru_cache(maxsize=None)
def head_rep(name: str, r: int = DEFAULT_MODULUS) -> MatrixRep:
    """Named head representation over F_r, built from its ingredients on demand."""
    if 240 % r == 0:
        raise RepError(f"characteristic {r} divides the head group orders")
    fld = PrimeField(r)
    if name == "t1":
        return trivial_rep(a5(), "t1", r)
    if name == "t4":
        return reduce_rep(t4_base(), fld)
    if name == "rho1":
        return trivial_rep(sl25(), "rho1", r)
    if name == "rho2":
        return reduce_rep(RHO2_BASE, fld, root=fld.root_of_unity(5))
    if name == "rho3":
        # Galois conjugate: zeta_5 -> zeta_5^2
        w = fld.root_of_unity(5)
        return reduce_rep(RHO2_BASE, fld, root=w * w % r).renamed("rho3")
    if name == "t2":
        return _descend(symmetric_power_rep(head_rep("rho2", r), 2), "t2")
    if name == "t3":
        return _descend(symmetric_power_rep(head_rep("rho3", r), 2), "t3")
    if name == "rho6":
        return inflate_rep(head_rep("t4", r), a5(), sl25_to_a5(), "SL25", "rho6")
    if name == "rho7":
        return symmetric_power_rep(head_rep("rho2", r), 3, "rho7")
    if name == "rho9":
        # one of the two products is irreducible of degree 6; the other splits
        for t in ("t2", "t3"):
            cand = tensor_rep(head_rep("rho2", r), inflate_rep(head_rep(t, r), a5(), sl25_to_a5(), "SL25"), "rho9")
            if matches_table(cand, sl25(), "rho9"):
                return cand
        raise RepError("no tensor product realizes rho9")
    if name == "gamma1":
        return trivial_rep(two_s5(), "gamma1", r)
    if name == "gamma3":
        return _induce_to_two_s5(head_rep("rho2", r), "gamma3")
    if name == "gamma6":
        return extend_rep(head_rep("rho7", r), sl25(), two_s5(), _to_sl25, _embed_sl25, _swap(), "TwoS5", "gamma6")
    raise KeyError(f"no construction for head rep {name!r}")


def head_reps(r: int = DEFAULT_MODULUS) -> dict[str, MatrixRep]:
    return {name: head_rep(name, r) for name in GROUP_OF}


GROUP_OF = {
    "t1": "A5", "t2": "A5", "t3": "A5", "t4": "A5",
    "rho1": "SL25", "rho2": "SL25", "rho3": "SL25", "rho6": "SL25", "rho7": "SL25", "rho9": "SL25",
    "gamma1": "TwoS5", "gamma3": "TwoS5", "gamma6": "TwoS5",
}

# rep realizing each quad pattern, and the head it lives on
REP_FOR_PATTERN = {
    "F1a": "t1", "F1b": "t4",
    "F2a": "rho1", "F2b": "rho2", "F2c": "rho6", "F2d": "rho7", "F2e": "rho9",
    "F3a": "gamma1", "F3b": "gamma6", "F3c": "gamma3",
}
