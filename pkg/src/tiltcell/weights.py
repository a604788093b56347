"""Rank-one weight combinatorics at a fixed odd prime p and level r.

Conventions, used throughout the package: the weight lattice of SL2 is the
integers, the half-sum of positive roots is 1, the positive root is 2, and
the dominant weights are the non-negative integers.  The affine reflection
with index n acts through the rho-shifted ("dot") action and fixes the point
n*p - 1, so it sends lam to 2*(n*p - 1) - lam.  The fundamental alcove is the
interval [0, p-2]; the points congruent to -1 mod p are the walls.

Weights are plain ints.  The pair (p, r) travels in an explicit `Context`, so
the same integer can be re-read at any level r (the head/tail of a p-adic
split depend on r).

Everything here is a pure function of its arguments and `Context` is frozen,
so the module is safe to use from any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Context:
    """A prime p >= 3 and a level r >= 1.  Validated at construction."""

    p: int
    r: int = 1

    def __post_init__(self) -> None:
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime >= 3, got {self.p}")
        if self.r < 1:
            raise ValueError(f"r must be a positive integer, got {self.r}")

    @property
    def q(self) -> int:
        """The box size p**r at this level."""
        return self.p**self.r


class PadicSplit(NamedTuple):
    head: int  # in [0, p**r)
    tail: int  # head + p**r * tail reconstructs the weight


SPECIAL = "special"
WALL = "wall"
REGULAR = "regular"


@dataclass(frozen=True)
class AlcoveClass:
    """Position of a weight in the level-r alcove pattern.

    kind is one of "special" (congruent to -1 mod p**r), "wall" (congruent
    to -1 mod p but not special; the weight is alcove_index*p - 1), or
    "regular" (the weight is alcove_index*p + offset with offset in
    [0, p-2]).
    """

    kind: str
    alcove_index: int | None = None
    offset: int | None = None


def padic_split(lam: int, ctx: Context) -> PadicSplit:
    """Write lam = head + p**r * tail with head in [0, p**r).

    Euclidean division with non-negative remainder, so negative weights get
    the unique head inside the fundamental box.
    """
    head = lam % ctx.q
    return PadicSplit(head, (lam - head) // ctx.q)


def tilde(lam: int, ctx: Context) -> int:
    """The bijection 2*(p**r - 1) - head + p**r * tail: the highest weight of
    the projective cover of the simple object with highest weight lam.

    It fixes every weight congruent to -1 mod p**r and carries the box
    p**r * m + [0, p**r) onto the translated box p**r * (m+1) - 1 + [0, p**r).
    Applied twice it shifts a non-fixed weight up by the tensor period
    2 * p**r, so it is an involution on twist classes but not on the
    integers themselves.
    """
    head, tail = padic_split(lam, ctx)
    return 2 * (ctx.q - 1) - head + ctx.q * tail


def classify(lam: int, ctx: Context) -> AlcoveClass:
    """Classify lam as special, wall, or regular for the level-r pattern."""
    if (lam + 1) % ctx.q == 0:
        return AlcoveClass(SPECIAL)
    a = lam % ctx.p
    if a == ctx.p - 1:
        return AlcoveClass(WALL, alcove_index=(lam + 1) // ctx.p)
    return AlcoveClass(REGULAR, alcove_index=(lam - a) // ctx.p, offset=a)


def dot_reflect(lam: int, wall_index: int, ctx: Context) -> int:
    """Reflect lam in the wall at wall_index*p - 1 (dot action)."""
    return 2 * (wall_index * ctx.p - 1) - lam


def dot_orbit(lam: int, lo: int, hi: int, ctx: Context) -> set[int]:
    """The orbit of lam under all dot reflections, clipped to [lo, hi].

    The group generated by the reflections at the points n*p - 1 is infinite
    dihedral; the orbit of lam is {lam + 2kp} union {-lam - 2 + 2kp}.  For
    wall and special weights the two families coincide.
    """
    if lo > hi:
        raise ValueError("dot_orbit requires lo <= hi")
    p2 = 2 * ctx.p
    out: set[int] = set()
    for base in (lam, -lam - 2):
        # smallest k with base + 2kp >= lo
        k = -((base - lo) // p2)
        x = base + p2 * k
        while x <= hi:
            out.add(x)
            x += p2
    return out


def strongly_linked(mu: int, lam: int, ctx: Context) -> bool:
    """True iff mu can be raised to lam by a chain of weight-increasing dot
    reflections.

    Breadth-first search over single up-reflections, with the frontier pruned
    to weights <= lam.  Terminates because every step strictly increases the
    weight and the orbit meets (-inf, lam] in finitely many points.
    """
    if mu == lam:
        return True
    if mu > lam:
        return False
    p = ctx.p
    # cheap orbit pre-check: lam must lie in {mu + 2kp} or {-mu - 2 + 2kp}
    if (lam - mu) % (2 * p) != 0 and (lam + mu + 2) % (2 * p) != 0:
        return False
    frontier = [mu]
    seen = {mu}
    while frontier:
        nxt: list[int] = []
        for x in frontier:
            n_min = (x + 1) // p + 1  # smallest n with n*p - 1 > x
            n_max = (lam + x + 2) // (2 * p)  # largest n keeping the image <= lam
            for n in range(n_min, n_max + 1):
                y = dot_reflect(x, n, ctx)
                if y == lam:
                    return True
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return False
