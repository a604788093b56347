"""Exact arithmetic in the rank-one character ring.

A `Character` is a finitely supported integer combination of basis symbols
e^n, n an integer: the formal character sum(dim M_n * e^n) of a module with
integer weights.  Characters are kept in canonical form (no stored zero
coefficients), so structural equality is semantic equality.

The module provides the classical character formulas needed downstream:

* `weyl_char(m)`: sum(e^(m-2j), j=0..m) for dominant m, extended to all of
  the integers by the reflection rule chi(-m-2) = -chi(m), chi(-1) = 0.
* `simple_char(lam, p)`: characters of simple modules via the tensor
  factorization over base-p digits, each digit twisted by e -> e^(p^i).
* `simple_char_r(lam, ctx)`: level-r simples, a head character shifted by
  p^r times the tail.
* `baby_verma_char(lam, ctx)`: chi(p^r - 1) shifted by lam - (p^r - 1);
  its coefficient mass is always p^r.
* `decompose_into_simples`: greedy highest-weight peeling, the exact oracle
  handed to the reciprocity checks.  Valid because every simple character
  has top coefficient one.

Characters are immutable by convention; all functions are pure.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .weights import Context, padic_split


class NotAModuleCharacter(ValueError):
    """Raised when highest-weight peeling meets a negative multiplicity."""


class Character:
    """Finitely supported map from integer weights to integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c: dict[int, int] = {w: c for w, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, n: int) -> "Character":
        return cls({n: 1})

    @classmethod
    def zero(cls) -> "Character":
        return cls()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Character":
        c: dict[int, int] = {}
        for w, k in pairs:
            c[w] = c.get(w, 0) + k
        return cls(c)

    def coeff(self, n: int) -> int:
        return self._c.get(n, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._c.items())

    def support(self) -> list[int]:
        return sorted(self._c)

    def max_weight(self) -> int:
        if not self._c:
            raise ValueError("the zero character has no maximal weight")
        return max(self._c)

    def mass(self) -> int:
        """Sum of all coefficients (the dimension, for a module character)."""
        return sum(self._c.values())

    def to_pairs(self) -> list[list[int]]:
        """Sorted [weight, coefficient] pairs; the JSON form."""
        return [[w, self._c[w]] for w in sorted(self._c)]

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Character) and self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __add__(self, other: "Character") -> "Character":
        c = dict(self._c)
        for w, k in other._c.items():
            c[w] = c.get(w, 0) + k
        return Character(c)

    def __neg__(self) -> "Character":
        return Character({w: -k for w, k in self._c.items()})

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def scale(self, k: int) -> "Character":
        return Character({w: k * c for w, c in self._c.items()})

    def shift(self, n: int) -> "Character":
        """Multiply by e^n: translate every weight by n."""
        return Character({w + n: c for w, c in self._c.items()})

    def dilate(self, m: int) -> "Character":
        """Substitute e -> e^m (weights multiplied by m); m must be >= 1."""
        if m < 1:
            raise ValueError("dilation factor must be >= 1")
        return Character({w * m: c for w, c in self._c.items()})

    def __mul__(self, other: "Character") -> "Character":
        c: dict[int, int] = {}
        for w1, k1 in self._c.items():
            for w2, k2 in other._c.items():
                w = w1 + w2
                c[w] = c.get(w, 0) + k1 * k2
        return Character(c)

    def __repr__(self) -> str:
        if not self._c:
            return "Character(0)"
        parts = [f"{c}*e^{w}" for w, c in sorted(self._c.items())]
        return "Character(" + " + ".join(parts) + ")"


def weyl_char(m: int) -> Character:
    """The rank-one Weyl character: e^m + e^(m-2) + ... + e^(-m) for m >= 0,
    zero at m = -1, and -weyl_char(-m-2) below that."""
    if m >= 0:
        return Character({m - 2 * j: 1 for j in range(m + 1)})
    if m == -1:
        return Character()
    return -weyl_char(-m - 2)


def simple_char(lam: int, p: int) -> Character:
    """Character of the simple module with dominant highest weight lam.

    Factor lam into base-p digits; each digit d contributes weyl_char(d) with
    weights dilated by the matching power of p.  Digits lie in [0, p-1],
    where the Weyl and simple characters agree.
    """
    if lam < 0:
        raise ValueError(f"simple characters require a dominant weight, got {lam}")
    out = Character.basis(0)
    rest, power = lam, 1
    while True:
        rest, d = divmod(rest, p)
        out = out * weyl_char(d).dilate(power)
        if rest == 0:
            return out
        power *= p


def simple_char_r(lam: int, ctx: Context) -> Character:
    """Character of the level-r simple with highest weight lam (any integer):
    the head's simple character shifted by p^r times the tail."""
    head, tail = padic_split(lam, ctx)
    return simple_char(head, ctx.p).shift(ctx.q * tail)


def baby_verma_char(lam: int, ctx: Context) -> Character:
    """Character of the level-r standard (and costandard) object at lam."""
    return weyl_char(ctx.q - 1).shift(lam - (ctx.q - 1))


def decompose_into_simples(f: Character, ctx: Context) -> dict[int, int]:
    """Write f as a non-negative combination of level-r simple characters.

    Repeatedly peel the maximal remaining weight: its coefficient is the
    multiplicity of that simple, because simple characters are supported
    below their top weight, which carries coefficient one.  Raises
    NotAModuleCharacter if a peel would need a negative multiplicity; the
    loop is capped by the coefficient mass, which every genuine peel
    strictly decreases.
    """
    out: dict[int, int] = {}
    rem = f
    budget = f.mass()
    while rem:
        top = rem.max_weight()
        c = rem.coeff(top)
        if c < 0:
            raise NotAModuleCharacter(
                f"coefficient {c} at top weight {top} during peeling"
            )
        budget -= c
        if budget < 0:
            raise NotAModuleCharacter("peeling exceeded the coefficient mass")
        rem = rem - simple_char_r(top, ctx).scale(c)
        out[top] = c
    return out


@lru_cache(maxsize=None)
def _baby_verma_simples(p: int, r: int, lam: int) -> tuple[tuple[int, int], ...]:
    ctx = Context(p, r)
    dec = decompose_into_simples(baby_verma_char(lam, ctx), ctx)
    return tuple(sorted(dec.items()))


def baby_verma_simples(lam: int, ctx: Context) -> dict[int, int]:
    """Composition-factor multiplicities of the level-r standard object at
    lam, computed by character peeling.  Cached; heavily reused by the
    reciprocity sweeps."""
    return dict(_baby_verma_simples(ctx.p, ctx.r, lam))
