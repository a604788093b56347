"""Filtration multiplicities of indecomposable level-r tilting objects, the
Hom-space dimensions they determine, and verification sweeps.

`delta_factors(lam, ctx)` returns the finitely supported multiset of weights
nu such that the standard object at nu occurs in a filtration of the
indecomposable tilting object with highest weight lam.  For rank one these
multiplicities are always one; the recursion below both exploits and checks
that fact:

* level 1, lam on a wall (lam = -1 mod p): a single factor, lam itself;
* level 1, lam = n*p + a regular (a in [0, p-2]): the pair lam and its
  reflection n*p - a - 2 in the lower wall;
* level r > 1, lam = p - 1 mod p: write lam = p - 1 + p*m and pull the
  level-(r-1) table of m through nu -> p - 1 + p*nu (the categorical
  equivalence onto the Steinberg component);
* level r > 1, lam = n*p + a regular: take the table of the lower wall
  weight n*p - 1 (every entry has the form k*p - 1, asserted) and translate
  each entry off the wall into the two neighbouring alcoves: k*p + a and
  k*p - a - 2.

If an entry of a wall table were not of wall form, or any multiplicity
exceeded one, the multiplicity-one property would be false: such a state
aborts loudly with `InvariantViolation` rather than being patched over.

Results are memoised per (p, r, lam mod 2*p^r); general weights are folded
in by shift equivariance (tensoring by the character of weight 2*p^r
translates the whole table).  The cache is the standard library LRU cache,
so concurrent readers are safe.
"""

from __future__ import annotations

from functools import lru_cache

from .charring import Character, baby_verma_char, baby_verma_simples
from .report import Report
from .weights import Context, dot_orbit, strongly_linked, tilde

DeltaFactors = dict[int, int]


class InvariantViolation(RuntimeError):
    """A structural invariant the recursion relies on failed.

    Not a user error: it would mean the multiplicity-one property is wrong
    for the requested (p, r), and the result must not be trusted.
    """


def delta_factors(lam: int, ctx: Context) -> DeltaFactors:
    """Multiset {nu: multiplicity} of standard factors of the indecomposable
    tilting object with highest weight lam."""
    period = 2 * ctx.q
    lam0 = lam % period
    shift = lam - lam0
    base = _folded_factors(ctx.p, ctx.r, lam0)
    return {nu + shift: m for nu, m in base}


@lru_cache(maxsize=None)
def _folded_factors(p: int, r: int, lam: int) -> tuple[tuple[int, int], ...]:
    ctx = Context(p, r)
    if r == 1:
        a = lam % p
        if a == p - 1:
            return ((lam, 1),)
        n = (lam - a) // p
        return tuple(sorted({lam: 1, n * p - a - 2: 1}.items()))

    if lam % p == p - 1:
        m = (lam - (p - 1)) // p
        sub = delta_factors(m, Context(p, r - 1))
        return tuple(sorted((p - 1 + p * nu, k) for nu, k in sub.items()))

    a = lam % p
    n = (lam - a) // p
    wall = delta_factors(n * p - 1, ctx)
    out: dict[int, int] = {}
    for nu, mult in wall.items():
        if mult != 1:
            raise InvariantViolation(
                f"wall table at {n * p - 1} (p={p}, r={r}) has multiplicity {mult}"
            )
        if (nu + 1) % p != 0:
            raise InvariantViolation(
                f"wall table at {n * p - 1} (p={p}, r={r}) contains non-wall weight {nu}"
            )
        k = (nu + 1) // p
        for image in (k * p + a, k * p - a - 2):
            out[image] = out.get(image, 0) + 1
    if any(v != 1 for v in out.values()):
        raise InvariantViolation(
            f"multiplicity above one in the table of {lam} (p={p}, r={r})"
        )
    return tuple(sorted(out.items()))


def hom_dim(lam: int, mu: int, ctx: Context) -> int:
    """dim Hom between the indecomposable tiltings at lam and mu: the number
    of common standard factors, counted with products of multiplicities."""
    fa = delta_factors(lam, ctx)
    fb = delta_factors(mu, ctx)
    if len(fb) < len(fa):
        fa, fb = fb, fa
    return sum(m * fb.get(nu, 0) for nu, m in fa.items())


def hom_dim_sum(P: dict[int, int], Q: dict[int, int], ctx: Context) -> int:
    """Bilinear extension of `hom_dim` to direct sums given as finitely
    supported multisets {highest weight: multiplicity}."""
    return sum(
        mp * mq * hom_dim(lam, mu, ctx)
        for lam, mp in P.items()
        for mu, mq in Q.items()
    )


def tilting_char(lam: int, ctx: Context) -> Character:
    """Character of the indecomposable tilting at lam: the sum of the
    standard characters over its factor table."""
    out = Character.zero()
    for nu, mult in delta_factors(lam, ctx).items():
        out = out + baby_verma_char(nu, ctx).scale(mult)
    return out


# ---------------------------------------------------------------------------
# verification sweeps.  Each returns a Report; mathematical failures are
# recorded, never raised.
# ---------------------------------------------------------------------------


def _ctx_dict(ctx: Context) -> dict:
    return {"p": ctx.p, "r": ctx.r}


def verify_reciprocity(lam: int, ctx: Context) -> Report:
    """Factor multiplicities of the projective cover of the simple at lam
    against composition multiplicities of costandard objects, computed by the
    independent character-peeling oracle."""
    lt = tilde(lam, ctx)
    fac = delta_factors(lt, ctx)
    rep = Report("reciprocity", _ctx_dict(ctx))
    for mu in range(lam, lt + 1):
        lhs = fac.get(mu, 0)
        rhs = baby_verma_simples(mu, ctx).get(lam, 0)
        rep.add({"lam": lam, "mu": mu}, lhs, rhs)
    return rep


def verify_bounds(lam: int, ctx: Context) -> Report:
    """Every factor nu of the projective cover at lam satisfies
    lam <= nu <= tilde(lam), and both endpoints occur exactly once."""
    lt = tilde(lam, ctx)
    fac = delta_factors(lt, ctx)
    rep = Report("bounds", _ctx_dict(ctx))
    for nu in sorted(fac):
        rep.add(
            {"lam": lam, "nu": nu},
            {"lo": lam <= nu, "hi": nu <= lt},
            {"lo": True, "hi": True},
        )
    rep.add({"lam": lam, "endpoint": lam}, fac.get(lam, 0), 1)
    rep.add({"lam": lam, "endpoint": lt}, fac.get(lt, 0), 1)
    return rep


def verify_strong_linkage(lam: int, ctx: Context) -> Report:
    """Every factor of the projective cover at lam is strongly linked above
    lam and below tilde(lam)."""
    lt = tilde(lam, ctx)
    rep = Report("strong-linkage", _ctx_dict(ctx))
    for nu in sorted(delta_factors(lt, ctx)):
        rep.add({"lam": lam, "nu": nu, "dir": "up"}, strongly_linked(lam, nu, ctx), True)
        rep.add({"lam": lam, "nu": nu, "dir": "to-tilde"}, strongly_linked(nu, lt, ctx), True)
    return rep


def verify_steinberg_equivalence(m: int, ctx: Context) -> Report:
    """The level-(r-1) table of m matches the level-r table of p-1+p*m under
    nu -> p-1+p*nu, and Hom dimensions agree across the embedding on a
    window of partners."""
    if ctx.r < 2:
        raise ValueError("the level-drop check needs r >= 2")
    p = ctx.p
    sub_ctx = Context(p, ctx.r - 1)
    rep = Report("steinberg-equivalence", _ctx_dict(ctx))
    image = {p - 1 + p * nu: k for nu, k in delta_factors(m, sub_ctx).items()}
    lhs = delta_factors(p - 1 + p * m, ctx)
    rep.add({"m": m, "check": "factor-table"}, sorted(lhs.items()), sorted(image.items()))
    span = 2 * sub_ctx.q
    for mp in range(m - span, m + span + 1):
        rep.add(
            {"m": m, "m2": mp, "check": "hom"},
            hom_dim(p - 1 + p * m, p - 1 + p * mp, ctx),
            hom_dim(m, mp, sub_ctx),
        )
    return rep


def verify_mult_free(lo: int, hi: int, ctx: Context) -> Report:
    """All multiplicities are one and factor counts are powers of two over
    the weight window [lo, hi]."""
    rep = Report("mult-free", _ctx_dict(ctx))
    for lam in range(lo, hi + 1):
        fac = delta_factors(lam, ctx)
        rep.add({"lam": lam, "check": "multiplicity"}, max(fac.values()), 1)
        n = len(fac)
        rep.add(
            {"lam": lam, "check": "factor-count"},
            n,
            "a power of two",
            passed=n >= 1 and (n & (n - 1)) == 0,
        )
    return rep


def verify_linkage_necessity(lo: int, hi: int, ctx: Context) -> Report:
    """Nonzero Hom between tiltings forces the highest weights into one dot
    orbit.  Only pairs with nonzero Hom produce items."""
    rep = Report("linkage-necessity", _ctx_dict(ctx))
    for lam in range(lo, hi + 1):
        orbit = dot_orbit(lam, lo - 4 * ctx.q, hi + 4 * ctx.q, ctx)
        for mu in range(lo, hi + 1):
            if hom_dim(lam, mu, ctx):
                rep.add({"lam": lam, "mu": mu}, mu in orbit, True)
    return rep
