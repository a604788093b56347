"""Path algebras with relations over exact rationals, and the three quiver
presentations they are checked against.

Presentations
-------------
* `build_p1_quiver`: the doubly infinite zigzag chain carrying the level-one
  principal block.  Vertices are chain positions n with highest weight n*p
  (n even) or (n+1)*p - 2 (n odd); consecutive like arrows compose to zero
  and the two loops at a vertex agree.
* `build_p2_quiver`: the level-two ladder.  Vertical chains of p vertices
  hang below the columns whose index is a multiple of p; horizontal arrows
  reflect the index in the nearest multiple of p from above.  Relations:
  consecutive like arrows vanish, the two vertical loops at a vertex agree,
  the two horizontal loops agree, and the squares formed by a vertical and a
  horizontal step commute (with configurable nonzero scalars).  These
  families leave the endomorphism space at each chain-top column one
  dimension too big, so by default an extra relation identifies the
  length-four loop through the adjacent row with the length-two vertical
  loop there; pass boundary_loops=False to reproduce the bare families.
* `build_sl3_quiver`: six vertices on the Bruhat graph of S3 with eight up
  arrows, their duals, and the block's relations with scalar parameters
  (a, b, r).

Conventions
-----------
A path is a tuple of arrow ids in application order: (x, y) means "apply x,
then y".  Displayed names are compositional (last applied leftmost), which
matches the usual juxtaposition for morphisms.

Engines
-------
Two independent engines are provided and cross-checked:

* `quotient_dims`: exact linear algebra.  Per ordered vertex pair, span the
  paths of length <= max_len, quotient by every relation instance that
  fits, and report the dimension.  A saturation flag certifies that each
  maximal-length path reduces into shorter ones, which pins the truncation.
* `normal_form`: oriented rewriting.  Relations are oriented so that
  down-after-up patterns rewrite towards sorted words; a handful of derived
  rules (consequences of the relations near chain-top columns, each checked
  against the linear ideal in the test suite) make the system effective in
  practice.  The orientation is nowhere proven confluent; agreement of the
  irreducible-word counts with the linear dimensions is an empirical check.

Only window-interior ("core") vertex pairs are trusted: the infinite
presentations are realised on a finite window with a declared shift period,
and pairs near the cut are reported separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .cellbasis import SL3_ELEMENTS, SL3_LENGTH, sl3_hom_dim
from .deltafilt import delta_factors, hom_dim
from .ratlinalg import SparseEchelon
from .report import Report
from .weights import Context


class QuiverConfigError(ValueError):
    """Bad build parameters, e.g. a declared-nonzero scalar set to zero."""


class NotSaturated(RuntimeError):
    """Paths of maximal length did not all reduce; raise max_len."""


class NonTerminating(RuntimeError):
    """Rewriting exceeded its step budget; indicates an orientation bug."""


Path = tuple[int, ...]
Vertex = object
Pair = tuple[Vertex, Vertex]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: Vertex
    target: Vertex
    kind: str  # "u" | "u'" | "d" | "d'"
    dual: str  # name of the reverse arrow


@dataclass
class Quiver:
    preset: str
    vertices: list
    arrows: list[Arrow]
    weights: dict  # vertex -> highest weight (int) or Weyl-group label (str)
    core: frozenset  # window-interior vertices whose Hom pairs are trusted
    shift_period: int | None
    context: Context | None = None
    by_name: dict = field(init=False, repr=False)
    out_ids: dict = field(init=False, repr=False)
    in_ids: dict = field(init=False, repr=False)
    cell_rank: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.by_name = {a.name: i for i, a in enumerate(self.arrows)}
        if len(self.by_name) != len(self.arrows):
            raise QuiverConfigError("duplicate arrow names")
        self.out_ids = {v: [] for v in self.vertices}
        self.in_ids = {v: [] for v in self.vertices}
        for i, a in enumerate(self.arrows):
            self.out_ids[a.source].append(i)
            self.in_ids[a.target].append(i)
        if self.preset == "sl3":
            self.cell_rank = {v: -SL3_LENGTH[v] for v in self.vertices}
        else:
            self.cell_rank = dict(self.weights)

    def arrow_id(self, name: str) -> int:
        return self.by_name[name]

    def path_target(self, source: Vertex, path: Path) -> Vertex:
        return self.arrows[path[-1]].target if path else source

    def format_path(self, path: Path) -> str:
        if not path:
            return "e"
        return "*".join(self.arrows[i].name for i in reversed(path))


@dataclass
class PathElement:
    """A rational combination of parallel paths (shared source and target)."""

    source: Vertex
    target: Vertex
    terms: dict[Path, Fraction]

    def __post_init__(self) -> None:
        self.terms = {p: Fraction(c) for p, c in self.terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def scaled(self, k) -> "PathElement":
        k = Fraction(k)
        return PathElement(self.source, self.target, {p: k * c for p, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PathElement)
            and self.source == other.source
            and self.target == other.target
            and self.terms == other.terms
        )

    def pretty(self, quiver: Quiver) -> str:
        if not self.terms:
            return "0"
        bits = []
        for p in sorted(self.terms, key=lambda t: (len(t), t)):
            c = self.terms[p]
            body = quiver.format_path(p)
            bits.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(bits)


Replacement = tuple[tuple[Path, Fraction], ...]


@dataclass
class RelationSet:
    """Ideal generators plus their rewriting orientation.

    `rules` maps each redex path to its replacement and generates the ideal
    consumed by the linear engine (`relations`).  `derived_rules` are
    consequences of the relations, used only by the rewriting engine; they
    do not enlarge the ideal.
    """

    relations: list[PathElement]
    rules: dict[Path, Replacement]
    derived_rules: dict[Path, Replacement]
    scalars: dict[str, Fraction]

    def all_rules(self) -> dict[Path, Replacement]:
        merged = dict(self.rules)
        merged.update(self.derived_rules)
        return merged

    def zero_redexes(self) -> set[Path]:
        """Redexes of single-term (monomial) relations; any path containing
        one as a contiguous subword lies in the ideal."""
        out: set[Path] = set()
        for rel in self.relations:
            if len(rel.terms) == 1:
                out.update(rel.terms)
        return out


def _rule_to_relation(quiver: Quiver, redex: Path, repl: Replacement) -> PathElement:
    src = quiver.arrows[redex[0]].source
    tgt = quiver.arrows[redex[-1]].target
    terms: dict[Path, Fraction] = {redex: Fraction(1)}
    for rep, coeff in repl:
        terms[rep] = terms.get(rep, Fraction(0)) - coeff
    return PathElement(src, tgt, terms)


class _Builder:
    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        self.rules: dict[Path, Replacement] = {}
        self.derived: dict[Path, Replacement] = {}

    def _key(self, names: Iterable[str]) -> Path:
        aid = self.quiver.arrow_id
        return tuple(aid(n) for n in names)

    def rule(self, redex: Iterable[str], repl: Iterable[tuple[Iterable[str], Fraction]]) -> None:
        key = self._key(redex)
        if key in self.rules:
            raise QuiverConfigError(f"duplicate rule for redex {key}")
        self.rules[key] = tuple((self._key(names), Fraction(c)) for names, c in repl)

    def zero(self, redex: Iterable[str]) -> None:
        self.rule(redex, [])

    def derived_rule(
        self, redex: Iterable[str], repl: Iterable[tuple[Iterable[str], Fraction]]
    ) -> None:
        self.derived[self._key(redex)] = tuple(
            (self._key(names), Fraction(c)) for names, c in repl
        )

    def finish(self, scalars: dict[str, Fraction]) -> RelationSet:
        relations = [
            _rule_to_relation(self.quiver, redex, repl) for redex, repl in self.rules.items()
        ]
        return RelationSet(relations, self.rules, self.derived, scalars)


# ---------------------------------------------------------------------------
# presentation builders
# ---------------------------------------------------------------------------


def ladder_weight(j: int, p: int) -> int:
    """Highest weight at ladder position j: j*p for even j, (j+1)*p - 2 odd."""
    return j * p if j % 2 == 0 else (j + 1) * p - 2


def right_neighbor(j: int, p: int) -> int:
    """Reflect j in the nearest multiple of p at or above it (j not 0 mod p)."""
    return 2 * p * (-((-j) // p)) - j


def left_neighbor(j: int, p: int) -> int:
    """Reflect j in the nearest multiple of p strictly below it."""
    return 2 * p * (j // p) - j


_DEFAULT_MAXLEN = {"p1": 4, "p2": 5, "sl3": 7}


def default_max_len(quiver: Quiver) -> int:
    return _DEFAULT_MAXLEN[quiver.preset]


def build_p1_quiver(p: int, window: int = 2, margin: int = 2) -> tuple[Quiver, RelationSet]:
    """The zigzag chain on positions [-2(window+margin), 2(window+margin)];
    positions within 2*window of zero form the trusted core."""
    if window < 2:
        raise QuiverConfigError("p1 window must be >= 2")
    ctx = Context(p, 1)
    half = 2 * (window + margin)
    vertices = list(range(-half, half + 1))
    arrows: list[Arrow] = []
    for n in range(-half, half):
        arrows.append(Arrow(f"u{n}", n, n + 1, "u", f"d{n}"))
        arrows.append(Arrow(f"d{n}", n + 1, n, "d", f"u{n}"))
    weights = {n: ladder_weight(n, p) for n in vertices}
    core = frozenset(range(-2 * window, 2 * window + 1))
    quiver = Quiver("p1", vertices, arrows, weights, core, 2, ctx)
    b = _Builder(quiver)
    for n in range(-half, half - 1):
        b.zero([f"u{n}", f"u{n+1}"])
        b.zero([f"d{n+1}", f"d{n}"])
    for x in range(-half + 1, half):
        # the loop at x through x+1 becomes the loop through x-1
        b.rule([f"u{x}", f"d{x}"], [([f"d{x-1}", f"u{x-1}"], Fraction(1))])
    return quiver, b.finish({})


def p2_scalar_names(p: int) -> list[str]:
    """Configurable scalars of the ladder: one per commuting-square family
    ("m<x>"/"n<x>", indexed by the residue of the square's base column mod
    2p) plus the chain-top loop identifications ("theta0", "theta<p>")."""
    res = [x for x in range(2 * p) if x % p not in (0, p - 1)]
    return [f"m{x}" for x in res] + [f"n{x}" for x in res] + ["theta0", f"theta{p}"]


def _resolve_scalars(
    names: list[str], overrides: Mapping[str, object] | None
) -> dict[str, Fraction]:
    out = {name: Fraction(1) for name in names}
    for key, val in (overrides or {}).items():
        if key not in out:
            raise QuiverConfigError(f"unknown scalar {key!r}; valid: {', '.join(names)}")
        out[key] = Fraction(val)
        if out[key] == 0:
            raise QuiverConfigError(f"scalar {key!r} must be nonzero")
    return out


def build_p2_quiver(
    p: int,
    window: int = 1,
    scalars: Mapping[str, object] | None = None,
    margin: int = 2,
    boundary_loops: bool = True,
) -> tuple[Quiver, RelationSet]:
    """The level-two ladder on columns [-2p(window+margin), 2p(window+margin)].

    Columns within 2p*window of zero form the trusted core.  The window is
    cut at multiples of 2p, so every vertical chain is complete and only the
    horizontal rows are severed at the ends.
    """
    if window < 1:
        raise QuiverConfigError("p2 window must be >= 1")
    ctx = Context(p, 2)
    period = 2 * p
    half = period * (window + margin)
    lo, hi = -half, half
    vertices = list(range(lo, hi + 1))
    weights = {j: ladder_weight(j, p) for j in vertices}
    config = _resolve_scalars(p2_scalar_names(p), scalars)

    arrows: list[Arrow] = []
    for j in range(lo, hi):
        if j % p != p - 1:
            arrows.append(Arrow(f"u{j}", j, j + 1, "u", f"d{j}"))
            arrows.append(Arrow(f"d{j}", j + 1, j, "d", f"u{j}"))
    for j in range(lo, hi + 1):
        if j % p != 0:
            t = right_neighbor(j, p)
            if lo <= t <= hi:
                arrows.append(Arrow(f"u'{j}", j, t, "u'", f"d'{j}"))
                arrows.append(Arrow(f"d'{j}", t, j, "d'", f"u'{j}"))

    core = frozenset(range(-period * window, period * window + 1))
    quiver = Quiver("p2", vertices, arrows, weights, core, period, ctx)
    for a in quiver.arrows:
        if a.kind in ("u", "u'"):
            # sanity: the arrow's cell weight occurs in its target's table
            if delta_factors(weights[a.target], ctx).get(weights[a.source], 0) != 1:
                raise QuiverConfigError(f"arrow {a.name} has no cellular home")

    has = quiver.by_name.__contains__
    b = _Builder(quiver)

    for j in range(lo, hi):
        if has(f"u{j}") and has(f"u{j+1}"):
            b.zero([f"u{j}", f"u{j+1}"])
            b.zero([f"d{j+1}", f"d{j}"])
    for j in range(lo, hi + 1):
        if has(f"u'{j}"):
            t = right_neighbor(j, p)
            if has(f"u'{t}"):
                b.zero([f"u'{j}", f"u'{t}"])
                b.zero([f"d'{t}", f"d'{j}"])
    for x in range(lo, hi + 1):
        # vertical loops: through above equals through below
        if has(f"u{x}") and has(f"u{x-1}"):
            b.rule([f"u{x}", f"d{x}"], [([f"d{x-1}", f"u{x-1}"], Fraction(1))])
        # horizontal loops: through the right neighbour equals through the left
        if has(f"u'{x}"):
            l = left_neighbor(x, p)
            if has(f"u'{l}"):
                b.rule([f"u'{x}", f"d'{x}"], [([f"d'{l}", f"u'{l}"], Fraction(1))])
        if x % p in (0, p - 1):
            continue
        rn1 = right_neighbor(x, p) - 1  # equals right_neighbor(x + 1, p)
        if not (has(f"u'{x}") and has(f"u{x}") and has(f"u{rn1}") and has(f"u'{x+1}")):
            continue
        m = config[f"m{x % period}"]
        n = config[f"n{x % period}"]
        # commuting squares: right-then-down equals down-then-right ...
        b.rule([f"u'{x}", f"d{rn1}"], [([f"u{x}", f"u'{x+1}"], m)])
        b.rule([f"u{rn1}", f"d'{x}"], [([f"d'{x+1}", f"d{x}"], m)])
        # ... and the transposed squares
        b.rule([f"u'{x+1}", f"u{rn1}"], [([f"d{x}", f"u'{x}"], n)])
        b.rule([f"d{rn1}", f"d'{x+1}"], [([f"d'{x}", f"u{x}"], n)])

    for c in range(lo, hi + 1):
        if c % p != 0 or not has(f"u{c}"):
            continue
        if boundary_loops and has(f"u'{c-1}"):
            # chain-top loop identification (see module docstring)
            theta = config[f"theta{c % period}"]
            b.rule(
                [f"u{c}", f"d'{c-1}", f"u'{c-1}", f"d{c}"],
                [([f"u{c}", f"d{c}"], theta)],
            )
        # consequences of the families above; rewriting only
        b.derived_rule([f"u{c}", f"d{c}", f"u{c}"], [])
        b.derived_rule([f"d{c}", f"u{c}", f"d{c}"], [])
        if has(f"u'{c-1}") and has(f"u{c-2}"):
            mn = config[f"m{(c - 2) % period}"] * config[f"n{(c - 2) % period}"]
            b.derived_rule(
                [f"u'{c-1}", f"d{c}", f"u{c}"],
                [([f"d{c-2}", f"u{c-2}", f"u'{c-1}"], mn)],
            )
            b.derived_rule(
                [f"d{c}", f"u{c}", f"d'{c-1}"],
                [([f"d'{c-1}", f"d{c-2}", f"u{c-2}"], mn)],
            )
            b.derived_rule([f"u{c-2}", f"u'{c-1}", f"d{c}"], [])
            b.derived_rule([f"u{c}", f"d'{c-1}", f"d{c-2}"], [])

    return quiver, b.finish(config)


def build_sl3_quiver(a=1, b=1, r=0) -> tuple[Quiver, RelationSet]:
    """Six vertices on the Bruhat graph of S3, eight up arrows and duals,
    with the block relations.  a and b must be nonzero; r is free."""
    a, b, r = Fraction(a), Fraction(b), Fraction(r)
    if a == 0 or b == 0:
        raise QuiverConfigError("scalars a and b must be nonzero")
    ups = [
        ("u1", "w0", "st"),
        ("u2", "w0", "ts"),
        ("u3", "st", "s"),
        ("u4", "st", "t"),
        ("u5", "ts", "s"),
        ("u6", "ts", "t"),
        ("u7", "s", "1"),
        ("u8", "t", "1"),
    ]
    arrows: list[Arrow] = []
    for name, src, tgt in ups:
        dname = "d" + name[1:]
        arrows.append(Arrow(name, src, tgt, "u", dname))
        arrows.append(Arrow(dname, tgt, src, "d", name))
    vertices = list(SL3_ELEMENTS)
    weights = {v: v for v in vertices}
    quiver = Quiver("sl3", vertices, arrows, weights, frozenset(vertices), None)
    bld = _Builder(quiver)
    one = Fraction(1)

    # parallel up paths through the two sides of each Bruhat square agree
    bld.rule(["u2", "u5"], [(["u1", "u3"], one)])
    bld.rule(["u2", "u6"], [(["u1", "u4"], one)])
    bld.rule(["u4", "u8"], [(["u3", "u7"], one)])
    bld.rule(["u5", "u7"], [(["u6", "u8"], one)])
    # and dually for down paths
    bld.rule(["d5", "d2"], [(["d3", "d1"], one)])
    bld.rule(["d6", "d2"], [(["d4", "d1"], one)])
    bld.rule(["d8", "d4"], [(["d7", "d3"], one)])
    bld.rule(["d7", "d5"], [(["d8", "d6"], one)])
    # vanishing loops
    bld.zero(["u1", "d1"])
    bld.zero(["u2", "d2"])
    bld.zero(["u4", "d4"])
    bld.zero(["u5", "d5"])
    # loops at the length-one and length-two layers
    bld.rule(["u3", "d3"], [(["d1", "u1"], a)])
    bld.rule(["u6", "d6"], [(["d2", "u2"], a)])
    bld.rule(["u4", "d6"], [(["d1", "u2"], -a)])
    bld.rule(["u5", "d3"], [(["d2", "u1"], -a)])
    bld.rule(["u6", "d4"], [(["d2", "u1"], -a)])
    bld.rule(["u3", "d5"], [(["d1", "u2"], -a)])
    # loops at the top layer
    bld.rule(["u7", "d7"], [(["d5", "u5"], b)])
    bld.rule(["u8", "d8"], [(["d4", "u4"], b)])
    bld.rule(
        ["u7", "d8"],
        [(["d3", "u4"], b), (["d5", "u6"], b), (["d3", "d1", "u2", "u6"], r)],
    )
    bld.rule(
        ["u8", "d7"],
        [(["d4", "u3"], b), (["d6", "u5"], b), (["d6", "d2", "u1", "u3"], r)],
    )
    return quiver, bld.finish({"a": a, "b": b, "r": r})


# ---------------------------------------------------------------------------
# linear engine
# ---------------------------------------------------------------------------


def _contains_subword(path: Path, words: set[Path], lengths: list[int]) -> bool:
    for i in range(len(path)):
        for L in lengths:
            if i + L > len(path):
                break
            if path[i : i + L] in words:
                return True
    return False


def _alive_paths(
    quiver: Quiver, max_len: int, zeros: set[Path]
) -> dict[Pair, list[Path]]:
    """All composable paths of length <= max_len with no monomial-relation
    subword, keyed by (source, target).  Paths containing such a subword are
    ideal members and contribute nothing to the quotient, so pruning them at
    generation time is exact."""
    zlens = sorted({len(z) for z in zeros})

    def suffix_ok(path: Path) -> bool:
        for L in zlens:
            if L <= len(path) and path[-L:] in zeros:
                return False
        return True

    out: dict[Pair, list[Path]] = {}
    for v in quiver.vertices:
        frontier: list[tuple[Vertex, Path]] = [(v, ())]
        out.setdefault((v, v), []).append(())
        for _ in range(max_len):
            nxt: list[tuple[Vertex, Path]] = []
            for at, path in frontier:
                for aid in quiver.out_ids[at]:
                    np = path + (aid,)
                    if not suffix_ok(np):
                        continue
                    tgt = quiver.arrows[aid].target
                    out.setdefault((v, tgt), []).append(np)
                    nxt.append((tgt, np))
            frontier = nxt
    return out


def surviving_paths(quiver: Quiver, rels: RelationSet, max_len: int) -> dict[Pair, list[Path]]:
    """Paths of length <= max_len that do not already die by containing a
    monomial relation; the column space of the linear engine."""
    return _alive_paths(quiver, max_len, rels.zero_redexes())


@dataclass
class QuotientDims:
    """Result of the linear engine: per-pair dimensions of the truncated
    path space modulo relation instances, with a saturation certificate for
    the trusted core pairs."""

    max_len: int
    dims: dict[Pair, int]
    core_pairs: list[Pair]
    boundary_nonzero: list[Pair]
    unsaturated: list[Pair]

    @property
    def saturated(self) -> bool:
        return not self.unsaturated

    def dim(self, src: Vertex, tgt: Vertex) -> int:
        return self.dims.get((src, tgt), 0)


def _pair_key(pair: Pair) -> str:
    return repr(pair)


def quotient_dims(
    quiver: Quiver,
    rels: RelationSet,
    max_len: int | None = None,
    require_saturation: bool = True,
) -> QuotientDims:
    """Exact per-pair dimensions of paths modulo relations, truncated at
    max_len.  Saturation means every maximal-length path between core
    vertices lies in the span of shorter paths plus relation instances; if
    that fails and require_saturation is set, NotSaturated is raised and the
    caller should retry with a larger max_len."""
    if max_len is None:
        max_len = default_max_len(quiver)
    zeros = rels.zero_redexes()
    zlens = sorted({len(z) for z in zeros})
    alive = _alive_paths(quiver, max_len, zeros)
    nonmono = [rel for rel in rels.relations if len(rel.terms) > 1]

    dims: dict[Pair, int] = {}
    unsaturated: list[Pair] = []
    core = quiver.core
    for pair in sorted(alive, key=_pair_key):
        plist = alive[pair]
        s, t = pair
        col_rank = {
            path: i for i, path in enumerate(sorted(plist, key=lambda q: (-len(q), q)))
        }
        ech = SparseEchelon(col_rank)
        for rel in nonmono:
            span = max(len(term) for term in rel.terms)
            xs = alive.get((s, rel.source), ())
            ys = alive.get((rel.target, t), ())
            for x in xs:
                room = max_len - span - len(x)
                if room < 0:
                    continue
                for y in ys:
                    if len(y) > room:
                        continue
                    row: dict[Path, Fraction] = {}
                    for term, coeff in rel.terms.items():
                        key = x + term + y
                        if _contains_subword(key, zeros, zlens):
                            continue  # the composite died in the monomial ideal
                        row[key] = row.get(key, Fraction(0)) + coeff
                    if row:
                        ech.add(row)
        dims[pair] = len(plist) - ech.rank
        if s in core and t in core:
            for path in plist:
                if len(path) != max_len:
                    continue
                residue = ech.reduce({path: Fraction(1)})
                if any(len(k) == max_len for k in residue):
                    unsaturated.append(pair)
                    break

    core_pairs = sorted(((v, w) for v in core for w in core), key=_pair_key)
    boundary_nonzero = sorted(
        (
            pair
            for pair, d in dims.items()
            if d and not (pair[0] in core and pair[1] in core)
        ),
        key=_pair_key,
    )
    result = QuotientDims(
        max_len, dims, core_pairs, boundary_nonzero, sorted(unsaturated, key=_pair_key)
    )
    if require_saturation and unsaturated:
        raise NotSaturated(
            f"{len(unsaturated)} core pair(s) have irreducible length-{max_len} paths; "
            f"first: {unsaturated[0]}"
        )
    return result


def ideal_member(
    quiver: Quiver, rels: RelationSet, elem: PathElement, max_len: int | None = None
) -> bool:
    """Exact membership of elem in the relation ideal, truncated at max_len.
    Used by the tests to certify derived rewrite rules."""
    if max_len is None:
        max_len = max(default_max_len(quiver), max((len(t) for t in elem.terms), default=0))
    zeros = rels.zero_redexes()
    zlens = sorted({len(z) for z in zeros})
    alive = _alive_paths(quiver, max_len, zeros)
    pair = (elem.source, elem.target)
    plist = alive.get(pair, [])
    col_rank = {path: i for i, path in enumerate(sorted(plist, key=lambda q: (-len(q), q)))}
    ech = SparseEchelon(col_rank)
    s, t = pair
    for rel in rels.relations:
        if len(rel.terms) == 1:
            continue
        span = max(len(term) for term in rel.terms)
        for x in alive.get((s, rel.source), ()):
            room = max_len - span - len(x)
            if room < 0:
                continue
            for y in alive.get((rel.target, t), ()):
                if len(y) > room:
                    continue
                row: dict[Path, Fraction] = {}
                for term, coeff in rel.terms.items():
                    key = x + term + y
                    if _contains_subword(key, zeros, zlens):
                        continue
                    row[key] = row.get(key, Fraction(0)) + coeff
                if row:
                    ech.add(row)
    vec = {
        path: c
        for path, c in elem.terms.items()
        if not _contains_subword(path, zeros, zlens)
    }
    return not ech.reduce(vec)


def check_against_cellular(
    quiver: Quiver,
    result: QuotientDims,
    ctx: Context | None = None,
    scalars: Mapping[str, Fraction] | None = None,
) -> Report:
    """Compare core-pair quotient dimensions with the cellular counts:
    common standard factors for the ladders, Bruhat upper-set intersections
    for the sl3 block.  Boundary pairs are excluded and counted in the
    report context; the scalar configuration that was checked is recorded
    there too."""
    ctx = ctx or quiver.context
    rep = Report(
        "quiver-vs-cellular",
        {
            "preset": quiver.preset,
            "max_len": result.max_len,
            "excluded_boundary_pairs": len(result.boundary_nonzero),
            **({"p": ctx.p, "r": ctx.r} if ctx else {}),
            **({"scalars": {k: str(v) for k, v in sorted(scalars.items())}} if scalars else {}),
        },
    )
    for v, w in result.core_pairs:
        if quiver.preset == "sl3":
            expected = sl3_hom_dim(quiver.weights[v], quiver.weights[w])
        else:
            expected = hom_dim(quiver.weights[v], quiver.weights[w], ctx)
        rep.add({"source": v, "target": w}, result.dim(v, w), expected)
    return rep


# ---------------------------------------------------------------------------
# rewriting engine
# ---------------------------------------------------------------------------


def normal_form(x: PathElement, rels: RelationSet, max_steps: int = 200_000) -> PathElement:
    """Rewrite to a fixed point: leftmost position first, shortest redex
    first.  Raises NonTerminating when the step budget runs out."""
    rules = rels.all_rules()
    lengths = sorted({len(k) for k in rules})
    out: dict[Path, Fraction] = {}
    work = list(x.terms.items())
    steps = 0
    while work:
        path, coeff = work.pop()
        hit = None
        for i in range(len(path)):
            for L in lengths:
                if i + L > len(path):
                    break
                repl = rules.get(path[i : i + L])
                if repl is not None:
                    hit = (i, L, repl)
                    break
            if hit:
                break
        if hit is None:
            out[path] = out.get(path, Fraction(0)) + coeff
            continue
        steps += 1
        if steps > max_steps:
            raise NonTerminating(f"rewrite budget {max_steps} exhausted")
        i, L, repl = hit
        for rep, rc in repl:
            work.append((path[:i] + rep + path[i + L :], coeff * rc))
    return PathElement(x.source, x.target, out)


def reduce_path(quiver: Quiver, rels: RelationSet, path: Path) -> PathElement:
    if not path:
        raise ValueError("reduce_path needs a nonempty path")
    src = quiver.arrows[path[0]].source
    return normal_form(
        PathElement(src, quiver.path_target(src, path), {path: Fraction(1)}), rels
    )


def irreducible_words(
    quiver: Quiver, rels: RelationSet, max_len: int
) -> dict[Pair, list[Path]]:
    """Paths of length <= max_len containing no redex, per vertex pair.  For
    a complete, confluent orientation these enumerate a monomial basis of
    the quotient, so their counts must match the linear dimensions."""
    rules = rels.all_rules()
    lengths = sorted({len(k) for k in rules})
    rule_keys = set(rules)
    out: dict[Pair, list[Path]] = {}
    for pair, plist in _alive_paths(quiver, max_len, rels.zero_redexes()).items():
        keep = [q for q in plist if not _contains_subword(q, rule_keys, lengths)]
        if keep:
            out[pair] = sorted(keep, key=lambda q: (len(q), q))
    return out


# ---------------------------------------------------------------------------
# cell filtration
# ---------------------------------------------------------------------------


def word_cell_rank(quiver: Quiver, source: Vertex, path: Path):
    """Cell rank of an irreducible word: the lowest rank among visited
    vertices.  A length-two loop that only ascends (the chain-top loop of a
    ladder column) represents the lower of its two diagonal cells, whose
    factorisation vertex lies off the path; it gets the second-highest
    common factor instead."""
    rank = quiver.cell_rank
    if not path:
        return rank[source]
    visited = [source]
    at = source
    for aid in path:
        at = quiver.arrows[aid].target
        visited.append(at)
    low = min(rank[v] for v in visited)
    if len(path) == 2 and at == source and low == rank[source]:
        if quiver.context is None:
            raise RuntimeError("ascending loop outside a ladder preset")
        fac = sorted(delta_factors(quiver.weights[source], quiver.context), reverse=True)
        return fac[1]
    return low


def cell_filtration_check(quiver: Quiver, rels: RelationSet, result: QuotientDims) -> Report:
    """Check that composition never escapes upward through the cell layers:
    for every irreducible word between core vertices and every one-arrow
    extension on either side staying in the core, the normal form is
    supported on words of cell rank at most the original's."""
    words = irreducible_words(quiver, rels, result.max_len)
    core = quiver.core
    rep = Report("cell-filtration", {"preset": quiver.preset, "max_len": result.max_len})
    for (src, tgt), plist in sorted(words.items(), key=_pair_key):
        if src not in core or tgt not in core:
            continue
        violations = 0
        checked = 0
        for path in plist:
            cell = word_cell_rank(quiver, src, path)
            extensions: list[tuple[Vertex, Path]] = []
            for aid in quiver.out_ids[tgt]:
                if quiver.arrows[aid].target in core:
                    extensions.append((src, path + (aid,)))
            for aid in quiver.in_ids[src]:
                if quiver.arrows[aid].source in core:
                    extensions.append((quiver.arrows[aid].source, (aid,) + path))
            for esrc, epath in extensions:
                etgt = quiver.path_target(esrc, epath)
                nf = normal_form(PathElement(esrc, etgt, {epath: Fraction(1)}), rels)
                checked += 1
                for comp in nf.terms:
                    if word_cell_rank(quiver, esrc, comp) > cell:
                        violations += 1
        rep.add({"source": src, "target": tgt, "compositions": checked}, violations, 0)
    return rep


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def export_dot(quiver: Quiver) -> str:
    """Deterministic DOT rendering: up arrows solid, down arrows dashed."""
    lines = [f"digraph {quiver.preset} {{", "  rankdir=LR;"]
    for v in sorted(quiver.vertices, key=str):
        label = str(v) if quiver.preset == "sl3" else f"P{v} ({quiver.weights[v]})"
        lines.append(f'  "{v}" [label="{label}"];')
    for a in sorted(quiver.arrows, key=lambda a: a.name):
        style = "solid" if a.kind in ("u", "u'") else "dashed"
        lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.name}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
