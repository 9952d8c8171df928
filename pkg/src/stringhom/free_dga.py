"""Free graded noncommutative algebras with length-filtered differentials.

A DGA here is a free unital algebra over Q on finitely many graded
generators, each carrying a positive length and a positive integer weight,
together with a degree -1 derivation D.  D is required to respect the
length filtration (every word of D(g) is at most as long as g) and to
square to zero.  Homology is computed degree by degree inside a length
window: words of total length below the window bound form a finite
subcomplex, and all dimensions are exact rational ranks.

Two families are built in:

* ``build_hopf(d)`` -- the 24-generator algebra attached to a pair of
  (d-1)-spheres forming a higher-dimensional Hopf link in R^(2d-1), with
  differential split as a stabilization part (d -> e) plus a linking part F.
* ``build_unlink(d, z)`` -- the 12-generator algebra of two spheres spaced
  by a vector of norm z > 2, with zero differential.

``forget_F`` drops the linking part, which exhibits the hopf algebra as a
stabilization of its chord subalgebra; homology then counts pure chord
words, and tests verify this.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

from .exactlin import RowReducer, as_fraction
from .lengths import IncompatibleRadicals, Surd, parse_length

Word = tuple[str, ...]
UNIT: Word = ()


class DGAError(Exception):
    pass


class UnknownGenerator(DGAError):
    pass


class GradingViolation(DGAError):
    pass


class InvalidDGA(DGAError):
    pass


class NotApplicable(DGAError):
    pass


class ParameterOutOfRange(DGAError):
    pass


class WindowCollision(DGAError):
    """The window bound sits on (or too near) a realizable word length."""


@dataclass(frozen=True)
class Generator:
    id: str
    degree: int
    length: Surd
    weight: int = 1
    tags: tuple | None = None

    def __post_init__(self):
        if self.length.sign() <= 0:
            raise InvalidDGA(f"generator {self.id} needs positive length")
        if self.weight <= 0:
            raise InvalidDGA(f"generator {self.id} needs positive weight")


class AlgebraElement:
    """Finite Q-linear combination of words in generator ids."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            c = as_fraction(c)
            if c != 0:
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @classmethod
    def unit(cls, coeff=1) -> "AlgebraElement":
        return cls({UNIT: Fraction(coeff)})

    @classmethod
    def from_word(cls, word: Iterable[str], coeff=1) -> "AlgebraElement":
        return cls({tuple(word): Fraction(coeff)})

    @classmethod
    def gen(cls, gen_id: str, coeff=1) -> "AlgebraElement":
        return cls({(gen_id,): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return AlgebraElement(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, coeff) -> "AlgebraElement":
        coeff = as_fraction(coeff)
        return AlgebraElement({w: c * coeff for w, c in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = w1 + w2
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return AlgebraElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(self.terms.items()):
            mono = "*".join(w) if w else "1"
            bits.append(f"{c}·{mono}" if c != 1 else mono)
        return " + ".join(bits)


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear concatenation product; the empty word is the unit."""
    return x * y


class DGA:
    """Generator table plus differential table, validated at construction.

    ``del_part``/``f_part`` optionally record a splitting D = del + F; it is
    only present on built-in algebras and is what ``forget_F`` consumes.
    """

    def __init__(
        self,
        generators: list[Generator],
        diff: Mapping[str, AlgebraElement],
        del_part: Mapping[str, AlgebraElement] | None = None,
        f_part: Mapping[str, AlgebraElement] | None = None,
        name: str = "",
        validate: bool = True,
    ):
        self.generators = list(generators)
        self.by_id = {g.id: g for g in self.generators}
        if len(self.by_id) != len(self.generators):
            raise InvalidDGA("duplicate generator ids")
        self.diff = {g.id: diff.get(g.id, AlgebraElement.zero()) for g in self.generators}
        self.del_part = dict(del_part) if del_part is not None else None
        self.f_part = dict(f_part) if f_part is not None else None
        self.name = name
        if validate:
            self.validate()

    # -- word invariants ---------------------------------------------------

    def gen(self, gen_id: str) -> Generator:
        try:
            return self.by_id[gen_id]
        except KeyError:
            raise UnknownGenerator(gen_id) from None

    def word_degree(self, word: Word) -> int:
        return sum(self.gen(g).degree for g in word)

    def word_length(self, word: Word) -> Surd:
        total = Surd(0)
        for g in word:
            total = total + self.gen(g).length
        return total

    def word_weight(self, word: Word) -> int:
        return sum(self.gen(g).weight for g in word)

    def word_key(self, word: Word):
        """Monomial order: (degree, length, word count, lex on ids)."""
        return (self.word_degree(word), float(self.word_length(word)), len(word), word)

    @property
    def nonneg_graded(self) -> bool:
        return all(g.degree >= 0 for g in self.generators)

    # -- validation --------------------------------------------------------

    def validate(self) -> None:
        for g in self.generators:
            img = self.diff[g.id]
            for w in img.terms:
                for letter in w:
                    self.gen(letter)
                if self.word_degree(w) != g.degree - 1:
                    raise InvalidDGA(
                        f"diff({g.id}) term {w} has degree "
                        f"{self.word_degree(w)} != {g.degree - 1}"
                    )
                if (self.word_length(w) - g.length).sign() > 0:
                    raise InvalidDGA(
                        f"diff({g.id}) term {w} is longer than the generator"
                    )
        ok, witness = d_squared_zero_check(self)
        if not ok:
            raise InvalidDGA(f"D^2 != 0 on generator {witness[0]}")
        if self.del_part is not None and self.f_part is not None:
            for g in self.generators:
                combined = self.del_part.get(g.id, AlgebraElement.zero()) + self.f_part.get(
                    g.id, AlgebraElement.zero()
                )
                if combined != self.diff[g.id]:
                    raise InvalidDGA(f"recorded splitting disagrees with D on {g.id}")

    def __repr__(self) -> str:
        return f"DGA({self.name or 'anonymous'}, {len(self.generators)} generators)"


def _word_differential(dga: DGA, word: Word, out: dict, coeff: Fraction) -> None:
    """Accumulate coeff * D(word) into ``out`` (word -> Fraction)."""
    prefix_deg = 0
    for i, letter in enumerate(word):
        dg = dga.diff[dga.gen(letter).id]
        if dg.terms:
            sign_coeff = -coeff if prefix_deg % 2 else coeff
            left, right = word[:i], word[i + 1 :]
            for tw, tc in dg.terms.items():
                key = left + tw + right
                val = out.get(key, Fraction(0)) + sign_coeff * tc
                if val == 0:
                    out.pop(key, None)
                else:
                    out[key] = val
        prefix_deg += dga.gen(letter).degree


def differential(dga: DGA, x: AlgebraElement) -> AlgebraElement:
    """Graded Leibniz extension of the generator table.

    On a word g1...gk the sign in front of the i-th summand is (-1) to the
    degree of the prefix g1...g_{i-1}.
    """
    out: dict = {}
    for word, coeff in x.terms.items():
        _word_differential(dga, word, out, coeff)
    return AlgebraElement(out)


def d_squared_zero_check(dga: DGA) -> tuple[bool, tuple[str, AlgebraElement] | None]:
    """Check D(D(g)) = 0 on every generator.

    Sufficient for D^2 = 0 on the whole algebra, since D^2 is a derivation.
    On failure returns the offending generator and the nonzero residue.
    """
    for g in dga.generators:
        residue = differential(dga, dga.diff[g.id])
        if not residue.is_zero():
            return False, (g.id, residue)
    return True, None


# -- length windows --------------------------------------------------------

WINDOW_TOLERANCE = 1e-9


class LengthWindow:
    """Upper length bound a, required to avoid realizable word lengths.

    ``ensure_valid`` enumerates every achievable sum of generator lengths
    below a + 1 and rejects bounds closer than ``tolerance`` to any of them.
    """

    def __init__(self, bound, tolerance: float = WINDOW_TOLERANCE):
        self.bound = Surd.of(Fraction(bound) if not isinstance(bound, Surd) else bound)
        if self.bound.sign() <= 0:
            raise WindowCollision("window bound must be positive")
        self.tolerance = tolerance

    def realizable_sums(self, dga: DGA) -> list[Surd]:
        cap = self.bound + 1
        seen = {Surd(0)}
        frontier = [Surd(0)]
        lengths = [g.length for g in dga.generators]
        while frontier:
            nxt = []
            for base in frontier:
                for ell in lengths:
                    val = base + ell
                    if val <= cap and val not in seen:
                        seen.add(val)
                        nxt.append(val)
            frontier = nxt
        return sorted(seen, key=float)

    def ensure_valid(self, dga: DGA) -> None:
        a = float(self.bound)
        for val in self.realizable_sums(dga):
            if abs(float(val) - a) < self.tolerance:
                raise WindowCollision(
                    f"window {self.bound} collides with realizable length {val}"
                )

    def admits(self, length: Surd) -> bool:
        return (length - self.bound).sign() < 0

    def __repr__(self) -> str:
        return f"LengthWindow({self.bound})"


def _scaled_lengths(dga: DGA, window: LengthWindow):
    """Integer-scaled (p, q) length data over the common radicand.

    Word enumeration compares millions of partial sums against the bound;
    doing that with integers instead of Fraction-backed surds is what makes
    large windows affordable.  Returns (per-generator (P, Q), bound (PA, QA),
    radicand n).
    """
    values = [g.length for g in dga.generators] + [window.bound]
    n = 0
    for v in values:
        if v.q != 0:
            if n and v.n != n:
                raise IncompatibleRadicals(f"sqrt({v.n}) vs sqrt({n})")
            n = v.n
    denom = 1
    for v in values:
        denom = lcm(denom, v.p.denominator, v.q.denominator)
    scaled = []
    for g in dga.generators:
        scaled.append((int(g.length.p * denom), int(g.length.q * denom)))
    bound = (int(window.bound.p * denom), int(window.bound.q * denom))
    return scaled, bound, n


def _below_bound(p: int, q: int, pa: int, qa: int, n: int) -> bool:
    """Exact test p + q*sqrt(n) < pa + qa*sqrt(n) for integers."""
    dp, dq = pa - p, qa - q
    if dq == 0:
        return dp > 0
    if dp == 0:
        return dq > 0
    if dp > 0 and dq > 0:
        return True
    if dp < 0 and dq < 0:
        return False
    lhs, rhs = dp * dp, dq * dq * n
    if dp > 0:
        return lhs > rhs
    return lhs < rhs


def _enumerate_words(dga: DGA, window: LengthWindow, degree: int | None) -> list[Word]:
    """All words below the window bound, optionally filtered to one degree.

    Depth-first over appended letters, pruning by remaining length always
    and by degree when the grading is nonnegative.  Output is sorted in the
    canonical monomial order (degree, length, letter count, lex).
    """
    nonneg = dga.nonneg_graded
    scaled, (pa, qa), n = _scaled_lengths(dga, window)
    gens = [
        (g.id, g.degree, sp, sq, float(g.length))
        for g, (sp, sq) in zip(dga.generators, scaled)
    ]
    out: list[tuple] = []
    stack = [(UNIT, 0, 0, 0, 0.0)]
    while stack:
        word, deg, lp, lq, lf = stack.pop()
        if degree is None or deg == degree:
            out.append((deg, lf, len(word), word))
        for gid, gdeg, sp, sq, gf in gens:
            np_, nq = lp + sp, lq + sq
            if not _below_bound(np_, nq, pa, qa, n):
                continue
            ndeg = deg + gdeg
            if degree is not None and nonneg and ndeg > degree:
                continue
            stack.append((word + (gid,), ndeg, np_, nq, lf + gf))
    out.sort()
    return [item[3] for item in out]


def word_basis(dga: DGA, degree: int, window: LengthWindow) -> list[Word]:
    """Canonically ordered basis of the degree slice below the window."""
    window.ensure_valid(dga)
    if degree < 0 and dga.nonneg_graded:
        return []
    return _enumerate_words(dga, window, degree)


def _blockwise_rank(rows: list[dict]) -> int:
    """Rank of a sparse row list, split over connected column blocks.

    The differential of a word touches only a handful of neighbouring words,
    so the matrix is block diagonal up to permutation; eliminating each
    block separately keeps the work linear in practice.
    """
    parent: dict = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for row in rows:
        cols = iter(row)
        first = next(cols)
        if first not in parent:
            parent[first] = first
        ra = find(first)
        for c in cols:
            if c not in parent:
                parent[c] = c
            rb = find(c)
            if ra != rb:
                parent[rb] = ra
    groups: dict = {}
    for row in rows:
        key = find(next(iter(row)))
        groups.setdefault(key, []).append(row)
    total = 0
    for block in groups.values():
        red = RowReducer()
        for row in block:
            red.add(row)
        total += red.rank
    return total


def _diff_matrix_rank(dga: DGA, source: list[Word], target: list[Word]) -> int:
    index = {w: i for i, w in enumerate(target)}
    one = Fraction(1)
    rows = []
    for w in source:
        img: dict = {}
        _word_differential(dga, w, img, one)
        if img:
            # Terms outside the target basis cannot occur when the window is
            # valid: the differential never increases length.
            rows.append({index[ww]: c for ww, c in img.items()})
    return _blockwise_rank(rows)


def homology_dim(dga: DGA, degree: int, window: LengthWindow) -> int:
    """dim ker(D at this degree) - dim im(D from one degree up)."""
    window.ensure_valid(dga)
    basis_p = word_basis(dga, degree, window)
    if not basis_p:
        return 0
    basis_down = word_basis(dga, degree - 1, window)
    basis_up = word_basis(dga, degree + 1, window)
    rank_down = _diff_matrix_rank(dga, basis_p, basis_down) if basis_down else 0
    rank_from_up = _diff_matrix_rank(dga, basis_up, basis_p) if basis_up else 0
    return len(basis_p) - rank_down - rank_from_up


def homology_dims_all(dga: DGA, window: LengthWindow) -> dict[int, int]:
    """Homology dimensions for every populated degree, sharing rank work.

    Enumerates the window basis once, buckets it by degree, and computes the
    rank of each boundary block a single time (each is used at two degrees).
    """
    window.ensure_valid(dga)
    by_degree: dict[int, list[Word]] = {}
    # Enumeration is already canonically ordered; bucketing preserves it.
    for w in _enumerate_words(dga, window, None):
        by_degree.setdefault(dga.word_degree(w), []).append(w)
    degrees = sorted(by_degree)
    ranks: dict[int, int] = {}
    for p in degrees:
        if p - 1 in by_degree:
            ranks[p] = _diff_matrix_rank(dga, by_degree[p], by_degree[p - 1])
        else:
            ranks[p] = 0
    dims = {}
    for p in degrees:
        dims[p] = len(by_degree[p]) - ranks.get(p, 0) - ranks.get(p + 1, 0)
    return dims


def h0_dims_by_wordcount(dga: DGA, window: LengthWindow, wmax: int) -> list[int]:
    """Letter-count slices of degree-0 homology.

    Needs a nonnegative grading: then every degree-0 element is a cycle and
    the image of the degree-1 part is spanned by u·D(g)·v over degree-0
    words u, v.  The image is only filtered (not graded) by letter count, so
    the slice dimensions reported are those of the induced filtration:
    dim F_w/F_{w-1} where F_w is spanned by words with at most w letters.
    """
    if not dga.nonneg_graded:
        raise GradingViolation("degree-0 homology slices need a nonnegative grading")
    window.ensure_valid(dga)
    basis0 = word_basis(dga, 0, window)
    basis1 = word_basis(dga, 1, window)
    # Order columns by decreasing letter count so that pivot counts in the
    # "more than w letters" block give ranks of the projections.
    order = {w: i for i, w in enumerate(sorted(basis0, key=lambda w: (-len(w), w)))}
    red = RowReducer()
    for w in basis1:
        img = differential(dga, AlgebraElement.from_word(w))
        if not img.is_zero():
            red.add({order[ww]: c for ww, c in img.terms.items()})
    total_rank = red.rank
    pivot_words = sorted(order, key=order.get)
    pivot_counts = [len(pivot_words[c]) for c in red.pivots]

    def beyond(w: int) -> int:
        return sum(1 for k in pivot_counts if k > w)

    def ambient(w: int) -> int:
        return sum(1 for word in basis0 if len(word) <= w)

    dims = []
    prev = 0
    for w in range(wmax + 1):
        f_w = ambient(w) - (total_rank - beyond(w))
        dims.append(f_w - prev)
        prev = f_w
    return dims


# -- built-in algebras -----------------------------------------------------


def _pairs():
    return [(i, j) for i in (0, 1) for j in (0, 1)]


def _cross():
    return [(0, 1), (1, 0)]


def build_hopf(d: int) -> DGA:
    """Length-filtered algebra of the spherical Hopf link in R^(2d-1).

    24 generators in three families: chord generators c (weight 1),
    stabilization partners d/e (weight 2).  The differential is del + F,
    where del kills everything except d -> e and F records the linking.
    """
    if d < 2:
        raise ParameterOutOfRange("d must be at least 2")
    gens: list[Generator] = []

    def add(gid, degree, length, weight, tags):
        gens.append(Generator(gid, degree, Surd.of(length), weight, tags))

    for i, j in _cross():
        add(f"c0_{i}{j}", d - 2, 1, 1, (i, j))
    for i in (0, 1):
        add(f"c1_{i}{i}", 2 * d - 3, 2, 1, (i, i))
    for i, j in _cross():
        add(f"c1_{i}{j}", 2 * d - 3, 1, 1, (i, j))
        add(f"cb1_{i}{j}", 2 * d - 3, 1, 1, (i, j))
    for i, j in _pairs():
        add(f"c2_{i}{j}", 3 * d - 4, 2 if i == j else 3, 1, (i, j))
    for i in (0, 1):
        add(f"d1_{i}{i}", 2 * d - 3, 2, 2, (i, i))
    for i, j in _pairs():
        add(f"d2_{i}{j}", 3 * d - 4, 2 if i == j else 3, 2, (i, j))
    for i in (0, 1):
        add(f"e1_{i}{i}", 2 * d - 4, 2, 2, (i, i))
    for i, j in _pairs():
        add(f"e2_{i}{j}", 3 * d - 5, 2 if i == j else 3, 2, (i, j))

    sgn_d = Fraction(-1 if d % 2 else 1)
    zero = AlgebraElement.zero()
    del_part = {g.id: zero for g in gens}
    f_part = {g.id: zero for g in gens}
    for i in (0, 1):
        del_part[f"d1_{i}{i}"] = AlgebraElement.gen(f"e1_{i}{i}")
    for i, j in _pairs():
        del_part[f"d2_{i}{j}"] = AlgebraElement.gen(f"e2_{i}{j}")

    f_part["c1_00"] = AlgebraElement.gen("e1_00", sgn_d) + AlgebraElement.from_word(
        ("c0_01", "c0_10"), sgn_d
    )
    f_part["c1_11"] = AlgebraElement.gen("e1_11", sgn_d) + AlgebraElement.from_word(
        ("c0_10", "c0_01")
    )
    f_part["c2_00"] = (
        AlgebraElement.gen("e2_00", -1)
        + AlgebraElement.from_word(("cb1_01", "c0_10"), -1)
        + AlgebraElement.from_word(("c1_01", "c0_10"), -sgn_d)
    )
    f_part["c2_11"] = (
        AlgebraElement.gen("e2_11", -1)
        + AlgebraElement.from_word(("cb1_10", "c0_01"), -sgn_d)
        + AlgebraElement.from_word(("c1_10", "c0_01"), -1)
    )
    f_part["c2_01"] = AlgebraElement.gen("e2_01", -1)
    f_part["c2_10"] = AlgebraElement.gen("e2_10", -1)

    diff = {g.id: del_part[g.id] + f_part[g.id] for g in gens}
    return DGA(gens, diff, del_part=del_part, f_part=f_part, name=f"hopf(d={d})")


def build_unlink(d: int, z2star) -> DGA:
    """Chord algebra of two spheres spaced by a vector of norm z > 2.

    12 generators, zero differential.  Cross chords come in two lengths:
    the straight translates (length z) and the antipodal ones
    (length sqrt(z^2 + 4)); same-component chords are diameters (length 2).
    """
    if d < 2:
        raise ParameterOutOfRange("d must be at least 2")
    z = Fraction(z2star)
    if z <= 2:
        raise ParameterOutOfRange("|z2*| must exceed 2")
    cross_len = Surd.sqrt(z * z + 4)
    gens: list[Generator] = []
    for i, j in _cross():
        gens.append(Generator(f"c0_{i}{j}", d - 2, Surd(z), 1, (i, j)))
    for i in (0, 1):
        gens.append(Generator(f"c1_{i}{i}", 2 * d - 3, Surd(2), 1, (i, i)))
    for i, j in _cross():
        gens.append(Generator(f"c1_{i}{j}", 2 * d - 3, Surd(z), 1, (i, j)))
        gens.append(Generator(f"cb1_{i}{j}", 2 * d - 3, cross_len, 1, (i, j)))
    for i, j in _pairs():
        gens.append(
            Generator(
                f"c2_{i}{j}",
                3 * d - 4,
                Surd(2) if i == j else cross_len,
                1,
                (i, j),
            )
        )
    zero = AlgebraElement.zero()
    diff = {g.id: zero for g in gens}
    return DGA(
        gens,
        diff,
        del_part=dict(diff),
        f_part=dict(diff),
        name=f"unlink(d={d}, z={z})",
    )


def forget_F(dga: DGA) -> DGA:
    """Same generators, differential reduced to the stabilization part."""
    if dga.del_part is None:
        raise NotApplicable("this DGA does not record a del/F splitting")
    zero = AlgebraElement.zero()
    del_part = {g.id: dga.del_part.get(g.id, zero) for g in dga.generators}
    return DGA(
        dga.generators,
        del_part,
        del_part=del_part,
        f_part={g.id: zero for g in dga.generators},
        name=f"{dga.name}|del",
    )


def chord_word_count(dga: DGA, degree: int, window: LengthWindow) -> int:
    """Number of weight-1-letter words of a given degree below the window."""
    return sum(
        1
        for w in word_basis(dga, degree, window)
        if all(dga.gen(g).weight == 1 for g in w)
    )


def chord_word_counts_all(dga: DGA, window: LengthWindow) -> dict[int, int]:
    """Per-degree counts of words built only from weight-1 generators."""
    window.ensure_valid(dga)
    counts: dict[int, int] = {}
    for w in _enumerate_words(dga, window, None):
        if all(dga.gen(g).weight == 1 for g in w):
            d = dga.word_degree(w)
            counts[d] = counts.get(d, 0) + 1
    return counts


# -- JSON interface --------------------------------------------------------


def dga_to_json_dict(dga: DGA) -> dict:
    return {
        "generators": [
            {
                "id": g.id,
                "degree": g.degree,
                "length": str(g.length),
                "weight": g.weight,
            }
            for g in dga.generators
        ],
        "diff": {
            gid: [
                {"coeff": str(c), "word": list(w)}
                for w, c in sorted(img.terms.items())
            ]
            for gid, img in dga.diff.items()
            if not img.is_zero()
        },
    }


def dga_from_json_dict(data: Mapping) -> DGA:
    gens = [
        Generator(
            spec["id"],
            int(spec["degree"]),
            parse_length(spec["length"]),
            int(spec.get("weight", 1)),
        )
        for spec in data["generators"]
    ]
    diff = {}
    for gid, terms in data.get("diff", {}).items():
        el = AlgebraElement.zero()
        for t in terms:
            el = el + AlgebraElement.from_word(tuple(t["word"]), Fraction(t["coeff"]))
        diff[gid] = el
    return DGA(gens, diff, name=str(data.get("name", "")))


def save_dga(dga: DGA, path) -> None:
    with open(path, "w") as fh:
        json.dump(dga_to_json_dict(dga), fh, indent=1, sort_keys=True)


def load_dga(path) -> DGA:
    with open(path) as fh:
        return dga_from_json_dict(json.load(fh))
