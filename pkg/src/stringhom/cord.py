"""Cord algebras of links from finite skein rule tables.

The cord algebra of a link K in R^3 is the free unital Q-algebra on homotopy
classes of paths in the complement with endpoints on a pushed-off copy K',
modulo two families of relations: constant cords vanish, and for every
composable pair (g1, g2) meeting K' over the point x,

    [g1 g2] - [g1 m_x g2] - [g1][g2] = 0,

where m_x is the meridian loop at x.  A presentation here is a finite
instantiation of this: a generator per path class (up to a meridian-power
truncation depth kmax), the list of constant-cord generators, and a table of
skein instances, each naming the four classes involved.

Built-in presentations are hand-instantiated from the known complement
groups and documented inline:

* unknot   -- pi_1 = Z on the meridian; the pushed-off longitude is trivial,
  so path classes are meridian powers A_k and every skein instance reads
  A_(j+k) = A_(j+k+1) + A_j A_k.  With A_0 = 0 everything collapses to Q.
* hopf_link -- pi_1 = Z^2 on the two meridians; the longitude of each
  component equals the other component's meridian, so same-component
  classes are powers of the own meridian modulo nothing else, and the two
  cross classes are single points of the double coset.  The quotient is
  free on the cross cords modulo both products, matching Q[a,b]/(ab).
* unlink2  -- pi_1 = F_2 and both longitudes vanish, so path classes are
  arbitrary reduced words; the presentation keeps the trivial cords plus
  the single-meridian-power families (i, mu_c^k, j), k <= kmax, which the
  letter-boundary skein instances collapse onto the two crossing cords with
  no surviving relation: the quotient is free on two generators.  Deeper
  mixed words are redundant for the same reason and are left out.

``quotient_dims_by_wordcount`` works in two documented stages: a Tietze
elimination pass that solves skein instances for their deepest generator
(each instance names the inserted class exactly once, strictly deeper than
everything else in the row), followed by an exact slice computation over
the surviving alphabet, where the relation span and filtration quotients
are ranked with exactlin.  Relation rows connect letter counts w and w+1
only, so slice dimensions of the word-count filtration are read off pivot
counts of a single echelon pass with longer words ordered first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactlin import RowReducer

Word = tuple[str, ...]


class CordError(Exception):
    pass


class UnknownBuiltin(CordError):
    pass


class BoundExceeded(CordError):
    pass


class TruncationInstability(CordError):
    pass


@dataclass(frozen=True)
class CordGenerator:
    id: str
    source: int
    target: int
    depth: int = 0


@dataclass(frozen=True)
class SkeinInstance:
    """[concat] - [inserted] - [left][right] = 0."""

    concat: str
    inserted: str
    left: str
    right: str


class CordPresentation:
    def __init__(
        self,
        generators: list[CordGenerator],
        constants: list[str],
        skein: list[SkeinInstance],
        bound: int,
        name: str = "",
    ):
        self.generators = list(generators)
        self.by_id = {g.id: g for g in self.generators}
        if len(self.by_id) != len(self.generators):
            raise CordError("duplicate cord generator ids")
        for c in constants:
            if c not in self.by_id:
                raise CordError(f"unknown constant cord {c}")
        for inst in skein:
            for gid in (inst.concat, inst.inserted, inst.left, inst.right):
                if gid not in self.by_id:
                    raise CordError(f"unknown generator {gid} in skein instance")
        self.constants = list(constants)
        self.skein = list(skein)
        self.bound = bound
        self.name = name

    def relation_rows(self) -> list[dict]:
        """Relation instances as word->coefficient rows.

        Every row touches letter counts w and w+1 only: the two path terms
        are single letters, the product term has two.
        """
        rows = []
        for c in self.constants:
            rows.append({(c,): Fraction(1)})
        for inst in self.skein:
            row: dict = {}
            for word, coeff in (
                ((inst.concat,), Fraction(1)),
                ((inst.inserted,), Fraction(-1)),
                ((inst.left, inst.right), Fraction(-1)),
            ):
                val = row.get(word, Fraction(0)) + coeff
                if val == 0:
                    row.pop(word, None)
                else:
                    row[word] = val
            if row:
                rows.append(row)
        return rows

    def depth(self, gid: str) -> int:
        return self.by_id[gid].depth

    def __repr__(self) -> str:
        return f"CordPresentation({self.name or 'anonymous'}, {len(self.generators)} generators)"


# -- built-in presentations ---------------------------------------------------


def builtin_presentation(name: str, kmax: int) -> CordPresentation:
    if kmax < 2:
        raise CordError("kmax must be at least 2")
    if name == "unknot":
        return _unknot_presentation(kmax)
    if name == "hopf_link":
        return _hopf_presentation(kmax)
    if name == "unlink2":
        return _unlink2_presentation(kmax)
    raise UnknownBuiltin(name)


def _unknot_presentation(kmax: int) -> CordPresentation:
    # Classes A_k = [meridian^k], k >= 0; negative powers collapse the same
    # way and are omitted.  Constant cords are A_0.
    gens = [CordGenerator(f"a{k}", 0, 0, depth=k) for k in range(kmax + 1)]
    skein = [
        SkeinInstance(f"a{j + k}", f"a{j + k + 1}", f"a{j}", f"a{k}")
        for j in range(kmax)
        for k in range(kmax)
        if j + k + 1 <= kmax
    ]
    return CordPresentation(gens, ["a0"], skein, bound=kmax + 2, name="unknot")


class _HopfClass:
    """Path classes for the Hopf link: Z^2 modulo the end longitudes.

    A class from component i to component j is the coset of an exponent
    vector (e0, e1) modulo the subgroup generated by the longitudes of the
    two ends; the longitude of component i is the other meridian, so
    same-component classes keep the own-meridian power and cross classes
    are single cosets.
    """

    @staticmethod
    def normalize(i: int, j: int, e: tuple[int, int]):
        if i == j:
            return ("self", i, e[i])
        return ("cross", i, j)

    @staticmethod
    def symbol(cls, kmax: int):
        kind = cls[0]
        if kind == "self":
            _, i, power = cls
            if power < 0 or power > kmax:
                return None
            return f"s{i}{i}_{power}"
        _, i, j = cls
        return f"x{i}{j}"


def _hopf_presentation(kmax: int) -> CordPresentation:
    gens = []
    for i in (0, 1):
        for k in range(kmax + 1):
            gens.append(CordGenerator(f"s{i}{i}_{k}", i, i, depth=k))
    gens.append(CordGenerator("x01", 0, 1, depth=0))
    gens.append(CordGenerator("x10", 1, 0, depth=0))
    by_symbol = {}
    for g in gens:
        by_symbol[g.id] = g

    def lift(gid: str) -> tuple[int, int, int, tuple[int, int]]:
        g = by_symbol[gid]
        if gid.startswith("s"):
            e = [0, 0]
            e[g.source] = g.depth
            return g.source, g.target, (e[0], e[1])
        return g.source, g.target, (0, 0)

    skein = []
    for g1 in gens:
        for g2 in gens:
            if g1.target != g2.source:
                continue
            c = g1.target
            i1, _, e1 = lift(g1.id)
            _, j2, e2 = lift(g2.id)
            concat = (e1[0] + e2[0], e1[1] + e2[1])
            inserted = list(concat)
            inserted[c] += 1
            sym_c = _HopfClass.symbol(_HopfClass.normalize(i1, j2, concat), kmax)
            sym_i = _HopfClass.symbol(
                _HopfClass.normalize(i1, j2, tuple(inserted)), kmax
            )
            if sym_c is None or sym_i is None:
                continue
            skein.append(SkeinInstance(sym_c, sym_i, g1.id, g2.id))
    return CordPresentation(
        gens, ["s00_0", "s11_0"], skein, bound=kmax + 2, name="hopf_link"
    )


def _unlink2_presentation(kmax: int) -> CordPresentation:
    # Trivial cords t_ij plus the single-meridian-power families
    # (i, mu_c^k, j); the skein instances below are the letter-boundary
    # splices inside one family, enough to strip every meridian letter.
    gens = []
    for i in (0, 1):
        for j in (0, 1):
            gens.append(CordGenerator(f"t{i}{j}", i, j, depth=0))
    for i in (0, 1):
        for j in (0, 1):
            for c in (0, 1):
                for k in range(1, kmax + 1):
                    gens.append(CordGenerator(f"w{i}{j}c{c}_{k}", i, j, depth=k))

    def symbol(i: int, j: int, c: int, k: int) -> str:
        return f"t{i}{j}" if k == 0 else f"w{i}{j}c{c}_{k}"

    skein = []
    for i in (0, 1):
        for j in (0, 1):
            for c in (0, 1):
                for a in range(kmax):
                    for b in range(kmax - a):
                        skein.append(
                            SkeinInstance(
                                symbol(i, j, c, a + b),
                                symbol(i, j, c, a + b + 1),
                                symbol(i, c, c, a),
                                symbol(c, j, c, b),
                            )
                        )
    return CordPresentation(
        gens, ["t00", "t11"], skein, bound=kmax + 2, name="unlink2"
    )


# -- quotient computation -----------------------------------------------------


def _substitute(element: Mapping[Word, Fraction], table: Mapping[str, dict]) -> dict:
    """Expand every rewritten letter of every word; exact and bilinear."""
    out: dict = {}
    for word, coeff in element.items():
        acc = {(): coeff}
        for letter in word:
            repl = table.get(letter)
            if repl is None:
                acc = {w + (letter,): c for w, c in acc.items()}
            else:
                nxt: dict = {}
                for w, c in acc.items():
                    for rw, rc in repl.items():
                        key = w + rw
                        val = nxt.get(key, Fraction(0)) + c * rc
                        if val == 0:
                            nxt.pop(key, None)
                        else:
                            nxt[key] = val
                acc = nxt
        for w, c in acc.items():
            val = out.get(w, Fraction(0)) + c
            if val == 0:
                out.pop(w, None)
            else:
                out[w] = val
    return out


def _extract_rewrites(pres: CordPresentation, rows: list[dict]):
    """Tietze pass: solve rows for their unique deepest single-letter term.

    Returns (closed rewrite table, leftover substituted rows).  Eliminating
    a generator g via g = expr is an isomorphism of presented algebras, so
    the quotient is unchanged; only rows with a strictly deepest generator
    occurring exactly once as a 1-letter word are used.
    """
    table: dict[str, dict] = {}
    pending = sorted(
        rows, key=lambda r: max((pres.depth(g) for w in r for g in w), default=0)
    )
    progress = True
    while progress:
        progress = False
        rest = []
        for row in pending:
            r = _substitute(row, table)
            if not r:
                continue
            occur: dict[str, int] = {}
            for w in r:
                for g in w:
                    occur[g] = occur.get(g, 0) + 1
            candidate = None
            depth_best = None
            for w in r:
                if len(w) == 1 and occur[w[0]] == 1 and w[0] not in table:
                    dep = pres.depth(w[0])
                    others = max(
                        (pres.depth(g) for ww in r for g in ww if g != w[0]),
                        default=-1,
                    )
                    if dep > others and (depth_best is None or dep > depth_best):
                        candidate = w[0]
                        depth_best = dep
            if candidate is None:
                rest.append(row)
                continue
            coeff = r[(candidate,)]
            expr = {
                w: -c / coeff for w, c in r.items() if w != (candidate,)
            }
            table[candidate] = expr
            progress = True
        pending = rest
    # Close the table: expressions may mention generators rewritten later.
    stable = False
    while not stable:
        stable = True
        for g, expr in list(table.items()):
            new = _substitute(expr, {k: v for k, v in table.items() if k != g})
            if new != expr:
                table[g] = new
                stable = False
    leftovers = []
    for row in pending:
        r = _substitute(row, table)
        if r:
            leftovers.append(r)
    return table, leftovers


def quotient_dims_by_wordcount(pres: CordPresentation, wmax: int) -> list[int]:
    """Letter-count slice dimensions of the presented quotient algebra.

    Slices are those of the word-count filtration over the irreducible
    alphabet, i.e. the count of normal-form words: generators solved out by
    the Tietze pass (a deep cord can equal a product of shallower ones) do
    not contribute letters.  Relations are not letter-count homogeneous --
    they connect adjacent counts -- so dimensions come from the filtration,
    read off one echelon pass.  The relation span is padded by words up to
    wmax + 1 letters; the built-in rule tables are complete at that padding,
    which the truncation-stability check guards.
    """
    if wmax < 0:
        raise CordError("wmax must be nonnegative")
    if wmax > pres.bound:
        raise BoundExceeded(f"wmax {wmax} exceeds presentation bound {pres.bound}")
    table, leftovers = _extract_rewrites(pres, pres.relation_rows())
    alphabet = sorted(g.id for g in pres.generators if g.id not in table)
    width = wmax + 1

    # Two-sided padding of every leftover row inside the letter-count cap.
    padded: list[dict] = []

    def pad_words(max_len: int):
        frontier: list[Word] = [()]
        out = [()]
        for _ in range(max_len):
            frontier = [w + (g,) for w in frontier for g in alphabet]
            out.extend(frontier)
        return out

    for row in leftovers:
        row_len = max(len(w) for w in row)
        if row_len > width:
            continue
        budget = width - row_len
        pads = pad_words(budget)
        for u in pads:
            for v in pads:
                if len(u) + len(v) > budget:
                    continue
                padded.append({u + w + v: c for w, c in row.items()})

    # Echelon with longer words first: pivots beyond count w give the rank
    # of the projection away from the w-truncation.
    red = RowReducer(col_key=lambda w: (-len(w), w))
    for row in padded:
        red.add(row)
    pivot_lengths = [len(w) for w in red.pivots]
    total_rank = red.rank

    asize = len(alphabet)

    def ambient(w: int) -> int:
        return sum(asize**k for k in range(w + 1))

    def beyond(w: int) -> int:
        return sum(1 for k in pivot_lengths if k > w)

    dims = []
    prev = 0
    for w in range(wmax + 1):
        f_w = ambient(w) - (total_rank - beyond(w))
        dims.append(f_w - prev)
        prev = f_w
    return dims


def truncation_stable(name: str, kmax: int, wmax: int) -> bool:
    """Do the slice dims survive deepening the truncation by two?"""
    a = quotient_dims_by_wordcount(builtin_presentation(name, kmax), wmax)
    b = quotient_dims_by_wordcount(builtin_presentation(name, kmax + 2), wmax)
    return a == b


def compare_with_h0(pres, dga, window, wmax: int):
    """Cord slice dims versus the degree-0 homology slices of a DGA.

    Returns (match, table) with one (w, cord_dim, h0_dim, match) row per
    word count.
    """
    from . import free_dga

    cord_dims = quotient_dims_by_wordcount(pres, wmax)
    h0_dims = free_dga.h0_dims_by_wordcount(dga, window, wmax)
    rows = [
        (w, cord_dims[w], h0_dims[w], cord_dims[w] == h0_dims[w])
        for w in range(wmax + 1)
    ]
    return all(r[3] for r in rows), rows


# -- serialization ------------------------------------------------------------


def presentation_to_json_dict(pres: CordPresentation) -> dict:
    return {
        "name": pres.name,
        "bound": pres.bound,
        "generators": [
            {"id": g.id, "source": g.source, "target": g.target, "depth": g.depth}
            for g in pres.generators
        ],
        "constants": list(pres.constants),
        "skein": [
            {
                "concat": s.concat,
                "inserted": s.inserted,
                "left": s.left,
                "right": s.right,
            }
            for s in pres.skein
        ],
    }


def presentation_from_json_dict(data: Mapping) -> CordPresentation:
    gens = [
        CordGenerator(
            str(g["id"]), int(g["source"]), int(g["target"]), int(g.get("depth", 0))
        )
        for g in data["generators"]
    ]
    skein = [
        SkeinInstance(s["concat"], s["inserted"], s["left"], s["right"])
        for s in data.get("skein", [])
    ]
    return CordPresentation(
        gens,
        [str(c) for c in data.get("constants", [])],
        skein,
        bound=int(data.get("bound", 4)),
        name=str(data.get("name", "")),
    )


def save_presentation(pres: CordPresentation, path) -> None:
    with open(path, "w") as fh:
        json.dump(presentation_to_json_dict(pres), fh, indent=1, sort_keys=True)


def load_presentation(path) -> CordPresentation:
    with open(path) as fh:
        return presentation_from_json_dict(json.load(fh))
