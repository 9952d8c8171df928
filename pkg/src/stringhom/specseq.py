"""Spectral sequences of bounded filtered finite chain complexes.

A filtered complex is a finite based chain complex whose boundary never
raises the integer filtration level.  Pages are computed by the classical
subquotient formula

    Z^r(p, n)  = { x in F_p, degree n : dx in F_(p-r) }
    E^r_(p,q)  = Z^r(p, p+q) / ( Z^(r-1)(p-1, p+q) + d Z^(r-1)(p+r-1, p+q+1) )

with every dimension an exact rational rank.  Because the filtration is
bounded, pages stabilize once r exceeds the filtration width, giving E-oo,
and ``convergence_check`` confirms that the E-oo column sums recover the
total homology in every degree.

``from_dga`` realizes the weight filtration of a length-windowed free DGA:
cells are words, the filtration level of a word is minus its total weight,
and the boundary is the algebra differential.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import free_dga
from .exactlin import RowReducer, SparseMatrix, Subspace, as_fraction


class FilteredComplexError(Exception):
    pass


@dataclass(frozen=True)
class Cell:
    id: str
    degree: int
    filtration: int


class FilteredComplex:
    """Finite chain complex with a bounded integer filtration."""

    def __init__(self, cells: list[Cell], boundary: SparseMatrix, validate: bool = True):
        self.cells = list(cells)
        if boundary.rows != len(cells) or boundary.cols != len(cells):
            raise FilteredComplexError("boundary shape must match the cell count")
        self.boundary = boundary
        self.index = {c.id: i for i, c in enumerate(self.cells)}
        if len(self.index) != len(self.cells):
            raise FilteredComplexError("duplicate cell ids")
        if validate:
            self.validate()

    def validate(self) -> None:
        for (i, j), v in self.boundary.entries.items():
            src, dst = self.cells[j], self.cells[i]
            if dst.degree != src.degree - 1:
                raise FilteredComplexError(
                    f"boundary of {src.id} hits {dst.id}: degree drop is not 1"
                )
            if dst.filtration > src.filtration:
                raise FilteredComplexError(
                    f"boundary of {src.id} raises filtration at {dst.id}"
                )
        square = self.boundary @ self.boundary
        if square.entries:
            raise FilteredComplexError("boundary squared is nonzero")

    @property
    def filtration_range(self) -> tuple[int, int]:
        if not self.cells:
            return (0, 0)
        levels = [c.filtration for c in self.cells]
        return min(levels), max(levels)

    @property
    def degree_range(self) -> tuple[int, int]:
        if not self.cells:
            return (0, 0)
        degs = [c.degree for c in self.cells]
        return min(degs), max(degs)

    def homology_dims(self) -> dict[int, int]:
        by_degree: dict[int, list[int]] = {}
        for i, c in enumerate(self.cells):
            by_degree.setdefault(c.degree, []).append(i)
        cols = self.boundary.col_dicts()
        ranks: dict[int, int] = {}
        for n, idxs in by_degree.items():
            red = RowReducer()
            for j in idxs:
                if cols[j]:
                    red.add(cols[j])
            ranks[n] = red.rank
        dims = {}
        for n, idxs in by_degree.items():
            dims[n] = len(idxs) - ranks.get(n, 0) - ranks.get(n + 1, 0)
        return {n: d for n, d in dims.items()}

    def __repr__(self) -> str:
        return f"FilteredComplex({len(self.cells)} cells)"


@dataclass
class PageTable:
    r: int
    dims: dict[tuple[int, int], int]

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def nonzero(self) -> list[tuple[int, int, int]]:
        return [(p, q, d) for (p, q), d in sorted(self.dims.items()) if d > 0]

    def total_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (p, q), d in self.dims.items():
            out[p + q] = out.get(p + q, 0) + d
        return out


class _PageEngine:
    """Caches the Z^r subspaces of one filtered complex."""

    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self.n_cells = len(fc.cells)
        self.cols = fc.boundary.col_dicts()
        self._z_cache: dict = {}
        lo, hi = fc.filtration_range
        self.p_min, self.p_max = lo, hi
        self.width = hi - lo

    def _cells_at(self, p: int, n: int) -> list[int]:
        return [
            i
            for i, c in enumerate(self.fc.cells)
            if c.degree == n and c.filtration <= p
        ]

    def z_space(self, p: int, n: int, r: int) -> Subspace:
        """Z^r(p, n) in global cell coordinates."""
        key = (p, n, r)
        cached = self._z_cache.get(key)
        if cached is not None:
            return cached
        idxs = self._cells_at(p, n)
        if not idxs:
            space = Subspace(self.n_cells, [])
            self._z_cache[key] = space
            return space
        # Constraint rows: components of the boundary in filtration > p - r.
        bad_rows: dict[int, dict[int, Fraction]] = {}
        for col_pos, j in enumerate(idxs):
            for i, v in self.cols[j].items():
                if self.fc.cells[i].filtration > p - r:
                    bad_rows.setdefault(i, {})[col_pos] = v
        m = SparseMatrix(
            self.n_cells,
            len(idxs),
            {(i, c): v for i, row in bad_rows.items() for c, v in row.items()},
        )
        from .exactlin import kernel_basis

        local = kernel_basis(m)
        vectors = [
            {idxs[c]: v for c, v in row.items()} for row in local.basis
        ]
        space = Subspace.from_vectors(self.n_cells, vectors)
        self._z_cache[key] = space
        return space

    def boundary_image(self, space: Subspace) -> list[dict]:
        out = []
        for row in space.basis:
            img: dict = {}
            for j, coeff in row.items():
                for i, v in self.cols[j].items():
                    val = img.get(i, Fraction(0)) + coeff * v
                    if val == 0:
                        img.pop(i, None)
                    else:
                        img[i] = val
            if img:
                out.append(img)
        return out

    def page_dim(self, p: int, q: int, r: int) -> int:
        n = p + q
        z = self.z_space(p, n, r)
        if z.dim == 0:
            return 0
        red = RowReducer()
        for row in self.z_space(p - 1, n, r - 1).basis:
            red.add(row)
        for row in self.boundary_image(self.z_space(p + r - 1, n + 1, r - 1)):
            red.add(row)
        boundary_dim = red.rank
        # All boundary-part vectors lie inside Z^r, so the subquotient
        # dimension is a plain difference.
        return z.dim - boundary_dim


def page(fc: FilteredComplex, r: int) -> PageTable:
    """Dimension table of the r-th page (r >= 1)."""
    if r < 1:
        raise ValueError("page index must be at least 1")
    eng = _PageEngine(fc)
    dims: dict[tuple[int, int], int] = {}
    n_lo, n_hi = fc.degree_range
    for p in range(eng.p_min, eng.p_max + 1):
        for n in range(n_lo, n_hi + 1):
            d = eng.page_dim(p, n - p, r)
            if d:
                dims[(p, n - p)] = d
    return PageTable(r, dims)


def stable_page_index(fc: FilteredComplex) -> int:
    lo, hi = fc.filtration_range
    return hi - lo + 2


def einfinity(fc: FilteredComplex) -> PageTable:
    """Stable page; pages no longer change beyond the filtration width."""
    table = page(fc, stable_page_index(fc))
    table.r = -1
    return table


def convergence_check(fc: FilteredComplex) -> bool:
    """Does the stable page add up to the homology in every total degree?"""
    einf = einfinity(fc)
    totals = einf.total_dims()
    hom = fc.homology_dims()
    degrees = set(totals) | set(hom)
    return all(totals.get(n, 0) == hom.get(n, 0) for n in degrees)


def from_dga(dga: free_dga.DGA, window: free_dga.LengthWindow) -> FilteredComplex:
    """Weight-filtration complex of a length-windowed DGA.

    Cells are the window's words; a word of total weight m sits in
    filtration -m, so heavier words are deeper in the filtration and the
    differential (which never lowers weight) never raises the level.
    """
    window.ensure_valid(dga)
    words = free_dga._enumerate_words(dga, window, None)
    index = {w: i for i, w in enumerate(words)}
    cells = [
        Cell("*".join(w) if w else "1", dga.word_degree(w), -dga.word_weight(w))
        for w in words
    ]
    entries: dict = {}
    one = Fraction(1)
    for j, w in enumerate(words):
        img: dict = {}
        free_dga._word_differential(dga, w, img, one)
        for ww, c in img.items():
            entries[(index[ww], j)] = c
    boundary = SparseMatrix(len(words), len(words), entries)
    return FilteredComplex(cells, boundary)


def associated_graded_homology(fc: FilteredComplex) -> dict[tuple[int, int], int]:
    """Homology of each graded piece; independent route to the first page.

    The level-p graded piece keeps cells of filtration exactly p with the
    boundary projected back to level p.
    """
    out: dict[tuple[int, int], int] = {}
    levels = sorted({c.filtration for c in fc.cells})
    cols = fc.boundary.col_dicts()
    for p in levels:
        idxs = [i for i, c in enumerate(fc.cells) if c.filtration == p]
        sub = {j: k for k, j in enumerate(idxs)}
        by_degree: dict[int, list[int]] = {}
        for j in idxs:
            by_degree.setdefault(fc.cells[j].degree, []).append(j)
        ranks: dict[int, int] = {}
        for n, js in by_degree.items():
            red = RowReducer()
            for j in js:
                row = {sub[i]: v for i, v in cols[j].items() if i in sub}
                if row:
                    red.add(row)
            ranks[n] = red.rank
        for n, js in by_degree.items():
            dim = len(js) - ranks.get(n, 0) - ranks.get(n + 1, 0)
            if dim:
                out[(p, n - p)] = dim
    return out


# -- serialization -----------------------------------------------------------


def complex_to_json_dict(fc: FilteredComplex) -> dict:
    return {
        "cells": [
            {"id": c.id, "degree": c.degree, "filtration": c.filtration}
            for c in fc.cells
        ],
        "boundary": [
            {"from": fc.cells[j].id, "to": fc.cells[i].id, "coeff": str(v)}
            for (i, j), v in sorted(fc.boundary.entries.items())
        ],
    }


def complex_from_json_dict(data: Mapping) -> FilteredComplex:
    cells = [
        Cell(str(c["id"]), int(c["degree"]), int(c["filtration"]))
        for c in data["cells"]
    ]
    index = {c.id: i for i, c in enumerate(cells)}
    entries = {}
    for rec in data.get("boundary", []):
        i, j = index[rec["to"]], index[rec["from"]]
        entries[(i, j)] = as_fraction(str(rec["coeff"]))
    return FilteredComplex(cells, SparseMatrix(len(cells), len(cells), entries))


def save_complex(fc: FilteredComplex, path) -> None:
    with open(path, "w") as fh:
        json.dump(complex_to_json_dict(fc), fh, indent=1, sort_keys=True)


def load_complex(path) -> FilteredComplex:
    with open(path) as fh:
        return complex_from_json_dict(json.load(fh))


def pages_to_csv(tables: list[PageTable], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["r", "p", "q", "dim"])
        for t in tables:
            label = "inf" if t.r < 0 else t.r
            for p, q, d in t.nonzero():
                writer.writerow([label, p, q, d])
