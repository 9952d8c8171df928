import random
from fractions import Fraction

import pytest

from stringhom import free_dga
from stringhom.exactlin import SparseMatrix
from stringhom.specseq import (
    Cell,
    FilteredComplex,
    FilteredComplexError,
    associated_graded_homology,
    complex_from_json_dict,
    complex_to_json_dict,
    convergence_check,
    einfinity,
    from_dga,
    page,
    pages_to_csv,
    stable_page_index,
)


def random_filtered_pair(seed: int, ncells: int = 10):
    """Random complex plus its conjugate under a filtered unipotent map.

    Starting from a direct sum of elementary pieces (x -> y plus singles),
    conjugation by a filtration-respecting unipotent change of basis keeps
    boundary^2 = 0 and the filtration property while mixing everything up.
    The change of basis is a filtered chain isomorphism inducing the
    identity on the associated graded, hence an isomorphism on first pages.
    """
    rng = random.Random(seed)
    degs = [rng.randint(0, 3) for _ in range(ncells)]
    filt = [rng.randint(-3, 0) for _ in range(ncells)]
    cells = [Cell(f"x{i}", degs[i], filt[i]) for i in range(ncells)]
    used = set()
    entries = {}
    order = list(range(ncells))
    rng.shuffle(order)
    for j in order:
        if j in used:
            continue
        cands = [
            i
            for i in range(ncells)
            if i not in used and i != j and degs[i] == degs[j] - 1 and filt[i] <= filt[j]
        ]
        if cands and rng.random() < 0.7:
            i = rng.choice(cands)
            entries[(i, j)] = Fraction(rng.choice([1, -1, 2]))
            used.add(i)
            used.add(j)
    d0 = SparseMatrix(ncells, ncells, entries)
    p_entries = {(i, i): Fraction(1) for i in range(ncells)}
    for _ in range(ncells):
        j = rng.randrange(ncells)
        cands = [
            k for k in range(ncells) if k != j and degs[k] == degs[j] and filt[k] < filt[j]
        ]
        if cands:
            k = rng.choice(cands)
            p_entries[(k, j)] = p_entries.get((k, j), Fraction(0)) + rng.choice([1, -1])
    p = SparseMatrix(ncells, ncells, p_entries)
    nilpotent = SparseMatrix(
        ncells, ncells, {k: v for k, v in p_entries.items() if k[0] != k[1]}
    )
    inv = SparseMatrix.identity(ncells)
    term = SparseMatrix.identity(ncells)
    sign = 1
    for _ in range(ncells):
        term = term @ nilpotent
        if not term.entries:
            break
        sign = -sign
        merged = dict(inv.entries)
        for k, v in term.entries.items():
            merged[k] = merged.get(k, Fraction(0)) + sign * v
        inv = SparseMatrix(ncells, ncells, merged)
    return FilteredComplex(cells, d0), FilteredComplex(cells, p @ d0 @ inv)


def random_filtered_complex(seed: int, ncells: int = 10) -> FilteredComplex:
    return random_filtered_pair(seed, ncells)[1]


@pytest.fixture(scope="module")
def hopf_complex():
    dga = free_dga.build_hopf(2)
    return from_dga(dga, free_dga.LengthWindow(Fraction(7, 2)))


class TestFromDga:
    def test_cell_filtrations(self, hopf_complex):
        fc = hopf_complex
        assert fc.cells[fc.index["c0_01"]].degree == 0
        assert fc.cells[fc.index["c0_01"]].filtration == -1
        assert fc.cells[fc.index["d1_00"]].degree == 1
        assert fc.cells[fc.index["d1_00"]].filtration == -2
        assert fc.cells[fc.index["1"]].degree == 0
        assert fc.cells[fc.index["1"]].filtration == 0

    def test_validation_rejects_bad_boundary(self):
        cells = [Cell("a", 1, 0), Cell("b", 0, 1)]
        bad = SparseMatrix(2, 2, {(1, 0): Fraction(1)})
        with pytest.raises(FilteredComplexError):
            FilteredComplex(cells, bad)

    def test_validation_rejects_nonsquarezero(self):
        cells = [Cell("a", 2, 0), Cell("b", 1, 0), Cell("c", 0, 0)]
        bad = SparseMatrix(3, 3, {(1, 0): Fraction(1), (2, 1): Fraction(1)})
        with pytest.raises(FilteredComplexError):
            FilteredComplex(cells, bad)


class TestPages:
    def test_zero_boundary_pages_constant(self):
        cells = [Cell("a", 0, 0), Cell("b", 1, -1), Cell("c", 1, -1)]
        fc = FilteredComplex(cells, SparseMatrix.zeros(3, 3))
        first = page(fc, 1)
        assert first.dim(0, 0) == 1
        assert first.dim(-1, 2) == 2
        for r in (2, 3, 5):
            assert page(fc, r).dims == first.dims
        assert einfinity(fc).dims == first.dims

    def test_page_index_validated(self, hopf_complex):
        with pytest.raises(ValueError):
            page(hopf_complex, 0)

    @pytest.mark.parametrize("seed", range(8))
    def test_first_page_is_graded_homology(self, seed):
        fc = random_filtered_complex(seed)
        e1 = page(fc, 1)
        gr = associated_graded_homology(fc)
        assert {k: v for k, v in e1.dims.items() if v} == gr

    @pytest.mark.parametrize("seed", range(8))
    def test_entrywise_monotone(self, seed):
        fc = random_filtered_complex(seed)
        prev = page(fc, 1)
        for r in range(2, stable_page_index(fc) + 1):
            cur = page(fc, r)
            keys = set(prev.dims) | set(cur.dims)
            for key in keys:
                assert cur.dim(*key) <= prev.dim(*key)
            prev = cur

    @pytest.mark.parametrize("seed", range(8))
    def test_pages_stabilize(self, seed):
        fc = random_filtered_complex(seed)
        r0 = stable_page_index(fc)
        assert page(fc, r0).dims == page(fc, r0 + 2).dims

    @pytest.mark.parametrize("seed", range(12))
    def test_convergence_random(self, seed):
        assert convergence_check(random_filtered_complex(seed, ncells=12))

    def test_convergence_hopf(self, hopf_complex):
        assert convergence_check(hopf_complex)

    def test_convergence_zero_boundary(self):
        cells = [Cell("a", 0, 0), Cell("b", 1, -1)]
        fc = FilteredComplex(cells, SparseMatrix.zeros(2, 2))
        assert convergence_check(fc)

    def test_first_page_diagonal_counts_chord_words(self, hopf_complex):
        # Words built from weight-1 generators survive to the first page;
        # at total degree zero the (-m, m) entry counts the m-letter ones.
        dga = free_dga.build_hopf(2)
        window = free_dga.LengthWindow(Fraction(7, 2))
        e1 = page(hopf_complex, 1)
        for m in range(0, 4):
            count = sum(
                1
                for w in free_dga._enumerate_words(dga, window, 0)
                if len(w) == m and all(dga.gen(g).weight == 1 for g in w)
            )
            assert e1.dim(-m, m) == count


class TestComparison:
    """A filtered map that is an isomorphism on the first page induces an
    isomorphism on total homology; checked on constructed pairs related by a
    filtered unipotent change of basis (identity on the associated graded,
    so the induced first-page map is an isomorphism).
    """

    @pytest.mark.parametrize("seed", range(6))
    def test_homology_matches_across_e1_isomorphism(self, seed):
        plain, conjugated = random_filtered_pair(seed)
        assert page(plain, 1).dims == page(conjugated, 1).dims
        assert plain.homology_dims() == conjugated.homology_dims()
        total_e_inf = einfinity(conjugated).total_dims()
        hom = plain.homology_dims()
        for n in set(total_e_inf) | set(hom):
            assert total_e_inf.get(n, 0) == hom.get(n, 0)


class TestIO:
    def test_json_roundtrip(self, hopf_complex):
        data = complex_to_json_dict(hopf_complex)
        back = complex_from_json_dict(data)
        assert back.cells == hopf_complex.cells
        assert back.boundary == hopf_complex.boundary

    def test_csv(self, tmp_path, hopf_complex):
        path = tmp_path / "pages.csv"
        pages_to_csv([page(hopf_complex, 1), einfinity(hopf_complex)], path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "r,p,q,dim"
        assert any(line.startswith("inf,") for line in lines[1:])
