from fractions import Fraction

import pytest

from stringhom import free_dga
from stringhom.cord import (
    BoundExceeded,
    CordGenerator,
    CordPresentation,
    SkeinInstance,
    UnknownBuiltin,
    builtin_presentation,
    compare_with_h0,
    presentation_from_json_dict,
    presentation_to_json_dict,
    quotient_dims_by_wordcount,
    truncation_stable,
)
from stringhom.exactlin import RowReducer


def slice_dims_full_alphabet(pres: CordPresentation, wmax: int) -> list[int]:
    """Oracle: the same quotients with no generator elimination at all.

    Every relation instance is padded over the full generator alphabet and
    the filtration slice dimensions are read off one echelon pass.  This is
    only feasible for small presentations, which is exactly what makes it an
    independent check on the reduction done by the main routine.
    """
    rows = pres.relation_rows()
    alphabet = sorted(g.id for g in pres.generators)
    width = wmax + 1

    def pad_words(max_len):
        frontier = [()]
        out = [()]
        for _ in range(max_len):
            frontier = [w + (g,) for w in frontier for g in alphabet]
            out.extend(frontier)
        return out

    red = RowReducer(col_key=lambda w: (-len(w), w))
    for row in rows:
        row_len = max(len(w) for w in row)
        budget = width - row_len
        pads = pad_words(budget)
        for u in pads:
            for v in pads:
                if len(u) + len(v) > budget:
                    continue
                red.add({u + w + v: c for w, c in row.items()})
    pivot_lengths = [len(w) for w in red.pivots]
    total = red.rank
    asize = len(alphabet)
    dims = []
    prev = 0
    for w in range(wmax + 1):
        ambient = sum(asize**k for k in range(w + 1))
        beyond = sum(1 for k in pivot_lengths if k > w)
        f_w = ambient - (total - beyond)
        dims.append(f_w - prev)
        prev = f_w
    return dims


class TestBuiltins:
    def test_unknown_name(self):
        with pytest.raises(UnknownBuiltin):
            builtin_presentation("trefoil", 2)

    def test_unknot_structure(self):
        pres = builtin_presentation("unknot", 3)
        assert [g.id for g in pres.generators] == ["a0", "a1", "a2", "a3"]
        assert pres.constants == ["a0"]
        # Every skein instance is A_(j+k) - A_(j+k+1) - A_j A_k.
        for inst in pres.skein:
            j = int(inst.left[1:])
            k = int(inst.right[1:])
            assert inst.concat == f"a{j + k}"
            assert inst.inserted == f"a{j + k + 1}"

    def test_hopf_structure(self):
        pres = builtin_presentation("hopf_link", 2)
        ids = {g.id for g in pres.generators}
        assert {"x01", "x10", "s00_0", "s11_2"} <= ids
        assert {"s00_0", "s11_0"} == set(pres.constants)
        # The cross-cross splice produces both product relations.
        prods = {(i.left, i.right) for i in pres.skein if i.concat == i.inserted == "s00_0"}
        assert ("x01", "x10") in prods

    def test_unlink2_structure(self):
        pres = builtin_presentation("unlink2", 2)
        ids = {g.id for g in pres.generators}
        assert {"t01", "t10", "w00c1_2"} <= ids
        assert set(pres.constants) == {"t00", "t11"}

    @pytest.mark.parametrize("name", ["unknot", "hopf_link", "unlink2"])
    def test_relation_rows_connect_adjacent_counts(self, name):
        # Single-cord terms and one product term only: every row lives in
        # letter counts {1} or {1, 2}, so slice computations are exact.
        pres = builtin_presentation(name, 3)
        for row in pres.relation_rows():
            counts = {len(w) for w in row}
            assert counts <= {1, 2}


class TestQuotientDims:
    def test_unknot_collapses(self):
        pres = builtin_presentation("unknot", 4)
        assert quotient_dims_by_wordcount(pres, 3) == [1, 0, 0, 0]

    def test_hopf_matches_polynomial_quotient(self):
        pres = builtin_presentation("hopf_link", 2)
        assert quotient_dims_by_wordcount(pres, 4) == [1, 2, 2, 2, 2]

    def test_unlink2_free_on_two(self):
        pres = builtin_presentation("unlink2", 2)
        assert quotient_dims_by_wordcount(pres, 4) == [1, 2, 4, 8, 16]

    def test_bound_enforced(self):
        pres = builtin_presentation("unknot", 2)
        with pytest.raises(BoundExceeded):
            quotient_dims_by_wordcount(pres, pres.bound + 1)

    @pytest.mark.parametrize("name,wmax", [("unknot", 3), ("hopf_link", 3)])
    def test_engine_matches_full_alphabet_oracle(self, name, wmax):
        # Valid comparison: for these presentations every eliminated
        # generator rewrites to zero, so the word-count filtration is the
        # same over the raw and the irreducible alphabet.  (Not true for
        # unlink2, whose deep cords rewrite to two-letter products; there
        # the slice dims are counted over normal-form words, and the checks
        # are the closed-form dims plus truncation stability.)
        pres = builtin_presentation(name, 2)
        assert quotient_dims_by_wordcount(pres, wmax) == slice_dims_full_alphabet(
            pres, wmax
        )

    def test_skein_order_irrelevant(self):
        pres = builtin_presentation("hopf_link", 2)
        shuffled = CordPresentation(
            pres.generators,
            pres.constants,
            list(reversed(pres.skein)),
            pres.bound,
            name="shuffled",
        )
        assert quotient_dims_by_wordcount(shuffled, 4) == [1, 2, 2, 2, 2]


class TestTruncationStability:
    @pytest.mark.parametrize("name,wmax", [("unknot", 3), ("hopf_link", 4), ("unlink2", 4)])
    def test_stable(self, name, wmax):
        assert truncation_stable(name, 2, wmax)


class TestCompare:
    def test_hopf_link_matches_h0(self):
        ok, rows = compare_with_h0(
            builtin_presentation("hopf_link", 2),
            free_dga.build_hopf(2),
            free_dga.LengthWindow(Fraction(13, 2)),
            4,
        )
        assert ok
        assert [r[1] for r in rows] == [1, 2, 2, 2, 2]

    def test_unlink2_matches_h0(self):
        ok, _ = compare_with_h0(
            builtin_presentation("unlink2", 2),
            free_dga.build_unlink(2, 3),
            free_dga.LengthWindow(Fraction(41, 2)),
            4,
        )
        assert ok

    def test_unknot_vs_hopf_differs(self):
        ok, rows = compare_with_h0(
            builtin_presentation("unknot", 2),
            free_dga.build_hopf(2),
            free_dga.LengthWindow(Fraction(13, 2)),
            3,
        )
        assert not ok
        assert rows[1][1] == 0 and rows[1][2] == 2


class TestJson:
    def test_roundtrip(self):
        pres = builtin_presentation("hopf_link", 2)
        back = presentation_from_json_dict(presentation_to_json_dict(pres))
        assert [g.id for g in back.generators] == [g.id for g in pres.generators]
        assert back.constants == pres.constants
        assert back.skein == pres.skein
        assert back.bound == pres.bound
        assert quotient_dims_by_wordcount(back, 4) == [1, 2, 2, 2, 2]

    def test_custom_presentation(self):
        # A two-generator table with one product relation: dims of the free
        # algebra on {p, q} modulo (pq); the surviving words are q^a p^b.
        gens = [CordGenerator("p", 0, 1), CordGenerator("q", 1, 0), CordGenerator("z", 0, 0)]
        pres = CordPresentation(
            gens,
            ["z"],
            [SkeinInstance("z", "z", "p", "q")],
            bound=4,
            name="custom",
        )
        assert quotient_dims_by_wordcount(pres, 3) == [1, 2, 3, 4]
