"""Column-filtration spectral sequence: hand oracles and page structure."""

import pytest

from confspace.exactlinalg import QQ
from confspace import graphs as gr
from confspace import catalog
from confspace.bgcomplex import build_AG, build_C
from confspace.spectral import (
    SpectralSequence, WindowError, total_cohomology, pages,
)


class ToyBicomplex:
    """Two generators x at (0, 0) and y at (2, -1) with D x = y.

    The differential drops out of sight of d_1 (the (1, 0) block is empty)
    and reappears as a nonzero d_2."""

    def __init__(self):
        self.field = QQ
        self.qmax = None
        self.blocks = {(0, 0): ["x"], (2, -1): ["y"]}
        self.block_of = {"x": (0, 0), "y": (2, -1)}
        self.pmax = 2

    def apply_total(self, el):
        return {"y": el["x"]} if "x" in el else {}


def test_toy_nonzero_d2():
    ss = SpectralSequence(ToyBicomplex())
    assert ss.e_dim(1, 0, 0) == 1
    assert ss.e_dim(1, 2, -1) == 1
    assert ss.e_dim(2, 0, 0) == 1
    m = ss.d_matrix(2, 0, 0)
    assert not m.is_zero()
    assert ss.e_dim(3, 0, 0) == 0
    assert ss.e_dim(3, 2, -1) == 0
    assert ss.collapse_page() == 3


def test_toy_total_cohomology_vanishes():
    assert total_cohomology(ToyBicomplex(), 0, 1) == {0: 0, 1: 0}


# -- hand oracle: the two-point quotient bicomplex over the 2-sphere ---------

def two_point_bar():
    return build_AG(catalog.load("s2"), 2, gr.NODUPTARGET)


def test_two_point_e1_equals_blocks_for_formal_carrier():
    bc = two_point_bar()
    ss = SpectralSequence(bc)
    for (p, q) in bc.blocks:
        assert ss.e_dim(1, p, q) == bc.block_dim(p, q)


def test_two_point_e2_by_hand():
    # d' kernel: span{1(x)w - w(x)1, w(x)w}; d' is onto the edge column
    ss = SpectralSequence(two_point_bar())
    dims = {pq: d for pq, d in ss.page(2).items() if d}
    assert dims == {(0, 2): 1, (0, 4): 1}


def test_two_point_total_cohomology():
    assert total_cohomology(two_point_bar(), 0, 4) == \
        {0: 0, 1: 0, 2: 1, 3: 0, 4: 1}


def test_e_infinity_matches_total_cohomology():
    bc = two_point_bar()
    ss = SpectralSequence(bc)
    tot = total_cohomology(bc, 0, 4)
    for k in range(5):
        s = sum(ss.e_dim(3, p, k - p) for p in range(0, 3))
        assert s == tot[k]


# -- structural properties ----------------------------------------------------

@pytest.mark.parametrize("nm,n", [("s2", 3), ("t2", 3)])
def test_page_dims_weakly_decrease(nm, n):
    bc = build_AG(catalog.load(nm), n, gr.NODUPTARGET)
    ss = SpectralSequence(bc)
    for (p, q) in sorted(bc.blocks):
        prev = ss.e_dim(1, p, q)
        for r in range(2, 5):
            cur = ss.e_dim(r, p, q)
            assert cur <= prev
            prev = cur


def test_left_column_boundaries_counted():
    # regression: page-r boundaries landing in column 0 come from sources
    # left of the filtration range and must still be quotiented out
    bc = build_AG(catalog.load("s2"), 3, gr.NODUPTARGET)
    ss = SpectralSequence(bc)
    e2 = {pq: d for pq, d in ss.page(2).items() if d}
    e3 = {pq: d for pq, d in ss.page(3).items() if d}
    assert e2 == {(0, 6): 1, (1, 2): 1}
    assert e3 == e2


def test_d_squares_to_zero_on_pages():
    bc = build_C(catalog.load("t2"), 3)
    ss = SpectralSequence(bc)
    for r in (1, 2):
        for (p, q) in sorted(bc.blocks):
            m1 = ss.d_matrix(r, p, q)
            reps, _ = ss.e_block(r, p, q)
            for j in range(len(reps)):
                v = m1.column(j)
                # push the image class through the next differential
                img = {}
                tgt, _ = ss.e_block(r, p + r, q - r + 1)
                for i, c in v.items():
                    y = ss._d_vec(tgt[i], p + q + 1)
                    for ii, cc in ss._project(
                            y, r, p + 2 * r, q - 2 * r + 2).items():
                        img[ii] = img.get(ii, QQ.zero) + c * cc
                assert not any(img.values())


def test_project_class_on_representatives():
    bc = build_C(catalog.load("cp2"), 3)
    ss = SpectralSequence(bc)
    for (p, q) in sorted(bc.blocks):
        for i, el in enumerate(ss.rep_elements(2, p, q)):
            assert ss.project_class(el, 2, p, q) == {i: QQ.one}


def test_formal_reduced_collapses_at_two():
    bc = build_C(catalog.load("s2"), 3)
    assert SpectralSequence(bc).collapse_page() <= 2


def test_pages_summary_shape():
    bc = build_C(catalog.load("s2"), 3)
    out = pages(bc, 2)
    assert sorted(out) == [1, 2]
    assert set(out[1]) == set(bc.blocks)


# -- q-window guards ----------------------------------------------------------

def test_window_error_on_out_of_range_total_degree():
    bc = build_C(catalog.load("stb_s2xs2"), 3, qmax=4)
    ss = SpectralSequence(bc)
    with pytest.raises(WindowError):
        ss.z_basis(1, 0, 4)


def test_window_error_in_total_cohomology():
    bc = build_C(catalog.load("stb_s2xs2"), 3, qmax=4)
    with pytest.raises(WindowError):
        total_cohomology(bc, 0, 5)
