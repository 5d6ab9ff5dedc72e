from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from cagespec.abelian import DegenerateLatticeError
from cagespec.caysum import SumSet, cayley_sum_graph
from cagespec.fullerene import (
    CASE_TABLE,
    FoldedGraph,
    InvariantViolation,
    TriangleSpec,
    _fold_matches,
    classify,
    enumerate_specs,
    face_census,
    fold_construction,
    group_and_sumset,
    is_non_obtuse,
    reduce_triangle_basis,
    verify_isomorphism,
    verify_spec,
)
from cagespec.spectra import multiset_close, spectrum_is_paired

RNG_SEED = 0xF01D


# --- an independent geometric fold, for cross-checking -----------------------
#
# Triangle orbits are recomputed from scratch: coset identity by Cramer
# divisibility, canonical labels by lexicographic scan of the [0, n)^2 box,
# the reflection applied directly to representatives.

class ReferenceFold:
    def __init__(self, t: TriangleSpec):
        self.det = t.p * t.s - t.q * t.r
        self.n = abs(self.det)
        self.t = t
        self._canon: dict[tuple[int, int], tuple[int, int]] = {}
        box = [(i, j) for i in range(self.n) for j in range(self.n)]
        for pt in box:
            if pt in self._canon:
                continue
            cls = [c for c in box if self.same_coset(pt, c)]
            label = min(cls)
            for c in cls:
                self._canon[c] = label
        self.up_cosets = sorted(set(self._canon.values()))

    def same_coset(self, u: tuple[int, int], v: tuple[int, int]) -> bool:
        d1, d2 = u[0] - v[0], u[1] - v[1]
        t = self.t
        return (d1 * t.s - d2 * t.r) % self.det == 0 and (
            t.p * d2 - t.q * d1
        ) % self.det == 0

    def canonical(self, pt: tuple[int, int]) -> tuple[int, int]:
        return self._canon[(pt[0] % self.n, pt[1] % self.n)]

    def partner(self, down: tuple[int, int]) -> tuple[int, int]:
        # the reflection swaps the down triangle at (x, y) with the up
        # triangle at (p1 - 1 - x, p2 - 1 - y)
        return self.canonical((self.t.p1 - 1 - down[0], self.t.p2 - 1 - down[1]))

    def build(self) -> tuple[dict, dict]:
        directed: Counter = Counter()
        semiedges: Counter = Counter()
        for c in self.up_cosets:
            i, j = c
            for down in ((i, j), (i - 1, j), (i, j - 1)):
                p = self.partner(down)
                if p == c:
                    semiedges[c] += 1
                else:
                    directed[(c, p)] += 1
        edges: dict = {}
        for (a, b), m in directed.items():
            assert directed[(b, a)] == m
            if a < b:
                edges[(a, b)] = m
        return edges, dict(semiedges)


def assert_fold_matches_reference(t: TriangleSpec) -> None:
    ref = ReferenceFold(t)
    ref_edges, ref_semi = ref.build()
    folded = fold_construction(t)
    assert folded.n_vertices == len(ref.up_cosets) == t.index
    label = {k: ref.canonical(rep) for k, rep in enumerate(folded.reps)}
    assert sorted(label.values()) == list(ref.up_cosets)
    mapped_edges = {}
    for (i, j), m in folded.edges.items():
        a, b = sorted((label[i], label[j]))
        mapped_edges[(a, b)] = m
    mapped_semi = {label[i]: m for i, m in folded.semiedges.items()}
    assert mapped_edges == ref_edges
    assert mapped_semi == ref_semi


def test_fold_matches_independent_geometry_small():
    for t in enumerate_specs(8):
        assert_fold_matches_reference(t)


def test_fold_matches_independent_geometry_skew_bases():
    # bases that are not in Hermite form, including negative entries
    for pqrs in ((3, 1, -1, 3), (2, 1, 1, 3), (-2, 3, 3, 2), (1, 2, 3, -4)):
        for p1, p2 in ((0, 0), (1, 0), (0, 1), (1, 1)):
            assert_fold_matches_reference(TriangleSpec(*pqrs, p1, p2))


# --- spec handling -----------------------------------------------------------

def test_spec_validation():
    with pytest.raises(DegenerateLatticeError):
        TriangleSpec(1, 2, 2, 4, 0, 0)
    with pytest.raises(DegenerateLatticeError):
        TriangleSpec(0, 0, 0, 0, 0, 0)
    t = TriangleSpec(6, 2, -2, 6, 2, 3)
    assert (t.p1, t.p2) == (0, 1)  # translations only matter mod 2
    assert t.index == 40
    assert t.as_tuple() == (6, 2, -2, 6, 0, 1)
    assert t.lattice.column(0) == (6, 2)
    assert t.lattice.column(1) == (-2, 6)


def test_case_table_contents():
    assert CASE_TABLE == {
        0: ("a", (3, -1, -1, -1)),
        2: ("b", (3, -1)),
        3: ("c", (3,)),
        4: ("d", (3, 1)),
    }


# --- golden quotients --------------------------------------------------------

def test_index_forty_untranslated():
    report = classify(TriangleSpec(6, 2, -2, 6, 0, 0))
    assert report.moduli == (2, 20)
    assert report.n_vertices == 40
    assert report.semiedges == 0
    assert (report.f3, report.f6) == (4, 18)
    assert report.case == "a"
    assert report.unmatched_raw == (3, -1, -1, -1)
    assert report.unmatched_canonical == (3, -1, -1, -1)
    assert report.spectral_radius == 3.0
    assert len(report.paired) == 18


def test_index_forty_translated():
    report = classify(TriangleSpec(6, 2, -2, 6, 1, 0))
    assert report.moduli == (2, 20)
    assert report.semiedges == 4
    assert (report.f3, report.f6) == (0, 20)
    assert report.case == "d"
    assert report.unmatched_raw == (3, 1, 1, -1)
    assert report.unmatched_canonical == (3, 1)
    assert report.sum_set == ((0, 0), (0, 19), (1, 2))


def test_one_vertex_quotient_has_three_semiedges():
    report = classify(TriangleSpec(1, 0, 0, 1, 0, 0))
    assert report.n_vertices == 1
    assert report.semiedges == 3
    assert (report.f3, report.f6) == (1, 0)
    assert report.case == "c"
    assert report.unmatched_raw == (3,)
    assert report.full_spectrum() == [3.0]


def test_tetrahedral_quotient_is_complete_graph():
    t = TriangleSpec(2, 0, 0, 2, 0, 0)
    report = classify(t)
    assert report.n_vertices == 4
    assert report.semiedges == 0
    assert report.case == "a"
    assert report.unmatched_raw == (3, -1, -1, -1)
    q, s = group_and_sumset(t)
    graph = cayley_sum_graph(q.group, s)
    assert len(graph.edges) == 6
    assert all(m == 1 for m in graph.edges.values())
    assert graph.semiedges == {}


def test_two_vertex_quotients():
    doubled = classify(TriangleSpec(1, 0, 0, 2, 0, 0))
    assert doubled.n_vertices == 2
    assert doubled.semiedges == 2
    assert doubled.case == "b"
    assert doubled.unmatched_raw == (3, -1)
    shifted = classify(TriangleSpec(1, 0, 0, 2, 0, 1))
    assert shifted.semiedges == 4
    assert shifted.case == "d"
    assert shifted.unmatched_raw == (3, 1)


# --- counting invariants -----------------------------------------------------

def test_face_census_golden_values():
    assert face_census(TriangleSpec(6, 2, -2, 6, 0, 0)) == (4, 18, 0)
    assert face_census(TriangleSpec(6, 2, -2, 6, 1, 0)) == (0, 20, 4)
    assert face_census(TriangleSpec(1, 0, 0, 1, 0, 0)) == (1, 0, 3)
    assert face_census(TriangleSpec(2, 0, 0, 2, 0, 0)) == (4, 0, 0)


def test_counting_invariants_sweep():
    for t in enumerate_specs(10):
        report = classify(t)
        assert report.semiedges in (0, 2, 3, 4)
        assert report.semiedges + report.f3 == 4
        assert report.f6 == (report.n_vertices - report.f3) // 2
        case, expected = CASE_TABLE[report.semiedges]
        assert report.case == case
        assert report.unmatched_canonical == expected
        assert report.spectral_radius == 3.0
        assert spectrum_is_paired(
            report.full_spectrum(), report.unmatched_canonical, 1e-8
        )


def test_enumeration_counts_and_uniqueness():
    assert len(list(enumerate_specs(1))) == 4
    assert len(list(enumerate_specs(2))) == 16
    assert len(list(enumerate_specs(3))) == 32
    assert len(list(enumerate_specs(4))) == 60
    specs = [t.as_tuple() for t in enumerate_specs(12)]
    assert len(specs) == 508
    assert len(set(specs)) == 508
    assert all(TriangleSpec(*tup).index <= 12 for tup in specs)
    with pytest.raises(ValueError):
        list(enumerate_specs(0))


def test_enumeration_covers_every_lattice_once():
    # indexes 1..6: the number of sublattices of Z^2 of index n is sigma(n)
    sigma = {1: 1, 2: 3, 3: 4, 4: 7, 5: 6, 6: 12}
    by_index = Counter(t.index for t in enumerate_specs(6))
    for n, expected in sigma.items():
        assert by_index[n] == 4 * expected


# --- fold vs Cayley sum graph ------------------------------------------------

def test_folded_graph_shape():
    folded = fold_construction(TriangleSpec(6, 2, -2, 6, 0, 0))
    assert isinstance(folded, FoldedGraph)
    assert folded.n_vertices == 40
    assert folded.total_semiedges == 0
    assert all(folded.degree(i) == 3 for i in range(folded.n_vertices))
    q, _ = group_and_sumset(folded.spec)
    labels = folded.labels(q)
    assert sorted(labels) == sorted(q.group.element_tuple)


def test_fold_is_isomorphic_across_sweep():
    for t in enumerate_specs(8):
        folded = fold_construction(t)
        q, s = group_and_sumset(t)
        assert verify_isomorphism(folded, q, s)
        assert _fold_matches(t, q, s)


def test_fold_rejects_wrong_sum_set():
    rng = random.Random(RNG_SEED)
    checked = 0
    for t in enumerate_specs(6):
        q, s = group_and_sumset(t)
        if q.group.order < 3:
            continue
        folded = fold_construction(t)
        elements = list(s.elements)
        others = [x for x in q.group.element_tuple if x not in elements]
        if not others:
            continue
        elements[rng.randrange(3)] = rng.choice(others)
        wrong = SumSet(q.group, tuple(elements))
        if wrong.elements == s.elements:
            continue
        assert not verify_isomorphism(folded, q, wrong)
        assert not _fold_matches(t, q, wrong)
        checked += 1
    assert checked >= 20


def test_verify_spec_reports_and_passes():
    report = verify_spec(TriangleSpec(6, 2, -2, 6, 1, 0))
    assert report.case == "d"
    for t in enumerate_specs(5):
        verify_spec(t)


# --- basis normalization -----------------------------------------------------

def test_is_non_obtuse_examples():
    assert is_non_obtuse(TriangleSpec(1, 0, 0, 1, 0, 0))
    assert not is_non_obtuse(TriangleSpec(1, 0, 5, 1, 0, 0))


def test_reduce_triangle_basis_preserves_the_quotient():
    rng = random.Random(RNG_SEED + 1)
    for _ in range(40):
        while True:
            p, q_, r, s_ = (rng.randint(-6, 6) for _ in range(4))
            if p * s_ - q_ * r != 0:
                break
        t = TriangleSpec(p, q_, r, s_, rng.randint(0, 1), rng.randint(0, 1))
        reduced = reduce_triangle_basis(t)
        assert is_non_obtuse(reduced)
        assert reduced.index == t.index
        assert (reduced.p1, reduced.p2) == (t.p1, t.p2)
        a = classify(t)
        b = classify(reduced)
        assert a.moduli == b.moduli
        assert a.unmatched_raw == b.unmatched_raw
        assert (a.semiedges, a.f3, a.f6) == (b.semiedges, b.f3, b.f6)
        assert multiset_close(a.full_spectrum(), b.full_spectrum(), 1e-9)


# --- randomized invariants ---------------------------------------------------

@seed(RNG_SEED)
@settings(deadline=None, max_examples=60)
@given(
    st.tuples(
        st.integers(min_value=-8, max_value=8),
        st.integers(min_value=-8, max_value=8),
        st.integers(min_value=-8, max_value=8),
        st.integers(min_value=-8, max_value=8),
    ),
    st.integers(min_value=0, max_value=1),
    st.integers(min_value=0, max_value=1),
)
def test_randomized_basis_invariants(pqrs, p1, p2):
    p, q_, r, s_ = pqrs
    if p * s_ - q_ * r == 0:
        return
    report = classify(TriangleSpec(p, q_, r, s_, p1, p2))
    assert report.semiedges in (0, 2, 3, 4)
    assert report.semiedges + report.f3 == 4
    assert 2 * report.f6 + report.f3 == report.n_vertices
    assert sum(report.unmatched_raw) == report.semiedges
    assert report.unmatched_canonical == CASE_TABLE[report.semiedges][1]
