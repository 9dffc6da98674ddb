from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negafont.fonts import (
    enumerate_fonts,
    find_font,
    font_at,
    font_census,
    font_count,
    font_total_identity,
)
from negafont.ketparse import parse_state
from negafont.negativity import min_eigenvalue
from negafont.ptranspose import global_pt
from negafont.qstate import hamming, make_state, random_state

from oracles import GHZ3, TABLE1, W3, brute_minors


def test_three_qubit_font_list():
    fonts = enumerate_fonts(random_state(3, 0), 1)
    assert len(fonts) == 6
    assert sorted(f.k for f in fonts) == [2, 2, 2, 2, 3, 3]


def test_ghz4_single_four_way_font():
    fonts = enumerate_fonts(make_state(4, [("0000", 1), ("1111", 1)]), 1, 4)
    assert len(fonts) == 4
    dets = sorted(abs(f.det) for f in fonts)
    assert dets[:3] == [0, 0, 0] and dets[3] == pytest.approx(0.5)


def test_w3_three_way_fonts_vanish():
    assert all(f.det == 0 for f in enumerate_fonts(parse_state(W3), 1, 3))


def test_named_three_qubit_determinants():
    # D^{000} = a000 a111 - a100 a011 and D^{001} = a001 a110 - a101 a010 for p = 1
    s = random_state(3, 4)
    a = {format(i, "03b"): s.amps[i] for i in range(8)}
    assert font_at(s, 1, "000").det == pytest.approx(a["000"] * a["111"] - a["100"] * a["011"], abs=1e-15)
    assert font_at(s, 1, "001").det == pytest.approx(a["001"] * a["110"] - a["101"] * a["010"], abs=1e-15)
    d30 = find_font(s, 1, [1, 2], {3: 0}).det
    assert d30 == pytest.approx(a["000"] * a["110"] - a["100"] * a["010"], abs=1e-15)


@pytest.mark.parametrize("name,counts", [("CII", {3: 1, 2: 0}), ("CI", {3: 1, 2: 1}), ("CIII", {3: 0, 2: 2})])
def test_table1_census(name, counts):
    assert font_census(parse_state(TABLE1[name]), 1).counts == counts


def test_ci_determinant_values():
    s = parse_state(TABLE1["CI"])
    assert font_at(s, 1, "000").det == pytest.approx(1 / 3)
    two_way = [f.det for f in enumerate_fonts(s, 1, 2) if abs(f.det) > 1e-12]
    assert two_way == [pytest.approx(1 / 3)] or two_way == [pytest.approx(-1 / 3)]


def test_font_geometry():
    s = random_state(5, 9)
    for p in (1, 3, 5):
        for f in enumerate_fonts(s, p):
            (i00, i01), (i10, i11) = f.indices(5)
            assert len({i00, i01, i10, i11}) == 4
            assert hamming(i00, i10) == hamming(i01, i11) == 1
            assert hamming(i00, i01) == hamming(i10, i11) == f.k - 1
            assert hamming(i00, i11) == hamming(i10, i01) == f.k
            assert s.amps[i00] == f.entries[0, 0] and s.amps[i11] == f.entries[1, 1]
            assert f.det == f.entries[0, 0] * f.entries[1, 1] - f.entries[1, 0] * f.entries[0, 1]
            assert p in f.flips and len(f.spectators) == 5 - f.k


@pytest.mark.parametrize("n", range(2, 7))
def test_counts_exhaustive(n):
    s = random_state(n, n)
    for p in range(1, n + 1):
        fonts = enumerate_fonts(s, p)
        assert len(fonts) == comb(2 ** (n - 1), 2)
        for k in range(2, n + 1):
            assert sum(f.k == k for f in fonts) == font_count(n, k) == comb(n - 1, k - 1) * 2 ** (n - 2)
            assert len(enumerate_fonts(s, p, k)) == font_count(n, k)


@pytest.mark.parametrize("n", range(2, 6))
def test_determinants_match_minor_oracle(n):
    s = random_state(n, 100 + n)
    for p in range(1, n + 1):
        fonts = enumerate_fonts(s, p)
        oracle = brute_minors(s.amps, n, p)
        assert np.allclose(np.sort([f.det for f in fonts]), np.sort([d for _, d in oracle]), atol=1e-15)
        for k in range(2, n + 1):
            ours = np.sort([f.det for f in fonts if f.k == k])
            theirs = np.sort([d for kk, d in oracle if kk == k])
            assert np.allclose(ours, theirs, atol=1e-15)


def test_enumeration_is_sorted_and_deterministic():
    s = random_state(4, 1)
    a = enumerate_fonts(s, 2)
    keys = [(f.flips, f.spectators, f.base) for f in a]
    assert keys == sorted(keys)
    assert keys == [(f.flips, f.spectators, f.base) for f in enumerate_fonts(s, 2)]


def test_identity_examples():
    lhs, rhs = font_total_identity(parse_state(GHZ3), 1)
    assert lhs == pytest.approx(1, abs=1e-10) and rhs == pytest.approx(1, abs=1e-12)
    lhs, rhs = font_total_identity(parse_state(W3), 1)
    assert lhs == pytest.approx(8 / 9, abs=1e-10) and rhs == pytest.approx(8 / 9, abs=1e-12)
    lhs, rhs = font_total_identity(make_state(3, [("011", 1)]), 2)
    assert lhs == pytest.approx(0, abs=1e-12) and rhs == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_spectrum_link(n, seed):
    s = random_state(n, seed)
    for p in range(1, n + 1):
        c = font_census(s, p)
        assert c.total_sq <= 0.25 + 1e-12
        assert min_eigenvalue(global_pt(s, p)) == pytest.approx(-np.sqrt(c.total_sq), abs=1e-10)
        for k in range(2, n + 1):
            assert c.counts[k] <= font_count(n, k)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.floats(1e-14, 1e-2), st.floats(1e-14, 1e-2))
def test_census_monotone_in_tolerance(seed, t1, t2):
    t1, t2 = sorted((t1, t2))
    # sparse-ish state so some determinants are small
    s = random_state(4, seed)
    amps = s.amps * (np.abs(s.amps) > 0.15)
    if not amps.any():
        return
    s = make_state(4, enumerate(amps))
    for p in range(1, 5):
        a, b = font_census(s, p, t1).counts, font_census(s, p, t2).counts
        assert all(a[k] >= b[k] for k in a)


def test_font_json_record():
    rec = font_at(parse_state(GHZ3), 1, "000").to_json()
    assert set(rec) == {"p", "K", "flips", "spectators", "base", "entries", "det"}
    assert rec["K"] == 3 and rec["flips"] == [1, 2, 3] and rec["spectators"] == {}
    assert rec["det"] == [pytest.approx(0.5), 0.0]
    assert len(rec["entries"]) == 4
