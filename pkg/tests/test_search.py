"""Sweep engine: brute-force agreement, prune soundness, determinism across
worker counts, budget refusal, filters, and the raw families."""

import json

import pytest

from aopseq.aop import check_aop
from aopseq.indexfn import PolyIndex, generate_poly_array
from aopseq.quaternion import QuaternionSequence, quat_is_perfect
from aopseq.search import (
    BudgetExceeded,
    SearchSpec,
    _collapse_leading_tuples,
    enumerate_floored,
    enumerate_poly,
    enumerate_raw,
    run_search,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(family="nope", n=2)
    with pytest.raises(ValueError):
        SearchSpec(family="poly", n=0)
    with pytest.raises(ValueError):
        SearchSpec(family="floored", n=2, k=0)
    with pytest.raises(ValueError):
        SearchSpec(family="poly", n=2, restriction="collapse")
    with pytest.raises(ValueError):
        SearchSpec(family="floored", n=2, k=2, deg_x=3, restriction="collapse")
    with pytest.raises(ValueError):
        SearchSpec(family="raw-quaternion", length=0)
    with pytest.raises(ValueError):
        SearchSpec(family="raw-phase", n=2, length=4, symmetry="phase-shift")
    with pytest.raises(ValueError):
        SearchSpec(family="poly", n=2, budget=0)
    with pytest.raises(ValueError):
        SearchSpec(family="poly", n=2, filter_mod=2, filter_residue=5)


def test_family_wrappers_reject_mismatches():
    poly = SearchSpec(family="poly", n=2)
    floored = SearchSpec(family="floored", n=2, k=2)
    raw = SearchSpec(family="raw-phase", n=2, length=2)
    with pytest.raises(ValueError):
        enumerate_poly(floored)
    with pytest.raises(ValueError):
        enumerate_floored(poly)
    with pytest.raises(ValueError):
        enumerate_raw(poly)
    assert enumerate_poly(poly).total_candidates == 512  # 2^9 bi-quadratics
    assert enumerate_raw(raw).total_candidates == 4


def brute_force_hits(n, deg_x, deg_y, r_range, c_range):
    """Reference: regenerate every array directly and run the public check."""
    m = n
    width = (deg_x + 1) * (deg_y + 1)
    found = []
    for idx in range(m**width):
        vec = []
        rem = idx
        for _ in range(width):
            vec.append(rem % m)
            rem //= m
        vec.reverse()
        p = PolyIndex.from_coeff_vector(m, deg_x, deg_y, vec)
        for R in range(r_range[0], r_range[1] + 1):
            for C in range(c_range[0], c_range[1] + 1):
                if check_aop(generate_poly_array(p, R, C)).holds:
                    found.append((tuple(vec), R, C))
    return found


def test_sweep_agrees_with_brute_force():
    """Bilinear polynomials over n=2 with C ranging past the period: the
    engine's prune and tile logic must reproduce plain enumeration."""
    spec = SearchSpec(
        family="poly", n=2, deg_x=1, deg_y=1, r_range=(1, 4), c_range=(1, 5)
    )
    report = run_search(spec)
    want = brute_force_hits(2, 1, 1, (1, 4), (1, 5))
    got = [(tuple(h["vector"]), h["rows"], h["cols"]) for h in report.hits]
    assert got == want
    assert report.hits_total == len(want)
    assert report.total_candidates == 16


def test_determinism_across_worker_counts():
    specs = [
        SearchSpec(
            family="poly",
            n=2,
            deg_x=2,
            deg_y=2,
            r_range=(1, 6),
            c_range=(1, 6),
            workers=w,
        )
        for w in (1, 2, 3)
    ]
    outputs = [run_search(s).canonical_json() for s in specs]
    assert outputs[0] == outputs[1] == outputs[2]


def test_budget_refusal_names_exact_count():
    spec = SearchSpec(family="poly", n=3, deg_x=2, deg_y=2, budget=100)
    with pytest.raises(BudgetExceeded) as exc:
        run_search(spec)
    assert exc.value.count == 3**9
    assert exc.value.budget == 100
    assert str(3**9) in str(exc.value)


def test_empty_dimension_ranges_yield_empty_report():
    spec = SearchSpec(
        family="poly", n=2, deg_x=1, deg_y=1, r_range=(3, 2), c_range=(1, 2)
    )
    report = run_search(spec)
    assert report.total_candidates == 0
    assert report.hits == [] and report.hits_total == 0


def test_filter_mod_partitions_the_space():
    base = dict(family="poly", n=2, deg_x=2, deg_y=1, r_range=(1, 4), c_range=(1, 4))
    full = run_search(SearchSpec(**base))
    parts = [
        run_search(SearchSpec(**base, filter_mod=3, filter_residue=r))
        for r in range(3)
    ]
    assert sum(p.total_candidates for p in parts) == full.total_candidates
    assert sum(p.hits_total for p in parts) == full.hits_total
    merged = {}
    for p in parts:
        for key, c in p.hit_histogram.items():
            merged[key] = merged.get(key, 0) + c
    assert merged == full.hit_histogram


def test_phase_shift_symmetry_counts():
    """Canonicalising the constant coefficient keeps exactly one candidate
    per orbit; for poly over n the orbit size is n."""
    base = dict(family="poly", n=2, deg_x=2, deg_y=2, r_range=(1, 4), c_range=(1, 4))
    full = run_search(SearchSpec(**base))
    reduced = run_search(SearchSpec(**base, symmetry="phase-shift"))
    assert full.total_candidates == 2 * reduced.total_candidates
    # a global phase never changes an AOP verdict
    assert full.hits_total == 2 * reduced.hits_total
    for key, c in reduced.hit_histogram.items():
        assert full.hit_histogram[key] == 2 * c


def test_floored_with_unit_divisor_matches_poly():
    """n=1 makes floor(p/1) mod K the plain polynomial construction over K,
    so both engines must find identical structures."""
    fl = run_search(
        SearchSpec(
            family="floored", n=1, k=3, deg_x=1, deg_y=1, r_range=(1, 4), c_range=(1, 4)
        )
    )
    po = run_search(
        SearchSpec(
            family="poly", n=3, deg_x=1, deg_y=1, r_range=(1, 4), c_range=(1, 4)
        )
    )
    assert fl.total_candidates == po.total_candidates == 81
    assert fl.hits_total == po.hits_total
    assert fl.hit_histogram == po.hit_histogram
    assert [(h["vector"], h["rows"], h["cols"]) for h in fl.hits] == [
        (h["vector"], h["rows"], h["cols"]) for h in po.hits
    ]


def test_collapse_restriction_subsets_full_sweep():
    base = dict(
        family="floored", n=2, k=2, deg_x=2, deg_y=2, r_range=(1, 4), c_range=(1, 4)
    )
    full = run_search(SearchSpec(**base))
    restricted = run_search(SearchSpec(**base, restriction="collapse"))
    assert restricted.total_candidates < full.total_candidates
    assert restricted.hits_total <= full.hits_total
    # every restricted hit is flagged as collapsing
    assert all(h["collapse"] for h in restricted.hits)
    # and the restriction enumerates exactly the A = 0 (mod n) suffixes
    lead = _collapse_leading_tuples(4, 2, 3)
    assert restricted.total_candidates == (4**6) * len(lead)


def test_floored_hits_report_base_square_flag():
    spec = SearchSpec(
        family="floored", n=2, k=2, deg_x=2, deg_y=2, r_range=(2, 2), c_range=(2, 2)
    )
    report = run_search(spec)
    assert report.hits, "expected 2x2 structures over the floored alphabet"
    for h in report.hits:
        assert h["exceeds_base_square"] == (h["rows"] * h["cols"] > 4)


def test_raw_phase_frozen_results():
    report = run_search(SearchSpec(family="raw-phase", n=2, length=4))
    assert report.total_candidates == 16
    assert report.hits_total == 8
    assert {tuple(h["exponents"]) for h in report.hits} == {
        (0, 0, 0, 1),
        (0, 0, 1, 0),
        (0, 1, 0, 0),
        (0, 1, 1, 1),
        (1, 0, 0, 0),
        (1, 0, 1, 1),
        (1, 1, 0, 1),
        (1, 1, 1, 0),
    }
    for h in report.hits:
        assert h["aop_divisors"] == [1, 2]


def test_raw_phase_length_two_has_no_hits():
    # theta(1) = w^(e0-e1) + w^(e1-e0) is -2 or 2 over the binary alphabet
    report = run_search(SearchSpec(family="raw-phase", n=2, length=2))
    assert report.hits_total == 0
    # a single element is vacuously perfect
    singles = run_search(SearchSpec(family="raw-phase", n=2, length=1))
    assert singles.hits_total == 2


def test_raw_quaternion_funnel_against_direct():
    report = run_search(SearchSpec(family="raw-quaternion", length=4))
    assert report.total_candidates == 4096
    assert report.convention_counts == {"right": 128, "left": 128}
    symbols = {tuple(h["symbols"]) for h in report.hits}
    assert ("i", "j", "i", "-j") in symbols
    # cross-check a slice of the hit list directly
    for h in report.hits[:16]:
        seq = QuaternionSequence.from_symbols(h["symbols"])
        for conv in h["conventions"]:
            assert quat_is_perfect(seq, conv)
    # and spot-check that non-hits are truly not perfect
    assert not quat_is_perfect(
        QuaternionSequence.from_symbols(["1", "1", "1", "1"]), "right"
    )


def test_canonical_json_shape():
    report = run_search(SearchSpec(family="raw-phase", n=2, length=2))
    data = json.loads(report.canonical_json())
    assert data["family"] == "raw-phase"
    assert "wall_time_s" not in data
    assert "workers" not in data
    assert "worker_chunks" not in data
    assert "audit_checked" not in data
    assert data["total_candidates"] == 4
    # canonical output is stable through a round trip
    assert (
        json.dumps(data, sort_keys=True, indent=2) + "\n" == report.canonical_json()
    )


def test_hit_limit_caps_list_not_tallies():
    spec = SearchSpec(
        family="poly", n=2, deg_x=2, deg_y=2, r_range=(1, 1), c_range=(1, 1),
        hit_limit=10,
    )
    report = run_search(spec)
    # every candidate is a vacuous 1x1 hit; the list is capped, the counts not
    assert len(report.hits) == 10
    assert report.hits_total == 512
    assert report.hit_histogram == {"1x1": 512}
