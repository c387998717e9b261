import json
import re

import pytest

import kagome


def test_region_and_tiling_basics():
    r = kagome.make_region("lozenge:3")
    assert r.num_hexes == 9
    t = kagome.find_tiling(r)
    assert len(t.assign) == 18
    assert t.heights()[0] is not None
    back = kagome.tiling_from_json(t.to_json())
    assert back.assign == t.assign


def test_bad_region_spec():
    with pytest.raises(ValueError):
        kagome.make_region("circle:3")


def test_graph_stats_and_mixing():
    s = kagome.graph_stats("lozenge:2")
    assert s["schema_version"] == kagome.SCHEMA_VERSION
    assert s["nodes"] == 11
    assert s["diameter"] == 6
    assert kagome.mixing_time(kagome.make_region("lozenge:2"), "general") == 26


def test_ledger_exact_values():
    assert kagome.ledger("witness")["worst"]["times_inner_vertices"] == "1"
    assert kagome.ledger("witness", "weighted:1/3")["worst"]["times_inner_vertices"] == "-3/10"
    assert kagome.ledger("witness", "restrained")["worst"]["times_inner_vertices"] == "-1"


def test_sampling_is_deterministic():
    a, window, steps = kagome.sample("nonflat:4", "general", seed=5)
    b, _, _ = kagome.sample("nonflat:4", "general", seed=5)
    assert a == b
    assert window >= 1 and steps >= window
    assert kagome.forward_coupling_time(kagome.make_region("lozenge:3"), "general", 1) > 0


def test_render_covers_region():
    r = kagome.make_region("square:4")
    t = kagome.run(kagome.find_tiling(r), "general", 2000, 3)
    svg = kagome.render_svg(t, flips=True)
    assert svg.count("<path") == 16
    assert "<circle" in svg
    style = json.dumps({"scale": 30})
    assert 'width="' in kagome.render_svg(t, style)


def test_peel_and_verify():
    peel = kagome.contour_peel_minimal(kagome.make_region("lozenge:6"))
    assert peel.fish_count() == 0
    assert kagome.is_minimal_restrained(peel)
    names = [row[0] for row in kagome.verify(2000, 1)]
    assert "order_preservation" in names
