import math
import random

import pytest

import oracles
from coocnet.reference import (
    EARTH_RADIUS_KM,
    CategoryMatrix,
    GeoTable,
    category_cosine,
    geo_distance,
    haversine_km,
    load_categories,
    load_geo_table,
    nonzero_partner_count,
)

QUARTER = math.pi * EARTH_RADIUS_KM / 2
HALF = math.pi * EARTH_RADIUS_KM


# -- category cosine ----------------------------------------------------------


def test_identical_category_sets():
    m = CategoryMatrix({"u": {"a", "b"}, "v": {"a", "b"}})
    assert m.cosine("u", "v") == pytest.approx(1.0)


def test_disjoint_category_sets():
    m = CategoryMatrix({"u": {"a"}, "v": {"b"}})
    assert m.cosine("u", "v") == 0.0


def test_partial_overlap_value():
    m = CategoryMatrix({"u": {"a", "b"}, "v": {"b", "c", "d"}})
    assert m.cosine("u", "v") == pytest.approx(1 / (math.sqrt(2) * math.sqrt(3)), abs=1e-12)
    assert category_cosine(m, "u", "v") == m.cosine("u", "v")


def test_cosine_bounds_and_symmetry():
    rng = random.Random(7)
    cats = [f"c{i}" for i in range(10)]
    m = CategoryMatrix({f"e{i}": set(rng.sample(cats, rng.randint(1, 5))) for i in range(12)})
    entities = m.entities()
    for _ in range(40):
        u, v = rng.sample(entities, 2)
        value = m.cosine(u, v)
        assert 0.0 <= value <= 1.0 + 1e-12
        assert value == m.cosine(v, u)


def test_cosine_matches_bipartite_graph_cosine():
    # the category cosine must agree with the unweighted graph cosine applied
    # to the entity-category incidence as a bipartite graph
    rng = random.Random(13)
    cats = [f"cat:{i}" for i in range(8)]
    assignments = {f"e{i}": set(rng.sample(cats, rng.randint(1, 4))) for i in range(10)}
    m = CategoryMatrix(assignments)
    edges = [(e, c, 1) for e, cs in assignments.items() for c in cs]
    vertices = list(assignments) + cats
    for _ in range(30):
        u, v = rng.sample(list(assignments), 2)
        expected = oracles.similarity_oracle(edges, vertices, "cosine", u, v)
        assert m.cosine(u, v) == pytest.approx(expected, abs=1e-12)


def test_unknown_entity_raises():
    m = CategoryMatrix({"u": {"a"}})
    with pytest.raises(KeyError):
        m.cosine("u", "nope")


def test_entities_without_categories_excluded():
    m = CategoryMatrix({"u": {"a"}, "empty": set()})
    assert "empty" not in m
    assert len(m) == 1


# -- partner counts ------------------------------------------------------------


def test_partner_count_direct():
    m = CategoryMatrix({"u": {"a"}, "v": {"a"}, "w": {"a"}, "x": {"a"}, "y": {"z"}})
    assert m.partner_count("u") == 3
    assert nonzero_partner_count(m, "u") == 3


def test_partner_count_isolated():
    m = CategoryMatrix({"u": {"a"}, "v": {"b"}})
    assert m.partner_count("u") == 0


def test_partner_count_matches_brute_force():
    rng = random.Random(3)
    cats = [f"c{i}" for i in range(6)]
    m = CategoryMatrix({f"e{i}": set(rng.sample(cats, rng.randint(1, 3))) for i in range(15)})
    for u in m.entities():
        brute = sum(1 for v in m.entities() if v != u and m.cosine(u, v) > 0)
        assert m.partner_count(u) == brute


# -- geo distance -----------------------------------------------------------------


def test_same_point_zero():
    assert haversine_km(12.3, 45.6, 12.3, 45.6) == 0.0


def test_quarter_great_circle():
    assert abs(haversine_km(0.0, 0.0, 0.0, 90.0) - QUARTER) < 0.01
    assert abs(haversine_km(0.0, 0.0, 90.0, 0.0) - QUARTER) < 0.01


def test_half_great_circle():
    assert abs(haversine_km(0.0, 0.0, 0.0, 180.0) - HALF) < 0.01


def test_symmetry_exact_on_random_pairs():
    rng = random.Random(5)
    for _ in range(500):
        lat1, lat2 = rng.uniform(-90, 90), rng.uniform(-90, 90)
        lon1, lon2 = rng.uniform(-179.9, 180), rng.uniform(-179.9, 180)
        assert haversine_km(lat1, lon1, lat2, lon2) == haversine_km(lat2, lon2, lat1, lon1)


def test_triangle_inequality_on_random_triples():
    rng = random.Random(9)
    for _ in range(2000):
        pts = [(rng.uniform(-90, 90), rng.uniform(-179.9, 180)) for _ in range(3)]
        ab = haversine_km(*pts[0], *pts[1])
        bc = haversine_km(*pts[1], *pts[2])
        ac = haversine_km(*pts[0], *pts[2])
        assert ac <= ab + bc + 1e-6


def test_geo_table_lookup_and_distance():
    table = GeoTable({"x": (0.0, 0.0), "y": (0.0, 90.0)})
    assert abs(table.distance("x", "y") - QUARTER) < 0.01
    assert geo_distance(table, "x", "y") == table.distance("x", "y")
    with pytest.raises(KeyError):
        table.distance("x", "nope")


def test_geo_table_range_validation():
    with pytest.raises(ValueError):
        GeoTable({"bad": (91.0, 0.0)})
    with pytest.raises(ValueError):
        GeoTable({"bad": (0.0, -180.0)})


# -- loaders -----------------------------------------------------------------------


def test_load_categories(tmp_path):
    path = tmp_path / "cats.tsv"
    path.write_text("# header\nu\ta\nu\tb\nv\tb\n", encoding="utf-8")
    m = load_categories(path)
    assert m.categories("u") == {"a", "b"}
    assert m.cosine("u", "v") == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_load_categories_bad_row(tmp_path):
    path = tmp_path / "cats.tsv"
    path.write_text("u\ta\tb\n", encoding="utf-8")
    with pytest.raises(ValueError, match=":1"):
        load_categories(path)


def test_load_geo_table(tmp_path):
    path = tmp_path / "geo.tsv"
    path.write_text("x\t0.0\t0.0\ny\t0.0\t90.0\n", encoding="utf-8")
    table = load_geo_table(path)
    assert abs(table.distance("x", "y") - QUARTER) < 0.01


def test_load_geo_duplicate_entity_rejected(tmp_path):
    path = tmp_path / "geo.tsv"
    path.write_text("x\t0.0\t0.0\nx\t1.0\t1.0\n", encoding="utf-8")
    with pytest.raises(ValueError, match="duplicate"):
        load_geo_table(path)


def test_load_geo_bad_coordinates_rejected(tmp_path):
    path = tmp_path / "geo.tsv"
    path.write_text("x\tnorth\t0.0\n", encoding="utf-8")
    with pytest.raises(ValueError, match=":1"):
        load_geo_table(path)


def test_load_geo_out_of_range_rejected(tmp_path):
    path = tmp_path / "geo.tsv"
    path.write_text("x\t95.0\t0.0\n", encoding="utf-8")
    with pytest.raises(ValueError, match="latitude"):
        load_geo_table(path)
