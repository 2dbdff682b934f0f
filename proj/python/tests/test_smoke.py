import pytest

geolog = pytest.importorskip("geolog")

PLANE = {
    "fan": {
        "lattice_rank": 2,
        "rays": [[1, 0], [0, 1], [-1, -1]],
        "cones": [[0, 1], [0, 2], [1, 2]],
    }
}

GERM = {
    "fan": {
        "lattice_rank": 2,
        "rays": [[-1, 3], [0, 1], [1, 0]],
        "cones": [[0, 1], [1, 2]],
        "relative_support": {
            "lattice_rank": 2,
            "rays": [[-1, 3], [1, 0]],
            "cones": [[0, 1]],
            "map": [[1, 0], [0, 1]],
        },
    },
    "components": [{"coefficients": ["0", "1", "0"], "id": "E"}],
}

CREMONA = {
    "surface": {
        "rank": 4,
        "gram": [
            ["1", "0", "0", "0"],
            ["0", "-1", "0", "0"],
            ["0", "0", "-1", "0"],
            ["0", "0", "0", "-1"],
        ],
        "canonical": ["-3", "1", "1", "1"],
        "curves": [
            ["0", "1", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
            ["1", "-1", "-1", "0"],
            ["1", "-1", "0", "-1"],
            ["1", "0", "-1", "-1"],
        ],
        "labels": ["e1", "e2", "e3", "l12", "l13", "l23"],
    },
    "components": [
        {"class": ["4", "0", "0", "0"], "id": "D1"},
        {"class": ["8", "-4", "-4", "-4"], "id": "D2"},
    ],
}


def test_validate_fan():
    report = geolog.validate_fan(PLANE)
    assert report["ok"] is True
    assert report["q_factorial"] is True
    assert report["projective"] is True
    assert report["rays"] == 3


def test_bad_fan_rejected():
    bad = {"fan": {"lattice_rank": 2, "rays": [[1, 0], [2, 0]], "cones": [[0, 1]]}}
    with pytest.raises(Exception):
        geolog.validate_fan(bad)


def test_cones_of_plane():
    report = geolog.cones(PLANE)
    # Picard rank one: nef, mobile, and effective all collapse to a half-line
    assert report["nef"]["rays"] == report["effective"]["rays"]
    assert report["nef"]["rays"] == report["mobile"]["rays"]


def test_germ_geography_three_chambers():
    g = geolog.geography(GERM)
    assert g["chambers"] == 3
    walls = [(w["normal"], w["offset"]) for w in g["walls"]]
    assert (["3"], "1") in walls


def test_mmp_on_nef_divisor_stops_immediately():
    trace = geolog.mmp(PLANE, [1, 1, 1])
    assert trace["step_count"] == 0
    assert trace["fibration"] is False
    assert trace["final_divisor"] == ["1", "1", "1"]


def test_zariski_surface_split():
    from fractions import Fraction

    def f(s):
        return Fraction(s)

    z = geolog.zariski(CREMONA, ["1", "0", "0", "2"])
    pos, neg = z["positive"], z["negative"]
    # the two parts sum back to the input, exactly

    for a, b, c in zip(pos, neg, ["1", "0", "0", "2"]):
        assert f(a) + f(b) == f(c)
    assert any(f(x) != 0 for x in neg)


def test_render_svg():
    svg = geolog.render_svg(GERM)
    assert svg.startswith("<svg") or "<svg" in svg
    assert "</svg>" in svg


def test_rational_coercion():
    # fractions and floats with exact binary representation are accepted
    from fractions import Fraction

    trace = geolog.mmp(PLANE, [Fraction(1, 2), 1, "3/2"])
    assert trace["final_divisor"] == ["1/2", "1", "3/2"]
