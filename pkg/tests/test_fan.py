import pytest

from hyperconifold.classify import diagram_of
from hyperconifold.fan import Cone, Fan, hyperconifold_fan, multiplicity, smoothness, verify_parametrizations
from hyperconifold.resolve import crepant_resolution, interior_points


def test_multiplicity():
    assert multiplicity(Cone(((1, 0, 0), (1, 1, 0), (1, 0, 1)))) == 1
    assert multiplicity(Cone(((1, 0, 0), (1, 1, 0), (1, 2, 5)))) == 5
    with pytest.raises(ValueError, match="full-dimensional"):
        multiplicity(Cone(((1, 0, 0), (1, 1, 0))))


def test_star_subdivision_of_parallelogram_gives_four_cones():
    f = hyperconifold_fan(5, 2)
    g = f.star_subdivision(interior_points((5, 2))[0])
    assert len(g.maximal_cones) == 4 and g.is_simplicial
    assert g.has_proper_intersections()


def test_star_in_cone_interior_and_on_wall():
    f = Fan.from_triangles([((0, 0), (3, 0), (0, 3))])
    g = f.star_subdivision((1, 1, 1))
    assert len(g.maximal_cones) == 3
    h = Fan.from_triangles([((0, 0), (2, 0), (0, 2)), ((2, 0), (2, 2), (0, 2))])
    w = h.star_subdivision((1, 1, 1))  # midpoint of the shared diagonal
    assert len(w.maximal_cones) == 4


def test_star_subdivision_edge_cases():
    f = hyperconifold_fan(3, 1)
    assert f.star_subdivision((1, 0, 0)) == f
    with pytest.raises(ValueError):
        f.star_subdivision((1, 5, 1))


def test_smoothness():
    ok, why = smoothness(hyperconifold_fan(1, 0))
    assert not ok and why == "non-simplicial"
    assert smoothness(crepant_resolution((5, 2)).fan) == (True, "smooth")
    assert smoothness(Fan.from_triangles([((0, 0), (1, 0), (0, 1))]))[0]


def test_height_one_slice():
    d = hyperconifold_fan(1, 0).height_one_slice()
    assert sorted(d.polygon_vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    d = hyperconifold_fan(5, 2).height_one_slice()
    assert sorted(d.polygon_vertices) == [(0, 0), (1, 0), (2, 5), (3, 5)]
    assert len(crepant_resolution((3, 1)).fan.height_one_slice().triangles) == 6
    assert d.polygon_vertices == diagram_of(5, 2).polygon_vertices or sorted(d.polygon_vertices) == sorted(
        diagram_of(5, 2).polygon_vertices
    )


def test_parametrizations():
    assert verify_parametrizations()
