import pytest

from hyperconifold.groups import FiniteGroup, cyclic_group
from hyperconifold.transition import DomainError, HodgeData, hodge_after, transition_report


def test_hodge_after():
    assert hodge_after(HodgeData(1, 21), 5) == HodgeData(5, 20)
    assert hodge_after(HodgeData(1, 3), 10) == HodgeData(10, 2)
    assert hodge_after(HodgeData(1, 4), 4) == HodgeData(4, 3)
    with pytest.raises(DomainError, match="no modulus"):
        hodge_after(HodgeData(3, 0), 2)


def test_euler_change_is_2n():
    for n in range(1, 15):
        b = HodgeData(2, 7)
        a = hodge_after(b, n)
        assert a.chi - b.chi == 2 * n
        assert (a.h11 - b.h11) - (a.h21 - b.h21) == n


def test_reports():
    r = transition_report((5, 2), HodgeData(1, 21), cyclic_group(5), [1])
    assert r.after == HodgeData(5, 20) and r.pi1_after == "trivial" and r.euler_change == 10
    assert r.tensor.size == 4

    g = FiniteGroup.from_presentation(["g10", "g2"], ["g10^10", "g2^2", "g10 g2 = g2 g10"])
    r = transition_report((10, 3), HodgeData(1, 3), g, [g.evaluate("g10")])
    assert r.after == HodgeData(10, 2) and r.pi1_after == "Z2"

    d = FiniteGroup.from_presentation(["g3", "g4"], ["g3^3", "g4^4", "g4^-1 g3 g4 = g3^2"])
    r = transition_report((4, 1), HodgeData(1, 4), d, [d.evaluate("g4")])
    assert r.after == HodgeData(4, 3) and r.pi1_after == "trivial" and r.pi1_before == "Dic3"


def test_conifold_report_uses_small_resolution():
    r = transition_report((1, 0), HodgeData(1, 5), cyclic_group(1), [0])
    assert r.after == HodgeData(1, 4) and len(r.resolution.fan.maximal_cones) == 2
