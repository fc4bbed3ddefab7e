from seqwit.models import StridedTail
from seqwit.residues import common_progression, crt_pair, first_at_least, lcm


def test_lcm():
    assert lcm(4, 6) == 12
    assert lcm(3) == 3
    assert lcm() == 1


def test_crt_pair_compatible_and_incompatible():
    assert crt_pair(1, 4, 3, 6) == (9, 12)
    assert crt_pair(0, 2, 1, 2) is None
    assert crt_pair(2, 6, 0, 3) is None


def test_crt_pair_divisible_moduli():
    assert crt_pair(1, 2, 1, 1) == (1, 2)
    assert crt_pair(5, 3, 2, 6) == (2, 6)


def test_first_at_least():
    assert first_at_least(1, 4, 10) == 13
    assert first_at_least(2, 4, 10) == 10


def test_common_progression_even_and_multiples_of_three():
    t = common_progression(StridedTail(2, 2), StridedTail(3, 3))
    assert t == StridedTail(6, 6)


def test_common_progression_disjoint_residues():
    assert common_progression(StridedTail(1, 2), StridedTail(2, 2)) is None


def test_common_progression_keeps_exclusions_on_the_result():
    t = common_progression(StridedTail(1, 1, frozenset({4})), StridedTail(2, 2))
    assert t.start == 2
    assert not t.contains(4)
    assert t.contains(6)

