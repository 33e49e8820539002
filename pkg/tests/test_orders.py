"""Orders, HNF/SNF plumbing at the order level, quotients, and the probe."""

import pytest

import oracles
from ringsieve.catalog import dual_numbers, order_z2i, order_zi
from ringsieve.errors import (
    NotAnIdeal,
    NotAssociative,
    NotCommutative,
    RankDeficient,
    ZeroRingRejected,
)
from ringsieve.localstruct import classify
from ringsieve.orders import (
    IntegerLattice,
    OrderPresentation,
    format_order_text,
    lattice_intersect,
    nonmaximality_probe,
    order_ideal,
    order_quotient,
    parse_order_text,
    push_to_quotient,
    rogers_check_order,
    validate_order,
)
from ringsieve.rings import make_cyclic, make_product


@pytest.fixture(scope="module")
def z2i():
    return order_z2i()


@pytest.fixture(scope="module")
def zi():
    return order_zi()


def test_validate_z2i(z2i):
    assert z2i.rank == 2
    assert z2i.mul((0, 1), (0, 1)) == (-4, 0)
    assert z2i.mul((2, 3), (5, -1)) == (10 + 12, 15 - 2)  # (2+3t)(5-t), t^2=-4


def test_validate_idempotent_generator_order():
    # t^2 = t is a legitimate commutative associative table
    order = validate_order(OrderPresentation(rank=2, table={(1, 1): (0, 1)}))
    assert order.mul((0, 1), (0, 1)) == (0, 1)


def test_noncommutative_table_rejected():
    with pytest.raises(NotCommutative):
        validate_order(
            OrderPresentation(
                rank=3,
                table={
                    (1, 1): (1, 0, 0),
                    (1, 2): (0, 1, 0),
                    (2, 1): (0, 0, 1),
                    (2, 2): (1, 0, 0),
                },
            )
        )


def test_nonassociative_table_rejected():
    # x*x = y, x*y = x, y*y = 0 fails associativity
    with pytest.raises(NotAssociative):
        validate_order(
            OrderPresentation(
                rank=3,
                table={
                    (1, 1): (0, 0, 1),
                    (1, 2): (0, 1, 0),
                    (2, 2): (0, 0, 0),
                },
            )
        )


def test_order_ideal_principal_two(z2i):
    lat = order_ideal(z2i, [(2, 0)])
    assert lat.basis == ((2, 0), (0, 2))
    assert lat.index == 4


def test_order_ideal_two_generators(z2i):
    # closure rows are (2,1), (-4,2), (4,0), (0,4); HNF is ((2,1),(0,2))
    lat = order_ideal(z2i, [(2, 1), (4, 0)])
    assert lat.basis == ((2, 1), (0, 2))
    assert lat.index == 4
    for row in [(2, 1), (-4, 2), (4, 0), (0, 4)]:
        assert lat.contains(row)


def test_order_ideal_rejects_zero(z2i):
    with pytest.raises(RankDeficient):
        order_ideal(z2i, [(0, 0)])
    with pytest.raises(RankDeficient):
        order_ideal(z2i, [])


def test_lattice_intersections(z2i):
    i1 = order_ideal(z2i, [(2, 0)])
    i2 = order_ideal(z2i, [(0, 1)])
    assert i2.basis == ((4, 0), (0, 1))
    i12 = lattice_intersect(i1, i2)
    assert i12.basis == ((4, 0), (0, 2)) and i12.index == 8
    assert lattice_intersect(i1, i1) == i1
    i3 = order_ideal(z2i, [(2, 1), (4, 0)])
    common = lattice_intersect(i12, i3)
    # canonical form of the same lattice as rows ((4,2),(0,2))
    assert common.basis == ((4, 0), (0, 2)) and common.index == 8


def test_order_quotient_by_two(z2i):
    ring, proj = order_quotient(z2i, order_ideal(z2i, [(2, 0)]))
    assert ring.order == 4
    verdict = classify(ring)
    assert verdict.is_chain_local_product and len(verdict.per_factor) == 1
    # oracle: exhaustive isomorphism search against F_2[t]/(t^2)
    assert oracles.unit_preserving_isomorphism_exists(ring, dual_numbers(2))
    assert not oracles.unit_preserving_isomorphism_exists(ring, make_cyclic(4))


def test_order_quotient_by_common_intersection(z2i):
    lat = IntegerLattice(((4, 0), (0, 2)))
    ring, _ = order_quotient(z2i, lat)
    assert ring.order == 8


def test_order_quotient_rejects_unit_lattice(z2i):
    with pytest.raises(ZeroRingRejected):
        order_quotient(z2i, IntegerLattice(((1, 0), (0, 1))))


def test_order_quotient_rejects_non_ideal(z2i):
    # Z x 2Zt is additive but not closed under t: 1*t = t escapes
    with pytest.raises(NotAnIdeal):
        order_quotient(z2i, IntegerLattice(((1, 0), (0, 2))))


def test_quotient_projection_is_multiplicative(z2i):
    import random

    ring, proj = order_quotient(z2i, IntegerLattice(((4, 0), (0, 2))))
    rng = random.Random(11)
    for _ in range(80):
        x = tuple(rng.randint(-30, 30) for _ in range(2))
        y = tuple(rng.randint(-30, 30) for _ in range(2))
        assert proj(z2i.mul(x, y)) == ring.mul(proj(x), proj(y))


def test_rogers_check_order_key_example(z2i):
    gens = [[(2, 0)], [(0, 1)], [(2, 1), (4, 0)]]
    report = rogers_check_order(z2i, gens)
    assert report.ideals[0].ring.order == 8
    assert report.baseline == 4
    assert report.minimum == 3
    assert report.satisfied is False
    # the winning shift is the image of 2 (coords compare across the two
    # deterministic quotient builds)
    _, _, ring, proj, images = push_to_quotient(z2i, gens)
    assert report.witness_shifts[1].coords == proj((2, 0)).coords
    # and the shifted middle ideal lands inside the union of the others
    shifted = 0
    for m in images[1].members:
        shifted |= 1 << ring.add_idx(proj((2, 0)).index, int(m))
    assert shifted & ~(images[0].mask | images[2].mask) == 0


def test_rogers_check_order_generator_presentation_invariance(z2i):
    # same ideals, different generator presentations -> identical report
    a = rogers_check_order(z2i, [[(2, 0)], [(0, 1)], [(2, 1), (4, 0)]])
    b = rogers_check_order(
        z2i, [[(2, 0), (4, 0)], [(0, 1), (0, 2)], [(2, 1), (4, 0), (2, 3)]]
    )
    assert a.baseline == b.baseline and a.minimum == b.minimum
    assert [s.coords for s in a.witness_shifts] == [s.coords for s in b.witness_shifts]


def test_rogers_check_order_maximal_order_satisfied(zi):
    triples = [
        [[(2, 0)], [(0, 1)], [(1, 1)]],
        [[(3, 0)], [(1, 1)], [(2, 1)]],
        [[(5, 0)], [(2, 1)], [(2, -1)]],
    ]
    for gens in triples:
        report = rogers_check_order(zi, gens)
        assert report.satisfied and report.minimum == report.baseline


def test_rogers_check_order_single_ideal(z2i):
    report = rogers_check_order(z2i, [[(2, 0)]])
    assert report.satisfied and report.minimum == report.baseline


def test_order_check_verify_only_shifts(z2i):
    gens = [[(2, 0)], [(0, 1)], [(2, 1), (4, 0)]]
    report = rogers_check_order(z2i, gens, shifts=[(0, 0), (2, 0), (0, 0)])
    assert report.minimum == 3 and not report.satisfied and report.tuples_examined == 1


def test_probe_z2i_hits_at_four(z2i):
    found = nonmaximality_probe(z2i, 4)
    assert found is not None
    assert found.conductor == 4
    assert found.quotient.order == 16
    assert not found.report.satisfied
    assert found.report.minimum < found.report.baseline


def test_probe_gaussian_integers_clean(zi):
    assert nonmaximality_probe(zi, 20) is None


def test_probe_rejects_trivial_bound(z2i):
    with pytest.raises(ValueError):
        nonmaximality_probe(z2i, 1)


def test_probe_witness_feeds_back(z2i):
    found = nonmaximality_probe(z2i, 4)
    report = rogers_check_order(
        z2i, list(found.ideal_generators), shifts=list(found.shifts)
    )
    assert not report.satisfied


def test_ideal_lattice_closure_property(z2i, zi):
    basis = [(1, 0), (0, 1)]
    for order, gens in [
        (z2i, [(2, 1), (4, 0)]),
        (z2i, [(6, 2)]),
        (zi, [(3, 1)]),
    ]:
        lat = order_ideal(order, gens)
        for row in lat.basis:
            for b in basis:
                assert lat.contains(order.mul(row, b))


def test_quotient_order_equals_det(z2i):
    for gens in [[(2, 0)], [(0, 1)], [(2, 1), (4, 0)], [(3, 0)], [(5, 1)]]:
        lat = order_ideal(z2i, gens)
        ring, _ = order_quotient(z2i, lat)
        assert ring.order == lat.index


def test_order_file_round_trip(z2i):
    text = format_order_text(z2i)
    back = parse_order_text(text)
    assert back.rank == 2 and back.basis_product(1, 1) == (-4, 0)
    parsed = parse_order_text("# gaussian\norder 2\nmul 2 2 -1 0\n")
    assert parsed.mul((0, 1), (0, 1)) == (-1, 0)
