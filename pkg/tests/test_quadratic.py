import itertools
from fractions import Fraction

import pytest

from torusclass.quadratic import (
    DiscriminantBoundError,
    QuadraticError,
    QuadraticField,
    class_number,
    fundamental_unit,
    ideal_class_order,
    narrow_class_number,
    s_class_number,
    splitting,
    unit_module,
)
from torusclass.quadratic.field import class_group, factorize, is_squarefree, kronecker
from torusclass.quadratic.forms import (
    Form,
    compose,
    indefinite_cycles,
    principal_form,
    reduce_definite,
    reduced_forms_definite,
    reduced_forms_indefinite,
)
from torusclass.quadratic.units import places_above, valuation
from torusclass.verify import quadratic_corpus

from oracles import brute_class_number


@pytest.mark.parametrize("D,count", [(-3, 1), (-4, 1), (-20, 2), (-23, 3), (-47, 5), (-84, 4), (-56, 4)])
def test_reduced_definite_counts(D, count):
    forms = reduced_forms_definite(D)
    assert len(forms) == count
    assert all(f.discriminant == D and f.is_primitive for f in forms)


@pytest.mark.parametrize("D,cycles", [(8, 1), (12, 2), (40, 2), (60, 4), (85, 2), (136, 4)])
def test_indefinite_cycle_counts(D, cycles):
    assert len(indefinite_cycles(D)) == cycles
    assert all(f.discriminant == D for f in reduced_forms_indefinite(D))


def test_reduction_keeps_discriminant():
    f = Form(23, 41, 19)
    g = reduce_definite(f)
    assert g.discriminant == f.discriminant and g.a <= g.c and abs(g.b) <= g.a


@pytest.mark.parametrize("D", [-47, -84, -56, -71])
def test_composition_is_a_group_law(D):
    cg = class_group(QuadraticField(D // 4 if D % 4 == 0 else D))
    n = len(cg)
    e = cg.class_of(principal_form(D))
    for i in range(n):
        assert cg.mul(i, e) == i
        assert cg.mul(i, cg.inv(i)) == e
        for j in range(n):
            assert cg.mul(i, j) == cg.mul(j, i)
    for i, j, k in itertools.product(range(n), repeat=3):
        assert cg.mul(cg.mul(i, j), k) == cg.mul(i, cg.mul(j, k))


def test_compose_preserves_discriminant():
    D = -47
    f, g = reduced_forms_definite(D)[1], reduced_forms_definite(D)[2]
    assert compose(f, g).discriminant == D


def test_class_numbers_match_brute_force_on_corpus():
    for d in quadratic_corpus(500):
        assert class_number(QuadraticField(d))[0] == brute_class_number(d), d


@pytest.mark.parametrize("d,structure", [(-1, ()), (-5, (2,)), (-21, (2, 2)), (-47, (5,)), (10, (2,)),
                                         (79, (3,)), (82, (4,)), (226, (8,)), (-161, (2, 8))])
def test_class_group_structure(d, structure):
    assert class_number(QuadraticField(d))[1].invariant_factors == structure


def test_narrow_versus_wide():
    # Q(sqrt 3): fundamental unit has norm +1, so the narrow group is twice as big
    assert narrow_class_number(QuadraticField(3)) == 2
    assert class_number(QuadraticField(3))[0] == 1
    assert narrow_class_number(QuadraticField(2)) == 1


@pytest.mark.parametrize("d,a,b,norm", [(2, 2, 2, -1), (3, 4, 2, 1), (5, 1, 1, -1), (6, 10, 4, 1), (7, 16, 6, 1),
                                        (10, 6, 2, -1), (13, 3, 1, -1), (94, 4286590, 442128, 1)])
def test_fundamental_units(d, a, b, norm):
    u = fundamental_unit(QuadraticField(d))
    assert (u.a, u.b, u.norm) == (a, b, norm)
    assert u.a * u.a - d * u.b * u.b == 4 * norm


def test_fundamental_unit_needs_real_field():
    with pytest.raises(QuadraticError):
        fundamental_unit(QuadraticField(-7))


def test_element_arithmetic():
    F = QuadraticField(-1)
    i = F.element(0, 1)
    one_plus_i = F.element(1, 1)
    assert one_plus_i * one_plus_i == F.element(0, 2)
    assert one_plus_i.norm() == 2
    assert (one_plus_i / one_plus_i) == F.element(1)
    assert i ** 4 == F.element(1) and i ** -1 == -i
    assert str(F.element(2, -1)) == "2-i"
    G = QuadraticField(5)
    w = G.element(0, 1)
    assert str(w) == "(1+sqrt(5))/2"
    assert w * w == w + G.element(1)
    x, y = G.element(3, 7), G.element(-2, 5)
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.conj().conj() == x


def test_integer_helpers():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert is_squarefree(-30) and not is_squarefree(12)
    assert [kronecker(-4, p) for p in (2, 3, 5)] == [0, -1, 1]
    with pytest.raises(QuadraticError):
        QuadraticField(12)


@pytest.mark.parametrize("d,p,efg", [(-1, 2, (2, 1, 1)), (-1, 5, (1, 1, 2)), (-1, 3, (1, 2, 1)),
                                     (2, "inf", (1, 1, 2)), (-3, "inf", (2, 1, 1)), (5, 5, (2, 1, 1))])
def test_splitting(d, p, efg):
    P = splitting(QuadraticField(d), p)
    assert (P.e, P.f, P.g) == efg
    assert P.inertia.order == P.e and P.decomposition.order == P.e * P.f


def test_ideal_class_orders():
    assert ideal_class_order(QuadraticField(-5), 2) == 2
    assert ideal_class_order(QuadraticField(-23), 2) == 3
    assert ideal_class_order(QuadraticField(-1), 5) == 1


def test_discriminant_bound():
    with pytest.raises(DiscriminantBoundError):
        class_number(QuadraticField(-1001), bound=1000)


def _power_product(F, gens, exps):
    out = F.element(1)
    for g, e in zip(gens, exps):
        out = out * g ** e
    return out


CASES = [(-1, ()), (-1, (5,)), (2, ()), (2, (7,)), (-5, (2, 3)), (10, (3,)), (-23, (2,)),
         (79, (3, 5)), (-47, (2, 3)), (15, (2,)), (226, (3,))]


@pytest.mark.parametrize("d,S", CASES)
def test_unit_module_action_is_galois_conjugation(d, S):
    F = QuadraticField(d)
    U = unit_module(F, ("inf",) + S)
    M = U.module
    sigma = M.action[1]
    tor = M.torsion[0]
    for j, g in enumerate(U.generators):
        image = _power_product(F, U.generators, [sigma[i][j] for i in range(M.dim)])
        assert g.conj() == image, (j, str(g))
    assert U.generators[-1] ** tor == F.element(1)


@pytest.mark.parametrize("d,S", CASES)
def test_generators_are_s_units(d, S):
    F = QuadraticField(d)
    U = unit_module(F, ("inf",) + S)
    for g in U.generators:
        assert g.is_integral()
        n = abs(g.norm())
        assert n.denominator == 1
        rest = int(n)
        for p in S:
            while rest % p == 0:
                rest //= p
        assert rest == 1, str(g)
    # the principal lattice has full rank, so every place is seen by some generator
    for w in U.places:
        assert any(valuation(g, w) for g in U.generators)


def test_valuations_at_split_prime():
    F = QuadraticField(-1)
    above = places_above(F, 5)
    assert len(above) == 2
    pi = F.element(2, 1)
    assert sorted(valuation(pi, w) for w in above) == [0, 1]
    assert [valuation(F.element(5), w) for w in above] == [1, 1]


@pytest.mark.parametrize("d", [-5, -14, -23, -47, -71, 10, 79, 82, 226, -161])
def test_s_class_numbers_divide_and_shrink(d):
    F = QuadraticField(d)
    h = class_number(F)[0]
    previous = h
    S = ["inf"]
    for p in (2, 3, 5, 7):
        S.append(p)
        hS = s_class_number(F, S)
        assert h % hS == 0 and previous % hS == 0
        previous = hS


def test_herbrand_quotient_of_real_unit_group():
    from torusclass.cohomology import herbrand_quotient

    for d in (2, 3, 5, 6, 7):
        F = QuadraticField(d)
        U = unit_module(F, ["inf"]).module
        # two real places, each with trivial decomposition group
        assert herbrand_quotient(F.galois_group, U) == Fraction(1, 2)
