from fractions import Fraction

import pytest

from dglapair.artin import (ArtinMorphism, fiber_product, make_artin, make_small_extension,
                            projection_morphism)


def test_dual_numbers():
    A = make_artin(["eps"], 2)
    assert A.labels == ("eps",)
    assert A.multiply({"eps": 1}, {"eps": 1}) == {}
    assert A.check() == []


def test_truncation_order_three():
    A = make_artin(["eps"], 3)
    assert A.labels == ("eps", "eps^2")
    assert A.nilpotency_order == 3
    assert A.multiply({"eps": 1}, {"eps": 2}) == {"eps^2": 2}


def test_two_variables_order_two():
    A = make_artin(["s", "t"], 2)
    assert set(A.labels) == {"s", "t"}
    assert all(not A.mult(a, b) for a in A.labels for b in A.labels)


def test_relations_and_locality():
    A = make_artin(["s", "t"], 3, ["s*t"])
    assert A.dim == 4
    assert A.multiply({"s": 1}, {"t": 1}) == {}
    with pytest.raises(ValueError):
        make_artin(["s"], 3, ["1 + s"])


@pytest.mark.parametrize("gens,order,ideal,quotient_labels", [
    (["eps"], 3, ["eps^2"], ("eps",)),
    (["eps"], 2, ["eps"], ()),
    (["s", "t"], 2, ["t"], ("s",)),
])
def test_small_extensions(gens, order, ideal, quotient_labels):
    se = make_small_extension(make_artin(gens, order), ideal)
    assert se.quotient.labels == quotient_labels
    assert len(se.ideal) == 1


def test_not_small_is_rejected():
    with pytest.raises(ValueError):
        make_small_extension(make_artin(["eps"], 3), ["eps"])


def test_fiber_product_glues_and_projects():
    B = make_artin(["s"], 3)
    C = make_artin(["t"], 3)
    A = make_artin(["u"], 2)
    beta = ArtinMorphism(B, A, {"s": {"u": 1}})
    gamma = ArtinMorphism(C, A, {"t": {"u": 1}})
    F = fiber_product(beta, gamma)
    assert F.ring.check() == []
    x = F.glue({"s": 2, "s^2": 1}, {"t": 2, "t^2": -3})
    assert F.left.apply_vector(x) == {"s": 2, "s^2": 1}
    assert F.right.apply_vector(x) == {"t": 2, "t^2": -3}
    with pytest.raises(ValueError):
        F.glue({"s": 1}, {"t": 2})
