import random
from fractions import Fraction

import pytest

from finmeas.errors import (
    HorizonTooLarge,
    NotAtomMap,
    NotProductSpace,
    SpaceMismatch,
)
from finmeas.integrate import StepFunction, integral
from finmeas.kernels import (
    FINITE,
    MARKOV,
    SUB_MARKOV,
    AtomMap,
    Kernel,
    convolve,
    cut_x,
    cut_y,
    disintegrate,
    fubini,
    identity_kernel,
    kleisli_lift,
    measure_kernel_product,
    path_marginal,
    path_measure,
    product_measure,
    pushforward,
)
from finmeas.measures import Measure
from finmeas.spaces import (
    FiniteMeasurableSpace,
    product_space,
    sigma_from_generator,
)

from conftest import rand_kernel, rand_measure, rand_probability, rand_space

S = FiniteMeasurableSpace.discrete("ab")
K = Kernel.from_matrix(S, S, [[Fraction(1, 2), Fraction(1, 2)], [0, 1]])


def test_kind_inference_and_validation():
    assert K.kind == MARKOV
    sub = Kernel.from_matrix(S, S, [[Fraction(1, 2), 0], [0, 1]])
    assert sub.kind == SUB_MARKOV
    fin = Kernel.from_matrix(S, S, [[2, 0], [0, 1]])
    assert fin.kind == FINITE
    with pytest.raises(ValueError):
        Kernel.from_matrix(S, S, [[2, 0], [0, 1]], kind=MARKOV)
    with pytest.raises(ValueError):
        Kernel.from_matrix(S, S, [[Fraction(1, 2), 0], [0, 1]], kind=MARKOV)


def test_convolution_example():
    square = convolve(K, K)
    assert square.rows[0].weights == (Fraction(1, 4), Fraction(3, 4))
    assert square.rows[1].weights == (0, 1)
    assert square.kind == MARKOV


def test_convolution_requires_chained_spaces():
    other = FiniteMeasurableSpace.discrete("xyz")
    L = rand_kernel(random.Random(1), other, S)
    # the right kernel runs first, so its codomain must match the left domain
    with pytest.raises(SpaceMismatch):
        convolve(L, K)
    composed = convolve(K, L)
    assert composed.domain == other and composed.codomain == S
    assert convolve(L, rand_kernel(random.Random(2), S, other)).domain == S


def test_identity_is_neutral():
    rng = random.Random(3)
    for _ in range(20):
        dom = rand_space(rng, 4)
        cod = rand_space(rng, 4)
        L = rand_kernel(rng, dom, cod, kind=rng.choice([MARKOV, SUB_MARKOV]))
        assert convolve(L, identity_kernel(dom)) == L
        assert convolve(identity_kernel(cod), L) == L


def test_kleisli_lift_example():
    point_rows = Kernel.from_matrix(S, S, [[1, 0], [0, 1]])
    mu = Measure(S, [Fraction(1, 2), Fraction(1, 2)])
    assert kleisli_lift(point_rows, mu).weights == (Fraction(1, 2), Fraction(1, 2))
    assert kleisli_lift(K, mu).weights == (Fraction(1, 4), Fraction(3, 4))


def test_measure_kernel_product_example():
    mu = Measure(S, [Fraction(1, 2), Fraction(1, 2)])
    joint = measure_kernel_product(mu, K)
    assert joint.space.factors == (S, S)
    assert joint.weights == (
        Fraction(1, 4),
        Fraction(1, 4),
        0,
        Fraction(1, 2),
    )


def test_product_measure_example():
    mu = Measure(S, [Fraction(1, 2), Fraction(1, 2)])
    nu = Measure(S, [Fraction(1, 3), Fraction(2, 3)])
    assert product_measure(mu, nu).weights == (
        Fraction(1, 6),
        Fraction(1, 3),
        Fraction(1, 6),
        Fraction(1, 3),
    )


def test_cuts_and_fubini():
    rng = random.Random(5)
    for _ in range(30):
        left = rand_space(rng, 4)
        right = rand_space(rng, 4)
        prod = product_space(left, right)
        f = StepFunction(
            prod, [Fraction(rng.randint(-4, 4)) for _ in prod.atoms]
        )
        mu = rand_measure(rng, left)
        nu = rand_measure(rng, right)
        direct, xy, yx = fubini(f, mu, nu)
        assert direct == xy == yx
        i = rng.randrange(len(left.atoms))
        j = rng.randrange(len(right.atoms))
        assert cut_x(f, i).space == right
        assert cut_y(f, j).space == left
        nr = len(right.atoms)
        assert cut_x(f, i).values == f.values[i * nr : (i + 1) * nr]


def test_fubini_rejects_mismatched_function():
    f = StepFunction(S, [1, 2])
    mu = Measure(S, [1, 0])
    with pytest.raises(SpaceMismatch):
        fubini(f, mu, mu)
    with pytest.raises(NotProductSpace):
        cut_x(f, 0)


def test_atom_map_and_pushforward():
    three = FiniteMeasurableSpace.discrete("abc")
    two = FiniteMeasurableSpace.discrete("uv")
    h = AtomMap(three, two, {"a": "u", "b": "u", "c": "v"})
    mu = Measure(three, [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)])
    assert pushforward(h, mu).weights == (Fraction(1, 2), Fraction(1, 2))
    g = StepFunction(two, [3, 7])
    assert h.compose_function(g).values == (3, 3, 7)
    # mapping must be constant on atoms of the domain
    coarse = sigma_from_generator("abc", [{"a", "b"}])
    with pytest.raises(NotAtomMap):
        AtomMap(coarse, two, {"a": "u", "b": "v", "c": "v"})


def test_pushforward_change_of_variables():
    rng = random.Random(7)
    for _ in range(30):
        dom = rand_space(rng, 5)
        cod = rand_space(rng, 3)
        mapping = {}
        for atom in dom.atoms:
            target = rng.choice(cod.atoms)
            for p in atom:
                mapping[p] = target[0]
        h = AtomMap(dom, cod, mapping)
        mu = rand_measure(rng, dom)
        g = StepFunction(cod, [Fraction(rng.randint(-3, 3)) for _ in cod.atoms])
        assert integral(g, pushforward(h, mu)) == integral(
            h.compose_function(g), mu
        )


def test_path_measure_example_and_cap():
    t_space = FiniteMeasurableSpace.discrete("t")
    step = product_space(t_space, S)
    M = Kernel.from_matrix(
        S, step, [[Fraction(1, 2), Fraction(1, 2)], [0, 1]]
    )
    two_steps = path_measure(M, "a", 2)
    label = two_steps.space.points[1]
    assert two_steps.weights[1] == Fraction(1, 4)
    assert label == "t||a|t||b"
    assert sum(two_steps.weights) == 1
    with pytest.raises(HorizonTooLarge):
        path_measure(M, "a", 5)
    with pytest.raises(ValueError):
        path_measure(M, "a", 0)
    with pytest.raises(SpaceMismatch):
        path_measure(K, "a", 1)


def test_path_projectivity_small():
    rng = random.Random(11)
    t_space = FiniteMeasurableSpace.discrete("t")
    step = product_space(t_space, S)
    for _ in range(20):
        M = rand_kernel(rng, S, step, kind=MARKOV)
        for horizon in (1, 2, 3):
            longer = path_measure(M, "a", horizon + 1)
            assert path_marginal(longer) == path_measure(M, "a", horizon)


def test_disintegrate_example():
    cd = FiniteMeasurableSpace.discrete("cd")
    prod = product_space(S, cd)
    joint = Measure(
        prod, [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 0]
    )
    marginal, conditional, null_fibers = disintegrate(joint)
    assert marginal.weights == (Fraction(1, 2), Fraction(1, 2))
    assert conditional.rows[0].weights == (Fraction(1, 2), Fraction(1, 2))
    assert conditional.rows[1].weights == (1, 0)
    assert conditional.kind == MARKOV
    assert null_fibers == ()


def test_disintegrate_null_fiber_gives_submarkov():
    cd = FiniteMeasurableSpace.discrete("cd")
    prod = product_space(S, cd)
    joint = Measure(prod, [Fraction(1, 2), Fraction(1, 2), 0, 0])
    marginal, conditional, null_fibers = disintegrate(joint)
    assert null_fibers == (("b",),)
    assert conditional.kind == SUB_MARKOV
    assert conditional.rows[1].total() == 0


def test_disintegrate_reconstructs_joint():
    rng = random.Random(13)
    for _ in range(40):
        left = rand_space(rng, 4)
        right = rand_space(rng, 4)
        prod = product_space(left, right)
        joint = rand_probability(rng, prod)
        marginal, conditional, _ = disintegrate(joint)
        assert measure_kernel_product(marginal, conditional) == joint
