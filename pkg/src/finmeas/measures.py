"""Finite (signed) measures: decompositions, densities, functionals.

Weights are exact rationals per atom.  Jordan and Lebesgue decompositions,
Radon-Nikodym derivatives and the Daniell/Riesz correspondence are all
computed exactly; only q-th roots of norms ever leave the rationals.
"""

from fractions import Fraction

from .errors import (
    AbsoluteContinuityViolated,
    NegativeFunctional,
    SpaceMismatch,
    UnsupportedFunctional,
)
from .integrate import INF, StepFunction, _validate_exponent, integral, lp_norm
from .rational import as_fraction


class SignedMeasure:
    """A rational weight per atom, any sign."""

    _require_nonnegative = False

    def __init__(self, space, weights):
        weights = tuple(as_fraction(w) for w in weights)
        if len(weights) != len(space.atoms):
            raise ValueError(
                f"expected {len(space.atoms)} atom weights, got {len(weights)}"
            )
        if self._require_nonnegative and any(w < 0 for w in weights):
            raise ValueError("measure weights must be nonnegative")
        self.space = space
        self.weights = weights

    def eval(self, mset):
        """Value on a measurable set: the sum of its atom weights."""
        if mset.space != self.space:
            raise SpaceMismatch("set lives on a different space")
        return sum(
            (self.weights[k] for k in mset.atom_indices), start=Fraction(0)
        )

    def total(self):
        return sum(self.weights, start=Fraction(0))

    def _check(self, other):
        if self.space != other.space:
            raise SpaceMismatch("measures live on different spaces")

    def __eq__(self, other):
        return (
            isinstance(other, SignedMeasure)
            and self.space == other.space
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.space, self.weights))

    def __repr__(self):
        pairs = ", ".join(
            "{" + ",".join(a) + "}:" + str(w)
            for a, w in zip(self.space.atoms, self.weights)
        )
        return f"{type(self).__name__}({pairs})"


class Measure(SignedMeasure):
    """A nonnegative finite measure."""

    _require_nonnegative = True

    @classmethod
    def zero(cls, space):
        return cls(space, [Fraction(0)] * len(space.atoms))

    @classmethod
    def dirac(cls, space, point):
        k = space.atom_index_of_point(point)
        return cls(
            space,
            [Fraction(int(i == k)) for i in range(len(space.atoms))],
        )

    def is_probability(self):
        return self.total() == 1

    def is_subprobability(self):
        return self.total() <= 1

    def add(self, other):
        self._check(other)
        return Measure(
            self.space, [a + b for a, b in zip(self.weights, other.weights)]
        )

    def scale(self, c):
        c = as_fraction(c)
        if c < 0:
            raise ValueError("use SignedMeasure for negative scalings")
        return Measure(self.space, [c * w for w in self.weights])

    def support_atoms(self):
        return tuple(k for k, w in enumerate(self.weights) if w > 0)


class LinearFunctional:
    """A linear functional on step functions, given on the indicator basis.

    declared_total is its value on the constant one function and must equal
    the sum of the indicator values.
    """

    def __init__(self, space, values_on_atom_indicators, declared_total=None):
        values = tuple(as_fraction(v) for v in values_on_atom_indicators)
        if len(values) != len(space.atoms):
            raise ValueError(
                f"expected {len(space.atoms)} indicator values, got {len(values)}"
            )
        total = sum(values, start=Fraction(0))
        if declared_total is None:
            declared_total = total
        else:
            declared_total = as_fraction(declared_total)
            if declared_total != total:
                raise ValueError(
                    f"declared_total {declared_total} != sum of indicator values {total}"
                )
        self.space = space
        self.values_on_atom_indicators = values
        self.declared_total = declared_total

    def __call__(self, f):
        """Apply by linearity: f = sum of f(atom) * indicator(atom)."""
        if f.space != self.space:
            raise SpaceMismatch("function lives on a different space")
        return sum(
            (v * c for v, c in zip(f.values, self.values_on_atom_indicators)),
            start=Fraction(0),
        )

    def is_positive(self):
        return all(v >= 0 for v in self.values_on_atom_indicators)

    def __eq__(self, other):
        return (
            isinstance(other, LinearFunctional)
            and self.space == other.space
            and self.values_on_atom_indicators == other.values_on_atom_indicators
        )

    def __hash__(self):
        return hash((self.space, self.values_on_atom_indicators))


def jordan_decompose(nu):
    """Split a signed measure into (plus, minus, total_variation).

    On atoms the split is forced: positive weights go to plus, negated
    negative weights to minus; the carriers are the positive and negative
    atoms, so plus and minus are mutually singular by construction.
    """
    plus = Measure(nu.space, [max(w, Fraction(0)) for w in nu.weights])
    minus = Measure(nu.space, [max(-w, Fraction(0)) for w in nu.weights])
    variation = Measure(nu.space, [abs(w) for w in nu.weights])
    return plus, minus, variation


def absolutely_continuous(mu, nu):
    """mu << nu: every nu-null atom is mu-null."""
    mu._check(nu)
    return all(
        not (nw == 0 and mw != 0) for mw, nw in zip(mu.weights, nu.weights)
    )


def mutually_singular(mu, nu):
    """mu and nu concentrate on disjoint sets; returns (flag, carrier_mu, carrier_nu)."""
    mu._check(nu)
    space = mu.space
    sup_mu = space.set_of_atoms(
        [k for k, w in enumerate(mu.weights) if w != 0]
    )
    sup_nu = space.set_of_atoms(
        [k for k, w in enumerate(nu.weights) if w != 0]
    )
    return not (sup_mu.members & sup_nu.members), sup_mu, sup_nu


def lebesgue_decompose(mu, nu):
    """mu = mu_a + mu_s with mu_a << nu, mu_s singular to nu, plus the density.

    On nu-positive atoms the density is mu/nu and mu_s vanishes; on nu-null
    atoms all of mu is singular and the density is fixed to 0 so results
    are reproducible.
    """
    mu._check(nu)
    absolutely = []
    singular = []
    density = []
    for mw, nw in zip(mu.weights, nu.weights):
        if nw > 0:
            absolutely.append(mw)
            singular.append(Fraction(0))
            density.append(mw / nw)
        else:
            absolutely.append(Fraction(0))
            singular.append(mw)
            density.append(Fraction(0))
    return (
        Measure(mu.space, absolutely),
        Measure(mu.space, singular),
        StepFunction(mu.space, density),
    )


def radon_nikodym(mu, nu):
    """The density h with mu(A) = integral of h over A against nu.

    Requires mu << nu; change of measure follows for every step function f:
    integral f dmu = integral f h dnu.
    """
    mu._check(nu)
    for k, (mw, nw) in enumerate(zip(mu.weights, nu.weights)):
        if nw == 0 and mw != 0:
            raise AbsoluteContinuityViolated(
                f"nu vanishes on atom {mu.space.atoms[k]!r} but mu does not",
                witness_atom=mu.space.atoms[k],
            )
    return StepFunction(
        mu.space,
        [mw / nw if nw != 0 else Fraction(0) for mw, nw in zip(mu.weights, nu.weights)],
    )


def measure_from_functional(functional):
    """The measure mu with mu(atom) = L(indicator of atom).

    Positivity of L is required; L(f) = integral f dmu then holds for every
    step function by linearity.
    """
    if not functional.is_positive():
        raise NegativeFunctional("functional is negative on an atom indicator")
    return Measure(functional.space, functional.values_on_atom_indicators)


def integration_functional(mu):
    """The functional f -> integral f dmu; inverse of measure_from_functional."""
    return LinearFunctional(mu.space, mu.weights)


def lp_dual_density(functional, mu, p):
    """Represent a positive functional on Lp(mu) as integration against g.

    g(atom) = L(indicator)/mu(atom) on mu-positive atoms and 0 elsewhere;
    the operator norm is ||g||_q for the conjugate exponent q, exact for
    q in {1, infinity} and a float otherwise.
    """
    if functional.space != mu.space:
        raise SpaceMismatch("functional and measure live on different spaces")
    if not functional.is_positive():
        raise NegativeFunctional("functional is negative on an atom indicator")
    p = _validate_exponent(p)
    values = []
    for k, (lv, mw) in enumerate(
        zip(functional.values_on_atom_indicators, mu.weights)
    ):
        if mw == 0:
            if lv != 0:
                raise UnsupportedFunctional(
                    f"functional charges the mu-null atom {mu.space.atoms[k]!r}"
                )
            values.append(Fraction(0))
        else:
            values.append(lv / mw)
    g = StepFunction(mu.space, values)
    if p == 1:
        q = INF
    elif p == INF:
        q = Fraction(1)
    else:
        q = p / (p - 1)
    return g, lp_norm(g, mu, q)


def change_of_measure(f, mu, nu):
    """integral f dmu computed through the density dmu/dnu."""
    h = radon_nikodym(mu, nu)
    return integral(f * h, nu)
