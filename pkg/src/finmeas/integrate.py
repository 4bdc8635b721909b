"""Step functions, integration, Lp norms, and the convergence-in-measure metric.

All functions on a finite measurable space are step functions: constant on
atoms, hence a rational value per atom.  Integrals and the p = 1, infinity
norms are exact; p-th roots fall back to floats.
"""

import math
from fractions import Fraction

from .errors import InvalidExponent, NegativeFunction, SpaceMismatch
from .rational import as_fraction

INF = math.inf


class StepFunction:
    """An atom-constant rational function on a finite measurable space."""

    def __init__(self, space, values):
        values = tuple(as_fraction(v) for v in values)
        if len(values) != len(space.atoms):
            raise ValueError(
                f"expected {len(space.atoms)} atom values, got {len(values)}"
            )
        self.space = space
        self.values = values

    @classmethod
    def constant(cls, space, value):
        return cls(space, [as_fraction(value)] * len(space.atoms))

    @classmethod
    def indicator(cls, mset):
        """The characteristic function of a measurable set."""
        inside = set(mset.atom_indices)
        return cls(
            mset.space,
            [Fraction(int(k in inside)) for k in range(len(mset.space.atoms))],
        )

    def __call__(self, point):
        return self.values[self.space.atom_index_of_point(point)]

    def _check(self, other):
        if self.space != other.space:
            raise SpaceMismatch("step functions live on different spaces")

    def _zip(self, other, op):
        if isinstance(other, StepFunction):
            self._check(other)
            return StepFunction(
                self.space, [op(a, b) for a, b in zip(self.values, other.values)]
            )
        c = as_fraction(other)
        return StepFunction(self.space, [op(a, c) for a in self.values])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return StepFunction(self.space, [-v for v in self.values])

    def __abs__(self):
        return StepFunction(self.space, [abs(v) for v in self.values])

    def __eq__(self, other):
        return (
            isinstance(other, StepFunction)
            and self.space == other.space
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.space, self.values))

    def is_nonnegative(self):
        return all(v >= 0 for v in self.values)

    def superlevel_set(self, level):
        """The measurable set {f >= level}."""
        return self.space.set_of_atoms(
            [k for k, v in enumerate(self.values) if v >= level]
        )

    def __repr__(self):
        pairs = ", ".join(
            "{" + ",".join(a) + "}:" + str(v)
            for a, v in zip(self.space.atoms, self.values)
        )
        return f"StepFunction({pairs})"


def pointwise_max(f, g):
    return f._zip(g, max)


def pointwise_min(f, g):
    return f._zip(g, min)


def _check_pair(f, mu):
    if f.space != mu.space:
        raise SpaceMismatch("function and measure live on different spaces")


def integral(f, mu):
    """Integral of a step function: the weight-weighted sum of atom values."""
    _check_pair(f, mu)
    return sum(
        (v * w for v, w in zip(f.values, mu.weights)), start=Fraction(0)
    )


def _validate_exponent(p):
    if p == INF:
        return INF
    p = as_fraction(p)
    if p < 1:
        raise InvalidExponent(f"p must be >= 1 or infinity, got {p}")
    return p


def lp_norm(f, mu, p):
    """The Lp norm of f under mu.

    Exact Fraction for p = 1 and p = infinity (essential sup on positive
    atoms); a float for every other exponent, where the p-th root is
    generally irrational.  See lp_norm_power for the exact p-th power.
    """
    _check_pair(f, mu)
    p = _validate_exponent(p)
    if p == INF:
        support_values = [abs(v) for v, w in zip(f.values, mu.weights) if w > 0]
        return max(support_values, default=Fraction(0))
    if p == 1:
        return integral(abs(f), mu)
    if p.denominator == 1:
        power = lp_norm_power(f, mu, p)
        return float(power) ** (1.0 / int(p))
    total = sum(
        abs(float(v)) ** float(p) * float(w) for v, w in zip(f.values, mu.weights)
    )
    return total ** (1.0 / float(p))


def lp_norm_power(f, mu, p):
    """Exact value of integral |f|^p dmu for integer exponents p >= 1."""
    _check_pair(f, mu)
    p = _validate_exponent(p)
    if p == INF or p.denominator != 1:
        raise InvalidExponent("exact powers need an integer exponent")
    k = int(p)
    return sum(
        (abs(v) ** k * w for v, w in zip(f.values, mu.weights)), start=Fraction(0)
    )


def lp_norm_squared(f, mu):
    """Exact squared L2 norm, integral f^2 dmu."""
    return lp_norm_power(f, mu, 2)


def _conjugate(p):
    if p == INF:
        return Fraction(1)
    if p == 1:
        return INF
    return p / (p - 1)


def check_hoelder(f, g, mu, p):
    """Evaluate integral |f g| dmu <= ||f||_p ||g||_q with 1/p + 1/q = 1.

    Requires p > 1 (p may be infinity).  The comparison is exact for
    p = 2 (squared) and p = infinity; other exponents are certified in
    floats with slack 1e-9.  Returns (lhs, rhs, holds).
    """
    _check_pair(f, mu)
    _check_pair(g, mu)
    p = _validate_exponent(p)
    if p == 1:
        raise InvalidExponent("Hoelder here needs p > 1; p = 1 pairs with q = inf")
    q = _conjugate(p)
    lhs = integral(abs(f * g), mu)
    if p == 2:
        rhs_sq = lp_norm_squared(f, mu) * lp_norm_squared(g, mu)
        holds = lhs * lhs <= rhs_sq
        return lhs, math.sqrt(float(rhs_sq)), holds
    if p == INF:
        rhs = lp_norm(f, mu, INF) * lp_norm(g, mu, 1)
        return lhs, rhs, lhs <= rhs
    rhs = lp_norm(f, mu, p) * lp_norm(g, mu, q)
    return lhs, rhs, float(lhs) <= rhs + 1e-9


def check_minkowski(f, g, mu, p):
    """Evaluate ||f + g||_p <= ||f||_p + ||g||_p.

    Exact for p = 1 and p = infinity; for p = 2 the inequality is decided
    exactly by squaring twice; other exponents use floats with slack 1e-9.
    Returns (lhs, rhs, holds).
    """
    _check_pair(f, mu)
    _check_pair(g, mu)
    p = _validate_exponent(p)
    s = f + g
    if p == 1 or p == INF:
        lhs = lp_norm(s, mu, p)
        rhs = lp_norm(f, mu, p) + lp_norm(g, mu, p)
        return lhs, rhs, lhs <= rhs
    if p == 2:
        a = lp_norm_squared(s, mu)
        b = lp_norm_squared(f, mu)
        c = lp_norm_squared(g, mu)
        # lhs <= rhs  iff  a - b - c <= 2 sqrt(b c), squared once more
        gap = a - b - c
        holds = gap <= 0 or gap * gap <= 4 * b * c
        return math.sqrt(float(a)), math.sqrt(float(b)) + math.sqrt(float(c)), holds
    lhs = lp_norm(s, mu, p)
    rhs = lp_norm(f, mu, p) + lp_norm(g, mu, p)
    return lhs, rhs, lhs <= rhs + 1e-9


def layered_integral(f, mu):
    """Layered (Choquet) form: sum over levels r_j of (r_j - r_{j-1}) mu({f >= r_j}).

    Defined for nonnegative f; always equals integral(f, mu).
    """
    _check_pair(f, mu)
    if not f.is_nonnegative():
        raise NegativeFunction("the layered representation needs f >= 0")
    levels = sorted({v for v in f.values if v > 0})
    total = Fraction(0)
    previous = Fraction(0)
    for r in levels:
        total += (r - previous) * mu.eval(f.superlevel_set(r))
        previous = r
    return total


def conv_in_measure_distance(f, g, mu):
    """The pseudo-metric delta(f, g) = inf{eps > 0 : mu(|f - g| > eps) <= eps}.

    The tail map eps -> mu(|f - g| > eps) is a nonincreasing right-continuous
    step function, so the infimum is attained at one of finitely many
    breakpoints: the distinct values of |f - g| or the tail masses themselves.
    """
    _check_pair(f, mu)
    _check_pair(g, mu)
    diff = abs(f - g)

    def tail(eps):
        return sum(
            (w for v, w in zip(diff.values, mu.weights) if v > eps),
            start=Fraction(0),
        )

    candidates = {Fraction(0)} | set(diff.values)
    candidates |= {tail(v) for v in list(candidates)}
    feasible = [c for c in candidates if c >= 0 and tail(c) <= c]
    return min(feasible)
