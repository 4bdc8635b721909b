"""Metrics on measures over finite metric spaces.

The Lévy-Prohorov distance is computed exactly by scanning, for every
subset and both directions, the breakpoints of the neighborhood-mass step
function.  The Hutchinson (Kantorovich-type) distance is an exact linear
program over bounded Lipschitz witnesses, solved by the embedded simplex.
"""

from fractions import Fraction
from itertools import combinations

from .errors import CapacityExceeded, InvalidGamma, SpaceMismatch
from .rational import as_fraction, atom_cap
from .simplex import OPTIMAL, maximize
from .spaces import FiniteMeasurableSpace


class FiniteMetric:
    """A metric on a finite carrier with singleton atoms.

    Validates symmetry, zero diagonal, positivity off the diagonal and the
    triangle inequality.  ``normalized`` records whether all distances are
    at most one, which the Dirac isometry property requires.
    """

    def __init__(self, space, dist):
        if any(len(atom) != 1 for atom in space.atoms):
            raise ValueError("metric carrier must have singleton atoms")
        n = len(space.points)
        rows = [tuple(as_fraction(v) for v in row) for row in dist]
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"distance matrix must be {n}x{n}")
        for i in range(n):
            if rows[i][i] != 0:
                raise ValueError("distance matrix needs a zero diagonal")
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("distance matrix must be symmetric")
                if i != j and rows[i][j] <= 0:
                    raise ValueError("off-diagonal distances must be positive")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if rows[i][j] > rows[i][k] + rows[k][j]:
                        raise ValueError(
                            "triangle inequality fails at "
                            f"({space.points[i]},{space.points[j]},{space.points[k]})"
                        )
        self.space = space
        self.dist = rows
        self.normalized = all(v <= 1 for row in rows for v in row)

    @classmethod
    def from_points(cls, points, dist):
        return cls(FiniteMeasurableSpace.discrete(points), dist)

    def d(self, i, j):
        return self.dist[i][j]

    def d_points(self, p, q):
        return self.dist[self.space.point_index(p)][self.space.point_index(q)]

    def d_to_set(self, i, subset):
        """Distance from point index i to a nonempty set of point indices."""
        return min(self.dist[i][j] for j in subset)


class LipschitzWitness:
    """A 1-Lipschitz function bounded by gamma, one value per point."""

    def __init__(self, metric, values, gamma):
        values = tuple(as_fraction(v) for v in values)
        gamma = as_fraction(gamma)
        n = len(metric.space.points)
        if len(values) != n:
            raise ValueError(f"expected {n} values")
        for v in values:
            if abs(v) > gamma:
                raise ValueError("witness exceeds the gamma bound")
        for i in range(n):
            for j in range(i + 1, n):
                if abs(values[i] - values[j]) > metric.dist[i][j]:
                    raise ValueError("witness is not 1-Lipschitz")
        self.metric = metric
        self.values = values
        self.gamma = gamma

    def objective(self, mu, nu):
        return sum(
            (v * (a - b) for v, a, b in zip(self.values, mu.weights, nu.weights)),
            start=Fraction(0),
        )


def support(mu):
    """The set of atoms with positive weight: the smallest set of full measure.

    For the zero measure this is the empty set by convention (classically
    the support is defined only for nonzero measures).
    """
    return mu.space.set_of_atoms(
        [k for k, w in enumerate(mu.weights) if w > 0]
    )


def _check_metric_pair(mu, nu, metric):
    if mu.space != metric.space or nu.space != metric.space:
        raise SpaceMismatch("measures must live on the metric's space")


def _one_sided_min_eps(rho_b, sigma_masses, thresholds):
    """Least eps > 0 with rho(B) <= sigma(B^eps) + eps for one subset.

    thresholds are the sorted distinct values of d(., B); on the piece
    (thresholds[k], thresholds[k+1]] the open-neighborhood mass is
    sigma_masses[k], so the constraint is linear per piece.
    """
    for k, v in enumerate(thresholds):
        upper = thresholds[k + 1] if k + 1 < len(thresholds) else None
        lower_bound = rho_b - sigma_masses[k]
        if upper is None or lower_bound <= upper:
            return max(lower_bound, v)
    raise AssertionError("last piece is always feasible")


def prohorov_distance(mu, nu, metric):
    """Exact Lévy-Prohorov distance.

    d_P is the infimum of eps such that for every subset B, each measure's
    value on B is at most the other's value on the open eps-neighborhood
    B^eps = {x : d(x, B) < eps} plus eps.  Per subset and direction the
    minimal feasible eps has a closed form on each breakpoint piece; d_P is
    the maximum of those minima.  The feasible set may be open at d_P (the
    infimum is a limit), which the internal probes assert.
    """
    _check_metric_pair(mu, nu, metric)
    n = len(metric.space.points)
    if n > atom_cap():
        raise CapacityExceeded(
            f"{n} points exceed the subset-enumeration cap {atom_cap()}"
        )
    best = Fraction(0)
    indices = range(n)
    for size in range(1, n + 1):
        for subset in combinations(indices, size):
            dists = [metric.d_to_set(i, subset) for i in indices]
            thresholds = sorted(set(dists) | {Fraction(0)})
            mu_masses = []
            nu_masses = []
            for v in thresholds:
                inside = [i for i in indices if dists[i] <= v]
                mu_masses.append(
                    sum((mu.weights[i] for i in inside), start=Fraction(0))
                )
                nu_masses.append(
                    sum((nu.weights[i] for i in inside), start=Fraction(0))
                )
            mu_b = sum((mu.weights[i] for i in subset), start=Fraction(0))
            nu_b = sum((nu.weights[i] for i in subset), start=Fraction(0))
            best = max(
                best,
                _one_sided_min_eps(nu_b, mu_masses, thresholds),
                _one_sided_min_eps(mu_b, nu_masses, thresholds),
            )
    assert _prohorov_feasible_above(mu, nu, metric, best)
    return best


def prohorov_feasible(mu, nu, metric, eps):
    """Whether eps satisfies both Prohorov constraints for every subset."""
    _check_metric_pair(mu, nu, metric)
    n = len(metric.space.points)
    indices = range(n)
    for size in range(1, n + 1):
        for subset in combinations(indices, size):
            neighborhood = [
                i for i in indices if metric.d_to_set(i, subset) < eps
            ]
            mu_b = sum((mu.weights[i] for i in subset), start=Fraction(0))
            nu_b = sum((nu.weights[i] for i in subset), start=Fraction(0))
            mu_n = sum((mu.weights[i] for i in neighborhood), start=Fraction(0))
            nu_n = sum((nu.weights[i] for i in neighborhood), start=Fraction(0))
            if nu_b > mu_n + eps or mu_b > nu_n + eps:
                return False
    return True


def _prohorov_feasible_above(mu, nu, metric, value):
    """Probe that the computed value is the true infimum.

    Feasibility must hold just above the value and fail just below it.
    The probe gap is half the smallest spacing of the candidate breakpoints.
    """
    candidates = {value}
    for row in metric.dist:
        candidates.update(row)
    candidates.update(mu.weights)
    candidates.update(nu.weights)
    gaps = [
        b - a
        for a, b in zip(sorted(candidates), sorted(candidates)[1:])
        if b > a
    ]
    step = min(gaps, default=Fraction(1)) / 2
    if not prohorov_feasible(mu, nu, metric, value + step):
        return False
    if value > 0 and prohorov_feasible(mu, nu, metric, value - min(step, value / 2)):
        return False
    return True


def hutchinson_distance(mu, nu, metric, gamma):
    """Exact Hutchinson distance with an optimal witness.

    H_gamma(mu, nu) is the supremum of integral f dmu - integral f dnu over
    1-Lipschitz f bounded by gamma.  Solved as an exact LP in the shifted
    variables x_i = f(x_i) + gamma, so all constraints are <= with
    nonnegative right-hand sides.  Returns (value, LipschitzWitness).
    """
    _check_metric_pair(mu, nu, metric)
    gamma = as_fraction(gamma)
    if gamma <= 0:
        raise InvalidGamma(f"gamma must be positive, got {gamma}")
    n = len(metric.space.points)
    c = [mu.weights[i] - nu.weights[i] for i in range(n)]
    a_ub = []
    b_ub = []
    for i in range(n):
        for j in range(i + 1, n):
            row = [Fraction(0)] * n
            row[i], row[j] = Fraction(1), Fraction(-1)
            a_ub.append(row)
            b_ub.append(metric.dist[i][j])
            a_ub.append([-v for v in row])
            b_ub.append(metric.dist[i][j])
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        a_ub.append(row)
        b_ub.append(2 * gamma)
    result = maximize(c, a_ub=a_ub, b_ub=b_ub)
    assert result.status == OPTIMAL
    shift = gamma * sum(c, start=Fraction(0))
    value = result.value - shift
    witness = LipschitzWitness(metric, [x - gamma for x in result.x], gamma)
    assert witness.objective(mu, nu) == value
    return value, witness


class WeakLimitReport:
    """Diagnostics for weak convergence of a finite sequence of measures.

    The tail of the sequence (its second half, at least the final element)
    stands in for the limit behavior.  On a finite discrete space per-atom
    convergence is equivalent to the subset criterion plus total-mass
    convergence, so criteria_agree holds whenever the residuals are far
    from the tolerance.
    """

    def __init__(
        self,
        per_atom_ok,
        portmanteau_ok,
        mass_ok,
        per_atom_residual,
        portmanteau_excess,
        mass_residual,
        witness_set,
    ):
        self.per_atom_ok = per_atom_ok
        self.portmanteau_ok = portmanteau_ok
        self.mass_ok = mass_ok
        self.converges = per_atom_ok and portmanteau_ok and mass_ok
        self.per_atom_residual = per_atom_residual
        self.portmanteau_excess = portmanteau_excess
        self.mass_residual = mass_residual
        self.witness_set = witness_set

    def criteria_agree(self):
        return self.per_atom_ok == (self.portmanteau_ok and self.mass_ok)


def check_weak_limit(sequence, limit, metric, tol):
    """Check the three Portmanteau-style criteria against a tolerance.

    (i) per-atom weights of the tail stay within tol of the limit's,
    (ii) every subset F has tail mass at most limit(F) + tol,
    (iii) total masses of the tail stay within tol of the limit's.
    Returns a WeakLimitReport; witness_set is a maximally violating subset
    when (ii) fails.
    """
    sequence = list(sequence)
    if not sequence:
        raise ValueError("need at least one element in the sequence")
    for m in sequence:
        if m.space != metric.space:
            raise SpaceMismatch("sequence measures must live on the metric's space")
    if limit.space != metric.space:
        raise SpaceMismatch("limit must live on the metric's space")
    n = len(metric.space.atoms)
    if n > atom_cap():
        raise CapacityExceeded(
            f"{n} atoms exceed the subset-enumeration cap {atom_cap()}"
        )
    tol = Fraction(tol) if not isinstance(tol, float) else tol
    tail = sequence[len(sequence) // 2 :]

    per_atom_residual = max(
        abs(float(m.weights[k] - limit.weights[k]))
        for m in tail
        for k in range(n)
    )
    mass_residual = max(abs(float(m.total() - limit.total())) for m in tail)

    portmanteau_excess = 0.0
    witness_set = None
    for mset in metric.space.measurable_sets():
        limit_mass = limit.eval(mset)
        for m in tail:
            excess = float(m.eval(mset) - limit_mass)
            if excess > portmanteau_excess:
                portmanteau_excess = excess
                witness_set = mset
    per_atom_ok = per_atom_residual <= tol
    portmanteau_ok = portmanteau_excess <= tol
    mass_ok = mass_residual <= tol
    return WeakLimitReport(
        per_atom_ok,
        portmanteau_ok,
        mass_ok,
        per_atom_residual,
        portmanteau_excess,
        mass_residual,
        witness_set if not portmanteau_ok else None,
    )
