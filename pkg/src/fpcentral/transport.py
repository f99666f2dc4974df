"""Wasserstein distances between centrality distributions on node sets.

The ground metric on nodes is a modeling choice, so it is a named
convention rather than a silent default:

* ``grid_embedding``: node i sits at i/n on the line, d(i, j) = |i - j|/n;
  W_p has the classical one-dimensional closed form via the monotone
  (sorted cumulative mass) coupling, realized here as an explicit plan.
* ``discrete_metric``: d(i, j) = 1 for i != j; W_1 is total variation and
  W_2 its square root, with the overlap coupling as the plan.
* ``permutation_cost``: min over node relabelings of ||src^pi - dst||_p.
  A permutation coupling is only marginal-feasible when dst is literally a
  relabeling of src, so this is a bound surrogate used by the certificate
  route, not a true Wasserstein distance; no plan is produced.

A small exact linear-programming solver is included as an independent
check on the closed forms.
"""

import itertools

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import NumericalError, ParameterError, SizeLimitError
from .limits import MAX_LP_ORACLE_N, MAX_PERM_EXACT_N, MAX_PLAN_N, exact_limit
from .norms import vector_norm

PMF_TOL = 1e-9
CONVENTIONS = ("grid_embedding", "discrete_metric", "permutation_cost")


@dataclass(frozen=True)
class TransportConvention:
    """A named ground-metric convention for node distributions."""

    tag: str

    def __post_init__(self):
        if self.tag not in CONVENTIONS:
            raise ParameterError(f"convention must be one of {CONVENTIONS}, got {self.tag!r}")


@dataclass(frozen=True)
class TransportPlan:
    """A coupling gamma with marginals (src, dst) and its transport cost
    sum_ij gamma_ij d(i, j)^p under the convention's ground metric."""

    gamma: np.ndarray
    cost: float


def _check_pmf(v, name):
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.shape[0] < 1:
        raise ParameterError(f"{name} must be a nonempty vector")
    if not np.all(np.isfinite(v)):
        raise ParameterError(f"{name} must be finite")
    if float(np.min(v)) < -1e-12:
        raise ParameterError(f"{name} has negative entries")
    if abs(float(v.sum()) - 1.0) > PMF_TOL:
        raise ParameterError(f"{name} must sum to 1 within {PMF_TOL}")
    return np.maximum(v, 0.0)


def _check_marginals(gamma, src, dst):
    row_err = float(np.max(np.abs(gamma.sum(axis=1) - src)))
    col_err = float(np.max(np.abs(gamma.sum(axis=0) - dst)))
    if max(row_err, col_err) > PMF_TOL:
        raise NumericalError(
            f"transport plan violates its marginals (errors {row_err:.3e}, {col_err:.3e})"
        )


def _monotone_coupling(src, dst):
    """The sorted cumulative-mass coupling, optimal on the line for any
    convex cost in |i - j|."""
    n = src.shape[0]
    gamma = np.zeros((n, n))
    a = src.copy()
    b = dst.copy()
    i = j = 0
    while i < n and j < n:
        moved = min(a[i], b[j])
        if moved > 0.0:
            gamma[i, j] += moved
            a[i] -= moved
            b[j] -= moved
        if a[i] <= b[j]:
            i += 1
        else:
            j += 1
    return gamma


def _overlap_coupling(src, dst):
    """Keep the common mass in place; ship each surplus proportionally to
    the deficits.  Off-diagonal mass equals the total variation distance."""
    common = np.minimum(src, dst)
    gamma = np.diag(common)
    surplus = src - common
    deficit = dst - common
    total = float(surplus.sum())
    if total > 0.0:
        gamma += np.outer(surplus, deficit) / total
    return gamma


def _permutation_cost(src, dst, p):
    n = src.shape[0]
    limit = exact_limit(MAX_PERM_EXACT_N)
    if n <= limit:
        perms = np.array(list(itertools.permutations(range(n))), dtype=int)
        diffs = src[perms] - dst
        if p == 1:
            vals = np.abs(diffs).sum(axis=1)
        else:
            vals = np.sqrt((diffs * diffs).sum(axis=1))
        return float(vals.min())
    return vector_norm(np.sort(src) - np.sort(dst), p)


def wasserstein(src, dst, p, convention):
    """W_p between two node pmfs under a named ground-metric convention.

    Parameters
    ----------
    src, dst : array_like
        Probability vectors of equal length (entries >= 0, sums within
        1e-9 of one).
    p : {1, 2}
    convention : TransportConvention or str

    Returns
    -------
    (value, plan)
        ``plan`` is a TransportPlan realizing the value for the two true
        metrics and None for permutation_cost, which is the minimum over
        relabelings of ||src^pi - dst||_p (exact enumeration up to n = 8,
        sorted matching beyond) rather than a coupling infimum.

    Raises
    ------
    ParameterError
        Non-pmf input, length mismatch, p outside {1, 2}.
    SizeLimitError
        Plan-producing conventions beyond the exact-plan size cap.
    """
    if isinstance(convention, str):
        convention = TransportConvention(convention)
    if p not in (1, 2):
        raise ParameterError(f"p must be 1 or 2, got {p!r}")
    src = _check_pmf(src, "src")
    dst = _check_pmf(dst, "dst")
    if src.shape[0] != dst.shape[0]:
        raise ParameterError("src and dst must have the same length")
    n = src.shape[0]
    if convention.tag == "permutation_cost":
        return _permutation_cost(src, dst, p), None
    limit = exact_limit(MAX_PLAN_N)
    if n > limit:
        raise SizeLimitError(f"exact plans are limited to n <= {limit}, got n={n}")
    if convention.tag == "grid_embedding":
        gamma = _monotone_coupling(src, dst)
        idx = np.arange(n)
        ground = np.abs(idx[:, None] - idx[None, :]) / n
    else:
        gamma = _overlap_coupling(src, dst)
        ground = 1.0 - np.eye(n)
    _check_marginals(gamma, src, dst)
    cost = float((gamma * ground**p).sum())
    return cost ** (1.0 / p), TransportPlan(gamma=gamma, cost=cost)


def transport_lp_oracle(src, dst, cost_matrix):
    """Exact optimal transport at tiny sizes by linear programming.

    Solves min <gamma, cost> over the transportation polytope with
    marginals (src, dst) using the HiGHS simplex solver, which returns an
    exact vertex solution at these sizes.  Independent of the closed
    forms above; intended as their test oracle.

    Returns (value, TransportPlan); the plan cost is the LP objective.
    """
    src = _check_pmf(src, "src")
    dst = _check_pmf(dst, "dst")
    if src.shape[0] != dst.shape[0]:
        raise ParameterError("src and dst must have the same length")
    n = src.shape[0]
    limit = exact_limit(MAX_LP_ORACLE_N)
    if n > limit:
        raise SizeLimitError(f"the transport oracle is limited to n <= {limit}, got n={n}")
    cost_matrix = np.asarray(cost_matrix, dtype=float)
    if cost_matrix.shape != (n, n):
        raise ParameterError("cost matrix shape must match the marginals")
    if not np.all(np.isfinite(cost_matrix)) or float(np.min(cost_matrix)) < 0.0:
        raise ParameterError("cost matrix must be finite and non-negative")
    a_eq = np.zeros((2 * n, n * n))
    for i in range(n):
        a_eq[i, i * n : (i + 1) * n] = 1.0
        a_eq[n + i, i::n] = 1.0
    b_eq = np.concatenate([src, dst])
    res = linprog(cost_matrix.ravel(), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        raise NumericalError(f"transport LP failed: {res.message}")
    gamma = res.x.reshape(n, n)
    _check_marginals(gamma, src, dst)
    return float(res.fun), TransportPlan(gamma=gamma, cost=float(res.fun))
