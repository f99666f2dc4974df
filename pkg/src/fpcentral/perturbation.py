"""Machine-checked perturbation certificates for fixed-point centralities.

The contraction route: with L0 < 1 the contraction modulus of f(A, .) on
a feasible ball of radius R, L1 the graph-sensitivity constant, and Lg
the Lipschitz constant of the output map g,

    ||rho_A - rho_B|| <= L1 Lg / (1 - L0) * ||A - B||_op.

Variants swap the right-hand side for a minimum over relabelings
(Wasserstein form), or for sqrt(8 * cut-distance) on symmetric matrices
with entries in [-1, 1], and the same shapes hold for step graphons with
the scaled operator and cut norms.  A certificate records both sides,
the constants actually used, a content digest of the inputs, and whether
every ingredient was computed exactly (``certified``); heuristic or
sampled ingredients clear the flag but never weaken ``holds``, which
always compares the two sides as computed.

Two conventions are recorded in ``notes`` wherever they apply: PageRank
perturbations are measured on the effective kernels A^T D^{-1} (the raw
weight difference does not bound the kernel difference), and the
feasible radius is enlarged when a fixed point falls outside the a
priori iterate ball, with L1 recomputed from the enlarged radius.
"""

import hashlib
import itertools
import math

from dataclasses import dataclass, replace

import numpy as np

from .centrality import apply_map, native_norm_index, pagerank_kernel, solve
from .errors import ParameterError, SizeLimitError
from .graphon import (
    StepFunction,
    graphon_cut_distance_blocks,
    graphon_katz,
    graphon_op_norm,
    graphon_pagerank,
    graphon_pagerank_kernel,
    integral,
    step_lp_norm,
)
from .graphs import Graph
from .limits import MAX_PERM_EXACT_N, exact_limit
from .norms import min_permuted_distance, operator_norm, vector_norm
from .transport import wasserstein

HOLDS_TOL = 1e-9
_NORM_PS = (1, 2, math.inf)


@dataclass(frozen=True)
class LipschitzConstants:
    """The constants of the contraction route, tied to a norm index and to
    the feasible ball of radius ``feasible_radius`` they were computed on.

    ``method`` is "analytic" for closed-form constants (L0 < 1 enforced)
    and "empirical" for sampled ratio maxima, which are lower bounds on
    the true suprema and therefore never yield certified certificates.
    """

    L0: float
    L1: float
    Lg: float
    norm_p: float
    method: str
    feasible_radius: float

    def __post_init__(self):
        if self.norm_p not in _NORM_PS:
            raise ParameterError(f"norm_p must be one of {_NORM_PS}")
        if self.method not in ("analytic", "empirical"):
            raise ParameterError("method must be 'analytic' or 'empirical'")
        if self.L0 < 0.0 or self.L1 < 0.0 or self.Lg < 0.0:
            raise ParameterError("constants must be non-negative")
        if self.method == "analytic" and not self.L0 < 1.0:
            raise ParameterError(
                f"analytic constants require L0 < 1, got L0={self.L0:.6g}; "
                "the contraction hypothesis fails for this graph and map"
            )
        if not self.feasible_radius > 0.0:
            raise ParameterError("feasible_radius must be positive")


@dataclass(frozen=True)
class BoundCertificate:
    """One checked instance of a perturbation inequality."""

    bound: float
    observed: float
    holds: bool
    slack: float
    certified: bool
    norm: str
    constants: LipschitzConstants
    inputs_digest: str
    notes: tuple

    def to_dict(self):
        return {
            "bound": self.bound,
            "observed": self.observed,
            "holds": self.holds,
            "slack": self.slack,
            "certified": self.certified,
            "norm": self.norm,
            "constants": {
                "L0": self.constants.L0,
                "L1": self.constants.L1,
                "Lg": self.constants.Lg,
                "R": self.constants.feasible_radius,
                "method": self.constants.method,
            },
            "inputs_digest": self.inputs_digest,
            "notes": list(self.notes),
        }


def _digest(*parts):
    h = hashlib.sha256()
    for part in parts:
        if isinstance(part, np.ndarray):
            arr = np.ascontiguousarray(part, dtype=float)
            h.update(str(arr.shape).encode())
            h.update(arr.tobytes())
        else:
            h.update(repr(part).encode())
        h.update(b"|")
    return h.hexdigest()


def _certificate(bound, observed, certified, norm_p, consts, digest, notes):
    bound = float(bound)
    observed = float(observed)
    return BoundCertificate(
        bound=bound,
        observed=observed,
        holds=observed <= bound + HOLDS_TOL,
        slack=bound - observed,
        certified=certified,
        norm="inf" if norm_p == math.inf else str(int(norm_p)),
        constants=consts,
        inputs_digest=digest,
        notes=tuple(notes),
    )


def constants_analytic(g, map_):
    """Closed-form contraction constants for the katz and pagerank maps.

    katz (2-norm): L0 = alpha ||A||_2, R = sqrt(n)/(1 - L0) + 1 (the
    a priori bound on iterates from the all-ones start, plus margin),
    L1 = alpha R, Lg = 1.  pagerank (1-norm): L0 = alpha ||A^T D^-1||_1,
    R = (1 - alpha)/(1 - L0) + 1, L1 = R, Lg = 1.

    The eigen family is refused: its fixed-point map has contraction
    modulus 1, so the route does not apply; grassmann_distance is the
    descriptive alternative.
    """
    if map_.family == "eigen":
        raise ParameterError(
            "eigencentrality has no contraction certificate (the linear map "
            "has L0 = 1); use grassmann_distance as a descriptive diff"
        )
    if map_.family == "katz":
        l0 = map_.alpha * operator_norm(g.weights, 2)
        if l0 >= 1.0:
            raise ParameterError(
                f"contraction hypothesis fails: alpha * ||A||_2 = {l0:.6g} >= 1"
            )
        radius = math.sqrt(g.n) / (1.0 - l0) + 1.0
        return LipschitzConstants(
            L0=l0, L1=map_.alpha * radius, Lg=1.0, norm_p=2,
            method="analytic", feasible_radius=radius,
        )
    if map_.family == "pagerank":
        l0 = map_.alpha * operator_norm(pagerank_kernel(g), 1)
        if l0 >= 1.0:
            raise ParameterError(
                f"contraction hypothesis fails: alpha * ||M||_1 = {l0:.6g} >= 1"
            )
        radius = (1.0 - map_.alpha) / (1.0 - l0) + 1.0
        return LipschitzConstants(
            L0=l0, L1=radius, Lg=1.0, norm_p=1,
            method="analytic", feasible_radius=radius,
        )
    raise ParameterError("analytic constants exist for the katz and pagerank families")


def _ball_point(rng, n, radius, p):
    direction = rng.standard_normal(n)
    scale = vector_norm(direction, p)
    if scale == 0.0:
        direction = np.ones(n)
        scale = vector_norm(direction, p)
    return direction * (radius * rng.random() / scale)


def _affine_radius(map_):
    modulus = operator_norm(map_.affine_M, 2)
    if modulus < 1.0:
        return vector_norm(map_.affine_b, 2) / (1.0 - modulus) + 1.0
    try:
        n = map_.affine_M.shape[0]
        fixed = np.linalg.solve(np.eye(n) - map_.affine_M, map_.affine_b)
    except np.linalg.LinAlgError as exc:
        raise ParameterError(
            "affine map has no usable feasible radius (I - M singular)"
        ) from exc
    return vector_norm(fixed, 2) + 1.0


def constants_empirical(g, map_, samples, seed):
    """Sampled estimates of the contraction constants.

    Draws points in the feasible ball and takes ratio maxima: L0 from
    ||f(A, x) - f(A, x_A)|| / ||x - x_A|| against the solved fixed point,
    L1 from perturbations of unit operator norm, Lg from pairs through
    the output map.  The estimates are lower bounds on the suprema, so
    certificates built from them are not certified.
    """
    if samples < 2:
        raise ParameterError("samples must be at least 2")
    if map_.family == "eigen":
        raise ParameterError("the eigen family has no iterated map to sample")
    p = native_norm_index(map_.family)
    if map_.family == "affine":
        radius = _affine_radius(map_)
    else:
        analytic = constants_analytic(g, map_)
        radius = analytic.feasible_radius
    x_fixed = solve(g, map_).feature_x
    rng = np.random.default_rng(seed)
    n = g.n
    l0_est = 0.0
    l1_est = 0.0
    lg_est = 0.0
    base = apply_map(map_, g, x_fixed)
    for _ in range(samples):
        x = _ball_point(rng, n, radius, p)
        denom = vector_norm(x - x_fixed, p)
        if denom > 1e-12:
            l0_est = max(l0_est, vector_norm(apply_map(map_, g, x) - base, p) / denom)
        perturb = rng.standard_normal((n, n))
        if map_.family == "pagerank":
            other = Graph(g.weights + perturb / operator_norm(perturb, 1))
            deviation = operator_norm(
                pagerank_kernel(g) - pagerank_kernel(other), 1
            )
        else:
            perturb /= operator_norm(perturb, p)
            other = Graph(g.weights + perturb)
            deviation = operator_norm(g.weights - other.weights, p)
        if deviation > 1e-12:
            y = _ball_point(rng, n, radius, p)
            l1_est = max(
                l1_est,
                vector_norm(apply_map(map_, g, y) - apply_map(map_, other, y), p)
                / deviation,
            )
        u = _ball_point(rng, n, radius, p)
        v = _ball_point(rng, n, radius, p)
        pair = vector_norm(u - v, p)
        if pair > 1e-12:
            # canonical g is the identity, so the ratio is exactly 1; kept
            # as a computed ratio so a different g slots in unchanged
            lg_est = max(lg_est, vector_norm(u - v, p) / pair)
    return LipschitzConstants(
        L0=l0_est, L1=l1_est, Lg=lg_est, norm_p=p,
        method="empirical", feasible_radius=radius,
    )


def _effective_pair(a, b, family):
    """The matrices whose operator-norm difference measures the
    perturbation: raw weights for katz, effective kernels for pagerank."""
    if family == "pagerank":
        return (
            pagerank_kernel(a),
            pagerank_kernel(b),
            "perturbation measured on effective kernels A^T D^-1",
        )
    return a.weights, b.weights, None


def _enlarged(consts, map_, xa_norm, xb_norm):
    """Grow the feasible ball to contain both fixed points and recompute
    the radius-dependent L1 for analytic constants."""
    needed = max(consts.feasible_radius, xa_norm + 1.0, xb_norm + 1.0)
    notes = [f"fixed-point feature norms: {xa_norm:.12g}, {xb_norm:.12g}"]
    if needed <= consts.feasible_radius:
        return consts, notes
    l1 = consts.L1
    if consts.method == "analytic":
        l1 = map_.alpha * needed if map_.family == "katz" else needed
    notes.append(
        f"feasible radius enlarged from {consts.feasible_radius:.12g} to "
        f"{needed:.12g} to contain both fixed points"
    )
    return replace(consts, L1=l1, feasible_radius=needed), notes


def theorem1_certificate(a, b, map_, consts):
    """Certificate for the basic variation bound
    ||rho_A - rho_B|| <= L1 Lg / (1 - L0) ||A - B||_op in consts.norm_p.

    Both centralities are solved to tolerance; the feasible radius is
    enlarged if either fixed point escapes it (with L1 recomputed), and
    PageRank perturbations are measured on the effective kernels.  The
    certificate is certified iff the constants are analytic.
    """
    if a.n != b.n:
        raise ParameterError("graphs must have the same number of nodes")
    if consts.L0 >= 1.0:
        raise ParameterError(
            "certificate refused: L0 >= 1 violates the contraction hypothesis"
        )
    p = consts.norm_p
    res_a = solve(a, map_)
    res_b = solve(b, map_)
    consts_used, notes = _enlarged(
        consts, map_, vector_norm(res_a.feature_x, p), vector_norm(res_b.feature_x, p)
    )
    eff_a, eff_b, kernel_note = _effective_pair(a, b, map_.family)
    if kernel_note:
        notes.append(kernel_note)
    deviation = operator_norm(eff_a - eff_b, p)
    bound = consts_used.L1 * consts_used.Lg / (1.0 - consts_used.L0) * deviation
    observed = vector_norm(res_a.rho - res_b.rho, p)
    digest = _digest(
        a.weights, b.weights, map_.family, map_.alpha, "theorem1",
        consts.method, p,
    )
    return _certificate(
        bound, observed, consts.method == "analytic", p, consts_used, digest, notes
    )


def _normalized_pair(res_a, res_b, consts, dual_one):
    """Enforce unit-sum centralities, folding the normalizer x -> x/sum(x)
    into g when the raw centralities are not already normalized.

    The folded Lipschitz constant on the region containing both fixed
    points is 1/s + R ||1||_q / s^2 with s the smaller of the two sums
    and q the dual index; it multiplies the base Lg.
    """
    sum_a = float(res_a.rho.sum())
    sum_b = float(res_b.rho.sum())
    if abs(sum_a - 1.0) <= 1e-9 and abs(sum_b - 1.0) <= 1e-9:
        return res_a.rho, res_b.rho, consts.Lg, []
    s_min = min(sum_a, sum_b)
    if s_min <= 0.0:
        raise ParameterError(
            "centralities cannot be normalized: non-positive total mass"
        )
    fold = 1.0 / s_min + consts.feasible_radius * dual_one / s_min**2
    note = (
        f"normalizer folded into g: Lg scaled by {fold:.12g} "
        f"(centrality sums {sum_a:.12g}, {sum_b:.12g})"
    )
    return res_a.rho / sum_a, res_b.rho / sum_b, consts.Lg * fold, [note]


def _dual_one_norm(p, n):
    if p == 1:
        return 1.0
    if p == 2:
        return math.sqrt(n)
    return float(n)


def prop6_certificate(a, b, map_, consts, perm_mode="exact",
                      convention="permutation_cost", jobs=1):
    """Certificate for the Wasserstein variation bound
    W_p(rho_A, rho_B) <= L1 Lg / (1 - L0) min_pi ||A^pi - B||_op,p.

    Centralities are normalized to probability vectors first (the
    normalizer is folded into g, scaling Lg); the right side minimizes
    over relabelings in the requested mode.  Certified only when the
    permutation search is exact, the convention is permutation_cost (the
    comparison quantity the bound is proved through), and the constants
    are analytic.
    """
    if a.n != b.n:
        raise ParameterError("graphs must have the same number of nodes")
    if consts.L0 >= 1.0:
        raise ParameterError(
            "certificate refused: L0 >= 1 violates the contraction hypothesis"
        )
    p = consts.norm_p
    if p not in (1, 2):
        raise ParameterError("Wasserstein certificates require norm_p in {1, 2}")
    res_a = solve(a, map_)
    res_b = solve(b, map_)
    consts_used, notes = _enlarged(
        consts, map_, vector_norm(res_a.feature_x, p), vector_norm(res_b.feature_x, p)
    )
    rho_a, rho_b, lg_used, fold_notes = _normalized_pair(
        res_a, res_b, consts_used, _dual_one_norm(p, a.n)
    )
    notes.extend(fold_notes)
    eff_a, eff_b, kernel_note = _effective_pair(a, b, map_.family)
    if kernel_note:
        notes.append(kernel_note)
    sweep = min_permuted_distance(Graph(eff_a), Graph(eff_b), p, mode=perm_mode, jobs=jobs)
    bound = consts_used.L1 * lg_used / (1.0 - consts_used.L0) * sweep.value
    observed, _ = wasserstein(rho_a, rho_b, p, convention)
    if convention != "permutation_cost":
        notes.append(
            f"observed side uses the {convention} ground metric; the bound is "
            "proved through the permutation_cost comparison quantity"
        )
    consts_used = replace(consts_used, Lg=lg_used)
    digest = _digest(
        a.weights, b.weights, map_.family, map_.alpha, "prop6",
        consts.method, p, perm_mode, convention,
    )
    certified = (
        consts.method == "analytic"
        and perm_mode == "exact"
        and convention == "permutation_cost"
    )
    return _certificate(bound, observed, certified, p, consts_used, digest, notes)


def prop7_certificate(a, b, map_, consts, convention="permutation_cost", jobs=1):
    """Certificate for the cut-norm variation bound
    W_2(rho_A, rho_B) <= L1 Lg / (1 - L0) sqrt(8 delta_cut(A, B))
    for symmetric matrices with entries in [-1, 1], where delta_cut
    minimizes the cut norm of the difference over relabelings (always the
    exact search, so n is capped).
    """
    if a.n != b.n:
        raise ParameterError("graphs must have the same number of nodes")
    if not (a.symmetric and b.symmetric):
        raise ParameterError("the cut-norm bound requires symmetric graphs")
    if max(
        float(np.max(np.abs(a.weights), initial=0.0)),
        float(np.max(np.abs(b.weights), initial=0.0)),
    ) > 1.0 + 1e-12:
        raise ParameterError("the cut-norm bound requires entries in [-1, 1]")
    if consts.norm_p != 2:
        raise ParameterError("the cut-norm bound lives in the 2-norm route")
    if consts.L0 >= 1.0:
        raise ParameterError(
            "certificate refused: L0 >= 1 violates the contraction hypothesis"
        )
    res_a = solve(a, map_)
    res_b = solve(b, map_)
    consts_used, notes = _enlarged(
        consts, map_, vector_norm(res_a.feature_x, 2), vector_norm(res_b.feature_x, 2)
    )
    rho_a, rho_b, lg_used, fold_notes = _normalized_pair(
        res_a, res_b, consts_used, _dual_one_norm(2, a.n)
    )
    notes.extend(fold_notes)
    delta = min_permuted_distance(a, b, "cut", mode="exact", jobs=jobs).value
    bound = consts_used.L1 * lg_used / (1.0 - consts_used.L0) * math.sqrt(8.0 * delta)
    observed, _ = wasserstein(rho_a, rho_b, 2, convention)
    if convention != "permutation_cost":
        notes.append(
            f"observed side uses the {convention} ground metric; the bound is "
            "proved through the permutation_cost comparison quantity"
        )
    consts_used = replace(consts_used, Lg=lg_used)
    digest = _digest(
        a.weights, b.weights, map_.family, map_.alpha, "prop7",
        consts.method, convention,
    )
    certified = consts.method == "analytic" and convention == "permutation_cost"
    return _certificate(bound, observed, certified, 2, consts_used, digest, notes)


def _graphon_constants(w, family, alpha):
    if family == "katz":
        if alpha is None or not alpha > 0.0:
            raise ParameterError("alpha must be positive")
        l0 = alpha * graphon_op_norm(w)
        if l0 >= 1.0:
            raise ParameterError(
                f"contraction hypothesis fails: alpha * lambda_1 = {l0:.6g} >= 1"
            )
        radius = 1.0 / (1.0 - l0) + 1.0
        return LipschitzConstants(
            L0=l0, L1=alpha * radius, Lg=1.0, norm_p=2,
            method="analytic", feasible_radius=radius,
        )
    if family == "pagerank":
        if alpha is None or not 0.0 < alpha < 1.0:
            raise ParameterError("alpha must lie in (0, 1)")
        l0 = alpha * operator_norm(graphon_pagerank_kernel(w), 1) / w.k
        if l0 >= 1.0:
            raise ParameterError(
                f"contraction hypothesis fails: alpha * ||kernel||_1 = {l0:.6g} >= 1"
            )
        radius = (1.0 - alpha) / (1.0 - l0) + 1.0
        return LipschitzConstants(
            L0=l0, L1=radius, Lg=1.0, norm_p=1,
            method="analytic", feasible_radius=radius,
        )
    raise ParameterError("graphon certificates exist for the katz and pagerank families")


def _graphon_solutions(a, b, family, alpha):
    if family == "katz":
        return graphon_katz(a, alpha), graphon_katz(b, alpha)
    return graphon_pagerank(a, alpha), graphon_pagerank(b, alpha)


def _graphon_effective(w, family):
    if family == "pagerank":
        return graphon_pagerank_kernel(w)
    return w.values


def _graphon_enlarged(consts, family, alpha, xa_norm, xb_norm):
    needed = max(consts.feasible_radius, xa_norm + 1.0, xb_norm + 1.0)
    notes = [f"fixed-point feature norms: {xa_norm:.12g}, {xb_norm:.12g}"]
    if needed <= consts.feasible_radius:
        return consts, notes
    l1 = alpha * needed if family == "katz" else needed
    notes.append(
        f"feasible radius enlarged from {consts.feasible_radius:.12g} to "
        f"{needed:.12g} to contain both fixed points"
    )
    return replace(consts, L1=l1, feasible_radius=needed), notes


def theorem2_certificate(a, b, family, alpha):
    """Graphon analogue of theorem1_certificate: the same contraction
    bound with the scaled step-kernel operator norms and L^p([0, 1])
    distances between the block densities."""
    if a.k != b.k:
        raise ParameterError("graphons must have the same number of blocks")
    consts = _graphon_constants(a, family, alpha)
    rho_a, rho_b = _graphon_solutions(a, b, family, alpha)
    p = consts.norm_p
    consts_used, notes = _graphon_enlarged(
        consts, family, alpha, step_lp_norm(rho_a, p), step_lp_norm(rho_b, p)
    )
    eff_a = _graphon_effective(a, family)
    eff_b = _graphon_effective(b, family)
    if family == "pagerank":
        notes.append("perturbation measured on effective kernels A o D^-1")
    deviation = operator_norm(eff_a - eff_b, p) / a.k
    bound = consts_used.L1 * consts_used.Lg / (1.0 - consts_used.L0) * deviation
    observed = step_lp_norm(StepFunction(rho_a.values - rho_b.values), p)
    digest = _digest(a.values, b.values, family, alpha, "theorem2", p)
    return _certificate(bound, observed, True, p, consts_used, digest, notes)


def _normalized_density(rho, label):
    if float(np.min(rho.values)) < -1e-12:
        raise ParameterError(
            f"{label} centrality has negative values and cannot be a density"
        )
    mass = integral(rho)
    if mass <= 0.0:
        raise ParameterError(
            f"{label} centrality has non-positive mass and cannot be normalized"
        )
    return StepFunction(np.maximum(rho.values, 0.0) / mass), mass


def _step_permutation_cost(fa, fb, p, mode):
    """min over block relabelings of the L^p distance between two step
    functions (exact enumeration for small k, sorted matching otherwise,
    which the rearrangement inequality makes optimal as well)."""
    if fa.k != fb.k:
        raise ParameterError("step functions must share a partition")
    if mode not in ("exact", "greedy"):
        raise ParameterError(f"unknown mode {mode!r}")
    k = fa.k
    limit = exact_limit(MAX_PERM_EXACT_N)
    if mode == "exact":
        if k > limit:
            raise SizeLimitError(
                f"exact relabeling search is limited to k <= {limit}, got k={k}"
            )
        perms = np.array(list(itertools.permutations(range(k))), dtype=int)
        diffs = fa.values[perms] - fb.values
        if p == 1:
            vals = np.abs(diffs).mean(axis=1)
        else:
            vals = np.sqrt((diffs * diffs).mean(axis=1))
        return float(vals.min())
    return step_lp_norm(
        StepFunction(np.sort(fa.values) - np.sort(fb.values)), p
    )


def _graphon_wasserstein_certificate(a, b, family, alpha, mode, bound_kind):
    if a.k != b.k:
        raise ParameterError("graphons must have the same number of blocks")
    consts = _graphon_constants(a, family, alpha)
    rho_a, rho_b = _graphon_solutions(a, b, family, alpha)
    p = consts.norm_p
    consts_used, notes = _graphon_enlarged(
        consts, family, alpha, step_lp_norm(rho_a, p), step_lp_norm(rho_b, p)
    )
    dens_a, mass_a = _normalized_density(rho_a, "first")
    dens_b, mass_b = _normalized_density(rho_b, "second")
    if abs(mass_a - 1.0) <= 1e-9 and abs(mass_b - 1.0) <= 1e-9:
        lg_used = consts_used.Lg
    else:
        s_min = min(mass_a, mass_b)
        fold = 1.0 / s_min + consts_used.feasible_radius / s_min**2
        lg_used = consts_used.Lg * fold
        notes.append(
            f"normalizer folded into g: Lg scaled by {fold:.12g} "
            f"(density masses {mass_a:.12g}, {mass_b:.12g})"
        )
    if bound_kind == "prop10":
        if p != 2:
            raise ParameterError("the graphon cut-norm bound lives in the L^2 route")
        peak = max(
            float(np.max(np.abs(a.values), initial=0.0)),
            float(np.max(np.abs(b.values), initial=0.0)),
        )
        if peak > 1.0 + 1e-12:
            raise ParameterError("the graphon cut-norm bound requires values in [-1, 1]")
        delta = graphon_cut_distance_blocks(a, b, mode=mode).value
        right = math.sqrt(8.0 * delta)
    else:
        if family == "pagerank":
            notes.append("perturbation measured on effective kernels A o D^-1")
        sweep = min_permuted_distance(
            Graph(_graphon_effective(a, family)),
            Graph(_graphon_effective(b, family)),
            p,
            mode=mode,
        )
        right = sweep.value / a.k
    bound = consts_used.L1 * lg_used / (1.0 - consts_used.L0) * right
    observed = _step_permutation_cost(dens_a, dens_b, p, mode)
    notes.append(
        "block relabelings are a strict subset of the measure-preserving "
        "bijections; the right-hand side is an upper bound on the true infimum"
    )
    consts_used = replace(consts_used, Lg=lg_used)
    digest = _digest(a.values, b.values, family, alpha, bound_kind, mode)
    return _certificate(bound, observed, False, p, consts_used, digest, notes)


def prop9_certificate(a, b, family, alpha, mode="exact"):
    """Graphon analogue of prop6_certificate: W_p between normalized block
    densities against the relabeling-minimized scaled operator norm.
    Never certified: block relabelings only bound the infimum over
    measure-preserving bijections from above (the inequality direction
    keeps holds = true meaningful)."""
    return _graphon_wasserstein_certificate(a, b, family, alpha, mode, "prop9")


def prop10_certificate(a, b, family, alpha, mode="exact"):
    """Graphon analogue of prop7_certificate: W_2 against
    sqrt(8 * block cut distance) for graphons with values in [-1, 1].
    Never certified, for the same relabeling-subset reason as
    prop9_certificate."""
    return _graphon_wasserstein_certificate(a, b, family, alpha, mode, "prop10")
