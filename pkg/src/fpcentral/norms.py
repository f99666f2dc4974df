"""Vector and operator norms, the exact cut norm, and permutation-minimized
matrix distances.

The cut norm here is the unscaled one: the maximum over index subsets S, T
of the absolute submatrix sum ``|sum_{i in S, j in T} a_ij|``.  The exact
computation enumerates all 2^n row subsets; for each S the optimal T is
read off the signs of the column sums over S, so the total cost is
O(2^n * n^2) done in vectorized chunks.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError, SizeLimitError
from .graphs import Permutation, degree_vector, permute
from .limits import MAX_CUT_EXACT_N, MAX_PERM_EXACT_N, exact_limit

POWER_TOL = 1e-10
POWER_MAX_ITER = 10_000
_START_SEED = 0x5EED


def _canon_p(p):
    if p in (1, "1"):
        return 1
    if p in (2, "2"):
        return 2
    if p in (math.inf, np.inf, "inf"):
        return math.inf
    raise ParameterError(f"norm index must be 1, 2 or inf, got {p!r}")


def vector_norm(v, p):
    """The p-norm of a vector for p in {1, 2, inf}."""
    p = _canon_p(p)
    v = np.asarray(v, dtype=float)
    if p == 1:
        return float(np.sum(np.abs(v)))
    if p == 2:
        return float(np.sqrt(np.sum(v * v)))
    return float(np.max(np.abs(v), initial=0.0))


def _power_iteration_sigma(m, tol=POWER_TOL, max_iter=POWER_MAX_ITER):
    """Largest singular value of ``m`` by power iteration on ``m.T @ m``.

    Deterministic seeded random start; an all-ones start would be blind to
    matrices whose top singular vector is orthogonal to it.  Raises
    NumericalError carrying the last iterate if the budget is exhausted.
    """
    n = m.shape[1]
    rng = np.random.default_rng(_START_SEED)
    x = rng.standard_normal(n)
    x /= math.sqrt(x @ x)
    sigma_prev = -1.0
    for _ in range(max_iter):
        y = m @ x
        sigma = math.sqrt(float(y @ y))
        if abs(sigma - sigma_prev) <= tol * max(sigma, 1e-300):
            return sigma
        z = m.T @ y
        nz = math.sqrt(float(z @ z))
        if nz == 0.0:
            # x fell into the null space of m.T m; restart along a fresh
            # deterministic direction
            x = rng.standard_normal(n)
            x /= math.sqrt(x @ x)
            sigma_prev = -1.0
            continue
        x = z / nz
        sigma_prev = sigma
    raise NumericalError(
        f"singular-value power iteration did not converge in {max_iter} iterations",
        last_iterate=x,
    )


def operator_norm(m, p):
    """Induced operator p-norm of a square matrix, p in {1, 2, inf}.

    p=1 is the maximum absolute column sum, p=inf the maximum absolute row
    sum.  p=2 is the largest singular value computed by power iteration on
    ``m.T @ m`` with relative tolerance 1e-10 and at most 10000 iterations.
    """
    p = _canon_p(p)
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError("operator_norm expects a square matrix")
    if p == 1:
        return float(np.abs(m).sum(axis=0).max())
    if p == math.inf:
        return float(np.abs(m).sum(axis=1).max())
    if not m.any():
        return 0.0
    return _power_iteration_sigma(m)


@dataclass(frozen=True)
class CutNormWitness:
    """A cut-norm value together with index sets that attain it."""

    value: float
    S: tuple
    T: tuple


def _lex_subset_masks(n):
    """All subsets of {0..n-1} as bitmasks, ordered lexicographically by
    their sorted index tuples (empty set first)."""
    masks = np.zeros(1, dtype=np.int64)
    for f in range(n - 1, -1, -1):
        bit = np.int64(1) << np.int64(f)
        masks = np.concatenate(
            (np.zeros(1, dtype=np.int64), bit + masks, masks[1:])
        )
    return masks


def _mask_to_tuple(mask, n):
    return tuple(i for i in range(n) if (mask >> i) & 1)


def _split_by_sign(c):
    """Best column subset for fixed row subset: take the positive-sum or the
    negative-sum columns, whichever is larger in absolute value (ties go to
    the lexicographically smaller set)."""
    vp = float(np.where(c > 0, c, 0.0).sum())
    vm = float(-np.where(c < 0, c, 0.0).sum())
    tp = tuple(np.flatnonzero(c > 0).tolist())
    tm = tuple(np.flatnonzero(c < 0).tolist())
    if vp > vm:
        return vp, tp
    if vm > vp:
        return vm, tm
    return vp, min(tp, tm)


def cut_norm_exact(m):
    """Exact cut norm with a maximizing witness (S, T).

    Enumerates row subsets S in lexicographic order and keeps the first
    maximizer, so ties resolve to the lexicographically smallest S; for a
    fixed S the two sign-optimal column sets are compared and ties resolve
    to the lexicographically smaller T.  Limited to n <= 22 (the heuristic
    covers larger matrices).
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError("cut_norm_exact expects a square matrix")
    n = m.shape[0]
    limit = exact_limit(MAX_CUT_EXACT_N)
    if n > limit:
        raise SizeLimitError(
            f"exact cut norm is limited to n <= {limit}, got n={n}; "
            "use cut_norm_heuristic for a certified lower bound"
        )
    masks = _lex_subset_masks(n)
    shifts = np.arange(n, dtype=np.int64)
    best_val = -1.0
    best_mask = 0
    chunk = 65_536
    for start in range(0, masks.shape[0], chunk):
        mk = masks[start : start + chunk]
        bits = ((mk[:, None] >> shifts) & 1).astype(float)
        col = bits @ m
        vp = np.where(col > 0, col, 0.0).sum(axis=1)
        vm = -np.where(col < 0, col, 0.0).sum(axis=1)
        vals = np.maximum(vp, vm)
        k = int(np.argmax(vals))
        if float(vals[k]) > best_val:
            best_val = float(vals[k])
            best_mask = int(mk[k])
    s_tuple = _mask_to_tuple(best_mask, n)
    if s_tuple:
        c = m[list(s_tuple), :].sum(axis=0)
    else:
        c = np.zeros(n)
    _, t_tuple = _split_by_sign(c)
    value = abs(float(m[np.ix_(s_tuple, t_tuple)].sum())) if s_tuple and t_tuple else 0.0
    return CutNormWitness(value=value, S=s_tuple, T=t_tuple)


def cut_norm_heuristic(m, restarts=16, seed=0):
    """Alternating-maximization lower bound on the cut norm.

    Fix S and pick the sign-optimal T, then fix T and pick the sign-optimal
    S; repeat until the value stops improving, over ``restarts`` starts
    (the first start is the full row set, the rest are seeded random).  Any
    witness is feasible, so the result never exceeds the exact cut norm.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError("cut_norm_heuristic expects a square matrix")
    if restarts < 1:
        raise ParameterError("restarts must be at least 1")
    n = m.shape[0]
    rng = np.random.default_rng(seed)
    best = CutNormWitness(value=-1.0, S=(), T=())
    for r in range(restarts):
        if r == 0:
            s = np.ones(n, dtype=bool)
        else:
            s = rng.random(n) < 0.5
            if not s.any():
                s[int(rng.integers(n))] = True
        value = -1.0
        s_idx = tuple(np.flatnonzero(s).tolist())
        t_idx = ()
        for _ in range(1000):
            c = m[list(s_idx), :].sum(axis=0) if s_idx else np.zeros(n)
            v1, t_idx = _split_by_sign(c)
            rsum = m[:, list(t_idx)].sum(axis=1) if t_idx else np.zeros(n)
            v2, s_idx = _split_by_sign(rsum)
            if v2 <= value + 1e-15:
                value = max(value, v2, v1)
                break
            value = v2
        attained = (
            abs(float(m[np.ix_(s_idx, t_idx)].sum())) if s_idx and t_idx else 0.0
        )
        if attained > best.value:
            best = CutNormWitness(value=attained, S=s_idx, T=t_idx)
    if best.value < 0.0:
        best = CutNormWitness(value=0.0, S=(), T=())
    return best


@dataclass(frozen=True)
class PermutedDistanceResult:
    """Distance between two graphs minimized over node relabelings."""

    value: float
    permutation: Permutation
    certified: bool
    mode: str
    norm: str


def _canon_matrix_norm(norm):
    if norm in ("cut", "CUT"):
        return "cut"
    p = _canon_p(norm)
    return {1: "1", 2: "2", math.inf: "inf"}[p]


def _matrix_distance(d, norm):
    if norm == "cut":
        return cut_norm_exact(d).value
    if norm == "1":
        return operator_norm(d, 1)
    if norm == "inf":
        return operator_norm(d, math.inf)
    return operator_norm(d, 2)


def _batched_sigma(mats, tol=POWER_TOL, max_iter=POWER_MAX_ITER):
    """Largest singular values of a stack of square matrices, by the same
    power-iteration scheme as operator_norm(m, 2)."""
    m, n, _ = mats.shape
    rng = np.random.default_rng(_START_SEED)
    x0 = rng.standard_normal(n)
    x0 /= math.sqrt(x0 @ x0)
    x = np.broadcast_to(x0, (m, n)).copy()
    sigma_prev = np.full(m, -1.0)
    for _ in range(max_iter):
        ax = np.einsum("kij,kj->ki", mats, x)
        sigma = np.sqrt(np.einsum("ki,ki->k", ax, ax))
        if np.all(np.abs(sigma - sigma_prev) <= tol * np.maximum(sigma, 1e-300)):
            return sigma
        z = np.einsum("kji,kj->ki", mats, ax)
        nz = np.sqrt(np.einsum("ki,ki->k", z, z))
        dead = nz == 0.0
        if np.any(dead):
            nonzero_mat = mats.reshape(m, -1).any(axis=1)
            revive = dead & nonzero_mat
            settle = dead & ~nonzero_mat
            sigma_prev = sigma.copy()
            if np.any(revive):
                # the iterate fell into the null space of a nonzero matrix;
                # restart those rows along fresh deterministic directions
                fresh = rng.standard_normal((int(revive.sum()), n))
                fresh /= np.sqrt(np.einsum("ki,ki->k", fresh, fresh))[:, None]
                z[revive] = fresh
                nz[revive] = 1.0
                sigma_prev[revive] = -1.0
            if np.any(settle):
                # all-zero matrix: sigma 0 is exact, keep the iterate
                z[settle] = x[settle]
                nz[settle] = 1.0
        else:
            sigma_prev = sigma
        x = z / nz[:, None]
    raise NumericalError(
        f"batched singular-value iteration did not converge in {max_iter} iterations",
        last_iterate=x,
    )


def _batched_cut(mats):
    """Exact cut norms of a stack of square matrices (values only)."""
    _, n, _ = mats.shape
    masks = _lex_subset_masks(n)
    shifts = np.arange(n, dtype=np.int64)
    bits = ((masks[:, None] >> shifts) & 1).astype(float)
    col = np.einsum("sn,knj->ksj", bits, mats)
    vp = np.where(col > 0, col, 0.0).sum(axis=2)
    vm = -np.where(col < 0, col, 0.0).sum(axis=2)
    return np.maximum(vp, vm).max(axis=1)


def _chunk_values(a_w, b_w, perm_block, norm):
    inv = np.argsort(perm_block, axis=1)
    d = a_w[inv[:, :, None], inv[:, None, :]] - b_w
    if norm == "1":
        return np.abs(d).sum(axis=1).max(axis=1)
    if norm == "inf":
        return np.abs(d).sum(axis=2).max(axis=1)
    if norm == "2":
        return _batched_sigma(d)
    return _batched_cut(d)


def min_permuted_distance(a, b, norm, mode="exact", jobs=1):
    """Minimize ``norm(A^pi - B)`` over node relabelings pi of the first graph.

    Parameters
    ----------
    a, b : Graph
        Graphs on the same number of nodes.
    norm : {1, 2, "inf", "cut"}
        Matrix norm used for the distance.
    mode : {"exact", "greedy"}
        "exact" enumerates all n! permutations (n <= 8) and returns the
        true minimum together with its lexicographically first minimizer.
        "greedy" pairs nodes by sorted degree sequence (ties by node index)
        and reports that single permutation's distance, an upper bound on
        the infimum; such results carry certified=False.
    jobs : int
        Number of worker threads for the exact permutation sweep.  The
        result does not depend on it.

    Returns
    -------
    PermutedDistanceResult
    """
    norm = _canon_matrix_norm(norm)
    if a.n != b.n:
        raise ParameterError("graphs must have the same number of nodes")
    if mode not in ("exact", "greedy"):
        raise ParameterError(f"unknown mode {mode!r}")
    if jobs < 1:
        raise ParameterError("jobs must be at least 1")
    n = a.n
    if mode == "greedy":
        order_a = np.lexsort((np.arange(n), degree_vector(a)))
        order_b = np.lexsort((np.arange(n), degree_vector(b)))
        mapping = np.empty(n, dtype=int)
        mapping[order_a] = order_b
        p = Permutation(mapping)
        value = _matrix_distance(permute(a, p).weights - b.weights, norm)
        return PermutedDistanceResult(
            value=value, permutation=p, certified=False, mode=mode, norm=norm
        )
    limit = exact_limit(MAX_PERM_EXACT_N)
    if n > limit:
        raise SizeLimitError(
            f"exact permutation search is limited to n <= {limit}, got n={n}"
        )
    perms = np.array(list(itertools.permutations(range(n))), dtype=int)
    chunk = 2000
    blocks = [perms[s : s + chunk] for s in range(0, perms.shape[0], chunk)]

    def evaluate(block):
        vals = _chunk_values(a.weights, b.weights, block, norm)
        k = int(np.argmin(vals))
        return float(vals[k]), k

    if jobs == 1 or len(blocks) == 1:
        results = [evaluate(block) for block in blocks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(evaluate, blocks))
    best_val = math.inf
    best_perm = None
    for block, (val, k) in zip(blocks, results):
        if val < best_val:
            best_val = val
            best_perm = block[k]
    p = Permutation(best_perm)
    value = _matrix_distance(permute(a, p).weights - b.weights, norm)
    return PermutedDistanceResult(
        value=value, permutation=p, certified=True, mode=mode, norm=norm
    )
