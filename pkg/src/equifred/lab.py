"""Numerical laboratory on circle grids: invariant operators, isotypical
blocks, Fredholm proxy sweeps, and interval boundary-value problems realized
by doubling into a symmetric circle problem.

Grid functions live on n equispaced points of the circle; the symmetry is a
cyclic rotation group or the order-two reflection.  Boundary conditions on an
interval are encoded by doubling: reflections act on the doubled circle, with
a sign twist on every Dirichlet double, and the boundary-value spectrum is the
spectrum of the doubled operator compressed to the fully invariant subspace.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .groups import Character, Group
from .reps import (
    UnitaryRep,
    deterministic_range_basis,
    equivariance_defect,
    pi_alpha_restrict,
    unitary_rep,
)


def rotation_circle_rep(n: int, m: int) -> UnitaryRep:
    """Z_m acting on n circle points by rotation (shift by n/m)."""
    if n % m != 0:
        raise ValueError(f"rotation order {m} must divide the grid size {n}")
    group = Group((m,))
    step = n // m
    mats = {}
    for (a,) in group.elements:
        mat = np.zeros((n, n), dtype=complex)
        for j in range(n):
            mat[(j + a * step) % n, j] = 1.0
        mats[(a,)] = mat
    return unitary_rep(group, mats, validate=False)


def reflection_circle_rep(n: int) -> UnitaryRep:
    """Z_2 acting on n circle points by the angle flip j -> -j."""
    group = Group((2,))
    eye = np.eye(n, dtype=complex)
    flip = np.zeros((n, n), dtype=complex)
    for j in range(n):
        flip[(-j) % n, j] = 1.0
    return unitary_rep(group, {(0,): eye, (1,): flip}, validate=False)


@dataclass(frozen=True, eq=False)
class GridOperator:
    """A matrix on circle grid functions together with its symmetry action."""

    n: int
    matrix: np.ndarray
    group_rep: UnitaryRep
    kind: str


def _circle_angles(n: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(n) / n


def build_invariant_circle_operator(
    n: int,
    m: int,
    kind: str,
    *,
    action: str = "rotation",
    potential: Callable[[np.ndarray], np.ndarray] | Sequence[float] | None = None,
    tol: float = 1e-10,
) -> GridOperator:
    """Assemble an invariant operator on the n-point circle.

    kind is one of "shifted_laplacian" (second-difference Laplacian plus one),
    "potential" (multiplication by a sampled potential), or "composite" (their
    sum).  The action is the order-m rotation or, with action="reflection",
    the angle flip (m must then be 2).  Non-invariant potentials are rejected:
    the operator must commute with the action to `tol` relative to its norm.
    """
    if action == "rotation":
        rep = rotation_circle_rep(n, m)
    elif action == "reflection":
        if m != 2:
            raise ValueError("reflection symmetry has order 2")
        rep = reflection_circle_rep(n)
    else:
        raise ValueError(f"unknown action {action!r}")

    h = 2.0 * np.pi / n
    lap = np.zeros((n, n), dtype=complex)
    for j in range(n):
        lap[j, j] = 2.0 / h**2 + 1.0
        lap[j, (j + 1) % n] += -1.0 / h**2
        lap[j, (j - 1) % n] += -1.0 / h**2

    if kind == "shifted_laplacian":
        mat = lap
    elif kind in ("potential", "composite"):
        if potential is None:
            raise ValueError(f"kind {kind!r} needs a potential")
        if callable(potential):
            samples = np.asarray(potential(_circle_angles(n)), dtype=complex)
        else:
            samples = np.asarray(potential, dtype=complex)
        if samples.shape != (n,):
            raise ValueError(f"potential samples have shape {samples.shape}, expected ({n},)")
        mat = np.diag(samples)
        if kind == "composite":
            mat = mat + lap
    else:
        raise ValueError(f"unknown operator kind {kind!r}")

    scale = max(1.0, float(np.linalg.norm(mat, 2)))
    defect = equivariance_defect(rep, mat)
    if defect > tol * scale:
        raise ValueError(
            f"operator does not commute with the {action} action (defect {defect:.3e})"
        )
    return GridOperator(n, mat, rep, kind)


def isotypical_block(op: GridOperator, alpha: Character, *, rel_tol: float = 1e-8) -> np.ndarray:
    """Compress an invariant grid operator to one isotypical block."""
    return pi_alpha_restrict(op.group_rep, op.matrix, alpha, rel_tol=rel_tol)


def build_fixed_point_degenerate_operator(n: int) -> GridOperator:
    """Reflection-invariant operator that is singular exactly on the even isotype.

    Multiplication by sin^2(theta) on the even (trivial-isotype) part, the
    identity on the odd (sign-isotype) part.  The multiplier vanishes at both
    reflection fixed points, so the even blocks degenerate under refinement
    while the odd blocks stay unit size.
    """
    if n % 2 != 0:
        raise ValueError("needs an even grid so both reflection fixed points are nodes")
    rep = reflection_circle_rep(n)
    group = rep.carrier
    p_even = sum(rep.matrix(g) for g in group.elements) / group.order
    p_odd = np.eye(n) - p_even
    mult = np.diag(np.sin(_circle_angles(n)) ** 2).astype(complex)
    mat = mult @ p_even + p_odd
    return GridOperator(n, mat, rep, "fixed_point_degenerate")


# ---------------------------------------------------------------------------
# refinement sweeps


@dataclass(frozen=True)
class RefinementSweep:
    """k-th smallest singular value of one isotypical block across grid sizes."""

    alpha: Character
    k: int
    sizes: tuple[int, ...]
    values: tuple[float, ...]
    verdict: str


def _sweep_verdict(values: Sequence[float]) -> str:
    """Stable / degenerating decision from the swept values.

    All values numerically zero, or an overall fall to at most a fifth of the
    peak, counts as degenerating; staying within 20 percent of the peak counts
    as stable; anything in between is inconclusive.
    """
    vmax = max(values)
    if vmax <= 1e-12:
        return "degenerating"
    ratio = min(values) / vmax
    if ratio <= 0.2:
        return "degenerating"
    if ratio >= 0.8:
        return "stable"
    return "inconclusive"


def fredholm_proxy_sweep(
    family: Callable[[int], GridOperator],
    alpha: Character,
    sizes: Sequence[int],
    *,
    k: int = 4,
    rel_tol: float = 1e-8,
) -> RefinementSweep:
    """Track the k-th smallest singular value of the alpha-block under refinement.

    The k-th smallest (default 4) discounts a possible finite-dimensional
    kernel.  A block that stays bounded below signals a Fredholm-stable
    family; decay toward zero signals the opposite.  Sizes are processed in
    increasing order.
    """
    if k < 1:
        raise ValueError("k must be positive")
    sizes = tuple(sorted(int(n) for n in sizes))
    if len(sizes) < 2:
        raise ValueError("a sweep needs at least two sizes")
    values = []
    for n in sizes:
        op = family(n)
        block = isotypical_block(op, alpha, rel_tol=rel_tol)
        if block.shape[0] < k:
            raise ValueError(
                f"alpha-block at n={n} has dimension {block.shape[0]} < k={k}"
            )
        s = np.linalg.svd(block, compute_uv=False)
        values.append(float(np.sort(s)[k - 1]))
    return RefinementSweep(alpha, k, sizes, tuple(values), _sweep_verdict(values))


# ---------------------------------------------------------------------------
# interval boundary-value problems by doubling


_BC_ALIASES = {
    "d": "dirichlet",
    "dirichlet": "dirichlet",
    "n": "neumann",
    "neumann": "neumann",
}


def _normalize_bc(bc: Sequence[str]) -> tuple[str, str]:
    if len(bc) != 2:
        raise ValueError("boundary conditions are a (left, right) pair")
    out = []
    for side in bc:
        key = str(side).strip().lower()
        if key not in _BC_ALIASES:
            raise ValueError(f"unknown boundary condition {side!r}")
        out.append(_BC_ALIASES[key])
    return tuple(out)  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class DoubledProblem:
    """Interval problem encoded on a doubled circle with reflection symmetry.

    The interval [0, pi] is discretized with n subintervals; the circle has
    grid_size points with the same spacing.  One involution per doubled
    boundary part acts on circle functions, sign-twisted when that part is
    Dirichlet; the boundary-value problem is the doubled operator on the fully
    invariant subspace.  free_nodes are the base-interval node indices that
    parametrize that subspace (Dirichlet endpoints drop out).
    """

    base_n: int
    bc: tuple[str, str]
    grid_size: int
    h: float
    group: Group
    rep: UnitaryRep
    operator: np.ndarray
    free_nodes: tuple[int, ...]
    invariant_dim: int


def _signed_flip(size: int, center_doubled: int, sign: float) -> np.ndarray:
    """Matrix of u_j -> sign * u_{center_doubled - j (mod size)}."""
    mat = np.zeros((size, size), dtype=complex)
    for j in range(size):
        mat[(center_doubled - j) % size, j] = sign
    return mat


def double_interval_bvp(n: int, bc: Sequence[str]) -> DoubledProblem:
    """Double the interval across its boundary parts into a symmetric circle.

    Matching boundary conditions double once (circle of 2n points, one
    involution); mixed conditions double twice (4n points, a Z_2 x Z_2
    action, doubling across the Dirichlet part first).  Every Dirichlet
    double carries the sign twist, so the invariant functions vanish there;
    Neumann doubles are untwisted, matching the even (ghost-point) extension.
    """
    if n < 4:
        raise ValueError("grid must have at least 4 subintervals")
    left, right = _normalize_bc(bc)
    h = math.pi / n

    if left == right:
        size = 2 * n
        group = Group((2,))
        sign = -1.0 if left == "dirichlet" else 1.0
        flip = _signed_flip(size, 0, sign)
        mats = {(0,): np.eye(size, dtype=complex), (1,): flip}
        rep = unitary_rep(group, mats, validate=False)
        if left == "dirichlet":
            free = tuple(range(1, n))
        else:
            free = tuple(range(0, n + 1))
    else:
        size = 4 * n
        group = Group((2, 2))
        # first involution doubles across the Dirichlet endpoint, with the
        # sign twist; the second doubles across the Neumann endpoint
        if left == "dirichlet":
            a = _signed_flip(size, 0, -1.0)      # fixes theta = 0
            b = _signed_flip(size, 2 * n, 1.0)   # fixes theta = pi
            free = tuple(range(1, n + 1))
        else:
            a = _signed_flip(size, 2 * n, -1.0)  # Dirichlet at theta = pi
            b = _signed_flip(size, 0, 1.0)
            free = tuple(range(0, n))
        mats = {
            (0, 0): np.eye(size, dtype=complex),
            (1, 0): a,
            (0, 1): b,
            (1, 1): a @ b,
        }
        rep = unitary_rep(group, mats, validate=False)

    lap = np.zeros((size, size), dtype=complex)
    for j in range(size):
        lap[j, j] = 2.0 / h**2
        lap[j, (j + 1) % size] += -1.0 / h**2
        lap[j, (j - 1) % size] += -1.0 / h**2

    proj = sum(rep.matrix(g) for g in group.elements) / group.order
    trace = float(np.trace(proj).real)
    inv_dim = int(round(trace))
    if abs(trace - inv_dim) > 1e-9:
        raise ValueError(f"invariant dimension came out non-integral ({trace})")
    return DoubledProblem(
        n, (left, right), size, h, group, rep, lap, free, inv_dim
    )


def invariant_subspace_basis(problem: DoubledProblem) -> np.ndarray:
    """Reproducible orthonormal basis of the fully invariant circle functions."""
    group = problem.group
    proj = sum(problem.rep.matrix(g) for g in group.elements) / group.order
    return deterministic_range_basis(proj, problem.invariant_dim)


def restriction_to_base(problem: DoubledProblem) -> np.ndarray:
    """Selection matrix reading off doubled functions at the free base nodes.

    Base node i sits at doubled index i (the first copy of the interval).
    """
    rows = np.zeros((len(problem.free_nodes), problem.grid_size), dtype=complex)
    for r, j in enumerate(problem.free_nodes):
        rows[r, j] = 1.0
    return rows


def mixed_bvp_spectrum(problem: DoubledProblem, count: int) -> np.ndarray:
    """Lowest eigenvalues of the boundary-value problem, via the doubled circle.

    Compresses the doubled second-difference Laplacian to the invariant
    subspace and diagonalizes; the result approximates the interval spectrum
    under the requested boundary conditions with second-order accuracy.
    """
    if count < 1 or count > problem.invariant_dim:
        raise ValueError(
            f"can return between 1 and {problem.invariant_dim} eigenvalues, got {count}"
        )
    basis = invariant_subspace_basis(problem)
    compressed = basis.conj().T @ problem.operator @ basis
    compressed = (compressed + compressed.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(compressed)
    return eigs[:count]


def analytic_bvp_spectrum(bc: Sequence[str], count: int) -> np.ndarray:
    """Continuum eigenvalues of -u'' on [0, pi] under the boundary conditions."""
    left, right = _normalize_bc(bc)
    k = np.arange(count, dtype=float)
    if left == right == "dirichlet":
        return (k + 1.0) ** 2
    if left == right == "neumann":
        return k**2
    return (k + 0.5) ** 2


def convergence_order(sizes: Sequence[int], errors: Sequence[float]) -> float:
    """Least-squares slope of error against grid size on log-log axes, negated."""
    logs_n = np.log(np.asarray(sizes, dtype=float))
    logs_e = np.log(np.asarray(errors, dtype=float))
    slope = np.polyfit(logs_n, logs_e, 1)[0]
    return float(-slope)
