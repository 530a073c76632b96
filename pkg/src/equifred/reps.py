"""Unitary representations of finite abelian groups and their isotypical calculus.

Provides character projectors, multiplicity extraction by numerical rank,
compression to isotypical blocks in a reproducible basis, induction from a
subgroup realized on a fixed coset transversal, the two averaging maps between
invariants/homomorphism spaces, and the kernel/image split of the isotypical
compression on induced endomorphism algebras.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .groups import (
    Character,
    ElementT,
    Group,
    Subgroup,
    SubgroupCharacter,
    associated,
    characters_of_subgroup,
    coset_transversal,
    dual_characters,
    full_subgroup,
)

CarrierT = Group | Subgroup


class AmbiguousRankError(ArithmeticError):
    """A singular value fell too close to the rank cut to decide a multiplicity."""


class InternalInconsistencyError(RuntimeError):
    """Two routes to the same quantity disagreed; the result cannot be trusted."""


def carrier_dual(carrier: CarrierT):
    """Characters of a group, or canonical characters of a subgroup."""
    if isinstance(carrier, Group):
        return dual_characters(carrier)
    return characters_of_subgroup(carrier.parent, carrier)


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """Unitary representation given by one matrix per carrier element."""

    carrier: CarrierT
    dim: int
    matrices: Mapping[ElementT, np.ndarray]

    def matrix(self, g: ElementT) -> np.ndarray:
        return self.matrices[g]

    @property
    def elements(self) -> tuple[ElementT, ...]:
        return self.carrier.elements


def unitary_rep(
    carrier: CarrierT,
    matrices: Mapping[ElementT, np.ndarray],
    *,
    validate: bool = True,
    tol: float = 1e-10,
) -> UnitaryRep:
    """Build a UnitaryRep, checking unitarity and the homomorphism law.

    Parameters
    ----------
    carrier : Group or Subgroup
        The acting group.
    matrices : mapping element -> (d, d) array
        One unitary matrix per element of the carrier.
    validate : bool
        When True (default) every matrix is checked unitary and every product
        relation U(g) U(h) = U(gh) is checked to `tol` in operator norm.
        Builders that produce exact permutation matrices may skip this.
    """
    elems = carrier.elements
    missing = [g for g in elems if g not in matrices]
    if missing:
        raise ValueError(f"representation is missing matrices for {missing[:3]}...")
    first = np.asarray(matrices[elems[0]])
    dim = first.shape[0]
    store: dict[ElementT, np.ndarray] = {}
    for g in elems:
        m = np.array(matrices[g], dtype=complex)
        if m.shape != (dim, dim):
            raise ValueError(f"matrix for {g} has shape {m.shape}, expected {(dim, dim)}")
        m.setflags(write=False)
        store[g] = m
    if validate:
        eye = np.eye(dim)
        ident = store[carrier.identity]
        if np.linalg.norm(ident - eye, 2) > tol:
            raise ValueError("matrix at the identity is not the identity")
        for g in elems:
            if np.linalg.norm(store[g].conj().T @ store[g] - eye, 2) > tol:
                raise ValueError(f"matrix for {g} is not unitary to {tol}")
        for g in elems:
            for h in elems:
                gh = carrier.op(g, h)
                if np.linalg.norm(store[g] @ store[h] - store[gh], 2) > tol:
                    raise ValueError(
                        f"homomorphism law fails at ({g}, {h}) beyond {tol}"
                    )
    return UnitaryRep(carrier, dim, store)


# ---------------------------------------------------------------------------
# builders


def character_rep(chi: Character | SubgroupCharacter) -> UnitaryRep:
    """One-dimensional representation with the given character."""
    if isinstance(chi, SubgroupCharacter):
        carrier: CarrierT = chi.subgroup
    else:
        carrier = chi.group
    mats = {g: np.array([[chi.value(g)]]) for g in carrier.elements}
    return unitary_rep(carrier, mats, validate=False)


def diagonal_rep(carrier: CarrierT, chars: Sequence[Character | SubgroupCharacter]) -> UnitaryRep:
    """Direct sum of one-dimensional representations, as diagonal matrices."""
    mats = {
        g: np.diag([chi.value(g) for chi in chars]).astype(complex)
        for g in carrier.elements
    }
    return unitary_rep(carrier, mats, validate=False)


def regular_rep(carrier: CarrierT) -> UnitaryRep:
    """Permutation representation of the carrier on itself by translation."""
    elems = carrier.elements
    index = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    mats = {}
    for g in elems:
        m = np.zeros((n, n), dtype=complex)
        for h in elems:
            m[index[carrier.op(g, h)], index[h]] = 1.0
        mats[g] = m
    return unitary_rep(carrier, mats, validate=False)


def direct_sum(*reps: UnitaryRep) -> UnitaryRep:
    """Block-diagonal direct sum of representations of the same carrier."""
    carrier = reps[0].carrier
    if any(r.carrier != carrier for r in reps):
        raise ValueError("direct sum requires a common carrier")
    mats = {}
    for g in carrier.elements:
        blocks = [r.matrix(g) for r in reps]
        total = sum(r.dim for r in reps)
        m = np.zeros((total, total), dtype=complex)
        at = 0
        for b in blocks:
            m[at : at + b.shape[0], at : at + b.shape[0]] = b
            at += b.shape[0]
        mats[g] = m
    return unitary_rep(carrier, mats, validate=False)


def conjugate_rep(rep: UnitaryRep, u: np.ndarray) -> UnitaryRep:
    """Conjugate every matrix by a fixed unitary u."""
    mats = {g: u @ rep.matrix(g) @ u.conj().T for g in rep.elements}
    return unitary_rep(rep.carrier, mats, validate=False)


def restrict_rep(rep: UnitaryRep, sub: Subgroup) -> UnitaryRep:
    """Restriction of a group representation to a subgroup carrier."""
    if not isinstance(rep.carrier, Group) or sub.parent != rep.carrier:
        raise ValueError("can only restrict a full-group representation to its subgroup")
    mats = {h: rep.matrix(h) for h in sub.elements}
    return UnitaryRep(sub, rep.dim, mats)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian with phase fix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_rep(carrier: CarrierT, dim: int, rng: np.random.Generator) -> UnitaryRep:
    """Random representation: random character multiset conjugated by a Haar unitary."""
    dual = carrier_dual(carrier)
    chars = [dual[int(i)] for i in rng.integers(0, len(dual), size=dim)]
    return conjugate_rep(diagonal_rep(carrier, chars), haar_unitary(dim, rng))


# ---------------------------------------------------------------------------
# rank decisions and the reproducible range basis


def numerical_rank(a: np.ndarray, *, rel_tol: float = 1e-8) -> int:
    """Rank by singular values, refusing to decide ambiguous cases.

    Values below rel_tol * max(1, s_max) count as zero.  A singular value
    within a factor 10 of that threshold (either side) raises
    AmbiguousRankError instead of silently choosing.
    """
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    thresh = rel_tol * max(1.0, float(s[0]))
    near = s[(s >= thresh / 10) & (s <= thresh * 10)]
    if near.size:
        raise AmbiguousRankError(
            f"singular value {near[0]:.3e} within a factor 10 of cut {thresh:.3e}"
        )
    return int(np.count_nonzero(s > thresh))


def deterministic_range_basis(a: np.ndarray, rank: int, *, rel_tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis of the column range, reproducible across runs.

    Pivoted modified Gram-Schmidt over the columns of `a`: at each step the
    column with the largest residual norm is taken (lowest index on ties),
    normalized, re-orthogonalized once, and removed from the rest.  The pivot
    rule is fixed so serialized output built on this basis is byte-stable.

    Returns an (n, rank) array.
    """
    work = np.array(a, dtype=complex)
    n = work.shape[0]
    basis = np.zeros((n, rank), dtype=complex)
    for step in range(rank):
        norms = np.linalg.norm(work, axis=0)
        j = int(np.argmax(norms))
        if norms[j] <= rel_tol:
            raise AmbiguousRankError(
                f"range collapsed after {step} columns, expected rank {rank}"
            )
        q = work[:, j] / norms[j]
        if step:
            prev = basis[:, :step]
            q = q - prev @ (prev.conj().T @ q)
            q = q / np.linalg.norm(q)
        basis[:, step] = q
        work -= np.outer(q, q.conj() @ work)
    return basis


# ---------------------------------------------------------------------------
# isotypical calculus


def isotypical_projector(rep: UnitaryRep, chi: Character | SubgroupCharacter) -> np.ndarray:
    """Orthogonal projector onto the chi-isotypical subspace.

    The character coefficient enters conjugated, so the projector averages the
    action against chi and is idempotent and Hermitian for unitary input.
    """
    if isinstance(chi, SubgroupCharacter):
        if chi.subgroup != rep.carrier:
            raise ValueError("character belongs to a different subgroup than the carrier")
    elif chi.group != rep.carrier:
        raise ValueError("character belongs to a different group than the carrier")
    elems = rep.elements
    acc = np.zeros((rep.dim, rep.dim), dtype=complex)
    for g in elems:
        acc += np.conj(chi.value(g)) * rep.matrix(g)
    return acc / len(elems)


def isotypical_basis(
    rep: UnitaryRep, chi: Character | SubgroupCharacter, *, rel_tol: float = 1e-8
) -> np.ndarray:
    """Reproducible orthonormal basis of the chi-isotypical subspace."""
    p = isotypical_projector(rep, chi)
    rank = numerical_rank(p, rel_tol=rel_tol)
    return deterministic_range_basis(p, rank, rel_tol=rel_tol)


@dataclass(frozen=True)
class MultiplicityVector:
    """Multiplicities of the characters appearing in a representation.

    Only characters with positive multiplicity are stored; lookups of absent
    characters return 0.  The total always equals the dimension.
    """

    entries: tuple
    dim: int

    def __getitem__(self, chi) -> int:
        for key, mult in self.entries:
            if key == chi:
                return mult
        return 0

    def as_dict(self) -> dict:
        return dict(self.entries)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def characters(self) -> tuple:
        return tuple(k for k, _ in self.entries)


def _char_sort_key(chi: Character | SubgroupCharacter):
    if isinstance(chi, SubgroupCharacter):
        return chi.representative.exponents
    return chi.exponents


def decompose(rep: UnitaryRep, *, rel_tol: float = 1e-8) -> MultiplicityVector:
    """Multiplicity of every carrier character, via projector ranks.

    Ranks are read off the singular values of each isotypical projector; an
    ambiguous rank raises AmbiguousRankError.  The multiplicities are checked
    to sum to the dimension.
    """
    entries = []
    for chi in carrier_dual(rep.carrier):
        p = isotypical_projector(rep, chi)
        mult = numerical_rank(p, rel_tol=rel_tol)
        if mult:
            entries.append((chi, mult))
    entries.sort(key=lambda pair: _char_sort_key(pair[0]))
    mv = MultiplicityVector(tuple(entries), rep.dim)
    if mv.total != rep.dim:
        raise InternalInconsistencyError(
            f"multiplicities sum to {mv.total}, dimension is {rep.dim}"
        )
    return mv


def equivariance_defect(rep: UnitaryRep, m: np.ndarray) -> float:
    """Largest commutator norm between m and the representation matrices."""
    return max(
        float(np.linalg.norm(rep.matrix(g) @ m - m @ rep.matrix(g), 2))
        for g in rep.elements
    )


@dataclass(frozen=True, eq=False)
class EquivariantEndomorphism:
    """A matrix together with the representation it commutes with."""

    rep: UnitaryRep
    matrix: np.ndarray


def equivariant_endomorphism(
    rep: UnitaryRep, matrix: np.ndarray, *, tol: float = 1e-10
) -> EquivariantEndomorphism:
    """Wrap a matrix after checking it commutes with the representation."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (rep.dim, rep.dim):
        raise ValueError(f"matrix shape {m.shape} does not match dim {rep.dim}")
    defect = equivariance_defect(rep, m)
    if defect > tol * max(1.0, float(np.linalg.norm(m, 2))):
        raise ValueError(
            f"matrix does not commute with the action (defect {defect:.3e})"
        )
    return EquivariantEndomorphism(rep, m)


def pi_alpha_restrict(
    rep: UnitaryRep | EquivariantEndomorphism,
    m: np.ndarray | Character | SubgroupCharacter,
    chi: Character | SubgroupCharacter | None = None,
    *,
    commute_tol: float = 1e-8,
    rel_tol: float = 1e-8,
) -> np.ndarray:
    """Compress an equivariant matrix to the chi-isotypical block.

    Accepts either (rep, matrix, character) or (EquivariantEndomorphism,
    character).  The matrix must commute with the representation; the defect
    is measured relative to max(1, |m|) and rejected beyond `commute_tol`.
    The block is expressed in the reproducible isotypical basis, so repeated
    runs give identical entries.
    """
    if isinstance(rep, EquivariantEndomorphism):
        if chi is not None:
            raise TypeError("pass the character as the second argument")
        rep, m, chi = rep.rep, rep.matrix, m
    if chi is None:
        raise TypeError("missing the character argument")
    m = np.asarray(m, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(m, 2)))
    defect = equivariance_defect(rep, m)
    if defect > commute_tol * scale:
        raise ValueError(
            f"matrix does not commute with the action (defect {defect:.3e})"
        )
    basis = isotypical_basis(rep, chi, rel_tol=rel_tol)
    return basis.conj().T @ m @ basis


# ---------------------------------------------------------------------------
# induction


def _as_subgroup(carrier: CarrierT, gamma: Group) -> Subgroup:
    if isinstance(carrier, Group):
        if carrier != gamma:
            raise ValueError("carrier group differs from the induction target")
        return full_subgroup(gamma)
    if carrier.parent != gamma:
        raise ValueError("carrier subgroup does not sit inside the induction target")
    return carrier


def induce(rep: UnitaryRep, gamma: Group) -> UnitaryRep:
    """Induced representation on a fixed coset transversal.

    The underlying space is indexed by (coset, fiber) pairs over the
    lexicographically least coset representatives, in that order.  Each group
    element acts as a block permutation of the cosets twisted by the subgroup
    representation; the dimension is the index times dim(rep).
    """
    sub = _as_subgroup(rep.carrier, gamma)
    reps_ = coset_transversal(gamma, sub)
    r, d = len(reps_), rep.dim
    # which coset an element lies in, and its subgroup part relative to the
    # chosen representative
    locate: dict[ElementT, tuple[int, ElementT]] = {}
    for j, x in enumerate(reps_):
        for h in sub.elements:
            locate[gamma.op(x, h)] = (j, h)
    mats = {}
    for g in gamma.elements:
        m = np.zeros((r * d, r * d), dtype=complex)
        for i, x in enumerate(reps_):
            j, h = locate[gamma.op(g, x)]
            m[j * d : (j + 1) * d, i * d : (i + 1) * d] = rep.matrix(h)
        mats[g] = m
    return unitary_rep(gamma, mats, validate=False)


def frobenius_invariant_map(rep: UnitaryRep, gamma: Group, xi: np.ndarray, *, tol: float = 1e-10):
    """Average a subgroup-invariant vector (or algebra element) into the induction.

    For a vector this returns the block vector with xi repeated over every
    coset; for a square matrix it returns the block-diagonal operator with xi
    in every coset block.  Both are exactly the group average of coset
    translates, and the operator form is multiplicative.
    """
    sub = _as_subgroup(rep.carrier, gamma)
    reps_ = coset_transversal(gamma, sub)
    xi = np.asarray(xi, dtype=complex)
    if xi.ndim == 1:
        if xi.shape != (rep.dim,):
            raise ValueError(f"vector has length {xi.shape}, representation dim {rep.dim}")
        worst = max(
            float(np.linalg.norm(rep.matrix(h) @ xi - xi)) for h in sub.elements
        )
        if worst > tol * max(1.0, float(np.linalg.norm(xi))):
            raise ValueError(f"vector is not invariant (defect {worst:.3e})")
        return np.tile(xi, len(reps_))
    if xi.shape != (rep.dim, rep.dim):
        raise ValueError(f"matrix shape {xi.shape} does not match dim {rep.dim}")
    worst = equivariance_defect(UnitaryRep(sub, rep.dim, rep.matrices), xi)
    if worst > tol * max(1.0, float(np.linalg.norm(xi, 2))):
        raise ValueError(f"matrix is not invariant (defect {worst:.3e})")
    return np.kron(np.eye(len(reps_)), xi)


def frobenius_hom_map(
    f: np.ndarray,
    source: UnitaryRep,
    target: UnitaryRep,
    *,
    tol: float = 1e-10,
) -> np.ndarray:
    """Turn a subgroup-equivariant map source -> target into a full-group map
    source -> induced(target).

    `source` is a representation of the full group, `target` one of the
    subgroup; `f` maps the source space to the target space and must intertwine
    the subgroup actions.  The result averages f against the subgroup and
    composes with the transversal translates, blocked per coset in the same
    indexing that `induce` uses.
    """
    if not isinstance(source.carrier, Group):
        raise ValueError("source must be a representation of the full group")
    gamma = source.carrier
    sub = _as_subgroup(target.carrier, gamma)
    f = np.asarray(f, dtype=complex)
    if f.shape != (target.dim, source.dim):
        raise ValueError(
            f"map has shape {f.shape}, expected {(target.dim, source.dim)}"
        )
    scale = max(1.0, float(np.linalg.norm(f, 2)))
    worst = max(
        float(np.linalg.norm(f @ source.matrix(h) - target.matrix(h) @ f, 2))
        for h in sub.elements
    )
    if worst > tol * scale:
        raise ValueError(f"map does not intertwine the subgroup actions ({worst:.3e})")
    averaged = sum(
        target.matrix(h) @ f @ source.matrix(gamma.inv(h)) for h in sub.elements
    ) / sub.order
    reps_ = coset_transversal(gamma, sub)
    blocks = [averaged @ source.matrix(gamma.inv(x)) for x in reps_]
    return np.vstack(blocks)


# ---------------------------------------------------------------------------
# commutants and the induced-endomorphism split


def null_space_basis(a: np.ndarray, *, rel_tol: float = 1e-8) -> np.ndarray:
    """Orthonormal null-space basis with the same rank cut as numerical_rank."""
    if a.size == 0:
        return np.eye(a.shape[1], dtype=complex)
    u, s, vh = np.linalg.svd(a)
    thresh = rel_tol * max(1.0, float(s[0]) if s.size else 0.0)
    near = s[(s >= thresh / 10) & (s <= thresh * 10)]
    if near.size:
        raise AmbiguousRankError(
            f"singular value {near[0]:.3e} within a factor 10 of cut {thresh:.3e}"
        )
    rank = int(np.count_nonzero(s > thresh))
    return vh[rank:].conj().T


def intertwiner_basis(
    source: UnitaryRep, target: UnitaryRep, *, rel_tol: float = 1e-8
) -> list[np.ndarray]:
    """Basis of maps f with f source(g) = target(g) f, by a direct linear solve.

    This is the independent route to homomorphism-space dimensions: it stacks
    the commutation constraints for every carrier element and extracts the
    null space, never touching character projectors.
    """
    if source.carrier.elements != target.carrier.elements:
        raise ValueError("intertwiners need a common carrier element set")
    ds, dt = source.dim, target.dim
    rows = []
    eye_s = np.eye(ds)
    eye_t = np.eye(dt)
    for g in source.elements:
        # row-major vec: vec(A f B) = (A kron B^T) vec(f)
        rows.append(np.kron(eye_t, source.matrix(g).T) - np.kron(target.matrix(g), eye_s))
    stacked = np.vstack(rows)
    null = null_space_basis(stacked, rel_tol=rel_tol)
    return [null[:, i].reshape(dt, ds) for i in range(null.shape[1])]


def commutant_factors(rep: UnitaryRep, *, rel_tol: float = 1e-8) -> tuple:
    """The isotypes present in a representation with their multiplicities.

    For an abelian carrier the commutant is a direct sum of full matrix
    algebras, one k_j x k_j block per isotype present with multiplicity k_j;
    this returns the (character, k_j) list sorted by character.
    """
    mv = decompose(rep, rel_tol=rel_tol)
    return tuple(mv.entries)


def commutant_dimension(rep: UnitaryRep, *, rel_tol: float = 1e-8) -> int:
    """Dimension of the commutant by solving the commutation system directly."""
    return len(intertwiner_basis(rep, rep, rel_tol=rel_tol))


@dataclass(frozen=True)
class KerImSplit:
    """Which commutant factors die and which survive under an isotypical
    compression of the induced endomorphism algebra."""

    factors: tuple  # (SubgroupCharacter, multiplicity) pairs
    ker_indices: tuple[int, ...]
    im_indices: tuple[int, ...]


def ker_im_pi_alpha(
    sub: Subgroup,
    gamma: Group,
    beta: UnitaryRep,
    alpha: Character,
    *,
    rel_tol: float = 1e-8,
) -> KerImSplit:
    """Split the commutant factors of beta by the alpha-compression on the induction.

    Predicts that a factor survives exactly when its isotype agrees with alpha
    on the subgroup, then verifies the prediction by brute force: every factor
    is spanned inside the induced endomorphism algebra and compressed to the
    alpha-block, and the observed kernel must match.  A mismatch raises
    InternalInconsistencyError.
    """
    if beta.carrier != sub:
        raise ValueError("beta must be a representation of the given subgroup")
    factors = commutant_factors(beta, rel_tol=rel_tol)
    predicted_im = tuple(
        j for j, (rho, _) in enumerate(factors) if associated(alpha, rho, sub)
    )
    predicted_ker = tuple(
        j for j in range(len(factors)) if j not in predicted_im
    )

    ind = induce(beta, gamma)
    basis_a = isotypical_basis(ind, alpha, rel_tol=rel_tol)
    index = gamma.order // sub.order
    eye_cosets = np.eye(index)

    observed_im = []
    observed_ker = []
    for j, (rho, k) in enumerate(factors):
        bj = isotypical_basis(beta, rho, rel_tol=rel_tol)
        compressed = []
        for a, b in itertools.product(range(k), repeat=2):
            t = np.outer(bj[:, a], bj[:, b].conj())
            big = np.kron(eye_cosets, t)
            block = basis_a.conj().T @ big @ basis_a
            compressed.append(block.reshape(-1))
        stacked = np.array(compressed)
        if stacked.size == 0 or basis_a.shape[1] == 0:
            rank = 0
        else:
            rank = numerical_rank(stacked, rel_tol=rel_tol)
        if rank == k * k:
            observed_im.append(j)
        elif rank == 0:
            observed_ker.append(j)
        else:
            raise InternalInconsistencyError(
                f"factor {j} compressed to rank {rank}, expected 0 or {k * k}"
            )
    if tuple(observed_im) != predicted_im or tuple(observed_ker) != predicted_ker:
        raise InternalInconsistencyError(
            f"association predicted im={predicted_im}, observed im={tuple(observed_im)}"
        )
    return KerImSplit(factors, predicted_ker, predicted_im)
