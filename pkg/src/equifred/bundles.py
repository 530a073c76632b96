"""Finite equivariant sample bundles and symbol ellipticity over isotypes.

A bundle is a finite set of sample points carrying a group action, a unitary
transport cocycle between fibers, and base-point labels.  A symbol field
assigns a fiber endomorphism to every point, equivariantly up to tolerance.
The central object is the set X of (point, isotype) pairs: ellipticity
relative to a character alpha asks that the symbol blocks attached to the
alpha-associated part of X are uniformly invertible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .groups import (
    Character,
    ElementT,
    Group,
    Subgroup,
    SubgroupCharacter,
    all_subgroups,
    associated,
    coset_transversal,
    full_subgroup,
    trivial_subgroup,
)
from .reps import (
    UnitaryRep,
    carrier_dual,
    decompose,
    isotypical_basis,
    isotypical_projector,
    random_rep,
)


class ModelInconsistencyError(ValueError):
    """The bundle data contradicts itself (stabilizers, isotypes, or cocycle)."""


@dataclass(frozen=True)
class Violation:
    kind: str
    location: str
    detail: str


@dataclass(frozen=True)
class BundleValidation:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True, eq=False)
class EquivariantSampleBundle:
    """Finite group-set with unitary fiber transport.

    points are ids (strings); base maps each point to its base-point label;
    action maps (group element, point) to a point; transport maps the same
    keys to a unitary matrix from the fiber at the point to the fiber at its
    image.
    """

    group: Group
    points: tuple[str, ...]
    base: Mapping[str, str]
    action: Mapping[tuple[ElementT, str], str]
    fiber_dim: Mapping[str, int]
    transport: Mapping[tuple[ElementT, str], np.ndarray]

    def act(self, g: ElementT, p: str) -> str:
        return self.action[(g, p)]

    def transport_matrix(self, g: ElementT, p: str) -> np.ndarray:
        return self.transport[(g, p)]


def sample_bundle(
    group: Group,
    points: Iterable[str],
    base: Mapping[str, str],
    action: Mapping,
    fiber_dim: Mapping[str, int],
    transport: Mapping,
) -> EquivariantSampleBundle:
    """Normalize raw bundle data (sorted points, immutable complex matrices)."""
    pts = tuple(sorted(str(p) for p in points))
    tr = {}
    for key, m in transport.items():
        arr = np.array(m, dtype=complex)
        arr.setflags(write=False)
        tr[key] = arr
    return EquivariantSampleBundle(
        group, pts, dict(base), dict(action), {p: int(d) for p, d in fiber_dim.items()}, tr
    )


def validate_bundle(b: EquivariantSampleBundle, *, tol: float = 1e-10) -> BundleValidation:
    """Check action, base-label, fiber-dimension, and cocycle axioms.

    Collects every violation with a location instead of stopping at the first.
    """
    out: list[Violation] = []
    pts = set(b.points)
    elems = b.group.elements

    def key(g: ElementT) -> str:
        return ",".join(str(x) for x in g)

    def bad(kind, loc, detail):
        out.append(Violation(kind, loc, detail))

    for g in elems:
        for p in b.points:
            if (g, p) not in b.action:
                bad("action", f"/action/{key(g)}/{p}", "missing")
                continue
            q = b.action[(g, p)]
            if q not in pts:
                bad("action", f"/action/{key(g)}/{p}", f"image {q!r} is not a point")
    if out:
        return BundleValidation(tuple(out))

    for p in b.points:
        if b.act(b.group.identity, p) != p:
            bad("action", f"/action/{key(b.group.identity)}/{p}", "identity must fix every point")
    for g, h, p in itertools.product(elems, elems, b.points):
        if b.act(g, b.act(h, p)) != b.act(b.group.op(g, h), p):
            bad(
                "action",
                f"/action/{key(g)}/{b.act(h, p)}",
                f"composition law fails against {key(b.group.op(g, h))} at {p}",
            )

    for p in b.points:
        if p not in b.base:
            bad("base", f"/base/{p}", "missing label")
    if not any(v.kind == "base" for v in out):
        for g in elems:
            seen: dict[str, str] = {}
            for p in b.points:
                lbl, img = b.base[p], b.base[b.act(g, p)]
                if lbl in seen and seen[lbl] != img:
                    bad(
                        "base",
                        f"/base/{b.act(g, p)}",
                        f"label {lbl!r} moves inconsistently under {key(g)}",
                    )
                seen.setdefault(lbl, img)

    for p in b.points:
        if p not in b.fiber_dim or b.fiber_dim[p] < 1:
            bad("fiber", f"/fiber_dim/{p}", "missing or non-positive")
    if any(v.kind == "fiber" for v in out):
        return BundleValidation(tuple(out))

    for g in elems:
        for p in b.points:
            if (g, p) not in b.transport:
                bad("transport", f"/transport/{key(g)}/{p}", "missing")
                continue
            m = b.transport[(g, p)]
            want = (b.fiber_dim[b.act(g, p)], b.fiber_dim[p])
            if m.shape != want:
                bad("transport", f"/transport/{key(g)}/{p}", f"shape {m.shape}, expected {want}")
    if any(v.kind == "transport" for v in out):
        return BundleValidation(tuple(out))

    for g in elems:
        for p in b.points:
            m = b.transport[(g, p)]
            err = np.linalg.norm(m.conj().T @ m - np.eye(m.shape[1]), 2)
            if err > tol:
                bad("transport", f"/transport/{key(g)}/{p}", f"not unitary ({err:.3e})")
    for p in b.points:
        m = b.transport[(b.group.identity, p)]
        if np.linalg.norm(m - np.eye(m.shape[0]), 2) > tol:
            bad("transport", f"/transport/{key(b.group.identity)}/{p}", "identity transport != I")
    for g, h, p in itertools.product(elems, elems, b.points):
        lhs = b.transport[(g, b.act(h, p))] @ b.transport[(h, p)]
        rhs = b.transport[(b.group.op(g, h), p)]
        err = np.linalg.norm(lhs - rhs, 2)
        if err > tol:
            bad(
                "transport",
                f"/transport/{key(g)}/{b.act(h, p)}",
                f"cocycle defect {err:.3e} against {key(b.group.op(g, h))} at {p}",
            )
    return BundleValidation(tuple(out))


def require_valid(b: EquivariantSampleBundle, *, tol: float = 1e-10) -> None:
    v = validate_bundle(b, tol=tol)
    if not v.ok:
        lines = "; ".join(f"{x.location}: {x.detail}" for x in v.violations[:5])
        raise ValueError(f"bundle fails validation: {lines}")


# ---------------------------------------------------------------------------
# orbits, isotropy, fibers


def orbit_of(b: EquivariantSampleBundle, p: str) -> tuple[str, ...]:
    return tuple(sorted({b.act(g, p) for g in b.group.elements}))


def orbits(b: EquivariantSampleBundle) -> tuple[tuple[str, ...], ...]:
    """Point orbits, each sorted, listed by their least member."""
    done: set[str] = set()
    out = []
    for p in b.points:
        if p in done:
            continue
        orb = orbit_of(b, p)
        done.update(orb)
        out.append(orb)
    return tuple(out)


def isotropy(b: EquivariantSampleBundle, p: str) -> Subgroup:
    """Stabilizer subgroup of a point."""
    if p not in b.base:
        raise ValueError(f"{p!r} is not a point of the bundle")
    fixed = tuple(sorted(g for g in b.group.elements if b.act(g, p) == p))
    return Subgroup(b.group, fixed)


def minimal_isotropy(b: EquivariantSampleBundle) -> Subgroup:
    """The smallest stabilizer; it must embed in every other stabilizer.

    On an empty bundle the infimum over no stabilizers is the full group.
    """
    stabs = {isotropy(b, p) for p in b.points}
    if not stabs:
        return full_subgroup(b.group)
    least = min(stabs, key=lambda s: (s.order, s.elements))
    for s in stabs:
        if not least.is_subgroup_of(s):
            raise ModelInconsistencyError(
                f"stabilizer {least.elements} is not contained in {s.elements}"
            )
    return least


def fiber_rep(b: EquivariantSampleBundle, p: str) -> UnitaryRep:
    """The stabilizer representation on the fiber at p, from the transport."""
    h = isotropy(b, p)
    mats = {g: b.transport_matrix(g, p) for g in h.elements}
    return UnitaryRep(h, b.fiber_dim[p], mats)


# ---------------------------------------------------------------------------
# the isotype set X


@dataclass(frozen=True)
class XPoint:
    """A sample point together with one isotype of its stabilizer fiber action."""

    point: str
    rho: SubgroupCharacter


def build_X(b: EquivariantSampleBundle, *, rel_tol: float = 1e-8) -> tuple:
    """All (point, isotype) pairs with positive multiplicity, grouped into orbits.

    Each orbit is a tuple of XPoints sorted by point id; orbits are listed by
    (least point id, isotype).  The isotype content is computed at every point
    and must agree along each orbit, otherwise the bundle data is inconsistent.
    """
    present: dict[str, tuple[SubgroupCharacter, ...]] = {}
    for p in b.points:
        mv = decompose(fiber_rep(b, p), rel_tol=rel_tol)
        present[p] = mv.characters()
    out = []
    for orb in orbits(b):
        head = present[orb[0]]
        for p in orb[1:]:
            if present[p] != head:
                raise ModelInconsistencyError(
                    f"isotypes differ along the orbit of {orb[0]!r} at {p!r}"
                )
        for rho in head:
            out.append(tuple(XPoint(p, rho) for p in orb))
    out.sort(key=lambda o: (o[0].point, o[0].rho.representative.exponents))
    return tuple(out)


def build_X_alpha(x_orbits: tuple, alpha: Character, gamma0: Subgroup) -> tuple:
    """The alpha-associated part of X: orbits whose isotype matches alpha on gamma0."""
    return tuple(
        orb for orb in x_orbits if associated(alpha, orb[0].rho, gamma0)
    )


def partition_by_beta(x_orbits: tuple, gamma0: Subgroup) -> dict:
    """Partition X by the restriction of the isotype to gamma0.

    Keys are characters of gamma0; only inhabited parts appear, so the parts
    are disjoint and exhaust X.  Every isotype's subgroup must contain gamma0.
    """
    parts: dict[SubgroupCharacter, list] = {}
    for orb in x_orbits:
        rho = orb[0].rho
        if not gamma0._member_set <= rho.subgroup._member_set:
            raise ValueError("gamma0 must be contained in every stabilizer appearing in X")
        beta = SubgroupCharacter(gamma0, rho.representative)
        parts.setdefault(beta, []).append(orb)
    keys = sorted(parts, key=lambda c: c.representative.exponents)
    return {k: tuple(parts[k]) for k in keys}


# ---------------------------------------------------------------------------
# symbol fields


@dataclass(frozen=True, eq=False)
class SymbolField:
    """A fiber endomorphism at every sample point."""

    bundle: EquivariantSampleBundle
    values: Mapping[str, np.ndarray]

    def value(self, p: str) -> np.ndarray:
        return self.values[p]


def symbol_field(bundle: EquivariantSampleBundle, values: Mapping[str, np.ndarray]) -> SymbolField:
    store = {}
    for p in bundle.points:
        if p not in values:
            raise ValueError(f"symbol is missing a value at {p!r}")
        m = np.array(values[p], dtype=complex)
        d = bundle.fiber_dim[p]
        if m.shape != (d, d):
            raise ValueError(f"symbol at {p!r} has shape {m.shape}, expected {(d, d)}")
        m.setflags(write=False)
        store[p] = m
    return SymbolField(bundle, store)


def symbol_equivariance_defect(sym: SymbolField) -> float:
    """Largest deviation from transport-conjugation equivariance, in 2-norm."""
    b = sym.bundle
    worst = 0.0
    for g in b.group.elements:
        for p in b.points:
            t = b.transport_matrix(g, p)
            lhs = sym.value(b.act(g, p))
            rhs = t @ sym.value(p) @ t.conj().T
            worst = max(worst, float(np.linalg.norm(lhs - rhs, 2)))
    return worst


def propagate_symbol(
    bundle: EquivariantSampleBundle,
    seed_values: Mapping[str, np.ndarray],
    *,
    tol: float = 1e-10,
) -> SymbolField:
    """Extend stabilizer-invariant values on orbit representatives equivariantly.

    seed_values must contain one matrix per orbit (keyed by any point in it);
    each seed must commute with the stabilizer action at its point.
    """
    values: dict[str, np.ndarray] = {}
    for p0, raw in seed_values.items():
        raw = np.asarray(raw, dtype=complex)
        rep = fiber_rep(bundle, p0)
        worst = max(
            float(np.linalg.norm(rep.matrix(h) @ raw - raw @ rep.matrix(h), 2))
            for h in rep.elements
        )
        if worst > tol * max(1.0, float(np.linalg.norm(raw, 2))):
            raise ValueError(f"seed at {p0!r} is not stabilizer-invariant ({worst:.3e})")
        for g in bundle.group.elements:
            q = bundle.act(g, p0)
            if q in values:
                continue
            t = bundle.transport_matrix(g, p0)
            values[q] = t @ raw @ t.conj().T
    missing = [p for p in bundle.points if p not in values]
    if missing:
        raise ValueError(f"seeds cover no orbit containing {missing[0]!r}")
    return symbol_field(bundle, values)


def gamma_symbol_eval(sym: SymbolField, xp: XPoint, *, rel_tol: float = 1e-8) -> np.ndarray:
    """The symbol block on one isotype: compress sigma(point) to the rho-subspace."""
    b = sym.bundle
    rep = fiber_rep(b, xp.point)
    if xp.rho.subgroup != rep.carrier:
        raise ValueError("isotype does not belong to the stabilizer at this point")
    basis = isotypical_basis(rep, xp.rho, rel_tol=rel_tol)
    if basis.shape[1] == 0:
        raise ValueError(
            f"isotype {xp.rho.representative.exponents} is absent from the fiber at {xp.point!r}"
        )
    return basis.conj().T @ sym.value(xp.point) @ basis


def pointwise_invertible(sym: SymbolField, *, tol: float = 1e-8) -> bool:
    """Plain invertibility of the symbol at every point, same margin rule as blocks."""
    for p in sym.bundle.points:
        s = np.linalg.svd(sym.value(p), compute_uv=False)
        if s[-1] < tol * max(1.0, float(s[0])):
            return False
    return True


# ---------------------------------------------------------------------------
# the ellipticity verdict


@dataclass(frozen=True)
class EllipticityEntry:
    point: str
    rho: SubgroupCharacter
    orbit_representative: str
    block_dim: int
    smallest_singular_value: float
    condition_estimate: float


@dataclass(frozen=True)
class EllipticityReport:
    alpha: Character
    gamma0: Subgroup
    tol: float
    entries: tuple[EllipticityEntry, ...]
    verdict: bool
    warnings: tuple[str, ...]


def alpha_elliptic_check(
    sym: SymbolField,
    alpha: Character,
    *,
    tol: float = 1e-8,
    equiv_tol: float = 1e-8,
    gamma0: Subgroup | None = None,
) -> EllipticityReport:
    """Decide alpha-ellipticity of a symbol field.

    The verdict is True when every block over the alpha-associated isotype set
    has smallest singular value >= tol * max(1, block norm), judged at one
    representative per orbit.  Every XPoint still gets an entry, and the
    spread of the singular values along each orbit is certified; a spread
    beyond 1e-9 (relative) only produces a warning since the verdict at the
    representative stands.  An empty associated set yields a vacuous True with
    a warning.
    """
    b = sym.bundle
    require_valid(b)
    defect = symbol_equivariance_defect(sym)
    scale = max(
        [1.0] + [float(np.linalg.norm(sym.value(p), 2)) for p in b.points]
    )
    if defect > equiv_tol * scale:
        raise ValueError(f"symbol is not equivariant (defect {defect:.3e})")
    g0 = gamma0 if gamma0 is not None else minimal_isotropy(b)
    x_alpha = build_X_alpha(build_X(b), alpha, g0)

    warnings: list[str] = []
    entries: list[EllipticityEntry] = []
    verdict = True
    if not x_alpha:
        warnings.append(
            "vacuous: no sample isotype is associated to alpha over the minimal isotropy"
        )
    for orb in x_alpha:
        rep_point = orb[0].point
        mins: list[float] = []
        rep_ok = True
        for xp in orb:
            block = gamma_symbol_eval(sym, xp)
            s = np.linalg.svd(block, compute_uv=False)
            smin, smax = float(s[-1]), float(s[0])
            cond = smax / smin if smin > 0 else float("inf")
            entries.append(
                EllipticityEntry(
                    xp.point, xp.rho, rep_point, block.shape[0], smin, cond
                )
            )
            mins.append(smin)
            if xp.point == rep_point:
                rep_ok = smin >= tol * max(1.0, smax)
        spread = max(mins) - min(mins)
        if spread > 1e-9 * max(1.0, max(mins)):
            warnings.append(
                f"orbit of {rep_point!r}: singular values spread by {spread:.3e}"
            )
        verdict = verdict and rep_ok
    return EllipticityReport(alpha, g0, tol, tuple(entries), verdict, tuple(warnings))


# ---------------------------------------------------------------------------
# primitive-ideal style enumeration


@dataclass(frozen=True)
class PrimRecord:
    """One point orbit with the isotypes sitting over it."""

    orbit: tuple[str, ...]
    representative: str
    isotypes: tuple[SubgroupCharacter, ...]


def prim_enumerate(b: EquivariantSampleBundle, *, rel_tol: float = 1e-8) -> tuple:
    """Orbit list of X with its fibration over point orbits.

    Each record holds a point orbit and the isotypes of its fiber action; the
    record's fiber size is the number of distinct isotypes present, which is
    exactly how many X-orbits sit over that point orbit.
    """
    require_valid(b)
    x_orbits = build_X(b, rel_tol=rel_tol)
    by_orbit: dict[tuple[str, ...], list[SubgroupCharacter]] = {}
    for orb in x_orbits:
        key = tuple(xp.point for xp in orb)
        by_orbit.setdefault(key, []).append(orb[0].rho)
    records = [
        PrimRecord(key, key[0], tuple(rhos)) for key, rhos in by_orbit.items()
    ]
    records.sort(key=lambda r: r.representative)
    return tuple(records)


# ---------------------------------------------------------------------------
# random instances (used by the demos and the test suite)


def random_bundle(
    group: Group,
    rng: np.random.Generator,
    *,
    n_orbits: int | None = None,
    max_fiber_dim: int = 3,
    min_isotropy: Subgroup | None = None,
    ensure_free_orbit: bool = False,
) -> EquivariantSampleBundle:
    """Random valid bundle whose stabilizers all contain a chosen minimal one.

    The first orbit realizes the minimal isotropy exactly, so minimal_isotropy
    is well-defined on the result.  With ensure_free_orbit the minimal
    isotropy is forced trivial and the first orbit is free.
    """
    subs = all_subgroups(group)
    if ensure_free_orbit:
        g0 = trivial_subgroup(group)
    elif min_isotropy is not None:
        g0 = min_isotropy
    else:
        g0 = subs[int(rng.integers(len(subs)))]
    containing = [s for s in subs if g0.is_subgroup_of(s)]
    count = n_orbits if n_orbits is not None else int(rng.integers(1, 4))

    points: list[str] = []
    base: dict[str, str] = {}
    action: dict = {}
    fdim: dict[str, int] = {}
    transport: dict = {}
    for o in range(count):
        stab = g0 if o == 0 else containing[int(rng.integers(len(containing)))]
        v = random_rep(stab, int(rng.integers(1, max_fiber_dim + 1)), rng)
        reps_ = coset_transversal(group, stab)
        locate: dict[ElementT, tuple[int, ElementT]] = {}
        for j, x in enumerate(reps_):
            for h in stab.elements:
                locate[group.op(x, h)] = (j, h)
        ids = [f"o{o}p{j}" for j in range(len(reps_))]
        for j, pid in enumerate(ids):
            points.append(pid)
            base[pid] = pid
            fdim[pid] = v.dim
        for g in group.elements:
            for j, pid in enumerate(ids):
                tgt_j, h = locate[group.op(g, reps_[j])]
                action[(g, pid)] = ids[tgt_j]
                transport[(g, pid)] = v.matrix(h)
    return sample_bundle(group, points, base, action, fdim, transport)


def random_symbol(
    bundle: EquivariantSampleBundle,
    rng: np.random.Generator,
    *,
    shift: float = 0.0,
    kill_isotype: bool = False,
) -> SymbolField:
    """Random equivariant symbol, one stabilizer-invariant seed per orbit.

    shift adds shift*I to each seed (pushes it toward invertibility);
    kill_isotype zeroes one randomly chosen isotype block of the first orbit's
    seed, producing a symbol that is singular on that isotype.
    """
    seeds: dict[str, np.ndarray] = {}
    first = True
    for orb in orbits(bundle):
        p0 = orb[0]
        rep = fiber_rep(bundle, p0)
        d = rep.dim
        raw = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        sym0 = sum(
            rep.matrix(h) @ raw @ rep.matrix(h).conj().T for h in rep.elements
        ) / len(rep.elements)
        sym0 = sym0 + shift * np.eye(d)
        if kill_isotype and first:
            mv = decompose(rep)
            chars = mv.characters()
            rho = chars[int(rng.integers(len(chars)))]
            p = isotypical_projector(rep, rho)
            sym0 = sym0 @ (np.eye(d) - p)
            first = False
        seeds[p0] = sym0
    return propagate_symbol(bundle, seeds)
