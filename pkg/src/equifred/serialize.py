"""JSON document schemas and byte-stable report serialization.

Documents use comma-joined residue tuples as element keys ("0,1" for the
element (0, 1)) and [re, im] pairs for complex entries.  Loading failures
carry a pointer into the document ("/transport/1/p0") so the CLI can report
exactly where the input went wrong.  Serialization sorts keys and prints
floats at 17 significant digits, so identical inputs produce identical bytes.
"""
from __future__ import annotations

import json
import math
from typing import Any, Mapping

import numpy as np

from .bundles import EquivariantSampleBundle, SymbolField, sample_bundle, symbol_field
from .groups import Character, ElementT, Group, SubgroupCharacter
from .reps import MultiplicityVector, UnitaryRep, unitary_rep


class InputDocumentError(ValueError):
    """Malformed input document, with a pointer to the offending node."""

    def __init__(self, path: str, message: str):
        self.path = path or "/"
        super().__init__(f"{self.path}: {message}")


def element_key(g: ElementT) -> str:
    return ",".join(str(x) for x in g)


def parse_element_key(key: str, group: Group, path: str) -> ElementT:
    parts = key.split(",")
    if len(parts) != len(group.orders):
        raise InputDocumentError(
            path, f"element key {key!r} has {len(parts)} coordinates, group has {len(group.orders)}"
        )
    try:
        residues = tuple(int(p) for p in parts)
    except ValueError:
        raise InputDocumentError(path, f"element key {key!r} is not a residue tuple")
    for r, n in zip(residues, group.orders):
        if not 0 <= r < n:
            raise InputDocumentError(
                path, f"element key {key!r} is not reduced modulo {group.orders}"
            )
    return residues


def _need(doc: Mapping, field: str, path: str) -> Any:
    if field not in doc:
        raise InputDocumentError(f"{path}/{field}", "missing")
    return doc[field]


def _as_dict(node: Any, path: str) -> Mapping:
    if not isinstance(node, dict):
        raise InputDocumentError(path, f"expected an object, got {type(node).__name__}")
    return node


def _as_list(node: Any, path: str) -> list:
    if not isinstance(node, list):
        raise InputDocumentError(path, f"expected an array, got {type(node).__name__}")
    return node


def _as_int(node: Any, path: str) -> int:
    if isinstance(node, bool) or not isinstance(node, int):
        raise InputDocumentError(path, f"expected an integer, got {node!r}")
    return node


def parse_complex(node: Any, path: str) -> complex:
    pair = _as_list(node, path)
    if len(pair) != 2 or not all(isinstance(x, (int, float)) for x in pair):
        raise InputDocumentError(path, "complex entries are [re, im] pairs")
    return complex(pair[0], pair[1])


def parse_matrix(node: Any, path: str) -> np.ndarray:
    rows = _as_list(node, path)
    if not rows:
        raise InputDocumentError(path, "matrix must be non-empty")
    data = []
    width = None
    for i, row in enumerate(rows):
        entries = _as_list(row, f"{path}/{i}")
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise InputDocumentError(f"{path}/{i}", "ragged matrix rows")
        data.append([parse_complex(e, f"{path}/{i}/{j}") for j, e in enumerate(entries)])
    return np.array(data, dtype=complex)


def matrix_doc(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


# ---------------------------------------------------------------------------
# groups and representations


def load_group(doc: Any, path: str = "") -> Group:
    node = _as_dict(doc, path or "/")
    orders = _as_list(_need(node, "orders", path), f"{path}/orders")
    if not orders:
        raise InputDocumentError(f"{path}/orders", "needs at least one cyclic order")
    vals = []
    for i, n in enumerate(orders):
        v = _as_int(n, f"{path}/orders/{i}")
        if v < 1:
            raise InputDocumentError(f"{path}/orders/{i}", "orders must be positive")
        vals.append(v)
    return Group(tuple(vals))


def group_doc(group: Group) -> dict:
    return {"orders": list(group.orders)}


def load_rep(doc: Any, path: str = "") -> UnitaryRep:
    node = _as_dict(doc, path or "/")
    group = load_group(_need(node, "group", path), f"{path}/group")
    dim = _as_int(_need(node, "dim", path), f"{path}/dim")
    mats_doc = _as_dict(_need(node, "matrices", path), f"{path}/matrices")
    mats: dict[ElementT, np.ndarray] = {}
    for key, mnode in mats_doc.items():
        g = parse_element_key(key, group, f"{path}/matrices/{key}")
        m = parse_matrix(mnode, f"{path}/matrices/{key}")
        if m.shape != (dim, dim):
            raise InputDocumentError(
                f"{path}/matrices/{key}", f"shape {m.shape}, declared dim {dim}"
            )
        mats[g] = m
    missing = [g for g in group.elements if g not in mats]
    if missing:
        raise InputDocumentError(
            f"{path}/matrices", f"missing matrix for element {element_key(missing[0])!r}"
        )
    try:
        return unitary_rep(group, mats)
    except ValueError as exc:
        raise InputDocumentError(f"{path}/matrices", str(exc))


def rep_doc(rep: UnitaryRep) -> dict:
    if not isinstance(rep.carrier, Group):
        raise ValueError("only full-group representations are serialized")
    return {
        "group": group_doc(rep.carrier),
        "dim": rep.dim,
        "matrices": {element_key(g): matrix_doc(rep.matrix(g)) for g in rep.elements},
    }


def character_doc(chi: Character | SubgroupCharacter) -> list:
    if isinstance(chi, SubgroupCharacter):
        return list(chi.representative.exponents)
    return list(chi.exponents)


def multiplicity_doc(mv: MultiplicityVector) -> dict:
    return {
        "dim": mv.dim,
        "entries": [
            {"character": character_doc(chi), "multiplicity": m} for chi, m in mv.entries
        ],
    }


# ---------------------------------------------------------------------------
# bundles and symbols


def load_bundle(doc: Any, path: str = "") -> tuple[EquivariantSampleBundle, SymbolField | None]:
    """Parse a bundle document, with its symbol when present.

    A document with "fiber_dim_out"/"transport_out" describes a morphism
    bundle between two fiber families; it is folded into a single
    endomorphism bundle on the direct sums, with the symbol placed
    off-diagonally (its adjoint in the upper corner), so a rectangular symbol
    is elliptic exactly when the folded square one is.
    """
    node = _as_dict(doc, path or "/")
    group = load_group(_need(node, "group", path), f"{path}/group")

    pts_node = _as_list(_need(node, "points", path), f"{path}/points")
    points: list[str] = []
    for i, p in enumerate(pts_node):
        if not isinstance(p, str):
            raise InputDocumentError(f"{path}/points/{i}", "point ids are strings")
        if p in points:
            raise InputDocumentError(f"{path}/points/{i}", f"duplicate point id {p!r}")
        points.append(p)

    base_node = _as_dict(_need(node, "base", path), f"{path}/base")
    base: dict[str, str] = {}
    for p in points:
        if p not in base_node:
            raise InputDocumentError(f"{path}/base/{p}", "missing")
        if not isinstance(base_node[p], str):
            raise InputDocumentError(f"{path}/base/{p}", "labels are strings")
        base[p] = base_node[p]

    def load_point_ints(field: str) -> dict[str, int]:
        fd_node = _as_dict(_need(node, field, path), f"{path}/{field}")
        out = {}
        for p in points:
            if p not in fd_node:
                raise InputDocumentError(f"{path}/{field}/{p}", "missing")
            v = _as_int(fd_node[p], f"{path}/{field}/{p}")
            if v < 1:
                raise InputDocumentError(f"{path}/{field}/{p}", "dimensions are positive")
            out[p] = v
        return out

    action_node = _as_dict(_need(node, "action", path), f"{path}/action")
    action: dict[tuple[ElementT, str], str] = {}
    for g in group.elements:
        key = element_key(g)
        if key not in action_node:
            raise InputDocumentError(f"{path}/action/{key}", "missing")
        table = _as_dict(action_node[key], f"{path}/action/{key}")
        for p in points:
            if p not in table:
                raise InputDocumentError(f"{path}/action/{key}/{p}", "missing")
            q = table[p]
            if q not in base:
                raise InputDocumentError(
                    f"{path}/action/{key}/{p}", f"image {q!r} is not a point"
                )
            action[(g, p)] = q
    for key in action_node:
        parse_element_key(key, group, f"{path}/action/{key}")

    def load_transport(field: str, dims_from: dict[str, int], dims_to: dict[str, int]):
        t_node = _as_dict(_need(node, field, path), f"{path}/{field}")
        out: dict[tuple[ElementT, str], np.ndarray] = {}
        for g in group.elements:
            key = element_key(g)
            if key not in t_node:
                raise InputDocumentError(f"{path}/{field}/{key}", "missing")
            table = _as_dict(t_node[key], f"{path}/{field}/{key}")
            for p in points:
                if p not in table:
                    raise InputDocumentError(f"{path}/{field}/{key}/{p}", "missing")
                m = parse_matrix(table[p], f"{path}/{field}/{key}/{p}")
                want = (dims_to[action[(g, p)]], dims_from[p])
                if m.shape != want:
                    raise InputDocumentError(
                        f"{path}/{field}/{key}/{p}", f"shape {m.shape}, expected {want}"
                    )
                out[(g, p)] = m
        return out

    fiber_dim = load_point_ints("fiber_dim")
    two_bundle = "fiber_dim_out" in node or "transport_out" in node
    if two_bundle:
        fiber_out = load_point_ints("fiber_dim_out")
        t_in = load_transport("transport", fiber_dim, fiber_dim)
        t_out = load_transport("transport_out", fiber_out, fiber_out)
        folded_dim = {p: fiber_dim[p] + fiber_out[p] for p in points}
        folded_t = {}
        for g in group.elements:
            for p in points:
                a, b = t_in[(g, p)], t_out[(g, p)]
                m = np.zeros(
                    (folded_dim[action[(g, p)]], folded_dim[p]), dtype=complex
                )
                m[: a.shape[0], : a.shape[1]] = a
                m[a.shape[0] :, a.shape[1] :] = b
                folded_t[(g, p)] = m
        bundle = sample_bundle(group, points, base, action, folded_dim, folded_t)
    else:
        transport = load_transport("transport", fiber_dim, fiber_dim)
        bundle = sample_bundle(group, points, base, action, fiber_dim, transport)

    if "symbol" not in node:
        return bundle, None
    sym_node = _as_dict(node["symbol"], f"{path}/symbol")
    values: dict[str, np.ndarray] = {}
    for p in points:
        if p not in sym_node:
            raise InputDocumentError(f"{path}/symbol/{p}", "missing")
        m = parse_matrix(sym_node[p], f"{path}/symbol/{p}")
        if two_bundle:
            want = (fiber_out[p], fiber_dim[p])
            if m.shape != want:
                raise InputDocumentError(
                    f"{path}/symbol/{p}", f"shape {m.shape}, expected {want}"
                )
            d = fiber_dim[p] + fiber_out[p]
            folded = np.zeros((d, d), dtype=complex)
            folded[fiber_dim[p] :, : fiber_dim[p]] = m
            folded[: fiber_dim[p], fiber_dim[p] :] = m.conj().T
            values[p] = folded
        else:
            want = (fiber_dim[p], fiber_dim[p])
            if m.shape != want:
                raise InputDocumentError(
                    f"{path}/symbol/{p}", f"shape {m.shape}, expected {want}"
                )
            values[p] = m
    return bundle, symbol_field(bundle, values)


# ---------------------------------------------------------------------------
# canonical output


def _write(obj: Any, out: list[str], indent: int) -> None:
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool) or isinstance(obj, np.bool_):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            out.append('"nan"')
        elif math.isinf(x):
            out.append('"inf"' if x > 0 else '"-inf"')
        else:
            out.append(format(x, ".17g"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(obj):
            out.append(pad + "  ")
            _write(item, out, indent + 1)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        keys = sorted(obj)
        if not all(isinstance(k, str) for k in keys):
            raise TypeError("canonical documents use string keys only")
        out.append("{\n")
        for i, k in enumerate(keys):
            out.append(pad + "  " + json.dumps(k, ensure_ascii=True) + ": ")
            _write(obj[k], out, indent + 1)
            out.append(",\n" if i + 1 < len(keys) else "\n")
        out.append(pad + "}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    """Deterministic JSON: sorted keys, 17-significant-digit floats, newline end."""
    out: list[str] = []
    _write(obj, out, 0)
    return "".join(out) + "\n"
