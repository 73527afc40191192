"""Self-contained JSON certificates and the permutation table format.

Certificates embed graph descriptors, so ``verify_certificate`` needs no
side inputs. Serialization uses sorted keys and fixed separators, so equal
objects give byte-identical documents.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .embedding import (CombinatorialEmbedding, MinorModel, Report, verify_embedding,
                        verify_model)
from .errors import InvalidInputError, UsageError
from .graph import Graph, Walk, graph_from_descriptor
from .permdec import BoxPermutation, BoxShape, OneDimFactor, compose

FORMAT_VERSION = 1


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"certificate is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "type" not in doc:
        raise UsageError("certificate must be a JSON object with a 'type' field")
    return doc


def read_certificate(path) -> dict:
    try:
        return loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _guest_doc(g) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def model_certificate(m: MinorModel) -> dict:
    rep = verify_model(m)
    if not rep.valid:
        raise InvalidInputError("refusing to certify an invalid model:\n" + rep.summary())
    return {
        "type": "model",
        "version": FORMAT_VERSION,
        "guest": _guest_doc(m.guest),
        "host": m.host.descriptor(),
        "branch_sets": [sorted(int(x) for x in s) for s in m.branch_sets],
        "witnesses": [[u, v, int(a), int(b)] for (u, v), (a, b) in sorted(rep.witnesses.items())],
    }


def embedding_certificate(e: CombinatorialEmbedding) -> dict:
    return {
        "type": "embedding",
        "version": FORMAT_VERSION,
        "guest": _guest_doc(e.guest),
        "host": e.host.descriptor(),
        "vertex_map": [int(x) for x in e.vertex_map],
        "roads": [[u, v, [int(x) for x in e.roads[(u, v)]]] for u, v in sorted(e.roads)],
    }


def decomposition_certificate(target: BoxPermutation, factors) -> dict:
    return {
        "type": "decomposition",
        "version": FORMAT_VERSION,
        "convention": "rightmost-first",
        "shape": list(target.shape.dims),
        "target": target.mapping.tolist(),
        "factors": [{"axis": f.axis, "mapping": f.mapping.tolist()} for f in factors],
    }


def model_from_certificate(doc: dict) -> MinorModel:
    try:
        guest = Graph(doc["guest"]["n"], doc["guest"]["edges"])
        host = graph_from_descriptor(doc["host"])
        sets = [frozenset(int(x) for x in s) for s in doc["branch_sets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed model certificate: {exc}") from None
    return MinorModel(guest, host, sets)


def embedding_from_certificate(doc: dict) -> CombinatorialEmbedding:
    try:
        guest = Graph(doc["guest"]["n"], doc["guest"]["edges"])
        host = graph_from_descriptor(doc["host"])
        f = tuple(int(x) for x in doc["vertex_map"])
        roads = {}
        for u, v, walk in doc["roads"]:
            roads[(min(u, v), max(u, v))] = Walk(int(x) for x in walk)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed embedding certificate: {exc}") from None
    return CombinatorialEmbedding(guest, host, f, roads)


def verify_decomposition_doc(doc: dict) -> Report:
    rep = Report()
    try:
        shape = BoxShape(doc["shape"])
        target = BoxPermutation(shape, doc["target"])
        raw = doc["factors"]
        if doc.get("convention", "rightmost-first") != "rightmost-first":
            rep.add("convention", f"unsupported convention {doc['convention']!r}")
            return rep
    except (KeyError, TypeError, ValueError) as exc:
        rep.add("format", f"malformed decomposition certificate: {exc}")
        return rep
    factors = []
    for i, fd in enumerate(raw):
        try:
            factors.append(OneDimFactor(int(fd["axis"]), BoxPermutation(shape, fd["mapping"])))
        except (KeyError, TypeError, ValueError) as exc:
            rep.add("factor", f"factor {i}: {exc}")
    if not rep.valid:
        return rep
    if len(factors) > max(1, 2 * shape.d - 1):
        rep.add("length", f"{len(factors)} factors exceed 2d-1 = {2 * shape.d - 1}")
    if compose(factors, shape) != target:
        rep.add("composition", "factors do not compose to the target")
    return rep


def verify_certificate(doc: dict) -> Report:
    kind = doc.get("type")
    if kind == "model":
        return verify_model(model_from_certificate(doc))
    if kind == "embedding":
        return verify_embedding(embedding_from_certificate(doc))
    if kind == "decomposition":
        return verify_decomposition_doc(doc)
    raise UsageError(f"unknown certificate type {kind!r}")


# ---------------------------------------------------------------------------
# Permutation tables
# ---------------------------------------------------------------------------

_ARROW = re.compile(r"\s*(?:->|→)\s*")


def parse_permutation(text: str) -> BoxPermutation:
    """``shape n1 ... nd`` header, then ``x1 ... xd -> y1 ... yd`` per point
    (0-based). Points not listed are fixed."""
    shape = None
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("shape"):
            if shape is not None:
                raise UsageError(f"line {lineno}: duplicate shape header")
            try:
                shape = BoxShape([int(t) for t in line.split()[1:]])
            except ValueError:
                raise UsageError(f"line {lineno}: bad shape header {raw!r}") from None
            continue
        if shape is None:
            raise UsageError(f"line {lineno}: mapping before the shape header")
        parts = _ARROW.split(line)
        if len(parts) != 2:
            raise UsageError(f"line {lineno}: expected 'x1 .. xd -> y1 .. yd'")
        try:
            x = tuple(int(t) for t in parts[0].split())
            y = tuple(int(t) for t in parts[1].split())
        except ValueError:
            raise UsageError(f"line {lineno}: non-integer coordinate") from None
        if len(x) != shape.d or len(y) != shape.d:
            raise UsageError(f"line {lineno}: points must have {shape.d} coordinates")
        if x in pairs:
            raise UsageError(f"line {lineno}: point {x} listed twice")
        pairs[x] = y
    if shape is None:
        raise UsageError("missing shape header")
    for x in pairs:
        for c, n in zip(x + pairs[x], shape.dims * 2):
            if not 0 <= c < n:
                raise UsageError(f"point {x} -> {pairs[x]} leaves the box")
    return BoxPermutation.from_points(shape, pairs)


def format_permutation(p: BoxPermutation) -> str:
    lines = ["shape " + " ".join(map(str, p.shape.dims))]
    for i in range(p.shape.size):
        x = p.shape.coords(i)
        y = p.shape.coords(int(p.mapping[i]))
        lines.append(" ".join(map(str, x)) + " -> " + " ".join(map(str, y)))
    return "\n".join(lines) + "\n"
