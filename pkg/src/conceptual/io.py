"""File formats: Burmeister .cxt, CSV, canonical JSON, and DOT emission.

The JSON schema keeps a stable field order; all emitters are
byte-deterministic for identical inputs.
"""

from __future__ import annotations

import csv
import io as _io
import json

from .bond import Bond, BondingPair
from .classification import Classification
from .errors import ParseError, ValidationError
from .infomorphism import FunctionalInfomorphism, RelationalInfomorphism
from .lattice import ConceptLattice
from .relalg import FunctionGraph, Relation, bits


# -- Burmeister context format -------------------------------------------------


def parse_cxt(text: str) -> Classification:
    lines = text.split("\n")

    def get(idx: int) -> str:
        if idx >= len(lines):
            raise ParseError("unexpected end of file", line=len(lines))
        return lines[idx]

    if get(0).strip() != "B":
        raise ParseError(f"expected header 'B', got {get(0)!r}", line=1)

    def int_at(idx: int) -> int:
        try:
            return int(get(idx).strip())
        except ValueError:
            raise ParseError(f"expected a count, got {get(idx)!r}", line=idx + 1) from None

    # the name line is optional: without it the two counts are
    # immediately followed by the blank separator
    def looks_like_counts(idx: int) -> bool:
        try:
            int_at(idx)
            int_at(idx + 1)
        except ParseError:
            return False
        return get(idx + 2).strip() == ""

    pos = 1
    if not looks_like_counts(1):
        pos = 2
        if not looks_like_counts(2):
            raise ParseError("expected instance and type counts after the header", line=3)
    n_inst = int_at(pos)
    n_typ = int_at(pos + 1)
    if get(pos + 2).strip() != "":
        raise ParseError("expected a blank line after the counts", line=pos + 3)
    pos += 3
    instances = tuple(get(pos + i) for i in range(n_inst))
    pos += n_inst
    types = tuple(get(pos + i) for i in range(n_typ))
    pos += n_typ
    rows = []
    for i in range(n_inst):
        raw = get(pos + i)
        if len(raw) != n_typ:
            raise ParseError(
                f"row has {len(raw)} cells, expected {n_typ}", line=pos + i + 1
            )
        row = 0
        for b, ch in enumerate(raw):
            if ch == "X":
                row |= 1 << b
            elif ch != ".":
                raise ParseError(f"illegal cell character {ch!r}", line=pos + i + 1)
        rows.append(row)
    try:
        return Classification(instances, types, Relation(n_inst, n_typ, tuple(rows)))
    except ValidationError as e:
        raise ParseError(str(e)) from None


def emit_cxt(K: Classification, name: str = "") -> str:
    out = ["B", name, str(len(K.instances)), str(len(K.types)), ""]
    out.extend(K.instances)
    out.extend(K.types)
    for row in K.rows:
        out.append(
            "".join("X" if row >> b & 1 else "." for b in range(len(K.types)))
        )
    return "\n".join(out) + "\n"


# -- CSV ------------------------------------------------------------------------


def parse_csv(text: str) -> Classification:
    reader = csv.reader(_io.StringIO(text))
    table = [row for row in reader if row]
    if not table:
        raise ParseError("empty CSV input", line=1)
    types = tuple(table[0][1:])
    instances = []
    rows = []
    for li, cells in enumerate(table[1:], start=2):
        if len(cells) != len(types) + 1:
            raise ParseError(
                f"row has {len(cells) - 1} cells, expected {len(types)}", line=li
            )
        instances.append(cells[0])
        row = 0
        for b, cell in enumerate(cells[1:]):
            if cell == "1":
                row |= 1 << b
            elif cell != "0":
                raise ParseError(f"cell must be 0 or 1, got {cell!r}", line=li)
        rows.append(row)
    try:
        return Classification(
            tuple(instances), types, Relation(len(instances), len(types), tuple(rows))
        )
    except ValidationError as e:
        raise ParseError(str(e)) from None


def emit_csv(K: Classification) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(K.types))
    for label, row in zip(K.instances, K.rows):
        writer.writerow([label] + [row >> b & 1 for b in range(len(K.types))])
    return buf.getvalue()


# -- JSON -----------------------------------------------------------------------


def classification_to_obj(K: Classification) -> dict:
    return {
        "instances": list(K.instances),
        "types": list(K.types),
        "incidence": K.incidence.matrix(),
    }


def classification_from_obj(obj: dict) -> Classification:
    try:
        instances = tuple(obj["instances"])
        types = tuple(obj["types"])
        rel = Relation.from_matrix(obj["incidence"], dst_size=len(types))
    except (KeyError, TypeError, ValidationError) as e:
        raise ParseError(f"bad classification object: {e}") from None
    if rel.src_size != len(instances):
        raise ParseError("incidence row count does not match instances")
    return Classification(instances, types, rel)


def parse_classification(text: str) -> Classification:
    """Sniff the format: .cxt starts with 'B', JSON with '{', else CSV."""
    if text.lstrip().startswith("{"):
        return classification_from_obj(json.loads(text))
    if text.split("\n", 1)[0].strip() == "B":
        return parse_cxt(text)
    return parse_csv(text)


def morphism_to_obj(m) -> dict:
    src = classification_to_obj(m.source)
    tgt = classification_to_obj(m.target)
    if isinstance(m, FunctionalInfomorphism):
        data = {
            "instance_map": [m.source.instances[m.f(b)] for b in range(len(m.target.instances))],
            "type_map": [m.target.types[m.g(t)] for t in range(len(m.source.types))],
        }
        kind = "functional"
    elif isinstance(m, RelationalInfomorphism):
        data = {"instance_rel": m.r.matrix(), "type_rel": m.s.matrix()}
        kind = "relational"
    elif isinstance(m, Bond):
        data = {"rel": m.rel.matrix()}
        kind = "bond"
    elif isinstance(m, BondingPair):
        data = {"forward": m.forward.rel.matrix(), "backward": m.backward.rel.matrix()}
        kind = "bonding-pair"
    else:
        raise TypeError(f"cannot serialize {type(m).__name__}")
    return {"kind": kind, "source": src, "target": tgt, "data": data}


def morphism_from_obj(obj: dict, validate: bool = True):
    try:
        kind = obj["kind"]
        source = classification_from_obj(obj["source"])
        target = classification_from_obj(obj["target"])
        data = obj["data"]
        if kind == "functional":
            f = FunctionGraph.from_targets(
                tuple(source.instance_index[l] for l in data["instance_map"]),
                len(source.instances),
            )
            g = FunctionGraph.from_targets(
                tuple(target.type_index[l] for l in data["type_map"]), len(target.types)
            )
            return FunctionalInfomorphism(source, target, f, g, validate=validate)
        if kind == "relational":
            r = Relation.from_matrix(data["instance_rel"], dst_size=len(target.instances))
            s = Relation.from_matrix(data["type_rel"], dst_size=len(target.types))
            return RelationalInfomorphism(source, target, r, s, validate=validate)
        if kind == "bond":
            rel = Relation.from_matrix(data["rel"], dst_size=len(source.types))
            return Bond(source, target, rel, validate=validate)
        if kind == "bonding-pair":
            fwd = Bond(
                source,
                target,
                Relation.from_matrix(data["forward"], dst_size=len(source.types)),
                validate=validate,
            )
            bwd = Bond(
                target,
                source,
                Relation.from_matrix(data["backward"], dst_size=len(target.types)),
                validate=validate,
            )
            return BondingPair(fwd, bwd, validate=validate)
    except (KeyError, TypeError) as e:
        raise ParseError(f"bad morphism object: missing or invalid {e}") from None
    raise ParseError(f"unknown morphism kind {kind!r}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- DOT ------------------------------------------------------------------------


def emit_dot(L: ConceptLattice, graph_name: str = "lattice") -> str:
    """Hasse diagram with reduced labelling, top rendered uppermost."""
    lines = [f"digraph {graph_name} {{", "  node [shape=box];"]
    for i in range(L.size):
        own_types = [t for t in range(len(L.type_labels)) if L.tau(t) == i]
        own_insts = [a for a in range(len(L.instance_labels)) if L.iota(a) == i]
        parts = []
        if own_types:
            parts.append(" ".join(L.type_labels[t] for t in own_types))
        if own_insts:
            parts.append(" ".join(L.instance_labels[a] for a in own_insts))
        label = "\\n".join(p.replace('"', '\\"') for p in parts)
        lines.append(f'  c{i} [label="{label}"];')
    for i in range(L.size):
        for j in bits(L.covers.rows[i]):
            lines.append(f"  c{j} -> c{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
