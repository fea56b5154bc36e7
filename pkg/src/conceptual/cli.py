"""Command-line surface.

Exit codes: 0 success, 1 failed check or failed verification, 2 usage
errors, 3 structural errors in the inputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as fmt
from .bond import Bond, BondingPair, compose_bonds, is_bond, is_bonding_pair
from .classification import (
    Classification,
    dual,
    powerset_classification,
)
from .colimit import (
    DualInvariant,
    apposition,
    coproduct_sum,
    dual_quotient,
    product,
    subposition,
)
from .errors import ConceptualError
from .infomorphism import (
    FunctionalInfomorphism,
    RelationalInfomorphism,
    check_functional,
    check_relational,
    compose_functional,
    compose_relational,
)
from .lattice import build_lattice
from .relalg import Relation
from .verify import verify_equivalences


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_classification(path: str) -> Classification:
    text = _read(path)
    if path.endswith(".cxt"):
        return fmt.parse_cxt(text)
    if path.endswith(".csv"):
        return fmt.parse_csv(text)
    if path.endswith(".json"):
        return fmt.classification_from_obj(json.loads(text))
    return fmt.parse_classification(text)


def _print_classification(K: Classification, args) -> None:
    if getattr(args, "cxt", False):
        sys.stdout.write(fmt.emit_cxt(K))
    else:
        sys.stdout.write(fmt.dumps(fmt.classification_to_obj(K)))


def cmd_lattice(args) -> int:
    K = _load_classification(args.context)
    L = build_lattice(K)
    if args.dot:
        sys.stdout.write(fmt.emit_dot(L))
        return 0
    concepts = [
        {
            "extent": list(L.extent_labels(c)),
            "intent": list(L.intent_labels(c)),
        }
        for c in L.concepts
    ]
    sys.stdout.write(fmt.dumps({"concepts": concepts}))
    return 0


def cmd_check(args) -> int:
    failures = 0
    results = []
    for path in args.files:
        m = fmt.morphism_from_obj(json.loads(_read(path)), validate=False)
        if args.kind == "infomorphism":
            if not isinstance(m, FunctionalInfomorphism):
                raise ConceptualError(f"{path}: expected a functional infomorphism")
            verdict = check_functional(m)
        elif args.kind == "relational":
            if not isinstance(m, RelationalInfomorphism):
                raise ConceptualError(f"{path}: expected a relational infomorphism")
            verdict = check_relational(m)
        elif args.kind == "bond":
            if not isinstance(m, Bond):
                raise ConceptualError(f"{path}: expected a bond")
            verdict = is_bond(m.source, m.target, m.rel)
        else:
            if not isinstance(m, BondingPair):
                raise ConceptualError(f"{path}: expected a bonding pair")
            verdict = is_bonding_pair(m.forward, m.backward)
        results.append(
            {
                "file": path,
                "ok": bool(verdict),
                "witness": list(verdict.witness) if verdict.witness else None,
                "reason": verdict.reason or None,
            }
        )
        if not verdict:
            failures += 1
    if args.json:
        sys.stdout.write(fmt.dumps({"results": results}))
    else:
        for r in results:
            status = "ok" if r["ok"] else f"FAIL ({r['reason']}; witness {r['witness']})"
            print(f"{r['file']}: {status}")
    return 1 if failures else 0


def cmd_compose(args) -> int:
    a = fmt.morphism_from_obj(json.loads(_read(args.first)))
    b = fmt.morphism_from_obj(json.loads(_read(args.second)))
    if args.kind == "bonds":
        if not isinstance(a, Bond) or not isinstance(b, Bond):
            raise ConceptualError("compose bonds expects two bond files")
        out = compose_bonds(a, b)
    else:
        if isinstance(a, FunctionalInfomorphism) and isinstance(b, FunctionalInfomorphism):
            out = compose_functional(a, b)
        elif isinstance(a, RelationalInfomorphism) and isinstance(b, RelationalInfomorphism):
            out = compose_relational(a, b)
        else:
            raise ConceptualError("compose infos expects two infomorphisms of the same kind")
    sys.stdout.write(fmt.dumps(fmt.morphism_to_obj(out)))
    return 0


def cmd_binary_construction(args) -> int:
    A = _load_classification(args.first)
    B = _load_classification(args.second)
    if args.command == "sum":
        d = coproduct_sum(A, B)
        obj = {
            "apex": fmt.classification_to_obj(d.apex),
            "left_injection": fmt.morphism_to_obj(d.left_injection),
            "right_injection": fmt.morphism_to_obj(d.right_injection),
        }
    elif args.command == "appose":
        d = apposition(A, B)
        obj = {
            "apex": fmt.classification_to_obj(d.apex),
            "left_injection": fmt.morphism_to_obj(d.left_injection),
            "right_injection": fmt.morphism_to_obj(d.right_injection),
        }
    elif args.command == "subpose":
        d = subposition(A, B)
        obj = {
            "apex": fmt.classification_to_obj(d.apex),
            "left_projection": fmt.morphism_to_obj(d.left_projection),
            "right_projection": fmt.morphism_to_obj(d.right_projection),
        }
    else:
        d = product(A, B)
        obj = {
            "apex": fmt.classification_to_obj(d.apex),
            "left_projection": fmt.morphism_to_obj(d.left_projection),
            "right_projection": fmt.morphism_to_obj(d.right_projection),
        }
    sys.stdout.write(fmt.dumps(obj))
    return 0


def cmd_quotient(args) -> int:
    K = _load_classification(args.context)
    invariant = json.loads(_read(args.invariant))
    kept = 0
    for label in invariant["kept_instances"]:
        kept |= 1 << K.instance_index[label]
    rel_pairs = [
        (K.type_index[a], K.type_index[b]) for a, b in invariant["related_types"]
    ]
    rel = Relation.from_pairs(len(K.types), len(K.types), rel_pairs)
    quotient, projection = dual_quotient(K, DualInvariant(kept, rel))
    sys.stdout.write(
        fmt.dumps(
            {
                "classification": fmt.classification_to_obj(quotient),
                "projection": fmt.morphism_to_obj(projection),
            }
        )
    )
    return 0


def cmd_dual(args) -> int:
    _print_classification(dual(_load_classification(args.context)), args)
    return 0


def cmd_powerset(args) -> int:
    _print_classification(powerset_classification(tuple(args.labels)), args)
    return 0


def cmd_verify(args) -> int:
    report = verify_equivalences(
        max_size=args.max_size, seed=args.seed, inject_bug=args.inject_bug
    )
    if args.json:
        sys.stdout.write(fmt.dumps(report.to_obj()))
    else:
        print(report.to_text())
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conceptual",
        description="Classifications, concept lattices, bonds, and the equivalences between them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="print the concept lattice of a context")
    p.add_argument("context", help="context file (.cxt/.csv/.json) or - for stdin")
    p.add_argument("--dot", action="store_true", help="emit the Hasse diagram as DOT")
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("check", help="check a serialized morphism")
    p.add_argument(
        "kind", choices=["infomorphism", "relational", "bond", "bonding-pair"]
    )
    p.add_argument("files", nargs="+")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("compose", help="compose two serialized morphisms")
    p.add_argument("kind", choices=["bonds", "infos"])
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=cmd_compose)

    for name, help_text in [
        ("sum", "coproduct of two contexts"),
        ("appose", "apposition (shared instances)"),
        ("subpose", "subposition (shared types)"),
        ("product", "product of two contexts"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("first")
        p.add_argument("second")
        p.set_defaults(fn=cmd_binary_construction)

    p = sub.add_parser("quotient", help="dual quotient by an invariant")
    p.add_argument("context")
    p.add_argument("invariant", help="JSON file with kept_instances and related_types")
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("dual", help="dual classification")
    p.add_argument("context")
    p.add_argument("--cxt", action="store_true", help="emit .cxt instead of JSON")
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("powerset", help="instance powerset classification")
    p.add_argument("labels", nargs="*")
    p.add_argument("--cxt", action="store_true")
    p.set_defaults(fn=cmd_powerset)

    p = sub.add_parser("verify-equivalences", help="run the equivalence suite")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-bug", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConceptualError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
