"""Command-line front end: validate and analyze .loop files, construct loops,
and run commutator / solvability / decomposition queries.

Exit codes: 0 success, 1 domain failure (invalid loop, failed query),
2 I/O or parse failure.  Reports are emitted as deterministic JSON
(sorted keys, fixed formatting).  MOUFKIT_THREADS caps internal scan
parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys

from .commutator import (
    SeriesWitness,
    classical_solvable,
    commutator,
    congruence_solvable,
    is_abelian_in,
    nilpotency_class,
    nilpotent,
)
from .divisibility import cauchy, divisibility, elementwise_lagrange
from .constructions import (
    QuadraticFormGF2,
    QuadraticLoopSpec,
    fixture_from_text,
    loop_from_quadratic_form,
)
from .core import (
    IDENTITY_SCHEMES,
    FiniteLoop,
    dump_loop,
    is_power_associative,
    read_loop,
    satisfies_identity,
)
from .errors import (
    LoopError,
    LoopFileError,
    NoTwoSidedIdentity,
    NotLatinSquare,
    OrderCapExceeded,
)
from .extensions import decompose_detail
from .maps import inner_mapping_group
from .errors import CapExceeded
from .subloops import (
    DISTINGUISHED_KINDS,
    SubloopHandle,
    all_normal_subloops,
    distinguished_subloop,
    generated_subloop,
    is_normal,
    normal_closure,
)

SCHEMA_VERSION = 1


def _emit_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _witness_doc(w: SeriesWitness | None) -> dict | None:
    if w is None:
        return None
    return {
        "chain": [list(h.elements) for h in w.chain],
        "certificates": [w.certificate] * (len(w.chain) - 1),
    }


def analysis_report(
    loop: FiniteLoop,
    source: str,
    max_order: int = 512,
    max_inn: int = 1 << 20,
    max_lattice: int = 64,
) -> dict:
    doc: dict = {"schema": SCHEMA_VERSION, "source": source, "order": loop.order}

    if loop.order > max_order:
        doc["identities"] = {"skipped": f"order exceeds --max-order {max_order}"}
        doc["subloops"] = {"skipped": f"order exceeds --max-order {max_order}"}
    else:
        doc["identities"] = {
            scheme: {
                "holds": bool(res.holds),
                "witness": None if res.witness is None else list(res.witness),
            }
            for scheme in IDENTITY_SCHEMES
            for res in (satisfies_identity(loop, scheme),)
        }
        doc["subloops"] = {
            kind: list(distinguished_subloop(loop, kind)) for kind in DISTINGUISHED_KINDS
        }

    try:
        inn = inner_mapping_group(loop, cap=max_inn)
        doc["inner_mapping_group"] = {"size": len(inn)}
    except CapExceeded as exc:
        doc["inner_mapping_group"] = {"skipped": f"cap exceeded at {exc.size_so_far}"}

    if is_power_associative(loop):
        doc["divisibility"] = {
            str(d): {
                "surjective": rep.surjective,
                "injective": rep.injective,
                "order_witness": rep.order_witness,
                "prime_order_witness": rep.prime_order_witness,
                "coprime": rep.coprime,
            }
            for d in (2, 3, 6)
            for rep in (divisibility(loop, d),)
        }
        doc["cauchy"] = {str(p): cauchy(loop, p) for p in (2, 3, 5)}
        doc["elementwise_lagrange"] = elementwise_lagrange(loop)
    else:
        note = {"skipped": "not power associative"}
        doc["divisibility"] = note
        doc["cauchy"] = dict(note)
        doc["elementwise_lagrange"] = None

    doc["nilpotent"] = _witness_doc(nilpotent(loop))
    doc["nilpotency_class"] = nilpotency_class(loop)
    doc["classically_solvable"] = _witness_doc(classical_solvable(loop))

    try:
        normals = all_normal_subloops(loop, cap=max_lattice)
    except OrderCapExceeded:
        skip = {"skipped": f"order exceeds --max-normal-lattice {max_lattice}"}
        doc["normal_subloops"] = skip
        doc["simple"] = None
        doc["congruence_solvable"] = dict(skip)
        doc["abelian_normal_subloops"] = dict(skip)
        return doc

    doc["normal_subloops"] = [list(h.elements) for h in normals]
    doc["simple"] = loop.order > 1 and len(normals) == 2
    doc["congruence_solvable"] = _witness_doc(congruence_solvable(loop, cap=max_lattice))
    entries = []
    for h in normals:
        if not h.is_commutative_group():
            continue
        abelian_in = is_abelian_in(loop, h)
        data, reason = decompose_detail(loop, h)
        entries.append(
            {
                "elements": list(h.elements),
                "abelian_in_parent": abelian_in,
                "decomposes": data is not None,
                "failure": reason,
            }
        )
    doc["abelian_normal_subloops"] = entries
    return doc


# -- subcommands ----------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        loop = read_loop(args.path)
    except NotLatinSquare as exc:
        print(f"invalid: not a latin square ({exc.axis} {exc.index} repeats {exc.value})")
        return 1
    except NoTwoSidedIdentity:
        print("invalid: no two-sided identity element")
        return 1
    print(f"order {loop.order}; identity element 0")
    return 0


def cmd_analyze(args) -> int:
    loop = read_loop(args.path)
    doc = analysis_report(
        loop,
        source=str(args.path),
        max_order=args.max_order,
        max_inn=args.max_inn,
        max_lattice=args.max_normal_lattice,
    )
    _emit_json(doc, args.json)
    return 0


def _parse_form(text: str, dim: int) -> QuadraticFormGF2:
    bits = text.strip()
    if len(bits) != (1 << dim) or any(c not in "01" for c in bits):
        raise LoopError(f"--form must be {(1 << dim)} bits for dimension {dim}")
    return QuadraticFormGF2(dim, tuple(int(c) for c in bits))


def cmd_construct(args) -> int:
    if args.kind == "fixture":
        loop = fixture_from_text(args.name)
    else:
        factors = tuple(int(v) for v in args.factors.split(","))
        b_gens = tuple(int(v) for v in args.b_gens.split(",")) if args.b_gens else ()
        f_gens = tuple(int(v) for v in args.f_gens.split(","))
        spec = QuadraticLoopSpec(factors=factors, b_generators=b_gens, f_generators=f_gens)
        loop = loop_from_quadratic_form(spec, _parse_form(args.form, args.form_dim)).loop
    text = dump_loop(loop)
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _element_set(loop: FiniteLoop, spec: str) -> SubloopHandle:
    if spec.strip() == "all":
        return SubloopHandle(loop, tuple(loop.elements()))
    elems = tuple(int(v) for v in spec.split(","))
    handle = generated_subloop(loop, elems)
    if not is_normal(loop, handle):
        print(f"# note: {spec} does not generate a normal subloop; taking normal closure")
        handle = normal_closure(loop, elems)
    return handle


def cmd_commutator(args) -> int:
    loop = read_loop(args.path)
    x = _element_set(loop, args.x)
    y = _element_set(loop, args.y)
    result = commutator(loop, x, y)
    print(" ".join(str(e) for e in result.elements))
    if len(y) == loop.order:
        print(f"central: {result.is_trivial()}")
    if x.elements == y.elements:
        print(f"abelian in parent: {result.is_trivial()}")
    return 0


def cmd_solvability(args) -> int:
    loop = read_loop(args.path)
    doc: dict = {"schema": SCHEMA_VERSION, "order": loop.order}
    doc["nilpotent"] = _witness_doc(nilpotent(loop))
    doc["nilpotency_class"] = nilpotency_class(loop)
    doc["classically_solvable"] = _witness_doc(classical_solvable(loop))
    try:
        doc["congruence_solvable"] = _witness_doc(
            congruence_solvable(loop, cap=args.max_normal_lattice)
        )
    except OrderCapExceeded:
        doc["congruence_solvable"] = {
            "skipped": f"order exceeds --max-normal-lattice {args.max_normal_lattice}"
        }
    _emit_json(doc, args.json)
    return 0


def cmd_decompose(args) -> int:
    loop = read_loop(args.path)
    handle = _element_set(loop, args.x)
    data, reason = decompose_detail(loop, handle, central=args.central)
    if data is None:
        print(f"not decomposable: {reason}")
        return 1
    doc = {"schema": SCHEMA_VERSION, "kind": "central" if args.central else "abelian"}
    doc.update(data.to_json_dict())
    _emit_json(doc, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moufkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a .loop file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="full analysis report as JSON")
    p.add_argument("path")
    p.add_argument("--json", default=None, help="write the report here instead of stdout")
    p.add_argument("--max-order", type=int, default=512)
    p.add_argument("--max-inn", type=int, default=1 << 20)
    p.add_argument("--max-normal-lattice", type=int, default=64)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="emit a loop in .loop format")
    kinds = p.add_subparsers(dest="kind", required=True)
    pf = kinds.add_parser("fixture", help="catalog fixture, e.g. 'chein-double(dihedral(5))'")
    pf.add_argument("name")
    pf.add_argument("--out", default=None)
    pe = kinds.add_parser("example", help="quadratic-form loop over a group chain F <= B <= W")
    pe.add_argument("--factors", required=True, help="invariant factors of W, e.g. 2,4")
    pe.add_argument("--b-gens", default="", help="element indices generating B")
    pe.add_argument("--f-gens", required=True, help="element indices generating F")
    pe.add_argument("--form", required=True, help="value bits of the form on W/B")
    pe.add_argument("--form-dim", type=int, default=2)
    pe.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("commutator", help="commutator of two normal subloops")
    p.add_argument("path")
    p.add_argument("--x", required=True, help="comma-separated elements or 'all'")
    p.add_argument("--y", required=True, help="comma-separated elements or 'all'")
    p.set_defaults(func=cmd_commutator)

    p = sub.add_parser("solvability", help="solvability and nilpotency verdicts")
    p.add_argument("path")
    p.add_argument("--json", default=None)
    p.add_argument("--max-normal-lattice", type=int, default=64)
    p.set_defaults(func=cmd_solvability)

    p = sub.add_parser("decompose", help="extension datum over a normal abelian subloop")
    p.add_argument("path")
    p.add_argument("--x", required=True, help="comma-separated kernel elements")
    p.add_argument("--central", action="store_true")
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LoopFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LoopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
