"""Command-line surface: algebra files, reports, and DOT graphs.

Algebra file grammar (one algebra per file, ``#`` starts a comment):

    field Q | Qi | GF <p>
    dim <n>
    row <e1> <e2> ... <en>      (n times, entries in the element grammar)
"""

from __future__ import annotations

import argparse
import sys

from .errors import (AlgebraSyntaxError, DomainError, EvoalgError,
                     NotNilpotent, SqrtUnavailable)
from .fields import GF, QI, QQ, FieldDescriptor, parse_element
from .linalg import Matrix
from .algebra import (EvolutionAlgebra, WeightedGraph, decomposability_check,
                      graph_of, upper_series)
from .classify import classify, labels_equal, witness_isomorphism
from .families import (UB, UBFG, UBG, UBU, FamilySpec, build)
from .oracle import (EXHAUSTIVE, RANDOMIZED, SearchBudget, exhaustive_iso,
                     randomized_iso)


# ---------------------------------------------------------------------------
# algebra files

def _parse_field_decl(tokens, lineno) -> FieldDescriptor:
    if not tokens or tokens[0] != "field":
        raise AlgebraSyntaxError("expected 'field Q|Qi|GF <p>'", lineno, 1)
    if len(tokens) == 2 and tokens[1] == "Q":
        return QQ()
    if len(tokens) == 2 and tokens[1] == "Qi":
        return QI()
    if len(tokens) == 3 and tokens[1] == "GF":
        try:
            return GF(int(tokens[2]))
        except ValueError:
            raise AlgebraSyntaxError(
                f"bad prime {tokens[2]!r}", lineno, len("field GF ") + 1)
    raise AlgebraSyntaxError("expected 'field Q|Qi|GF <p>'", lineno, 1)


def _logical_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_algebra_text(text: str) -> EvolutionAlgebra:
    lines = list(_logical_lines(text))
    if not lines:
        raise AlgebraSyntaxError("empty algebra file", 1, 1)
    it = iter(lines)
    lineno, tokens = next(it)
    field = _parse_field_decl(tokens, lineno)
    try:
        lineno, tokens = next(it)
    except StopIteration:
        raise AlgebraSyntaxError("missing 'dim <n>' line", lineno + 1, 1)
    if len(tokens) != 2 or tokens[0] != "dim":
        raise AlgebraSyntaxError("expected 'dim <n>'", lineno, 1)
    try:
        dim = int(tokens[1])
    except ValueError:
        raise AlgebraSyntaxError(f"bad dimension {tokens[1]!r}", lineno, 5)
    if dim < 1:
        raise DomainError("dimension must be at least 1")
    rows = []
    for _ in range(dim):
        try:
            lineno, tokens = next(it)
        except StopIteration:
            raise AlgebraSyntaxError(
                f"expected {dim} 'row' lines, found {len(rows)}",
                lineno + 1, 1)
        if tokens[0] != "row" or len(tokens) != dim + 1:
            raise AlgebraSyntaxError(
                f"expected 'row' with {dim} entries", lineno, 1)
        row = []
        col = len("row ") + 1
        for entry in tokens[1:]:
            try:
                row.append(parse_element(entry, field))
            except AlgebraSyntaxError as exc:
                raise AlgebraSyntaxError(str(exc), lineno, col)
            col += len(entry) + 1
        rows.append(row)
    extra = next(it, None)
    if extra is not None:
        raise AlgebraSyntaxError("trailing content after last row",
                                 extra[0], 1)
    return EvolutionAlgebra(dim, Matrix(rows, field, dim), field)


def parse_algebra_file(path) -> EvolutionAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_algebra_text(fh.read())


def _field_decl(field: FieldDescriptor) -> str:
    if field == QQ():
        return "field Q"
    if field == QI():
        return "field Qi"
    return f"field GF {field.modulus}"


def write_algebra_text(E: EvolutionAlgebra) -> str:
    lines = [_field_decl(E.field), f"dim {E.dim}"]
    for i in range(E.dim):
        lines.append("row " + " ".join(
            str(E.structure[i, j]) for j in range(E.dim)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DOT output

def emit_dot(g: WeightedGraph) -> str:
    """Byte-deterministic DOT rendering: nodes by index, edges sorted by
    (i, j), weight label omitted when the weight is 1."""
    out = ["digraph evolution {"]
    for v in range(1, g.vertex_count + 1):
        out.append(f"  {v};")
    for i, j, w in sorted(g.edges, key=lambda e: (e[0], e[1])):
        if w.is_one():
            out.append(f"  {i + 1} -> {j + 1};")
        else:
            out.append(f'  {i + 1} -> {j + 1} [label="{w}"];')
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# subcommands

def _cmd_type(args) -> int:
    E = parse_algebra_file(args.file)
    series = upper_series(E)
    if not series.nilpotent:
        print("NOT NILPOTENT")
        return 0
    print("[" + ",".join(str(k) for k in series.type_vector) + "]")
    return 0


def _cmd_series(args) -> int:
    E = parse_algebra_file(args.file)
    series = upper_series(E)
    for i, sub in enumerate(series.chain, start=1):
        vecs = ["(" + " ".join(str(x) for x in v) + ")"
                for v in sub.vectors()]
        print(f"ann^{i}: dim {sub.dim}  " + " ".join(vecs))
    for i, blk in enumerate(series.blocks, start=1):
        print(f"U_{i}: indices " + " ".join(str(k + 1) for k in blk))
    if not series.nilpotent:
        print("NOT NILPOTENT")
    return 0


def _cmd_classify(args) -> int:
    E = parse_algebra_file(args.file)
    print(classify(E).serialize())
    return 0


def _cmd_iso(args) -> int:
    E1 = parse_algebra_file(args.file1)
    E2 = parse_algebra_file(args.file2)
    if args.oracle is not None:
        mode = EXHAUSTIVE if args.oracle == "exhaustive" else RANDOMIZED
        budget = SearchBudget(mode=mode, max_trials=args.trials,
                              seed=args.seed)
        search = exhaustive_iso if mode == EXHAUSTIVE else randomized_iso
        m = search(E1, E2, budget)
        if m is None:
            print("no witness found")
        else:
            print("witness:")
            print(m)
        return 0
    l1, l2 = classify(E1), classify(E2)
    if not labels_equal(l1, l2):
        print("labels differ")
        print(f"  {l1.serialize()}")
        print(f"  {l2.serialize()}")
        return 0
    print(f"labels equal: {l1.serialize()}")
    m = witness_isomorphism(E1, E2)
    print("witness:")
    print(m)
    return 0


def _cmd_family(args) -> int:
    field = _parse_field_decl(("field " + args.field).split(), 0)

    def elems(text):
        return tuple(parse_element(t, field) for t in text.split(","))

    kind = {"ub": UB, "ubg": UBG, "ubfg": UBFG, "ubu": UBU}[args.kind]
    b = elems(args.b)
    spec = FamilySpec(
        kind, len(b), b,
        f_eigs=elems(args.f) if args.f else None,
        g_eigs=elems(args.g) if args.g else None,
        u_coords=elems(args.u) if args.u else None)
    sys.stdout.write(write_algebra_text(build(spec)))
    return 0


def _cmd_dot(args) -> int:
    E = parse_algebra_file(args.file)
    sys.stdout.write(emit_dot(graph_of(E)))
    return 0


def _cmd_decompose(args) -> int:
    E = parse_algebra_file(args.file)
    verdict = decomposability_check(E)
    print(verdict.status)
    print(verdict.reason)
    if verdict.witness is not None:
        for name, sub in zip(("ideal I", "ideal J"), verdict.witness):
            vecs = ["(" + " ".join(str(x) for x in v) + ")"
                    for v in sub.vectors()]
            print(f"{name}: dim {sub.dim}  " + " ".join(vecs))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="evoalg",
        description="Exact computations with nilpotent evolution algebras")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("type", help="print the type vector")
    sp.add_argument("file")
    sp.set_defaults(run=_cmd_type)

    sp = sub.add_parser("series", help="print the annihilating series")
    sp.add_argument("file")
    sp.set_defaults(run=_cmd_series)

    sp = sub.add_parser("classify", help="print the canonical label")
    sp.add_argument("file")
    sp.set_defaults(run=_cmd_classify)

    sp = sub.add_parser("iso", help="compare labels / search a witness")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--oracle", choices=("exhaustive", "randomized"))
    sp.add_argument("--trials", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(run=_cmd_iso)

    sp = sub.add_parser("family", help="emit a family algebra file")
    sp.add_argument("--kind", required=True,
                    choices=("ub", "ubg", "ubfg", "ubu"))
    sp.add_argument("--field", required=True,
                    help="Q, Qi, or 'GF <p>'")
    sp.add_argument("--b", required=True, help="comma-separated diagonal")
    sp.add_argument("--f", help="comma-separated f eigenvalues")
    sp.add_argument("--g", help="comma-separated g eigenvalues")
    sp.add_argument("--u", help="comma-separated u coordinates")
    sp.set_defaults(run=_cmd_family)

    sp = sub.add_parser("dot", help="emit the attached graph as DOT")
    sp.add_argument("file")
    sp.set_defaults(run=_cmd_dot)

    sp = sub.add_parser("decompose", help="decomposability verdict")
    sp.add_argument("file")
    sp.set_defaults(run=_cmd_decompose)
    return p


def dispatch(argv) -> int:
    """Run one subcommand; exit code 0 on success, 1 on domain errors,
    2 on usage errors."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.run(args)
    except (AlgebraSyntaxError, NotNilpotent, SqrtUnavailable,
            EvoalgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
