"""Command line interface: ``python -m bshell <command> ...`` or ``bshell <command> ...``.

Exit codes: 0 when every check passes, 1 when a check finds a violation,
2 on malformed or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import generators as gen
from .building import BuildingSet, NotABuildingSet, is_building_set, maximal_building_set
from .corpus import FAMILIES, CorpusSpec, corpus
from .formats import (
    FormatError,
    building_from_json,
    c_from_json,
    c_to_json,
    dumps,
    facet_name,
    facets_to_json,
    matroid_from_json,
    matroid_to_json,
    order_report,
    rational,
    vertex_report,
)
from .geometry import (
    DuplicateVertices,
    SearchExhausted,
    as_rational,
    default_cubical,
    inner,
    is_cubical,
    is_lexicographic_vector,
    vertices,
)
from .matroid import Matroid, MatroidError
from .nested import facets as enumerate_facets
from .nested import reduced
from .orders import NonCubical, compare_orders, el_order, functional_order, nc_order, nl_order
from .search import BudgetExceeded, search_nl_shelling
from .shelling import NotPure, check_shelling, verify_theorem1

OK, VIOLATION, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


class ELRequiresMaximal(InputError):
    pass


# -- instance resolution ----------------------------------------------------


def _relabel_apart(parts: list[Matroid]) -> list[Matroid]:
    seen: set[str] = set()
    out = []
    for k, m in enumerate(parts):
        if seen & set(m.labels):
            m = Matroid([f"{x}_{k}" for x in m.labels], m.flats)
        seen |= set(m.labels)
        out.append(m)
    return out


def parse_matroid(text: str) -> Matroid:
    """``uniform:r,n``, ``boolean:n``, ``graphic:0-1,1-2,0-2``, ``broom``,
    ``directsum:SPEC|SPEC|...`` or a path to a matroid JSON file."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "uniform":
            r, n = (int(v) for v in arg.split(","))
            return gen.uniform(r, n)
        if kind == "boolean":
            return gen.boolean(int(arg))
        if kind == "graphic":
            edges = [tuple(e.split("-")) for e in arg.split(",") if e]
            if any(len(e) != 2 for e in edges):
                raise InputError(f"edges must look like u-v: {arg!r}")
            return gen.graphic(edges)
        if kind == "broom" and not arg:
            return gen.broom()
        if kind == "directsum":
            parts = _relabel_apart([parse_matroid(p) for p in arg.split("|")])
            out = parts[0]
            for p in parts[1:]:
                out = out.direct_sum(p)
            return out
    except (ValueError, MatroidError) as exc:
        raise InputError(f"bad matroid spec {text!r}: {exc}") from None
    path = Path(text)
    if not path.exists():
        raise InputError(f"{text!r} is neither a generator spec nor a file")
    return matroid_from_json(_load_json(path))


def _load_json(path: Path):
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def resolve_instance(args) -> tuple[Matroid, BuildingSet]:
    m = parse_matroid(args.matroid)
    src = args.building
    if src in ("minimal", "maximal"):
        b = building_from_json(m, src)
    else:
        b = building_from_json(m, _load_json(Path(src)))
    if args.ground_order:
        order = [x.strip() for x in args.ground_order.split(",")]
        try:
            m2 = m.with_ground_order(order)
        except MatroidError as exc:
            raise InputError(str(exc)) from None
        b = b.transport(m2)
        m = m2
    return m, b


def resolve_c(args, b: BuildingSet) -> dict:
    if args.c in (None, "auto"):
        return default_cubical(b, seed=args.seed)
    c = c_from_json(b.matroid, _load_json(Path(args.c)))
    missing = [x for x in b.members if x not in c]
    if missing:
        raise InputError(f"weights missing for {[b.matroid.name(x) for x in missing]}")
    return c


def parse_gamma(text: str | None, m: Matroid):
    if text is None:
        return None
    try:
        gamma = [as_rational(v.strip()) for v in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad gamma {text!r}") from None
    if len(gamma) != m.n:
        raise InputError(f"gamma has {len(gamma)} entries, ground set has {m.n}")
    return gamma


# -- output -----------------------------------------------------------------


def emit(args, data: dict, lines: list[str]) -> None:
    text = dumps(data) + "\n" if args.json else "\n".join(lines) + "\n"
    if getattr(args, "out", None) and args.command != "search":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------


def cmd_matroid(args) -> int:
    m, _ = resolve_instance(args)
    data = matroid_to_json(m)
    data["rank"] = m.rank
    data["ranks"] = [m.flat_rank(f) for f in m.flats]
    data["atoms"] = [list(m.labels_of(a)) for a in m.atoms]
    data["connected_flats"] = [list(m.labels_of(f)) for f in m.connected_flats()]
    lines = [f"ground: {' '.join(m.labels)}", f"rank: {m.rank}", f"flats: {len(m.flats)}"]
    for f in m.flats:
        lines.append(f"  rank {m.flat_rank(f)}  {m.name(f)}")
    lines.append("atoms: " + " ".join(m.name(a) for a in m.atoms))
    lines.append("connected flats: " + " ".join(m.name(f) for f in m.connected_flats()))
    emit(args, data, lines)
    return OK


def cmd_building(args) -> int:
    m = parse_matroid(args.matroid)
    if args.building in ("minimal", "maximal"):
        b = building_from_json(m, args.building)
        members = list(b.members)
    else:
        raw = _load_json(Path(args.building))
        raw = raw.get("members", raw) if isinstance(raw, dict) else raw
        if raw in ("minimal", "maximal"):
            members = list(building_from_json(m, raw).members)
        else:
            members = [m.mask(str(x) for x in flat) for flat in raw]
    ok, violations = is_building_set(m, members)
    data = {
        "valid": ok,
        "members": [list(m.labels_of(x)) for x in members],
        "violations": [{"kind": v.kind, "flats": [list(m.labels_of(f)) for f in v.flats]} for v in violations],
    }
    if ok:
        data["maximal"] = [list(m.labels_of(x)) for x in BuildingSet(m, members, check=False).maximal]
    lines = [f"building set: {'valid' if ok else 'INVALID'}"]
    lines += [f"  {v.kind}: {' '.join(m.name(f) for f in v.flats)}" for v in violations]
    emit(args, data, lines)
    return OK if ok else VIOLATION


def cmd_facets(args) -> int:
    m, b = resolve_instance(args)
    fs = enumerate_facets(b)
    data = facets_to_json(b, fs)
    lines = [f"{len(fs)} facets"] + [f"  {facet_name(m, f)}" for f in fs]
    emit(args, data, lines)
    return OK


def cmd_normal(args) -> int:
    m, b = resolve_instance(args)
    c = resolve_c(args, b)
    fs = enumerate_facets(b)
    ok, bad = is_cubical(b, c, fs)
    sols = vertices(b, c, fs)
    data = {"cubical": ok, **c_to_json(b, c), "vertices": vertex_report(b, sols)}
    data["failures"] = [facet_name(m, f) for f, _ in bad]
    lines = [f"cubical: {ok}"]
    for f in fs:
        mark = "" if sols[f].interior else "  (outside cone)"
        lines.append(f"  {facet_name(m, f)}  v = ({', '.join(map(rational, sols[f].point))}){mark}")
    emit(args, data, lines)
    return OK if ok else VIOLATION


def _order(args, m, b, which: str, fs):
    if which == "nc":
        c = resolve_c(args, b)
        return nc_order(b, c, fs), vertices(b, c, fs)
    if which == "nl":
        return nl_order(b, fs), None
    if which == "el":
        if b != maximal_building_set(m):
            raise ELRequiresMaximal("the EL-order is defined for the maximal building set only")
        return el_order(m), None
    raise InputError(f"unknown order {which!r}")


def _order_lines(m, b, order, sols, gamma) -> list[str]:
    lines = [f"{order.provenance} order, {len(order)} facets"]
    for i, f in enumerate(order.facets):
        extra = ""
        if sols is not None and gamma is not None:
            extra = f"  <v, gamma> = {rational(inner(sols[f].point, gamma))}"
        lines.append(f"  {i + 1:>3}  {facet_name(m, f)}{extra}")
    return lines


def cmd_order(args) -> int:
    m, b = resolve_instance(args)
    gamma = parse_gamma(args.gamma, m)
    order, sols = _order(args, m, b, args.which, None if args.which == "el" else enumerate_facets(b))
    emit(args, order_report(b, order, sols, gamma), _order_lines(m, b, order, sols, gamma))
    return OK


def _shelling_json(m, b, report) -> dict:
    data = {
        "verdict": report.verdict,
        "order": [facet_name(m, reduced(b, f)) for f in report.ordered_facets],
        "first_violation": None,
    }
    if report.first_violation is not None:
        j, i = report.first_violation
        fj, fi = report.ordered_facets[j], report.ordered_facets[i]
        data["first_violation"] = {
            "j": j,
            "i": i,
            "facet_j": facet_name(m, reduced(b, fj)),
            "facet_i": facet_name(m, reduced(b, fi)),
            "disjoint": not (reduced(b, fj) & reduced(b, fi)),
        }
    return data


def _verify_one(args, m, b) -> tuple[int, dict, list[str]]:
    c = resolve_c(args, b)
    gamma = parse_gamma(args.gamma, m)
    fs = enumerate_facets(b)
    if gamma is None:
        report = verify_theorem1(b, c, fs)
        data = _shelling_json(m, b, report)
        data["provenance"] = "NC"
    else:
        order = functional_order(b, c, gamma, fs)
        report = check_shelling(order.facets, strip=b.maximal)
        data = _shelling_json(m, b, report)
        data["provenance"] = "USER"
        try:
            lex, _ = is_lexicographic_vector(b, c, gamma, fs)
        except DuplicateVertices:
            lex = False
        data["gamma_is_lexicographic"] = lex
    lines = [f"{data['provenance']} order is {'a shelling' if report.verdict else 'NOT a shelling'}"]
    v = data["first_violation"]
    if v is not None:
        note = " (disjoint)" if v["disjoint"] else ""
        lines.append(f"  facet #{v['j'] + 1} {v['facet_j']} fails against #{v['i'] + 1} {v['facet_i']}{note}")
    return (OK if report.verdict else VIOLATION), data, lines


def cmd_verify(args) -> int:
    if not args.corpus:
        m, b = resolve_instance(args)
        code, data, lines = _verify_one(args, m, b)
        emit(args, data, lines)
        return code
    started = time.perf_counter()
    total = failures = 0
    failed = []
    for inst in corpus(CorpusSpec()):
        for seed in range(args.seeds):
            c = default_cubical(inst.building, seed=seed)
            total += 1
            if not verify_theorem1(inst.building, c).verdict:
                failures += 1
                failed.append({"instance": inst.name, "seed": seed})
    data = {"checked": total, "failures": failures, "failed": failed}
    lines = [f"checked {total} (instance, seed) pairs: {failures} failures",
             f"elapsed {time.perf_counter() - started:.1f}s"]
    emit(args, data, lines)
    return OK if failures == 0 else VIOLATION


def cmd_compare(args) -> int:
    m, b = resolve_instance(args)
    fs = enumerate_facets(b)
    o1, _ = _order(args, m, b, args.first, fs)
    o2, _ = _order(args, m, b, args.second, fs)
    r = compare_orders(o1, o2, b)
    data = {
        "equal": r.equal,
        "locally_equivalent": r.locally_equivalent,
        "weakly_locally_equivalent": r.weakly_locally_equivalent,
        "same_minimum": r.same_minimum,
        "local_witness": None if r.local_witness is None else facet_name(m, r.local_witness),
        "weak_witness": None if r.weak_witness is None else facet_name(m, r.weak_witness),
    }
    lines = [f"{k}: {v}" for k, v in data.items()]
    emit(args, data, lines)
    return OK


def cmd_search(args) -> int:
    families = tuple(args.family) if args.family else FAMILIES
    spec = CorpusSpec(families=families, max_n=args.max_n, max_vertices=args.max_vertices)
    sink = open(args.out, "a") if args.out else None
    try:
        result = search_nl_shelling(spec, seed=args.seed, budget=args.budget, sink=sink, strict=args.strict)
    except BudgetExceeded as exc:
        result = exc.result
        code = VIOLATION
    else:
        code = VIOLATION if result.findings else OK
    finally:
        if sink is not None:
            sink.close()
    by_kind: dict[str, int] = {}
    for f in result.findings:
        by_kind[f["order_provenance"]] = by_kind.get(f["order_provenance"], 0) + 1
    data = {"checked": result.checked, "truncated": result.truncated, "findings": by_kind}
    lines = [f"checked {result.checked} instances{' (budget reached)' if result.truncated else ''}"]
    lines += [f"  {k}: {v} findings" for k, v in sorted(by_kind.items())]
    emit(args, data, lines)
    return code


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bshell", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def instance(sp, building=True):
        sp.add_argument("--matroid", required=True, help="file or uniform:r,n / boolean:n / graphic:0-1,... / broom / directsum:A|B")
        if building:
            sp.add_argument("--building", default="maximal", help="minimal, maximal or a JSON file")
        sp.add_argument("--ground-order", help="comma-separated permutation of the ground labels")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--out", help="write the report here instead of stdout")

    def weights(sp):
        sp.add_argument("--c", help="weight JSON file, or 'auto' (default)")
        sp.add_argument("--seed", type=int, default=0, help="seed for the automatic weights")

    sp = sub.add_parser("matroid", help="flats, ranks, atoms and connected flats")
    instance(sp, building=False)
    sp.set_defaults(func=cmd_matroid, building="maximal")

    sp = sub.add_parser("building", help="validate a building set")
    instance(sp)
    sp.set_defaults(func=cmd_building)

    sp = sub.add_parser("facets", help="facets of the nested set complex")
    instance(sp)
    sp.set_defaults(func=cmd_facets)

    sp = sub.add_parser("normal", help="vertices of the normal complex and the cubicality check")
    instance(sp)
    weights(sp)
    sp.set_defaults(func=cmd_normal)

    sp = sub.add_parser("order", help="a facet order: nc, nl or el")
    sp.add_argument("which", choices=["nc", "nl", "el"])
    instance(sp)
    weights(sp)
    sp.add_argument("--gamma", help="comma-separated rationals; reports <v, gamma> for nc")
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("verify", help="check that the normal complex order (or a gamma order) shells")
    instance(sp)
    weights(sp)
    sp.add_argument("--gamma", help="check the order by decreasing <v, gamma> instead")
    sp.add_argument("--corpus", action="store_true", help="sweep the built-in corpus instead")
    sp.add_argument("--seeds", type=int, default=3, help="weight seeds per corpus instance")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("compare", help="compare two facet orders")
    sp.add_argument("first", choices=["nc", "nl", "el"])
    sp.add_argument("second", choices=["nc", "nl", "el"])
    instance(sp)
    weights(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("search", help="search the corpus for NL-order counterexamples")
    sp.add_argument("--family", action="append", choices=[*FAMILIES, "broom-all-orders"])
    sp.add_argument("--max-n", type=int, default=6)
    sp.add_argument("--max-vertices", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, help="maximum number of instances")
    sp.add_argument("--strict", action="store_true", help="exit 1 when the budget cuts the sweep short")
    sp.add_argument("--out", help="append findings (JSON lines) to this file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, MatroidError, NotABuildingSet, KeyError, NotPure,
            NonCubical, SearchExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
