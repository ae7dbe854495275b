"""``quiverstab`` command line.

Every verb writes one JSON document to stdout (JSON lines for batch input)
and diagnostics to stderr. Exit codes: 0 success, 2 malformed input,
3 shape or arity errors, 4 computation unavailable, 5 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable

from . import chow
from .errors import BudgetExceeded, PreconditionError, ShapeError, UnavailableError
from .quiver import (
    Character,
    MarkedQuiver,
    Representation,
    extend_character_step_two,
    generator_length_bound,
    invariant_generators,
    is_quotient_projective,
    reduce_step_one,
    strip_unmarked_edges,
)
from .stability import (
    ORACLE_BUDGET,
    classify_lomadze_character,
    format_extended,
    helmke_stability,
    king_exhaustive,
    lambda_set,
    lomadze_stability,
    sample_character,
    sigma_stability,
    ChamberLocation,
)
from .systems import (
    HelmkeSystem,
    LomadzeSystem,
    SigmaSystem,
    forget_output,
    helmke_controllable,
    lomadze_controllable,
    lomadze_observable,
    lomadze_regular,
    sigma_controllable,
    sigma_observable,
    sigma_representation,
    stabilizer_lie_dimension,
    system_from_json,
    system_type,
)

EXIT_OK, EXIT_PARSE, EXIT_SHAPE, EXIT_UNAVAILABLE, EXIT_BUDGET = 0, 2, 3, 4, 5


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def read_documents(path: str | None) -> tuple[list, bool]:
    """Parse one JSON document, or JSON lines; the flag says which."""
    text = _read_text(path)
    try:
        return [json.loads(text)], False
    except json.JSONDecodeError:
        pass
    docs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.strip():
            try:
                docs.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ValueError(f"line {lineno}: {exc}") from exc
    if not docs:
        raise ValueError("no JSON input")
    return docs, True


def _lomadze_report(s: LomadzeSystem) -> dict:
    return {
        "controllable": lomadze_controllable(s),
        "observable": lomadze_observable(s),
        "regular": lomadze_regular(s),
        "stabilizer_lie_dim": stabilizer_lie_dimension(s),
    }


def analyze_system(s) -> dict:
    kind = system_type(s)
    out = {"type": kind, "n": s.n, "m": s.m, "p": s.p}
    if isinstance(s, SigmaSystem):
        out.update(controllable=sigma_controllable(s), observable=sigma_observable(s))
    elif isinstance(s, LomadzeSystem):
        out.update(_lomadze_report(s))
    else:
        out.update(
            controllable=helmke_controllable(s),
            observable="undefined in source",
            stabilizer_lie_dim=stabilizer_lie_dimension(s),
            forget_output=_lomadze_report(forget_output(s)),
        )
    return out


def cmd_analyze(args) -> int:
    docs, batch = read_documents(args.input)
    reports = [analyze_system(system_from_json(d)) for d in docs]
    _emit(reports, batch)
    return EXIT_OK


def _emit(items: Iterable, batch: bool):
    items = list(items)
    if batch:
        for item in items:
            print(dumps(item))
    else:
        print(dumps(items[0]))


def stability_of(s, chi: list[int]) -> dict:
    arity = {SigmaSystem: 1, LomadzeSystem: 2, HelmkeSystem: 3}[type(s)]
    if len(chi) != arity:
        raise ShapeError(f"{system_type(s)} systems take {arity} character weight(s), got {len(chi)}")
    if isinstance(s, SigmaSystem):
        verdict = sigma_stability(s, chi[0])
    elif isinstance(s, LomadzeSystem):
        verdict = lomadze_stability(s, *chi)
    else:
        verdict = helmke_stability(s, *chi)
    return verdict.to_json()


def cmd_stability(args) -> int:
    docs, batch = read_documents(args.input)
    _emit((stability_of(system_from_json(d), args.char) for d in docs), batch)
    return EXIT_OK


def chambers_report(n: int, p: int) -> dict:
    lam = lambda_set(n, p)

    def sample(loc: ChamberLocation) -> dict:
        chi = sample_character(loc)
        where = classify_lomadze_character(*chi, n, p)
        return {"character": list(chi), "outside_cone": where.kind == "outside"}

    walls = []
    for v in lam.values:
        entry = {"value": format_extended(v)}
        entry.update(sample(ChamberLocation("wall", value=v)))
        walls.append(entry)
    intervals = []
    for lo, hi in lam.intervals():
        lo_s, hi_s = format_extended(lo), format_extended(hi)
        entry = {
            "lower": lo_s,
            "upper": hi_s,
            "names": [f"below({hi_s})", f"above({lo_s})"],
        }
        entry.update(sample(ChamberLocation("interval", lower=lo, upper=hi)))
        intervals.append(entry)
    return {"n": n, "p": p, "walls": walls, "intervals": intervals}


def cmd_chambers(args) -> int:
    print(dumps(chambers_report(args.n, args.p)))
    return EXIT_OK


def _load_quiver(path: str | None) -> MarkedQuiver:
    (doc,), _ = read_documents(path)
    if not isinstance(doc, dict):
        raise ValueError("a quiver must be a JSON object")
    return MarkedQuiver.from_json(doc["quiver"] if "quiver" in doc else doc)


def quiver_reduce_report(mq: MarkedQuiver, chi: list[int] | None) -> dict:
    stripped, removed = strip_unmarked_edges(mq)
    reduced, table = reduce_step_one(stripped)
    out = {
        "reduced": reduced.to_json(),
        "infinity": table.infinity,
        "stripped_edges": [mq.quiver.label(e) for e in removed],
        "origins": [
            {"edge": stripped.quiver.label(o.edge), "kind": o.kind, "index": o.index}
            for o in table.origins
        ],
    }
    if chi is not None:
        out["character"] = list(extend_character_step_two(Character(tuple(chi)), reduced).weights)
    return out


def quiver_invariants_report(mq: MarkedQuiver, cap: int | None) -> dict:
    bound = generator_length_bound(mq)
    used = bound if cap is None else min(cap, bound)
    gens = invariant_generators(mq, used)
    return {
        "generators": [g.to_json(mq) for g in gens],
        "max_length": used,
        "bound": bound,
        "truncated": used < bound,
    }


def cmd_quiver(args) -> int:
    mq = _load_quiver(args.input)
    if args.action == "reduce":
        out = quiver_reduce_report(mq, args.char)
    elif args.action == "projective":
        out = {"projective": is_quotient_projective(mq)}
    else:
        out = quiver_invariants_report(mq, args.cap)
    print(dumps(out))
    return EXIT_OK


def cmd_chow(args) -> int:
    n, m, p = args.n, args.m, args.p
    if args.action == "rank":
        out = {"n": n, "m": m, "p": p, "rank_L": chow.rank_L_formula(n, m, p), "rank_H": chow.rank_H_formula(n, m, p)}
    elif args.action == "compare":
        out = chow.compare_compactifications(n, m, p).to_json()
    else:
        pres = chow.presentation_for(args.space, n, m, p)
        out = {"space": args.space, "presentation": pres.to_json(), "rank": chow.additive_rank(pres).to_json()}
    print(dumps(out))
    return EXIT_OK


def oracle_representation(doc: dict) -> Representation:
    if "quiver" in doc:
        rep = Representation.from_json(doc)
    else:
        s = system_from_json(doc)
        if not isinstance(s, SigmaSystem):
            raise ValueError("the oracle takes a representation or a classical system")
        rep = sigma_representation(s)
    if rep.modulus is None:
        raise PreconditionError("the oracle needs a finite-field input (set \"modulus\")")
    return rep


def cmd_oracle(args) -> int:
    (doc,), _ = read_documents(args.input)
    if not isinstance(doc, dict):
        raise ValueError("oracle input must be a JSON object")
    rep = oracle_representation(doc)
    verdict = king_exhaustive(rep, Character(tuple(args.char)), args.budget)
    print(dumps(verdict.to_json()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverstab", description="Stability of quiver representations and linear systems.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("analyze", help="controllability, observability and related checks")
    p.add_argument("input", nargs="?", help="system JSON or JSON lines (default: stdin)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("stability", help="stability verdict for a character")
    p.add_argument("input", nargs="?")
    p.add_argument("--char", type=int, nargs="+", required=True, help="1, 2 or 3 integer weights")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("chambers", help="walls and chambers of Lomadze characters")
    p.add_argument("n", type=int)
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("quiver", help="reduction, projectivity and invariants of a marked quiver")
    p.add_argument("action", choices=["reduce", "projective", "invariants"])
    p.add_argument("input", nargs="?")
    p.add_argument("--char", type=int, nargs="+", help="character on the marked vertices (reduce)")
    p.add_argument("--cap", type=int, help="maximal generator length (invariants)")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("chow", help="Chow ring ranks and presentations")
    p.add_argument("action", choices=["rank", "presentation", "compare"])
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("p", type=int)
    p.add_argument("--space", choices=["H", "L"], default="H")
    p.set_defaults(func=cmd_chow)

    p = sub.add_parser("oracle", help="exhaustive subrepresentation check over F_q")
    p.add_argument("input", nargs="?")
    p.add_argument("--char", type=int, nargs="+", required=True)
    p.add_argument("--budget", type=int, default=ORACLE_BUDGET)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ShapeError, PreconditionError) as exc:
        code, err = EXIT_SHAPE, exc
    except UnavailableError as exc:
        code, err = EXIT_UNAVAILABLE, exc
    except BudgetExceeded as exc:
        code, err = EXIT_BUDGET, exc
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        code, err = EXIT_PARSE, exc
    except OSError as exc:
        code, err = EXIT_PARSE, exc
    print(f"quiverstab: {err}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
