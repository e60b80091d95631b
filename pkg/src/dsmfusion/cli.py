"""Command-line interface.

Commands:

  hpset      enumerate the (constrained) hyper-power set, optionally with
             the binary encoding matrix
  combine    run a combination rule over a scenario file, with optional
             per-sum breakdown, compression and CSV output
  sweep      emit the near-contradiction epsilon sweep as CSV
  reproduce  recompute a built-in worked example and verify it

Exit codes: 0 success, 1 reproduction mismatch, 2 input or validation
error, 3 rule undefined (full contradiction).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, InvalidOperation

from .bba import MassAssignment
from .dynamic import Stage, run_session
from .errors import DsmError, FullContradiction, ScenarioError
from .exprparse import parse
from .lattice import (
    ENUMERATION_LIMIT,
    Frame,
    Proposition,
    build_frame,
    enumerate_hpset,
    to_expression,
)
from .model import (
    HybridModel,
    build_model,
    compression_report,
    encoding_matrix,
    free_model,
    shafer_model,
    survivors,
)
from .rules import (
    MixtureSpec,
    RULE_NAMES,
    bayesian_mixture,
    dempster,
    dsm_classic,
    dsm_hybrid,
    dubois_prade,
    smets,
    yager,
)
from .worked_examples import EXAMPLE_IDS, run_example


def _print(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _name_of(p: Proposition) -> str:
    return "EMPTY" if p.is_empty else to_expression(p)


def _parse_mass(text) -> float:
    # Masses travel as decimal strings so files parse identically everywhere;
    # plain JSON numbers are tolerated.
    if isinstance(text, (int, float)):
        return float(text)
    try:
        return float(Decimal(str(text)))
    except InvalidOperation as exc:
        raise ScenarioError(f"bad decimal mass {text!r}") from exc


def _load_scenario(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "frame" not in doc or "sources" not in doc:
        raise ScenarioError("scenario must be an object with 'frame' and 'sources'")
    return doc


def _source_from(obj: dict, frame: Frame, smets_mode: bool) -> MassAssignment:
    if not isinstance(obj, dict) or not isinstance(obj.get("masses"), list):
        raise ScenarioError("each source needs a 'masses' list")
    table = {}
    for row in obj["masses"]:
        if not isinstance(row, dict) or "prop" not in row or "mass" not in row:
            raise ScenarioError(f"mass rows need 'prop' and 'mass': {row!r}")
        text = row["prop"]
        # The grammar has no EMPTY literal; scenario files spell it out so
        # open-world (smets_mode) sources can put mass on the empty set.
        if isinstance(text, str) and text.strip() == "EMPTY":
            prop = Proposition(frame, 0)
        elif isinstance(text, str):
            prop = parse(frame, text)
        else:
            raise ScenarioError(f"'prop' must be an expression string: {text!r}")
        table[prop] = table.get(prop, 0.0) + _parse_mass(row["mass"])
    return MassAssignment(frame, table, smets_mode=smets_mode)


def _stages_from(events: list, base_names: tuple[str, ...]) -> list[Stage]:
    stages = []
    names = base_names
    for i, ev in enumerate(events):
        if not isinstance(ev, dict):
            raise ScenarioError(f"event #{i + 1} must be an object: {ev!r}")
        label = str(ev.get("at", f"t{i + 1}"))
        added = tuple(ev.get("add_elements", ()))
        names = names + added
        source = None
        if "add_source" in ev:
            source = _source_from(ev["add_source"], build_frame(names), False)
        constraints = None
        if "set_constraints" in ev:
            if not isinstance(ev["set_constraints"], list):
                raise ScenarioError("'set_constraints' must be a list of expressions")
            constraints = tuple(ev["set_constraints"])
        stages.append(Stage(at=label, add_elements=added,
                            add_source=source, set_constraints=constraints))
    return stages


def _mass_table(masses: MassAssignment, csv: bool) -> list[str]:
    lines = []
    if csv:
        lines.append("prop,mass")
        for p, v in masses.items():
            lines.append(f"{_name_of(p)},{v:.6f}")
    else:
        for p, v in masses.items():
            lines.append(f"{_name_of(p):36s} {v:9.6f}")
    return lines


def _breakdown_table(frame: Frame, bd, csv: bool) -> list[str]:
    if frame.n <= ENUMERATION_LIMIT:
        props = enumerate_hpset(frame)
    else:
        props = sorted(
            set(bd.s1) | set(bd.s2) | set(bd.s3) | set(bd.result.keys()),
            key=lambda p: p.sort_key,
        )
    lines = []
    header = ("prop,phi,s1,s2,s3,mass" if csv
              else f"{'element':36s} {'phi':>3s} {'S1':>9s} {'S2':>9s} {'S3':>9s} {'m':>9s}")
    lines.append(header)
    for p in props:
        s1, s2, s3 = bd.s1.get(p, 0.0), bd.s2.get(p, 0.0), bd.s3.get(p, 0.0)
        m = bd.total(p)
        if csv:
            lines.append(f"{_name_of(p)},{bd.phi(p)},{s1:.6f},{s2:.6f},{s3:.6f},{m:.6f}")
        else:
            lines.append(f"{_name_of(p):36s} {bd.phi(p):3d} {s1:9.6f} {s2:9.6f} {s3:9.6f} {m:9.6f}")
    return lines


def _compressed_table(model: HybridModel, masses: MassAssignment, csv: bool) -> list[str]:
    lines = []
    if csv:
        lines.append("prop,mass,provenance")
    for rep, members, total in compression_report(model, dict(masses.items())):
        name = _name_of(rep)
        provenance = "+".join(f"{v:.6f}" for _, v in members) if len(members) > 1 else ""
        if csv:
            lines.append(f"{name},{total:.6f},{provenance}")
        elif provenance:
            lines.append(f"{name:36s} {provenance}={total:.6f}")
        else:
            lines.append(f"{name:36s} {total:9.6f}")
    return lines


def cmd_hpset(args) -> int:
    frame = build_frame([s for s in args.frame.split(",") if s])
    constraints = []
    for item in args.constraints or []:
        if os.path.exists(item):
            with open(item, "r", encoding="utf-8") as fh:
                exprs = [ln.strip() for ln in fh if ln.strip()]
        else:
            exprs = [item]
        constraints += [parse(frame, e) for e in exprs]
    model = build_model(frame, constraints) if constraints else free_model(frame)
    classes = survivors(model)
    for cls in classes:
        _print(f"{_name_of(cls.representative):36s} members={len(cls.members)}")
    _print(f"total classes: {len(classes)}")
    if args.matrix:
        basis, matrix = encoding_matrix(model)
        _print("basis: " + " ".join(repr(a) for a in basis))
        for row in matrix:
            _print(" ".join(str(x) for x in row))
    return 0


def _combine_static(doc: dict, frame: Frame, sources, model, args) -> int:
    csv = args.out == "csv"
    rule = args.rule
    if rule == "dsmh":
        bd = dsm_hybrid(sources, model)
        result = bd.result
        if args.breakdown:
            for line in _breakdown_table(frame, bd, csv):
                _print(line)
        else:
            for line in _mass_table(result, csv):
                _print(line)
        if args.compress:
            _print("-- compressed --" if not csv else "")
            for line in _compressed_table(model, result, csv):
                _print(line)
        return 0

    if args.breakdown:
        raise ScenarioError("--breakdown is only meaningful with rule 'dsmh'")

    if rule == "dsmc":
        if not model.is_free:
            raise ScenarioError("rule 'dsmc' ignores constraints; drop them or use 'dsmh'")
        result = dsm_classic(sources)
    elif rule == "dempster":
        result, conflict = dempster(sources)
        _print(f"conflict={conflict:.6f}")
    elif rule in ("yager", "smets", "dubois-prade"):
        if len(sources) != 2:
            raise ScenarioError(f"rule {rule!r} combines exactly two sources")
        fn = {"yager": yager, "smets": smets, "dubois-prade": dubois_prade}[rule]
        result = fn(sources[0], sources[1])
    elif rule == "mixture":
        entries = doc.get("mixture")
        if not entries:
            raise ScenarioError("rule 'mixture' needs a 'mixture' list in the scenario")
        pairs = []
        for ent in entries:
            if not isinstance(ent, dict) or "probability" not in ent:
                raise ScenarioError(f"mixture entries need a 'probability': {ent!r}")
            constraints = [parse(frame, e) for e in ent.get("constraints", [])]
            mix_model = build_model(frame, constraints) if constraints else free_model(frame)
            pairs.append((mix_model, _parse_mass(ent["probability"])))
        result = bayesian_mixture(sources, MixtureSpec(tuple(pairs)))
        if args.compress:
            raise ScenarioError("--compress is undefined for 'mixture' (no single model)")
    else:
        raise ScenarioError(f"unknown rule {rule!r}; choose from {', '.join(RULE_NAMES)}")

    for line in _mass_table(result, csv):
        _print(line)
    if args.compress:
        _print("-- compressed --" if not csv else "")
        for line in _compressed_table(model, result, csv):
            _print(line)
    return 0


def cmd_combine(args) -> int:
    doc = _load_scenario(args.scenario)
    if not isinstance(doc["frame"], list):
        raise ScenarioError("'frame' must be a list of singleton names")
    frame = build_frame(doc["frame"])
    smets_mode = bool(doc.get("smets_mode", False))
    if not isinstance(doc["sources"], list) or not doc["sources"]:
        raise ScenarioError("scenario has no sources")
    sources = [_source_from(s, frame, smets_mode) for s in doc["sources"]]
    constraint_exprs = tuple(doc.get("constraints", ()))
    constraints = [parse(frame, e) for e in constraint_exprs]
    model = build_model(frame, constraints) if constraints else free_model(frame)

    events = doc.get("events")
    if not events:
        return _combine_static(doc, frame, sources, model, args)

    if args.rule not in ("dsmh", "dsmc"):
        raise ScenarioError("scenarios with events run under 'dsmh' or 'dsmc'")
    stages = _stages_from(events, frame.names)
    session = run_session(frame, sources, stages, rule=args.rule,
                          constraints=constraint_exprs)
    csv = args.out == "csv"
    for i, rec in enumerate(session.history):
        _print(f"== stage {rec.label} ==" if not csv else f"# stage {rec.label}")
        for line in _mass_table(rec.result, csv):
            _print(line)
        if args.breakdown and args.rule == "dsmh":
            for line in _breakdown_table(rec.frame, session.breakdowns[i], csv):
                _print(line)
    return 0


def sweep_rows(steps: int) -> list[tuple[float, float | None, float | None, float, float, float]]:
    """Near-contradiction sweep: m1 = {t1: 1-e, t2: e}, m2 = {t1: e, t2: 1-e}.

    Returns (epsilon, dempster_t1, dempster_t2, dsmh_t1, dsmh_t2,
    dsmh_t1_or_t2) at `steps` uniform points covering [0, 1]; the normalized
    columns are None where the orthogonal sum is undefined.
    """
    if steps < 2:
        raise ScenarioError("sweep needs at least 2 steps")
    frame = build_frame(("t1", "t2"))
    t1 = parse(frame, "t1")
    t2 = parse(frame, "t2")
    union = parse(frame, "t1|t2")
    shafer = shafer_model(frame)
    rows = []
    for i in range(steps):
        eps = i / (steps - 1)
        m1 = MassAssignment(frame, {t1: 1.0 - eps, t2: eps})
        m2 = MassAssignment(frame, {t1: eps, t2: 1.0 - eps})
        try:
            dm, _ = dempster([m1, m2])
            d1, d2 = dm[t1], dm[t2]
        except FullContradiction:
            d1 = d2 = None
        hy = dsm_hybrid([m1, m2], shafer).result
        rows.append((eps, d1, d2, hy[t1], hy[t2], hy[union]))
    return rows


def cmd_sweep(args) -> int:
    rows = sweep_rows(args.epsilon_steps)

    def cell(v) -> str:
        return "NaN" if v is None else format(v, ".12g")

    lines = ["epsilon,dempster_t1,dempster_t2,dsmh_t1,dsmh_t2,dsmh_t1_or_t2"]
    for eps, d1, d2, h1, h2, h12 in rows:
        lines.append(",".join([format(eps, ".12g"), cell(d1), cell(d2),
                               cell(h1), cell(h2), cell(h12)]))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_reproduce(args) -> int:
    report = run_example(args.example)
    for line in report.lines:
        _print(line)
    _print(report.verdict)
    return 0 if report.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsmfusion",
        description="Evidence combination over hyper-power sets (DSm classic/hybrid and DST rules).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hpset", help="enumerate the constrained hyper-power set")
    p.add_argument("--frame", required=True, help="comma-separated singleton names")
    p.add_argument("--constraints", action="append",
                   help="constraint expression, or a file with one per line (repeatable)")
    p.add_argument("--matrix", action="store_true", help="print basis and encoding matrix")
    p.set_defaults(fn=cmd_hpset)

    p = sub.add_parser("combine", help="combine the sources of a scenario file")
    p.add_argument("--scenario", required=True, help="path to a scenario JSON file")
    p.add_argument("--rule", default="dsmh", help=f"one of {', '.join(RULE_NAMES)}")
    p.add_argument("--breakdown", action="store_true", help="show phi/S1/S2/S3 columns (dsmh)")
    p.add_argument("--compress", action="store_true", help="merge model-equivalent propositions")
    p.add_argument("--out", choices=("table", "csv"), default="table")
    p.set_defaults(fn=cmd_combine)

    p = sub.add_parser("sweep", help="emit the near-contradiction epsilon sweep as CSV")
    p.add_argument("--epsilon-steps", type=int, required=True, metavar="N")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("reproduce", help="recompute a built-in worked example and verify it")
    p.add_argument("--example", required=True, choices=EXAMPLE_IDS, metavar="ID",
                   help=f"one of: {', '.join(EXAMPLE_IDS)}")
    p.set_defaults(fn=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FullContradiction as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except DsmError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
