"""Command-line driver: stratifications, fans, Groebner bases, lifting and the built-in examples."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import DomainError, InputError, SeshadriError
from .fan import FanElement, FanOfMonoids, degree, saturation_check
from .fan_algebra import FanAlgebraPresentation, koszul_check, presentation_ideal
from .poset import Linearization, StratPoset, load_json, load_poset, maximal_chains, validate
from .polyring import MonomialOrder, format_polynomial, format_relation

log = logging.getLogger("seshadri")


@dataclass
class JobConfig:
    command: str
    input: Path | None = None
    degree_bound: int = 2
    linearization: tuple[str, ...] = ()
    order: str = "wdeg-invlex"
    example: str | None = None
    bonds: tuple[int, ...] = ()
    output_format: str = "text"
    verbose: bool = False


# -- input ---------------------------------------------------------------------

def _read(path: Path) -> dict:
    try:
        return load_json(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _read_poset(path: Path) -> tuple[dict, StratPoset]:
    """Raw JSON plus the parsed poset; parse errors carry a line number where possible."""
    data = _read(path)
    return data, load_poset(path)


def load_fan_input(path: Path, lin: Sequence[str] = (), degree_bound: int | None = None) -> FanOfMonoids:
    """Stratification JSON with optional "monoid": "ls-type" or "generators": {chain-id: [FanElement]}."""
    data, poset = _read_poset(path)
    report = validate(poset)
    if not report.ok:
        raise DomainError(f"{path}: invalid stratification: {'; '.join(report.failures)}")
    linearization = _linearization(poset, lin) if lin else None
    generators = None
    if "generators" in data:
        if data.get("monoid", "explicit") == "ls-type":
            raise InputError(f"{path}: 'generators' given together with \"monoid\": \"ls-type\"")
        raw = data["generators"]
        if not isinstance(raw, dict):
            raise InputError(f"{path}: 'generators' must map chain ids to lists")
        generators = {cid: [FanElement.from_json(g) for g in gens] for cid, gens in raw.items()}
    elif data.get("monoid", "ls-type") != "ls-type":
        raise InputError(f"{path}: unknown monoid kind {data['monoid']!r}")
    return FanOfMonoids.build(poset, linearization, generators, degree_bound)


def _linearization(poset: StratPoset, order: Sequence[str]) -> Linearization:
    if sorted(order) != sorted(poset.elements):
        raise InputError("linearization must list every element exactly once")
    lin = Linearization(tuple(order))
    for p, q in poset.covers:
        if not lin.greater(p, q):
            raise InputError(f"linearization puts {q} above {p}, against the partial order")
    lengths = [poset.length(p) for p in order]
    if lengths != sorted(lengths, reverse=True):
        raise InputError("linearization is not length preserving")
    return lin


# -- rendering -------------------------------------------------------------------

def _fan_json(fan: FanOfMonoids) -> list[dict]:
    return [
        {"name": n, "value": u.to_json(), "degree": str(degree(u, fan.poset))}
        for n, u in zip(fan.names, fan.indecomposable)
    ]


def _presentation_json(pres: FanAlgebraPresentation) -> dict:
    return {"order": pres.order.kind, "degree_bound": pres.degree_bound, "basis": pres.dump()}


def _emit(cfg: JobConfig, payload: dict, lines: list[str]) -> None:
    if cfg.output_format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


# -- subcommands ---------------------------------------------------------------

def cmd_validate(cfg: JobConfig) -> int:
    _, poset = _read_poset(cfg.input)
    report = validate(poset)
    lines = ["OK" if report.ok else "FAILED"] + [f"failure: {f}" for f in report.failures]
    lines += [f"note: {a}" for a in report.assumed]
    _emit(cfg, report.to_json(), lines)
    return 0 if report.ok else 1


def cmd_gamma(cfg: JobConfig) -> int:
    fan = load_fan_input(cfg.input, cfg.linearization, cfg.degree_bound)
    certs = {m.chain.id: saturation_check(m, cfg.degree_bound, fan.poset) for m in fan.monoids}
    payload = {
        "linearization": list(fan.linearization.order),
        "indecomposables": _fan_json(fan),
        "saturation": {cid: c.to_json() for cid, c in certs.items()},
    }
    lines = ["linearization: " + " > ".join(fan.linearization.order), "indecomposables:"]
    lines += [f"  {n}: {u}  (degree {degree(u, fan.poset)})" for n, u in zip(fan.names, fan.indecomposable)]
    lines.append("saturation:")
    for cid, c in certs.items():
        status = "saturated" if c.saturated else f"not saturated, witness {c.witness}"
        lines.append(f"  {cid}: {status} up to degree {c.degree_bound} ({c.note})")
    _emit(cfg, payload, lines)
    return 0


def _fan_for(cfg: JobConfig) -> FanOfMonoids:
    if cfg.example == "sl3":
        from .sl3 import build_sl3_stratification

        return build_sl3_stratification().fan
    if cfg.example == "toric":
        from .toric import toric_fan

        return toric_fan()
    if cfg.input is None:
        raise InputError("give an input file or --example")
    return load_fan_input(cfg.input, cfg.linearization)


def cmd_semitoric_gb(cfg: JobConfig) -> int:
    fan = _fan_for(cfg)
    pres = presentation_ideal(fan, cfg.degree_bound, MonomialOrder(cfg.order))
    lines = [format_relation(g, pres.order) for g in pres.groebner()]
    _emit(cfg, _presentation_json(pres), lines)
    return 0


def cmd_koszul(cfg: JobConfig) -> int:
    fan = _fan_for(cfg)
    res = koszul_check(presentation_ideal(fan, cfg.degree_bound, MonomialOrder(cfg.order)))
    witness = None if res.witness is None else format_polynomial(res.witness, res.basis.order)
    payload = {"verdict": res.verdict, "witness": witness, "basis": [format_polynomial(g, res.basis.order) for g in res.basis]}
    lines = [f"Koszul check: {res.verdict}"]
    if witness is not None:
        lines.append(f"witness of total degree {res.witness.total_degree}: {format_relation(res.witness, res.basis.order)}")
    _emit(cfg, payload, lines)
    return 0


def _lift_lines(report, fan) -> list[str]:
    lines = []
    for e in report.entries:
        lines.append(f"relation: {format_relation(e.relation)}")
        for s in e.subduction.steps:
            lines.append(f"  value {s.value}: subtract {s.coefficient} * {s.monomial.label(fan)}")
        lines.append(f"  lifted: {format_relation(e.lifted)}")
    lines.append(f"S-pairs checked: {report.spairs_checked}")
    return lines


def cmd_lift(cfg: JobConfig) -> int:
    if cfg.example == "sl3":
        from .sl3 import build_sl3_stratification

        ex = build_sl3_stratification()
        report = ex.lift()
        fan = ex.fan
    elif cfg.example == "toric":
        from .toric import ToricBackend, toric_fan, toric_presentation
        from .valuation import lift_groebner_basis

        fan = toric_fan()
        report = lift_groebner_basis(toric_presentation().groebner(), ToricBackend(fan))
    else:
        raise InputError("lift needs --example sl3 or --example toric")
    lines = _lift_lines(report, fan) + ["lifted basis:"] + [f"  {format_relation(g)}" for g in report.basis]
    _emit(cfg, report.to_json(fan), lines)
    return 0


def cmd_gorenstein(cfg: JobConfig) -> int:
    from .gorenstein import LinearBondData, gorenstein_check, gorenstein_sums

    data = LinearBondData(cfg.bonds)
    ok = gorenstein_check(data)
    sums = gorenstein_sums(data)
    payload = {"bonds": list(data.bonds), "M": list(data.M), "sums": [str(s) for s in sums], "gorenstein": ok}
    lines = [
        "bonds b_1..b_r: " + ",".join(map(str, data.bonds)),
        "M_0..M_r: " + ",".join(map(str, data.M)),
        "sums k=0..r: " + ",".join(map(str, sums)),
        f"Gorenstein: {'true' if ok else 'false'}",
    ]
    _emit(cfg, payload, lines)
    return 0


WPS_NOTE = (
    "the toric threefold of toric-demo has singular locus two disjoint lines; among the Gorenstein "
    "weighted projective spaces only P(2,3,3,4) matches, and that remaining case is settled by "
    "comparing torus orbits and automorphism groups, which is not computed here"
)


def cmd_wps(cfg: JobConfig) -> int:
    from .gorenstein import gorenstein_fano_wps, wps_singular_locus

    loci = [wps_singular_locus(w) for w in gorenstein_fano_wps(3)]
    payload = {"count": len(loci), "entries": [dict(s.to_json(), two_disjoint_lines=s.two_disjoint_lines) for s in loci],
               "note": WPS_NOTE}
    lines = [f"{len(loci)} normalized Gorenstein weight vectors in dimension 3"]
    for s in loci:
        strata = ", ".join(f"p={t.prime}:{{{','.join(map(str, t.indices))}}}" for t in s.strata) or "none"
        lines.append(f"  {str(s.weights):<14} strata {strata}; component dims {list(s.dimensions)}; "
                     f"disjoint {'yes' if s.disjoint else 'no'}{'  <- two disjoint lines' if s.two_disjoint_lines else ''}")
    lines.append(f"note: {WPS_NOTE}")
    _emit(cfg, payload, lines)
    return 0


def cmd_sl3_demo(cfg: JobConfig) -> int:
    from .sl3 import REFERENCE_LIFTED, build_sl3_stratification, compare_up_to_rescaling, reference_polynomial

    t0 = time.perf_counter()
    ex = build_sl3_stratification()
    fan, backend = ex.fan, ex.backend
    pres = presentation_ideal(fan, 2)
    semitoric = pres.groebner()
    report = ex.lift()
    reference = [reference_polynomial(l, r, ex.ring) for l, r in REFERENCE_LIFTED]
    scale = compare_up_to_rescaling(list(report.basis), reference, ex.ring)
    log.info("sl3 demo computed in %.2fs", time.perf_counter() - t0)
    chains = maximal_chains(ex.poset)
    valuations = {
        n: {
            "value": backend.quasi_valuation(ex.y(n[2:])).to_json(),
            "chains": {c.id: backend.chain_valuation(ex.y(n[2:]), c).to_json() for c in chains},
        }
        for n in fan.names
    }
    payload = {
        "bonds": {f"{p}>{q}": b for (p, q), b in ex.poset.bonds.items()},
        "chains": [c.id for c in chains],
        "linearization": list(fan.linearization.order),
        "generators": _fan_json(fan),
        "valuations": valuations,
        "semitoric_basis": pres.dump(),
        "lift": report.to_json(fan),
        "relations": [format_relation(g) for g in report.basis],
        "matches_reference": scale is not None,
        "reference_rescaling": None if scale is None else {"y_pi1": str(scale[0]), "y_pi2": str(scale[1])},
    }
    lines = ["bonds:"] + [f"  {p} <-{b}- {q}" for (p, q), b in ex.poset.bonds.items()]
    lines += ["chains:"] + [f"  {c.id}" for c in chains]
    lines += ["generators (name, value, value on each chain):"]
    for n in fan.names:
        per = "; ".join(f"{c.id}: {backend.chain_valuation(ex.y(n[2:]), c)}" for c in chains)
        lines.append(f"  {n}: {backend.quasi_valuation(ex.y(n[2:]))}  [{per}]")
    lines += ["semi-toric Groebner basis:"] + [f"  {format_relation(g)}" for g in semitoric]
    lines += ["lift:"] + [f"  {x}" for x in _lift_lines(report, fan)]
    lines += ["lifted Groebner basis:"] + [f"  {format_relation(g)}" for g in report.basis]
    if scale is None:
        lines.append("reference relations: NO MATCH")
    else:
        lines.append(f"reference relations: match with y_pi1 -> {scale[0]} y_pi1, y_pi2 -> {scale[1]} y_pi2")
    _emit(cfg, payload, lines)
    return 0 if scale is not None else 1


def cmd_toric_demo(cfg: JobConfig) -> int:
    from .gorenstein import LinearBondData, gorenstein_check, gorenstein_sums
    from .toric import ToricBackend, toric_fan, toric_presentation
    from .valuation import lift_groebner_basis

    fan = toric_fan()
    pres = toric_presentation()
    report = lift_groebner_basis(pres.groebner(), ToricBackend(fan))
    koszul = koszul_check(pres)
    bonds = LinearBondData((2, 1, 2))
    payload = {
        "generators": _fan_json(fan),
        "semitoric_basis": pres.dump(),
        "lifted_basis": [format_polynomial(g) for g in report.basis],
        "koszul": koszul.verdict,
        "gorenstein": {"bonds": [2, 1, 2], "sums": [str(s) for s in gorenstein_sums(bonds)], "value": gorenstein_check(bonds)},
    }
    lines = ["chain: p3 <-2- p2 <-1- p1 <-2- p0", "generators:"]
    lines += [f"  {n}: {u}" for n, u in zip(fan.names, fan.indecomposable)]
    lines += ["semi-toric Groebner basis:"] + [f"  {format_relation(g)}" for g in pres.groebner()]
    lines += ["lifted Groebner basis:"] + [f"  {format_relation(g)}" for g in report.basis]
    lines.append(f"Koszul check: {koszul.verdict}")
    lines.append(f"Gorenstein: {'true' if gorenstein_check(bonds) else 'false'}")
    _emit(cfg, payload, lines)
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "gamma": cmd_gamma,
    "semitoric-gb": cmd_semitoric_gb,
    "lift": cmd_lift,
    "koszul": cmd_koszul,
    "gorenstein": cmd_gorenstein,
    "wps": cmd_wps,
    "sl3-demo": cmd_sl3_demo,
    "toric-demo": cmd_toric_demo,
}


# -- argument parsing -------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _bond_list(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bonds must be comma-separated integers, got {text!r}") from None
    if not out or any(b < 1 for b in out):
        raise argparse.ArgumentTypeError("bonds must be positive")
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="seshadri", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a stratification file")
    p.add_argument("input", type=Path)

    for name, text in (("gamma", "indecomposables and saturation certificates"),
                       ("semitoric-gb", "reduced Groebner basis of the fan algebra presentation"),
                       ("koszul", "quadratic Groebner basis check")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("input", type=Path, nargs="?" if name != "gamma" else None)
        p.add_argument("--degree-bound", type=_positive, default=2 if name != "koszul" else 3)
        p.add_argument("--linearization", default="", help="comma-separated total order, largest first")
        if name != "gamma":
            p.add_argument("--example", choices=("sl3", "toric"))
            p.add_argument("--order", choices=MonomialOrder.KINDS, default="wdeg-invlex")

    p = sub.add_parser("lift", parents=[common], help="lift the semi-toric basis of a built-in example")
    p.add_argument("--example", choices=("sl3", "toric"), required=True)

    p = sub.add_parser("gorenstein", parents=[common], help="Gorenstein criterion for a linear chain of bonds")
    p.add_argument("--bonds", type=_bond_list, required=True, help="b_1,...,b_r from the bottom up")

    sub.add_parser("wps", parents=[common], help="Gorenstein weighted projective 3-spaces and their singular loci")
    sub.add_parser("sl3-demo", parents=[common], help="the complete flag variety of SL3")
    sub.add_parser("toric-demo", parents=[common], help="the toric threefold with bonds 2,1,2")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> JobConfig:
    ns = build_parser().parse_args(argv)
    lin = getattr(ns, "linearization", "")
    return JobConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        degree_bound=getattr(ns, "degree_bound", 2),
        linearization=tuple(x.strip() for x in lin.split(",") if x.strip()),
        order=getattr(ns, "order", "wdeg-invlex"),
        example=getattr(ns, "example", None),
        bonds=getattr(ns, "bonds", ()),
        output_format=ns.output_format,
        verbose=ns.verbose,
    )


def run(cfg: JobConfig) -> int:
    logging.basicConfig(level=logging.INFO if cfg.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    try:
        return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1
    except SeshadriError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
