"""Command-line front end.

Every subcommand prints a single JSON document on stdout.  Exit status is 0
on success, 1 when the library rejects the input (the error is serialized
as JSON) and 2 when the command line or a model string does not parse.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .chevalley import build_chevalley_algebra, n_table_dump, verify_chevalley_axioms
from .hopf import (
    ContractionSigma,
    LogEigenvalue,
    affine_moduli_dimension,
    canonical_contracting_sigma,
    contraction_spectrum,
    hopf_report,
    poincare_dulac_resonances,
)
from .parabolic import (
    build_parabolic,
    check_delta_compactness,
    effectivity_check,
    torsion_action_fields,
    verify_consistency_identities,
)
from .rootsys import DynkinSpec, SpecParseError, build_root_system
from .verify import verify_model

REQUIRED_MODELS = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2")


@dataclass(frozen=True)
class ModelSpec:
    dynkin: DynkinSpec
    crossed: frozenset[int] | None

    @classmethod
    def parse(cls, text: str) -> ModelSpec:
        """``<DYNKIN>["|crossed=" idx ("," idx)*]`` with 1-based indices."""
        head, bar, tail = text.partition("|")
        dynkin = DynkinSpec.parse(head)
        if not bar:
            return cls(dynkin, None)
        start = len(head) + 1
        key = "crossed="
        if not tail.startswith(key):
            raise SpecParseError("expected 'crossed='", tail[: len(key)] or "|", start)
        pos = start + len(key)
        crossed = set()
        for item in tail[len(key):].split(","):
            if not item.isdigit() or not item.isascii():
                raise SpecParseError("expected a node index", item or ",", pos)
            idx = int(item)
            if not 1 <= idx <= dynkin.rank:
                raise SpecParseError(f"node index out of range 1..{dynkin.rank}", item, pos)
            crossed.add(idx)
            pos += len(item) + 1
        return cls(dynkin, frozenset(crossed))


def _frac(x: Fraction) -> str:
    return str(x)


def _roots(rs_roots) -> list[list[int]]:
    return [list(r) for r in rs_roots]


def parse_rationals(text: str) -> tuple[Fraction, ...]:
    out, pos = [], 0
    for item in text.split(","):
        try:
            out.append(Fraction(item.strip()))
        except (ValueError, ZeroDivisionError):
            raise SpecParseError("expected a rational number", item, pos) from None
        pos += len(item) + 1
    return tuple(out)


def parse_eigenvalues(text: str) -> list[complex]:
    """JSON ``[[re, im], ...]`` or comma-separated ``modulus∠degrees`` (``@`` also accepted)."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise SpecParseError("malformed JSON eigenvalue list", stripped[exc.pos:exc.pos + 8], exc.pos) from None
        out = []
        for item in data:
            if (not isinstance(item, list) or len(item) != 2
                    or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
                raise SpecParseError("expected an [re, im] pair", json.dumps(item), stripped.find("["))
            out.append(complex(item[0], item[1]))
        return out
    out, pos = [], 0
    for chunk in text.split(","):
        sep = "∠" if "∠" in chunk else "@"
        mod, _, deg = chunk.partition(sep)
        try:
            out.append(cmath.rect(float(mod), math.radians(float(deg or 0))))
        except ValueError:
            raise SpecParseError("expected modulus∠degrees", chunk, pos) from None
        pos += len(chunk) + 1
    return out


def parse_log_eigenvalues(text: str) -> list[LogEigenvalue]:
    """Comma-separated exact ``log_modulus[:turns]`` entries, e.g. ``-1,-2:1/3``."""
    out, pos = [], 0
    for chunk in text.split(","):
        mod, _, turns = chunk.partition(":")
        try:
            out.append(LogEigenvalue(Fraction(mod), Fraction(turns or 0)))
        except (ValueError, ZeroDivisionError):
            raise SpecParseError("expected log_modulus[:turns]", chunk, pos) from None
        pos += len(chunk) + 1
    return out


def cmd_roots(args) -> dict:
    rs = build_root_system(DynkinSpec.parse(args.spec))
    return {
        "spec": str(rs.spec),
        "rank": rs.rank,
        "num_roots": len(rs.roots),
        "roots": _roots(rs.roots),
        "positive_roots": _roots(rs.positive_roots),
        "gram": [[_frac(x) for x in row] for row in rs.gram],
    }


def cmd_chevalley(args) -> dict:
    rs = build_root_system(DynkinSpec.parse(args.spec))
    alg = build_chevalley_algebra(rs)
    return {
        "spec": str(rs.spec),
        "dim": alg.dim,
        "basis": [str(b) for b in alg.basis],
        "n_table": n_table_dump(alg),
        "coroot_coords": [{"root": list(r), "coords": list(alg.coroot_coords[r])} for r in rs.roots],
        "axioms": verify_chevalley_axioms(alg).as_dict(),
    }


def _model(text: str):
    model = ModelSpec.parse(text)
    rs = build_root_system(model.dynkin)
    return rs, build_parabolic(rs, model.crossed or ())


def _field_dict(f) -> dict:
    return {
        "beta": list(f.beta),
        "constant": [{"coord": list(k), "value": _frac(v)} for k, v in f.constant.items()],
        "linear": [{"coord": list(a), "from": list(b), "value": _frac(v)} for (a, b), v in f.linear.items()],
    }


def cmd_parabolic(args) -> dict:
    rs, pd = _model(args.model)
    alg = build_chevalley_algebra(rs)
    eff = effectivity_check(alg, pd)
    delta = check_delta_compactness(pd)
    consistency = verify_consistency_identities(alg, pd)
    m, a, n, nm = pd.langlands_dims
    return {
        "model": pd.label,
        "crossed": sorted(pd.crossed),
        "compact_roots": _roots(pd.compact_roots),
        "noncompact_positive": _roots(pd.noncompact_positive),
        "noncompact_negative": _roots(pd.noncompact_negative),
        "delta": [_frac(d) for d in pd.delta],
        "langlands_dims": {"m": m, "a": a, "n": n, "n_minus": nm},
        "delta_compactness": {
            "pairings": [{"root": list(r), "value": _frac(v)} for r, v in delta.pairings.items()],
            "violations": _roots(delta.violations),
            "ok": delta.ok,
        },
        "effectivity": {"effective": eff.effective, "generated_dim": eff.generated_dim, "dim": alg.dim},
        "torsion_fields": [_field_dict(f) for f in torsion_action_fields(alg, pd)],
        "consistency": {
            "identity_one_printed": consistency.printed_one_holds,
            "identity_one_corrected": consistency.corrected_one_holds,
            "identity_two": consistency.two_holds,
            "homomorphism": consistency.homomorphism,
            "instances_one": len(consistency.identity_one),
            "instances_two": len(consistency.identity_two),
        },
    }


def _sigma(args, rs, pd) -> ContractionSigma:
    if args.sigma is None:
        return canonical_contracting_sigma(rs, pd)
    imag = parse_rationals(args.sigma_imag) if args.sigma_imag else None
    return ContractionSigma(parse_rationals(args.sigma), imag)


def cmd_contract(args) -> dict:
    rs, pd = _model(args.model)
    sigma = _sigma(args, rs, pd)
    spectrum = contraction_spectrum(rs, pd, sigma)
    return {
        "model": pd.label,
        "sigma": {"real": [_frac(c) for c in sigma.real], "imag_turns": [_frac(c) for c in sigma.imag]},
        "spectrum": [{"root": list(b), "log_modulus": _frac(m.log_modulus), "turns": _frac(m.turns)}
                     for b, m in spectrum.entries.items()],
        "strictly_contracting": spectrum.strictly_contracting,
    }


def cmd_resonances(args) -> dict:
    if (args.eigenvalues is None) == (args.log is None):
        raise SpecParseError("give exactly one of --eigenvalues or --log", "", 0)
    if args.log is not None:
        lambdas = parse_log_eigenvalues(args.log)
        shown = [[_frac(x.log_modulus), _frac(x.turns)] for x in lambdas]
    else:
        lambdas = parse_eigenvalues(args.eigenvalues)
        shown = [[z.real, z.imag] for z in lambdas]
    count, moduli = affine_moduli_dimension(lambdas)
    pd = poincare_dulac_resonances(lambdas)
    return {
        "eigenvalues": shown,
        "exact": args.log is not None,
        "affine_moduli": {"count": count, "relations": [r.as_list() for r in moduli]},
        "poincare_dulac": [r.as_list() for r in pd],
        "linearizable": not pd,
    }


def cmd_report(args) -> dict:
    rs, pd = _model(args.model)
    sigma = _sigma(args, rs, pd) if args.sigma is not None else None
    return hopf_report(rs, pd, sigma).as_dict()


def cmd_verify(args) -> dict:
    specs = args.models or list(REQUIRED_MODELS)
    models = [ModelSpec.parse(s) for s in specs]
    results = []
    for text, model in zip(specs, models):
        rs = build_root_system(model.dynkin)
        crossed = [model.crossed] if model.crossed is not None else None
        results.append({"model": text, **verify_model(rs, crossed, args.samples)})
    return {"models": results, "all_passed": all(r["passed"] for r in results)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parahopf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="root system and Gram matrix")
    p.add_argument("spec", help='Dynkin spec such as "A2" or "A1xA1"')
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("chevalley", help="structure constants and axiom report")
    p.add_argument("spec")
    p.set_defaults(func=cmd_chevalley)

    p = sub.add_parser("parabolic", help="parabolic data, effectivity and torsion action")
    p.add_argument("model", help='model such as "A3|crossed=1,3"')
    p.set_defaults(func=cmd_parabolic)

    for name, func, help_ in (("contract", cmd_contract, "contraction spectrum on the nilradical"),
                              ("report", cmd_report, "Hopf-manifold classification report")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("model")
        p.add_argument("--sigma", help="rational coefficients over the simple roots (default: -delta)")
        p.add_argument("--sigma-imag", help="imaginary coefficients, in turns")
        p.set_defaults(func=func)

    p = sub.add_parser("resonances", help="affine-connection moduli and Poincare-Dulac resonances")
    p.add_argument("--eigenvalues", help='"[[re, im], ...]" or "0.5∠0,0.25∠90"')
    p.add_argument("--log", help='exact log-eigenvalues "log_modulus[:turns],..."')
    p.set_defaults(func=cmd_resonances)

    p = sub.add_parser("verify", help="run every invariant suite over the listed models")
    p.add_argument("models", nargs="*", help="models to check (default: all required types)")
    p.add_argument("--samples", type=int, default=20, help="random torsion vectors per parabolic")
    p.set_defaults(func=cmd_verify)
    return parser


def load_schema(name: str) -> dict:
    """JSON schema shipped for subcommand ``name`` (or ``"error"``)."""
    return json.loads(resources.files(__package__).joinpath("schemas", f"{name}.json").read_text("utf-8"))


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = args.func(args)
    except SpecParseError as exc:
        print(f"parahopf: parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        sys.stdout.write(dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return 1
    sys.stdout.write(dumps(doc))
    if args.command == "verify" and not doc["all_passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
