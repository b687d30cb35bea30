"""Command-line front end.  Every subcommand reads one JSON file and writes a
JSON report.

Exit status: 0 on success, 1 when a check fails (e.g. a poset that is not
Cohen-Macaulay), 2 on bad input (malformed JSON, schema violation, guardrail
breach, or a precondition of the requested computation).
"""
from __future__ import annotations

import argparse
import json
import random
import sys

import jsonschema

from . import __version__
from .action import ComplexAction, PosetAction, verify_shelling
from .arrangement import Arrangement, ArrangementSpec, validate_spec
from .errors import SRQError
from .facering import MAX_DEGREE, hilbert_from_f, hilbert_function, invariant_hilbert_check, stanley_ideal
from .gsemimatroid import (char_poly_independence, char_poly_layers, delta, from_arrangement,
                           h_poly_independence, tutte)
from .homology import cm_scan_complex, cm_scan_poset, homology_of_chain_complex, chain_complex, order_chain_complex
from .poset import FinitePoset, SimplicialComplexData
from .serialize import detect_kind, poly1_to_json, poly2_to_json, validate


class InputError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, report):
        super().__init__("check failed")
        self.report = report


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def parse_chars(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        chars = [int(c) for c in text.split(",") if c.strip()]
    except ValueError:
        raise InputError(f"--chars expects a comma-separated list of integers, got {text!r}")
    bad = [c for c in chars if c != 0 and not _is_prime(c)]
    if bad or not chars:
        raise InputError(f"characteristics must be 0 or primes, got {text!r}")
    return chars


def load(path: str, kinds: tuple[str, ...]):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {path}: {e}")
    try:
        kind = detect_kind(data)
        if kind not in kinds:
            raise InputError(f"expected {' or '.join(kinds)} input, got {kind}")
        validate(data, kind)
    except jsonschema.ValidationError as e:
        raise InputError(f"schema violation in {path}: {e.message}")
    try:
        if kind == "arrangement":
            obj = ArrangementSpec.from_dict(data)
        elif kind == "poset":
            obj = FinitePoset.from_dict(data)
        elif kind == "complex":
            obj = SimplicialComplexData.from_dict(data)
        elif kind == "action":
            obj = PosetAction(FinitePoset.from_dict(data["poset"]), data["generators"])
        else:
            cx = SimplicialComplexData.from_facets(data["facets"], data.get("vertices"))
            obj = ComplexAction(cx, data["generators"], data.get("decomposition"))
    except (KeyError, ValueError) as e:
        raise InputError(f"invalid {kind} in {path}: {e}")
    return kind, obj, data


def _arrangement(spec: ArrangementSpec, args) -> Arrangement:
    validate_spec(spec, essential_required=args.essential_required)
    return Arrangement(spec)


def _degree(args) -> int:
    if args.degree > MAX_DEGREE:
        raise InputError(f"guardrail: --degree {args.degree} exceeds the limit {MAX_DEGREE}")
    if args.degree < 0:
        raise InputError("--degree must be nonnegative")
    return args.degree


# -- subcommands -----------------------------------------------------------------

def cmd_layers(args):
    _, spec, _ = load(args.input, ("arrangement",))
    return _arrangement(spec, args).layers_poset().to_dict()


def cmd_independence(args):
    _, spec, _ = load(args.input, ("arrangement",))
    return _arrangement(spec, args).independence_poset().to_dict()


def cmd_tutte(args):
    _, spec, _ = load(args.input, ("arrangement",))
    _arrangement(spec, args)
    return poly2_to_json(tutte(from_arrangement(spec)))


def cmd_delta(args):
    _, spec, _ = load(args.input, ("arrangement",))
    _arrangement(spec, args)
    return delta(spec).to_dict()


def cmd_polys(args):
    kind, obj, _ = load(args.input, ("arrangement", "poset"))
    if kind == "arrangement":
        _arrangement(obj, args)
        Q = from_arrangement(obj)
        T = tutte(Q)
        return {"d": Q.d,
                "h_independence": poly1_to_json(h_poly_independence(Q, T)),
                "chi_layers": poly1_to_json(char_poly_layers(Q, T)),
                "chi_independence": poly1_to_json(char_poly_independence(Q, T))}
    out = {"validate": obj.validate()}
    simp, _ = obj.is_simplicial()
    if simp:
        out["f_vector"] = obj.f_vector()
        out["h"] = poly1_to_json(obj.h_polynomial())
    if obj.bottom is not None and obj.is_graded():
        out["chi"] = poly1_to_json(obj.characteristic_polynomial())
    return out


def cmd_homology(args):
    kind, obj, _ = load(args.input, ("arrangement", "poset", "complex"))
    if kind == "arrangement":
        arr = _arrangement(obj, args)
        P = arr.independence_poset() if args.which == "independence" else arr.layers_poset()
        cc = order_chain_complex(P.remove_bottom())
    elif kind == "poset":
        cc = order_chain_complex(obj)
    else:
        cc = chain_complex(obj)
    report = {"integral": homology_of_chain_complex(cc).to_dict()}
    for c in parse_chars(args.chars) or []:
        res = homology_of_chain_complex(cc, c)
        report[f"char_{c}"] = {k: v["rank"] for k, v in res.to_dict().items()}
    return report


def cmd_cm_check(args):
    kind, obj, _ = load(args.input, ("arrangement", "poset", "complex"))
    chars = parse_chars(args.chars)
    if kind == "arrangement":
        arr = _arrangement(obj, args)
        if chars is None:
            chars = [0]
            if obj.p >= 1 and validate_spec(obj)["essential"]:
                dl = delta(obj).delta
                chars += [q for q in range(2, dl + 1) if dl % q == 0 and _is_prime(q)]
        P = arr.independence_poset() if args.which == "independence" else arr.layers_poset()
        reports = cm_scan_poset(P.remove_bottom(), chars)
    elif kind == "poset":
        reports = cm_scan_poset(obj, chars or [0])
    else:
        reports = cm_scan_complex(obj, chars or [0])
    out = {"results": [reports[c].to_dict() for c in reports]}
    if not all(r.cm for r in reports.values()):
        raise CheckFailed(out)
    return out


def cmd_face_ring(args):
    D = _degree(args)
    _, P, _ = load(args.input, ("poset",))
    pres = stanley_ideal(P)
    char = (parse_chars(args.chars) or [0])[0]
    alg = hilbert_function(pres, D, char)
    comb = hilbert_from_f(P, D)
    out = {"presentation": pres.to_dict(),
           "generators_pretty": [pres.format_poly(g) for g in pres.generators],
           "hilbert": alg.to_dict(), "hilbert_from_f": comb.to_dict(),
           "agree": alg.values == comb.values}
    if not out["agree"]:
        raise CheckFailed(out)
    return out


def cmd_quotient(args):
    kind, act, _ = load(args.input, ("action", "complex_action"))
    if kind == "complex_action":
        act = act.face_poset_action()
    trans, witness = act.is_translative()
    Q = act.quotient_poset()
    simp, qwit = Q.is_simplicial()
    return {"group_order": act.order, "translative": trans, "translativity_witness": witness,
            "quotient": Q.to_dict(), "quotient_simplicial": simp, "quotient_witness": qwit}


def cmd_shelling(args):
    _, act, data = load(args.input, ("complex_action",))
    if act.decomposition is None:
        raise SRQError("shelling needs a \"decomposition\" entry")
    sigma = data.get("facet") or sorted(min(act.complex.facets, key=sorted))
    order = act.shelling_order(sigma)
    orbit = act.orbit_complex(sigma)
    ok, witness = verify_shelling(orbit, order)
    out = {"facet": sorted(sigma), "order": [sorted(m) for m in order], "verified": ok,
           "witness": witness}
    if not ok:
        raise CheckFailed(out)
    return out


def cmd_invariants_check(args):
    D = _degree(args)
    kind, act, _ = load(args.input, ("action", "complex_action"))
    if kind == "complex_action":
        act = act.face_poset_action()
    out = invariant_hilbert_check(act, D)
    if not out["ok"]:
        raise CheckFailed(out)
    return out


def cmd_sample(args):
    from . import corpus
    rng = random.Random(args.seed)
    if args.kind == "arrangement":
        d = rng.randint(1, 3)
        return corpus.random_arrangement(rng, d, rng.randint(d, 5), rng.choice([1, 2])).to_dict()
    if args.kind == "poset":
        return corpus.random_graded_poset(rng).to_dict()
    if args.kind == "simplicial":
        return corpus.random_simplicial_poset(rng, rng.randint(2, 4), rng.randint(1, 5), rng.randint(0, 2)).to_dict()
    act = corpus.random_action(rng)
    return {"poset": act.poset.to_dict(), "generators": act.generators}


COMMANDS = {
    "layers": (cmd_layers, "poset of layers of an arrangement"),
    "independence": (cmd_independence, "independence poset of an arrangement"),
    "tutte": (cmd_tutte, "Tutte polynomial of an arrangement"),
    "delta": (cmd_delta, "per-basis delta table and overall delta"),
    "polys": (cmd_polys, "h- and characteristic polynomials"),
    "homology": (cmd_homology, "reduced homology of an order complex or complex"),
    "cm-check": (cmd_cm_check, "Cohen-Macaulay check per characteristic"),
    "face-ring": (cmd_face_ring, "face-ring presentation and Hilbert function"),
    "quotient": (cmd_quotient, "quotient poset of a group action"),
    "shelling": (cmd_shelling, "shelling order of a decoupled orbit complex"),
    "invariants-check": (cmd_invariants_check, "invariant ring versus quotient face ring"),
    "sample": (cmd_sample, "emit a seeded random instance"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="srquotient", description="Combinatorics and homology of toric arrangements, simplicial posets and their quotients.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        if name == "sample":
            sp.add_argument("--kind", choices=["arrangement", "poset", "simplicial", "action"],
                            default="arrangement")
            sp.add_argument("--seed", type=int, default=0)
        else:
            sp.add_argument("input", help="input JSON file")
        sp.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
        sp.add_argument("--chars", help="comma-separated characteristics (0 or primes)")
        sp.add_argument("--degree", type=int, default=4, help=f"degree bound (at most {MAX_DEGREE})")
        sp.add_argument("--essential-required", action="store_true",
                        help="reject arrangements whose characters do not span")
        sp.add_argument("--which", choices=["layers", "independence"], default="layers",
                        help="poset used for arrangement input to homology/cm-check")
    return ap


def _emit(report, args):
    text = json.dumps(report, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        report = func(args)
    except CheckFailed as e:
        _emit(e.report, args)
        return 1
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SRQError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    _emit(report, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
