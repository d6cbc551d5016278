"""Command-line front end.

Exit status is 0 on success, 1 when a verification fails (the report then
carries a witness) and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .autgroup import (
    NotAutomorphismError,
    act_on_form,
    extend,
    graded,
    hn_factorize,
    orbit_invariants,
    random_automorphism,
)
from .exactlin import FieldMode, QMatrix
from .freenilp import FreeNilpotent, witt_dimension
from .invforms import BilinearForm, NotInvariantError, invariant_form_space, is_invariant, sym0_membership
from .paperbook.catalog import CATALOG_LABELS, classified_algebra
from .paperbook.families import FAMILIES, FamilySpec, family_form
from .paperbook.fields import gamma_class, matrix_class
from .paperbook.replay import TAGS, jsonable, replay_theorem
from .quadratize import (
    NotAdmissibleError,
    QuadraticAlgebra,
    orthogonality_check,
    quotient_quadratic,
    split_1dim,
    type_and_nilindex,
    verify_quadratic,
)

EPILOG = f"""\
families: {', '.join(FAMILIES)}
replay tags: {', '.join(TAGS)}
catalog labels: {', '.join(CATALOG_LABELS)}

--params takes a JSON file.  For family commands it holds
  {{"family": "B25", "A1": [[..]], "gamma": "1/2", "A2": [[..]]}}
(--family overrides "family").  `verify` also accepts a quadratic algebra
as written by `quadratize --json`.  `act` additionally reads
"generator_images" (one coordinate vector per generator) or "P" (a d x d
matrix, acting gradedly); without either a random automorphism is drawn
from --seed.  The seed defaults to $QUADLIE_SEED, then 0.
"""


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QUADLIE_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"QUADLIE_SEED must be an integer, got {env!r}")


def _load_params(path):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}")
    if not isinstance(obj, dict):
        raise UsageError(f"{path} must hold a JSON object")
    return obj


def _family(args, params, required=True) -> FamilySpec | None:
    fam = args.family or params.get("family")
    if fam is None:
        if required:
            raise UsageError("a form is needed: pass --family and/or --params")
        return None
    try:
        spec = FamilySpec.from_json({**params, "family": fam})
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"malformed family spec: {e}")
    if args.d is not None and args.d != spec.d or args.t is not None and args.t != spec.t:
        raise UsageError(f"{fam} lives on n_{spec.d},{spec.t}, not on the requested -d/-t")
    return spec


def _algebra(args) -> FreeNilpotent:
    if args.d is None or args.t is None:
        raise UsageError("this command needs -d and -t")
    if args.d < 1 or args.t < 1:
        raise UsageError("-d and -t must be positive")
    return FreeNilpotent(args.d, args.t)


def _matrix_text(M: QMatrix) -> str:
    return M.pretty()


# ----------------------------------------------------------------------
# commands; each returns (exit code, json object, text)
# ----------------------------------------------------------------------


def cmd_basis(args):
    alg = _algebra(args)
    rows = [{"index": i + 1, "grade": alg.grade[i], "word": str(w)} for i, w in enumerate(alg.basis)]
    text = "\n".join(f"{r['index']:>4}  {r['grade']:>2}  {r['word']}" for r in rows)
    return 0, {"d": alg.d, "t": alg.t, "basis": rows}, text


def cmd_dims(args):
    if args.d is None or args.t is None:
        raise UsageError("dims needs -d and -t")
    if args.d < 1 or args.t < 1:
        raise UsageError("-d and -t must be positive")
    dims = [witt_dimension(args.d, k) for k in range(1, args.t + 1)]
    text = "\n".join(f"grade {k}: {n}" for k, n in enumerate(dims, 1)) + f"\ntotal: {sum(dims)}"
    return 0, {"d": args.d, "t": args.t, "graded": dims, "total": sum(dims)}, text


def cmd_invforms(args):
    params = _load_params(args.params)
    spec = _family(args, params, required=False)
    if spec is not None:
        B = family_form(spec)
        inv = is_invariant(B)
        obj = {"family": spec.to_json(), "invariant": inv, "form": B.to_json()}
        if inv:
            obj["membership"] = sym0_membership(B).to_json()
        text = _matrix_text(B.matrix) + f"\ninvariant: {inv}"
        if inv:
            text += f"\nadmissible: {obj['membership']['member']} ({obj['membership']['reason']})"
        return (0 if inv else 1), obj, text
    alg = _algebra(args)
    space = invariant_form_space(alg)
    obj = {"d": alg.d, "t": alg.t, "dimension": len(space), "basis": [B.matrix.to_json()["entries"] for B in space]}
    return 0, obj, f"dim S^2_0(n_{alg.d},{alg.t}) = {len(space)}"


def _field_report(spec: FamilySpec, mode: FieldMode) -> dict:
    out = {"field": mode.value}
    if spec.gamma:
        out["gamma"] = gamma_class(spec.gamma, mode)
    if spec.A2 is not None:
        out["A2"] = matrix_class(spec.A2, mode)
    return out


def _summary(Q: QuadraticAlgebra) -> dict:
    typ, nil = type_and_nilindex(Q)
    return {"dim": Q.dim, "type": typ, "nilindex": nil, "splits": split_1dim(Q) is not None}


def cmd_quadratize(args):
    params = _load_params(args.params)
    spec = _family(args, params)
    B = family_form(spec)
    try:
        Q = quotient_quadratic(B)
    except NotInvariantError as e:
        return 1, {"pass": False, "error": "not invariant", "reason": str(e)}, f"not invariant: {e}"
    except NotAdmissibleError as e:
        obj = {"pass": False, "error": "not admissible", "reason": e.reason, "witness": jsonable(e.witness)}
        return 1, obj, f"not admissible: {e.reason}; witness {e.witness}"
    obj = {"pass": True, "algebra": Q.to_json(), "summary": _summary(Q)}
    if args.field:
        obj["classes"] = _field_report(spec, FieldMode(args.field))
    lines = [f"{k}: {v}" for k, v in obj["summary"].items()]
    lines += [f"[{Q.labels[i]}, {Q.labels[j]}] = {c} {Q.labels[k]}" for i, j, k, c in Q.table.triples()]
    if args.field:
        lines.append(f"classes: {json.dumps(jsonable(obj['classes']), sort_keys=True)}")
    return 0, obj, "\n".join(lines)


def cmd_verify(args):
    params = _load_params(args.params)
    if isinstance(params.get("algebra"), dict):
        params = params["algebra"]
    if "structure" in params:
        try:
            Q = QuadraticAlgebra.from_json(params)
        except (KeyError, ValueError, TypeError) as e:
            raise UsageError(f"malformed quadratic algebra: {e}")
    else:
        code, obj, text = cmd_quadratize(args)
        if code:
            return code, obj, text
        Q = QuadraticAlgebra.from_json(obj["algebra"])
    rep = verify_quadratic(Q)
    orth = rep.ok and orthogonality_check(Q)
    obj = {"pass": rep.ok and orth, "checks": rep.to_json()["checks"], "orthogonality": orth}
    if rep.ok:
        obj["summary"] = _summary(Q)
    lines = [f"{name}: {'ok' if c['pass'] else 'FAIL ' + json.dumps(jsonable(c['witness']))}"
             for name, c in rep.checks.items()]
    lines.append(f"orthogonality: {'ok' if orth else 'FAIL'}")
    return (0 if obj["pass"] else 1), obj, "\n".join(lines)


def cmd_replay(args):
    tag = args.tag or "all"
    if tag not in TAGS:
        raise UsageError(f"unknown tag {tag!r}; known: {', '.join(TAGS)}")
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    rep = replay_theorem(tag, _seed(args), args.samples)
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" for c in rep.checks]
    lines.append(f"{sum(c.passed for c in rep.checks)}/{len(rep.checks)} checks pass")
    return (0 if rep.ok else 1), rep.to_json(), "\n".join(lines)


def cmd_catalog(args):
    if args.label:
        try:
            entries = [classified_algebra(args.label)]
        except KeyError as e:
            raise UsageError(e.args[0])
    else:
        entries = [classified_algebra(lab) for lab in CATALOG_LABELS]
        if args.field == "C":
            entries = [e for e in entries if e.field == "C"]
    out, lines, ok = [], [], True
    for e in entries:
        rep = verify_quadratic(e.algebra)
        good = rep.ok and orthogonality_check(e.algebra) and type_and_nilindex(e.algebra) == (e.type, e.nilindex)
        ok &= good
        out.append({**e.to_json(), "verified": good})
        lines.append(f"{e.label:<14} {e.name:<24} dim {e.algebra.dim:>2}  type {e.type}  nilindex {e.nilindex}"
                     f"  field {e.field}  {'ok' if good else 'FAIL'}")
    obj = {"entries": out, "pass": ok}
    if args.field:
        obj["field"] = args.field
        obj["complete"] = args.field != "Q"
    return (0 if ok else 1), obj, "\n".join(lines)


def cmd_act(args):
    params = _load_params(args.params)
    spec = _family(args, params)
    B = family_form(spec)
    alg = B.algebra
    try:
        if "generator_images" in params:
            imgs = params["generator_images"]
            phi = extend([alg.element([Fraction(c) for c in v]) for v in imgs])
        elif "P" in params:
            phi = graded(alg, QMatrix(params["P"]))
        else:
            phi = random_automorphism(alg, random.Random(f"act:{_seed(args)}"))
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"malformed automorphism: {e}")
    try:
        fac = hn_factorize(phi)
        image = act_on_form(B, phi)
    except NotAutomorphismError as e:
        raise UsageError(str(e))
    if not is_invariant(B):
        return 1, {"pass": False, "error": "form is not invariant"}, "form is not invariant"
    before, after = orbit_invariants(B), orbit_invariants(image)
    same = before == after
    obj = {
        "pass": same,
        "automorphism": phi.to_json(),
        "h": fac.h.grade_block(1, 1).to_json()["entries"],
        "form": image.to_json(),
        "invariants": {"before": before.to_json(), "after": after.to_json()},
    }
    text = _matrix_text(image.matrix) + f"\norbit invariants preserved: {same}"
    return (0 if same else 1), obj, text


COMMANDS = {
    "basis": (cmd_basis, "list the Hall basis of n_{d,t}"),
    "dims": (cmd_dims, "graded dimensions from the Witt formula"),
    "invforms": (cmd_invforms, "solve for invariant forms, or check a family form"),
    "quadratize": (cmd_quadratize, "quotient by the radical of an admissible form"),
    "verify": (cmd_verify, "check the quadratic-algebra axioms"),
    "replay": (cmd_replay, "replay the classification identities"),
    "catalog": (cmd_catalog, "list and check the classified algebras"),
    "act": (cmd_act, "act by an automorphism on a family form"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-d", type=int, help="number of generators")
    common.add_argument("-t", type=int, help="nilpotency index")
    common.add_argument("--family", choices=FAMILIES, help="parametric form family")
    common.add_argument("--params", metavar="FILE.json", help="family parameters or algebra file")
    common.add_argument("--tag", help="replay tag (default: all)")
    common.add_argument("--seed", type=int, help="seed for sampled checks")
    common.add_argument("--samples", type=int, default=10, help="random points per identity")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--field", choices=[m.value for m in FieldMode], help="ground field for class data")

    p = argparse.ArgumentParser(
        prog="quadlie",
        description="Free nilpotent Lie algebras, invariant forms and quadratic quotients.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_, epilog=EPILOG,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        if name == "catalog":
            sp.add_argument("label", nargs="?", help="catalog label, e.g. closed-iii or -real-iv")
    return p


def _emit(obj, text, as_json: bool, stream) -> None:
    if as_json:
        stream.write(json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n")
    elif text:
        stream.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    fn = COMMANDS[args.command][0]
    try:
        code, obj, text = fn(args)
    except UsageError as e:
        if args.json:
            _emit({"error": "usage", "reason": str(e)}, None, True, sys.stdout)
        print(f"quadlie {args.command}: {e}", file=sys.stderr)
        return 2
    _emit(obj, text, args.json, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
