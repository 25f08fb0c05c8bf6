"""Command-line front end.

Every invocation is turned into a job document {"command", "inputs", "options"}, validated
against a JSON schema, dispatched, and answered with one JSON report on stdout.

Exit codes: 0 computed (a "false" verdict included), 2 verdict unknown, 1 input error.
"""

import argparse
import json
import random
import re
import sys
from fractions import Fraction
from importlib import resources
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import jsonschema

from . import cohomology, composition, invariants, jordan, quadratic_forms
from .etale import QuadraticEtale, fixed_algebra_is_L, parse_cubic, switch_idempotents
from .exact_numbers import Q, fmt
from .search import ENV_HEIGHT_BOUND, default_height_bound
from .tori import UnitaryTorus, shape_isomorphism_check

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2


class InputError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


# field name -> (argparse help, parser kind, expected length or None)
FIELDS = {
    "form": ("diagonal entries, e.g. 1,-1", "rationals", None),
    "value": ("rational value", "rational", None),
    "d": ("slot d of <1, -d>", "rational", None),
    "pfister": ("Pfister slots", "rationals", None),
    "C": ("Cayley-Dickson parameters", "rationals", None),
    "K": ("alpha with K = Q(sqrt(alpha)); 1 means split", "rational", None),
    "L": ("split | mixed:A | field:c0,c1,c2", "cubic", None),
    "s": ("class component in L", "rationals", 3),
    "z": ("class component in K", "rationals", 2),
    "u": ("admissible pair component in L", "rationals", 3),
    "mu": ("admissible pair component in K", "rationals", 2),
    "u2": ("second algebra: u", "rationals", 3),
    "mu2": ("second algebra: mu", "rationals", 2),
    "a": ("element of L (tits) or diagonal of the involution (group)", "rationals", 3),
    "x": ("element of E", "rationals", 6),
    "w": ("invertible element of E", "rationals", 6),
    "hint": ("candidate isomorphism witness in E", "rationals", 6),
    "samples": ("number of samples", "int", None),
    "Gamma": ("Gamma diagonal", "rationals", 3),
    "kind": ("G2 | A2 | F4", "str", None),
    "alpha": ("center parameter of an A2 involution", "rational", None),
    "division": ("group arises from a division algebra", "bool", None),
    "first_construction": ("the Albert algebra is a first Tits construction", "bool", None),
    "xi": ("diagonal of an Albert element", "rationals", 3),
    "c1": ("octonion entry c1", "rationals", 8),
    "c2": ("octonion entry c2", "rationals", 8),
    "c3": ("octonion entry c3", "rationals", 8),
    "name": ("fixture name", "str", None),
    "file": ("fixture file", "str", None),
}


def _parse_field(name: str, raw):
    kind, length = FIELDS[name][1], FIELDS[name][2]
    try:
        if kind == "bool":
            return bool(raw)
        if kind == "str":
            return raw
        if kind == "int":
            value = int(raw)
            if value < 0:
                raise ValueError("must be non-negative")
            return value
        if kind == "rational":
            return Q(raw)
        if kind == "cubic":
            return parse_cubic(raw)
        values = [Q(t) for t in raw.split(",")]
        if length is not None and len(values) != length:
            raise ValueError(f"expected {length} comma-separated rationals, got {len(values)}")
        return values
    except InputError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(name, str(exc)) from None


class Job:
    def __init__(self, doc: dict):
        self.doc = doc
        self.command = doc["command"]
        self.raw = doc.get("inputs", {})
        options = doc.get("options", {})
        self.seed = options.get("seed", 0)
        try:
            self.height_bound = options.get("height_bound") or default_height_bound()
        except ValueError as exc:
            raise InputError(ENV_HEIGHT_BOUND, str(exc)) from None
        self._cache = {}

    def __getitem__(self, name: str):
        if name not in self._cache:
            self._cache[name] = _parse_field(name, self.raw[name])
        return self._cache[name]

    def get(self, name: str, default=None):
        return self[name] if name in self.raw else default

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def torus(self) -> UnitaryTorus:
        return UnitaryTorus(self["L"], QuadraticEtale(self["K"]))


def _slots(p) -> List[str]:
    return [fmt(s) for s in p.slots]


def _elems(x) -> List[str]:
    return [fmt(v) for v in x.c]


def _unknown_if(verdict: str) -> bool:
    return verdict == cohomology.UNKNOWN


Handler = Callable[[Job], Tuple[dict, bool]]


def qform_isotropy(job: Job):
    f = quadratic_forms.QuadraticForm(job["form"])
    return {"verdict": quadratic_forms.is_isotropic(f),
            "anisotropic_places": [str(p) for p in quadratic_forms.anisotropic_places(f)]}, False


def qform_hyperbolic(job: Job):
    return {"verdict": quadratic_forms.is_hyperbolic(quadratic_forms.QuadraticForm(job["form"]))}, False


def qform_represents(job: Job):
    return {"verdict": quadratic_forms.represents(quadratic_forms.QuadraticForm(job["form"]), job["value"])}, False


def qform_divides(job: Job):
    pi = quadratic_forms.PfisterForm(job["pfister"])
    return {"verdict": quadratic_forms.pfister_divides_1fold(job["d"], pi)}, False


def oct_division(job: Job):
    C = _composition(job)
    return {"division": composition.is_division(C), "norm_form": _slots(C.norm_form())}, False


def oct_embeds(job: Job):
    C = _composition(job)
    return {"verdict": composition.embeds_quadratic(QuadraticEtale(job["K"]), C)}, False


def torus_info(job: Job):
    T = job.torus()
    return {
        "shape": str(T.classify()),
        "alpha": T.alpha,
        "delta": T.delta,
        "q_T": [fmt(c) for c in T.q_T().coefficients],
        "distinguished": T.is_distinguished(),
        "fixed_algebra_is_L": fixed_algebra_is_L(T.ealg),
        "split_switch": switch_idempotents(T.ealg) is not None if T.K.split else None,
    }, False


def torus_distinguished(job: Job):
    return {"verdict": job.torus().is_distinguished()}, False


def torus_classify(job: Job):
    T = job.torus()
    return {"shape": str(T.classify()), "tag": T.classify().to_dict()}, False


def torus_shape_check(job: Job):
    try:
        return shape_isomorphism_check(job.torus(), job.get("samples", 100), job.seed), False
    except ValueError as exc:
        raise InputError("L", str(exc)) from None


def _class(job: Job) -> cohomology.CohomologyClass:
    try:
        return cohomology.make_class(job.torus(), job["s"], job["z"])
    except cohomology.AdmissibilityError as exc:
        raise InputError("s", str(exc)) from None


def h1_describe(job: Job):
    return cohomology.h1_description(job.torus()).to_dict(), False


def h1_trivial(job: Job):
    v = cohomology.is_trivial(_class(job), job.height_bound)
    out = v.to_dict()
    out["detail"] = v.detail
    return out, _unknown_if(v.verdict)


def h1_decompose(job: Job):
    c = _class(job)
    kp, s_part = cohomology.decompose(c)
    rebuilt = cohomology.psi(c.T, c.s, c.z) * kp
    return {"k_part": kp.to_dict(), "s_part": _elems(s_part),
            "psi_times_k_part": rebuilt.to_dict(), "recomposes": rebuilt.same_representative(c)}, False


def _tits(job: Job, u: str = "u", mu: str = "mu") -> jordan.TitsProcessAlgebra:
    T = job.torus()
    try:
        return jordan.TitsProcessAlgebra(T.ealg, job[u], job[mu])
    except cohomology.AdmissibilityError as exc:
        raise InputError(u, str(exc)) from None


def tits_norm(job: Job):
    J = _tits(job)
    a = J.L.elem(job["a"]) if "a" in job.raw else J.L.zero
    x = J.ealg.elem(job["x"]) if "x" in job.raw else J.ealg.zero
    return {"norm": fmt(J.norm(a, x))}, False


def tits_isotope(job: Job):
    J = _tits(job)
    try:
        iso = jordan.isotope_map(J, job["w"])
    except ValueError as exc:
        raise InputError("w", str(exc)) from None
    rng = job.rng()
    n = job.get("samples", 200)
    preserved = all(iso.target.norm(*iso.forward(p)) == J.norm(*p) for p in (J.random_element(rng) for _ in range(n)))
    return {"u": _elems(iso.target.u), "mu": _elems(iso.target.mu), "admissible": True,
            "map": "(a, b) -> (a, b w^-1)", "norm_preserved": preserved, "samples": n}, False


def tits_zerodiv(job: Job):
    z = jordan.find_zero_divisor(_tits(job), job.height_bound)
    return z.to_dict(), _unknown_if(z.verdict)


def tits_lisom(job: Job):
    J1, J2 = _tits(job), _tits(job, "u2", "mu2")
    hints = [J1.ealg.elem(job["hint"])] if "hint" in job.raw else []
    r = jordan.l_isomorphic(J1, J2, job.height_bound, hints)
    return r.to_dict(), _unknown_if(r.verdict)


def tits_harness(job: Job):
    T = job.torus()
    rng = job.rng()
    pairs = []
    for _ in range(job.get("samples", 5)):
        c = cohomology.sample_class(T, rng)
        pairs.append((c.s, c.z))
    desc = cohomology.h1_description(T)
    if desc.nontrivial_class is not None:
        pairs.append((desc.nontrivial_class.s, desc.nontrivial_class.z))
    return jordan.titsisom_harness(T.L, T.K, pairs, job.height_bound), False


def _composition(job: Job) -> composition.CompositionAlgebra:
    try:
        return composition.CompositionAlgebra(job["C"])
    except ValueError as exc:
        raise InputError("C", str(exc)) from None


def _albert(job: Job) -> jordan.ReducedAlbert:
    C = _composition(job)
    try:
        return jordan.ReducedAlbert(C, job["Gamma"])
    except ValueError as exc:
        raise InputError("Gamma", str(exc)) from None


def albert_product_check(job: Job):
    A = _albert(job)
    rng = job.rng()
    n = job.get("samples", 20)
    one = A.identity()
    commutative = identity = True
    for _ in range(n):
        X, Y = A.random_element(rng), A.random_element(rng)
        commutative &= A.product(X, Y) == A.product(Y, X)
        identity &= A.product(X, one) == X
    return {"samples": n, "commutative": commutative, "unit": identity,
            "hermitian": True, "passed": commutative and identity}, False


def albert_invariants(job: Job):
    A = _albert(job)
    if "xi" in job.raw:
        zero = [0] * 8
        X = A.element(job["xi"], [job.get(f"c{i}", zero) for i in (1, 2, 3)])
    else:
        X = A.random_element(job.rng())
    t, s, n = A.trace_and_norm(X)
    return {"T": fmt(t), "S": fmt(s), "N": fmt(n), "degree3_identity": A.is_zero(jordan.degree3_residual(A, X))}, False


def albert_f3(job: Job):
    C = _composition(job)
    return {"f3": _slots(C.norm_form()), "f3_trivial": quadratic_forms.arason_trivial(C.norm_form())}, False


def albert_f5(job: Job):
    f5 = invariants.f5_albert(_composition(job), job["Gamma"])
    return {"f5": _slots(f5), "f5_trivial": quadratic_forms.arason_trivial(f5)}, False


def _group(job: Job) -> invariants.GroupData:
    kind = job.get("kind")
    if kind is None:
        kind = invariants.F4 if "Gamma" in job.raw else invariants.A2 if "a" in job.raw else invariants.G2
    if kind not in (invariants.G2, invariants.A2, invariants.F4):
        raise InputError("kind", f"unknown group kind {kind!r}")
    try:
        C = _composition(job) if "C" in job.raw else None
        inv = invariants.DiagonalUnitaryInvolution(job["alpha"], job["a"]) if kind == invariants.A2 else None
        return invariants.GroupData(kind, C, inv, job.get("Gamma"), job.get("division", False))
    except KeyError as exc:
        raise InputError(exc.args[0], "required for this group kind") from None
    except ValueError as exc:
        raise InputError("kind", str(exc)) from None


def group_oct(job: Job):
    C = invariants.oct_of_group(_group(job))
    return {"C": C.to_dict(), "division": composition.is_division(C)}, False


def group_f3(job: Job):
    f3 = invariants.f3_group(_group(job))
    return {"f3": _slots(f3), "f3_trivial": quadratic_forms.arason_trivial(f3)}, False


def group_f5(job: Job):
    G = _group(job)
    if G.kind != invariants.F4:
        raise InputError("kind", "f5 is attached to F4 groups")
    f5 = invariants.f5_group(G)
    return {"f5": _slots(f5), "f5_trivial": quadratic_forms.arason_trivial(f5)}, False


def group_embed_check(job: Job):
    return invariants.check_embedding_necessary(_group(job), job.torus()), False


def group_distinguished_torus(job: Job):
    verdict, T, how = invariants.distinguished_torus_exists(_group(job))
    witness = None
    if T is not None:
        witness = {"torus": T.to_dict(), "shape": str(T.classify()), "distinguished": T.is_distinguished()}
    return {"verdict": verdict, "witness": witness, "construction": how}, False


def group_f3a(job: Job):
    G = _group(job)
    try:
        return invariants.f3a_check(job.get("first_construction", False), job["L"], invariants.f3_group(G)), False
    except ValueError as exc:
        raise InputError("L", str(exc)) from None


TORUS = ["L", "K"]
COMMANDS: Dict[str, Tuple[Handler, List[str], List[str]]] = {
    "qform isotropy": (qform_isotropy, ["form"], []),
    "qform hyperbolic": (qform_hyperbolic, ["form"], []),
    "qform represents": (qform_represents, ["form", "value"], []),
    "qform divides": (qform_divides, ["d", "pfister"], []),
    "oct division": (oct_division, ["C"], []),
    "oct embeds": (oct_embeds, ["C", "K"], []),
    "torus info": (torus_info, TORUS, []),
    "torus distinguished": (torus_distinguished, TORUS, []),
    "torus classify": (torus_classify, TORUS, []),
    "torus shape-check": (torus_shape_check, TORUS, ["samples"]),
    "h1 describe": (h1_describe, TORUS, []),
    "h1 trivial": (h1_trivial, TORUS + ["s", "z"], []),
    "h1 decompose": (h1_decompose, TORUS + ["s", "z"], []),
    "tits norm": (tits_norm, TORUS + ["u", "mu"], ["a", "x"]),
    "tits isotope": (tits_isotope, TORUS + ["u", "mu", "w"], ["samples"]),
    "tits zerodiv": (tits_zerodiv, TORUS + ["u", "mu"], []),
    "tits lisom": (tits_lisom, TORUS + ["u", "mu", "u2", "mu2"], ["hint"]),
    "tits harness": (tits_harness, TORUS, ["samples"]),
    "albert product-check": (albert_product_check, ["C", "Gamma"], ["samples"]),
    "albert invariants": (albert_invariants, ["C", "Gamma"], ["xi", "c1", "c2", "c3"]),
    "albert f3": (albert_f3, ["C"], []),
    "albert f5": (albert_f5, ["C", "Gamma"], []),
}
GROUP_FIELDS = ["kind", "C", "alpha", "a", "Gamma", "division"]
COMMANDS.update({
    "group oct": (group_oct, [], GROUP_FIELDS),
    "group f3": (group_f3, [], GROUP_FIELDS),
    "group f5": (group_f5, [], GROUP_FIELDS),
    "group embed-check": (group_embed_check, TORUS, GROUP_FIELDS),
    "group distinguished-torus": (group_distinguished_torus, [], GROUP_FIELDS),
    "group f3a": (group_f3a, ["L"], GROUP_FIELDS + ["first_construction"]),
})


def _field_schema(name: str) -> dict:
    return {"type": "boolean"} if FIELDS[name][1] == "bool" else {"type": "string", "minLength": 1}


def job_schema(command: str) -> dict:
    _, required, optional = COMMANDS[command]
    return {
        "type": "object",
        "properties": {
            "command": {"const": command},
            "inputs": {
                "type": "object",
                "properties": {f: _field_schema(f) for f in required + optional},
                "required": required,
                "additionalProperties": False,
            },
            "options": {
                "type": "object",
                "properties": {"height_bound": {"type": "integer", "minimum": 1},
                               "seed": {"type": "integer"}},
                "additionalProperties": False,
            },
        },
        "required": ["command", "inputs"],
        "additionalProperties": False,
    }


def validate_job(doc: dict) -> None:
    command = doc.get("command") if isinstance(doc, dict) else None
    if command not in COMMANDS:
        raise InputError("command", f"unknown command {command!r}")
    try:
        jsonschema.validate(doc, job_schema(command))
    except jsonschema.ValidationError as exc:
        path = [str(p) for p in exc.absolute_path]
        if exc.validator == "required":
            missing = re.findall(r"'([^']+)' is a required property", exc.message)
            path.append(missing[0] if missing else "?")
        elif exc.validator == "additionalProperties":
            extra = re.findall(r"'([^']+)' was unexpected", exc.message)
            path.append(extra[0] if extra else "?")
        raise InputError(".".join(path) or "job", exc.message) from None


def _error(doc, field: str, message: str) -> dict:
    return {"command": doc.get("command") if isinstance(doc, dict) else None,
            "error": {"field": field, "message": message}}


def run_job(doc: dict) -> Tuple[dict, int]:
    """Validate and execute a job document; returns (report, exit code)."""
    try:
        validate_job(doc)
        job = Job(doc)
        handler = COMMANDS[job.command][0]
        result, unknown = handler(job)
    except InputError as exc:
        return _error(doc, exc.field, exc.message), EXIT_INPUT
    except (ValueError, ZeroDivisionError) as exc:
        # mathematically invalid data that passed the field parsers, e.g. a zero parameter
        return _error(doc, "inputs", str(exc)), EXIT_INPUT
    report = {
        "command": job.command,
        "input": doc["inputs"],
        "options": {"seed": job.seed, "height_bound": job.height_bound},
        "status": "unknown" if unknown else "computed",
        "result": result,
    }
    return report, EXIT_UNKNOWN if unknown else EXIT_OK


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# fixtures

FIXTURE_SCHEMA = {
    "type": "object",
    "properties": {
        "fixtures": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string"},
                    "argv": {"type": "array", "items": {"type": "string"}},
                    "expect": {"type": "object"},
                    "exit": {"type": "integer"},
                    "provenance": {"enum": ["PAPER", "DERIVED", "TRIVIAL"]},
                    "note": {"type": "string"},
                    "claim": {"type": "string"},
                },
                "required": ["name", "argv", "expect", "provenance"],
                "additionalProperties": False,
            },
        }
    },
    "required": ["fixtures"],
    "additionalProperties": False,
}


def load_fixtures(path: Optional[str] = None) -> List[dict]:
    if path is None:
        text = resources.files("toruslab").joinpath("fixtures.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
        jsonschema.validate(data, FIXTURE_SCHEMA)
    except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
        raise InputError("file", f"corrupted fixture file: {exc.args[0] if exc.args else exc}") from None
    names = [f["name"] for f in data["fixtures"]]
    if len(set(names)) != len(names):
        raise InputError("file", "duplicate fixture names")
    return data["fixtures"]


def _lookup(report: dict, dotted: str):
    node = report
    for part in dotted.split("."):
        if isinstance(node, list):
            node = node[int(part)]
        elif isinstance(node, dict) and part in node:
            node = node[part]
        else:
            return "<missing>"
    return node


def run_fixture(fx: dict, seed: int, height_bound: Optional[int]) -> dict:
    argv = list(fx["argv"]) + ["--seed", str(seed)]
    if height_bound is not None:
        argv += ["--height-bound", str(height_bound)]
    try:
        ns = parse_args(argv)
    except SystemExit:
        ns = None
    if ns is None or ns.group in ("fixtures", "job"):
        report, code = {"error": {"field": "argv", "message": "not a computation command"}}, EXIT_INPUT
    else:
        report, code = run_job(build_job(ns))
    mismatches = []
    expected_exit = fx.get("exit", EXIT_OK)
    if code != expected_exit:
        mismatches.append({"key": "exit", "expected": expected_exit, "actual": code})
    for key, want in sorted(fx["expect"].items()):
        got = _lookup(report, key)
        if got != want:
            mismatches.append({"key": key, "expected": want, "actual": got})
    if mismatches:
        status = "fail"
    else:
        status = "unknown" if code == EXIT_UNKNOWN else "pass"
    out = {"name": fx["name"], "provenance": fx["provenance"], "status": status, "exit": code,
           "mismatches": mismatches, "report": report}
    if "claim" in fx:
        out["claim"] = fx["claim"]
    return out


def fixtures_run(name: Optional[str], path: Optional[str], seed: int, height_bound: Optional[int]) -> Tuple[dict, int]:
    try:
        fixtures = load_fixtures(path)
        if name is not None:
            fixtures = [f for f in fixtures if f["name"] == name]
            if not fixtures:
                raise InputError("name", f"no fixture named {name!r}")
    except InputError as exc:
        return {"command": "fixtures run", "error": {"field": exc.field, "message": exc.message}}, EXIT_INPUT
    except OSError as exc:
        return {"command": "fixtures run", "error": {"field": "file", "message": str(exc)}}, EXIT_INPUT
    results = sorted((run_fixture(f, seed, height_bound) for f in fixtures), key=lambda r: r["name"])
    summary = {k: sum(r["status"] == k for r in results) for k in ("pass", "fail", "unknown")}
    report = {"command": "fixtures run", "options": {"seed": seed, "height_bound": height_bound},
              "summary": summary, "fixtures": results}
    return report, EXIT_INPUT if summary["fail"] else EXIT_OK


# argument parsing

_NEGATIVE_VALUE = re.compile(r"^-[\d/,\s-]+$")


def merge_negative_values(argv: Sequence[str]) -> List[str]:
    """Turn `--flag -1,2` into `--flag=-1,2` so argparse does not read the value as an option."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toruslab", description="Unitary tori, Pfister forms and Tits processes over Q.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every sampled quantity (default 0)")
    common.add_argument("--height-bound", type=int, default=None,
                        help=f"witness search height bound (default ${ENV_HEIGHT_BOUND} or 500)")
    groups = parser.add_subparsers(dest="group", required=True)
    by_group: Dict[str, Dict[str, Tuple[List[str], List[str]]]] = {}
    for command, (_, required, optional) in COMMANDS.items():
        g, action = command.split(" ", 1)
        by_group.setdefault(g, {})[action] = (required, optional)
    for g, actions in by_group.items():
        gp = groups.add_parser(g).add_subparsers(dest="action", required=True)
        for action, (required, optional) in actions.items():
            ap = gp.add_parser(action, parents=[common])
            for f in required + optional:
                flag = "--" + f.replace("_", "-")
                if FIELDS[f][1] == "bool":
                    ap.add_argument(flag, dest=f, action="store_true", default=None, help=FIELDS[f][0])
                else:
                    ap.add_argument(flag, dest=f, required=f in required, help=FIELDS[f][0])
    fx = groups.add_parser("fixtures").add_subparsers(dest="action", required=True)
    run = fx.add_parser("run", parents=[common])
    run.add_argument("--name", help=FIELDS["name"][0])
    run.add_argument("--file", help=FIELDS["file"][0])
    job = groups.add_parser("job", help="run a JSON job document")
    job.add_argument("path")
    return parser


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    return _parser().parse_args(merge_negative_values(argv))


def build_job(ns: argparse.Namespace) -> dict:
    command = f"{ns.group} {ns.action}"
    _, required, optional = COMMANDS[command]
    inputs = {}
    for f in required + optional:
        value = getattr(ns, f, None)
        if value is not None:
            inputs[f] = value
    options = {"seed": ns.seed}
    if ns.height_bound is not None:
        options["height_bound"] = ns.height_bound
    return {"command": command, "inputs": inputs, "options": options}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if ns.group == "fixtures":
        report, code = fixtures_run(ns.name, ns.file, ns.seed, ns.height_bound)
    elif ns.group == "job":
        try:
            with open(ns.path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            report, code = {"error": {"field": "path", "message": str(exc)}}, EXIT_INPUT
        else:
            report, code = run_job(doc)
    else:
        report, code = run_job(build_job(ns))
    sys.stdout.write(dumps(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
