"""Scenario files: JSON job lists executed against the engine.

A scenario declares the ring in its header (characteristic, variables,
monomial order) and lists jobs drawn from a fixed op registry.  Runs are
deterministic: the machine-readable report for a file is byte-identical
across runs (timings are reported on the human side only).

Job schema by op:
  sigma | tau | fpure | sfr    {"pair": {"f","a","e"}, ["c"]}
  compatible                   {"pair", "I_Z": [forms]}
  mult                         {"pair", "point": [residue|null,...], ["l"]}
  s0                           {"scheme", "m", ["pair"], ["which"], ["c"]}
  bpf | separates              {"scheme", ("forms" | s0 arguments),
                                ["ext_degree"]}
  gg                           {"scheme", "m", ("ideal" | "pair"+["which"])}
  thm46                        {"scheme", "points", "A", "l", "e"}
  restrict                     {"scheme", "pair", "I_Z", "m"}

Any job may carry "expect": a JSON fragment that must match the result
(recursive subset for objects, equality for leaves).  Ops that verify a
theorem (mult, thm46, restrict) pass exactly when the theorem holds.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List

from .config import Caps, DEFAULT_CAPS
from .errors import CharpError, ScenarioError
from .fsing import (PairDivisor, is_compatible, is_sharply_f_pure,
                    is_strongly_f_regular, multiplicity_containment,
                    sigma_chain, tau_chain)
from .ideal import Ideal
from .proj import (ProjScheme, degree_bound_pipeline, graded_piece,
                   is_base_point_free, is_globally_generated,
                   restriction_is_surjective, separates, space_from_polys,
                   stable_sections, stable_sections_generate, trivial_pair)
from .ring import PolyRing

REPORT_FORMAT = "charp-report-v1"


@dataclass
class Scenario:
    ring: PolyRing
    seed: int
    parallel: bool
    jobs: List[dict]
    header: Dict[str, Any] = field(default_factory=dict)


def _require(condition: bool, message: str):
    if not condition:
        raise ScenarioError(message)


def load_scenario(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from None
    return parse_scenario(data, source=path)


def parse_scenario(data: dict, source: str = "<scenario>") -> Scenario:
    _require(isinstance(data, dict), f"{source}: scenario must be an object")
    _require("p" in data, f"{source}: missing characteristic 'p'")
    _require("vars" in data, f"{source}: missing variable list 'vars'")
    order = data.get("order", "grevlex")
    _require(order == "grevlex",
             f"{source}: only the grevlex order is supported, got {order!r}")
    try:
        ring = PolyRing(tuple(data["vars"]), int(data["p"]))
    except CharpError as exc:
        raise ScenarioError(f"{source}: {exc}") from None
    seed = int(data.get("seed", 0))
    parallel = bool(data.get("parallel", False))
    jobs = data.get("jobs", [])
    _require(isinstance(jobs, list), f"{source}: 'jobs' must be a list")
    for i, job in enumerate(jobs):
        _require(isinstance(job, dict) and "op" in job,
                 f"{source}: job {i} must be an object with an 'op'")
        _require(job["op"] in JOB_REGISTRY,
                 f"{source}: job {i} has unknown op {job['op']!r}")
    header = {"p": ring.p, "vars": list(ring.variables), "order": "grevlex",
              "seed": seed, "parallel": parallel}
    return Scenario(ring=ring, seed=seed, parallel=parallel, jobs=jobs,
                    header=header)


# -- job helpers -----------------------------------------------------------


def _parse_pair(ring: PolyRing, spec: dict) -> PairDivisor:
    _require(isinstance(spec, dict) and {"f", "a", "e"} <= set(spec),
             "pair needs fields f, a, e")
    return PairDivisor(ring.parse(spec["f"]), int(spec["a"]), int(spec["e"]))


def _parse_ideal(ring: PolyRing, gens: list) -> Ideal:
    _require(isinstance(gens, list), "ideal must be a list of polynomials")
    return Ideal(ring, [ring.parse(g) for g in gens])


def _parse_scheme(ring: PolyRing, spec: dict) -> ProjScheme:
    _require(isinstance(spec, dict) and "n" in spec,
             "scheme needs the ambient dimension 'n'")
    n = int(spec["n"])
    _require(n + 1 == ring.nvars,
             f"scheme n={n} needs {n + 1} variables, header declares "
             f"{ring.nvars}")
    forms = [ring.parse(h) for h in spec.get("hypersurfaces", [])]
    return ProjScheme.from_forms(ring, forms)


def _pair_or_trivial(ring: PolyRing, job: dict) -> PairDivisor:
    if "pair" in job:
        return _parse_pair(ring, job["pair"])
    return trivial_pair(ring)


def _ideal_json(ideal: Ideal) -> list:
    return [str(g) for g in ideal.groebner_basis]


def _space_json(space) -> dict:
    return {"dim": space.dim, "basis": [str(f) for f in space.polys()]}


def _echo_pair(pair: PairDivisor) -> dict:
    return {"f": str(pair.f), "a": pair.a, "e": pair.e}


def _point_tuple(ring: PolyRing, raw: list) -> tuple:
    _require(isinstance(raw, list), "point must be a list of coordinates")
    out = []
    for v in raw:
        if v is None:
            out.append(None)
        elif isinstance(v, int) and not isinstance(v, bool):
            out.append(v)
        else:
            raise ScenarioError(f"point coordinate {v!r} is not a residue")
    return tuple(out)


def _subsystem_space(ring: PolyRing, job: dict, caps: Caps):
    """Shared input handling for bpf/separates: an explicit span of
    forms, or the stable subsystem of a pair."""
    scheme_spec = job.get("scheme", {"n": ring.nvars - 1})
    scheme = _parse_scheme(ring, scheme_spec)
    echo_scheme = {"n": scheme.n,
                   "hypersurfaces": [str(h) for h in scheme.forms]}
    if "forms" in job:
        m = int(job["m"])
        polys = [ring.parse(s) for s in job["forms"]]
        space = space_from_polys(scheme.ideal, m, polys)
        info = {"scheme": echo_scheme, "m": m, "source": "forms",
                "forms": [str(f) for f in polys]}
    else:
        pair = _pair_or_trivial(ring, job)
        which = job.get("which", "sigma")
        c = ring.parse(job["c"]) if "c" in job else None
        result = stable_sections(scheme, pair, int(job["m"]), which, c, caps)
        space = result.space
        info = {"scheme": echo_scheme, "pair": _echo_pair(pair),
                "m": int(job["m"]), "which": which, "level": result.level,
                "source": "stable-image"}
    return scheme, space, info


# -- job runners ------------------------------------------------------------


def _run_sigma(ring, job, caps):
    pair = _parse_pair(ring, job["pair"])
    chain = sigma_chain(pair, caps)
    return ({"pair": _echo_pair(pair)},
            {"generators": _ideal_json(chain.ideal)}, chain.steps, None)


def _run_tau(ring, job, caps):
    pair = _parse_pair(ring, job["pair"])
    c = ring.parse(job["c"]) if "c" in job else None
    chain = tau_chain(pair, c, caps)
    inputs = {"pair": _echo_pair(pair)}
    if c is not None:
        inputs["c"] = str(c)
    return (inputs, {"generators": _ideal_json(chain.ideal)}, chain.steps, None)


def _run_fpure(ring, job, caps):
    pair = _parse_pair(ring, job["pair"])
    verdict = is_sharply_f_pure(pair, caps)
    return ({"pair": _echo_pair(pair)}, {"verdict": verdict}, None, None)


def _run_sfr(ring, job, caps):
    pair = _parse_pair(ring, job["pair"])
    c = ring.parse(job["c"]) if "c" in job else None
    verdict = is_strongly_f_regular(pair, c, caps)
    return ({"pair": _echo_pair(pair)}, {"verdict": verdict}, None, None)


def _run_compatible(ring, job, caps):
    pair = _parse_pair(ring, job["pair"])
    center = _parse_ideal(ring, job["I_Z"])
    verdict = is_compatible(center, pair, caps)
    return ({"pair": _echo_pair(pair), "I_Z": [str(g) for g in center.generators]},
            {"verdict": verdict}, None, None)


def _run_mult(ring, job, caps):
    pair = _parse_pair(ring, job["pair"])
    point = _point_tuple(ring, job["point"])
    l = int(job["l"]) if "l" in job else None
    report = multiplicity_containment(pair, point, l, None, caps)
    result = {"multiplicity": str(report.pair_multiplicity),
              "codim": report.codim, "threshold": report.threshold,
              "verdict": report.holds}
    return ({"pair": _echo_pair(pair), "point": list(job["point"])},
            result, None, report.holds)


def _run_s0(ring, job, caps):
    scheme = _parse_scheme(ring, job["scheme"])
    pair = _pair_or_trivial(ring, job)
    which = job.get("which", "sigma")
    c = ring.parse(job["c"]) if "c" in job else None
    m = int(job["m"])
    result = stable_sections(scheme, pair, m, which, c, caps)
    full = graded_piece(scheme, m)
    out = _space_json(result.space)
    out.update({"level": result.level, "full_dim": full.dim,
                "complete": result.space.dim == full.dim})
    return ({"pair": _echo_pair(pair), "m": m, "which": which}, out,
            result.level, None)


def _run_bpf(ring, job, caps):
    scheme, space, info = _subsystem_space(ring, job, caps)
    verdict = is_base_point_free(space, caps)
    out = {"verdict": verdict, "dim": space.dim}
    return (info, out, info.get("level"), None)


def _run_separates(ring, job, caps):
    scheme, space, info = _subsystem_space(ring, job, caps)
    k = int(job.get("ext_degree", 1))
    report = separates(scheme, space, k, caps)
    out = {"verdict": report.ok, "points": report.points_on_scheme,
           "pairs": report.pairs_checked, "tangents": report.tangents_checked,
           "failures": [{"kind": f.kind, "points": list(f.points),
                         "detail": f.detail} for f in report.failures],
           "coverage": report.coverage()}
    inputs = dict(info)
    inputs["ext_degree"] = k
    return (inputs, out, info.get("level"), None)


def _run_gg(ring, job, caps):
    m = int(job["m"])
    if "ideal" in job:
        ideal = _parse_ideal(ring, job["ideal"])
        verdict = is_globally_generated(ideal, m, caps)
        return ({"ideal": [str(g) for g in ideal.generators], "m": m},
                {"verdict": verdict}, None, None)
    scheme = _parse_scheme(ring, job.get("scheme", {"n": ring.nvars - 1}))
    pair = _pair_or_trivial(ring, job)
    which = job.get("which", "tau")
    c = ring.parse(job["c"]) if "c" in job else None
    verdict = stable_sections_generate(scheme, pair, m, which, c, caps)
    return ({"pair": _echo_pair(pair), "m": m, "which": which},
            {"verdict": verdict}, None, None)


def _run_thm46(ring, job, caps):
    scheme = _parse_scheme(ring, job.get("scheme", {"n": ring.nvars - 1}))
    points = [tuple(int(v) for v in P) for P in job["points"]]
    form = ring.parse(job["A"])
    if "d" in job and int(job["d"]) != form.degree():
        raise ScenarioError(
            f"declared degree {job['d']} but A has degree {form.degree()}")
    report = degree_bound_pipeline(ring, points, form, int(job["l"]),
                                   int(job["e"]), caps)
    result = {"delta": report.delta, "witness": str(report.witness),
              "witness_degree": report.witness_degree,
              "tau": _ideal_json(report.test_ideal),
              "multiplicities": report.multiplicities,
              "verdict": report.ok}
    inputs = {"points": [list(P) for P in points], "A": str(form),
              "l": int(job["l"]), "e": int(job["e"]), "d": form.degree()}
    return (inputs, result, None, report.ok)


def _run_restrict(ring, job, caps):
    scheme = _parse_scheme(ring, job.get("scheme", {"n": ring.nvars - 1}))
    pair = _parse_pair(ring, job["pair"])
    center = _parse_ideal(ring, job["I_Z"])
    m = int(job["m"])
    verdict = restriction_is_surjective(scheme, pair, center, m, caps)
    return ({"pair": _echo_pair(pair), "I_Z": [str(g) for g in center.generators],
             "m": m}, {"verdict": verdict}, None, verdict)


JOB_REGISTRY = {
    "sigma": _run_sigma,
    "tau": _run_tau,
    "fpure": _run_fpure,
    "sfr": _run_sfr,
    "compatible": _run_compatible,
    "mult": _run_mult,
    "s0": _run_s0,
    "bpf": _run_bpf,
    "separates": _run_separates,
    "gg": _run_gg,
    "thm46": _run_thm46,
    "restrict": _run_restrict,
}


def _expect_matches(expect, actual) -> bool:
    if isinstance(expect, dict):
        if not isinstance(actual, dict):
            return False
        return all(k in actual and _expect_matches(v, actual[k])
                   for k, v in expect.items())
    if isinstance(expect, list):
        return isinstance(actual, list) and len(expect) == len(actual) and all(
            _expect_matches(a, b) for a, b in zip(expect, actual))
    return expect == actual


def _run_job(ring: PolyRing, index: int, job: dict, caps: Caps) -> tuple:
    """Returns (report_entry, elapsed_seconds)."""
    start = time.monotonic()
    entry: Dict[str, Any] = {"index": index, "op": job["op"]}
    try:
        inputs, result, iterations, theorem_pass = JOB_REGISTRY[job["op"]](
            ring, job, caps)
        entry["inputs"] = inputs
        entry["status"] = "ok"
        entry["result"] = result
        entry["iterations"] = iterations
        entry["error"] = None
        verdicts = []
        if theorem_pass is not None:
            verdicts.append(bool(theorem_pass))
        if "expect" in job:
            verdicts.append(_expect_matches(job["expect"], result))
        entry["pass"] = all(verdicts) if verdicts else None
    except CharpError as exc:
        entry["inputs"] = {k: v for k, v in job.items() if k != "op"}
        entry["status"] = "error"
        entry["result"] = None
        entry["iterations"] = None
        entry["pass"] = False
        entry["error"] = {"type": type(exc).__name__, "message": str(exc)}
    return entry, time.monotonic() - start


def execute(scenario: Scenario, caps: Caps = DEFAULT_CAPS) -> tuple:
    """Run all jobs; returns (machine report dict, timings list).

    The machine report is fully deterministic; per-job wall times are
    returned separately for the human-readable rendering.
    """
    indexed = list(enumerate(scenario.jobs))
    if scenario.parallel and len(indexed) > 1:
        with ThreadPoolExecutor() as pool:
            outcomes = list(pool.map(
                lambda item: _run_job(scenario.ring, item[0], item[1], caps),
                indexed))
    else:
        outcomes = [_run_job(scenario.ring, i, job, caps)
                    for i, job in indexed]
    entries = [entry for entry, _ in outcomes]
    timings = [elapsed for _, elapsed in outcomes]
    errors = sum(1 for e in entries if e["status"] == "error")
    failures = sum(1 for e in entries if e["pass"] is False)
    report = {
        "format": REPORT_FORMAT,
        "scenario": scenario.header,
        "jobs": entries,
        "summary": {"jobs": len(entries), "errors": errors,
                    "failures": failures,
                    "ok": errors == 0 and failures == 0},
    }
    return report, timings


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
