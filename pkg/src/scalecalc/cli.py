"""Batch experiment driver: every module surface as a subcommand.

Runs are manifest-driven (a flat JSON object with an "op" key) or flag
driven; flags mirror manifest keys. Outputs are written atomically and a
one-line JSON summary goes to stdout. Exit codes: 0 success, 2 for
usage/validation problems, 3 for numeric/domain failures raised by the
modules.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from jsonschema import Draft202012Validator

from . import algebra, expansion, fractional, quantize, scale_laws, scale_ops
from .errors import ScaleCalcError
from .paths import (
    AffineSystem,
    ComplexPath,
    SampledPath,
    _atomic_write,
    gen_affine_ifs,
    gen_principal_schrodinger,
    gen_takagi,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


def _jobs_default() -> int:
    try:
        return max(1, int(os.environ.get("SCALECALC_JOBS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items, jobs: int):
    """Order-preserving map over a bounded worker pool."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Potentials and generators named in manifests
# ---------------------------------------------------------------------------


def make_potential(name: str, params: dict):
    if name == "zero":
        return (lambda x: np.zeros_like(np.asarray(x, dtype=float)),
                lambda x: np.zeros_like(np.asarray(x, dtype=float)))
    if name == "linear":
        g = float(params.get("g", 1.0))
        return (lambda x: g * np.asarray(x, dtype=float),
                lambda x: g * np.ones_like(np.asarray(x, dtype=float)))
    if name == "harmonic":
        k = float(params.get("k", 1.0))
        return (lambda x: 0.5 * k * np.asarray(x, dtype=float) ** 2,
                lambda x: k * np.asarray(x, dtype=float))
    raise ScaleCalcError(f"unknown potential {name!r}")


def generate_path(man: dict) -> SampledPath:
    gen = man["generator"]
    dt, length = float(man["dt"]), int(man["length"])
    t0 = float(man.get("t0", 0.0))
    if gen == "takagi":
        return gen_takagi(float(man["alpha"]), dt, length,
                          n_terms=man.get("n_terms"), t0=t0)
    if gen == "line":
        t = t0 + dt * np.arange(length)
        return SampledPath(t0, dt, float(man.get("slope", 1.0)) * t + float(man.get("intercept", 0.0)))
    if gen == "affine":
        system = AffineSystem(tuple(tuple(p) for p in man["points"]),
                              tuple(man["d"]), int(man.get("iterations", 24)))
        return gen_affine_ifs(system, dt, length)
    if gen == "principal":
        return gen_principal_schrodinger(
            float(man.get("hbar_over_m", 1.0)), float(man.get("c", 0.0)),
            int(man.get("sign", 1)), float(man["eps"]),
            float(man.get("amplitude", 0.0)), dt, length, t0=t0)
    raise ScaleCalcError(f"unknown generator {gen!r}")


def _eps_sweep(man: dict, f: SampledPath) -> list[float]:
    if "eps" in man and isinstance(man["eps"], list):
        return [float(e) for e in man["eps"]]
    if "eps_min" in man and "eps_max" in man:
        grid, e = [], float(man["eps_max"])
        while e >= float(man["eps_min"]) * (1 - 1e-12):
            grid.append(e)
            e /= 2.0
        return grid
    return scale_laws.default_eps_grid(f)


# ---------------------------------------------------------------------------
# Manifest schemas
# ---------------------------------------------------------------------------

_NUM = {"type": "number"}
_STR = {"type": "string"}
_INT = {"type": "integer"}
_NUM_LIST = {"type": "array", "items": _NUM, "minItems": 1}

SCHEMAS = {
    "gen": {
        "type": "object",
        "required": ["generator", "dt", "length", "out"],
        "properties": {
            "generator": {"enum": ["takagi", "line", "affine", "principal"]},
            "dt": {"type": "number", "exclusiveMinimum": 0},
            "length": {"type": "integer", "minimum": 2},
            "alpha": _NUM, "n_terms": _INT, "t0": _NUM, "seed": _INT,
            "slope": _NUM, "intercept": _NUM,
            "points": {"type": "array", "minItems": 3},
            "d": _NUM_LIST, "iterations": _INT,
            "hbar_over_m": _NUM, "c": _NUM, "sign": _INT,
            "eps": _NUM, "amplitude": _NUM, "out": _STR,
        },
    },
    "deriv": {
        "type": "object",
        "required": ["input", "eps", "out"],
        "properties": {"input": _STR, "eps": {"type": "number", "exclusiveMinimum": 0},
                       "side": {"enum": ["+", "-", "scale"]}, "out": _STR},
    },
    "minres": {
        "type": "object",
        "required": ["input", "h", "out"],
        "properties": {"input": _STR, "h": {"type": "number", "exclusiveMinimum": 0},
                       "eps_max": _NUM, "out": _STR},
    },
    "scalelaw": {
        "type": "object",
        "required": ["out"],
        "properties": {"input": _STR, "eps": _NUM_LIST, "eps_min": _NUM, "eps_max": _NUM,
                       "out": _STR, "loglog_csv": _STR, "jobs": _INT},
    },
    "dim": {
        "type": "object",
        "required": ["input", "out"],
        "properties": {"input": _STR, "box_sizes": _NUM_LIST, "out": _STR, "jobs": _INT},
    },
    "ito-check": {
        "type": "object",
        "required": ["input", "eps", "out"],
        "properties": {"input": _STR, "degree": {"type": "integer", "minimum": 1},
                       "order": {"type": "integer", "minimum": 1},
                       "eps": {"type": "number", "exclusiveMinimum": 0}, "out": _STR},
    },
    "algebra-check": {
        "type": "object",
        "required": [],
        "properties": {"max_word_len": {"type": "integer", "minimum": 1},
                       "trials": {"type": "integer", "minimum": 1},
                       "eps": _NUM, "seed": _INT, "out": _STR},
    },
    "fracscan": {
        "type": "object",
        "required": ["input", "alpha", "out"],
        "properties": {"input": _STR, "alpha": _NUM, "points": _NUM_LIST,
                       "n_points": {"type": "integer", "minimum": 1},
                       "zero_tol": _NUM, "out": _STR},
    },
    "quantize": {
        "type": "object",
        "required": ["input", "eps", "h", "out"],
        "properties": {"input": _STR, "eps": _NUM, "h": _NUM, "out": _STR},
    },
    "gse-residual": {
        "type": "object",
        "required": ["field", "out"],
        "properties": {
            "field": _STR, "m": _NUM, "hbar": _NUM, "gamma": _NUM,
            "potential": {"type": "object", "required": ["name"],
                          "properties": {"name": _STR, "params": {"type": "object"}}},
            "a_eps_mode": {"enum": ["constant", "file", "measured"]},
            "a_eps_constant_re": _NUM, "a_eps_constant_im": _NUM,
            "a_eps_file": _STR, "x_path": _STR, "eps": _NUM,
            "alpha_gauge_const": _NUM, "divide_by_psi": {"type": "boolean"},
            "out": _STR,
        },
    },
    "schrod-check": {
        "type": "object",
        "required": ["input", "eps"],
        "properties": {"input": _STR, "eps": _NUM, "hbar": _NUM, "m": _NUM,
                       "tol": _NUM, "out": _STR},
    },
    "heisenberg": {
        "type": "object",
        "required": ["input"],
        "properties": {"input": _STR, "dt_grid": _NUM_LIST, "out": _STR},
    },
}


class ManifestError(Exception):
    pass


def validate_manifest(op: str, man: dict) -> None:
    if op not in SCHEMAS:
        raise ManifestError(f"unknown op {op!r}")
    validator = Draft202012Validator(SCHEMAS[op])
    errors = sorted(validator.iter_errors(man), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "(root)"
        raise ManifestError(f"manifest field {where}: {e.message}")


# ---------------------------------------------------------------------------
# Handlers (one per subcommand)
# ---------------------------------------------------------------------------


def _summary(**kv) -> int:
    print(json.dumps(kv))
    return EXIT_OK


def run_gen(man: dict) -> int:
    path = generate_path(man)
    path.write_csv(man["out"])
    return _summary(op="gen", out=man["out"], samples=len(path))


def run_deriv(man: dict) -> int:
    f = SampledPath.read_csv(man["input"])
    side = man.get("side", "scale")
    if side == "scale":
        out = scale_ops.scale_derivative(f, float(man["eps"]))
    else:
        out = scale_ops.quantum_diff(f, float(man["eps"]), side)
    out.write_csv(man["out"])
    return _summary(op="deriv", out=man["out"], side=side, samples=len(out))


def run_minres(man: dict) -> int:
    f = SampledPath.read_csv(man["input"])
    res = scale_ops.minimal_resolution(f, float(man["h"]), man.get("eps_max"))
    _atomic_write(man["out"], res.to_json() + "\n")
    g = res.global_value
    return _summary(op="minres", out=man["out"],
                    h=man["h"], global_value="inf" if math.isinf(g) else g)


def run_scalelaw(man: dict) -> int:
    if "input" in man:
        f = SampledPath.read_csv(man["input"])
    else:
        f = generate_path(man)
    eps = sorted(set(_eps_sweep(man, f)), reverse=True)
    jobs = int(man.get("jobs", _jobs_default()))
    lengths = parallel_map(lambda e: scale_laws.graph_length(f, e), eps, jobs)
    fit = scale_laws.fit_holder_exponent(f, eps, lengths=np.array(lengths))
    _atomic_write(man["out"], fit.to_json() + "\n")
    if man.get("loglog_csv"):
        _atomic_write(man["loglog_csv"], fit.to_loglog_csv())
    return _summary(op="scalelaw", out=man["out"], alpha_hat=fit.alpha_hat,
                    residual=fit.residual)


def run_dim(man: dict) -> int:
    f = SampledPath.read_csv(man["input"])
    dim = scale_laws.box_counting_dimension(f, man.get("box_sizes"))
    _atomic_write(man["out"], json.dumps({"dimension": dim}) + "\n")
    return _summary(op="dim", out=man["out"], dimension=dim)


def run_ito_check(man: dict) -> int:
    X = SampledPath.read_csv(man["input"])
    degree = int(man.get("degree", 2))
    order = int(man.get("order", min(degree, 2)))
    field = expansion.monomial_field(degree)
    eps = float(man["eps"])
    text = expansion.expansion_comparison_csv(field, X, eps, order)
    _atomic_write(man["out"], text)
    direct = scale_ops.scale_derivative(expansion.evaluate_along(field, X), eps)
    expanded = expansion.ito_expand(field, X, eps, order)
    err = float(np.max(np.abs(direct.values - expanded.values)))
    return _summary(op="ito-check", out=man["out"], degree=degree, order=order,
                    eps=eps, max_error=err)


def run_algebra_check(man: dict) -> int:
    max_len = int(man.get("max_word_len", 3))
    trials = int(man.get("trials", 100))
    eps = float(man.get("eps", 2.0 ** -4))
    seed = int(man.get("seed", 0))
    report = algebra_report(max_len, trials, eps, seed)
    if man.get("out"):
        _atomic_write(man["out"], json.dumps(report) + "\n")
    print(json.dumps(report))
    return EXIT_OK


def algebra_report(max_len: int, trials: int, eps: float, seed: int) -> dict:
    words = algebra.all_words(max_len)
    hom = all(
        algebra.coproduct_word(w1 * w2) == algebra.coproduct_word(w1) * algebra.coproduct_word(w2)
        for w1 in words for w2 in words if len(w1) + len(w2) <= max_len)
    counit_ok = True
    coassoc_ok = True
    cocomm_ok = True
    for w in words:
        d = algebra.coproduct_word(w)
        ws = algebra.WordSeries.of_word(w)
        counit_ok &= algebra.counit_contract(d, "left") == ws
        counit_ok &= algebra.counit_contract(d, "right") == ws
        coassoc_ok &= algebra.coproduct_on_leg(d, "left") == algebra.coproduct_on_leg(d, "right")
        cocomm_ok &= algebra.swap(d) == d
    rng = np.random.default_rng(seed)
    n = 257
    dt = 1.0 / (n - 1)
    t = dt * np.arange(n)
    max_err = 0.0
    for _ in range(trials):
        length = int(rng.integers(0, max_len + 1))
        w = algebra.Word(tuple(rng.choice(["+", "-"], size=length)))
        series = algebra.WordSeries({w: algebra.EpsPoly.const(rng.uniform(-2, 2))})
        f = SampledPath(0.0, dt, np.polyval(rng.uniform(-1, 1, 4), t))
        g = SampledPath(0.0, dt, np.polyval(rng.uniform(-1, 1, 4), t))
        # wide stencils keep the deep-word rounding amplification (~ eps^-3)
        # well under the 1e-10 identity budget
        k = int(rng.integers(8, 33))
        max_err = max(max_err, algebra.check_commuting_diagram(series, f, g, k * dt))
    return {"max_word_len": max_len, "trials": trials, "eps": eps,
            "homomorphism": bool(hom), "counit_axioms": bool(counit_ok),
            "coassociative": bool(coassoc_ok), "cocommutative": bool(cocomm_ok),
            "max_error": max_err}


def run_fracscan(man: dict) -> int:
    f = SampledPath.read_csv(man["input"])
    if "points" in man:
        pts = [float(p) for p in man["points"]]
    else:
        n_points = int(man.get("n_points", 9))
        inner = f.span / (n_points + 1)
        pts = [f.t0 + inner * (i + 1) for i in range(n_points)]
        pts = [f.t0 + f.dt * round((p - f.t0) / f.dt) for p in pts]
    scan = fractional.spectrum_scan(f, float(man["alpha"]), pts,
                                    zero_tol=float(man.get("zero_tol", 1e-3)))
    _atomic_write(man["out"], scan.to_csv_text())
    return _summary(op="fracscan", out=man["out"], **scan.summary)


def run_quantize(man: dict) -> int:
    X = SampledPath.read_csv(man["input"])
    pipe = quantize.QuantizePipeline(float(man["eps"]), float(man["h"]))
    V = pipe.velocity(X)
    V.write_csv(man["out"])
    return _summary(op="quantize", out=man["out"],
                    scale_routed=pipe.uses_scale_operator(X), samples=len(V))


def run_gse_residual(man: dict) -> int:
    m = float(man.get("m", 1.0))
    hbar = float(man.get("hbar", 1.0))
    gamma = man.get("gamma")
    field = quantize.WaveField.read_csv(man["field"], m=m, hbar=hbar,
                                        gamma_norm=None if gamma is None else float(gamma))
    pot = man.get("potential", {"name": "zero"})
    U, _ = make_potential(pot["name"], pot.get("params", {}))
    mode = man.get("a_eps_mode", "constant")
    if mode == "constant":
        re = man.get("a_eps_constant_re")
        im = man.get("a_eps_constant_im")
        a = complex(float(re) if re is not None else 0.0,
                    float(im) if im is not None else -2.0 * field.gamma)
    elif mode == "file":
        a = ComplexPath.read_csv(man["a_eps_file"])
    else:  # measured from a position path
        X = SampledPath.read_csv(man["x_path"])
        a = expansion.a_coeffs(X, float(man["eps"]), 2)
    alpha_const = man.get("alpha_gauge_const")
    alpha_fn = None if alpha_const is None else (
        lambda x, c=float(alpha_const): c * np.ones_like(np.asarray(x, dtype=float)))
    res = quantize.gse_residual(field, a, U, alpha_gauge=alpha_fn,
                                divide_by_psi=bool(man.get("divide_by_psi", False)))
    res.write_csv(man["out"])
    return _summary(op="gse-residual", out=man["out"], mode=mode, sup_norm=res.sup_norm)


def run_schrod_check(man: dict) -> int:
    X = SampledPath.read_csv(man["input"])
    rep = quantize.schrodinger_condition_check(
        X, float(man["eps"]), float(man.get("hbar", 1.0)), float(man.get("m", 1.0)),
        float(man.get("tol", 1e-12)))
    result = {"verdict": rep.ok, "max_sided_gap": rep.max_sided_gap,
              "max_speed_sq_gap": rep.max_speed_sq_gap, "tol": rep.tol}
    if man.get("out"):
        _atomic_write(man["out"], json.dumps(result) + "\n")
    print(json.dumps({"op": "schrod-check", **result}))
    return EXIT_OK


def run_heisenberg(man: dict) -> int:
    X = SampledPath.read_csv(man["input"])
    fit = quantize.heisenberg_scaling_check(X, man.get("dt_grid"))
    result = {"exponent": fit.exponent, "delta_ts": fit.delta_ts.tolist(),
              "mean_chords": fit.mean_chords.tolist()}
    if man.get("out"):
        _atomic_write(man["out"], json.dumps(result) + "\n")
    print(json.dumps({"op": "heisenberg", "exponent": fit.exponent}))
    return EXIT_OK


HANDLERS = {
    "gen": run_gen,
    "deriv": run_deriv,
    "minres": run_minres,
    "scalelaw": run_scalelaw,
    "dim": run_dim,
    "ito-check": run_ito_check,
    "algebra-check": run_algebra_check,
    "fracscan": run_fracscan,
    "quantize": run_quantize,
    "gse-residual": run_gse_residual,
    "schrod-check": run_schrod_check,
    "heisenberg": run_heisenberg,
}


def run(manifest: dict) -> int:
    """Validate and execute one manifest; returns the exit status."""
    op = manifest.get("op")
    man = {k: v for k, v in manifest.items() if k != "op"}
    try:
        validate_manifest(op, man)
    except ManifestError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return HANDLERS[op](man)
    except ScaleCalcError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC


# ---------------------------------------------------------------------------
# Argument parsing (flags mirror manifest keys)
# ---------------------------------------------------------------------------


def _add_common(sub, *names, **kwargs):
    for name in names:
        sub.add_argument(name, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scalecalc",
                                description="Scale-calculus experiment driver")
    p.add_argument("--jobs", type=int, default=_jobs_default(),
                   help="worker pool size for sweeps (env SCALECALC_JOBS)")
    sp = p.add_subparsers(dest="op")

    run_p = sp.add_parser("run", help="execute a JSON manifest")
    run_p.add_argument("--manifest", required=True)

    g = sp.add_parser("gen", help="generate a sampled path")
    g.add_argument("--generator", required=True)
    g.add_argument("--dt", type=float, required=True)
    g.add_argument("--length", type=int, required=True)
    g.add_argument("--alpha", type=float)
    g.add_argument("--n-terms", type=int, dest="n_terms")
    g.add_argument("--t0", type=float)
    g.add_argument("--slope", type=float)
    g.add_argument("--intercept", type=float)
    g.add_argument("--hbar-over-m", type=float, dest="hbar_over_m")
    g.add_argument("--c", type=float)
    g.add_argument("--sign", type=int)
    g.add_argument("--eps", type=float)
    g.add_argument("--amplitude", type=float)
    g.add_argument("--seed", type=int)
    g.add_argument("--out", required=True)

    d = sp.add_parser("deriv", help="scale derivative or one-sided quotient")
    d.add_argument("--input", required=True)
    d.add_argument("--eps", type=float, required=True)
    d.add_argument("--side", choices=["+", "-", "scale"])
    d.add_argument("--out", required=True)

    mr = sp.add_parser("minres", help="minimal resolution")
    mr.add_argument("--input", required=True)
    mr.add_argument("--h", type=float, required=True)
    mr.add_argument("--eps-max", type=float, dest="eps_max")
    mr.add_argument("--out", required=True)

    sl = sp.add_parser("scalelaw", help="graph-length sweep and exponent fit")
    sl.add_argument("--input")
    sl.add_argument("--generator")
    sl.add_argument("--dt", type=float)
    sl.add_argument("--length", type=int)
    sl.add_argument("--alpha", type=float)
    sl.add_argument("--eps", type=float, nargs="+")
    sl.add_argument("--eps-min", type=float, dest="eps_min")
    sl.add_argument("--eps-max", type=float, dest="eps_max")
    sl.add_argument("--loglog-csv", dest="loglog_csv")
    sl.add_argument("--out", required=True)

    dm = sp.add_parser("dim", help="box-counting dimension")
    dm.add_argument("--input", required=True)
    dm.add_argument("--box-sizes", type=float, nargs="+", dest="box_sizes")
    dm.add_argument("--out", required=True)

    ic = sp.add_parser("ito-check", help="expansion vs direct scale derivative")
    ic.add_argument("--input", required=True)
    ic.add_argument("--degree", type=int)
    ic.add_argument("--order", type=int)
    ic.add_argument("--eps", type=float, required=True)
    ic.add_argument("--out", required=True)

    ac = sp.add_parser("algebra-check", help="bialgebra axioms and the evaluation diagram")
    ac.add_argument("--max-word-len", type=int, dest="max_word_len")
    ac.add_argument("--trials", type=int)
    ac.add_argument("--eps", type=float)
    ac.add_argument("--seed", type=int)
    ac.add_argument("--out")

    fs = sp.add_parser("fracscan", help="local fractional derivative scan")
    fs.add_argument("--input", required=True)
    fs.add_argument("--alpha", type=float, required=True)
    fs.add_argument("--points", type=float, nargs="+")
    fs.add_argument("--n-points", type=int, dest="n_points")
    fs.add_argument("--zero-tol", type=float, dest="zero_tol")
    fs.add_argument("--out", required=True)

    qz = sp.add_parser("quantize", help="pipeline-routed velocity")
    qz.add_argument("--input", required=True)
    qz.add_argument("--eps", type=float, required=True)
    qz.add_argument("--h", type=float, required=True)
    qz.add_argument("--out", required=True)

    gr = sp.add_parser("gse-residual", help="generalized Schrodinger residual")
    gr.add_argument("--field", required=True)
    gr.add_argument("--m", type=float)
    gr.add_argument("--hbar", type=float)
    gr.add_argument("--gamma", type=float)
    gr.add_argument("--potential-name", dest="potential_name")
    gr.add_argument("--a-eps-mode", dest="a_eps_mode", choices=["constant", "file", "measured"])
    gr.add_argument("--a-eps-constant-re", type=float, dest="a_eps_constant_re")
    gr.add_argument("--a-eps-constant-im", type=float, dest="a_eps_constant_im")
    gr.add_argument("--a-eps-file", dest="a_eps_file")
    gr.add_argument("--x-path", dest="x_path")
    gr.add_argument("--eps", type=float)
    gr.add_argument("--alpha-gauge-const", type=float, dest="alpha_gauge_const")
    gr.add_argument("--divide-by-psi", action="store_true", dest="divide_by_psi")
    gr.add_argument("--out", required=True)

    sc = sp.add_parser("schrod-check", help="difference-equation condition check")
    sc.add_argument("--input", required=True)
    sc.add_argument("--eps", type=float, required=True)
    sc.add_argument("--hbar", type=float)
    sc.add_argument("--m", type=float)
    sc.add_argument("--tol", type=float)
    sc.add_argument("--out")

    hb = sp.add_parser("heisenberg", help="chord-scaling exponent")
    hb.add_argument("--input", required=True)
    hb.add_argument("--dt-grid", type=float, nargs="+", dest="dt_grid")
    hb.add_argument("--out")
    return p


def _namespace_to_manifest(args: argparse.Namespace) -> dict:
    skip = {"op", "jobs", "manifest"}
    man = {k: v for k, v in vars(args).items() if v is not None and k not in skip}
    if args.op == "gse-residual" and "potential_name" in man:
        man["potential"] = {"name": man.pop("potential_name")}
    man["jobs"] = args.jobs
    return man


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.op is None:
        parser.print_help()
        return EXIT_USAGE
    if args.op == "run":
        try:
            with open(args.manifest) as fh:
                manifest = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            print(f"error: cannot load manifest: {e}", file=sys.stderr)
            return EXIT_USAGE
        if not isinstance(manifest, dict):
            print("error: manifest must be a JSON object", file=sys.stderr)
            return EXIT_USAGE
        return run(manifest)
    man = _namespace_to_manifest(args)
    return run({"op": args.op, **man})


if __name__ == "__main__":
    sys.exit(main())
