"""Command-line interface: ``jsrkit {jsr,norm,classify-law,render,bench}``.

Exit codes: 0 when the certificate was produced, 2 when a budget ran out (or
no certificate was reached), 1 on invalid input. Errors are written to stderr
as one JSON object.
"""

from __future__ import annotations

import argparse
import contextlib
import hashlib
import json
import math
import os
import platform
import sys
import time

import numpy as np

from . import __version__
from .errors import JsrError
from .family import load_family
from .feasibility.membership import DEFAULT_DELTA, DEFAULT_FACETS
from .polytope import DEFAULT_MAX_ITER, DEFAULT_MAX_NODES

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2


class CliError(Exception):
    """Input problem reported as JSON on stderr with exit code 1."""

    def __init__(self, kind, message, **extra):
        super().__init__(message)
        self.kind = kind
        self.extra = extra


def _clean(obj):
    """JSON-safe copy: arrays to lists, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2, sort_keys=False)


def _versions() -> dict:
    import matplotlib
    import scipy

    return {"jsrkit": __version__, "python": platform.python_version(),
            "numpy": np.__version__, "scipy": scipy.__version__,
            "matplotlib": matplotlib.__version__}


def _report(command, config, result, warnings, timings) -> dict:
    core = {"command": command, "config": config, "result": result,
            "warnings": list(warnings), "versions": _versions()}
    digest = hashlib.sha256(_dumps(core).encode()).hexdigest()
    return {**core, "timings": timings, "report_hash": digest}


@contextlib.contextmanager
def _native_stdout_to_stderr():
    """Send writes to file descriptor 1 from native code (LP solver chatter) to stderr."""
    try:
        sys.stdout.flush()
        fd = sys.stdout.fileno()
        saved = os.dup(fd)
    except (AttributeError, OSError, ValueError):
        yield
        return
    try:
        os.dup2(sys.stderr.fileno(), fd)
        yield
    finally:
        os.dup2(saved, fd)
        os.close(saved)


def _load(args):
    return load_family(args.family, transpose_first=True if args.transpose_first else None,
                       nonnegative=True if getattr(args, "monotone", False) else None)


def _irreducible_or_fail(family, monotone):
    from .norm import irreducibility_check
    from .positive import positive_irreducibility

    if monotone:
        pos = positive_irreducibility(family)
        if not pos.irreducible:
            raise CliError("Reducible", "the family is not positively irreducible",
                           witness={"coordinates": list(pos.subspace)})
        return
    irr = irreducibility_check(family)
    if not irr.irreducible:
        raise CliError("Reducible", "the family has a common invariant subspace",
                       witness={"basis": irr.basis.T.tolist()})


def _pipeline_kw(args) -> dict:
    return {"max_len": args.max_len, "delta": args.delta, "facets": args.facets,
            "max_iter": args.max_iter, "max_nodes": args.max_nodes,
            "time_limit": args.time_limit, "top_k": args.top_k}


def _config(args, **extra) -> dict:
    out = {"delta": args.delta, "facets_M": args.facets, "max_len": args.max_len,
           "max_iter": args.max_iter, "max_nodes": args.max_nodes,
           "time_limit": args.time_limit, "top_k": args.top_k,
           "threads": os.environ.get("JSRKIT_THREADS", "1")}
    out.update(extra)
    return out


def _write_figures(body, directory, stem="body"):
    from .plotting import render_body, write_off

    os.makedirs(directory, exist_ok=True)
    files = []
    path = os.path.join(directory, f"{stem}.json")
    with open(path, "w") as fh:
        fh.write(_dumps(body.to_json()) + "\n")
    files.append(path)
    if body.dim in (2, 3) and not (body.dim == 3 and body.kind == "EllipseHull"):
        files.append(render_body(body, os.path.join(directory, f"{stem}.svg"),
                                 polar=body.dim == 2 and body.kind != "MonotonePolytope"))
        if body.dim == 3:
            files.append(write_off(body, os.path.join(directory, f"{stem}.off")))
    return files


def _body_stats(body) -> dict:
    from .polytope import REAL, facet_count, polytope_vertex_count

    stats = {"kind": body.kind, "generators": body.n_generators,
             "iterations": body.iterations, "dim": body.dim}
    if body.kind == REAL and 2 <= body.dim <= 3:
        stats["vertices"] = polytope_vertex_count(body)
        stats["facets"] = facet_count(body)
    return stats


# ---------------------------------------------------------------------------
# commands


def cmd_jsr(args, out):
    from .pipeline import certify_jsr

    family = _load(args)
    if not args.no_irreducibility_check and family.m > 0:
        _irreducible_or_fail(family, args.monotone)
    t = time.perf_counter()
    res = certify_jsr(family, monotone=args.monotone, **_pipeline_kw(args))
    elapsed = time.perf_counter() - t
    result = res.to_json()
    if res.body is not None:
        result["body"] = _body_stats(res.body)
        result["body"]["raw_generators"] = res.raw_body.n_generators
    files = []
    if res.body is not None and args.body_out:
        with open(args.body_out, "w") as fh:
            fh.write(_dumps(res.body.to_json()) + "\n")
        files.append(args.body_out)
    if res.body is not None and args.report:
        files += _write_figures(res.body, args.report)
    if files:
        result["files"] = files
    report = _report(["jsr", args.family], _config(args, monotone=args.monotone), result,
                     res.warnings, {"seconds": elapsed})
    _emit(report, args, out, _jsr_text(res))
    return EXIT_OK if res.halted else EXIT_BUDGET


def _jsr_text(res) -> str:
    lines = [f"status: {res.status}"]
    if res.halted:
        lines.append(f"rho = {res.rho!r}")
    else:
        lines.append(f"bounds: [{res.lower!r}, {res.upper!r}]")
    lines.append("dominant word(s): " + ", ".join(c.label() for c in res.candidates))
    if res.body is not None:
        s = _body_stats(res.body)
        extra = "".join(f", {k} {s[k]}" for k in ("vertices", "facets") if k in s)
        lines.append(f"body: {s['kind']}, {s['generators']} generators{extra}")
    if res.detail:
        lines.append(f"detail: {res.detail}")
    for w in res.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def cmd_norm(args, out):
    from .norm import Built, certify, build_barabanov

    family = _load(args)
    t = time.perf_counter()
    if args.monotone and not family.is_nonnegative():
        raise CliError("NegativeEntry", "--monotone needs a nonnegative family")
    built = build_barabanov(family, monotone=args.monotone,
                            check_irreducible=not args.no_irreducibility_check,
                            **_pipeline_kw(args))
    elapsed = time.perf_counter() - t
    if not isinstance(built, Built):
        if built.reason.startswith("Reducible"):
            w = None if built.witness is None else np.asarray(built.witness).T.tolist()
            raise CliError("Reducible", built.reason, witness=w)
        result = {"status": "failed", "reason": built.reason}
        report = _report(["norm", args.family], _config(args, monotone=args.monotone), result,
                         built.jsr.warnings if built.jsr is not None else [],
                         {"seconds": elapsed})
        _emit(report, args, out, f"no norm: {built.reason}")
        return EXIT_BUDGET
    f = built.norm
    result = {"status": "built", "norm": f.to_json(), "n_functionals": f.n_functionals,
              "words": [c.label() for c in built.jsr.candidates]}
    warnings = list(built.jsr.warnings)
    if not f.flags.get("unique", True):
        warnings.append("the Barabanov norm is not unique for this family")
    if args.certify:
        cert = certify(f, family, n_samples=args.certify, seed=args.seed, delta=args.delta)
        result["certificate"] = cert.to_json()
    files = []
    if args.norm_out:
        with open(args.norm_out, "w") as fh:
            fh.write(_dumps(f.to_json()) + "\n")
        files.append(args.norm_out)
    if args.report:
        from .plotting import render_norm

        files += _write_figures(built.jsr.body, args.report, stem="dual_body")
        if f.dim == 2:
            files.append(render_norm(f, os.path.join(args.report, "unit_ball.svg")))
    if files:
        result["files"] = files
    report = _report(["norm", args.family],
                     _config(args, monotone=args.monotone, seed=args.seed,
                             certify=args.certify), result, warnings, {"seconds": elapsed})
    text = [f"norm: {f.kind} with {f.n_functionals} functionals, rho = {f.rho!r}"]
    if "certificate" in result:
        text.append(f"certificate: max residual {result['certificate']['max_residual']:.3g} "
                    f"on {args.certify} samples (seed {args.seed})")
    text += [f"warning: {w}" for w in warnings]
    _emit(report, args, out, "\n".join(text))
    return EXIT_OK


def _parse_law(args):
    from .search import parse_word
    from .trajectory import SwitchingLaw

    if args.law:
        src = args.law
        text = open(src).read() if os.path.exists(src) else src
        try:
            return SwitchingLaw.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise CliError("InputError", f"cannot parse law JSON: {exc}") from exc
    if args.sample:
        return SwitchingLaw.finite(parse_word(args.sample))
    if args.period:
        return SwitchingLaw.periodic(parse_word(args.prefix or ""), parse_word(args.period))
    raise CliError("InputError", "give a law as JSON, or --period (with --prefix) or --sample")


def cmd_classify_law(args, out):
    from .pipeline import certify_jsr
    from .trajectory import (
        DECAYS,
        FASTEST,
        decay_certificate,
        classify_law,
        max_growth_trajectory,
        simulate,
        trajectory_csv,
    )

    family = _load(args)
    law = _parse_law(args)
    m = family.m
    letters = law.sample if law.period is None else law.prefix + law.period
    if any(s < 1 or s > m for s in letters):
        raise CliError("InputError", f"law letters must lie in 1..{m}")
    t = time.perf_counter()
    res = certify_jsr(family, **_pipeline_kw(args))
    if not res.halted:
        result = {"status": res.status, "detail": res.detail,
                  "reason": "no dominant product was certified, so laws cannot be classified"}
        report = _report(["classify-law", args.family], _config(args), result, res.warnings,
                         {"seconds": time.perf_counter() - t})
        _emit(report, args, out, f"status: {res.status}; laws cannot be classified")
        return EXIT_BUDGET
    mu, L = decay_certificate(res.body)
    verdict = classify_law(law, res.candidates, mu, L)
    result = {"law": law.to_json(), "verdict": verdict.to_json(),
              "certified": [c.label() for c in res.candidates], "mu": mu, "L": L}
    text = [f"law: {json.dumps(law.to_json())}", f"verdict: {verdict.cls}"]
    if verdict.cls == DECAYS:
        text.append(f"decay: G-norm shrinks by mu = {mu!r} every L = {L} steps "
                    f"(rate {verdict.decay_rate!r} per step)")
    warnings = list(res.warnings)
    if args.x0 is not None:
        x0 = _vector(args.x0, family.dim)
        if verdict.cls == FASTEST:
            traj = max_growth_trajectory(law, x0, family)
            result["trajectory"] = traj
            if not res.candidates[0].leading.is_real:
                warnings.append("trajectory test for a complex leading eigenvalue uses the "
                                "complement of the leading plane (an extension of the real case)")
            text.append(f"trajectory from x0: {traj}")
        if args.steps:
            recs = simulate(family, law, x0, args.steps, body=res.body, nu=res.rho)
            if args.csv:
                with open(args.csv, "w") as fh:
                    fh.write(trajectory_csv(recs))
            if args.report:
                os.makedirs(args.report, exist_ok=True)
                from .plotting import render_trajectory

                render_trajectory(recs, os.path.join(args.report, "trajectory.svg"))
            result["final_g_norm"] = recs[-1][2]
    report = _report(["classify-law", args.family], _config(args), result, warnings,
                     {"seconds": time.perf_counter() - t})
    _emit(report, args, out, "\n".join(text + [f"warning: {w}" for w in warnings]))
    return EXIT_OK


def _vector(text, d):
    try:
        v = json.loads(text) if text.strip().startswith("[") else \
            [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise CliError("InputError", f"cannot parse vector {text!r}") from exc
    v = np.asarray(v, dtype=float)
    if v.shape != (d,):
        raise CliError("DimensionMismatch", f"x0 must have {d} entries")
    return v


def cmd_render(args, out):
    from .norm import norm_from_json
    from .plotting import render_body, render_norm, write_off
    from .polytope import body_from_json

    with open(args.input) as fh:
        obj = json.load(fh)
    files = []
    if obj.get("kind") in ("PiecewiseLinear", "PiecewiseQuadratic", "MonotoneLinear"):
        f = norm_from_json(obj)
        files.append(render_norm(f, args.out))
    else:
        body = body_from_json(obj)
        if body.dim == 3:
            off = args.off or os.path.splitext(args.out)[0] + ".off"
            files.append(write_off(body, off))
        files.append(render_body(body, args.out, polar=args.polar))
    report = _report(["render", args.input], {"polar": args.polar}, {"files": files}, [], {})
    _emit(report, args, out, "\n".join(f"wrote {p}" for p in files))
    return EXIT_OK


def cmd_bench(args, out):
    from .bench import format_table, run_bench

    try:
        dims = [int(t) for t in args.dims.split(",") if t]
    except ValueError as exc:
        raise CliError("InputError", f"bad --dims {args.dims!r}") from exc
    progress = None
    if args.verbose:
        def progress(tr):
            print(f"d={tr.dim} trial {tr.index}: {tr.status} {tr.seconds:.2f}s", file=sys.stderr)
    t = time.perf_counter()
    rows = run_bench(dims, args.trials, args.normalization, args.nonnegative, args.sparsity,
                     args.seed, args.time_limit, progress)
    config = {"dims": dims, "trials": args.trials, "normalization": args.normalization,
              "nonnegative": args.nonnegative, "sparsity": args.sparsity, "seed": args.seed,
              "time_limit": args.time_limit, "distribution": "iid standard normal"
              + (" (absolute values)" if args.nonnegative else "")}
    result = {"rows": [r.summary(timings=False) for r in rows],
              "trials": [t.to_json(timings=False) for r in rows for t in r.trials]}
    timings = {"seconds": time.perf_counter() - t,
               "rows": [r.summary()["median_seconds"] for r in rows],
               "trials": [t.seconds for r in rows for t in r.trials]}
    report = _report(["bench"], config, result, [], timings)
    _emit(report, args, out, format_table(rows, args.nonnegative))
    return EXIT_OK


# ---------------------------------------------------------------------------
# plumbing


def _emit(report, args, out, text):
    if args.json == "-":
        out.append(_dumps(report))
        return
    out.append(text)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(_dumps(report) + "\n")


def _add_pipeline(p):
    p.add_argument("--max-len", type=int, default=None,
                   help="longest word in the candidate search (default depends on m and d)")
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--facets", type=int, default=DEFAULT_FACETS,
                   help="M, the polygon size of the ellipse membership test")
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    p.add_argument("--time-limit", type=float, default=None, help="seconds")
    p.add_argument("--top-k", type=int, default=5)


def _add_family(p):
    p.add_argument("family", help="family JSON file or inline JSON")
    p.add_argument("--transpose-first", action="store_true",
                   help="transpose every matrix before use")


def _add_common(p):
    p.add_argument("--json", metavar="PATH",
                   help="write the JSON report to PATH ('-' prints it instead of the summary)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads for the tree screen (also JSRKIT_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jsrkit", description="Joint spectral radius, invariant "
                                 "bodies and Barabanov norms of finite matrix families.")
    ap.add_argument("--version", action="version", version=f"jsrkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jsr", help="certify the joint spectral radius")
    _add_family(p)
    _add_pipeline(p)
    _add_common(p)
    p.add_argument("--monotone", action="store_true", help="nonnegative family, monotone body")
    p.add_argument("--no-irreducibility-check", action="store_true")
    p.add_argument("--body-out", metavar="PATH", help="write the invariant body JSON")
    p.add_argument("--report", metavar="DIR", help="write body JSON and SVG figures to DIR")
    p.set_defaults(func=cmd_jsr)

    p = sub.add_parser("norm", help="build and certify a Barabanov norm")
    _add_family(p)
    _add_pipeline(p)
    _add_common(p)
    p.add_argument("--monotone", action="store_true")
    p.add_argument("--no-irreducibility-check", action="store_true")
    p.add_argument("--certify", type=int, default=0, metavar="N",
                   help="check the Barabanov identity on N seeded unit vectors")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--norm-out", metavar="PATH", help="write the norm JSON")
    p.add_argument("--report", metavar="DIR", help="write the dual body and unit ball SVGs")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("classify-law", help="classify a switching law")
    _add_family(p)
    p.add_argument("law", nargs="?", help="law JSON {prefix, period} or {sample}, inline or file")
    p.add_argument("--prefix", help="prefix word, e.g. 2")
    p.add_argument("--period", help="period word, e.g. 1112")
    p.add_argument("--sample", help="finite sample word")
    p.add_argument("--x0", help="initial vector, e.g. 1,0")
    p.add_argument("--steps", type=int, default=0, help="simulate this many steps from x0")
    p.add_argument("--csv", metavar="PATH", help="trajectory CSV (with --x0 and --steps)")
    p.add_argument("--report", metavar="DIR", help="write a G-norm SVG (with --steps)")
    _add_pipeline(p)
    _add_common(p)
    p.set_defaults(func=cmd_classify_law)

    p = sub.add_parser("render", help="draw a body or norm JSON as SVG (OFF mesh for d=3)")
    p.add_argument("input", help="body or norm JSON file")
    p.add_argument("--out", required=True, help="SVG path")
    p.add_argument("--polar", action="store_true", help="overlay the polar body (d=2)")
    p.add_argument("--off", help="OFF mesh path for d=3 (default: next to the SVG)")
    _add_common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="seeded random-pair benchmark")
    p.add_argument("--dims", default="2,4,6")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--normalization", choices=("norm", "spec"), default="spec")
    p.add_argument("--nonnegative", action="store_true")
    p.add_argument("--sparsity", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=120.0)
    p.add_argument("--verbose", action="store_true", help="progress lines on stderr")
    _add_common(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        if args.threads < 1:
            parser.error("--threads must be positive")
        os.environ["JSRKIT_THREADS"] = str(args.threads)
    out = []
    try:
        with _native_stdout_to_stderr():
            code = args.func(args, out)
    except CliError as exc:
        _error(exc.kind, str(exc), **exc.extra)
        return EXIT_INPUT
    except (JsrError, OSError, json.JSONDecodeError, ValueError) as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_INPUT
    if out:
        print("\n".join(out))
    return code


def _error(kind, message, **extra):
    print(_dumps({"error": kind, "message": message, **extra}), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
