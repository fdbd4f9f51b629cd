"""Command line front end.

Every subcommand that reads graphs takes graph6 on stdin, one per line.
Exit codes: 0 pass/ok, 1 bad input or parameters, 2 an audit found a
conclusion failure, 3 an audit hit a capacity limit.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .closure import bipartite_closure, k_closure
from .errors import ConvergenceError, Graph6Error, HamspecError, ParameterError
from .families import TAGS, FamilyDescriptor, build_member, membership
from .graph import BipartiteGraph, SimpleGraph, graph6_decode, graph6_encode, two_coloring
from .oracles import DEFAULT_CAP, HARD_CAP, Property, PropertyQuery, decide
from .spectral import EIG_TOL, degree_bounds, lambda_max_symmetric, mu, rho, rho2, theta_upper_bound
from .verifier.enumeration import bipartite_isomorphic, isomorphic
from .verifier.report import Mode, TheoremSpec, _clean
from .verifier.runner import audit, default_jobs

try:
    import tomllib
except ModuleNotFoundError:  # python 3.10
    import tomli as tomllib

EXIT_OK, EXIT_INPUT, EXIT_FAIL, EXIT_CAPACITY = 0, 1, 2, 3
MACHINE_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class Config:
    jobs: int = 1
    cap: int = DEFAULT_CAP
    tol: float = EIG_TOL
    output: str = "JSON"

    def __post_init__(self):
        if self.jobs < 1:
            raise ParameterError("jobs must be at least 1")
        if not 3 <= self.cap <= HARD_CAP:
            raise ParameterError(f"cap must lie in 3..{HARD_CAP}")
        if self.tol < MACHINE_EPS:
            raise ParameterError("tolerance must not be below machine epsilon")
        if self.output not in ("JSON", "CSV", "GRAPH6"):
            raise ParameterError("output must be JSON, CSV or GRAPH6")


def _dump(obj, out) -> None:
    out.write(json.dumps(_clean(obj), sort_keys=False) + "\n")


def _flatten(rec: dict, prefix: str = "") -> dict:
    """Nested dicts become dotted keys; scalar lists are joined with ``;``."""
    flat: dict = {}
    for k, v in rec.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            if all(not isinstance(x, (dict, list, tuple)) for x in v):
                flat[key] = ";".join("" if x is None else str(x) for x in v)
            else:
                flat[key] = json.dumps(v)
        else:
            flat[key] = "" if v is None else v
    return flat


class _Emitter:
    """Writes records as JSON lines, or collects them into one CSV table."""

    def __init__(self, out, fmt: str, graphs_ok: bool = False):
        if fmt == "GRAPH6" and not graphs_ok:
            raise ParameterError("GRAPH6 output applies to closure and family gen only")
        self.out, self.fmt, self.rows = out, fmt, []

    def emit(self, rec: dict) -> None:
        if self.fmt == "CSV":
            self.rows.append(_flatten(_clean(rec)))
        else:
            _dump(rec, self.out)

    def close(self) -> None:
        if self.fmt != "CSV" or not self.rows:
            return
        fields: dict = {}
        for r in self.rows:
            fields.update(dict.fromkeys(r))
        w = csv.DictWriter(self.out, fieldnames=list(fields), lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows)


def _read_graphs(stream):
    """Yields ``(line_number, graph)``; blank lines are skipped."""
    for no, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield no, graph6_decode(line)
        except Graph6Error as exc:
            raise Graph6Error(f"line {no}: {exc.message}", exc.offset) from None


def _parse_kv(text: str | None) -> dict:
    """``"n=6,k=2,alpha=0.5"`` into a dict of ints, floats or strings."""
    out: dict = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ParameterError(f"parameter {item!r} is not of the form key=value")
        key, val = (x.strip() for x in item.split("=", 1))
        out[key] = _scalar(val)
    return out


def _scalar(val: str):
    for cast in (int, float):
        try:
            return cast(val)
        except ValueError:
            pass
    if val.lower() in ("true", "false"):
        return val.lower() == "true"
    if ";" in val:
        return [_scalar(v) for v in val.split(";")]
    return val


def _alphas(text: str) -> list[float]:
    try:
        out = [float(a) for a in text.split(",") if a.strip()]
    except ValueError:
        raise ParameterError(f"bad alpha list {text!r}") from None
    if not out or any(not 0 <= a <= 1 for a in out):
        raise ParameterError("alpha values must lie in [0, 1]")
    return out


def _as_bipartite(g: SimpleGraph, parts: str | None) -> BipartiteGraph:
    if parts:
        try:
            nL, nR = (int(x) for x in parts.split(","))
        except ValueError:
            raise ParameterError(f"--parts wants nL,nR, got {parts!r}") from None
        if nL + nR != g.n:
            raise ParameterError(f"--parts {nL},{nR} does not add up to n = {g.n}")
        return BipartiteGraph.from_simple(g, (1 << nL) - 1)
    left = two_coloring(g)
    if left is None:
        raise ParameterError("graph is not bipartite")
    return BipartiteGraph.from_simple(g, left)


# -- subcommands -----------------------------------------------------------------


def cmd_spectra(args, cfg: Config, inp, out) -> int:
    alphas = _alphas(args.alpha)
    status = EXIT_OK
    em = _Emitter(out, cfg.output)
    for no, g in _read_graphs(inp):
        rec: dict = {"line": no, "n": g.n, "m": g.m}
        try:
            if g.n == 0:
                raise ParameterError("empty graph has no spectrum")
            rec["rho"] = rho(g)
            rec["rho2"] = rho2(g, cfg.tol).value if g.n >= 2 else None
            rec["mu"] = mu(g)
            rec["theta"] = [lambda_max_symmetric(g, a, cfg.tol).value for a in alphas]
            rec["alpha"] = alphas
            bounds: dict = {}
            if g.m:
                db = degree_bounds(g, cfg.tol)
                bounds["mu_lower"] = db.mu_lower
                bounds["rho_lower"] = db.rho_lower
                bounds["degree_bound_equality"] = db.mu_equal and db.rho_equal
            left = two_coloring(g)
            if left is not None and g.n >= 2:
                bounds["rho1_sq_plus_rho2_sq"] = rec["rho"] ** 2 + rec["rho2"] ** 2
                bg = BipartiteGraph.from_simple(g, left)
                if bg.is_balanced:
                    bounds["mu_upper"] = g.m / bg.nL + bg.nL
                    bounds["theta_upper"] = [theta_upper_bound(bg, a) for a in alphas]
            rec["bounds"] = bounds
        except (ConvergenceError, ParameterError) as exc:
            rec["error"] = str(exc)
            status = EXIT_INPUT
        em.emit(rec)
    em.close()
    return status


def cmd_closure(args, cfg: Config, inp, out) -> int:
    em = _Emitter(out, cfg.output, graphs_ok=True)
    for no, g in _read_graphs(inp):
        if args.bipartite or args.parts:
            bg = _as_bipartite(g, args.parts)
            h, trace = bipartite_closure(bg, args.k)
            hs = h.as_simple()
            rec = {"line": no, "k": args.k, "parts": [h.nL, h.nR], "complete": h.m == h.nL * h.nR}
        else:
            hs, trace = k_closure(g, args.k)
            rec = {"line": no, "k": args.k, "complete": hs.m == g.n * (g.n - 1) // 2}
        if cfg.output == "GRAPH6":
            out.write(graph6_encode(hs) + "\n")
            continue
        rec.update({"graph6": graph6_encode(hs), "m": hs.m, "trace": trace.as_dict()})
        em.emit(rec)
    em.close()
    return EXIT_OK


NAMED = ("M", "Z", "Z0", "F", "F0", "EX21")


def cmd_family(args, cfg: Config, inp, out) -> int:
    params = _parse_kv(args.params)
    desc = FamilyDescriptor.of(args.tag, **params)
    em = _Emitter(out, cfg.output, graphs_ok=args.action == "gen")
    if args.action == "gen":
        g = build_member(desc, seed=args.seed)
        s = g.as_simple() if isinstance(g, BipartiteGraph) else g
        if cfg.output == "GRAPH6":
            out.write(graph6_encode(s) + "\n")
        else:
            rec = {"family": desc.as_dict(), "graph6": graph6_encode(s), "n": s.n, "m": s.m}
            if isinstance(g, BipartiteGraph):
                rec["parts"] = [g.nL, g.nR]
            em.emit(rec)
            em.close()
        return EXIT_OK
    ref = build_member(desc, seed=args.seed) if desc.tag in NAMED else None
    for no, g in _read_graphs(inp):
        rec = {"line": no, "family": desc.as_dict()}
        if ref is None:
            w = membership(g, desc)
            rec["member"] = w is not None
            if w is not None:
                rec["witness"] = w.as_dict()
        elif isinstance(ref, BipartiteGraph):
            try:
                bg = _as_bipartite(g, args.parts or f"{ref.nL},{ref.nR}")
                rec["member"] = bipartite_isomorphic(bg, ref)
            except ParameterError as exc:
                rec["member"], rec["reason"] = False, str(exc)
        else:
            rec["member"] = g.n == ref.n and g.m == ref.m and isomorphic(g, ref)
        em.emit(rec)
    em.close()
    return EXIT_OK


def cmd_oracle(args, cfg: Config, inp, out) -> int:
    prop = Property(args.property.upper())
    query = PropertyQuery(prop, q=args.q, p=args.p)
    em = _Emitter(out, cfg.output)
    for no, g in _read_graphs(inp):
        target = _as_bipartite(g, args.parts) if prop.value.startswith(("QQ", "PQ")) else g
        answer, cert = decide(target, query, cfg.cap)
        rec = {"line": no, "property": prop.value, "q": args.q, "answer": answer}
        if args.p is not None:
            rec["p"] = args.p
        if cert is not None:
            rec["certificate"] = cert.as_dict()
            rec["certificate_valid"] = cert.validate(g)
        em.emit(rec)
    em.close()
    return EXIT_OK


def _run_spec(spec: TheoremSpec, mode: str, budget, seed: int, jobs: int):
    return audit(spec, Mode(mode.upper()), budget=budget, seed=seed, jobs=jobs)


def cmd_check_theorem(args, cfg: Config, inp, out) -> int:
    spec = TheoremSpec.of(args.id, **_parse_kv(args.params))
    em = _Emitter(out, cfg.output)
    rep = _run_spec(spec, args.mode, args.budget, args.seed, cfg.jobs)
    d = rep.as_dict()
    if args.report_file:
        Path(args.report_file).write_text(json.dumps(d, indent=1) + "\n")
    em.emit(d)
    em.close()
    return rep.exit_code


CAMPAIGN_KEYS = ("id", "mode", "budget", "seed", "name")
SUMMARY_FIELDS = ("name", "id", "mode", "status", "exit_code", "graphs_checked", "hypothesis_hits",
                  "failure_count", "borderline_count", "min_margin", "elapsed", "error")


def load_campaign(path: Path) -> list[dict]:
    """Each ``[[audit]]`` table names ``id`` and ``mode``; optional ``budget``,
    ``seed`` and ``name``; every other key is an audit parameter."""
    try:
        data = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise ParameterError(f"{path}: {exc}") from None
    entries = data.get("audit", [])
    if not isinstance(entries, list):
        raise ParameterError("'audit' must be an array of tables ([[audit]])")
    unknown = sorted(set(data) - {"audit"})
    if unknown:
        raise ParameterError(f"unknown top-level keys: {', '.join(unknown)}")
    for i, e in enumerate(entries):
        if "id" not in e or "mode" not in e:
            raise ParameterError(f"audit entry {i} needs 'id' and 'mode'")
    return entries


def cmd_campaign(args, cfg: Config, inp, out) -> int:
    entries = load_campaign(Path(args.config))
    em = _Emitter(out, cfg.output)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    worst = EXIT_OK
    for i, e in enumerate(entries):
        name = str(e.get("name") or f"{i:03d}_{e['id']}")
        params = {k: v for k, v in e.items() if k not in CAMPAIGN_KEYS}
        row = {"name": name, "id": e["id"], "mode": e["mode"]}
        try:
            spec = TheoremSpec.of(e["id"], **params)
            rep = _run_spec(spec, e["mode"], e.get("budget"), int(e.get("seed", 0)), cfg.jobs)
            d = rep.as_dict()
            (outdir / f"{name}.json").write_text(json.dumps(d, indent=1) + "\n")
            row.update(status=rep.status, exit_code=rep.exit_code, graphs_checked=rep.graphs_checked,
                       hypothesis_hits=rep.hypothesis_hits, failure_count=rep.failure_count,
                       borderline_count=rep.borderline_count, min_margin=rep.min_margin(),
                       elapsed=round(rep.elapsed, 3), error="")
        except HamspecError as exc:
            row.update(status="error", exit_code=EXIT_INPUT, error=str(exc))
        rows.append(row)
        worst = max(worst, row["exit_code"])
        em.emit({k: row.get(k) for k in SUMMARY_FIELDS})
    em.close()
    with open(outdir / "summary.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=SUMMARY_FIELDS)
        w.writeheader()
        for r in rows:
            w.writerow({k: r.get(k, "") for k in SUMMARY_FIELDS})
    return worst


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hamspec", description=__doc__.splitlines()[0])
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $HAMSPEC_JOBS or 1)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="vertex cap for exact oracles")
    p.add_argument("--tol", type=float, default=EIG_TOL, help="eigensolver tolerance")
    p.add_argument("--output", default="JSON", choices=("JSON", "CSV", "GRAPH6"))
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("spectra", help="spectral radii and bounds per graph")
    s.add_argument("--alpha", default="0,0.5,1")
    s.set_defaults(func=cmd_spectra)

    s = sub.add_parser("closure", help="k-closure or bipartite closure")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--bipartite", action="store_true")
    s.add_argument("--parts", help="nL,nR: the first nL vertices form U")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("family", help="generate or recognise family members")
    s.add_argument("action", choices=("gen", "check"))
    s.add_argument("tag", choices=TAGS, type=str.upper)
    s.add_argument("--params", default="")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--parts")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("oracle", help="decide a Hamiltonian-type property")
    s.add_argument("--property", required=True, choices=[x.value for x in Property], type=str.upper)
    s.add_argument("--q", type=int, default=0)
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--parts")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("check-theorem", help="run one audit and print its report")
    s.add_argument("--id", required=True)
    s.add_argument("--params", default="")
    s.add_argument("--mode", required=True, choices=[m.value for m in Mode], type=str.upper)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report-file", default=None, help="also write the report here")
    s.set_defaults(func=cmd_check_theorem)

    s = sub.add_parser("campaign", help="run a TOML list of audits")
    s.add_argument("config")
    s.add_argument("--out", default="campaign_out")
    s.set_defaults(func=cmd_campaign)
    return p


def main(argv=None, stdin=None, stdout=None) -> int:
    inp = stdin or sys.stdin
    out = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        jobs = args.jobs if args.jobs is not None else default_jobs()
        cfg = Config(jobs=jobs, cap=args.cap, tol=args.tol, output=args.output)
        return args.func(args, cfg, inp, out)
    except (HamspecError, ValueError) as exc:
        print(f"hamspec: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
