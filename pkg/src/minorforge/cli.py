"""Command-line pipeline with replayable seeds.

Every artifact embeds the exact configuration (command plus options)
that produced it, so ``replay`` can rebuild any artifact byte for byte.
JSON for structured data, DIMACS for CNF, symbolic text for polynomial
systems; stdout carries one-line human summaries when writing to files.

Exit codes: 0 success / verified, 1 constructive failure with
diagnostics (budget exhausted, sampler timeout, verification rejected),
2 usage or input errors.
"""

import argparse
import json
import math
import sys
from typing import Dict, List, Optional, Tuple

from .embedding import (
    TopologicalEmbedding,
    embed_graph,
    embed_parameters,
    verify_embedding,
)
from .expansion import (
    diameter_upper_bound,
    exact_limit_default,
    expansion_report,
    spectral_expansion_lower,
)
from .formulas import (
    CardCollapse,
    Restriction,
    apply_restriction,
    build_formula,
    card_to_pm_restriction,
    dimacs_lines,
    lift_tseitin_to_pm,
    polynomial_lines,
    restriction_from_embedding,
    to_cnf,
)
from .graphs import (
    Graph,
    GraphError,
    MultiGraph,
    SampleTimeout,
    canonical_json,
    diameter,
    generate_random_regular,
    random_regular_union,
)
from .matching import max_matching, verify_assignment
from .partition import CutBudgetError, Cut, degree_balanced_cut, partition_pipeline, verify_cut
from .rng import Rng
from .spectral import hoffman_bound, pm_spectral_certificate, spectrum


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str) -> Graph:
    return Graph.from_json_obj(_read_json(path))


FAMILIES = ("triangle", "cube", "petersen", "cycle:K", "path:K", "complete:K")


def named_family(spec: str) -> MultiGraph:
    """Small pattern graphs by name; parametric ones as name:K."""
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    if name == "triangle":
        return MultiGraph(3, [(0, 1), (1, 2), (0, 2)])
    if name == "cube":
        return MultiGraph(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
             (0, 4), (1, 5), (2, 6), (3, 7)],
        )
    if name == "petersen":
        return MultiGraph(
            10,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7),
             (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
    if name in ("cycle", "path", "complete"):
        k = int(arg)
        if name == "cycle":
            if k < 3:
                raise GraphError("cycle needs at least 3 vertices")
            return MultiGraph(k, [(i, (i + 1) % k) for i in range(k)])
        if name == "path":
            if k < 2:
                raise GraphError("path needs at least 2 vertices")
            return MultiGraph(k, [(i, i + 1) for i in range(k - 1)])
        if k < 1:
            raise GraphError("complete graph needs at least 1 vertex")
        return MultiGraph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])
    raise GraphError(f"unknown family {spec!r} (known: {', '.join(FAMILIES)})")


def _load_pattern(opts: dict) -> MultiGraph:
    if opts.get("family"):
        return named_family(opts["family"])
    if opts.get("pattern"):
        return MultiGraph.from_json_obj(_read_json(opts["pattern"]))
    raise GraphError("need --pattern FILE or --family NAME")


def _parse_parity(spec: str, m: int):
    if spec == "odd":
        return {eid: 1 for eid in range(m)}
    if spec == "even":
        return {eid: 0 for eid in range(m)}
    obj = _read_json(spec)
    if isinstance(obj, list):
        return {eid: int(p) % 2 for eid, p in enumerate(obj)}
    return {int(k): int(v) % 2 for k, v in obj.items()}


def _parse_vector(spec: Optional[str], n: int, who: str):
    """Per-vertex integers: a single value broadcasts, else a comma list
    or a JSON file with a list."""
    if spec is None:
        return None
    text = spec.strip()
    if "," in text:
        vec = [int(x) for x in text.split(",")]
    elif text.lstrip("-").isdigit():
        return int(text)
    else:
        vec = [int(x) for x in _read_json(spec)]
    if len(vec) != n:
        raise GraphError(f"{who} needs {n} entries, got {len(vec)}")
    return vec


# ---------------------------------------------------------------------------
# artifact plumbing
# ---------------------------------------------------------------------------


def _config(command: str, opts: dict) -> dict:
    options = {
        k: v for k, v in opts.items() if k not in ("out",) and v is not None
    }
    return {"command": command, "options": options}


def _json_artifact(command: str, opts: dict, payload: dict) -> str:
    artifact = dict(payload)
    artifact["config"] = _config(command, opts)
    return canonical_json(artifact)


def _comment_config(command: str, opts: dict) -> str:
    return "config " + canonical_json(_config(command, opts)).strip()


def _emit_output(text: str, out: Optional[str], summary: str) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(summary)


# ---------------------------------------------------------------------------
# subcommand handlers: opts dict in, (text, exit code) out
# ---------------------------------------------------------------------------


def handle_gen(opts: dict) -> Tuple[str, int]:
    rng = Rng(opts["seed"])
    if opts.get("layers"):
        degrees = [int(x) for x in opts["layers"].split(",")]
        g, layers = random_regular_union(opts["n"], degrees, rng)
        payload = g.to_json_obj()
        payload["layers"] = [sorted(layer) for layer in layers]
    else:
        if opts.get("d") is None:
            raise GraphError("need -d DEGREE or --layers D0,2,...")
        g = generate_random_regular(opts["n"], opts["d"], rng)
        payload = g.to_json_obj()
    return _json_artifact("gen", opts, payload), 0


def handle_analyze(opts: dict) -> Tuple[str, int]:
    g = _load_graph(opts["graph"])
    payload: dict = {
        "n": g.n,
        "m": g.m,
        "min_degree": g.min_degree(),
        "max_degree": g.max_degree(),
        "regular": g.is_regular(),
    }
    if g.n:
        spec = spectrum(g, "adjacency")
        payload["adjacency_spectrum_extremes"] = [
            round(spec.values[0], 9),
            round(spec.values[-1], 9),
        ]
        payload["alpha_spectral_lower"] = round(spectral_expansion_lower(g), 9)
        report = expansion_report(g)
        payload["alpha_exact"] = report.alpha_exact
        if report.witness_cut is not None:
            payload["expansion_witness"] = sorted(report.witness_cut)
        if g.is_regular() and g.m:
            payload["hoffman_independence_bound"] = round(hoffman_bound(g), 9)
            payload["pm_spectral_certificate"] = pm_spectral_certificate(g)
        dia = diameter(g)
        payload["diameter"] = dia
        alpha = payload["alpha_exact"] or payload["alpha_spectral_lower"]
        if alpha and alpha > 0:
            payload["diameter_bound_at_alpha"] = diameter_upper_bound(alpha, g.n)
    return _json_artifact("analyze", opts, payload), 0


def handle_cut(opts: dict) -> Tuple[str, int]:
    g = _load_graph(opts["graph"])
    rng = Rng(opts["seed"])
    cut = degree_balanced_cut(
        g, opts["c"], opts["eps"], rng, opts.get("max_resamples")
    )
    payload = {
        "s": sorted(cut.s),
        "t": sorted(cut.t),
        "c": cut.c,
        "eps": cut.eps,
    }
    return _json_artifact("cut", opts, payload), 0


def handle_partition(opts: dict) -> Tuple[str, int]:
    g = _load_graph(opts["graph"])
    rng = Rng(opts["seed"])
    result = partition_pipeline(
        g,
        rng,
        c=opts["c"],
        eps=opts["eps"],
        kappa=opts["kappa"],
        ell=opts["ell"],
        pm_trials=opts["pm_trials"],
        probe_trials=opts["probe_trials"],
    )
    return _json_artifact("partition", opts, result.to_json_obj()), 0


def _embed_once(h, g, params, parities, seed):
    rng = Rng(seed)
    out = embed_graph(h, g, params, parities=parities, rng=rng)
    return seed, out


def handle_embed(opts: dict) -> Tuple[str, int]:
    g = _load_graph(opts["host"])
    h = _load_pattern(opts)
    parities = _parse_parity(opts["parity"], h.m)
    params = embed_parameters(
        opts["alpha"],
        g.n,
        mode=opts["mode"],
        k=opts["k"],
        sigma=opts["sigma"],
        rho=opts["rho"],
        eta=opts["eta"],
        s=opts.get("s"),
        path_slack=opts["path_slack"],
    )
    seeds = [opts["seed"] + i for i in range(opts["seeds"])]
    results = []
    if opts["jobs"] > 1 and len(seeds) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=opts["jobs"]) as pool:
            results = list(
                pool.map(
                    _embed_once,
                    [h] * len(seeds),
                    [g] * len(seeds),
                    [params] * len(seeds),
                    [parities] * len(seeds),
                    seeds,
                )
            )
    else:
        for seed in seeds:
            results.append(_embed_once(h, g, params, parities, seed))
            if results[-1][1].embedding is not None:
                break  # lowest seed wins either way

    for seed, out in results:
        if out.embedding is None:
            continue
        emb = out.embedding  # carries the winning seed in its descriptor
        ok, violations = verify_embedding(h, g, emb, parities)
        payload = {
            "embedding": emb.to_json_obj(),
            "diagnostics": out.diagnostics,
            "verified": ok,
            "violations": violations,
        }
        return _json_artifact("embed", opts, payload), 0 if ok else 1

    _, worst = results[-1]
    payload = {
        "failure": worst.failure,
        "diagnostics": worst.diagnostics,
        "seeds_tried": seeds[: len(results)],
    }
    return _json_artifact("embed", opts, payload), 1


def handle_lift(opts: dict) -> Tuple[str, int]:
    g = _load_graph(opts["graph"])
    lift = lift_tseitin_to_pm(g)
    payload = lift.h.to_json_obj()
    payload["lifted_edge"] = {str(k): v for k, v in sorted(lift.lifted_edge.items())}
    payload["provenance"] = {
        str(k): list(v) for k, v in sorted(lift.provenance.items())
    }
    return _json_artifact("lift", opts, payload), 0


def handle_restrict(opts: dict) -> Tuple[str, int]:
    if opts.get("embedding"):
        if not opts.get("host"):
            raise GraphError("restricting from an embedding needs --host")
        g = _load_graph(opts["host"])
        obj = _read_json(opts["embedding"])
        emb = TopologicalEmbedding.from_json_obj(obj.get("embedding", obj))
        if opts["matching"] == "auto":
            used = set(emb.sigma.values())
            for p in emb.paths.values():
                used |= set(p)
            keep = sorted(set(range(g.n)) - used)
            sub_edges = [
                (u, v) for (u, v) in g.edges if u not in used and v not in used
            ]
            pos = {v: i for i, v in enumerate(keep)}
            sub = Graph(len(keep), [(pos[u], pos[v]) for u, v in sub_edges])
            mm = max_matching(sub)
            if 2 * len(mm) != sub.n:
                payload = {
                    "failure": "no perfect matching outside the embedding",
                    "unmatched": sub.n - 2 * len(mm),
                }
                return _json_artifact("restrict", opts, payload), 1
            matching = [(keep[u], keep[v]) for u, v in mm]
        else:
            matching = [tuple(e) for e in _read_json(opts["matching"])]
        rho = restriction_from_embedding(g, emb, matching)
        payload = {
            "assignments": rho.to_json_obj(),
            "matching": sorted([sorted(e) for e in matching]),
        }
        return _json_artifact("restrict", opts, payload), 0

    if opts.get("card") is None:
        raise GraphError("need --embedding FILE or --card T")
    if not opts.get("graph"):
        raise GraphError("--card needs --graph (a gen --layers artifact)")
    obj = _read_json(opts["graph"])
    g = Graph.from_json_obj(obj)
    layers = obj.get("layers")
    if layers is None:
        raise GraphError("--card needs a layered graph artifact (gen --layers)")
    collapse = card_to_pm_restriction((g, layers), opts["card"])
    payload = {
        "assignments": collapse.rho.to_json_obj(),
        "flipped": collapse.flipped,
        "g0": collapse.g0.to_json_obj(),
        "edge_ids": list(collapse.edge_ids),
    }
    return _json_artifact("restrict", opts, payload), 0


def handle_emit(opts: dict) -> Tuple[str, int]:
    g = _load_graph(opts["graph"])
    params = None
    if opts["kind"] == "card":
        params = _parse_vector(opts.get("b"), g.n, "--b")
        if params is None:
            raise GraphError("card needs --b")
    elif opts["kind"] == "tseitin":
        params = _parse_vector(opts.get("charge"), g.n, "--charge")
        if params is None:
            raise GraphError("tseitin needs --charge")
    formula = build_formula(opts["kind"], g, params)
    if opts.get("restriction"):
        obj = _read_json(opts["restriction"])
        rho = Restriction.from_json_obj(obj.get("assignments", obj))
        formula = apply_restriction(formula, rho)
    comment = _comment_config("emit", opts)
    if opts["format"] == "poly":
        return polynomial_lines(formula, comments=[comment]), 0
    cnf = to_cnf(formula, degree_cap=opts["degree_cap"])
    return dimacs_lines(cnf, comments=[comment]), 0


def handle_verify(opts: dict) -> Tuple[str, int]:
    if opts.get("embedding"):
        if not opts.get("host"):
            raise GraphError("verifying an embedding needs --host")
        g = _load_graph(opts["host"])
        h = _load_pattern(opts)
        obj = _read_json(opts["embedding"])
        emb = TopologicalEmbedding.from_json_obj(obj.get("embedding", obj))
        parities = _parse_parity(opts["parity"], h.m) if opts.get("parity") else None
        ok, violations = verify_embedding(h, g, emb, parities)
        payload = {"verified": ok, "violations": violations}
        return _json_artifact("verify", opts, payload), 0 if ok else 1
    if opts.get("cut"):
        if not opts.get("graph"):
            raise GraphError("verifying a cut needs --graph")
        g = _load_graph(opts["graph"])
        obj = _read_json(opts["cut"])
        cut = Cut(frozenset(obj["s"]), frozenset(obj["t"]), obj["c"], obj["eps"])
        ok = verify_cut(g, cut)
        payload = {"verified": ok}
        return _json_artifact("verify", opts, payload), 0 if ok else 1
    if opts.get("assignment"):
        if not opts.get("graph"):
            raise GraphError("verifying an assignment needs --graph")
        g = _load_graph(opts["graph"])
        obj = _read_json(opts["assignment"])
        x = obj.get("x", obj) if isinstance(obj, dict) else obj
        if isinstance(x, dict):
            x = {int(k): int(v) for k, v in x.items()}
        b = _parse_vector(opts.get("b") or "1", g.n, "--b")
        if isinstance(b, int):
            b = [b] * g.n
        ok = verify_assignment(g, b, x)
        payload = {"verified": ok}
        return _json_artifact("verify", opts, payload), 0 if ok else 1
    raise GraphError("need --embedding, --cut, or --assignment")


HANDLERS = {
    "gen": handle_gen,
    "analyze": handle_analyze,
    "cut": handle_cut,
    "partition": handle_partition,
    "embed": handle_embed,
    "lift": handle_lift,
    "restrict": handle_restrict,
    "emit": handle_emit,
    "verify": handle_verify,
}


def handle_replay(opts: dict) -> Tuple[str, int]:
    """Re-run the configuration embedded in an artifact.

    Output bytes equal the original artifact whenever the referenced
    inputs still exist (all sampling is seed-deterministic).
    """
    text = _read_text(opts["artifact"])
    if text.lstrip().startswith("{"):
        config = json.loads(text)["config"]
    else:
        config = None
        for line in text.splitlines():
            if line.startswith(("c config ", "# config ")):
                config = json.loads(line.split("config ", 1)[1])
                break
        if config is None:
            raise GraphError("artifact carries no embedded config")
    command = config["command"]
    if command not in HANDLERS:
        raise GraphError(f"artifact config names unknown command {command!r}")
    replay_opts = dict(_DEFAULTS.get(command, {}))
    replay_opts.update(config["options"])
    return HANDLERS[command](replay_opts)


# defaults per command, used when replaying configs that omit them
_DEFAULTS: Dict[str, dict] = {}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="minorforge",
        description="expander sampling, cuts, embeddings, and formula reductions",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("-o", "--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("gen", help="sample a random regular graph or layered union")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, default=None)
    p.add_argument("--layers", default=None, help="comma degrees, e.g. 6,2,2")
    p.add_argument("--seed", type=int, default=0)
    add_out(p)

    p = sub.add_parser("analyze", help="spectral and expansion report")
    p.add_argument("--graph", required=True)
    add_out(p)

    p = sub.add_parser("cut", help="sample a degree-balanced cut")
    p.add_argument("--graph", required=True)
    p.add_argument("--c", type=float, default=0.75)
    p.add_argument("--eps", type=float, default=1 / 16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-resamples", type=int, default=None, dest="max_resamples")
    add_out(p)

    p = sub.add_parser("partition", help="cut plus the four diagnostics")
    p.add_argument("--graph", required=True)
    p.add_argument("--c", type=float, default=0.75)
    p.add_argument("--eps", type=float, default=1 / 16)
    p.add_argument("--kappa", type=float, default=1 / 16)
    p.add_argument("--ell", type=int, default=7)
    p.add_argument("--pm-trials", type=int, default=50, dest="pm_trials")
    p.add_argument("--probe-trials", type=int, default=50, dest="probe_trials")
    p.add_argument("--seed", type=int, default=0)
    add_out(p)

    p = sub.add_parser("embed", help="embed a pattern as a topological minor")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", default=None, help="pattern graph JSON")
    p.add_argument("--family", default=None, help=f"named pattern: {', '.join(FAMILIES)}")
    p.add_argument("--parity", default="odd", help="odd, even, or a JSON file")
    p.add_argument("--alpha", type=float, default=1 / 3)
    p.add_argument("--k", type=int, default=6)
    p.add_argument(
        "--mode",
        default="engineering",
        choices=("engineering", "faithful", "paper"),
        help="constant regime; 'paper' is an alias for faithful",
    )
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--sigma", type=float, default=2.0)
    p.add_argument("--rho", type=float, default=3.0)
    p.add_argument("--eta", type=float, default=1.5)
    p.add_argument("--path-slack", type=int, default=2, dest="path_slack")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=1, help="try this many consecutive seeds")
    p.add_argument("--jobs", type=int, default=1)
    add_out(p)

    p = sub.add_parser("lift", help="clique lift carrying parity hardness to matching")
    p.add_argument("--graph", required=True)
    add_out(p)

    p = sub.add_parser("restrict", help="build a collapsing restriction")
    p.add_argument("--embedding", default=None)
    p.add_argument("--host", default=None)
    p.add_argument("--matching", default="auto", help="'auto' or a JSON edge list")
    p.add_argument("--card", type=int, default=None, help="odd t for the layered collapse")
    p.add_argument("--graph", default=None, help="layered graph artifact for --card")
    add_out(p)

    p = sub.add_parser("emit", help="emit a formula as DIMACS CNF or polynomial text")
    p.add_argument("--graph", required=True)
    p.add_argument("--kind", required=True, choices=("pm", "card", "tseitin"))
    p.add_argument("--b", default=None, help="card counts: int, comma list, or JSON file")
    p.add_argument("--charge", default=None, help="tseitin charges: same forms as --b")
    p.add_argument("--restriction", default=None)
    p.add_argument("--format", default="dimacs", choices=("dimacs", "poly"))
    p.add_argument("--degree-cap", type=int, default=16, dest="degree_cap")
    add_out(p)

    p = sub.add_parser("verify", help="independently check an artifact")
    p.add_argument("--embedding", default=None)
    p.add_argument("--host", default=None)
    p.add_argument("--pattern", default=None)
    p.add_argument("--family", default=None)
    p.add_argument("--parity", default=None)
    p.add_argument("--cut", default=None)
    p.add_argument("--assignment", default=None)
    p.add_argument("--b", default=None, help="counts for --assignment (default all 1)")
    p.add_argument("--graph", default=None)
    add_out(p)

    p = sub.add_parser("replay", help="re-run the config embedded in an artifact")
    p.add_argument("artifact")
    add_out(p)

    return top


def _collect_defaults() -> None:
    if _DEFAULTS:
        return
    probe = build_parser()
    # parse each command with only its required flags to harvest defaults
    samples = {
        "gen": ["gen", "-n", "0"],
        "analyze": ["analyze", "--graph", ""],
        "cut": ["cut", "--graph", ""],
        "partition": ["partition", "--graph", ""],
        "embed": ["embed", "--host", ""],
        "lift": ["lift", "--graph", ""],
        "restrict": ["restrict"],
        "emit": ["emit", "--graph", "", "--kind", "pm"],
        "verify": ["verify"],
    }
    for command, argv in samples.items():
        ns = probe.parse_args(argv)
        _DEFAULTS[command] = {
            k: v for k, v in vars(ns).items() if k not in ("command", "out")
        }


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    opts = {k: v for k, v in vars(ns).items() if k != "command"}
    out = opts.pop("out", None)
    if ns.command == "embed" and ns.mode == "paper":
        opts["mode"] = "faithful"
    _collect_defaults()

    try:
        if ns.command == "replay":
            text, code = handle_replay(opts)
        else:
            text, code = HANDLERS[ns.command](opts)
    except (SampleTimeout, CutBudgetError) as e:
        print(f"{ns.command}: {e}", file=sys.stderr)
        return 1
    except GraphError as e:
        print(f"{ns.command}: {e}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as e:
        print(f"{ns.command}: {e}", file=sys.stderr)
        return 2

    status = "ok" if code == 0 else "FAILED"
    _emit_output(text, out, f"{ns.command}: {status} -> {out}")
    return code


if __name__ == "__main__":
    sys.exit(main())
