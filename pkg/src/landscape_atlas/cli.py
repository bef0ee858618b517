"""Command-line front door.

Every subcommand resolves its seeds explicitly (flag > LANDSCAPE_ATLAS_SEED
environment variable > built-in default), records the full seed set in the
output metadata, and writes files atomically, so identical invocations
produce byte-identical files.

Exit codes: 0 success, 2 usage error (no output files written), 1 runtime
error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from multiprocessing import Pool

import numpy as np

from . import __version__
from .ela.features import FEATURE_NAMES, FeatureVector, compute_features, normalize_features
from .ela.sampling import lhs_sample
from .errors import LandscapeError
from .mario.sim import (
    ASTAR, SCARED, air_time, basic_fitness, simulate_trace, time_taken,
)
from .mario.tiles import render_ascii
from .problems.core import (
    decode_instance_level, evaluate, instance_agent, list_problems, resolve,
)
from .properties.corpus import build_labelled_rows
from .properties.models import PROPERTY_NAMES, PropertyModel, lofo_cv, predict, train
from .similarity import kl_trace, tsne_embed
from .walks import walk_bundle

_TOOL = f"landscape-atlas {__version__}"

_DEFAULT_SEEDS = {
    "instance": 1,
    "anchor_seed": 1,
    "sample_seed": 1,
    "feature_seed": 0,
    "train_seed": 0,
    "embed_seed": 0,
}


class UsageError(Exception):
    """Semantic flag error detected before any computation or output."""


# --------------------------------------------------------------------------
# formatting and file plumbing

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _atomic_write(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".landscape-atlas-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        _atomic_write(out, text)


def _env_seed() -> int | None:
    raw = os.environ.get("LANDSCAPE_ATLAS_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"LANDSCAPE_ATLAS_SEED must be an integer, got {raw!r}") from exc


def _resolve_seed(flag_value: int | None, name: str) -> int:
    """Seed resolution order: explicit flag, environment override, default."""
    if flag_value is not None:
        return int(flag_value)
    env = _env_seed()
    if env is not None:
        return env
    return _DEFAULT_SEEDS[name]


def _meta_block(command: str, pairs: list[tuple[str, object]]) -> str:
    env = os.environ.get("LANDSCAPE_ATLAS_SEED", "unset")
    lines = [f"# tool: {_TOOL}", f"# command: {command}",
             f"# env_seed: {env}"]
    lines += [f"# {k}: {_fmt(v)}" for k, v in pairs]
    return "".join(line + "\n" for line in lines)


def _csv(command: str, meta: list[tuple[str, object]], header: list[str],
         rows: list[list]) -> str:
    body = [",".join(header)]
    body += [",".join(_fmt(v) for v in row) for row in rows]
    return _meta_block(command, meta) + "".join(line + "\n" for line in body)


def _json_doc(command: str, meta: list[tuple[str, object]], payload: dict) -> str:
    env = os.environ.get("LANDSCAPE_ATLAS_SEED", "unset")
    doc = {"tool": _TOOL, "command": command, "env_seed": env}
    doc.update({k: v for k, v in meta})
    doc.update(payload)
    return json.dumps(doc, indent=2) + "\n"


# --------------------------------------------------------------------------
# argument helpers

def _point_type(text: str) -> np.ndarray:
    try:
        return np.array([float(tok) for tok in text.split(",")])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            "expected comma-separated reals") from exc


def _int_list_type(text: str) -> list[int]:
    """Comma lists and inclusive ranges: '1,3', '1-7', '1-3,5'."""
    out: list[int] = []
    try:
        for tok in text.split(","):
            tok = tok.strip()
            dash = tok.find("-", 1)  # position 0 would be a minus sign
            if dash > 0:
                out.extend(range(int(tok[:dash]), int(tok[dash + 1:]) + 1))
            else:
                out.append(int(tok))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            "expected integers, comma lists, or ranges like 1-7") from exc
    if not out:
        raise argparse.ArgumentTypeError("empty integer list")
    return out


def _problem_list_type(text: str) -> list[str]:
    if text.strip() == "mario":
        return [f"m{i}" for i in range(1, 29)]
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def _x_header(d: int) -> list[str]:
    return [f"x{i + 1}" for i in range(d)]


# --------------------------------------------------------------------------
# subcommands

def _cmd_list(args) -> int:
    rows = list_problems()
    header = ["problem", "suite", "description", "box", "seeds"]
    if args.format == "json":
        text = _json_doc("list", [], {"problems": rows})
    else:
        # descriptions contain commas; quote that column
        data = [[r["problem"], r["suite"], '"%s"' % r["description"],
                 '"%s"' % r["box"], r["seeds"]] for r in rows]
        text = _csv("list", [], header, data)
    _emit(text, args.out)
    return 0


def _check_point(point: np.ndarray, dim: int) -> None:
    if point.shape != (dim,):
        raise UsageError(
            f"--point needs exactly {dim} comma-separated reals, got {point.size}")


def _cmd_eval(args) -> int:
    instance_seed = _resolve_seed(args.instance, "instance")
    inst = resolve(args.problem, instance_seed, args.dim)
    _check_point(args.point, args.dim)
    value = evaluate(inst, args.point)
    sys.stdout.write(_fmt(value) + "\n")
    if args.out:
        meta = [("problem", args.problem), ("instance", instance_seed),
                ("dim", args.dim)]
        text = _csv("eval", meta, _x_header(args.dim) + ["value"],
                    [list(args.point) + [value]])
        _atomic_write(args.out, text)
    return 0


def _cmd_level(args) -> int:
    instance_seed = _resolve_seed(args.instance, "instance")
    inst = resolve(args.problem, instance_seed, args.dim)
    _check_point(args.point, args.dim)
    grid = decode_instance_level(inst, args.point)
    meta = [("problem", args.problem), ("instance", instance_seed),
            ("dim", args.dim), ("height", grid.height), ("width", grid.width)]
    _emit(_meta_block("level", meta) + render_ascii(grid) + "\n", args.out)
    return 0


def _cmd_simulate(args) -> int:
    instance_seed = _resolve_seed(args.instance, "instance")
    inst = resolve(args.problem, instance_seed, args.dim)
    _check_point(args.point, args.dim)
    agent = args.agent or instance_agent(inst)
    if agent is None:
        raise UsageError(
            "--agent is required for problems without a bound agent")
    grid = decode_instance_level(inst, args.point)
    res, path = simulate_trace(grid, agent)
    fields = [("agent", agent), ("won", res.won), ("d_level", res.d_level),
              ("t_level", res.t_level), ("n_coins", res.n_coins),
              ("t_g", res.t_g), ("t_tot", res.t_tot), ("t_max", res.t_max),
              ("basic_fitness", basic_fitness(res)),
              ("air_time", air_time(res)), ("time_taken", time_taken(res))]
    listing = "".join(f"{k}={_fmt(v)}\n" for k, v in fields)
    lines = [list(row) for row in render_ascii(grid).split("\n")]
    for r, c in path:
        lines[r][c] = "*"
    overlay = "\n".join("".join(row) for row in lines)
    meta = [("problem", args.problem), ("instance", instance_seed),
            ("dim", args.dim)]
    _emit(_meta_block("simulate", meta) + listing + "\n" + overlay + "\n",
          args.out)
    return 0


def _cmd_walk(args) -> int:
    instance_seed = _resolve_seed(args.instance, "instance")
    anchor_seed = _resolve_seed(args.anchor_seed, "anchor_seed")
    inst = resolve(args.problem, instance_seed, args.dim)
    traces = walk_bundle(inst, anchor_seed, args.directions, step=args.step)
    step = traces[0].spec.step
    meta = [("problem", args.problem), ("instance", instance_seed),
            ("dim", args.dim), ("anchor_seed", anchor_seed),
            ("directions", args.directions), ("step", step)]
    rows = []
    for walk_id, tr in enumerate(traces):
        for k, off in enumerate(tr.offsets):
            rows.append([walk_id, off] + list(tr.points[k]) + [tr.values[k]])
    header = ["walk_id", "offset"] + _x_header(args.dim) + ["y"]
    _emit(_csv("walk", meta, header, rows), args.out)
    return 0


def _cmd_sample(args) -> int:
    instance_seed = _resolve_seed(args.instance, "instance")
    sample_seed = _resolve_seed(args.sample_seed, "sample_seed")
    inst = resolve(args.problem, instance_seed, args.dim)
    s = lhs_sample(inst, args.n, sample_seed)
    meta = [("problem", args.problem), ("instance", instance_seed),
            ("dim", args.dim), ("n", args.n), ("sample_seed", sample_seed)]
    rows = [list(s.X[i]) + [float(s.y[i])] for i in range(s.n)]
    _emit(_csv("sample", meta, _x_header(args.dim) + ["y"], rows), args.out)
    return 0


def _feature_doc(task: tuple[str, int, int, int, int, int]) -> dict:
    problem, instance_seed, dim, n, sample_seed, feature_seed = task
    inst = resolve(problem, instance_seed, dim)
    fv = compute_features(lhs_sample(inst, n, sample_seed), feature_seed)
    return {
        "problem": problem,
        "instance": instance_seed,
        "n": n,
        "d": dim,
        "sample_seed": sample_seed,
        "feature_seed": feature_seed,
        "features": fv.values,
        "degenerate": list(fv.degenerate),
    }


def _cmd_features(args) -> int:
    instance_seeds = args.instance or [None]
    sample_seed = _resolve_seed(args.sample_seed, "sample_seed")
    feature_seed = _resolve_seed(args.feature_seed, "feature_seed")
    tasks = []
    for problem in args.problem:
        for seed in instance_seeds:
            inst_seed = _resolve_seed(seed, "instance")
            resolve(problem, inst_seed, args.dim)  # validate before output
            tasks.append((problem, inst_seed, args.dim, args.n,
                          sample_seed, feature_seed))
    if len(tasks) > 1 and not args.out_dir:
        raise UsageError("multiple problem/instance combinations need --out-dir")
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)

    if args.jobs > 1 and len(tasks) > 1:
        with Pool(args.jobs) as pool:
            docs = pool.map(_feature_doc, tasks, chunksize=1)
    else:
        docs = [_feature_doc(t) for t in tasks]

    for doc in docs:
        text = _json_doc("features", [], doc)
        if args.out_dir:
            name = f"{doc['problem']}-i{doc['instance']}.json"
            _atomic_write(os.path.join(args.out_dir, name), text)
        else:
            _emit(text, args.out)
    return 0


def _corpus_meta(args, extra: list[tuple[str, object]]) -> list[tuple[str, object]]:
    return [("dim", args.dim), ("n", args.n),
            ("sample_seed", _resolve_seed(args.sample_seed, "sample_seed")),
            ("feature_seed", _resolve_seed(args.feature_seed, "feature_seed")),
            ("trees", args.trees)] + extra


def _cmd_train(args) -> int:
    if args.property not in PROPERTY_NAMES:
        raise UsageError(f"--property must be one of {', '.join(PROPERTY_NAMES)}")
    sample_seed = _resolve_seed(args.sample_seed, "sample_seed")
    feature_seed = _resolve_seed(args.feature_seed, "feature_seed")
    train_seed = _resolve_seed(args.train_seed, "train_seed")
    rows = build_labelled_rows(args.property, dimension=args.dim, n=args.n,
                               sample_seed=sample_seed, feature_seed=feature_seed)
    model = train(rows, args.property, train_seed, n_trees=args.trees)
    metadata = {
        "tool": _TOOL,
        "dim": args.dim,
        "n": args.n,
        "sample_seed": sample_seed,
        "feature_seed": feature_seed,
        "env_seed": os.environ.get("LANDSCAPE_ATLAS_SEED", "unset"),
    }
    _atomic_write(args.out, model.to_json(metadata) + "\n")
    sys.stdout.write(
        f"trained {args.property}: training accuracy "
        f"{_fmt(model.training_accuracy)}\n")
    return 0


def _load_feature_doc(path: str) -> tuple[FeatureVector, tuple[str, str, int]]:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    values = {name: float(doc["features"][name]) for name in FEATURE_NAMES}
    fv = FeatureVector(values=values, degenerate=tuple(doc.get("degenerate", ())))
    problem = str(doc["problem"])
    suite = "mario" if problem.startswith("m") and problem[1:].isdigit() \
        else "baseline"
    return fv, (suite, problem, int(doc["instance"]))


def _feature_paths(directory: str) -> list[str]:
    names = sorted(n for n in os.listdir(directory) if n.endswith(".json"))
    if not names:
        raise LandscapeError(f"no .json feature files in {directory}")
    return [os.path.join(directory, n) for n in names]


def _cmd_classify(args) -> int:
    if bool(args.features) == bool(args.features_dir):
        raise UsageError("need exactly one of --features / --features-dir")
    with open(args.model, encoding="utf-8") as fh:
        model = PropertyModel.from_json(fh.read())
    paths = [args.features] if args.features else _feature_paths(args.features_dir)
    rows = []
    for path in paths:
        fv, (suite, problem, instance) = _load_feature_doc(path)
        pred = predict(model, fv)
        rows.append([problem, instance, model.property_name, pred.label,
                     pred.vote_shares[pred.label]])
    meta = [("model", os.path.basename(args.model)),
            ("property", model.property_name),
            ("train_seed", model.train_seed)]
    header = ["problem", "instance", "property", "label", "vote_share"]
    _emit(_csv("classify", meta, header, rows), args.out)
    return 0


def _cmd_cv(args) -> int:
    if args.property not in PROPERTY_NAMES:
        raise UsageError(f"--property must be one of {', '.join(PROPERTY_NAMES)}")
    sample_seed = _resolve_seed(args.sample_seed, "sample_seed")
    feature_seed = _resolve_seed(args.feature_seed, "feature_seed")
    train_seed = _resolve_seed(args.train_seed, "train_seed")
    rows = build_labelled_rows(args.property, dimension=args.dim, n=args.n,
                               sample_seed=sample_seed, feature_seed=feature_seed)
    cv = lofo_cv(rows, args.property, train_seed, n_trees=args.trees)
    meta = _corpus_meta(args, [("property", args.property),
                               ("train_seed", train_seed),
                               ("mean_accuracy", cv.mean_accuracy)])
    if args.format == "json":
        payload = {
            "property": args.property,
            "mean_accuracy": cv.mean_accuracy,
            "folds": [{"group": f.group, "n_test": f.n_test,
                       "accuracy": f.accuracy} for f in cv.folds],
        }
        text = _json_doc("cv", meta, payload)
    else:
        data = [[f.group, f.n_test, f.accuracy] for f in cv.folds]
        text = _csv("cv", meta, ["group", "n_test", "accuracy"], data)
    _emit(text, args.out)
    return 0


def _cmd_embed(args) -> int:
    embed_seed = _resolve_seed(args.embed_seed, "embed_seed")
    paths = _feature_paths(args.features_dir)
    loaded = [_load_feature_doc(p) for p in paths]
    fvs = [fv for fv, _ in loaded]
    ids = [ident for _, ident in loaded]
    matrix, kept = normalize_features(fvs)
    emb = tsne_embed(matrix, ids=ids, perplexity=args.perplexity,
                     embed_seed=embed_seed, iterations=args.iterations,
                     trace=True)
    meta = [("perplexity", args.perplexity), ("embed_seed", embed_seed),
            ("iterations", args.iterations), ("rows", len(emb.rows)),
            ("final_kl", emb.final_kl)]
    rows = [[r.suite, r.problem, r.instance, r.u, r.v] for r in emb.rows]
    text = _csv("embed", meta, ["suite", "problem", "instance", "u", "v"], rows)
    sidecar = _json_doc("embed", meta, {
        "kept_features": kept,
        "kl_trace": [[it, kl] for it, kl in kl_trace(emb)],
    })
    _atomic_write(args.out, text)
    _atomic_write(args.out + ".meta.json", sidecar)
    return 0


# --------------------------------------------------------------------------
# parser

def _add_common(p, *, point=False, n=False):
    p.add_argument("--problem", required=True,
                   help="problem id, e.g. m7, sphere, shekel-20")
    p.add_argument("--instance", type=int, default=None,
                   help="instance seed (default 1)")
    p.add_argument("--dim", type=int, required=True, help="dimension d")
    if point:
        p.add_argument("--point", type=_point_type, required=True,
                       help="comma-separated coordinates")
    if n:
        p.add_argument("--n", type=int, default=None,
                       help="sample size (default 50*d)")
        p.add_argument("--sample-seed", type=int, default=None)
    p.add_argument("--out", default=None, help="output file (default stdout)")


def _add_corpus_flags(p):
    p.add_argument("--dim", type=int, default=10)
    p.add_argument("--n", type=int, default=None, help="default 50*d")
    p.add_argument("--sample-seed", type=int, default=None)
    p.add_argument("--feature-seed", type=int, default=None)
    p.add_argument("--train-seed", type=int, default=None)
    p.add_argument("--trees", type=int, default=200)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="landscape-atlas",
        description="Fitness-landscape analysis of level-generation and "
                    "baseline optimization problems.")
    ap.add_argument("--version", action="version", version=_TOOL)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="problem registry")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_list)

    p = sub.add_parser("eval", help="evaluate one point")
    _add_common(p, point=True)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("level", help="decode and render a level grid")
    _add_common(p, point=True)
    p.set_defaults(fn=_cmd_level)

    p = sub.add_parser("simulate", help="run an agent on a decoded level")
    _add_common(p, point=True)
    p.add_argument("--agent", choices=(ASTAR, SCARED), default=None)
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("walk", help="bundle of diagonal walks")
    _add_common(p)
    p.add_argument("--anchor-seed", type=int, default=None)
    p.add_argument("--directions", type=int, default=1)
    p.add_argument("--step", type=float, default=None,
                   help="step length (default 2%% of box diagonal / sqrt(d))")
    p.set_defaults(fn=_cmd_walk)

    p = sub.add_parser("sample", help="latin hypercube sample")
    _add_common(p, n=True)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("features", help="landscape feature vectors")
    p.add_argument("--problem", type=_problem_list_type, required=True,
                   help="id, comma list, or 'mario' for m1..m28")
    p.add_argument("--instance", type=_int_list_type, default=None,
                   help="seed, comma list, or range like 1-7")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="default 50*d")
    p.add_argument("--sample-seed", type=int, default=None)
    p.add_argument("--feature-seed", type=int, default=None)
    p.add_argument("--out", default=None, help="single-row output file")
    p.add_argument("--out-dir", default=None,
                   help="directory for one JSON per problem/instance")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel feature rows")
    p.set_defaults(fn=_cmd_features)

    p = sub.add_parser("train", help="fit a property classifier")
    p.add_argument("--property", required=True)
    _add_corpus_flags(p)
    p.add_argument("--out", required=True, help="model JSON path")
    p.set_defaults(fn=_cmd_train)

    p = sub.add_parser("classify", help="predict properties for feature rows")
    p.add_argument("--model", required=True)
    p.add_argument("--features", default=None, help="one feature JSON file")
    p.add_argument("--features-dir", default=None,
                   help="directory of feature JSON files")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("cv", help="leave-one-function-out cross-validation")
    p.add_argument("--property", required=True)
    _add_corpus_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_cv)

    p = sub.add_parser("embed", help="2-D t-SNE similarity map")
    p.add_argument("--features-dir", required=True)
    p.add_argument("--perplexity", type=float, default=30.0)
    p.add_argument("--embed-seed", type=int, default=None)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--out", required=True, help="embedding CSV path")
    p.set_defaults(fn=_cmd_embed)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if hasattr(args, "n") and args.n is None and hasattr(args, "dim"):
        args.n = 50 * args.dim
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (LandscapeError, ValueError, KeyError, OSError) as exc:
        print(f"{ap.prog}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
