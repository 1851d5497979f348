"""Command-line interface.

Exit codes: 0 yes/agree, 1 no, 2 unknown (budget exhausted), 3 input error,
4 internal assertion failure.
"""
from __future__ import annotations

import json
import sys
from typing import Optional

import click

from . import drawing_io
from .cnf import Assignment, CnfError, CnfInstance, brute_force_sat, parse_dimacs
from .gadget import build_gadget, extract_assignment, terminals_visited
from .reduction import (
    ConstructionError,
    assignment_from_tree,
    build_arrangement,
    build_gamma,
    witness_tree_from_assignment,
)
from .render import RenderOptions, render_svg
from .roundtrip import roundtrip as run_roundtrip
from .search import (
    DEFAULT_PATH_BUDGET,
    DEFAULT_TREE_BUDGET,
    Drawing,
    RootedTree,
    SearchBudgetExceeded,
    SearchStats,
    find_ic_path,
    find_ic_rooted_spanning_tree,
    verify_ic_rooted_tree,
    verify_ic_tree_drawing,
)

YES, NO, UNKNOWN, INPUT_ERROR, INTERNAL_ERROR = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


class Outcome(Exception):
    """Carries the exit code out of a subcommand."""

    def __init__(self, code: int):
        super().__init__(code)
        self.code = code


def _common(budget_default: Optional[int]):
    def deco(f):
        f = click.option("--seed", type=int, default=0, show_default=True, help="Seed for sampled experiments.")(f)
        f = click.option("--budget", type=int, default=budget_default, show_default=True,
                         help="Node expansion budget; exhausting it answers 'unknown'.")(f)
        f = click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
                         help="Write the result here instead of stdout.")(f)
        f = click.option("--input", "-i", "input_path", type=click.Path(dir_okay=False), default=None,
                         help="Input file (drawing or DIMACS, depending on the command).")(f)
        return f
    return deco


def _read_text(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        click.echo(text, nl=False)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _drawing(path: Optional[str]) -> Drawing:
    try:
        return drawing_io.loads(_read_text(path))
    except drawing_io.DrawingFormatError as exc:
        raise InputError(str(exc)) from exc


def _cnf(path: Optional[str]) -> CnfInstance:
    try:
        return parse_dimacs(_read_text(path))
    except CnfError as exc:
        raise InputError(str(exc)) from exc


def _vertex(d: Drawing, token: str) -> int:
    token = token.strip()
    if token.isdigit():
        v = int(token)
        if v >= len(d):
            raise InputError(f"vertex {v} is not in the drawing")
        return v
    v = d.find_label(token)
    if v is None:
        raise InputError(f"no vertex with role {token!r}")
    return v


def _vertex_list(d: Drawing, spec: str) -> list[int]:
    return [_vertex(d, tok) for tok in spec.replace(",", " ").split()]


def format_tree(tree: RootedTree) -> str:
    lines = [f"root {tree.root}"] + [f"{c} {p}" for c, p in sorted(tree.parent.items())]
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> RootedTree:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or len(rows[0]) != 2 or rows[0][0] != "root" or not rows[0][1].isdigit():
        raise InputError("tree file must start with 'root <id>'")
    parent = {}
    for row in rows[1:]:
        if len(row) != 2 or not all(t.isdigit() for t in row):
            raise InputError(f"bad tree line: {' '.join(row)!r}")
        child, par = int(row[0]), int(row[1])
        if child in parent:
            raise InputError(f"vertex {child} has two parents")
        parent[child] = par
    return RootedTree(int(rows[0][1]), parent)


def format_assignment(asg) -> str:
    return "v " + " ".join(str(i + 1) if v else str(-(i + 1)) for i, v in enumerate(asg)) + " 0\n"


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Increasing-chord paths, trees and the 3-SAT reduction."""


@cli.command("verify-path")
@_common(None)
@click.option("--path", "path_spec", required=True, help="Vertex ids or roles, comma or space separated.")
def verify_path(input_path, output, budget, seed, path_spec):
    """Is the given vertex path increasing-chord?"""
    d = _drawing(input_path)
    path = _vertex_list(d, path_spec)
    if len(path) < 2 or len(set(path)) != len(path):
        raise InputError("a path needs at least two distinct vertices")
    for u, v in zip(path, path[1:]):
        if not d.has_edge(u, v):
            raise InputError(f"({u}, {v}) is not an edge")
    ok = d.is_ic(path)
    _emit("yes\n" if ok else "no\n", output)
    raise Outcome(YES if ok else NO)


@cli.command("find-path")
@_common(DEFAULT_PATH_BUDGET)
@click.option("--source", "-s", required=True)
@click.option("--target", "-t", required=True)
def find_path(input_path, output, budget, seed, source, target):
    """Search for an increasing-chord path between two vertices."""
    d = _drawing(input_path)
    s, t = _vertex(d, source), _vertex(d, target)
    if s == t:
        raise InputError("source and target coincide")
    stats = SearchStats()
    try:
        path = find_ic_path(d, s, t, budget=budget, stats=stats)
    except SearchBudgetExceeded:
        _emit("unknown\n", output)
        raise Outcome(UNKNOWN)
    if path is None:
        _emit("none\n", output)
        raise Outcome(NO)
    _emit(" ".join(map(str, path)) + "\n", output)
    raise Outcome(YES)


@cli.command("find-tree")
@_common(DEFAULT_TREE_BUDGET)
@click.option("--root", "-r", "root_spec", default="root", show_default=True)
def find_tree(input_path, output, budget, seed, root_spec):
    """Search for a spanning tree whose root paths are all increasing-chord."""
    d = _drawing(input_path)
    r = _vertex(d, root_spec)
    try:
        tree = find_ic_rooted_spanning_tree(d, r, budget=budget)
    except SearchBudgetExceeded:
        _emit("unknown\n", output)
        raise Outcome(UNKNOWN)
    if tree is None:
        _emit("none\n", output)
        raise Outcome(NO)
    _emit(format_tree(tree), output)
    raise Outcome(YES)


@cli.command("verify-tree")
@_common(None)
@click.option("--tree", "tree_path", type=click.Path(dir_okay=False), default=None,
              help="Rooted tree ('root R' then 'child parent' lines); without it the drawing itself must be a tree.")
def verify_tree(input_path, output, budget, seed, tree_path):
    """Check a rooted IC spanning tree, or that a tree drawing is increasing-chord."""
    d = _drawing(input_path)
    if tree_path is not None:
        tree = parse_tree(_read_text(tree_path))
        try:
            ok = verify_ic_rooted_tree(d, tree)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        try:
            ok = verify_ic_tree_drawing(d)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    _emit("yes\n" if ok else "no\n", output)
    raise Outcome(YES if ok else NO)


@cli.command("reduce")
@_common(None)
def reduce_cmd(input_path, output, budget, seed):
    """Build the IC spanning tree instance of a DIMACS formula."""
    inst = _cnf(input_path)
    gamma, _ = build_gamma(inst)
    _emit(drawing_io.dumps(gamma), output)
    raise Outcome(YES)


@cli.command("witness")
@_common(None)
def witness(input_path, output, budget, seed):
    """Tree built from the first satisfying assignment (exit 1 if unsatisfiable)."""
    inst = _cnf(input_path)
    asg = brute_force_sat(inst)
    if asg is None:
        _emit("unsatisfiable\n", output)
        raise Outcome(NO)
    gamma, _ = build_gamma(inst)
    tree = witness_tree_from_assignment(inst, asg, gamma)
    _emit(format_tree(tree), output)
    raise Outcome(YES)


@cli.command("extract")
@_common(None)
@click.option("--tree", "tree_path", type=click.Path(dir_okay=False), required=True)
def extract(input_path, output, budget, seed, tree_path):
    """Read the truth assignment encoded by a rooted IC spanning tree of the reduction drawing."""
    inst = _cnf(input_path)
    tree = parse_tree(_read_text(tree_path))
    gamma, _ = build_gamma(inst)
    try:
        if not verify_ic_rooted_tree(gamma, tree):
            _emit("tree is not an IC spanning tree\n", output)
            raise Outcome(NO)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    asg = assignment_from_tree(inst, gamma, tree)
    _emit(format_assignment(asg), output)
    raise Outcome(YES)


@cli.command("gadget-path")
@_common(DEFAULT_PATH_BUDGET)
@click.option("--desk-cap/--no-desk-cap", default=True, show_default=True,
              help="Refuse instances beyond 3 variables and 2 clauses.")
@click.option("--drawing", "drawing_out", type=click.Path(dir_okay=False), default=None,
              help="Also write the staged drawing here.")
def gadget_path(input_path, output, budget, seed, desk_cap, drawing_out):
    """Build the staged path drawing and look for an IC path from t to t'."""
    inst = _cnf(input_path)
    try:
        g = build_gadget(inst, desk_cap=desk_cap)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if drawing_out:
        _emit(drawing_io.dumps(g.drawing), drawing_out)
    report = {
        "vertices": len(g.drawing),
        "edges": len(g.drawing.edges),
        "bit_length": g.bit_length(),
        "ray_slopes": [str(s) for s in g.ray_slopes()],
    }
    try:
        path = find_ic_path(g.drawing, g.t, g.t_prime, budget=budget)
    except SearchBudgetExceeded:
        report["result"] = "unknown"
        _emit(json.dumps(report) + "\n", output)
        raise Outcome(UNKNOWN)
    if path is None:
        report["result"] = "none"
        _emit(json.dumps(report) + "\n", output)
        raise Outcome(NO)
    if not terminals_visited(g, path):
        raise ConstructionError("IC path skips a clause terminal")
    asg = extract_assignment(g, path)
    report.update(result="path", path=list(path), assignment=format_assignment(asg).strip())
    _emit(json.dumps(report) + "\n", output)
    raise Outcome(YES)


@cli.command("roundtrip")
@_common(DEFAULT_TREE_BUDGET)
@click.option("--alpha-max", type=int, default=1, show_default=True)
@click.option("--beta-max", type=int, default=2, show_default=True)
@click.option("--samples", type=int, default=None,
              help="Sample this many instances with exactly alpha-max variables and beta-max clauses.")
@click.option("--workers", type=int, default=1, show_default=True)
def roundtrip(input_path, output, budget, seed, alpha_max, beta_max, samples, workers):
    """Compare SAT verdicts with IC spanning tree verdicts (JSON lines)."""
    if alpha_max < 1 or beta_max < 0:
        raise InputError("need alpha-max >= 1 and beta-max >= 0")
    report = run_roundtrip(alpha_max, beta_max, samples=samples, seed=seed, budget=budget, workers=workers)
    lines = [json.dumps(r.as_dict(), sort_keys=True) for r in report.records]
    lines.append(json.dumps({"summary": report.summary()}))
    _emit("\n".join(lines) + "\n", output)
    if report.disagreements:
        raise Outcome(NO)
    raise Outcome(UNKNOWN if report.unknown else YES)


def _alpha_from_roles(d: Drawing) -> Optional[int]:
    vars_ = [int(lab.split(":")[2]) for lab in d.labels.values() if lab.startswith("p:")]
    return max(vars_) if vars_ else None


@cli.command("render")
@_common(None)
@click.option("--path", "path_spec", default=None, help="Highlight this path and shade its slabs.")
@click.option("--show-envelope", is_flag=True, help="Dash the upper envelope of the variable arrangement.")
@click.option("--labels", is_flag=True, help="Print roles next to vertices.")
def render(input_path, output, budget, seed, path_spec, show_envelope, labels):
    """Render a drawing file as SVG."""
    d = _drawing(input_path)
    if not len(d):
        raise InputError("empty drawing")
    path = _vertex_list(d, path_spec) if path_spec else None
    env_lines, env_range = (), None
    if show_envelope:
        alpha = _alpha_from_roles(d)
        if alpha is None:
            raise InputError("--show-envelope needs a drawing with variable-gadget roles")
        env_lines = [l.line for l in build_arrangement(alpha).lines]
        env_range = (0, 2 * alpha)
    svg = render_svg(d, RenderOptions(path=path, envelope_lines=env_lines, envelope_range=env_range, labels=labels))
    _emit(svg, output)
    raise Outcome(YES)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="icchord", standalone_mode=False)
    except Outcome as out:
        return out.code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except (click.UsageError, click.BadParameter) as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return INPUT_ERROR
    except click.Abort:
        return INPUT_ERROR
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        return INPUT_ERROR
    except (ConstructionError, AssertionError) as exc:
        click.echo(f"internal assertion failed: {exc}", err=True)
        return INTERNAL_ERROR
    return YES


if __name__ == "__main__":
    sys.exit(main())
