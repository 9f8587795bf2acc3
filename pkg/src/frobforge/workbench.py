"""Command runner, report emitter, and batch CLI.

Commands execute sequentially in declaration order against an environment
of named rings and maps.  Every command yields one Report; reports are
byte-deterministic across runs (resource usage is counted in S-pair steps,
never wall time) and serialize to the versioned `frobforge-report/1` JSON
schema.  Reports go to stdout, diagnostics to stderr.  There is no
interactive mode.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import groebner
from .algebra import AlgebraMap, FPAlgebra, is_isomorphism, relative_frobenius
from .errors import EngineError, ParseError, PreconditionError
from .groebner import Ideal, reduced_groebner
from .homology import algebra_as_module, tor
from .pipeline import (
    factorize,
    find_p_basis,
    is_relatively_perfect,
    is_relatively_semiperfect,
)
from .polyring import GREVLEX, LEX
from .session import (
    CommandStmt,
    MapStmt,
    PrimeStmt,
    RingStmt,
    SessionAST,
    format_ring,
    format_stmt,
    parse_session,
)
from .tower import (
    DEFAULT_STAGE_BUDGET,
    cofinality_bound,
    detect_stabilization,
    quotient_tower_stage,
    tower_stage,
)

__version__ = "1.0.0"
SCHEMA_VERSION = "frobforge-report/1"

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["command", "inputs", "result", "resources", "version"],
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "engine": {"type": "string"},
        "order": {"type": "string"},
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "result": {"type": "object"},
        "resources": {
            "type": "object",
            "required": ["s_pair_steps", "step_budget"],
            "properties": {
                "s_pair_steps": {"type": "integer", "minimum": 0},
                "step_budget": {"type": "integer", "minimum": 1},
            },
        },
    },
    "additionalProperties": False,
}


@dataclass
class Report:
    command: str
    inputs: dict
    result: dict
    resources: dict
    order: str

    def payload(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "engine": __version__,
            "order": self.order,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "resources": self.resources,
        }


def emit_report(report: Report, format: str = "json") -> bytes:
    """Serialize one report; JSON is canonical (sorted keys, fixed separators)."""
    if format == "json":
        return (json.dumps(report.payload(), sort_keys=True,
                           separators=(",", ":")) + "\n").encode("utf-8")
    if format == "text":
        lines = [f"== {report.command}"]
        verdictish = {k: v for k, v in report.result.items()
                      if isinstance(v, (bool, int, str)) or v is None}
        rest = {k: v for k, v in report.result.items() if k not in verdictish}
        for k in sorted(verdictish):
            lines.append(f"  {k}: {verdictish[k]}")
        for k in sorted(rest):
            lines.append(f"  {k}: {json.dumps(rest[k], sort_keys=True)}")
        lines.append(f"  [s-pair steps: {report.resources['s_pair_steps']}]")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise PreconditionError(f"unknown report format {format!r}")


# -- serialization helpers -----------------------------------------------------


def ring_payload(A: FPAlgebra) -> dict:
    return {
        "p": A.field.p,
        "vars": list(A.ring.names),
        "relations": [str(g) for g in A.relations.gens],
        "text": format_ring(A),
    }


def map_payload(f: AlgebraMap) -> dict:
    return {
        "domain": ring_payload(f.domain),
        "codomain": ring_payload(f.codomain),
        "images": {n: str(img) for n, img in zip(f.domain.names, f.images)},
    }


# -- the environment -----------------------------------------------------------


@dataclass
class Options:
    order: str = "grevlex"
    max_stage: int = DEFAULT_STAGE_BUDGET
    tor_bound: int = 3
    step_budget: int | None = None


class Environment:
    def __init__(self, options: Options):
        self.options = options
        self.rings: dict[str, FPAlgebra] = {}
        self.maps: dict[str, AlgebraMap] = {}
        self.order = GREVLEX if options.order == "grevlex" else LEX

    def declare(self, stmt) -> None:
        if isinstance(stmt, PrimeStmt):
            return
        if isinstance(stmt, RingStmt):
            self.rings[stmt.name] = stmt.algebra
            return
        if isinstance(stmt, MapStmt):
            dom = self.rings[stmt.domain]
            cod = self.rings[stmt.codomain]
            self.maps[stmt.name] = AlgebraMap(dom, cod, tuple(img for _, img in stmt.images))
            return
        raise PreconditionError(f"not a declaration: {stmt!r}")

    def check_stage(self, n: int) -> None:
        if n > self.options.max_stage:
            raise PreconditionError(
                f"stage count {n} exceeds --max-stage {self.options.max_stage}")


_COMMAND_MODULE = {
    "gb": "groebner", "check": "pipeline", "relfrob": "algebra",
    "tower": "tower", "factorize": "pipeline", "pbasis": "pipeline",
    "tor": "homology", "stab": "tower", "cofinal": "tower",
}


def run_command(stmt: CommandStmt, env: Environment) -> Report:
    """Execute one command; deterministic, structured failures only."""
    try:
        return _dispatch(stmt, env)
    except EngineError as exc:
        if exc.module == "engine":  # name the driving module for generic failures
            exc.module = _COMMAND_MODULE.get(stmt.command, "engine")
        raise


def _dispatch(stmt: CommandStmt, env: Environment) -> Report:
    before = groebner.spair_steps()
    cmd, args = stmt.command, stmt.args
    inputs: dict = {}
    result: dict = {}
    if cmd == "gb":
        A = env.rings[args[0]]
        inputs["ring"] = ring_payload(A)
        basis = reduced_groebner(A.relations, env.order)
        result["basis"] = [str(g) for g in basis]
    elif cmd == "check":
        mode, name = args
        f = env.maps[name]
        inputs["map"] = map_payload(f)
        if mode == "semiperfect":
            res = is_relatively_semiperfect(f)
            result["verdict"] = res.holds
            if res.obstruction is not None:
                result["obstruction"] = [str(g) for g in res.obstruction.gens]
        elif mode == "perfect":
            cert = is_relatively_perfect(f, env.options.tor_bound)
            result["verdict"] = cert.holds
            result["frobenius_iso"] = cert.frobenius_iso
            result["tor_checked"] = cert.tor_checked
            result["tor_bound"] = cert.tor_bound
            if cert.tor_checked:
                result["tor_dims"] = cert.tor_dims
                result["tor_vanishing"] = cert.tor_vanishing
        else:
            ok, inverse = is_isomorphism(f)
            result["verdict"] = ok
            if inverse is not None:
                result["inverse"] = {n: str(img) for n, img in
                                     zip(inverse.domain.names, inverse.images)}
    elif cmd == "relfrob":
        f = env.maps[args[0]]
        inputs["map"] = map_payload(f)
        rf = relative_frobenius(f)
        result["twist"] = ring_payload(rf.domain)
        result["map"] = {n: str(img) for n, img in zip(rf.domain.names, rf.images)}
    elif cmd == "tower":
        name, n = args
        env.check_stage(n)
        f = env.maps[name]
        inputs["map"] = map_payload(f)
        from .algebra import is_surjective, map_kernel

        surjective = is_surjective(f)
        stages = []
        for k in range(n + 1):
            ts = tower_stage(f, k)
            entry = {"index": k, "presentation": ring_payload(ts.stage)}
            if ts.transition is not None:
                entry["transition"] = {
                    n2: str(img) for n2, img in
                    zip(ts.transition.domain.names, ts.transition.images)}
            if surjective:
                I = map_kernel(f)
                entry["quotient_presentation"] = ring_payload(
                    quotient_tower_stage(f.domain, I, k))
            stages.append(entry)
        result["surjective"] = surjective
        result["stages"] = stages
    elif cmd == "factorize":
        name, n = args
        env.check_stage(n)
        f = env.maps[name]
        inputs["map"] = map_payload(f)
        cert = factorize(f, n, env.options.tor_bound)
        result["adjoined"] = list(cert.adjoined)
        result["cover_semiperfect"] = cert.cover_semiperfect
        result["stabilized"] = cert.stabilized
        result["truncated"] = cert.truncated
        result["middle_index"] = cert.middle_index
        result["middle"] = ring_payload(cert.middle)
        result["to_middle"] = map_payload(cert.to_middle)
        result["to_target"] = map_payload(cert.to_target)
        result["target_surjective"] = cert.target_surjective
        result["composition_ok"] = cert.composition_ok
        if cert.middle_perfect is not None:
            result["middle_perfect"] = cert.middle_perfect.holds
        if cert.truncated_verified is not None:
            result["truncated_verified"] = cert.truncated_verified
        result["stages"] = [
            {"index": st.index, "presentation": ring_payload(st.algebra)}
            for st in cert.stages
        ]
    elif cmd == "pbasis":
        f = env.maps[args[0]]
        inputs["map"] = map_payload(f)
        res = find_p_basis(f)
        result["verdict"] = res.success
        result["reason"] = res.reason
        if res.success:
            result["basis"] = list(res.basis_names)
            result["witness_map"] = map_payload(res.witness_map)
        if res.obstruction is not None:
            result["obstruction"] = [
                str(g) for g in reduced_groebner(
                    Ideal(res.obstruction.ring, res.obstruction.gens))]
            result["obstruction_index"] = res.obstruction_index
        if res.projective_rank is not None:
            result["projective_rank"] = res.projective_rank
    elif cmd == "tor":
        first, second, bound = args
        f, g = env.maps[first], env.maps[second]
        inputs["first"] = map_payload(f)
        inputs["second"] = map_payload(g)
        M = algebra_as_module(f)
        N = algebra_as_module(g)
        if M is None or N is None:
            raise PreconditionError(
                "tor needs enumerable (Artinian) module data on both sides")
        res = tor(M, N, bound)
        result["numeric"] = res.numeric
        if res.numeric:
            result["dims"] = res.dims
        else:
            result["symbolic_ranks"] = [e.rank for e in res.entries]
    elif cmd == "stab":
        name, polys, n = args
        env.check_stage(n)
        A = env.rings[name]
        inputs["ring"] = ring_payload(A)
        inputs["ideal"] = [str(g) for g in polys]
        rep = detect_stabilization(A, Ideal(A.ring, polys), n)
        result["stabilized"] = rep.stabilized
        result["explored"] = rep.explored
        if rep.stabilized:
            result["index"] = rep.index
        else:
            result["failing_stage"] = rep.witness.stage
            result["failing_generator"] = str(rep.witness.generator)
    elif cmd == "cofinal":
        name, polys, n = args
        A = env.rings[name]
        inputs["ring"] = ring_payload(A)
        inputs["ideal"] = [str(g) for g in polys]
        m = cofinality_bound(A, Ideal(A.ring, polys), n)
        q = A.field.p ** n
        result["m"] = m
        result["cap"] = len(polys) * (q - 1) + 1
    else:
        raise PreconditionError(f"unknown command {cmd!r}")
    resources = {
        "s_pair_steps": groebner.spair_steps() - before,
        "step_budget": groebner.DEFAULT_SPAIR_BUDGET,
    }
    return Report(format_stmt(stmt)[:-1], inputs, result, resources, env.options.order)


def run_session(ast: SessionAST, options: Options | None = None):
    """Execute a parsed session; returns the list of command reports."""
    options = options or Options()
    env = Environment(options)
    saved_budget = groebner.DEFAULT_SPAIR_BUDGET
    if options.step_budget is not None:
        groebner.set_default_spair_budget(options.step_budget)
    try:
        reports = []
        for stmt in ast.statements:
            if isinstance(stmt, CommandStmt):
                reports.append(run_command(stmt, env))
            else:
                env.declare(stmt)
        return reports
    finally:
        groebner.DEFAULT_SPAIR_BUDGET = saved_budget


# -- CLI -------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="frobforge",
        description="batch workbench for Frobenius structure on finitely presented algebras",
    )
    sub = parser.add_subparsers(dest="subcommand")
    runp = sub.add_parser("run", help="run a session file")
    runp.add_argument("file", help="session file")
    runp.add_argument("--json", dest="json_out", metavar="OUT",
                      help="also write the reports as a JSON array to OUT")
    runp.add_argument("--order", choices=["lex", "grevlex"], default="grevlex")
    runp.add_argument("--max-stage", type=int, default=DEFAULT_STAGE_BUDGET)
    runp.add_argument("--tor-bound", type=int, default=3)
    runp.add_argument("--step-budget", type=int, default=None)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    if args.subcommand != "run":
        parser.print_usage(sys.stderr)
        return 1
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"frobforge: {exc}", file=sys.stderr)
        return 1
    options = Options(order=args.order, max_stage=args.max_stage,
                      tor_bound=args.tor_bound, step_budget=args.step_budget)
    try:
        ast = parse_session(text)
        reports = run_session(ast, options)
    except ParseError as exc:
        print(f"frobforge: parse error: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"frobforge: {exc.module}: {exc}", file=sys.stderr)
        return 2
    out = sys.stdout.buffer
    for report in reports:
        out.write(emit_report(report, "text"))
    out.flush()
    if args.json_out:
        blob = json.dumps([r.payload() for r in reports], sort_keys=True,
                          separators=(",", ":")) + "\n"
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(blob)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
