"""Driving the workbench programmatically: parse, run, emit.

The same session files the CLI consumes can be run in-process; reports are
plain data, serialize to a versioned JSON schema, and are byte-identical
across runs (resources are counted in S-pair steps, never wall time).
"""

import json
import pathlib

from frobforge import emit_report, parse_session, run_session

session_text = (pathlib.Path(__file__).parent / "session.frob").read_text()
ast = parse_session(session_text)
reports = run_session(ast)

print(f"# ran {len(reports)} commands\n")
for report in reports:
    print(emit_report(report, "text").decode(), end="")

print("\n# the same reports as canonical JSON (first one shown)")
payload = json.loads(emit_report(reports[0], "json"))
print(json.dumps(payload, indent=2, sort_keys=True)[:600], "...")

print("\n# equivalently, from the command line:")
print("#   frobforge run demos/session.frob --json reports.json")
