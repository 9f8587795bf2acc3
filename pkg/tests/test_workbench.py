import json
import subprocess
import sys

import jsonschema
import pytest

from frobforge.errors import ParseError
from frobforge.session import format_session, parse_session
from frobforge.workbench import REPORT_SCHEMA, emit_report, run_session


def test_parse_minimal_ring():
    ast = parse_session("p 2; ring R = [x]/(x^2);")
    assert len(ast.statements) == 2
    ring = ast.statements[1].algebra
    assert ring.field.p == 2
    assert [str(g) for g in ring.relations.gens] == ["x^2"]


def test_parse_requires_prime_first():
    with pytest.raises(ParseError) as e:
        parse_session("ring R = [x];")
    assert "prime p must be declared first" in str(e.value)


def test_parse_map_statement():
    ast = parse_session(
        "p 2; ring R = [x]; ring S = [x]/(x^2); map f : R -> S = { x -> 0 };")
    stmt = ast.statements[3]
    assert stmt.name == "f"
    assert stmt.images[0][1].is_zero()


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as e:
        parse_session("p 2;\nring R = [x/(x^2);")
    assert e.value.line == 2
    assert e.value.column > 0


def test_parse_duplicate_and_unknown_names():
    with pytest.raises(ParseError) as e:
        parse_session("p 2; ring R = [x]; ring R = [y];")
    assert "duplicate" in str(e.value)
    with pytest.raises(ParseError) as e:
        parse_session("p 2; gb R;")
    assert "unknown ring" in str(e.value)
    with pytest.raises(ParseError) as e:
        parse_session("p 3; p 5;")
    assert "already declared" in str(e.value)


def test_parse_missing_image():
    with pytest.raises(ParseError) as e:
        parse_session("p 2; ring R = [x, y]; ring S = [t]; "
                      "map f : R -> S = { x -> t };")
    assert "missing image" in str(e.value)


SESSION = """\
p 2;
ring R = [x];
ring S = [x]/(x^2);
map f : R -> S = { x -> x };
ring E = [e]/(e^2 + e);
ring F = [];
map q : E -> F = { e -> 0 };
check semiperfect f;
gb S;
relfrob f;
tower f 2;
factorize q 4;
check perfect q;
stab E (e) 3;
cofinal R (x) 1;
"""


def test_round_trip_print_parse():
    ast = parse_session(SESSION)
    printed = format_session(ast)
    ast2 = parse_session(printed)
    assert ast2 == ast
    assert format_session(ast2) == printed


def test_run_session_reports():
    reports = run_session(parse_session(SESSION))
    by_cmd = {r.command.split(";")[0]: r for r in reports}
    assert len(reports) == 8
    semiperfect = next(r for r in reports if r.command.startswith("check semiperfect"))
    assert semiperfect.result["verdict"] is True
    tower = next(r for r in reports if r.command.startswith("tower"))
    # quotient presentations carry the x^4 and x^8 stages
    quotients = [st["quotient_presentation"]["relations"]
                 for st in tower.result["stages"]]
    assert ["x^4"] in quotients and ["x^8"] in quotients
    fact = next(r for r in reports if r.command.startswith("factorize"))
    assert fact.result["stabilized"] is True
    assert fact.result["middle_index"] == 1
    assert fact.result["target_surjective"] is True
    perfect = next(r for r in reports if r.command.startswith("check perfect"))
    assert perfect.result["verdict"] is True
    stab = next(r for r in reports if r.command.startswith("stab"))
    assert stab.result["stabilized"] is True and stab.result["index"] == 0
    cof = next(r for r in reports if r.command.startswith("cofinal"))
    assert cof.result["m"] == 2


def test_reports_validate_against_schema():
    for report in run_session(parse_session(SESSION)):
        jsonschema.validate(json.loads(emit_report(report, "json")), REPORT_SCHEMA)


def test_report_presentations_reparse():
    reports = run_session(parse_session(SESSION))
    for report in reports:
        payload = report.payload()
        for key, value in payload["inputs"].items():
            if not isinstance(value, dict):
                continue
            presentations = []
            if "vars" in value:
                presentations.append(value)
            else:
                presentations.extend(v for v in value.values() if isinstance(v, dict) and "vars" in v)
            for pres in presentations:
                text = f"p {pres['p']}; ring Z = {pres['text']};"
                ast = parse_session(text)
                ring = ast.statements[1].algebra
                assert list(ring.ring.names) == pres["vars"]
                assert [str(g) for g in ring.relations.gens] == pres["relations"]


def test_tor_and_iso_commands():
    session = (
        "p 2; ring E = [e]/(e^2 + e); ring F = [];\n"
        "map q : E -> F = { e -> 0 };\n"
        "map s : E -> E = { e -> e + 1 };\n"
        "check iso s;\n"
        "tor q q 2;\n"
    )
    reports = run_session(parse_session(session))
    iso = reports[0]
    assert iso.result["verdict"] is True
    assert iso.result["inverse"] == {"e": "e + 1"}
    tor_rep = reports[1]
    assert tor_rep.result["numeric"] is True
    # F_2 is projective over F_2[e]/(e^2+e) = F_2 x F_2: higher Tor vanishes
    assert tor_rep.result["dims"][1:] == [0, 0]


def test_tor_command_rejects_infinite_sides():
    from frobforge.errors import EngineError

    session = (
        "p 2; ring R = [x]; ring S = [x]/(x^2);\n"
        "map f : R -> S = { x -> x };\n"
        "tor f f 2;\n"
    )
    with pytest.raises(EngineError) as e:
        run_session(parse_session(session))
    assert e.value.module == "homology"


def test_emit_text_format():
    reports = run_session(parse_session("p 2; ring S = [x]/(x^2); ring R = [x]; "
                                        "map f : R -> S = { x -> x }; check semiperfect f;"))
    text = emit_report(reports[0], "text").decode()
    assert text.startswith("==")
    assert "verdict: True" in text


def test_determinism_across_processes(tmp_path):
    session_file = tmp_path / "session.frob"
    session_file.write_text(SESSION)
    cmd = [sys.executable, "-m", "frobforge.workbench"]
    outs = []
    for i in range(2):
        json_out = tmp_path / f"out{i}.json"
        proc = subprocess.run(
            cmd + ["run", str(session_file), "--json", str(json_out)],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr.decode()
        outs.append((proc.stdout, json_out.read_bytes()))
    assert outs[0] == outs[1]
    parsed = json.loads(outs[0][1])
    for payload in parsed:
        jsonschema.validate(payload, REPORT_SCHEMA)


def test_cli_exit_codes(tmp_path):
    from frobforge.workbench import main

    bad = tmp_path / "bad.frob"
    bad.write_text("ring R = [x];")
    assert main(["run", str(bad)]) == 2
    missing = tmp_path / "does_not_exist.frob"
    assert main(["run", str(missing)]) == 1
    overflow = tmp_path / "overflow.frob"
    overflow.write_text("p 2; ring R = [x]; ring S = [x]/(x^2); "
                        "map f : R -> S = { x -> x }; tower f 40;")
    assert main(["run", str(overflow)]) == 2


def test_cli_false_verdict_still_exits_zero(tmp_path):
    from frobforge.workbench import main

    f = tmp_path / "s.frob"
    f.write_text("p 2; ring F = []; ring S = [x]; map f : F -> S = { }; "
                 "check semiperfect f;")
    assert main(["run", str(f)]) == 0


def test_budget_error_exit_two(tmp_path):
    from frobforge.workbench import main

    f = tmp_path / "s.frob"
    f.write_text("p 2; ring R = [x, y, z]/(x^3 + y*z, y^3 + x*z, z^3 + x*y); gb R;")
    # under lex the leading terms collide, forcing S-pair reductions
    assert main(["run", str(f), "--order", "lex", "--step-budget", "1"]) == 2
