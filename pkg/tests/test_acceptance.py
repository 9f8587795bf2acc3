"""Acceptance suite: one pass/fail line per criterion (run with -s to see them)."""

import functools
import json
import random
import subprocess
import sys
import time

import jsonschema

from frobforge.algebra import AlgebraMap, is_isomorphism, relative_frobenius
from frobforge.groebner import Ideal, frobenius_power_ideal, normal_form, reduced_groebner
from frobforge.homology import algebra_as_module, frobenius_pushforward, tor
from frobforge.oracle import oracle_ideal_membership, oracle_subring_closure
from frobforge.pipeline import factorize, find_p_basis, is_relatively_perfect, is_relatively_semiperfect
from frobforge.polyring import GREVLEX, LEX
from frobforge.tower import cofinality_bound, detect_stabilization, gabber_stage, tower_stage
from frobforge.workbench import REPORT_SCHEMA

from . import corpus


def criterion(number, title):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"FAIL  criterion {number:02d}: {title}")
                raise
            print(f"PASS  criterion {number:02d}: {title}")
        return wrapper
    return deco


@criterion(1, "semiperfectness agrees with the subring-closure oracle on 50 random maps")
def test_criterion_01_semiperfect_vs_oracle():
    start = time.monotonic()
    maps = corpus.random_artinian_maps(50)
    assert len(maps) >= 50
    for psi in maps:
        assert is_relatively_semiperfect(psi).holds == oracle_subring_closure(psi)
    assert time.monotonic() - start < 60.0


@criterion(2, "factorization certificates validate on the curated suite")
def test_criterion_02_factorization_suite():
    start = time.monotonic()
    suite = corpus.curated_factorization_maps()
    assert len(suite) >= 10
    for name, f in suite:
        cert = factorize(f, 3)
        assert cert.composition_ok, name
        # the base extension is free of finite type by construction: the
        # inclusion adjoins finitely many fresh polynomial variables
        assert cert.base_inclusion.domain.relations.gens == f.domain.relations.gens, name
        assert len(cert.adjoined) < 8, name
        assert cert.target_surjective, name
        if cert.stabilized:
            assert cert.middle_index <= 2, name
            assert cert.middle_perfect is not None and cert.middle_perfect.holds, name
        else:
            assert cert.truncated and cert.truncated_verified, name
        assert cert.validate(), name
    assert time.monotonic() - start < 120.0


@criterion(3, "explicit stages match tower stages over polynomial bases")
def test_criterion_03_gabber_stages():
    cases = corpus.gabber_cases()
    assert len(cases) >= 5
    for name, f, gens in cases:
        for k in (1, 2, 3):
            ts = tower_stage(f, k)
            G = gabber_stage(f, gens, k)
            assert G.ring.nvars == ts.stage.ring.nvars, name
            ren = ts.stage.ring
            renamed = [g.substitute(ren, list(ren.gens())) for g in G.relations.gens]
            lhs = reduced_groebner(ts.stage.relations)
            rhs = reduced_groebner(Ideal(ren, tuple(renamed)))
            assert lhs == rhs, (name, k)


@criterion(4, "tower stages of surjections match bracket-power quotients")
def test_criterion_04_quotient_tower_identity():
    from frobforge.tower import quotient_tower_stage

    cases = corpus.quotient_surjections()
    assert len(cases) >= 5
    for f, I, R in cases:
        S = f.codomain
        p = S.field.p
        for n in (1, 2, 3):
            ts = tower_stage(f, n)
            Q = quotient_tower_stage(R, I, n)
            q = p**n
            # S shares its variable names with R in this corpus
            imgs = [Q.ring.var(name) ** q for name in S.names] + list(Q.gens())
            cmp_map = AlgebraMap(ts.stage, Q, tuple(imgs))
            ok, _ = is_isomorphism(cmp_map)
            assert ok


@criterion(5, "bounded Tor vanishes against the pushforward for perfect maps")
def test_criterion_05_automatic_tor_independence():
    checked = 0
    for name, f in corpus.perfectness_corpus() + corpus.curated_factorization_maps():
        ok, _ = is_isomorphism(relative_frobenius(f))
        if not ok:
            continue
        M = algebra_as_module(f)
        if M is None:
            continue
        res = tor(M, frobenius_pushforward(f.domain), 3)
        if not res.numeric:
            continue
        checked += 1
        assert res.dims[1:] == [0, 0, 0], name
    assert checked >= 5


@criterion(6, "p-basis search: plane basis found, cusp obstruction reported")
def test_criterion_06_p_basis():
    start = time.monotonic()
    for p in (2, 3):
        S = corpus.free(p, "x", "y")
        res = find_p_basis(AlgebraMap(corpus.free(p), S, []))
        assert res.success and set(res.basis_names) == {"x", "y"}
        assert res.certificate.holds
    S5 = corpus.quot(5, ("x", "y"), lambda x, y: [y**2 - x**3])
    res = find_p_basis(AlgebraMap(corpus.free(5), S5, []))
    assert not res.success
    assert set(map(str, reduced_groebner(Ideal(S5.ring, res.obstruction.gens)))) == {"x^2", "y"}
    assert time.monotonic() - start < 10.0


@criterion(7, "finite separable and Artin-Schreier extensions are relatively perfect")
def test_criterion_07_etale_implies_perfect():
    assert is_relatively_perfect(AlgebraMap(corpus.free(2), corpus.f4(), [])).holds
    assert is_relatively_perfect(corpus.artin_schreier()).holds


@criterion(8, "fixed ideals stabilize at stage zero and give perfect quotients")
def test_criterion_08_fixed_ideals():
    E = corpus.idempotent_line()
    rep = detect_stabilization(E, Ideal(E.ring, (E.gens()[0],)), 3)
    assert rep.stabilized and rep.index == 0
    F2 = corpus.free(2)
    assert is_relatively_perfect(AlgebraMap(E, F2, [F2.ring.zero()])).holds


@criterion(9, "cofinality bounds sandwich the bracket-power filtration")
def test_criterion_09_completion_cofinality():
    import itertools

    from frobforge.groebner import ideal_contains

    cases = corpus.cofinality_cases()
    assert len(cases) >= 5
    for R, I, n in cases:
        p = R.field.p
        q = p**n
        r = len(I.gens)
        m = cofinality_bound(R, I, n)
        cap = r * (q - 1) + 1
        assert m <= cap
        bracket = frobenius_power_ideal(I, n)
        for combo in itertools.combinations_with_replacement(I.gens, m):
            g = R.ring.one()
            for h in combo:
                g = g * h
            assert bracket.normal_form(g).is_zero()
        power_gens = []
        for combo in itertools.combinations_with_replacement(I.gens, q):
            g = R.ring.one()
            for h in combo:
                g = g * h
            power_gens.append(g)
        assert ideal_contains(Ideal(R.ring, tuple(power_gens)), bracket)
    # the pigeonhole cap is attained for two generators at p = 2, n = 1
    Rxy = corpus.free(2, "x", "y")
    x, y = Rxy.gens()
    assert cofinality_bound(Rxy, Ideal(Rxy.ring, (x, y)), 1) == 3


@criterion(10, "engine soundness: membership oracle, basis uniqueness, CLI determinism")
def test_criterion_10_engine_soundness(tmp_path):
    rng = random.Random(41)
    # normal-form membership vs linear-algebra membership on Artinian quotients
    checked = 0
    for psi in corpus.random_artinian_maps(12, seed=77):
        I = psi.codomain.relations
        ring = psi.codomain.ring
        if ring.nvars == 0 or ring.nvars > 2:
            continue
        for _ in range(4):
            f = ring.from_terms(
                {tuple(rng.randint(0, 3) for _ in range(ring.nvars)): rng.randint(0, ring.field.p - 1)
                 for _ in range(3)})
            assert oracle_ideal_membership(f, I) == normal_form(f, I).is_zero()
            checked += 1
    assert checked >= 20
    # permutation invariance and idempotence of reduced bases
    ring = corpus.free(2, "x", "y", "z").ring
    x, y, z = ring.gens()
    gens = [x**2 * y + z, y**2 + x, x * z + y**3, x + y + z]
    reference = None
    for _ in range(3):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        for order in (GREVLEX, LEX):
            basis = reduced_groebner(Ideal(ring, tuple(shuffled)), order)
            key = (order.kind,)
            if reference is None or key not in reference:
                reference = reference or {}
                reference[key] = basis
            assert reference[key] == basis
            assert reduced_groebner(Ideal(ring, basis), order) == basis
    # CLI byte-determinism and schema validity across two consecutive runs
    session = tmp_path / "session.frob"
    session.write_text(
        "p 2;\nring R = [x];\nring S = [x]/(x^2);\nmap f : R -> S = { x -> x };\n"
        "ring E = [e]/(e^2 + e);\nring F = [];\nmap q : E -> F = { e -> 0 };\n"
        "gb S;\ncheck semiperfect f;\ntower f 2;\nfactorize q 3;\ncofinal R (x) 1;\n")
    runs = []
    for i in range(2):
        out = tmp_path / f"reports{i}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "frobforge.workbench", "run", str(session),
             "--json", str(out)],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr.decode()
        runs.append((proc.stdout, out.read_bytes()))
    assert runs[0] == runs[1]
    for payload in json.loads(runs[0][1]):
        jsonschema.validate(payload, REPORT_SCHEMA)
