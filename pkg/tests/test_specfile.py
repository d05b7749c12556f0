import pytest

from symaction.analyze import analyze
from symaction.specfile import SpecError, build_action, classical_by_name, load_action, parse_spec


def spec(*lines):
    return "\n".join(("action-spec 1",) + lines) + "\n"


def test_parse_fields_and_comments():
    s = parse_spec(spec("# comment", "builder: sigma   # trailing", "algebra: su(3)", "n: 2",
                        "seed: 9", "tol: 1e-7"))
    assert s.builder == "sigma"
    assert s.fields["n"] == 2 and s.seed == 9
    assert s.tol.rel_eps == 1e-7
    assert s.lines["algebra"] == 4


@pytest.mark.parametrize("text,line", [
    ("nope\n", 1),
    (spec("builder: hermann", "builder: sigma"), 3),
    (spec("builder: magic"), 2),
    (spec("builder: sigma", "n: zero"), 3),
    (spec("builder: sigma", "n: 0"), 3),
    (spec("builder: sigma", "tol: 1e-12 1e-6"), 3),
    (spec("builder: chain", "reduce: middle"), 3),
    (spec("builder: hermann", "just words"), 3),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_missing_builder():
    with pytest.raises(SpecError, match="builder"):
        parse_spec(spec("name: x"))


def test_build_errors_point_at_key():
    s = parse_spec(spec("builder: hermann", "tau: BDI(3,1)", "sigma: XX(3)"))
    with pytest.raises(SpecError) as exc:
        build_action(s)
    assert exc.value.line == 4
    with pytest.raises(SpecError, match="needs 'tau'"):
        build_action(parse_spec(spec("builder: hermann", "sigma: BDI(3,1)")))


def test_classical_names():
    assert classical_by_name("so(5)").dim == 10
    with pytest.raises(ValueError):
        classical_by_name("e8")


@pytest.mark.parametrize("fname,expected", [
    ("hermann_sphere.spec", (1, True)),
    ("sigma_su3.spec", (2, True)),
    ("chain_su3_reduced.spec", (1, True)),
    ("custom_diag_so3.spec", (1, True)),
    ("custom_torus_s2.spec", (3, False)),
])
def test_shipped_specs(specs_dir, fname, expected):
    A, s = load_action(specs_dir / fname)
    rep = analyze(A, seed=s.seed or 0)
    assert (rep.cohomogeneity, rep.hyperpolar) == expected


def test_chain_with_embeddings(fixtures_dir):
    A, _ = load_action(fixtures_dir / "chain_embedding.spec")
    assert A.dim == 15 + 14
    # G2 and SO(6) together move SO(7) transitively
    rep = analyze(A)
    assert rep.cohomogeneity == 0 and rep.hyperpolar


@pytest.mark.parametrize("fname,needle", [
    ("malformed_header.spec", "header"),
    ("unknown_key.spec", "unknown key"),
    ("bad_matrix.spec", "expected 9 entries"),
    ("not_closed.spec", "do not define an action"),
])
def test_bad_fixtures(fixtures_dir, fname, needle):
    with pytest.raises(SpecError, match=needle):
        load_action(fixtures_dir / fname)


def test_missing_file(tmp_path):
    with pytest.raises(SpecError, match="cannot read"):
        load_action(tmp_path / "absent.spec")


def test_catalog_builder_and_rename():
    A = build_action(parse_spec(spec("builder: catalog", "action: ex3-spin7-diagonal", "name: renamed")))
    assert A.name == "renamed"
    with pytest.raises(SpecError):
        build_action(parse_spec(spec("builder: catalog", "action: nothing")))


def test_custom_block_errors():
    with pytest.raises(SpecError, match="no block"):
        build_action(parse_spec(spec("builder: custom", "factor: typeI BDI(2,1)",
                                     "subalgebra: 0.left <- so(3)")))
    with pytest.raises(SpecError, match="has size"):
        build_action(parse_spec(spec("builder: custom", "factor: typeI BDI(2,1)",
                                     "subalgebra: 0.g <- so(4)")))
    A = build_action(parse_spec(spec("builder: custom", "factor: typeII su(2)",
                                     "subalgebra: 0.left <- fix(AI(2))")))
    assert A.dim == 1
