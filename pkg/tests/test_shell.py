import json
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from dgar.arengine import admissible_sequences, build_family, build_pencil
from dgar.dgalgebra import same_algebra, truncated_polynomial
from dgar.dgmodule import free_module
from dgar.exactla import GF
from dgar.shell.cli import main
from dgar.shell.documents import (
    DocumentError,
    algebra_digest,
    algebra_from_document,
    algebra_to_document,
    canonical_json,
    module_from_document,
    module_to_document,
)
from dgar.shell.dot import family_tree_dot, pencil_dot
from dgar.shell.fixtures import fixture, random_compact

ALGEBRAS = ["sphere:2", "prodspheres:2,2", "cp3", "exterior:3,5", "rigged:triangular", "rigged:g0235"]


@pytest.mark.parametrize("name", ALGEBRAS)
def test_algebra_document_round_trip(name):
    a = fixture(name)
    doc = algebra_to_document(a)
    text = canonical_json(doc)
    b = algebra_from_document(json.loads(text))
    assert same_algebra(a, b)
    assert canonical_json(algebra_to_document(b)) == text
    assert algebra_digest(a) == algebra_digest(b)


def test_prime_field_document_round_trip():
    a = truncated_polynomial(2, 3, field=GF(5))
    b = algebra_from_document(json.loads(canonical_json(algebra_to_document(a))))
    assert b.field.characteristic == 5
    assert same_algebra(a, b)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["sphere:2", "prodspheres:2,2", "exterior:3,5"]))
def test_module_document_round_trip(seed, name):
    m = random_compact(fixture(name), random.Random(seed), steps=2, summands=2)
    text = canonical_json(module_to_document(m))
    m2 = module_from_document(json.loads(text))
    assert m2.generators == m.generators
    assert canonical_json(module_to_document(m2)) == text
    assert m2.cohomology.dims == m.cohomology.dims


def test_document_errors_carry_pointers():
    doc = algebra_to_document(fixture("sphere:2"))
    doc["unit"] = ["1", "0"]
    with pytest.raises(DocumentError) as err:
        algebra_from_document(doc)
    assert err.value.pointer.startswith("/unit")
    mdoc = module_to_document(build_family(fixture("sphere:2"), (0,)).module)
    mdoc["coefficients"][0][2] = 7
    with pytest.raises(DocumentError) as err:
        module_from_document(mdoc)
    assert err.value.pointer == "/coefficients/0/2"


def test_family_tree_dot_has_five_leaves_and_is_stable():
    a = fixture("prodspheres:2,2")
    members = {al: build_family(a, al) for al in admissible_sequences(3)}
    text = family_tree_dot(members)
    leaves = [line for line in text.splitlines() if line.strip().startswith("C_") and len(line.split()[0]) == 5]
    assert len(leaves) == 5
    assert text.count("->") == 1 + 2 + 3 + 5 - 1
    again = family_tree_dot({al: build_family(a, al) for al in reversed(admissible_sequences(3))})
    assert again == text


def test_pencil_dot_lists_projective_points():
    a = fixture("prodspheres:2,2")
    pencils = {(a.field(1), a.field(0)): build_pencil(a, 2, (1, 0)),
               (a.field(1), a.field(1)): build_pencil(a, 2, (1, 1))}
    text = pencil_dot(free_module(a, [0]), pencils, fmt=a.field.format)
    assert "[1:0]" in text and "[1:1]" in text
    assert text.count("->") == 2


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cli_gorenstein(capsys):
    code, out = run_cli(capsys, "--json", "gorenstein", "sphere:2")
    doc = json.loads(out)
    assert code == 0
    assert doc["dimension"] == 2
    assert len(doc["provenance"]["algebra_digest"]) == 64
    code, _ = run_cli(capsys, "gorenstein", "rigged:nongorenstein")
    assert code == 1


def test_cli_f_of_family(capsys):
    code, out = run_cli(capsys, "--json", "f", "family", "prodspheres:2,2", "--alpha", "0,1,0")
    assert code == 0
    assert json.loads(out)["results"][0]["f"] == 4


def test_cli_separate_pencils(capsys):
    code, out = run_cli(capsys, "separate", "pencil", "prodspheres:2,2", "--lambda", "1,0", "--lambda", "0,1")
    assert code == 0
    assert "DifferentComponents" in out


def test_cli_exit_codes(capsys):
    assert run_cli(capsys, "f", "augmentation", "sphere:2", "--cutoff", "4")[0] == 3
    assert run_cli(capsys, "iso", "free", "sphere:3", "--shift", "0", "--shift", "2")[0] == 1
    assert run_cli(capsys, "iso", "pencil", "prodspheres:2,2", "--lambda", "1,2", "--lambda", "2,4")[0] == 0
    assert run_cli(capsys, "gorenstein", "nosuch:1")[0] == 2
    assert run_cli(capsys, "family", "prodspheres:2,2", "--alpha", "1,1")[0] == 2
    assert run_cli(capsys, "level", "family", "sphere:2", "--alpha", "0,0")[0] == 0
    assert run_cli(capsys, "frobnicate")[0] == 2


def test_cli_reads_documents(tmp_path, capsys):
    mod = build_family(fixture("sphere:2"), (0,)).module
    path = tmp_path / "c1.json"
    path.write_text(canonical_json(module_to_document(mod)))
    code, out = run_cli(capsys, "--json", "f", "module", str(path))
    assert code == 0 and json.loads(out)["results"][0]["f"] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run_cli(capsys, "--json", "validate", str(bad))
    assert code == 2
    assert json.loads(out)["pointer"] == "/"


def test_cli_family_with_endo_recursion(capsys):
    code, out = run_cli(capsys, "--json", "family", "rigged:g0235", "--e", "3", "--alpha", "1,0,1", "--check-endo")
    assert code == 0
    doc = json.loads(out)["results"][0]
    assert [r["dim_end"] for r in doc["endo_recursion"]] == [2, 2, 3]


def test_cli_parallel_jobs_match_serial(capsys):
    argv = ["f", "family", "sphere:2", "--alpha", "0", "--alpha", "0,0", "--alpha", "0,0,0"]
    serial = run_cli(capsys, "--json", *argv)
    parallel = run_cli(capsys, "--json", "--jobs", "2", *argv)
    assert serial == parallel


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "dgar", "gorenstein", "sphere:2"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "dimension 2" in out.stdout
