import json
import subprocess
import sys
from pathlib import Path

import pytest

from srquotient.cli import main
from srquotient.poset import FinitePoset

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_delta(capsys):
    code, out, _ = run(capsys, "delta", DATA / "re_a.json")
    assert code == 0
    assert out["delta"] == 5
    assert [b["delta"] for b in out["bases"]] == [5, 5, 5, 5]


def test_tutte_of_empty(capsys):
    code, out, _ = run(capsys, "tutte", DATA / "empty.json")
    assert code == 0 and out["pretty"] == "1"


def test_tutte_re_a(capsys):
    _, out, _ = run(capsys, "tutte", DATA / "re_a.json")
    assert out["pretty"] == "x^3 + x^2 + 25*x + 25*y + 48"


def test_polys(capsys):
    _, out, _ = run(capsys, "polys", DATA / "re_a.json")
    assert out["h_independence"]["coefficients"] == [1, 1, 25, 73]
    _, out, _ = run(capsys, "polys", DATA / "twin_triangles.json")
    assert out["f_vector"] == [1, 3, 4, 2] and out["h"]["coefficients"] == [1, 0, 1]


def test_cm_check_default_chars(capsys):
    code, out, _ = run(capsys, "cm-check", DATA / "re_a.json")
    assert code == 1
    by_char = {r["characteristic"]: r for r in out["results"]}
    assert sorted(by_char) == [0, 5]
    assert by_char[0]["cm"] and not by_char[5]["cm"]
    assert by_char[5]["witness"] == ["0^", "1^"]


def test_cm_check_good_chars(capsys):
    code, out, _ = run(capsys, "cm-check", "--chars", "0,2,3", DATA / "re_a.json")
    assert code == 0 and all(r["cm"] for r in out["results"])


def test_homology(capsys):
    _, out, _ = run(capsys, "homology", "--chars", "5", DATA / "re_a.json")
    assert out["integral"]["1"] == {"rank": 0, "torsion": [5]}
    assert out["char_5"]["1"] == 1


def test_layers_round_trip(capsys, tmp_path):
    dest = tmp_path / "layers.json"
    code, out, _ = run(capsys, "layers", "--output", dest, DATA / "re_a.json")
    assert code == 0 and out is None
    data = json.loads(dest.read_text())
    P = FinitePoset.from_dict(data)
    assert len(P) == 60
    # re-running on the emitted poset reproduces the same derived data
    code, again, _ = run(capsys, "polys", dest)
    assert again["chi"]["coefficients"] == [-75, 30, -4, 1]


def test_face_ring(capsys):
    code, out, _ = run(capsys, "face-ring", "--degree", "4", DATA / "twin_triangles.json")
    assert code == 0 and out["hilbert"]["values"] == [1, 3, 7, 13, 21]


def test_quotient_and_invariants(capsys):
    _, out, _ = run(capsys, "quotient", DATA / "nonagon.json")
    assert out["translative"] and out["quotient_simplicial"] and out["group_order"] == 3
    code, out, _ = run(capsys, "invariants-check", "--degree", "4", DATA / "nonagon.json")
    assert code == 0 and out["quotient_hilbert"] == [1, 3, 6, 9, 12]


def test_shelling(capsys):
    code, out, _ = run(capsys, "shelling", DATA / "k33.json")
    assert code == 0 and out["verified"] and len(out["order"]) == 9


def test_complex_cm_failure(capsys):
    code, out, _ = run(capsys, "cm-check", DATA / "bowtie.json")
    assert code == 1 and out["results"][0]["witness"] == ["c"]


@pytest.mark.parametrize("content,needle", [
    ("{oops", "malformed JSON"),
    ('{"d": "three", "matrix": []}', "schema violation"),
    ('[1, 2]', "schema violation"),
])
def test_input_errors(capsys, tmp_path, content, needle):
    f = tmp_path / "in.json"
    f.write_text(content)
    code, out, err = run(capsys, "tutte", f)
    assert code == 2 and out is None and needle in err


def test_guardrail_and_preconditions(capsys, tmp_path):
    code, _, err = run(capsys, "face-ring", "--degree", "13", DATA / "twin_triangles.json")
    assert code == 2 and "guardrail" in err
    code, _, err = run(capsys, "cm-check", "--chars", "4", DATA / "re_a.json")
    assert code == 2 and "primes" in err
    f = tmp_path / "flat.json"
    f.write_text('{"d": 2, "matrix": [[1, 2], [1, 2]]}')
    code, _, err = run(capsys, "delta", "--essential-required", f)
    assert code == 2 and "NotEssential" in err
    code, _, err = run(capsys, "face-ring", DATA / "re_a.json")
    assert code == 2 and "expected poset" in err
    code, _, err = run(capsys, "tutte", tmp_path / "missing.json")
    assert code == 2 and "cannot read" in err


def test_sample_is_deterministic(capsys):
    _, a, _ = run(capsys, "sample", "--seed", "11")
    _, b, _ = run(capsys, "sample", "--seed", "11")
    assert a == b and "matrix" in a


def test_module_entry_point_byte_identical():
    cmd = [sys.executable, "-m", "srquotient", "independence", str(DATA / "re_a.json")]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and len(json.loads(first)["elements"]) == 135
