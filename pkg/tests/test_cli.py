from __future__ import annotations

import json
import subprocess
import sys

import pytest

from smoothloc.catalog import chain
from smoothloc.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from smoothloc.corpus import is_isomorphic
from smoothloc.formats import MorphismSpec, emit_lattice, emit_morphism, parse_dot

N5 = "lattice N5\nelements 5\ncovers\n0 1\n1 2\n0 3\n2 4\n3 4\nend\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "C3.lat").write_text(emit_lattice(chain(3).poset, "C3"))
    (tmp_path / "C4.lat").write_text(emit_lattice(chain(4).poset, "C4"))
    (tmp_path / "N5.lat").write_text(N5)
    spec = MorphismSpec("inc", "C3", "C4", ((0, 0), (1, 2), (2, 3)))
    (tmp_path / "inc.mor").write_text(emit_morphism(spec))
    (tmp_path / "builtin.mor").write_text("morphism g from C4 to 2\nmap 0 0\nmap 1 1\nmap 2 1\nmap 3 1\n")
    return tmp_path


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys, files):
    code, out, _ = run(capsys, "validate", files / "C3.lat")
    assert code == EXIT_OK and "Heyting laws H1-H12 verified" in out
    code, _, err = run(capsys, "validate", files / "N5.lat")
    assert code == EXIT_FAIL and "NotDistributiveError" in err and "witness" in err


def test_usage_errors(capsys, files):
    assert run(capsys, "validate", files / "missing.lat")[0] == EXIT_USAGE
    (files / "bad.lat").write_text("lattice X\nelements 2\n")
    assert run(capsys, "validate", files / "bad.lat")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == EXIT_USAGE


def test_sublocales(capsys):
    code, out, _ = run(capsys, "sublocales", "C4", "--which", "smooth")
    assert code == EXIT_OK and out.startswith("8 smooth sublocales")
    code, out, _ = run(capsys, "sublocales", "C3")
    assert out.splitlines()[0].startswith("4 ")


def test_lc_and_bruns_lakser(capsys):
    code, out, _ = run(capsys, "lc", "C4")
    assert code == EXIT_OK and out.startswith("7 locally closed sublocales")
    code, out, _ = run(capsys, "bruns-lakser", "diamond")
    assert code == EXIT_OK and "AU(S) is a frame; verified" in out


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", "C4")
    assert code == EXIT_OK and "S_b ≅ AU(LC): 8 ↔ 8, verified" in out
    code, out, _ = run(capsys, "iso", "C3", "--flavor", "closed")
    assert "S_c ≅ AU(L): 3 ↔ 3, verified" in out


def test_lift(capsys, files):
    code, out, _ = run(capsys, "lift", files / "inc.mor")
    assert code == EXIT_OK and "lift exists; verified (frame-map, square, transport)" in out
    assert len(out.splitlines()) == 1 + 4
    for target in ("sc", "so", "s"):
        code, out, _ = run(capsys, "lift", files / "builtin.mor", "--target", target)
        assert code == EXIT_OK, out


def test_verify(capsys, files, tmp_path):
    out_path = tmp_path / "report.jsonl"
    code, out, _ = run(capsys, "verify", "--max-size", 4, "--out", out_path)
    assert code == EXIT_OK and " 0 failed" in out
    recs = [json.loads(line) for line in out_path.read_text().splitlines()]
    assert recs and {"id", "check", "status", "witness", "millis"} <= set(recs[0])
    code, out, _ = run(capsys, "verify", "--max-size", 3, "--fixture", files / "N5.lat")
    assert code == EXIT_FAIL and "FAIL N5" in out


def test_hasse_round_trip(capsys, files):
    code, out, _ = run(capsys, "hasse", files / "C4.lat")
    assert code == EXIT_OK and is_isomorphic(parse_dot(out), chain(4).poset)
    code, out, _ = run(capsys, "hasse", "C4", "--of", "smooth")
    assert parse_dot(out).n == 8
    code, out, _ = run(capsys, "hasse", "C3", "--of", "au-lc")
    assert parse_dot(out).n == 4


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "smoothloc", "iso", "C3"], capture_output=True, text=True)
    assert res.returncode == 0 and "4 ↔ 4" in res.stdout
