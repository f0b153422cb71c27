import json
import subprocess
import sys
from pathlib import Path

import pytest

from petalknots.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines()]


class TestInvariants:
    def test_three_petals(self, capsys):
        code, out, _ = run(capsys, "tb", "1,3,2")
        assert code == 0
        assert out == '{"n":3,"k":1,"sigma_sum":-1,"tb":-2,"rot":1}\n'

    def test_one_petal(self, capsys):
        assert run(capsys, "tb", "1")[1] == '{"n":1,"k":1,"tb":-1,"rot":0}\n'

    def test_rot_alias(self, capsys):
        assert records(run(capsys, "rot", "1,4,2,5,3")[1]) == [
            {"n": 5, "k": 2, "sigma_sum": -4, "tb": -6, "rot": 1}
        ]

    def test_explicit_twists(self, capsys):
        rec = records(run(capsys, "tb", "1,3,2", "--twists", "2,0,0")[1])[0]
        assert (rec["k"], rec["tb"], rec["rot"]) == (2, -3, 0)

    def test_mirror_convention_reports_same_numbers(self, capsys):
        a = run(capsys, "tb", "1,3,2")[1]
        b = run(capsys, "tb", "1,3,2", "--convention", "mirror")[1]
        assert a == b

    @pytest.mark.parametrize("arg", ["1,2", "1,1,2", "2,3,4", "x"])
    def test_bad_permutations(self, capsys, arg):
        code, out, err = run(capsys, "tb", arg)
        assert code == 1 and out == "" and err

    def test_pretty(self, capsys):
        out = run(capsys, "tb", "1,3,2", "--pretty")[1]
        assert out.splitlines()[0].split() == ["n", "3"]


class TestExpand:
    @pytest.mark.parametrize("heights", ["1", "1,3,2", "1,4,2,5,3"])
    @pytest.mark.parametrize("fmt", ["pd", "gauss"])
    def test_golden(self, capsys, heights, fmt):
        out = run(capsys, "expand", heights, "--format", fmt)[1]
        assert out == (FIXTURES / f"expand_{heights.replace(',', '-')}.{fmt}").read_text()

    def test_output_file(self, capsys, tmp_path):
        dest = tmp_path / "knot.pd"
        assert run(capsys, "expand", "1,3,2", "-o", str(dest))[0] == 0
        assert dest.read_text() == (FIXTURES / "expand_1-3-2.pd").read_text()

    def test_unwritable(self, capsys, tmp_path):
        assert run(capsys, "expand", "1,3,2", "-o", str(tmp_path / "no" / "x.pd"))[0] == 1


class TestRender:
    @pytest.mark.parametrize("heights", ["1", "1,4,2,5,3"])
    def test_golden(self, capsys, tmp_path, heights):
        dest = tmp_path / "out.svg"
        assert run(capsys, "render", heights, "-o", str(dest))[0] == 0
        assert dest.read_text() == (FIXTURES / f"petal_{heights.replace(',', '-')}.svg").read_text()

    def test_labels(self, capsys):
        assert 'class="label"' in run(capsys, "render", "1,3,2", "--labels")[1]


class TestIdentify:
    def test_unknot(self, capsys):
        rec = records(run(capsys, "identify", "1,3,2")[1])[0]
        assert rec["determinant"] == 1 and rec["candidate_names"] == ["unknot"]

    def test_trefoils(self, capsys):
        right = records(run(capsys, "identify", "1,3,5,2,4")[1])[0]
        left = records(run(capsys, "identify", "1,4,2,5,3")[1])[0]
        assert right["determinant"] == left["determinant"] == 3
        assert right["candidate_names"] == ["right trefoil"]
        assert left["candidate_names"] == ["left trefoil"]


class TestSearch:
    def test_bound(self, capsys):
        code, out, _ = run(capsys, "search", "--n", "5", "--mode", "bound")
        rec = records(out)[0]
        assert code == 0 and rec["bound_satisfied"] and "runtime" not in rec

    def test_timing_flag(self, capsys):
        rec = records(run(capsys, "search", "--n", "5", "--timing")[1])[0]
        assert rec["runtime"] >= 0

    def test_histogram(self, capsys):
        rec = records(run(capsys, "search", "--n", "3", "--mode", "histogram")[1])[0]
        assert rec["histogram"] == {"-2": 1, "-1": 1}

    def test_too_large(self, capsys):
        assert run(capsys, "search", "--n", "13")[0] == 1

    def test_even(self, capsys):
        assert run(capsys, "search", "--n", "4")[0] == 1

    def test_lambda_audit(self, capsys):
        rows = records(run(capsys, "search", "--n", "7", "--mode", "lambda-audit")[1])
        assert [r["claimed_tb"] for r in rows] == [0, 2, 6]
        assert [r["computed_tb"] for r in rows] == [-2, -6, -12]

    def test_squares(self, capsys):
        code, out, _ = run(capsys, "search", "--n", "7", "--mode", "squares")
        assert code == 0 and records(out)[0]["violations"] == 0

    def test_conformance(self, capsys):
        code, out, _ = run(capsys, "search", "--n", "5", "--mode", "conformance")
        rec = records(out)[0]
        assert code == 0 and rec["all_agree"]


class TestFront:
    def test_rainbow(self, capsys):
        rec = records(run(capsys, "front", "--n", "3", "--closures", "rainbow")[1])[0]
        assert rec["components"] == 2 and rec["verdict"] == "link"

    def test_all(self, capsys):
        code, out, _ = run(capsys, "front", "--n", "4")
        rows = records(out)
        assert code == 0 and len(rows) == 14
        assert all(r["consistent"] for r in rows)


class TestUsage:
    def test_unknown_flag(self, capsys):
        code, _, err = run(capsys, "tb", "1,3,2", "--bogus")
        assert code == 1 and "--bogus" in err

    def test_no_command(self, capsys):
        assert run(capsys)[0] == 1

    def test_bad_mode(self, capsys):
        assert run(capsys, "search", "--n", "5", "--mode", "fastest")[0] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["tb", "1,4,2,5,3"],
        ["expand", "1,4,7,3,6,2,5"],
        ["render", "1,3,5,2,4", "--labels"],
        ["identify", "1,3,5,2,4"],
        ["search", "--n", "7", "--mode", "max"],
        ["front", "--n", "5"],
    ],
)
def test_repeatable(capsys, argv):
    assert run(capsys, *argv) == run(capsys, *argv)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "petalknots", "tb", "1,3,2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == '{"n":3,"k":1,"sigma_sum":-1,"tb":-2,"rot":1}\n'
