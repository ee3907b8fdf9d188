"""
End-to-end tests for the ``ptv`` command line: golden outputs and exit codes.
"""
import pytest
from click.testing import CliRunner

from conftest import DATA_DIR, GOLDEN_DIR, TWO_STEP_IMP
from ptvalidity.cli import cli


def run(*args: str):
    return CliRunner().invoke(cli, [str(a) for a in args])


def data(name: str) -> str:
    return str(DATA_DIR / name)


GOLDEN_CASES = [
    ("entails_toy1.txt", 0,
     ["entails", "--system", data("toy1.sys"), "--assume", "p", "--formula", "q | r"]),
    ("entails_toy2.txt", 1,
     ["entails", "--system", data("toy2.sys"), "--assume", "p", "--formula", "q | r"]),
    ("translate_rule.txt", 0, ["translate", "--rule", "(p, (q => s) => r)"]),
    ("translate_formula.txt", 0, ["translate", "--formula", "p & (p -> q) -> r & s"]),
    ("derive_pq.txt", 0, ["derive", "--base", data("pq.base"), "--goal", "q", "--certificate"]),
    ("ipc_excluded_middle.txt", 1, ["ipc", "--formula", "p | ~p", "--countermodel"]),
    ("normalize_detour.txt", 0, ["normalize", "--arg", data("detour.sx")]),
    ("check_toy2.txt", 1,
     ["check", "--system", data("toy2.sys"), "--base", "0", "--formula", "p -> q | r",
      "--certificate"]),
    ("argcheck_example1.txt", 0,
     ["argcheck", "--system", data("toy1.sys"), "--arg", data("example1.sx")]),
    ("search_toy1.txt", 0,
     ["search", "--system", data("toy1.sys"), "--max-depth", "2", "--max-formulas", "1"]),
    ("harrop_p.txt", 0, ["harrop", "--system", data("harrop.sys"), "--antecedent", "p"]),
    ("report_findings.txt", 0, ["report", "--findings", data("findings.csv")]),
]


@pytest.mark.parametrize("golden,code,args", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden_output(golden, code, args):
    result = run(*args)
    assert result.exit_code == code, result.output
    assert result.stdout == (GOLDEN_DIR / golden).read_text(encoding="utf-8")


class TestConfiguration:
    def test_settings_file_is_echoed(self):
        result = run("--config", data("settings.env"), "ipc", "--formula", "p -> p")
        lines = result.stdout.splitlines()
        assert "# policy: atom" in lines
        assert "# universe-cap: 12" in lines
        assert result.exit_code == 0

    def test_flags_override_the_settings_file(self):
        result = run(
            "--config", data("settings.env"), "--policy", "explosion", "ipc", "--formula", "p"
        )
        assert "# policy: explosion" in result.stdout.splitlines()

    def test_bad_settings_file(self, tmp_path):
        path = tmp_path / "bad.env"
        path.write_text("PTV_POLICY=maybe\n", encoding="utf-8")
        result = run("--config", path, "ipc", "--formula", "p")
        assert result.exit_code == 2
        assert "SystemFileError" in result.output


class TestCheck:
    def test_all_bases_depends_on_policy(self):
        args = ["check", "--system", data("level1_p.sys"), "--all-bases", "--formula", "~~p -> p"]
        result = run(*args)
        assert result.exit_code == 0
        assert result.stdout.splitlines()[-1] == "valid"

        result = run("--policy", "atom", *args)
        assert result.exit_code == 1
        assert result.stdout.splitlines()[-2:] == ["failing base: {}", "invalid"]

    def test_optimized_needs_a_generated_system(self):
        result = run("check", "--system", data("toy1.sys"), "--optimized", "--formula", "p")
        assert result.exit_code == 2
        assert "SystemKindError" in result.output

    def test_optimized_on_a_generated_system(self):
        result = run(
            "check", "--system", data("level1_pq.sys"), "--optimized", "--all-bases",
            "--formula", "~~p -> p",
        )
        assert result.exit_code == 0

    def test_atom_outside_the_system(self):
        result = run("check", "--system", data("level1_p.sys"), "--all-bases", "--formula", "q -> q")
        assert result.exit_code == 2
        assert "AtomOutsideSystem" in result.output

    def test_base_out_of_range(self):
        result = run("check", "--system", data("toy1.sys"), "--base", "7", "--formula", "p")
        assert result.exit_code == 2
        assert "BaseNotInSystem" in result.output


class TestRules:
    def test_translate_needs_exactly_one_input(self):
        assert run("translate").exit_code == 2
        assert run("translate", "--rule", "p", "--formula", "p").exit_code == 2

    def test_translate_rejects_disjunction(self):
        result = run("translate", "--formula", "p | q")
        assert result.exit_code == 2
        assert "DisjunctionPresent" in result.output

    def test_derive_needs_an_atomic_goal(self):
        assert run("derive", "--base", data("pq.base"), "--goal", "p & q").exit_code == 2

    def test_derive_bot_depends_on_policy(self):
        args = ["derive", "--base", data("falsum.base"), "--goal", "bot"]
        assert run(*args).exit_code == 1
        result = run("--policy", "atom", *args)
        assert result.exit_code == 0
        assert result.stdout.splitlines()[-1] == "derivable"


class TestArguments:
    def test_argcheck_open_argument(self):
        result = run("argcheck", "--system", data("toy1.sys"), "--arg", data("example1.sx"))
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert "# closed: false" in lines
        assert lines[-1] == "valid"

    def test_normalize_out_of_fuel(self, tmp_path):
        path = tmp_path / "two.sx"
        path.write_text(TWO_STEP_IMP, encoding="utf-8")
        result = run("normalize", "--arg", path, "--fuel", "1")
        assert result.exit_code == 2
        assert "ran out of fuel after 1 steps" in result.output

    def test_normalize_refuses_ill_formed_arguments(self, tmp_path):
        path = tmp_path / "bad.sx"
        path.write_text("(andI p & q (assume a p))", encoding="utf-8")
        result = run("normalize", "--arg", path)
        assert result.exit_code == 2
        assert "IllFormed" in result.output


class TestExplorer:
    def test_ipc_theorem(self):
        result = run("ipc", "--formula", "p -> p")
        assert result.exit_code == 0
        assert result.stdout.splitlines()[-1] == "provable"

    def test_search_and_report(self, tmp_path):
        args = ["search", "--system", data("toy1.sys"), "--max-depth", "2", "--max-formulas", "1"]
        result = run(*args)
        assert result.exit_code == 0
        assert "# examined: 1" in result.stdout.splitlines()
        assert result.stdout.splitlines()[-1].startswith("p -> q | r  toy1")

        out = tmp_path / "found.csv"
        result = run(*args, "--format", "csv", "--output", out)
        assert result.exit_code == 0
        assert out.read_text(encoding="utf-8").splitlines()[1] == "p -> q | r,toy1,true,false,explosion,3"

        result = run("report", "--findings", out)
        assert result.exit_code == 0
        assert "# findings: 1" in result.stdout.splitlines()

    def test_harrop(self):
        result = run("harrop", "--system", data("harrop.sys"), "--antecedent", "p")
        assert result.exit_code == 0
        assert result.stdout.splitlines()[-1].split() == ["p", "{p}", "valid"]

    def test_harrop_negations(self):
        args = ["harrop", "--system", data("harrop.sys"), "--antecedent", "~p"]
        assert run(*args).exit_code == 2
        result = run(*args, "--negations")
        assert result.stdout.splitlines()[-1].split()[:2] == ["~p", "-"]
