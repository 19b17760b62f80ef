import os
import subprocess
import sys

from conekit.cli import main
from conekit.fileio import write_result_files
from conekit.problems import ComputationOptions, compute_cone, input_system

PLANE_INPUT = "2\n2\n0 1\n2 3\n0\n"


def write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def slurp(path):
    with open(path) as fh:
        return fh.read()


def plane_in(tmp_path):
    path = str(tmp_path / "plane.in")
    write(path, PLANE_INPUT)
    return path


class TestCompute:
    def test_golden_run(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        assert main(["compute", path, "--allf", "--hilb"]) == 0
        out = capsys.readouterr().out
        assert "3 Hilbert basis elements" in out
        assert "integer index = 2" in out
        assert slurp(str(tmp_path / "plane.gen")) == "3 2\n0 1\n1 2\n2 3\n"
        inv = slurp(str(tmp_path / "plane.inv"))
        assert "vector 2 homogeneous_weights = -1 1" in inv
        assert "vector 2 h_vector = 1 1" in inv
        assert "vector 2 hilbert_polynomial = 1 2" in inv
        assert slurp(str(tmp_path / "plane.sup")) in ("2 2\n-3 2\n1 0\n", "2 2\n1 0\n-3 2\n")

    def test_matches_library_bytes(self, tmp_path):
        path = plane_in(tmp_path)
        assert main(["compute", path, "--allf", "--hilb"]) == 0
        mirror = tmp_path / "mirror"
        mirror.mkdir()
        rc = compute_cone(
            input_system([(((0, 1), (2, 3)), 0)], 2),
            ComputationOptions(all_computations=True, hilb=True),
        )
        write_result_files(rc, str(mirror / "plane"))
        for name in os.listdir(str(mirror)):
            assert slurp(str(mirror / name)) == slurp(str(tmp_path / name))

    def test_rerun_is_byte_identical(self, tmp_path):
        path = plane_in(tmp_path)
        assert main(["compute", path, "--allf"]) == 0
        before = {
            name: slurp(str(tmp_path / name))
            for name in os.listdir(str(tmp_path))
        }
        assert main(["compute", path, "--allf"]) == 0
        for name, text in before.items():
            assert slurp(str(tmp_path / name)) == text

    def test_outdir(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        outdir = str(tmp_path / "runs")
        assert main(["compute", path, "--outdir", outdir]) == 0
        capsys.readouterr()
        assert sorted(os.listdir(outdir)) == ["plane.gen", "plane.inv", "plane.out"]

    def test_zero_cone(self, tmp_path, capsys):
        path = str(tmp_path / "zero.in")
        write(path, "2 2\n1 0\n0 1\n5\n")
        assert main(["compute", path]) == 0
        capsys.readouterr()
        assert slurp(str(tmp_path / "zero.gen")) == "0 2\n"

    def test_supp_mode(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        assert main(["compute", path, "--supp"]) == 0
        capsys.readouterr()
        # extreme rays only, no basis enumeration records
        assert slurp(str(tmp_path / "plane.gen")) == "2 2\n0 1\n2 3\n"
        inv = slurp(str(tmp_path / "plane.inv"))
        assert "hilbert_basis_elements" not in inv
        assert os.path.exists(str(tmp_path / "plane.sup"))

    def test_dual_flag_same_output(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        assert main(["compute", path]) == 0
        primal = slurp(str(tmp_path / "plane.gen"))
        assert main(["compute", path, "--dual"]) == 0
        capsys.readouterr()
        assert slurp(str(tmp_path / "plane.gen")) == primal

    def test_noop_flags_logged(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        assert main(["compute", path, "--errorcheck", "--normbig"]) == 0
        err = capsys.readouterr().err
        assert "--errorcheck has no effect" in err
        assert "--normbig has no effect" in err

    def test_verbose_lists_files(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        assert main(["compute", path, "--verbose"]) == 0
        err = capsys.readouterr().err
        assert "wrote" in err
        assert "plane.gen" in err


class TestPrint:
    def test_shows_parsed_input(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        assert main(["print", path]) == 0
        out = capsys.readouterr().out
        assert "ambient dimension 2" in out
        assert "type integral_closure (0)" in out
        assert "  2 3" in out

    def test_parse_error(self, tmp_path, capsys):
        path = str(tmp_path / "bad.in")
        write(path, "2 2\n0 1\n2 3\n7\n")
        assert main(["print", path]) == 2
        assert "bad.in:4" in capsys.readouterr().err


class TestCheck:
    def test_fresh_results_pass(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        main(["compute", path, "--allf", "--hilb"])
        capsys.readouterr()
        assert main(["check", str(tmp_path / "plane")]) == 0
        assert "checks passed" in capsys.readouterr().out

    def test_reducible_row_rejected(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        main(["compute", path])
        capsys.readouterr()
        write(str(tmp_path / "plane.gen"), "4 2\n0 1\n1 2\n2 3\n2 4\n")
        assert main(["check", str(tmp_path / "plane")]) == 1
        err = capsys.readouterr().err
        assert "reduction minimality" in err
        assert "(2, 4)" in err

    def test_outside_generator_rejected(self, tmp_path, capsys):
        # recorded support hyperplanes are the authority when present
        path = plane_in(tmp_path)
        main(["compute", path, "--allf"])
        capsys.readouterr()
        write(str(tmp_path / "plane.gen"), "4 2\n0 1\n1 2\n2 3\n1 0\n")
        assert main(["check", str(tmp_path / "plane")]) == 1
        assert "outside the cone" in capsys.readouterr().err

    def test_typ_mismatch_rejected(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        main(["compute", path, "--allf"])
        capsys.readouterr()
        write(str(tmp_path / "plane.typ"), "3 2\n2 1\n1 1\n0 2\n")
        assert main(["check", str(tmp_path / "plane")]) == 1
        assert "typ" in capsys.readouterr().err

    def test_series_mismatch_rejected(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        main(["compute", path, "--hilb"])
        capsys.readouterr()
        inv_path = str(tmp_path / "plane.inv")
        write(inv_path, slurp(inv_path).replace("h_vector = 1 1", "h_vector = 1 2"))
        assert main(["check", str(tmp_path / "plane")]) == 1
        assert "series mismatch" in capsys.readouterr().err

    def test_nonpositive_grading_rejected(self, tmp_path, capsys):
        base = str(tmp_path / "odd")
        write(base + ".gen", "1 2\n1 0\n")
        write(
            base + ".inv",
            "integer rank = 1\nboolean homogeneous = true\n"
            "vector 2 homogeneous_weights = 0 1\nvector 1 h_vector = 1\n",
        )
        assert main(["check", base]) == 1
        assert "not positive" in capsys.readouterr().err

    def test_missing_results(self, tmp_path, capsys):
        assert main(["check", str(tmp_path / "nothing")]) == 2
        assert "missing" in capsys.readouterr().err


class TestExitCodes:
    def test_not_pointed(self, tmp_path, capsys):
        path = str(tmp_path / "half.in")
        write(path, "1 2\n1 0\n4\n")
        assert main(["compute", path]) == 1
        assert "lineality" in capsys.readouterr().err

    def test_parse_error(self, tmp_path, capsys):
        path = str(tmp_path / "bad.in")
        write(path, "2 2\n0 1\n2 x\n0\n")
        assert main(["compute", path]) == 2
        assert "bad.in:3" in capsys.readouterr().err

    def test_semantic_input_error(self, tmp_path, capsys):
        # two generator matrices in one file parse but cannot be combined
        path = str(tmp_path / "two.in")
        write(path, "1 2\n1 0\n0\n1 2\n0 1\n1\n")
        assert main(["compute", path]) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_unknown_flag(self, tmp_path, capsys):
        path = plane_in(tmp_path)
        assert main(["compute", path, "--frobnicate"]) == 2
        capsys.readouterr()

    def test_unknown_command(self, capsys):
        assert main(["explode"]) == 2
        capsys.readouterr()

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "compute" in capsys.readouterr().out


class TestModuleEntry:
    def test_python_dash_m(self, tmp_path):
        path = plane_in(tmp_path)
        proc = subprocess.run(
            [sys.executable, "-m", "conekit.cli", "compute", path],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "3 Hilbert basis elements" in proc.stdout
