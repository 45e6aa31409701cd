import shutil
import subprocess

import pytest

from homometric import family_r, serialize_tree
from homometric.cli import run

P9 = "9\n" + "".join(f"{i} {i + 1}\n" for i in range(8))
P18 = "18\n" + "".join(f"{i} {i + 1}\n" for i in range(17))
FIG5 = "haircomb 9\n5 3 2 4 1 4 6 2 2\n"
CBT15 = "15\n" + "".join(f"{i} {2 * i + 1}\n{i} {2 * i + 2}\n" for i in range(7))


def invoke(capsys, argv, stdin=None):
    code = run(argv, stdin=stdin)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFind:
    def test_human_output(self, capsys):
        code, out, err = invoke(capsys, ["find", "-"], stdin=P9)
        assert code == 0 and err == ""
        assert "size=4" in out
        assert "A: 5 6 7 8" in out and "B: 1 2 3 4" in out
        assert "(2k+1)^2 >= 2n: 81 >= 18" in out

    def test_porcelain(self, capsys):
        code, out, _ = invoke(capsys, ["--porcelain", "find", "-"], stdin=P9)
        assert code == 0
        line = out.strip()
        assert line.startswith("find n=9 size=4 a=5,6,7,8 b=1,2,3,4 ")
        assert "guarantee_lhs=81 guarantee_rhs=18" in line
        assert "profile_sha=" in line and "\n" not in line

    def test_single_vertex(self, capsys):
        code, _, err = invoke(capsys, ["find", "-"], stdin="1\n")
        assert code == 1 and "no homometric pair" in err

    def test_malformed_document(self, capsys):
        code, _, err = invoke(capsys, ["find", "-"], stdin="3\n0 1\n")
        assert code == 2 and "error:" in err

    def test_file_input(self, capsys, tmp_path):
        doc = tmp_path / "tree.txt"
        doc.write_text(P9)
        code, out, _ = invoke(capsys, ["find", str(doc)])
        assert code == 0 and "size=4" in out

    def test_missing_file(self, capsys):
        code, _, err = invoke(capsys, ["find", "/no/such/file"])
        assert code == 2 and "cannot read" in err


class TestHaircomb:
    def test_haircomb_document(self, capsys):
        code, out, _ = invoke(capsys, ["haircomb", "-"], stdin=FIG5)
        assert code == 0
        assert "s=9 l=6 n=29" in out
        assert "threshold: size 9 >= 4" in out

    def test_porcelain(self, capsys):
        code, out, _ = invoke(capsys, ["--porcelain", "haircomb", "-"], stdin=FIG5)
        assert code == 0
        assert out.startswith("haircomb n=29 s=9 l=6 size=9 ")
        assert "threshold=4" in out

    def test_tree_document_recognized(self, capsys):
        code, out, _ = invoke(capsys, ["haircomb", "-"], stdin=P9)
        assert code == 0 and "s=9 l=1 n=9" in out

    def test_not_a_haircomb(self, capsys):
        code, _, err = invoke(capsys, ["haircomb", "-"], stdin=CBT15)
        assert code == 1 and "not a haircomb" in err


class TestVerify:
    def test_yes(self, capsys):
        code, out, _ = invoke(
            capsys, ["verify", "-", "--a", "0,1,4", "--b", "5,6,9"],
            stdin="10\n" + "".join(f"{i} {i + 1}\n" for i in range(9)))
        assert code == 0
        assert "A profile: 1 3 4" in out and "homometric: yes" in out

    def test_equal_profiles_but_intersecting(self, capsys):
        code, out, _ = invoke(
            capsys, ["verify", "-", "--a", "0,1,4,10,12,17",
                     "--b", "0,1,8,11,13,17"], stdin=P18)
        assert code == 1
        assert "profiles equal but sets intersect" in out

    def test_porcelain_reason_slug(self, capsys):
        code, out, _ = invoke(
            capsys, ["--porcelain", "verify", "-", "--a", "0,1,4,10,12,17",
                     "--b", "0,1,8,11,13,17"], stdin=P18)
        assert code == 1
        assert out.strip() == ("verify homometric=false size_a=6 size_b=6"
                               " reason=profiles-equal-but-sets-intersect")

    def test_profiles_differ(self, capsys):
        code, out, _ = invoke(capsys, ["verify", "-", "--a", "0,1",
                                       "--b", "2,4"], stdin=P9)
        assert code == 1 and "profiles differ" in out

    def test_sizes_differ(self, capsys):
        code, out, _ = invoke(capsys, ["verify", "-", "--a", "0",
                                       "--b", "2,4"], stdin=P9)
        assert code == 1 and "sizes differ" in out

    def test_sets_file(self, capsys, tmp_path):
        sets = tmp_path / "sets.txt"
        sets.write_text("# halves\n0, 1, 4\n5 6 9\n")
        code, out, _ = invoke(
            capsys, ["verify", "-", "--sets-file", str(sets)],
            stdin="10\n" + "".join(f"{i} {i + 1}\n" for i in range(9)))
        assert code == 0 and "homometric: yes" in out

    def test_sets_file_wrong_shape(self, capsys, tmp_path):
        sets = tmp_path / "sets.txt"
        sets.write_text("0 1\n")
        code, _, err = invoke(capsys, ["verify", "-", "--sets-file", str(sets)],
                              stdin=P9)
        assert code == 2 and "exactly two lines" in err

    def test_conflicting_set_options(self, capsys, tmp_path):
        sets = tmp_path / "sets.txt"
        sets.write_text("0\n1\n")
        code, _, err = invoke(
            capsys, ["verify", "-", "--a", "0", "--b", "1",
                     "--sets-file", str(sets)], stdin=P9)
        assert code == 2 and "not both" in err

    def test_missing_sets(self, capsys):
        code, _, err = invoke(capsys, ["verify", "-", "--a", "0"], stdin=P9)
        assert code == 2 and "needs --a and --b" in err

    def test_bad_id_list(self, capsys):
        code, _, err = invoke(capsys, ["verify", "-", "--a", "0,x",
                                       "--b", "1"], stdin=P9)
        assert code == 2 and "comma-separated integers" in err

    def test_out_of_range_ids(self, capsys):
        code, _, err = invoke(capsys, ["verify", "-", "--a", "0,99",
                                       "--b", "1,2"], stdin=P9)
        assert code == 2 and "out of range" in err


class TestProfile:
    def test_human(self, capsys):
        code, out, _ = invoke(capsys, ["profile", "-", "--set", "0,2,4"],
                              stdin="5\n0 1\n1 2\n2 3\n3 4\n")
        assert code == 0 and out.strip() == "2 2 4"

    def test_porcelain(self, capsys):
        code, out, _ = invoke(
            capsys, ["--porcelain", "profile", "-", "--set", "0,2,4"],
            stdin="5\n0 1\n1 2\n2 3\n3 4\n")
        assert code == 0 and out.strip() == "profile size=3 distances=2,2,4"

    def test_disconnected_set(self, capsys):
        code, _, err = invoke(capsys, ["profile", "-", "--set", "0,3"],
                              stdin="4\n0 1\n2 3\n")
        assert code == 2 and "disconnected" in err


class TestOracleCommand:
    def test_small(self, capsys):
        code, out, _ = invoke(capsys, ["oracle", "-"],
                              stdin="4\n0 1\n1 2\n2 3\n")
        assert code == 0
        assert "max_size=2" in out and "A: 0 1" in out and "B: 2 3" in out

    def test_porcelain(self, capsys):
        code, out, _ = invoke(capsys, ["--porcelain", "oracle", "-"],
                              stdin="4\n0 1\n1 2\n2 3\n")
        assert code == 0
        assert out.startswith("oracle n=4 max_size=2 a=0,1 b=2,3 profile_sha=")

    def test_cutoff(self, capsys):
        code, _, err = invoke(capsys, ["oracle", "-"],
                              stdin="15\n" + "".join(f"{i} {i + 1}\n"
                                                     for i in range(14)))
        assert code == 2 and "exceeds the oracle cutoff" in err

    def test_limit_override(self, capsys):
        code, out, _ = invoke(capsys, ["oracle", "-", "--limit", "15"],
                              stdin="15\n" + "".join(f"{i} {i + 1}\n"
                                                     for i in range(14)))
        assert code == 0 and "max_size=7" in out


class TestGen:
    def test_path(self, capsys):
        code, out, _ = invoke(capsys, ["gen", "--kind", "path", "--n", "5"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# gen kind=path n=5 seed=1729"
        assert lines[1:] == ["5", "0 1", "1 2", "2 3", "3 4"]

    def test_family(self, capsys):
        code, out, _ = invoke(capsys, ["gen", "--kind", "family-R",
                                       "--index", "3"])
        assert code == 0
        body = "\n".join(out.splitlines()[1:]) + "\n"
        assert body == serialize_tree(family_r(3).tree)

    def test_haircomb_format(self, capsys):
        code, out, _ = invoke(capsys, ["gen", "--kind", "random-haircomb",
                                       "--n", "40", "--format", "haircomb"])
        assert code == 0
        assert out.splitlines()[1:] == ["haircomb 11", "1 2 3 4 2 7 1 1 3 7 9"]

    def test_haircomb_format_needs_haircomb_kind(self, capsys):
        code, _, err = invoke(capsys, ["gen", "--kind", "path", "--n", "4",
                                       "--format", "haircomb"])
        assert code == 2 and "needs --kind random-haircomb" in err

    def test_missing_n(self, capsys):
        code, _, err = invoke(capsys, ["gen", "--kind", "random-tree"])
        assert code == 2 and "needs n" in err

    def test_unknown_kind_rejected_by_parser(self, capsys):
        code, _, err = invoke(capsys, ["gen", "--kind", "bonsai", "--n", "4"])
        assert code == 2 and "invalid choice" in err

    def test_pipes_into_find(self, capsys):
        code, out, _ = invoke(capsys, ["gen", "--kind", "random-tree",
                                       "--n", "60", "--seed", "9"])
        assert code == 0
        code, out2, _ = invoke(capsys, ["--porcelain", "find", "-"], stdin=out)
        assert code == 0 and out2.startswith("find n=60 ")


class TestDispatch:
    def test_no_command(self, capsys):
        assert invoke(capsys, [])[0] == 2

    def test_help_exits_zero(self, capsys):
        assert invoke(capsys, ["--help"])[0] == 0

    def test_console_script(self):
        exe = shutil.which("homometric")
        assert exe is not None
        proc = subprocess.run([exe, "--porcelain", "find", "-"],
                              input=P9, capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.startswith("find n=9 size=4")
