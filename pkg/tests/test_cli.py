from __future__ import annotations

import pytest

from stopred.cli import main
from stopred.gf2 import read_matrix
from stopred.perms import format_perms, read_perms, wolfmann_set


@pytest.fixture()
def files(tmp_path):
    h = tmp_path / "w.txt"
    p = tmp_path / "w.perms"
    assert main(["build", "--matrix", "wolfmann", "-o", str(h)]) == 0
    p.write_text(format_perms(wolfmann_set()))
    return tmp_path, str(h), str(p)


def test_build_variants(tmp_path):
    out = tmp_path / "b.txt"
    assert main(["build", "--code", "bch31-16", "--matrix", "cog", "-o", str(out)]) == 0
    assert read_matrix(str(out)).shape == (15, 31)
    assert main(["build", "--code", "golay24-ext", "--matrix", "cogs", "-o", str(out)]) == 0
    assert read_matrix(str(out)).nrows == 33
    assert (tmp_path / "b.txt.orbits").read_text().count("orbit 23") == 33
    assert main(["build", "--poly", "1011", "--n", "7", "-o", str(out)]) == 0
    assert read_matrix(str(out)).shape == (3, 7)
    assert main(["build", "--code", "golay23", "--matrix", "shift", "--word",
                 "00000000001111100100101", "--rows", "11", "-o", str(out)]) == 0
    assert read_matrix(str(out)).shape == (11, 23)


def test_stopping_distance_and_enumerate(files, capsys):
    d, h, _ = files
    main(["stopping-distance", h])
    assert capsys.readouterr().out.strip() == "4"
    csv = d / "c.csv"
    main(["enumerate", h, "--sigma", "7-8", "--mode", "ml", "-o", str(csv)])
    assert csv.read_text().splitlines()[1:] == [f"7,0,ml,{h}", f"8,759,ml,{h}"]


def test_sad_commands(files, capsys):
    d, h, p = files
    assert main(["sad-verify", h, p, "--s", "5"]) == 0
    assert capsys.readouterr().out.strip() == "s=5 size=14 verified=true"
    out = d / "g.perms"
    assert main(["sad-search", h, p, "--s", "5", "-o", str(out)]) == 0
    assert "verified=true" in capsys.readouterr().out
    chosen = read_perms(str(out))
    assert chosen[0].is_identity()
    ident = d / "e.perms"
    ident.write_text("degree 24\n()\n")
    assert main(["sad-verify", h, str(ident), "--s", "5"]) == 1
    assert "unresolved" in capsys.readouterr().out


def test_expand(files):
    d, h, p = files
    out = d / "x.txt"
    main(["expand", h, p, "-o", str(out)])
    assert read_matrix(str(out)).nrows <= 168


def test_witness(tmp_path, capsys):
    out = tmp_path / "r4.txt"
    assert main(["witness", "--code", "golay23", "--level", "4", "--max-rows", "11",
                 "-o", str(out)]) == 0
    assert capsys.readouterr().out.startswith("level=4 rows=11")
    assert read_matrix(str(out)).shape == (11, 23)
    assert main(["witness", "--code", "hamming7", "--level", "5", "--max-rows", "4",
                 "--trials", "3"]) == 2


def test_decode(files, capsys):
    _, h, p = files
    assert main(["decode", h, "????" + "0" * 20]) == 0
    assert capsys.readouterr().out.split() == ["recovered", "0" * 24]
    row = read_matrix(h).rows[0]
    stuck = "".join("?" if (row >> i) & 1 else "0" for i in range(24))
    assert main(["decode", h, stuck]) == 1
    assert capsys.readouterr().out.split()[0] == "failed"
    assert main(["decode", h, "?" * 5 + "0" * 19, "--perms", p]) == 0


def test_simulate(tmp_path, capsys):
    m = tmp_path / "b.txt"
    main(["build", "--code", "bch31-16", "--matrix", "cog", "-o", str(m)])
    cfg = tmp_path / "sim.cfg"
    cfg.write_text(f"matrix = {m}\ndecoder = agd_a\ner = 0.2,0.3\ntrials = 200\nseed = 3\n")
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["simulate", "--config", str(cfg), "-o", str(out1), "--gnuplot", str(tmp_path / "g.dat")])
    main(["simulate", "--matrix", str(m), "--decoder", "agd_a", "--er", "0.2,0.3",
          "--trials", "200", "--seed", "3", "-o", str(out2)])
    assert out1.read_text() == out2.read_text()
    assert out1.read_text().startswith("er,trials,failures,fer,ci,mean_perms,mean_iters")
    assert "trials/s" in capsys.readouterr().err
