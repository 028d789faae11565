"""Smoke test for the hochmod_py extension."""

import hochmod_py as hm


def main():
    assert "D-kZ2" in hm.presets()

    a = hm.HopfAlgebra.preset("D-kZ2", "Q")
    assert a.dim == 4 and a.field == "Q"
    assert a.verify()["ok"]
    assert a.hh_dims(2) == [4, 0, 0]
    assert len(a.center()) == 4

    rep = a.modular(0)
    assert rep["ok"] and rep["dim"] == 4
    assert len(rep["s_bar"]) == 4 and rep["t_bar"] is not None

    image, note = a.act([[1, 0], [0, 1]], ["1", "2", "3", "4"])
    assert image == ["1", "2", "3", "4"], image
    assert note.startswith("word 1")

    assert hm.sl2z_decompose([[0, -1], [1, 0]]) == ["s"]
    try:
        hm.sl2z_decompose([[2, 0], [0, 1]])
    except ValueError:
        pass
    else:
        raise AssertionError("determinant 2 accepted")

    s = hm.HopfAlgebra.preset("sweedler", "F5")
    assert s.hh_dims(2) == [1, 1, 1]

    code, report = hm.run(["verify", "--preset", "D-kZ2", "--no-timing"])
    assert code == 0 and report["status"] == "ok"

    try:
        hm.HopfAlgebra.preset("sweedler", "F2")
    except ValueError:
        pass
    else:
        raise AssertionError("characteristic 2 accepted for Sweedler")

    print("smoke test ok:", a)


if __name__ == "__main__":
    main()
