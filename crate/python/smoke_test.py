"""Smoke test for the pcg_py extension module."""

import pcg_py


def main():
    a6 = pcg_py.Group("alt:6")
    assert a6.order == 360 and a6.center_size == 1
    assert a6.is_quasisimple() and not a6.is_ac_group()

    r = a6.commuting_graph(reduced=True)
    assert r.n == 45
    # D8 centralizer: 4 other involutions, 6 non-central elements in all
    assert all(r.degree(v) == 4 for v in range(r.n))
    full = a6.commuting_graph()
    assert full.n == 359
    assert r.is_berge() == (True, None)

    c5 = [(i, (i + 1) % 5) for i in range(5)]
    verdict, hole = pcg_py.is_berge(5, c5)
    assert verdict is False and sorted(hole) == [0, 1, 2, 3, 4]

    rep = pcg_py.analyze("sym:5")
    assert rep["verdict"] == "NotPerfect" == rep["expected"]
    assert pcg_py.verify_certificate(rep["certificate"])

    cert = pcg_py.witness("psl2", 13)
    assert "length 7" in cert and pcg_py.verify_certificate(cert)
    try:
        pcg_py.verify_certificate(cert.replace("length 7", "length 5"))
    except ValueError:
        pass
    else:
        raise AssertionError("tampered certificate accepted")

    rows = pcg_py.suite("sz")
    assert len(rows) == 1 and rows[0].endswith("PASS")
    print("pcg_py smoke test passed")


if __name__ == "__main__":
    main()
