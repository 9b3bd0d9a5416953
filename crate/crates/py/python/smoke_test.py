"""Smoke test for the qtk extension module.

Build first with `cargo build --release -p qtk-py`, then run
`python3 crates/py/python/smoke_test.py`.
"""

import json
import pathlib
import shutil
import sys
import tempfile


def load():
    try:
        import qtk  # noqa: F401
        return qtk
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parents[3]
    for profile in ("release", "debug"):
        lib = root / "target" / profile / "libqtk.so"
        if lib.exists():
            tmp = pathlib.Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "qtk.so")
            sys.path.insert(0, str(tmp))
            import qtk
            return qtk
    sys.exit("qtk extension not found; build it with cargo build --release -p qtk-py")


def main():
    qtk = load()

    r = qtk.Scalar("r")
    assert str(r * qtk.Scalar("r^-1")) == "1"
    assert (r * r).substitute(["r=2"]) == qtk.Scalar("4")

    z1, z2 = qtk.Poly.z(1), qtk.Poly.z(2)
    lhs = z1.star(z2)
    rhs = z2.star(z1).scale(qtk.Scalar("r^2"))
    assert (lhs - rhs).is_zero(), (lhs, rhs)
    assert z1.star(z2).substitute(["r=1"]) == z1.classical_mul(z2)
    assert z1.bigrade() == (1, 1)

    a, b = qtk.exchange_tables()
    assert a[0] == ["r^-1", "r", "r", "r^-1"], a
    assert b[0] == ["r", "r^-1", "r^-1", "r"], b

    rel = json.loads(qtk.tables("relations", params=["r=1"]))
    assert all(row["factor"] == "1" for row in rel["data"])

    tw = json.loads(qtk.twist("jordanian", spins=["1/2"], params=["xi=0"]))
    assert tw["matrix"] == [["1" if i == j else "0" for j in range(4)] for i in range(4)]

    c = qtk.cocycle_check("lorentz-jordanian", "1/2:1/2")
    assert c.passed(), c

    g1 = qtk.twisted_gamma(1)
    assert g1[1][3] == "1" and g1[2][0] == "r", g1
    assert all(ch.status != "fail" for ch in qtk.dirac_checks(4))

    report = json.loads(qtk.run_suite("mink"))
    assert report["summary"]["status"] == "pass", report["summary"]

    try:
        qtk.tables("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown table accepted")

    print("qtk smoke test: ok")


if __name__ == "__main__":
    main()
