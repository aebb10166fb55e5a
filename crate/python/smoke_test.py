"""Smoke test for the wspoly Python bindings.

Build first:  pip install --no-build-isolation -e crates/py
Run:          python python/smoke_test.py
"""

import json

import wspoly


def main() -> None:
    l2 = wspoly.Graph.family("line", 2)
    z = wspoly.z(l2)
    assert z == wspoly.Poly("s(s+v)w^2 + 2s(q-s)w + (q-s)(q-s+v)"), z
    assert z == wspoly.family_z("line", 2)
    assert wspoly.Poly.from_json(z.to_json()) == z

    # Ph is Z at v = -1, and at s = 0 it is the chromatic polynomial.
    k3 = wspoly.Graph(3, [(0, 1), (1, 2), (2, 0)])
    ph = wspoly.ph(k3)
    assert ph == wspoly.z(k3).subs("v", -1)
    assert ph.subs("s", 0) == wspoly.Poly("q(q-1)(q-2)")
    assert wspoly.oracle_ph(k3, 3, 1) == wspoly.Poly("6w")
    assert ph.subs("q", 3).subs("s", 1) == wspoly.Poly("6w")

    roots = wspoly.ph(l2).zeros("q", {"s": 1.0, "w": 0.5})
    assert len(roots) == 2 and all(abs(re - 1.0) < 1e-9 and abs(im) < 1e-12 for re, im, _ in roots), roots

    ledger = wspoly.check("core")
    assert all(e["passed"] for e in ledger["entries"]), ledger
    assert wspoly.qc(4, 0.5)["kind"] == "arc"
    assert abs(wspoly.phi(3, 1, 0.5)["phi"] - (1 + 5 ** 0.5) / 2) < 1e-12
    assert len(wspoly.strip_tables(3)) == 3

    try:
        wspoly.Graph(2, [(0, 5)])
    except wspoly.WspolyError as e:
        assert "outside" in str(e)
    else:
        raise AssertionError("invalid edge accepted")

    print(json.dumps({"ok": True, "ph_k3": str(ph), "ledger_entries": len(ledger["entries"])}))


if __name__ == "__main__":
    main()
