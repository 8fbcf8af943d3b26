"""Smoke test for the pywnu extension module.

Build it and put it on the path first, e.g.

    cargo build -p wnu-py --features extension-module --release
    cp target/release/libpywnu.so python/pywnu.so
    python3 python/smoke.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pywnu


def main():
    alg = pywnu.FreeAlgebra(3)
    assert alg.k == 3
    assert alg.normalize("w(y,w(x,y,z),y)") == "w(w(x,y,z),y,y)"
    assert alg.normalize("w(x,x,x)") == "x"
    assert alg.free_equal("w(y,x,x)", "w(x,x,y)")
    assert not alg.is_normal("w(x,x,y)")
    assert alg.wa(["x", "y", "x"]) == "w(y,x,x)"
    assert alg.is_subterm("x", "w(x,y,y)")
    assert alg.in_s("x", "y") and not alg.in_s("x", "w(x,y,y)")
    assert alg.enumerate_normal(["x", "y"], 1) == ["x", "y", "w(x,y,y)", "w(y,x,x)"]
    assert pywnu.FreeAlgebra(4).normalize("w(a,a,b,b)") == "w(a,a,b,b)"

    report = json.loads(alg.closure(vars=["x", "y", "z"], max_w=2))
    assert report["diagonal_witness"] is None and report["saturated"]

    assert pywnu.is_trivial("t(t(x,y,z),y,z) = t(x,x,z)") == {"t": 3}
    assert pywnu.is_trivial("w(x,y) = w(y,x)") is None
    siggers = "t(r,a,r,e) = t(a,r,e,a)"
    assert json.loads(pywnu.classify(siggers))["verdict"] == "CandidateNontrivial"
    search = json.loads(alg.search(siggers, 2))
    assert search["outcome"] == "absent" and search["candidates_examined"] == 1480
    assert json.loads(alg.refute(siggers))["outcome"] == "confirmed_at_budget"

    for bad in (lambda: pywnu.FreeAlgebra(2), lambda: alg.normalize("w(x,"), lambda: alg.wa(["x", "x"])):
        try:
            bad()
        except pywnu.WnuError:
            pass
        else:
            raise AssertionError("expected WnuError")
    print("pywnu smoke test passed")


if __name__ == "__main__":
    main()
