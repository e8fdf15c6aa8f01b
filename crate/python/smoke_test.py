"""Smoke test for the pysymplorbit extension module.

Run python/build.sh first, then: python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pysymplorbit as ps


def main():
    invs = ps.enumerate_involutions(3)
    assert len(invs) == 20, len(invs)
    for s in invs:
        assert s.length() == s.orbit_dimension(), s

    w = ps.SignedPermutation.parse("[4,-2,3,1]")
    assert w.support() == ["e1-e4", "2e2"]

    bottom, top = invs[0], invs[-1]
    assert ps.compare(bottom, top) == (True, True, True)
    assert ps.compare(top, bottom) == (False, False, False)

    eq = ps.verify_equivalences(3)
    assert eq["pairs"] == 400 and not eq["counterexamples"]

    d = ps.degenerate(1, 2, 3, 3)
    assert d["limit_ok"] and d["case_split_ok"]

    report = ps.verify(2, seed=1, samples=3)
    assert report["passed"], report

    print("involutions of C3:", len(invs))
    print("hasse diagram of C2:", ps.hasse(2).count("->"), "cover edges")
    print("smoke test passed")


if __name__ == "__main__":
    main()
