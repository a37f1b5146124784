"""Smoke test for the pycohinv extension.

Build first:  cargo build --release -p cohinv-py --features extension-module
Then run:     python3 python/smoke_test.py [path/to/libpycohinv.so]
"""

import importlib.machinery
import importlib.util
import pathlib
import sys
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load(path=None):
    if path is None:
        for profile in ("release", "debug"):
            candidate = ROOT / "target" / profile / "libpycohinv.so"
            if candidate.exists():
                path = candidate
                break
        else:
            sys.exit("libpycohinv.so not found; build the cohinv-py crate first")
    loader = importlib.machinery.ExtensionFileLoader("pycohinv", str(path))
    spec = importlib.util.spec_from_file_location("pycohinv", str(path), loader=loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    m = load(sys.argv[1] if len(sys.argv) > 1 else None)

    assert m.hilbert(-1, -1, 2) == -1
    assert m.hilbert(-1, -1, "inf") == -1
    assert m.hilbert(2, 7, 7) == 1
    assert m.symbol([-1, -1]) == {"2": ["2", "inf"]}
    assert m.cup({"1": -1}, {"1": -1}) == {"2": ["2", "inf"]}

    q = m.QuadraticForm([-1, -1, -1])
    assert q.total_sw() == [{"0": 1}, {"1": -1}, {"2": ["2", "inf"]}, {"3": 1}]
    assert q.signature() == (0, 3)
    assert m.QuadraticForm([1, 1]).isometric(m.QuadraticForm([2, 2]))
    assert not m.QuadraticForm([1, 1]).isometric(m.QuadraticForm([1, -1]))
    gram = m.QuadraticForm.from_gram([["2", "1"], ["1", "2"]])
    assert gram.isometric(m.QuadraticForm([2, 6]))
    assert m.QuadraticForm([1, Fraction(3, 4)]).entries() == [1, 3]

    p = m.Pfister([-1, -1])
    assert p.form().entries() == [1, 1, 1, 1]
    assert not p.is_hyperbolic()
    assert m.Pfister([1, -1]).is_hyperbolic()

    o = m.CompositionAlgebra([-1, -1, -1])
    x = [Fraction(k, 3) for k in range(1, 9)]
    y = [Fraction(5 - k, 2) for k in range(8)]
    assert o.norm(o.multiply(x, y)) == o.norm(x) * o.norm(y)
    assert m.CompositionAlgebra([21, 7]).norm([0, 0, 0, 1]) == 147

    j = m.JordanAlgebra([-1, -1], [1, 1, 1])
    assert j.dim() == 15
    assert j.invariants() == [
        {"v": 0, "degree": 2, "class": {"2": ["2", "inf"]}},
        {"v": 1, "degree": 4, "class": {}},
    ]
    assert j.is_isomorphic(m.JordanAlgebra.from_json('{"r":2,"mu":[-1,-1],"q":[2,2,2]}'))
    assert not j.is_isomorphic(m.JordanAlgebra([-1, -1], [-1, -1, 1]))
    assert m.QuadraticForm.from_gram(j.trace_gram()).isometric(j.trace_form())

    try:
        m.JordanAlgebra.from_json({"r": 2, "mu": [-1, "a"], "q": [1, 1, 1]})
    except ValueError as e:
        assert "algebra.mu[1]" in str(e), e
    else:
        raise AssertionError("malformed algebra accepted")

    report = m.run_suite("steinberg", seed=3, params={"cases": 50})
    assert report["passed"] and report["cases"] == 50
    assert "distinguishing" in m.suite_names()
    try:
        m.run_suite("no-such-suite")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown suite accepted")

    search = m.collision_search(2, 3, 5)
    assert search["forms"] == 120 and search["certificates"] == []

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
