"""Smoke test for the mckay_py extension module.

Install first:  pip install --no-build-isolation -e crates/py
Run:            python3 python/smoke_test.py
"""

import json
import math

import mckay_py as m


def main() -> None:
    degrees = m.character_degrees("S", 6)
    assert sum(d * d for _, d in degrees) == math.factorial(6)
    assert sum(d * d for _, d in m.character_degrees("A", 7)) == math.factorial(7) // 2

    table = json.loads(m.character_table("A", 5))
    assert table["n"] == 5 and len(table["chars"]) == 5

    rows = json.loads(m.mckay_table("A", 6))
    assert all(r["diameter"] != "inf" for r in rows)
    assert m.diameter("A", 5, "(3,1,1)+") == 3
    assert m.diameter("S", 5, "(1,1,1,1,1)") is None

    # hook length formula on the staircase (3,2,1)
    assert m.partition_dimension([3, 2, 1]) == 16
    assert all(m.staircase_holds(k) for k in range(6, 21))

    assert m.support("q=3:12/01") == 1
    assert m.support("q=2:100/010/001") == 0

    sigma = json.loads(m.steinberg_sums(10, 3, 0))
    assert sigma["sigma1"]["approx"] == "0.676206" and sigma["verdict"] is False

    sp4 = json.loads(m.symplectic_exhaustive(2, 2))
    assert sp4["inner_products"] == [["1", "0"], ["0", "1"]]
    omega = json.loads(m.orthogonal_identities("plus", 5, 2, samples=50, seed=3))
    assert omega["violations"] == 0 and omega["samples"] == 50

    try:
        m.character_degrees("B", 5)
    except ValueError:
        pass
    else:
        raise AssertionError("bad family accepted")

    print(f"mckay_py {m.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
