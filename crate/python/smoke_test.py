"""Smoke test for the jordan_py extension module.

Build and install first:  pip install ./crates/python
"""
import json

import jordan_py as jp


def main():
    rec = jp.jordan_partition(4, 17, 3)
    assert rec.lambda_ == [18, 18, 18, 14], rec
    assert rec.epsilon == [1, 1, 1, -3]
    assert json.loads(rec.to_json())["lambda"] == rec.lambda_

    # every engine agrees with the brute-force oracle on a small grid
    for p in (2, 3, 5):
        for r in range(1, 6):
            for s in range(r, 9):
                want = jp.oracle_partition(r, s, p)
                assert jp.recurrence_partition(r, s, p) == want
                assert jp.jordan_partition(r, s, p).lambda_ == want

    assert jp.jordan_partition(3, 5, 0).method == "char-zero"
    assert jp.negative_reverse([3, 1, -1, -3]) == [3, 1, -1, -3]
    assert jp.k_multiple([3, 1], 2) == [6, 6, 2, 2]
    assert jp.deviation(jp.standard_partition(3, 4), 4) == [2, 0, -2]
    assert jp.binomial_mod_p(10, 3, 7) == 120 % 7
    assert jp.legendre_valuation(100, 5) == 24
    assert jp.period(2, 5) == (3, 8)

    c = jp.census(5)
    assert (c.n_r, c.bound, c.within_bound()) == (14, 16, True)
    rows = jp.deviation_table(4)
    assert ("3", 9, 4, 4, [3, 1, -1, -3]) in rows

    for bad in (lambda: jp.jordan_partition(3, 5, 4),
                lambda: jp.jordan_partition(3, 5, 0, method="oracle")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        jp.oracle_partition(10, 10, 2, ceiling=50)
    except jp.ResourceLimitError:
        pass
    else:
        raise AssertionError("expected ResourceLimitError")
    print("smoke test ok:", rec)


if __name__ == "__main__":
    main()
