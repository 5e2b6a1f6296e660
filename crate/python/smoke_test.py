"""Quick check that the extension module loads and agrees with known values."""

import quadsum

f = quadsum.TernaryForm.parse("diag(1,3,21)")
g = quadsum.TernaryForm(1, 6, 12, -6)
assert f.count(25) == g.count(25) == 14
assert f.determinant() == g.determinant() == 63
assert not f.is_equivalent(g)
assert len(f.genus([5, 11, 13])) == 2

assert quadsum.exception_set(1, 5, 10, 10) == [2, 3, 7, 8]
assert quadsum.exception_formula_holds("E149", 5000)
assert quadsum.kronecker_symbol(-7, 5) == -1

t = quadsum.SumTuple.parse("5,1,2,2,1,1")
assert t.exceptions(20000) == []
w = t.witness(4)
assert t.evaluate(*w) == 4
assert quadsum.SumTuple(2, 0, 2, 0, 2, 0).exceptions(30) == [7, 15, 23, 28]

assert len(quadsum.rule_ids()) >= 14
assert quadsum.apply_rule("R2.1+", [1, 1, 1]) == [-4, -4, 4]
assert quadsum.descend_odd_1_5_10(6, 2, 0)["result"] == [-1, 3, 1]

r = quadsum.ratio_check(f, 1, 5, [5, 11, 13])
assert r["pass"] and r["lhs"] == "7"

report = quadsum.verify_theorems(5000, jobs=2)
assert len(report["checks"]) == 44
assert all(c["status"] == "pass" for c in report["checks"])

try:
    quadsum.TernaryForm(1, 1, -1)
except ValueError:
    pass
else:
    raise AssertionError("indefinite form accepted")

print("quadsum", quadsum.__version__, "smoke test ok")
