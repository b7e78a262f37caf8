"""Smoke test for the atinfinity_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
then run:
    python python/smoke_test.py
"""

import json
import pathlib
import sys
from fractions import Fraction

import atinfinity_py as ai

try:
    import jsonschema
except ImportError:
    jsonschema = None

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "crates" / "core" / "schemas"


def check_schema(name, value):
    if jsonschema is None:
        return
    schema = json.loads((SCHEMAS / name).read_text())
    jsonschema.validate(value, schema)


def main():
    three_lines = ai.Map("map R^2 -> R^2 : (x^2, y^2) / (1 + ((x - y)*(x - 2*y)*(2*x - y))^2)")
    assert (three_lines.n, three_lines.m) == (2, 2)
    assert ai.Map(str(three_lines)) == three_lines

    lim = ai.limit(three_lines, ai.Path("(2/t, 1/t)"))
    assert lim.point == ai.ProjPoint("0:4:1"), lim
    assert lim.point.integral == "(0:4:1)"
    assert lim.point.coords == ["0", "1", "1/4"]
    assert lim.point.at_infinity
    assert lim.nu == -2
    assert ai.ProjPoint([0, Fraction(1, 2), 2]) == ai.ProjPoint("0:1:4")
    print("limit along (2/t, 1/t):", lim.point.integral)

    low = ai.Map("((1 + x^4)*y^6/(1 + y^4)^2, (1 + y^4)*x^4/(1 + x^4)^3)")
    h = ai.homogenize(low)
    assert (h["d"], h["e"]) == (22, 2), h
    verdict = ai.classify(low, mode="exact")
    check_schema("verdict.schema.json", verdict)
    assert verdict["status"] == "NotQuasiPolynomial"
    assert verdict["witness"]["kind"] == "exact"
    print("classify low-denominator map:", verdict["status"], verdict["reason"])

    curve = ai.Map("map R^1 -> R^2 : (1/(1 + x^2), 1 + x^2)")
    assert ai.classify(curve)["status"] == "QuasiPolynomial"
    for seed in range(5):
        assert ai.classify(ai.random_polynomial_map(seed, 2, 2, 3), mode="exact")["status"] == "QuasiPolynomial"

    parabola = ai.Map("(x, y^2 + x^2)")
    br = ai.bridge(parabola, ai.Path("(1/t, 1)"), ai.Path("(1, 1/t)"))
    check_schema("bridge.schema.json", br)
    assert br["all_passed"]
    qp = ai.qp_bridge(parabola, ai.Path("(1/t^6, 1)"), ell=2)
    check_schema("bridge.schema.json", qp)
    assert qp["all_passed"] and qp["qp"]["ell"] == 2
    print("qp bridge checks:", sum(c["passed"] for c in qp["checks"]), "of", len(qp["checks"]))

    assert ai.Map("(x, y)").eval([1, "2/3"]) == ["1", "2/3"]

    wedge = ai.Set("set R^2 : (y >= 0 and y <= 1) or (x >= 0 and y >= x)")
    assert [0, Fraction(1, 2)] in wedge and [5, -1] not in wedge
    out = ai.sample_infinity(set=wedge, config={"radii": [1e4, 1e6], "n_samples": 4000})
    check_schema("sample.schema.json", out)
    print("wedge set:", out["obstruction"]["counts"], out["obstruction"]["message"])
    assert out["obstruction"]["obstructed"]

    out = ai.sample_infinity(map=three_lines, config=json.dumps({"radii": [1e4, 1e6], "n_samples": 4000}))
    assert out["obstruction"]["stable_count"] == 3, out["obstruction"]

    cases = ai.examples()
    check_schema("examples-list.schema.json", cases)
    row = ai.run_example("three-lines", sample=False)
    assert row["passed"], row

    for bad in (lambda: ai.Map("(x, y"), lambda: ai.limit(three_lines, ai.Path("(1/t)"))):
        try:
            bad()
        except ai.AtInfinityError as e:
            print("error as expected:", e)
        else:
            raise AssertionError("expected AtInfinityError")

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
