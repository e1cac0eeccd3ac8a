"""The published revocation table against exact rational values.

Five cells disagree with a single two-decimal rounding of the exact value
but all 260 agree with rounding first to three decimals and then to two
(half-up both times), which is how the reference values were evidently
produced.
"""

import csv
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from pathlib import Path

import pytest

from blockrace import analytic as an
from blockrace import exact

ROWS = list(csv.DictReader(open(Path(__file__).parent / "data" / "reference_revocation_table.csv")))


def exact_percent(row):
    v = exact.revocation_prob(int(row["n"]), 1, Fraction(int(row["q_percent"]), 100)) * 100
    return Decimal(v.numerator) / Decimal(v.denominator)


def staged(d):
    return str(d.quantize(Decimal("0.001"), ROUND_HALF_UP).quantize(Decimal("0.01"), ROUND_HALF_UP))


def test_size():
    assert len(ROWS) == 260


@pytest.mark.parametrize("row", ROWS, ids=lambda r: f"q{r['q_percent']}-n{r['n']}")
def test_staged_rounding_matches(row):
    assert staged(exact_percent(row)) == row["percent"]


@pytest.mark.parametrize("row", ROWS, ids=lambda r: f"q{r['q_percent']}-n{r['n']}")
def test_float_path_within_half_unit(row):
    value = 100 * an.revocation_prob(int(row["n"]), 1, int(row["q_percent"]) / 100)
    # staged rounding can move a value by up to 0.0055 percentage points
    assert abs(value - float(row["percent"])) <= 0.0055 + 1e-9


def test_shading():
    below = {(r["q_percent"], r["n"]) for r in ROWS
             if an.revocation_prob(int(r["n"]), 1, int(r["q_percent"]) / 100) < 0.001}
    shaded = {(r["q_percent"], r["n"]) for r in ROWS if r["below_threshold"] == "1"}
    assert shaded <= below
    # unshaded although below 0.1%: two print as "0.10%", one is a shading slip
    assert below - shaded == {("10", "4"), ("14", "6"), ("18", "9")}
