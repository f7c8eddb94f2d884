from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decatic.asymptotics import Potential
from decatic.qes import closed_form_first, closed_form_ground
from decatic.tables import (
    AIM_REFERENCE,
    TableRowSpec,
    row_count,
    table_row,
    table_rows,
    verify_row,
)


def test_first_rows():
    V, E = table_row(TableRowSpec(1, 1, 1, 1, 1))
    assert V == Potential(1, 1, 1, F(-37, 8), F(-87, 64)) and E == F(3, 8)
    V, E = table_row(TableRowSpec(2, 1, 1, 1, 1))
    assert V == Potential(1, 1, 1, F(-53, 8), F(-151, 64)) and E == F(9, 8)
    _, E = table_row(TableRowSpec(2, 1, 4))
    assert E == F(9, 4)


def test_row_five_degenerates_at_k_one():
    V5, E5 = table_row(TableRowSpec(1, 5, 1, 1))
    V1, E1 = table_row(TableRowSpec(1, 1, 1, 1, 1))
    assert E5 == E1 == F(3, 8) and V5 == V1


def test_row_counts_and_expansion():
    assert row_count(1) == row_count(2) == 8
    assert len(table_rows(1)) == len(table_rows(2)) == 10


@pytest.mark.parametrize("table", [1, 2])
@pytest.mark.parametrize("mu", [1, 4])
@pytest.mark.parametrize("k", [1, 2])
def test_all_rows_verify(table, mu, k):
    for spec, V, E in table_rows(table, mu, k):
        assert verify_row(spec).is_zero, spec
        closed = closed_form_ground if table == 1 else closed_form_first
        assert closed(V.a, V.b, V.c) == (E, V.d, V.e), spec


@settings(max_examples=25, deadline=None)
@given(
    st.fractions(min_value=F(1, 20), max_value=20),
    st.fractions(min_value=F(1, 20), max_value=20),
    st.sampled_from([1, 2]),
)
def test_rows_verify_for_random_parameters(mu, k, table):
    for spec, _, _ in table_rows(table, mu, k):
        assert verify_row(spec).is_zero, spec


def test_invalid_specs():
    with pytest.raises(ValueError):
        TableRowSpec(1, 1, 0)
    with pytest.raises(ValueError):
        TableRowSpec(1, 1, 1, -1)
    with pytest.raises(ValueError):
        TableRowSpec(1, 1, 1, 1, 0)
    with pytest.raises(ValueError):
        table_row(TableRowSpec(3, 1))
    with pytest.raises(ValueError):
        table_row(TableRowSpec(1, 9))


def test_reference_blocks_consistent_with_closed_forms():
    seen = 0
    for block in AIM_REFERENCE:
        a, b, c, d, e = block["potential"]
        for level, closed in ((0, closed_form_ground), (1, closed_form_first)):
            E, dd, ee = closed(a, b, c)
            if (dd, ee) == (F(d), F(e)):
                value, iters = block["levels"][level]
                assert iters is None and F(value) == E
                seen += 1
    assert seen == 2
