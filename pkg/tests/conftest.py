from fractions import Fraction

import pytest
from hypothesis import strategies as st

from selfsim.similarity import EquationSpec


def rationals(max_num=30, max_den=12):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


@pytest.fixture
def e1():
    """Kind 1, p=3, q=1, alpha=beta=0: the running example."""
    return EquationSpec(1, 3, 1, 0, 0)


@pytest.fixture
def eq3_frac():
    return EquationSpec(3, 3, 2, Fraction(1, 2), 1)
