from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from monadic_bl.corpus import heyting5_base, heyting5_quantifiers, golden_chain
from monadic_bl.monadic import MonadicBLAlgebra

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def block_lists(draw, max_size: int = 6, max_blocks: int = 4):
    """Ordinal-sum block sizes whose algebra has at most ``max_size`` elements."""
    blocks: list[int] = []
    room = max_size - 1
    for _ in range(draw(st.integers(1, max_blocks))):
        if room < 1:
            break
        k = draw(st.integers(2, min(5, room + 1)))
        blocks.append(k)
        room -= k - 1
    return blocks or [2]


@st.composite
def index_chain_specs(draw, max_size: int = 6):
    from monadic_bl.chains import IndexChainSpec

    blocks = draw(block_lists(max_size))
    r = len(blocks)
    extra = draw(st.sets(st.integers(1, max(1, r - 1)))) if r > 1 else set()
    return IndexChainSpec(tuple(blocks), frozenset({0, r, *extra}))


@pytest.fixture
def golden() -> MonadicBLAlgebra:
    return golden_chain()


@pytest.fixture
def heyting5():
    return heyting5_base(), heyting5_quantifiers()
