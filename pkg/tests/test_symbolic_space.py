import pytest
import time
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from kernel_chain.chain_analysis import Finite, ascent_via_measures
from kernel_chain.errors import InvalidParameter, ParseError, WitnessVerificationError
from kernel_chain.operator_core import chain_dims
from kernel_chain.symbolic_space import (
    NotFound,
    WitnessSequence,
    apply,
    format_rule,
    in_range,
    new_symbolic_map,
    onto_evidence,
    parse_rule,
    preimages,
    truncated_map,
    truncated_matrix,
    verify_witness,
    witness_sequence,
)


class SymbolicSpaceTester(unittest.TestCase):
    def setUp(self) -> None:
        self.shift = new_symbolic_map(1, 1)
        self.identity = new_symbolic_map(1, 0)
        self.doubling = new_symbolic_map(2, 0)

    def test_rules(self) -> None:
        assert apply(self.shift, 4) == 5
        assert apply(self.doubling, 4) == 8
        swap = new_symbolic_map(1, 0, {1: 2, 2: 1})
        assert [apply(swap, n) for n in range(1, 5)] == [2, 1, 3, 4]
        with pytest.raises(InvalidParameter):
            apply(self.shift, 0)

    def test_invalid_rules(self) -> None:
        with pytest.raises(InvalidParameter):
            new_symbolic_map(0, 1)
        with pytest.raises(InvalidParameter):
            new_symbolic_map(1, -1)
        with pytest.raises(InvalidParameter):
            new_symbolic_map(1, 1, {2: 1})
        with pytest.raises(InvalidParameter):
            new_symbolic_map(1, 1, {1: 0})

    def test_preimages(self) -> None:
        assert preimages(self.shift, 1) == []
        assert preimages(self.shift, 5) == [4]
        assert preimages(self.doubling, 7) == []
        sigma = new_symbolic_map(1, 1, {1: 3})
        assert preimages(sigma, 3) == [1, 2]
        # 1 is in the table, so the affine preimage of 2 does not count
        assert preimages(sigma, 2) == []

    def test_in_range(self) -> None:
        assert not in_range(self.shift, 3, 3)
        assert in_range(self.shift, 3, 4)
        assert in_range(self.doubling, 2, 12)
        assert not in_range(self.doubling, 2, 6)
        for sigma in (self.shift, self.identity, self.doubling):
            assert in_range(sigma, 0, 17)
        with pytest.raises(InvalidParameter):
            in_range(self.shift, -1, 3)

    def test_witness_sequence_shift(self) -> None:
        start = time.perf_counter()
        result = witness_sequence(self.shift, 50)
        assert isinstance(result, WitnessSequence)
        assert result.entries == tuple((k, k) for k in range(1, 51))
        assert result.depth == 50
        for k, n in result.entries:
            assert in_range(self.shift, k - 1, n)
            assert not in_range(self.shift, k, n)
        assert time.perf_counter() - start < 5

    def test_witness_sequence_identity(self) -> None:
        assert witness_sequence(self.identity, 1) == NotFound(1)

    def test_witness_sequence_doubling(self) -> None:
        result = witness_sequence(self.doubling, 3)
        assert result.entries == ((1, 1), (2, 2), (3, 4))
        # 2^7 lies beyond the default bound 2·8 + 64
        assert witness_sequence(self.doubling, 8) == NotFound(8)
        result = witness_sequence(self.doubling, 8, search_bound=200)
        assert isinstance(result, WitnessSequence)

    def test_witness_sequence_bound(self) -> None:
        assert witness_sequence(self.shift, 5, search_bound=3) == NotFound(4)
        with pytest.raises(InvalidParameter):
            witness_sequence(self.shift, 0)

    def test_verify_witness(self) -> None:
        with pytest.raises(WitnessVerificationError):
            verify_witness(self.shift, WitnessSequence(((1, 2),)))
        with pytest.raises(WitnessVerificationError):
            verify_witness(self.shift, WitnessSequence(((1, 1), (2, 1))))

    def test_onto_evidence(self) -> None:
        assert onto_evidence(self.identity, 50)
        assert not onto_evidence(self.shift, 50)
        assert onto_evidence(new_symbolic_map(1, 0, {1: 2, 2: 1}), 50)

    def test_truncated_map(self) -> None:
        assert truncated_map(self.shift, 4).assignment() == {
            "1": "2",
            "2": "3",
            "3": "4",
            "4": "sink",
            "sink": "sink",
        }
        assert truncated_map(self.doubling, 4).assignment() == {
            "1": "2",
            "2": "4",
            "3": "sink",
            "4": "sink",
            "sink": "sink",
        }
        with pytest.raises(InvalidParameter):
            truncated_map(self.shift, 0)

    def test_truncated_matrix(self) -> None:
        dims = chain_dims(truncated_matrix(self.shift, 4), 5)
        assert dims.nullities == (0, 1, 2, 3, 4, 4)
        dims = chain_dims(truncated_matrix(self.identity, 3))
        assert set(dims.nullities) == {0}

    def test_truncated_shift_kernels_grow(self) -> None:
        for n in range(4, 17):
            nullities = chain_dims(truncated_matrix(self.shift, n), n).nullities
            assert all(a < b for a, b in zip(nullities, nullities[1:]))
            assert nullities[n] == n

    def test_bijective_rule_has_ascent_one_on_truncations(self) -> None:
        for n in range(1, 8):
            assert ascent_via_measures(truncated_map(self.identity, n)) == Finite(1)

    def test_parse_rule(self) -> None:
        assert parse_rule("affine:1:1") == self.shift
        sigma = parse_rule("table:{1->2, 2->1};affine:1:0")
        assert sigma.exceptions == {1: 2, 2: 1}
        for text in [
            "affine:1:1",
            "table:{1->3};affine:2:0",
            "table:{1->2,2->1};affine:1:0",
        ]:
            assert format_rule(parse_rule(text)) == text

    def test_parse_rule_errors(self) -> None:
        for text in [
            "affine:1",
            "affine:x:1",
            "affine:0:1",
            "shift",
            "table:{2->1};affine:1:1",
            "table:{1->2,1->3};affine:1:1",
            "table:{1=>2};affine:1:1",
        ]:
            with pytest.raises(ParseError):
                parse_rule(text)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 4), st.integers(1, 120))
    def test_ranges_are_nested(self, a, b, k, n) -> None:
        sigma = new_symbolic_map(a, b)
        if in_range(sigma, k + 1, n):
            assert in_range(sigma, k, n)
