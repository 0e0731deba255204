import pytest
import unittest
from fractions import Fraction

from kernel_chain.cli.space_file import (
    load_space_file,
    parse_space_file,
    serialize_space_file,
)
from kernel_chain.errors import (
    ImageOutOfSpace,
    MissingPoint,
    NegativeWeight,
    ParseError,
)


class SpaceFileTester(unittest.TestCase):
    def test_parse_e1(self) -> None:
        space, tau = load_space_file("tests/testdata/e1.json")
        assert space.points == ("1", "2", "3", "4")
        assert space.weights == (1, 1, 1, 1)
        assert tau.assignment() == {"1": "2", "2": "3", "3": "3", "4": "3"}

    def test_parse_rational_weights(self) -> None:
        space, _ = load_space_file("tests/testdata/null_atom.json")
        assert space.weights == (Fraction(1), Fraction(3, 2), Fraction(0))

    def test_negative_weight(self) -> None:
        with pytest.raises(NegativeWeight) as e:
            load_space_file("tests/testdata/negative_weight.json")
        assert "index 1" in str(e.value)

    def test_image_out_of_space(self) -> None:
        with pytest.raises(ImageOutOfSpace):
            load_space_file("tests/testdata/bad_target.json")

    def test_missing_image(self) -> None:
        text = '{"points": ["1", "2"], "weights": ["1", "1"], "map": {"1": "2"}}'
        with pytest.raises(MissingPoint):
            parse_space_file(text)

    def test_broken_json(self) -> None:
        with pytest.raises(ParseError) as e:
            load_space_file("tests/testdata/broken.json")
        assert e.value.line == 4

    def test_field_errors(self) -> None:
        with pytest.raises(ParseError) as e:
            parse_space_file('{"points": ["1"], "map": {"1": "1"}}')
        assert e.value.field == "weights"

        with pytest.raises(ParseError) as e:
            parse_space_file('{\n"points": ["1"],\n"weights": [1],\n"map": {"1": "1"}\n}')
        assert e.value.field == "weights"
        assert e.value.line == 3

        with pytest.raises(ParseError) as e:
            parse_space_file('{"points": ["1"], "weights": ["one"], "map": {"1": "1"}}')
        assert e.value.field == "weights"

        with pytest.raises(ParseError) as e:
            parse_space_file('{"points": ["1"], "weights": ["1"], "map": ["1"]}')
        assert e.value.field == "map"

        with pytest.raises(ParseError):
            parse_space_file("[]")

    def test_round_trip(self) -> None:
        for path in ["tests/testdata/e1.json", "tests/testdata/null_atom.json"]:
            space, tau = load_space_file(path)
            space2, tau2 = parse_space_file(serialize_space_file(space, tau))
            assert space2 == space
            assert tau2 == tau
            text = serialize_space_file(space, tau)
            assert serialize_space_file(space2, tau2) == text
