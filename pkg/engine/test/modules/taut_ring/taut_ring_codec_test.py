import pytest
from hypothesis import given
from hypothesis import strategies as st
from src.modules.taut_ring.taut_ring_codec import ClassParseException, parse_class
from src.modules.taut_ring.taut_ring_service import TautologicalRing

from test.modules.taut_ring.taut_ring_service_test import classes


class TestParseClass:
    ring: TautologicalRing

    @pytest.fixture(autouse=True)
    def _setup(self, ring: TautologicalRing):
        self.ring = ring

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("0", "0"),
            ("1", "1"),
            ("c_1", "c_1"),
            ("-c_1 + c_2", "-c_1 + c_2"),
            ("2*c_1 - c_1", "c_1"),
            ("c_1*c_1", "0"),
            ("a1_1*a1_1", "2*c_1"),
            ("D(2,1)", "D(1,2)"),
            ("D(1,2)*c_1", "c_1*c_2"),
            ("3/2*D(1,2)*c_3 - a1_2*c_1", "-c_1*a1_2 + 3/2*D(1,2)*c_3"),
        ],
    )
    def test_canonical_spelling(self, text: str, expected: str):
        assert parse_class(self.ring, text).to_text() == expected

    def test_arity_defaults_to_largest_index(self):
        assert parse_class(self.ring, "c_3").arity == 3

    def test_explicit_arity(self):
        assert parse_class(self.ring, "c_1", arity=2) == self.ring.point(0, 2)

    @pytest.mark.parametrize(
        ("text", "reason"),
        [
            ("", "empty input"),
            ("c_1 +", "unexpected end"),
            ("c_1 c_2", "missing '\\*'"),
            ("* c_1", "unexpected '\\*'"),
            ("c_1 + + c_2", "missing term"),
            ("x_1", "unexpected character"),
            ("c_0", "1-based"),
        ],
    )
    def test_grammar_violations(self, text: str, reason: str):
        with pytest.raises(ClassParseException, match=reason):
            parse_class(self.ring, text)

    def test_index_beyond_arity(self):
        with pytest.raises(ClassParseException, match="exceeds arity"):
            parse_class(self.ring, "c_3", arity=2)

    @given(data=st.data(), arity=st.integers(min_value=1, max_value=3))
    def test_text_parses_back(self, ring: TautologicalRing, data: st.DataObject, arity: int):
        cls = data.draw(classes(ring, arity))
        assert parse_class(ring, cls.to_text(), arity) == cls
