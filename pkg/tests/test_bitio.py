import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyncliq.bitio import BitMessage, BitReader, BitWriter, MalformedInbox


def test_writer_reader_roundtrip():
    msg = BitWriter().put_flag(True).put(4, 0b1010).put_flag(False).put(3, 5).message()
    assert msg.length == 9
    rd = BitReader(msg)
    assert rd.take_flag() is True
    assert rd.take(4) == 0b1010
    assert rd.take_flag() is False
    assert rd.take(3) == 5
    rd.expect_end()


def test_reader_overrun():
    rd = BitReader(BitMessage(2, 0b11))
    rd.take(2)
    with pytest.raises(MalformedInbox):
        rd.take(1)


def test_writer_rejects_oversized_value():
    with pytest.raises(ValueError):
        BitWriter().put(2, 4)


@given(st.lists(st.tuples(st.integers(1, 12), st.integers(0, 4095)), max_size=8))
def test_roundtrip_arbitrary_fields(fields):
    w = BitWriter()
    expected = []
    for width, value in fields:
        value &= (1 << width) - 1
        w.put(width, value)
        expected.append((width, value))
    msg = w.message()
    assert msg.length == sum(width for width, _ in expected)
    rd = BitReader(msg)
    for width, value in expected:
        assert rd.take(width) == value
    rd.expect_end()
