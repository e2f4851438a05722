"""Length-counted bit strings: the unit of bandwidth accounting.

Messages are immutable (length, value) pairs; bit 0 of ``value`` is the first
bit on the wire.  Writers append fixed-width fields low-to-high; readers pop
them in the same order, so a message parses deterministically as long as both
sides agree on the field schedule.
"""

from __future__ import annotations

from typing import NamedTuple


class MalformedInbox(Exception):
    """A received message did not match the expected field layout."""


class BitMessage(NamedTuple):
    length: int
    value: int

    def bit(self, i: int) -> int:
        if not (0 <= i < self.length):
            raise MalformedInbox(f"bit {i} out of range for {self.length}-bit message")
        return (self.value >> i) & 1


EMPTY = BitMessage(0, 0)


class BitWriter:
    __slots__ = ("_len", "_val")

    def __init__(self):
        self._len = 0
        self._val = 0

    def put(self, width: int, value: int) -> "BitWriter":
        if width < 0 or value < 0 or value >> width:
            raise ValueError(f"value {value} does not fit in {width} bits")
        self._val |= value << self._len
        self._len += width
        return self

    def put_flag(self, flag: bool) -> "BitWriter":
        return self.put(1, 1 if flag else 0)

    def message(self) -> BitMessage:
        return BitMessage(self._len, self._val)


class BitReader:
    __slots__ = ("_msg", "_pos")

    def __init__(self, msg: BitMessage):
        self._msg = msg
        self._pos = 0

    def take(self, width: int) -> int:
        if self._pos + width > self._msg.length:
            raise MalformedInbox(
                f"read past end: want {width} bits at {self._pos} of {self._msg.length}"
            )
        out = (self._msg.value >> self._pos) & ((1 << width) - 1)
        self._pos += width
        return out

    def take_flag(self) -> bool:
        return bool(self.take(1))

    @property
    def remaining(self) -> int:
        return self._msg.length - self._pos

    def expect_end(self) -> None:
        if self.remaining:
            raise MalformedInbox(f"{self.remaining} unexpected trailing bits")
