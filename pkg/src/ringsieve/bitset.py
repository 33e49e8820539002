"""Carrier subsets as arbitrary-size int bitmasks (bit i = carrier index i)."""

import numpy as np


def mask_from_indices(n: int, indices) -> int:
    """Build a mask from an iterable/array of carrier indices."""
    buf = np.zeros(n, dtype=np.uint8)
    buf[np.asarray(indices, dtype=np.int64)] = 1
    return int.from_bytes(np.packbits(buf, bitorder="little").tobytes(), "little")


def indices_from_mask(mask: int) -> list[int]:
    out = []
    idx = 0
    while mask:
        tz = (mask & -mask).bit_length() - 1
        idx += tz
        out.append(idx)
        mask >>= tz + 1
        idx += 1
    return out


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def lowest_bit(mask: int) -> int:
    if mask == 0:
        raise ValueError("empty mask")
    return (mask & -mask).bit_length() - 1
