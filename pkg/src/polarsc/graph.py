"""Index arithmetic for the m-stage butterfly decoding graph.

The decoding graph for a length ``n = 2**m`` code has ``m`` stages of ``n``
node rows each.  Stage ``m - 1`` sits next to the channel values and pairs
adjacent rows; stage ``l`` pairs rows at stride ``2**(m - 1 - l)``; stage 0
feeds the bit decisions.  Estimated input bit ``i`` emerges on row
``bit_reverse(i, m)`` of stage 0.

Everything here is small integer/slice arithmetic shared by the reference
decoder, the schedule builder and the cycle simulators.
"""

from __future__ import annotations


def bit_reverse(i: int, m: int) -> int:
    """Reverse the m-bit binary representation of i."""
    r = 0
    for _ in range(m):
        r = (r << 1) | (i & 1)
        i >>= 1
    return r


def reversed_low_bits(i: int, l: int) -> int:
    """Reverse the lowest l bits of i (0 for l == 0)."""
    return bit_reverse(i & ((1 << l) - 1), l)


def activation_stages(i: int, m: int) -> range:
    """Stages recomputed for phase i, from the channel side inward.

    Phase 0 touches every stage; phase i > 0 touches stages
    ``ntz(i)`` down to 0, where ``ntz`` counts trailing zero bits.
    """
    if i == 0:
        top = m - 1
    else:
        top = (i & -i).bit_length() - 1
    return range(top, -1, -1)


def stage_uses_g(i: int, l: int) -> bool:
    """Phase i applies g at stage l when bit l of i is set, f otherwise."""
    return bool((i >> l) & 1)


def stage_fix(i: int, l: int, m: int) -> int:
    """Fixed low-row-bit pattern of the stage-l rows active during phase i.

    The active rows are ``fix + z * 2**(m - l)`` for ``z`` in ``[0, 2**l)``;
    the fixed part encodes bits ``m - 1 .. l`` of the phase in reversed
    order.
    """
    fix = 0
    for p in range(m - l):
        fix |= ((i >> (m - 1 - p)) & 1) << p
    return fix


def butterfly_slices(i: int, l: int, m: int) -> tuple[slice, slice, slice]:
    """Row slices (top inputs, bottom inputs, outputs) for stage l, phase i.

    Top/bottom slices address stage ``l + 1`` values (or channel values when
    ``l == m - 1``); the output slice addresses the stage-l rows written
    this activation.  All three are strided slices over the row axis.
    """
    step = 1 << (m - l)
    pair = 1 << (m - 1 - l)
    fix = stage_fix(i, l, m)
    top_fix = fix & ~pair
    top = slice(top_fix, None, step)
    bot = slice(top_fix + pair, None, step)
    out = bot if stage_uses_g(i, l) else top
    return top, bot, out


def psum_block_slices(i: int, l: int, m: int) -> tuple[slice, slice]:
    """Row slices (tops, bottoms) for promoting decided bits to level l.

    After phase i ends a complete 2**l block of decisions, the level-l
    partial-sum wires over the block's rows are the stride-``2**(m - l)``
    butterfly of the level-(l-1) wires.  Pairing happens at row bit
    ``m - l``.
    """
    step = 1 << (m - l)
    fix = stage_fix(i, l, m)
    return slice(fix, None, 2 * step), slice(fix + step, None, 2 * step)


def completed_block_levels(i: int, m: int) -> range:
    """Levels whose decision block completes at phase i (1-based levels).

    Level l completes when i ends in l one-bits; levels above m - 1 are
    never needed because no g reads them.
    """
    ones = 0
    while ones < m - 1 and (i >> ones) & 1:
        ones += 1
    return range(1, ones + 1)


def single_vector_ops(n: int) -> list[tuple[int, str, int]]:
    """Per-clock stage activations decoding one vector: (stage, fn, phase).

    One entry per clock cycle; ``2 * n - 2`` entries total.  Stage l is
    activated ``2**(m - l)`` times, alternating f and g.
    """
    m = n.bit_length() - 1
    ops = []
    for i in range(n):
        for l in activation_stages(i, m):
            ops.append((l, "g" if stage_uses_g(i, l) else "f", i))
    return ops


def site_id(l: int, q: int) -> int:
    """Linear id of the partial-sum site attached to tree position (l, q)."""
    return (1 << l) - 1 + q


def num_sites(n: int) -> int:
    return n - 1


def enabled_sites(i: int, m: int) -> list[tuple[int, int]]:
    """Partial-sum sites (l, q) that must latch decision bit i.

    Bit i reaches the stage-l sites only when bit l of i is clear; the site
    indices are the sub-masks of the reversed low l bits of i.
    """
    sites = []
    for l in range(m):
        if (i >> l) & 1:
            continue
        rev = reversed_low_bits(i, l)
        q = rev
        while True:
            sites.append((l, q))
            if q == 0:
                break
            q = (q - 1) & rev
    return sites
