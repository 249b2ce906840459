"""Golden-model successive cancellation decoder.

Decodes phase by phase: the soft decision value for phase i is obtained by
re-evaluating only the stages whose inputs changed (the recursive
predecessor-calling order unrolled), deciding the bit, and promoting it
into the partial-sum wires that later g computations read.  Every cycle
simulator must reproduce this decoder's output bit for bit.

All entry points accept a batch of frames; control flow is identical
across a batch, so frames vectorize cleanly.
"""

from __future__ import annotations

import numpy as np

from . import graph
from .codespec import CodeSpec, bit_reverse_permutation, encode
from .kernels import Kernel


def _sc_decode(values: np.ndarray, spec: CodeSpec, kernel: Kernel,
               force_bits: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray | None]:
    """Run SC decoding over a (batch, n) array of kernel-domain values.

    When ``force_bits`` is given, each phase's raw decision is compared to
    the forced bit, the mismatch is counted, and the forced bit is what
    propagates (genie mode, used for code construction).  Returns the
    decided bits and, in genie mode, the per-position error counts.
    """
    n, m = spec.n, spec.m
    batch = values.shape[0]
    perm = bit_reverse_permutation(m)

    stage = [np.empty((batch, n), dtype=np.float64) for _ in range(m)]
    stage.append(np.array(values, dtype=np.float64, copy=True))
    psum = [np.zeros((batch, n), dtype=np.uint8) for _ in range(m)]

    u_hat = np.zeros((batch, n), dtype=np.uint8)
    err_counts = np.zeros(n, dtype=np.int64) if force_bits is not None else None

    for i in range(n):
        for l in graph.activation_stages(i, m):
            top, bot, out = graph.butterfly_slices(i, l, m)
            a = stage[l + 1][:, top]
            b = stage[l + 1][:, bot]
            if graph.stage_uses_g(i, l):
                stage[l][:, out] = kernel.g(a, b, psum[l][:, top])
            else:
                stage[l][:, out] = kernel.f(a, b)

        row = perm[i]
        if force_bits is None and spec.frozen_mask[i]:
            bits = np.zeros(batch, dtype=np.uint8)
        else:
            bits = kernel.hard_decision(stage[0][:, row])
        if force_bits is not None:
            err_counts[i] = int(np.count_nonzero(bits != force_bits[:, i]))
            bits = force_bits[:, i]
        u_hat[:, i] = bits

        psum[0][:, row] = bits
        for l in graph.completed_block_levels(i, m):
            tops, bots = graph.psum_block_slices(i, l, m)
            psum[l][:, tops] = psum[l - 1][:, tops] ^ psum[l - 1][:, bots]
            psum[l][:, bots] = psum[l - 1][:, bots]

    return u_hat, err_counts


def decode_batch(frames, spec: CodeSpec, kernel: Kernel) -> tuple[np.ndarray, np.ndarray]:
    """Decode a (batch, n) array of kernel-domain channel values.

    Returns
    -------
    (u_hat, c_hat)
        Decided input blocks and their re-encoded codewords, both
        ``(batch, n)`` uint8 arrays.
    """
    frames = np.atleast_2d(np.asarray(frames, dtype=np.float64))
    if frames.shape[1] != spec.n:
        raise ValueError(f"frame length {frames.shape[1]} != code length {spec.n}")
    u_hat, _ = _sc_decode(frames, spec, kernel)
    return u_hat, encode(u_hat, spec)


def decode(channel_soft, spec: CodeSpec, kernel: Kernel) -> tuple[np.ndarray, np.ndarray]:
    """Decode one frame of kernel-domain channel values."""
    u_hat, c_hat = decode_batch(np.asarray(channel_soft)[None, :], spec, kernel)
    return u_hat[0], c_hat[0]


def genie_error_counts(n: int, noise_sigma: float, trials: int, seed: int,
                       batch: int = 512) -> np.ndarray:
    """Per-position first-error counts under genie-corrected decoding.

    Random full-rate blocks are encoded, sent as antipodal symbols through
    Gaussian noise, and decoded with every decision corrected to the true
    bit after its error is recorded.
    """
    from .channel import awgn_llr, bpsk_modulate

    m = n.bit_length() - 1
    spec = CodeSpec(m=m, frozen=())
    counts = np.zeros(n, dtype=np.int64)
    done = 0
    while done < trials:
        todo = min(batch, trials - done)
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=(seed, done)))
        )
        u = rng.integers(0, 2, size=(todo, n), dtype=np.uint8)
        c = encode(u, spec)
        y = bpsk_modulate(c) + noise_sigma * rng.standard_normal((todo, n))
        llr = awgn_llr(y, noise_sigma)
        _, errs = _sc_decode(Kernel.LLR_EXACT.from_llr(llr), spec,
                             Kernel.LLR_EXACT, force_bits=u)
        counts += errs
        done += todo
    return counts
