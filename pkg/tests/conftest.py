"""Shared helpers: frame generation and the exhaustive decision oracle."""

import numpy as np
import pytest

from polarsc import awgn_llr, bpsk_modulate, encode


def random_frames(spec, count, sigma, seed):
    """Noisy channel log-ratio frames for random valid messages.

    Returns (messages, llr_frames).
    """
    rng = np.random.default_rng(seed)
    u = np.zeros((count, spec.n), dtype=np.uint8)
    u[:, spec.info_indices] = rng.integers(0, 2, size=(count, spec.k), dtype=np.uint8)
    y = bpsk_modulate(encode(u, spec)) + sigma * rng.standard_normal((count, spec.n))
    return u, awgn_llr(y, sigma)


def oracle_phase_decision(llr, prefix_bits, i, spec):
    """Hard decision for phase i by summing channel likelihoods over every
    completion of the future input bits (uniform future, boundary -> 1)."""
    n = spec.n
    tail = n - 1 - i
    totals = []
    for b in (0, 1):
        blocks = np.zeros((1 << tail, n), dtype=np.uint8)
        blocks[:, :i] = prefix_bits
        blocks[:, i] = b
        if tail:
            completions = (np.arange(1 << tail)[:, None] >> np.arange(tail)) & 1
            blocks[:, i + 1:] = completions.astype(np.uint8)
        cw = encode(blocks, spec, check_frozen=False)
        weights = np.exp(((1.0 - 2.0 * cw) * llr / 2.0).sum(axis=1))
        totals.append(weights.sum())
    if spec.frozen_mask[i]:
        return 0
    return 0 if totals[0] > totals[1] else 1


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
