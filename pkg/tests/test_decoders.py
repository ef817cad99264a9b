from __future__ import annotations

import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from stopred import _kernels as K
from stopred import codes as cd
from stopred.decoders import (
    ChannelContractError,
    ReceivedWord,
    Schedule,
    agd_a_schedule,
    agd_b_schedule,
    agd_decode,
    check_positions,
    classical_pd_decode,
    explicit_schedule,
    iterative_decode,
    ml_decode,
)
from stopred.gf2 import BitVector, popcount
from stopred.perms import Permutation, c1_group, c2_group, parse_cycles, wolfmann_set
from stopred.stopsets import _words, frame_stack, peel_mask, smallest_stopping_set

GOLAY = cd.golay24()
W_H = cd.golay24_wolfmann()
GOLAY_WORDS = oracles.codewords(GOLAY.generator)


def golay_cog_setup():
    C = cd.golay24_extended()
    cg = cd.cogs(cd.min_weight_words(C, 8), 24, extended=True)
    return C, cd.cog_matrix(cg, 12)


def test_received_word_text():
    y = ReceivedWord.from_str("01?1")
    assert str(y) == "01?1" and y.erasures.indices == (2,)
    with pytest.raises(ValueError):
        ReceivedWord.from_str("01x")


def test_iterative_examples():
    c = BitVector(24, GOLAY_WORDS[1234])
    out = iterative_decode(W_H, ReceivedWord.from_codeword(c))
    assert out.recovered and out.codeword == c and out.perms_tried == 1
    supp = W_H.rows[3]
    out = iterative_decode(W_H, ReceivedWord(24, 0, supp))
    assert not out.recovered and out.residual.mask == supp


def test_iterative_recovers_below_stopping_distance():
    rng = random.Random(0)
    for _ in range(200):
        c = rng.choice(GOLAY_WORDS)
        E = rng.sample(range(24), 3)
        out = iterative_decode(W_H, ReceivedWord.from_codeword(BitVector(24, c), E))
        assert out.recovered and out.codeword.bits == c


def test_channel_contract_violation():
    y = ReceivedWord(24, 1, 0)
    with pytest.raises(ChannelContractError):
        iterative_decode(W_H, y)
    with pytest.raises(ChannelContractError):
        ml_decode(W_H, y)


def test_empty_schedule_matches_iterative_exhaustive_hamming():
    C = cd.hamming7()
    H = C.parity
    words = oracles.codewords(C.generator)
    sched = explicit_schedule([])
    for c, e in product(words, range(1 << 7)):
        y = ReceivedWord(7, c, e)
        a, b = iterative_decode(H, y), agd_decode(C, H, sched, y)
        assert (a.status, a.codeword, a.residual) == (b.status, b.codeword, b.residual)


def test_identity_schedule_matches_iterative_sampled_golay():
    rng = random.Random(1)
    sched = explicit_schedule([Permutation.identity(24)])
    for _ in range(500):
        c = rng.choice(GOLAY_WORDS)
        y = ReceivedWord(24, c, rng.getrandbits(24) & rng.getrandbits(24))
        a, b = iterative_decode(W_H, y), agd_decode(GOLAY, W_H, sched, y)
        assert (a.status, a.codeword, a.residual) == (b.status, b.codeword, b.residual)


def test_zero_erasures_one_frame():
    C, H = golay_cog_setup()
    out = agd_decode(C, H, agd_a_schedule(24, True, 0), ReceivedWord(24))
    assert out.recovered and out.perms_tried == 1


def test_single_shift_rescues_stuck_pattern(bch_cog_matrix):
    H = bch_cog_matrix
    C = cd.bch31_16()
    E = smallest_stopping_set(H).mask
    shifts = list(c1_group(31))[1:]
    p = next(p for p in shifts if peel_mask(H.rows, p.permute_mask(E)) == 0)
    out = agd_decode(C, H, explicit_schedule([p]), ReceivedWord(31, 0, E))
    assert out.recovered and out.perms_tried == 2
    assert iterative_decode(H, ReceivedWord(31, 0, E)).residual.mask == E


def test_non_automorphism_rejected():
    with pytest.raises(ValueError):
        agd_decode(GOLAY, W_H, explicit_schedule([parse_cycles("(0,1)", 24)]), ReceivedWord(24))


def test_schedule_rules():
    a = agd_a_schedule(23, seed=5)
    assert set(a.perms) == set(list(c1_group(23))[1:])
    assert a == agd_a_schedule(23, seed=5) and a != agd_a_schedule(23, seed=6)
    b = agd_b_schedule(31, seed=5)
    c1 = set(c1_group(31))
    k = len(c1) - 1
    assert set(b.perms[:k]) == c1 - {Permutation.identity(31)}
    assert set(b.perms[k:]) <= set(c2_group(31)) and len(set(b.perms)) == len(b.perms)
    with pytest.raises(ValueError):
        Schedule("explicit", (a.perms[0], a.perms[0]))


def test_agd_decoder_agrees_with_kernel():
    C, H = golay_cog_setup()
    rng = random.Random(2)
    for memoryless in (False, True):
        sched = agd_a_schedule(24, True, 9)
        stack = frame_stack(H, sched.frames(24))
        for _ in range(400):
            E = sum(1 << i for i in rng.sample(range(24), rng.randint(8, 12)))
            out = agd_decode(C, H, sched, ReceivedWord(24, 0, E), memoryless)
            res = int(K.frames_residual(stack, np.uint64(E), memoryless))
            assert out.recovered == (res == 0)
            if res:
                assert out.residual.mask == res


def test_agd_success_monotone_in_schedule():
    C, H = golay_cog_setup()
    rng = random.Random(4)
    full = agd_a_schedule(24, True, 3)
    for _ in range(300):
        E = sum(1 << i for i in rng.sample(range(24), 11))
        y = ReceivedWord(24, 0, E)
        cut = rng.randint(0, len(full.perms))
        short = explicit_schedule(full.perms[:cut])
        if agd_decode(C, H, short, y).recovered:
            assert agd_decode(C, H, full, y).recovered


@settings(max_examples=60)
@given(st.integers(0, 4095), st.integers(0, (1 << 24) - 1))
def test_recovered_words_valid(ci, e):
    c = GOLAY_WORDS[ci]
    y = ReceivedWord(24, c, e)
    for out in (
        iterative_decode(W_H, y),
        agd_decode(GOLAY, W_H, explicit_schedule(wolfmann_set()), y),
        ml_decode(W_H, y),
    ):
        if out.recovered:
            assert W_H.syndrome(out.codeword) == 0
            assert (out.codeword.bits ^ c) & ~e == 0
            assert out.codeword.bits == c or oracles.ml_undecodable(GOLAY_WORDS, e)


@settings(max_examples=60)
@given(st.integers(0, (1 << 24) - 1))
def test_ml_matches_codeword_support_oracle(e):
    out = ml_decode(W_H, ReceivedWord(24, 0, e))
    assert out.recovered != oracles.ml_undecodable(GOLAY_WORDS, e)


def test_check_positions():
    assert check_positions(W_H) == list(range(12))


def test_classical_pd_simple_cases():
    W = wolfmann_set()
    c = GOLAY_WORDS[77]
    out = classical_pd_decode(GOLAY, W_H, W, ReceivedWord(24, c), 3)
    assert out.recovered and out.codeword.bits == c and out.perms_tried == 1
    out = classical_pd_decode(GOLAY, W_H, W, ReceivedWord(24, c ^ 0b10011), 3)
    assert out.codeword.bits == c and out.perms_tried == 1


def test_classical_pd_sampled_weight_three():
    W = wolfmann_set()
    rng = random.Random(8)
    for _ in range(300):
        c = rng.choice(GOLAY_WORDS)
        e = sum(1 << i for i in rng.sample(range(24), rng.randint(1, 3)))
        out = classical_pd_decode(GOLAY, W_H, W, ReceivedWord(24, c ^ e), 3)
        assert out.recovered and out.codeword.bits == c


def test_classical_pd_identity_only_fails_on_information_errors():
    e = 0b111 << 12
    assert popcount(W_H.syndrome(e)) > 3
    out = classical_pd_decode(GOLAY, W_H, [], ReceivedWord(24, e), 3)
    assert not out.recovered
