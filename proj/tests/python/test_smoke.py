"""Smoke tests for the python bindings."""

import math

import pytest

import bckks


def test_presets_listed():
    names = bckks.preset_names()
    assert "desk-256" in names
    assert any(n.startswith("paper-") for n in names)


def test_encrypt_decrypt_roundtrip_exact():
    ctx = bckks.get_preset("desk-256")
    keys = bckks.keygen(ctx, seed="ab")
    slots = [complex((i % 7) - 3, (i % 5) - 2) for i in range(ctx.ring.N // 2)]
    ct = bckks.encrypt(ctx, keys, slots, seed="ab")
    assert ct.noise_bound > 0
    back = bckks.decrypt(ctx, keys, ct)
    assert back == slots


def test_add_and_mul():
    ctx = bckks.get_preset("desk-256")
    keys = bckks.keygen(ctx, seed="01")
    slots = [complex(2, 0)] * (ctx.ring.N // 2)
    ct = bckks.encrypt(ctx, keys, slots, seed="01")
    total = bckks.add(ctx, ct, ct)
    assert bckks.decrypt(ctx, keys, total) == [complex(4, 0)] * len(slots)
    prod = bckks.mul(ctx, keys, ct, ct)
    assert prod.scale == ctx.delta * ctx.delta
    assert prod.noise_bound > ct.noise_bound


def test_refresh_zero_flooding_identity():
    ctx = bckks.get_preset("desk-64")
    keys = bckks.keygen(ctx, seed="02", refresh_key=True, test_mode_rk=True)
    slots = [complex(1, 0)] * (ctx.ring.N // 2)
    ct = bckks.encrypt(ctx, keys, slots, seed="02")
    rf = bckks.refresh(ctx, keys, ct, seed="02", zero_flooding=True)
    assert bckks.decrypt(ctx, keys, rf) == bckks.decrypt(ctx, keys, ct)


def test_eval_poly_square_plus_one():
    # Relinearization noise swamps the slot values at desk scale (see the
    # noise-report comparison), so this checks the tracked metadata, not the
    # decoded numbers.
    ctx = bckks.get_preset("desk-256")
    keys = bckks.keygen(ctx, seed="03")
    slots = [complex(3, 0)] * (ctx.ring.N // 2)
    ct = bckks.encrypt(ctx, keys, slots, seed="03")
    out, b_f, refreshes = bckks.eval_poly(ctx, keys, ct, [1.0, 0.0, 1.0], seed="03")
    assert out.scale == ctx.delta * ctx.delta
    p = bckks.NoiseParams()
    p.sigma, p.h, p.N, p.delta = ctx.sigma, ctx.h, ctx.ring.N, ctx.delta
    assert b_f == pytest.approx(2 * bckks.b_enc(p))  # sum |a_j| * B_enc
    assert refreshes == 0
    assert len(bckks.decrypt(ctx, keys, out, bckks.DecodeMode.Approximate)) == len(slots)


def test_noise_formulas():
    p = bckks.NoiseParams()
    p.sigma, p.h, p.N, p.delta = 3.19, 192, 8192, 2.0**40
    assert abs(bckks.b_enc(p) - 3.3e5) < 0.15 * 3.3e5
    assert bckks.prop1_predicate(p)
    p.delta = 2.0**10
    assert not bckks.prop1_predicate(p)


def test_bch_pipeline_roundtrip_with_flips():
    msg = [(i * 7 + 3) % 2 for i in range(8192)]
    coeffs = bckks.bch_pipeline_encode(msg, flips=[5, 999, 7000])
    assert bckks.bch_pipeline_decode(coeffs, M_bits=8192) == msg


def test_bch_failure_model():
    fm = bckks.bch_failure_prob(3e-7, 4, 127, 3, 257)
    assert math.isclose(fm.lam, 1.52e-4, rel_tol=0.01)
    assert abs(fm.success - 1.0) < 1e-12


def test_param_error_maps_to_value_error():
    ctx = bckks.get_preset("desk-256")
    keys = bckks.keygen(ctx, seed="04")
    with pytest.raises(ValueError):
        bckks.encrypt(ctx, keys, [complex(1, 0)], seed="04")  # wrong slot count
