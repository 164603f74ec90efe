import random

import pytest

import rahl


@pytest.fixture(scope="module")
def setup():
    ctx = rahl.Context(n=16, k=3, seed=11)
    rng = rahl.Rng(11, "python-test")
    kp = rahl.keygen(ctx, rng)
    return ctx, rng, kp


def test_context(setup):
    ctx, _, _ = setup
    assert ctx.n == 16
    assert ctx.k == 3
    assert ctx.q_bits == 90
    assert ctx.ell == 89
    assert all(q % 32 == 1 for q in ctx.moduli)


def test_round_trip_and_add(setup):
    ctx, rng, kp = setup
    r = random.Random(0)
    for _ in range(20):
        a = [r.randint(0, 1) for _ in range(16)]
        b = [r.randint(0, 1) for _ in range(16)]
        ca, cb = rahl.encrypt(ctx, kp.pk, a, rng), rahl.encrypt(ctx, kp.pk, b, rng)
        assert rahl.decrypt(ctx, ca, kp.sk) == a
        assert rahl.decrypt(ctx, rahl.add(ca, cb), kp.sk) == [x ^ y for x, y in zip(a, b)]


def test_mul_and_relin(setup):
    ctx, rng, kp = setup
    v1 = rahl.relin_keygen_v1(ctx, kp.sk, rng)
    v2 = rahl.relin_keygen_v2(ctx, kp.sk, rng)
    a = [1, 0, 1, 1] + [0] * 12
    b = [0, 1, 1, 0] + [0] * 12
    d = rahl.mul(ctx, rahl.encrypt(ctx, kp.pk, a, rng), rahl.encrypt(ctx, kp.pk, b, rng))
    assert d.degree == 2
    want = rahl.ring_mul(a, b)
    for out in (rahl.relinearize_v1(ctx, d, v1), rahl.relinearize_v2(ctx, d, v2)):
        assert out.degree == 1
        assert rahl.decrypt(ctx, out, kp.sk) == want
        assert rahl.noise_budget(ctx, out, kp.sk, want) > 1.0


def test_errors(setup):
    ctx, rng, kp = setup
    with pytest.raises(rahl.RahlError):
        rahl.encrypt(ctx, kp.pk, [2] + [0] * 15, rng)
    with pytest.raises(rahl.RahlError):
        rahl.encrypt(ctx, kp.pk, [1, 0], rng)


def test_serialization_deterministic():
    def run():
        ctx = rahl.Context(n=16, k=3, seed=5)
        rng = rahl.Rng(5, "det")
        kp = rahl.keygen(ctx, rng)
        return rahl.to_bytes(ctx, rahl.encrypt(ctx, kp.pk, [1] * 16, rng))

    first = run()
    assert first[:4] == b"RAHL"
    assert first == run()


def test_lr_plain():
    assert rahl.lr_plain([0]) == 4
    assert rahl.lr_plain([8, 8]) == rahl.lr_plain([16])
