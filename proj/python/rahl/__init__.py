"""Python bindings for the rahl FV library."""

from ._rahl import (
    Context,
    Rng,
    RahlError,
    add,
    decrypt,
    encrypt,
    keygen,
    lr_plain,
    mul,
    noise_budget,
    relin_keygen_v1,
    relin_keygen_v2,
    relinearize_v1,
    relinearize_v2,
    ring_mul,
    to_bytes,
)

__all__ = [
    "Context",
    "Rng",
    "RahlError",
    "add",
    "decrypt",
    "encrypt",
    "keygen",
    "lr_plain",
    "mul",
    "noise_budget",
    "relin_keygen_v1",
    "relin_keygen_v2",
    "relinearize_v1",
    "relinearize_v2",
    "ring_mul",
    "to_bytes",
]
