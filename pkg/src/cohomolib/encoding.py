"""Opaque element handles for simulated black-box groups.

Handles are 16-byte strings produced by a seeded keyed permutation of the
128-bit index space.  The permutation is an affine bijection x -> a*x + b
mod 2^128 with a odd; it is invertible only with the key, deterministic per
seed, and cheap enough that order finding at 48-bit moduli stays affordable.
Algorithms must treat handles as opaque; decoding is reserved for the oracle
implementations themselves and for test instrumentation.
"""

import hashlib

_MOD = 1 << 128
_MASK = _MOD - 1


def _key_material(seed: int, tag: bytes) -> bytes:
    h = hashlib.blake2b(digest_size=32, key=tag[:64] if tag else b"k")
    h.update(int(seed).to_bytes(8, "big", signed=False))
    return h.digest()


class HandleCodec:
    """Seeded keyed permutation of [0, 2^128) rendered as 16-byte handles."""

    def __init__(self, seed: int, tag: bytes = b""):
        material = _key_material(seed & (2 ** 64 - 1), tag)
        a = int.from_bytes(material[:16], "big") | 1
        b = int.from_bytes(material[16:], "big")
        self._a = a
        self._b = b
        # modular inverse of an odd a mod 2^128 via Newton iteration
        inv = a
        for _ in range(7):
            inv = (inv * (2 - a * inv)) & _MASK
        self._a_inv = inv

    def encode(self, x: int) -> bytes:
        if not 0 <= x < _MOD:
            raise ValueError("index out of 128-bit range")
        return ((x * self._a + self._b) & _MASK).to_bytes(16, "big")

    def decode(self, handle: bytes) -> int:
        if len(handle) != 16:
            raise ValueError("handles are 16-byte strings")
        y = int.from_bytes(handle, "big")
        return ((y - self._b) * self._a_inv) & _MASK
