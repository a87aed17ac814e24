"""Size caps and seed derivation.

Caps keep exhaustive validations and enumerations at desk scale.  Each cap
can be overridden through an environment variable named COHOMOLIB_CAP_<NAME>.
Randomness is never ambient: callers pass explicit 64-bit seeds and
sub-streams are derived with :func:`derive_seed`.
"""

import hashlib
import os

# exhaustive table validation (associativity, instance checks)
CAP_TABLE = 4096
# enumeration of cochain spaces in the brute-force reference module
CAP_ENUM = 2 ** 24
# permutation degree |A|*|G|^2 (membership) and |A|*|G|^3 (counting)
CAP_POINTS = 2 ** 20
# default order-finding bound when an oracle reports no bound of its own
CAP_ORDER = 2 ** 20
# multiplier c in count = c * ceil(log2 |group|) for random generating sets
SAMPLE_MULTIPLIER = 4

_ENV_PREFIX = "COHOMOLIB_CAP_"


def cap(name: str, default: int) -> int:
    """Look up a cap, allowing COHOMOLIB_CAP_<NAME> overrides."""
    raw = os.environ.get(_ENV_PREFIX + name.upper())
    if raw is None:
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{_ENV_PREFIX}{name.upper()} must be positive")
    return value


def table_cap() -> int:
    return cap("table", CAP_TABLE)


def enum_cap() -> int:
    return cap("enum", CAP_ENUM)


def points_cap() -> int:
    return cap("points", CAP_POINTS)


def order_cap() -> int:
    return cap("order", CAP_ORDER)


def derive_seed(seed: int, *tags) -> int:
    """Derive a reproducible 64-bit sub-seed from a seed and a tag path."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(seed)).encode())
    for tag in tags:
        h.update(b"/")
        h.update(str(tag).encode())
    return int.from_bytes(h.digest(), "big")
