"""Password hashing: scrypt with a random per-user salt.

The stored form is self-describing (``scrypt$<n_exp>$<r>$<p>$<salt>$<key>``)
so parameters can be raised later without invalidating existing hashes.
"""

from __future__ import annotations

import hashlib
import hmac
import os

_SCHEME = "scrypt"
_SALT_BYTES = 16
_KEY_BYTES = 32

DEFAULT_N_EXP = 14
DEFAULT_R = 8
DEFAULT_P = 1


def hash_password(
    password: str,
    *,
    n_exp: int = DEFAULT_N_EXP,
    r: int = DEFAULT_R,
    p: int = DEFAULT_P,
) -> str:
    salt = os.urandom(_SALT_BYTES)
    key = hashlib.scrypt(
        password.encode("utf-8"), salt=salt, n=1 << n_exp, r=r, p=p, dklen=_KEY_BYTES
    )
    return f"{_SCHEME}${n_exp}${r}${p}${salt.hex()}${key.hex()}"


def verify_password(password: str, stored: str) -> bool:
    """Constant-time comparison against a stored hash; malformed stored
    values verify as False rather than raising."""
    try:
        scheme, n_exp, r, p, salt_hex, key_hex = stored.split("$")
        if scheme != _SCHEME:
            return False
        salt = bytes.fromhex(salt_hex)
        expected = bytes.fromhex(key_hex)
        candidate = hashlib.scrypt(
            password.encode("utf-8"),
            salt=salt,
            n=1 << int(n_exp),
            r=int(r),
            p=int(p),
            dklen=len(expected),
        )
    except (ValueError, TypeError):
        return False
    return hmac.compare_digest(candidate, expected)
