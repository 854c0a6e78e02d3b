"""Built-in stabilizer codes, stored as code-file text so that every lookup
exercises the parser."""

from __future__ import annotations

from .gf4 import AdditiveCode, parse_code

CATALOG: dict[str, str] = {
    # Single qubit, trivial stabilizer group: detects nothing, P_ue = p.
    "trivial-n1": "# trivial single-qubit code\nn=1 k=1\n",
    # Bell state as a [[2,0]] code (one-dimensional, self-dual).
    "bell": "# Bell-state stabilizer\nn=2 k=0\nXX\nZZ\n",
    # The [[4,2,2]] detection code.
    "c422": "# [[4,2,2]]\nn=4 k=2\nXXXX\nZZZZ\n",
    # The [[5,1,3]] code, cyclic generators.
    "five13": "# [[5,1,3]]\nn=5 k=1\nXZZXI\nIXZZX\nXIXZZ\nZXIXZ\n",
}


def names() -> tuple[str, ...]:
    return tuple(CATALOG)


def get_code(name: str) -> AdditiveCode:
    """Parse a catalog entry."""
    return parse_code(CATALOG[name])
