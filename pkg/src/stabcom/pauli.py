"""N-qubit Pauli group elements in binary symplectic form.

An element is stored as two packed bit vectors ``x`` and ``z`` (Python ints,
bit ``k`` belongs to qubit ``k``) and a phase exponent ``s`` modulo 4::

    P = i**s * prod_k  i**(x_k z_k) X**x_k Z**z_k

With this convention ``Y`` is ``x=z=1, s=0``, and an element is Hermitian
exactly when ``s`` is even. Qubit 0 is the leftmost letter of the text form.
"""
from __future__ import annotations

from dataclasses import dataclass

_LETTERS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_SYMBOLS = {v: k for k, v in _LETTERS.items()}


@dataclass(frozen=True, slots=True)
class PauliElement:
    """Immutable Pauli group element ``i**s * X**x Z**z`` (with Y = iXZ)."""

    n: int
    x: int
    z: int
    s: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask or self.x < 0 or self.z < 0:
            raise ValueError("bit vector wider than qubit count")
        if not 0 <= self.s < 4:
            raise ValueError(f"phase exponent must be in 0..3, got {self.s}")

    @property
    def is_hermitian(self) -> bool:
        return self.s % 2 == 0

    @property
    def is_identity(self) -> bool:
        """True for any phase multiple of the identity."""
        return self.x == 0 and self.z == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian elements."""
        if self.s % 2:
            raise ValueError(f"{self!r} is not Hermitian")
        return 1 - self.s

    def letter(self, q: int) -> str:
        return _SYMBOLS[(self.x >> q) & 1, (self.z >> q) & 1]

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def with_sign(self, sign: int) -> PauliElement:
        """Return the same letters with overall phase ``sign`` (+1 or -1)."""
        return PauliElement(self.n, self.x, self.z, 0 if sign == 1 else 2)

    def __mul__(self, other: PauliElement) -> PauliElement:
        return multiply(self, other)

    def __neg__(self) -> PauliElement:
        return PauliElement(self.n, self.x, self.z, (self.s + 2) % 4)

    def commutes(self, other: PauliElement) -> bool:
        return symplectic_product(self, other) == 0

    def __str__(self) -> str:
        return format_pauli(self)


def identity(n: int) -> PauliElement:
    return PauliElement(n, 0, 0, 0)


def single(n: int, q: int, letter: str, sign: int = 1) -> PauliElement:
    """``letter`` on qubit ``q`` of an ``n``-qubit register, identity elsewhere."""
    if not 0 <= q < n:
        raise IndexError(f"qubit {q} out of range for n={n}")
    bx, bz = _LETTERS[letter.upper()]
    return PauliElement(n, bx << q, bz << q, 0 if sign == 1 else 2)


def _check_width(a: PauliElement, b: PauliElement) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n} qubits")


def multiply(a: PauliElement, b: PauliElement) -> PauliElement:
    """Exact matrix product ``a @ b`` including the phase.

    Moving ``Z**z`` of ``a`` past ``X**x'`` of ``b`` costs ``(-1)**(z x')`` per
    qubit; the ``i**(x z)`` prefactors of both inputs are collected and the one
    belonging to the result is divided out again. All four counts are
    popcounts over the packed words.
    """
    _check_width(a, b)
    x = a.x ^ b.x
    z = a.z ^ b.z
    s = (
        a.s
        + b.s
        + (a.x & a.z).bit_count()
        + (b.x & b.z).bit_count()
        + 2 * (a.z & b.x).bit_count()
        - (x & z).bit_count()
    )
    return PauliElement(a.n, x, z, s % 4)


def symplectic_product(a: PauliElement, b: PauliElement) -> int:
    """``sum_k (x_k z'_k - z_k x'_k) mod 2``; 0 iff ``a`` and ``b`` commute."""
    _check_width(a, b)
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) & 1


def _check_qubit(p: PauliElement, q: int) -> None:
    if not 0 <= q < p.n:
        raise IndexError(f"qubit {q} out of range for n={p.n}")


def conjugate_h(p: PauliElement, q: int) -> PauliElement:
    """``H p H`` with H on qubit ``q``: X <-> Z, Y -> -Y."""
    _check_qubit(p, q)
    bx = (p.x >> q) & 1
    bz = (p.z >> q) & 1
    flip = 1 << q
    x = p.x ^ flip if bx != bz else p.x
    z = p.z ^ flip if bx != bz else p.z
    return PauliElement(p.n, x, z, (p.s + 2 * (bx & bz)) % 4)


def conjugate_s(p: PauliElement, q: int) -> PauliElement:
    """``S p S^dagger`` with S on qubit ``q``: X -> Y, Y -> -X, Z -> Z."""
    _check_qubit(p, q)
    bx = (p.x >> q) & 1
    bz = (p.z >> q) & 1
    return PauliElement(p.n, p.x, p.z ^ (bx << q), (p.s + 2 * (bx & bz)) % 4)


def conjugate_cnot(p: PauliElement, control: int, target: int) -> PauliElement:
    """``CNOT p CNOT``: X on control spreads to target, Z on target to control."""
    _check_qubit(p, control)
    _check_qubit(p, target)
    if control == target:
        raise ValueError("CNOT control and target must differ")
    xc = (p.x >> control) & 1
    zc = (p.z >> control) & 1
    xt = (p.x >> target) & 1
    zt = (p.z >> target) & 1
    flip = xc & zt & (xt ^ zc ^ 1)
    return PauliElement(
        p.n, p.x ^ (xc << target), p.z ^ (zt << control), (p.s + 2 * flip) % 4
    )


def parse_pauli(text: str) -> PauliElement:
    """Parse ``[+-]?[IXYZ]+`` (sign defaults to +)."""
    body = text.strip()
    s = 0
    if body[:1] in ("+", "-"):
        s = 2 if body[0] == "-" else 0
        body = body[1:]
    if not body:
        raise ValueError(f"empty Pauli string: {text!r}")
    x = z = 0
    for q, ch in enumerate(body):
        try:
            bx, bz = _LETTERS[ch]
        except KeyError:
            raise ValueError(f"bad Pauli letter {ch!r} in {text!r}") from None
        x |= bx << q
        z |= bz << q
    return PauliElement(len(body), x, z, s)


def format_pauli(p: PauliElement) -> str:
    prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[p.s]
    return prefix + "".join(p.letter(q) for q in range(p.n))


def extend(p: PauliElement, k: int = 1) -> PauliElement:
    """Append ``k`` identity qubits on the right."""
    return PauliElement(p.n + k, p.x, p.z, p.s)


def drop_last(p: PauliElement) -> PauliElement:
    """Remove the last qubit, which must carry the identity."""
    q = p.n - 1
    if (p.x >> q) & 1 or (p.z >> q) & 1:
        raise ValueError(f"last qubit of {format_pauli(p)} is not the identity")
    mask = (1 << q) - 1
    return PauliElement(q, p.x & mask, p.z & mask, p.s)


def swap_qubits(p: PauliElement, a: int, b: int) -> PauliElement:
    """Relabel qubits ``a`` and ``b`` (a column swap; no phase change)."""
    _check_qubit(p, a)
    _check_qubit(p, b)

    def swap_bits(v: int) -> int:
        if ((v >> a) ^ (v >> b)) & 1:
            v ^= (1 << a) | (1 << b)
        return v

    return PauliElement(p.n, swap_bits(p.x), swap_bits(p.z), p.s)
