"""Basis keys and sparse formal linear combinations.

Every algebra or coalgebra element in this library is a finite map from
canonical basis keys to exact scalars.  A :class:`BasisKey` is a tagged,
immutable payload of nested tuples, ints and strings; equal mathematical
basis elements always carry byte-identical encodings, and the byte encoding
induces the deterministic total order used everywhere (term sorting, golden
rendering, sweep order).

:class:`FormalSum` and :class:`TensorSum` never store a zero coefficient, so
equality of sums is plain map equality.  Both are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .scalars import render_scalar

Payload = object  # nested tuples of int/str


class BasisKey:
    """A canonical basis element: a family tag plus a structured payload."""

    __slots__ = ("tag", "payload", "_enc", "_hash")

    def __init__(self, tag: str, payload=()):
        self.tag = tag
        self.payload = payload
        self._enc = None
        self._hash = hash((tag, payload))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BasisKey)
            and self.tag == other.tag
            and self.payload == other.payload
        )

    def __hash__(self) -> int:
        return self._hash

    def encoded(self) -> bytes:
        """Canonical byte encoding; injective and order-defining."""
        if self._enc is None:
            self._enc = b"k" + _encode_atom(self.tag) + _encode_atom(self.payload)
        return self._enc

    def __lt__(self, other: "BasisKey") -> bool:
        return self.encoded() < other.encoded()

    def __le__(self, other: "BasisKey") -> bool:
        return self.encoded() <= other.encoded()

    def __repr__(self) -> str:
        return f"BasisKey({self.tag!r}, {self.payload!r})"

    def __str__(self) -> str:
        return key_literal(self)


def _encode_atom(x) -> bytes:
    if isinstance(x, bool):  # bool is an int subtype; keep distinct
        return b"b1" if x else b"b0"
    if isinstance(x, int):
        s = str(x).encode()
        return b"i" + str(len(s)).encode() + b":" + s
    if isinstance(x, str):
        s = x.encode()
        return b"s" + str(len(s)).encode() + b":" + s
    if isinstance(x, tuple):
        return b"t" + str(len(x)).encode() + b":" + b"".join(_encode_atom(v) for v in x)
    raise TypeError(f"unencodable payload atom {x!r}")


def _decode_atom(buf: bytes, pos: int):
    kind = buf[pos : pos + 1]
    if kind == b"b":
        return buf[pos + 1 : pos + 2] == b"1", pos + 2
    colon = buf.index(b":", pos + 1)
    n = int(buf[pos + 1 : colon])
    if kind == b"i":
        return int(buf[colon + 1 : colon + 1 + n]), colon + 1 + n
    if kind == b"s":
        return buf[colon + 1 : colon + 1 + n].decode(), colon + 1 + n
    if kind == b"t":
        items = []
        p = colon + 1
        for _ in range(n):
            v, p = _decode_atom(buf, p)
            items.append(v)
        return tuple(items), p
    raise ValueError(f"bad encoding at byte {pos}")


def decode_key(buf: bytes) -> BasisKey:
    if not buf.startswith(b"k"):
        raise ValueError("not a key encoding")
    tag, pos = _decode_atom(buf, 1)
    payload, pos = _decode_atom(buf, pos)
    if pos != len(buf):
        raise ValueError("trailing bytes in key encoding")
    return BasisKey(tag, payload)


# Per-family literal renderers, registered by the modules that own each tag.
_LITERALS: dict[str, Callable[[BasisKey], str]] = {}


def register_literal(tag: str, fn: Callable[[BasisKey], str]) -> None:
    _LITERALS[tag] = fn


def key_literal(key: BasisKey) -> str:
    fn = _LITERALS.get(key.tag)
    if fn is not None:
        return fn(key)
    return f"{key.tag}:{key.payload!r}"


@lru_cache(maxsize=None)
def _sort_key(key: BasisKey) -> bytes:
    return key.encoded()


class FormalSum:
    """A finite linear combination of basis keys with nonzero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, _clean: bool = False):
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            self.terms = {k: c for k, c in terms.items() if c}

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls({}, _clean=True)

    @classmethod
    def basis(cls, key: BasisKey, coeff=Fraction(1)) -> "FormalSum":
        if not coeff:
            return cls.zero()
        return cls({key: coeff}, _clean=True)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, key: BasisKey):
        return self.terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self.terms)
        _iadd(out, other.terms)
        return FormalSum(out, _clean=True)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self.terms)
        for k, c in other.terms.items():
            nc = out.get(k, 0) - c
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
        return FormalSum(out, _clean=True)

    def __neg__(self) -> "FormalSum":
        return FormalSum({k: -c for k, c in self.terms.items()}, _clean=True)

    def scale(self, c) -> "FormalSum":
        if not c:
            return FormalSum.zero()
        return FormalSum({k: c * v for k, v in self.terms.items()}, _clean=True)

    def map_keys(self, fn: Callable[[BasisKey], "FormalSum"]) -> "FormalSum":
        """Linear extension of a key-to-sum map."""
        out: dict = {}
        for k, c in self.terms.items():
            for k2, c2 in fn(k).terms.items():
                _addto(out, k2, c * c2)
        return FormalSum(out, _clean=True)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"{render_scalar(c)}*{key_literal(k)}" for k, c in self.sorted_terms()]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<FormalSum {self.render()}>"


def _addto(d: dict, k, c) -> None:
    nc = d.get(k, 0) + c
    if nc:
        d[k] = nc
    else:
        d.pop(k, None)


def _iadd(d: dict, other: dict) -> None:
    for k, c in other.items():
        nc = d.get(k, 0) + c
        if nc:
            d[k] = nc
        else:
            d.pop(k, None)


class TensorSum:
    """A finite sum of two-fold tensors, stored flat as pair keys."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, _clean: bool = False):
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            self.terms = {k: c for k, c in terms.items() if c}

    @classmethod
    def zero(cls) -> "TensorSum":
        return cls({}, _clean=True)

    @classmethod
    def pure(cls, left: BasisKey, right: BasisKey, coeff=Fraction(1)) -> "TensorSum":
        if not coeff:
            return cls.zero()
        return cls({(left, right): coeff}, _clean=True)

    @classmethod
    def of(cls, pairs: Iterable) -> "TensorSum":
        """Accumulate ``(left, right, coeff)`` or ``(left, right)`` triples."""
        out: dict = {}
        for item in pairs:
            if len(item) == 2:
                a, b = item
                c = Fraction(1)
            else:
                a, b, c = item
            _addto(out, (a, b), c)
        return cls(out, _clean=True)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, left: BasisKey, right: BasisKey):
        return self.terms.get((left, right), Fraction(0))

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "TensorSum") -> "TensorSum":
        out = dict(self.terms)
        _iadd(out, other.terms)
        return TensorSum(out, _clean=True)

    def __sub__(self, other: "TensorSum") -> "TensorSum":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "TensorSum":
        if not c:
            return TensorSum.zero()
        return TensorSum({k: c * v for k, v in self.terms.items()}, _clean=True)

    def flip(self) -> "TensorSum":
        return TensorSum({(b, a): c for (a, b), c in self.terms.items()}, _clean=True)

    def tensor_mul(self, other: "TensorSum", product) -> "TensorSum":
        """Componentwise product ``(a (x) b)(c (x) d) = ac (x) bd``.

        ``product(k1, k2)`` must return a FormalSum.
        """
        out: dict = {}
        for (a, b), c1 in self.terms.items():
            for (x, y), c2 in other.terms.items():
                left = product(a, x)
                right = product(b, y)
                for ka, ca in left.terms.items():
                    for kb, cb in right.terms.items():
                        _addto(out, (ka, kb), c1 * c2 * ca * cb)
        return TensorSum(out, _clean=True)

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (_sort_key(kv[0][0]), _sort_key(kv[0][1])),
        )

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = [
            f"{render_scalar(c)}*{key_literal(a)}(x){key_literal(b)}"
            for (a, b), c in self.sorted_terms()
        ]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<TensorSum {self.render()}>"
