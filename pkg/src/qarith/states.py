"""Sparse kets over the integer-labeled computational basis.

A ket is a finite-support map from register label tuples to complex
amplitudes.  Labels are plain Python integers, so label arithmetic never
wraps or overflows.  All operations return new kets; instances never
mutate after construction.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterator, Mapping

# Components with squared magnitude below this are dropped at construction.
PRUNE_EPS_SQ = 1e-30

NORM_TOL = 1e-12


class ZeroNormError(ValueError):
    """Raised when normalizing a ket with no remaining amplitude."""


def _as_key(key: int | tuple[int, ...]) -> tuple[int, ...]:
    if isinstance(key, tuple):
        return key
    return (key,)


class Ket:
    """Finite superposition over one or more integer registers.

    ``amps`` maps label tuples (one label per register) to amplitudes.
    Near-zero components are pruned; the empty map is the zero vector.
    """

    __slots__ = ("_registers", "_amps")

    def __init__(self, registers: int, amps: Mapping[tuple[int, ...], complex] | None = None):
        if not isinstance(registers, int) or registers < 1:
            raise ValueError(f"register count must be a positive integer, got {registers!r}")
        clean: dict[tuple[int, ...], complex] = {}
        for key, amp in (amps or {}).items():
            key = _as_key(key)
            if len(key) != registers:
                raise ValueError(f"label tuple {key!r} does not match {registers} register(s)")
            for label in key:
                if not isinstance(label, int) or isinstance(label, bool):
                    raise ValueError(f"register label must be an integer, got {label!r}")
            amp = complex(amp)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise ValueError(f"non-finite amplitude at {key!r}")
            if amp.real * amp.real + amp.imag * amp.imag >= PRUNE_EPS_SQ:
                clean[key] = amp
        self._registers = registers
        self._amps = clean

    @property
    def registers(self) -> int:
        return self._registers

    def amplitude(self, key: int | tuple[int, ...]) -> complex:
        return self._amps.get(_as_key(key), 0j)

    def items(self) -> Iterator[tuple[tuple[int, ...], complex]]:
        return iter(self._amps.items())

    def sorted_items(self) -> list[tuple[tuple[int, ...], complex]]:
        """Components in ascending label order; the serialization order."""
        return sorted(self._amps.items(), key=lambda kv: kv[0])

    def support(self) -> set[tuple[int, ...]]:
        return set(self._amps)

    def __len__(self) -> int:
        return len(self._amps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ket):
            return NotImplemented
        return self._registers == other._registers and self._amps == other._amps

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {a:.6g}" for k, a in self.sorted_items()[:4])
        tail = ", ..." if len(self) > 4 else ""
        return f"Ket(registers={self._registers}, {{{body}{tail}}})"

    def norm_sq(self) -> float:
        return sum(a.real * a.real + a.imag * a.imag for a in self._amps.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> Ket:
        n = self.norm()
        if n == 0.0:
            raise ZeroNormError("cannot normalize the zero vector")
        return self.scaled(1.0 / n)

    def scaled(self, factor: complex) -> Ket:
        return Ket(self._registers, {k: factor * a for k, a in self._amps.items()})

    def add_scaled(self, factor: complex, other: Ket) -> Ket:
        """Return self + factor * other.  Register counts must match."""
        self._check_compatible(other)
        out = dict(self._amps)
        for key, amp in other._amps.items():
            out[key] = out.get(key, 0j) + factor * amp
        return Ket(self._registers, out)

    def inner(self, other: Ket) -> complex:
        """Inner product, conjugate-linear in self."""
        self._check_compatible(other)
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        total = 0j
        for key, amp in small._amps.items():
            peer = big._amps.get(key)
            if peer is not None:
                if small is self:
                    total += amp.conjugate() * peer
                else:
                    total += peer.conjugate() * amp
        return total

    def distance(self, other: Ket) -> float:
        self._check_compatible(other)
        keys = set(self._amps) | set(other._amps)
        return math.sqrt(
            sum(abs(self._amps.get(k, 0j) - other._amps.get(k, 0j)) ** 2 for k in keys)
        )

    def approx_eq(self, other: Ket, tol: float = 1e-12) -> bool:
        return self._registers == other._registers and self.distance(other) <= tol

    def tensor(self, other: Ket) -> Ket:
        """Product ket; the register tuples concatenate."""
        out: dict[tuple[int, ...], complex] = {}
        for ka, aa in self._amps.items():
            for kb, ab in other._amps.items():
                out[ka + kb] = aa * ab
        return Ket(self._registers + other._registers, out)

    def _check_compatible(self, other: Ket) -> None:
        if not isinstance(other, Ket):
            raise TypeError(f"expected a Ket, got {type(other).__name__}")
        if self._registers != other._registers:
            raise ValueError(
                f"register counts differ: {self._registers} vs {other._registers}"
            )

    def to_json_dict(self) -> dict:
        terms = []
        for key, amp in self.sorted_items():
            entry: dict = {"label": key[0]} if self._registers == 1 else {"labels": list(key)}
            entry["re"] = amp.real
            entry["im"] = amp.imag
            terms.append(entry)
        return {"registers": self._registers, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(obj: object) -> Ket:
        if not isinstance(obj, dict):
            raise ValueError("state document must be a JSON object")
        registers = obj.get("registers")
        if not isinstance(registers, int) or isinstance(registers, bool) or registers < 1:
            raise ValueError(f"bad register count {registers!r}")
        terms = obj.get("terms")
        if not isinstance(terms, list):
            raise ValueError("state document needs a 'terms' list")
        amps: dict[tuple[int, ...], complex] = {}
        for entry in terms:
            if not isinstance(entry, dict):
                raise ValueError(f"bad term entry {entry!r}")
            if registers == 1:
                if "label" not in entry:
                    raise ValueError(f"term entry missing 'label': {entry!r}")
                raw = entry["label"]
                labels = [raw]
            else:
                raw = entry.get("labels")
                if not isinstance(raw, list) or len(raw) != registers:
                    raise ValueError(f"term entry needs {registers} labels: {entry!r}")
                labels = raw
            for v in labels:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ValueError(f"register label must be an integer, got {v!r}")
            re = entry.get("re", 0.0)
            im = entry.get("im", 0.0)
            if isinstance(re, bool) or isinstance(im, bool):
                raise ValueError("amplitude parts must be numbers")
            if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
                raise ValueError("amplitude parts must be numbers")
            key = tuple(labels)
            if key in amps:
                raise ValueError(f"duplicate basis label {key!r}")
            amps[key] = complex(re, im)
        return Ket(registers, amps)

    @staticmethod
    def from_json(text: str) -> Ket:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON: {exc}") from exc
        return Ket.from_json_dict(obj)


def basis_ket(*labels: int) -> Ket:
    """Computational basis ket with one register per label."""
    if not labels:
        raise ValueError("need at least one register label")
    return Ket(len(labels), {tuple(labels): 1.0 + 0j})


def superposition(terms: Mapping[int | tuple[int, ...], complex]) -> Ket:
    """Ket from a label -> amplitude map; register count inferred from keys."""
    if not terms:
        raise ValueError("empty superposition is ambiguous; construct Ket directly")
    keys = [_as_key(k) for k in terms]
    return Ket(len(keys[0]), dict(zip(keys, terms.values())))
