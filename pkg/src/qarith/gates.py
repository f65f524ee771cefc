"""Adder and multiplier gates as basis-label maps, extended linearly.

Each gate rewrites register labels and never touches amplitudes, so norm
preservation and linearity hold by construction.  The strict multiplier
is partial: a source label of 0 collapses distinct targets onto one
label, so it is rejected rather than applied.  The reversible multiplier
sidesteps this by writing the product into a third register that must
start at 0.
"""

from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

from .states import Ket


class GateKind(Enum):
    PLUS = "PLUS"
    MINUS = "MINUS"
    TIMES_STRICT = "TIMES_STRICT"
    TIMES_REVERSIBLE = "TIMES_REVERSIBLE"


ARITY = {
    GateKind.PLUS: 2,
    GateKind.MINUS: 2,
    GateKind.TIMES_STRICT: 2,
    GateKind.TIMES_REVERSIBLE: 3,
}


class GateDomainError(ValueError):
    """Strict multiplication hit a component whose source label is 0."""

    def __init__(self, component: tuple[int, ...], roles: tuple[int, ...]):
        self.component = component
        self.roles = roles
        super().__init__(
            f"strict multiplier undefined on component {component}: "
            f"source register {roles[0]} holds label 0"
        )


class AncillaError(ValueError):
    """Reversible multiplication needs its result register at label 0."""

    def __init__(self, component: tuple[int, ...], register: int):
        self.component = component
        self.register = register
        super().__init__(
            f"result register {register} must hold label 0, "
            f"found component {component}"
        )


class ProgramStepError(RuntimeError):
    """A gate program failed; carries the offending step index."""

    def __init__(self, step_index: int, step: GateStep, cause: Exception):
        self.step_index = step_index
        self.step = step
        self.cause = cause
        super().__init__(f"step {step_index} ({step.kind.value} {step.roles}): {cause}")


def _check_roles(state: Ket, kind: GateKind, roles: tuple[int, ...]) -> None:
    if len(roles) != ARITY[kind]:
        raise ValueError(f"{kind.value} takes {ARITY[kind]} roles, got {roles}")
    if len(set(roles)) != len(roles):
        raise ValueError(f"roles must be distinct registers, got {roles}")
    for r in roles:
        if not isinstance(r, int) or r < 0 or r >= state.registers:
            raise ValueError(
                f"role {r!r} out of range for a {state.registers}-register state"
            )


def _relabel(state: Ket, fn: Callable[[tuple[int, ...]], tuple[int, ...]]) -> Ket:
    out: dict[tuple[int, ...], complex] = {}
    for key, amp in state.items():
        new = fn(key)
        out[new] = out.get(new, 0j) + amp
    return Ket(state.registers, out)


def apply_plus(state: Ket, roles: tuple[int, int] = (0, 1)) -> Ket:
    """Add the source label into the target: (..n.., ..m..) -> (..n.., ..n+m..)."""
    _check_roles(state, GateKind.PLUS, roles)
    s, t = roles

    def fn(key: tuple[int, ...]) -> tuple[int, ...]:
        new = list(key)
        new[t] = key[t] + key[s]
        return tuple(new)

    return _relabel(state, fn)


def apply_minus(state: Ket, roles: tuple[int, int] = (0, 1)) -> Ket:
    """Subtract the source label from the target; inverse of apply_plus."""
    _check_roles(state, GateKind.MINUS, roles)
    s, t = roles

    def fn(key: tuple[int, ...]) -> tuple[int, ...]:
        new = list(key)
        new[t] = key[t] - key[s]
        return tuple(new)

    return _relabel(state, fn)


def apply_times(
    state: Ket,
    mode: GateKind = GateKind.TIMES_STRICT,
    roles: tuple[int, ...] | None = None,
) -> Ket:
    if mode is GateKind.TIMES_STRICT:
        roles = (0, 1) if roles is None else roles
        _check_roles(state, mode, roles)
        s, t = roles

        def fn(key: tuple[int, ...]) -> tuple[int, ...]:
            if key[s] == 0:
                raise GateDomainError(key, (s, t))
            new = list(key)
            new[t] = key[s] * key[t]
            return tuple(new)

        return _relabel(state, fn)

    if mode is GateKind.TIMES_REVERSIBLE:
        roles = (0, 1, 2) if roles is None else roles
        _check_roles(state, mode, roles)
        a, b, c = roles

        def fn(key: tuple[int, ...]) -> tuple[int, ...]:
            if key[c] != 0:
                raise AncillaError(key, c)
            new = list(key)
            new[c] = key[a] * key[b]
            return tuple(new)

        return _relabel(state, fn)

    raise ValueError(f"not a multiplier mode: {mode!r}")


def iterate_plus(state: Ket, count: int, roles: tuple[int, int] = (0, 1)) -> Ket:
    """Apply the adder ``count`` times (count >= 0)."""
    if not isinstance(count, int) or count < 0:
        raise ValueError(f"iteration count must be a non-negative integer, got {count!r}")
    for _ in range(count):
        state = apply_plus(state, roles)
    return state


def apply_gate(state: Ket, kind: GateKind, roles: tuple[int, ...] | None = None) -> Ket:
    if kind is GateKind.PLUS:
        return apply_plus(state, (0, 1) if roles is None else roles)
    if kind is GateKind.MINUS:
        return apply_minus(state, (0, 1) if roles is None else roles)
    return apply_times(state, kind, roles)


@dataclass(frozen=True)
class GateStep:
    kind: GateKind
    roles: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"gate": self.kind.value, "roles": list(self.roles)}

    @staticmethod
    def from_json_dict(obj: object) -> GateStep:
        if not isinstance(obj, dict):
            raise ValueError(f"bad program step {obj!r}")
        name = obj.get("gate")
        try:
            kind = GateKind(name)
        except ValueError:
            raise ValueError(f"unknown gate {name!r}") from None
        roles = obj.get("roles")
        if (
            not isinstance(roles, list)
            or len(roles) != ARITY[kind]
            or not all(isinstance(r, int) and not isinstance(r, bool) for r in roles)
        ):
            raise ValueError(f"bad roles for {kind.value}: {roles!r}")
        return GateStep(kind, tuple(roles))


@dataclass(frozen=True)
class GateProgram:
    """A straight-line sequence of gate applications."""

    steps: tuple[GateStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def to_json_dict(self) -> dict:
        return {"steps": [s.to_json_dict() for s in self.steps]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(obj: object) -> GateProgram:
        if not isinstance(obj, dict) or not isinstance(obj.get("steps"), list):
            raise ValueError("program document needs a 'steps' list")
        return GateProgram(tuple(GateStep.from_json_dict(s) for s in obj["steps"]))

    @staticmethod
    def from_json(text: str) -> GateProgram:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON: {exc}") from exc
        return GateProgram.from_json_dict(obj)


def run_program(program: GateProgram, state: Ket) -> Ket:
    """Run each step in order; failures carry the step index."""
    for i, step in enumerate(program.steps):
        try:
            state = apply_gate(state, step.kind, step.roles)
        except (ValueError, GateDomainError, AncillaError) as exc:
            raise ProgramStepError(i, step, exc) from exc
    return state
