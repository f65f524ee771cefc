"""Named verification suites runnable from the command line.

Every check is a pure function of the configuration and the seeded
generator, and reports carry no clocks or environment details, so a
suite run with the same seed and configuration produces identical
bytes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import dynamics, gates, logic, terms
from .config import Config
from .states import Ket, ZeroNormError, basis_ket, superposition


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str

    def to_json_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _random_ket(
    rng: np.random.Generator,
    registers: int,
    support: int,
    lo: int = -50,
    hi: int = 50,
    nonzero_first: bool = False,
    zero_last: bool = False,
) -> Ket:
    keys: set[tuple[int, ...]] = set()
    while len(keys) < support:
        key = tuple(int(v) for v in rng.integers(lo, hi + 1, size=registers))
        if nonzero_first and key[0] == 0:
            continue
        if zero_last:
            key = key[:-1] + (0,)
        keys.add(key)
    amps = {k: complex(rng.normal(), rng.normal()) for k in sorted(keys)}
    return Ket(registers, amps).normalized()


# --- sparse state algebra ----------------------------------------------------


def check_basis_orthonormality(config: Config, rng: np.random.Generator) -> CheckResult:
    tol = config.tol("inner")
    worst = 0.0
    count = 0
    for i in range(-12, 13):
        for j in range(-12, 13):
            expected = 1.0 if i == j else 0.0
            worst = max(worst, abs(basis_ket(i).inner(basis_ket(j)) - expected))
            count += 1
    return CheckResult(
        "basis_orthonormality", worst <= tol, f"{count} pairs, worst deviation {worst:.2e}"
    )


def check_norm_algebra(config: Config, rng: np.random.Generator) -> CheckResult:
    tol = config.tol("inner")
    worst = 0.0
    for _ in range(60):
        a = _random_ket(rng, 1, int(rng.integers(1, 13)))
        b = _random_ket(rng, 1, int(rng.integers(1, 13)))
        c = a.add_scaled(complex(rng.normal(), rng.normal()), b)
        worst = max(worst, abs(a.tensor(b).norm() - a.norm() * b.norm()))
        worst = max(
            worst,
            abs(a.tensor(c).inner(b.tensor(a)) - a.inner(b) * c.inner(a)),
        )
    return CheckResult("norm_algebra", worst <= tol, f"60 sampled pairs, worst {worst:.2e}")


def check_distance_fixed(config: Config, rng: np.random.Generator) -> CheckResult:
    s = 1.0 / math.sqrt(2.0)
    d = basis_ket(0).distance(superposition({0: s, 1: s}))
    expected = math.sqrt(2.0 - math.sqrt(2.0))
    dev = abs(d - expected)
    return CheckResult("distance_fixed_value", dev <= 1e-15, f"deviation {dev:.2e}")


def check_state_json(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    for i in range(40):
        registers = 1 if i % 2 else 2
        ket = _random_ket(rng, registers, int(rng.integers(1, 20)))
        text = ket.to_json()
        back = Ket.from_json(text)
        if back != ket:
            problems.append("roundtrip value drift")
        if back.to_json() != text:
            problems.append("serialization not stable")
    for bad in (
        '{"registers": 0, "terms": []}',
        '{"registers": 1, "terms": [{"label": 1.5, "re": 1.0, "im": 0.0}]}',
        '{"registers": 2, "terms": [{"labels": [1], "re": 1.0, "im": 0.0}]}',
        '{"registers": 1, "terms": [{"label": 1, "re": 1.0, "im": 0.0},'
        ' {"label": 1, "re": 0.0, "im": 0.0}]}',
        "not json",
    ):
        try:
            Ket.from_json(bad)
            problems.append(f"accepted invalid document {bad[:30]!r}")
        except ValueError:
            pass
    ok = not problems
    return CheckResult("state_json", ok, "; ".join(problems) if problems else "40 round trips")


def check_zero_and_pruning(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    try:
        Ket(1, {}).normalized()
        problems.append("zero vector normalized without error")
    except ZeroNormError:
        pass
    if len(Ket(1, {(0,): 1e-16})) != 0:
        problems.append("sub-threshold amplitude not pruned")
    if len(Ket(1, {(0,): 1e-14})) != 1:
        problems.append("above-threshold amplitude pruned")
    ok = not problems
    return CheckResult("zero_and_pruning", ok, "; ".join(problems) if problems else "as specified")


# --- gate layer --------------------------------------------------------------


def check_gate_window(config: Config, rng: np.random.Generator) -> CheckResult:
    w = 32
    problems = []
    seen_plus: set = set()
    seen_minus: set = set()
    seen_times: set = set()
    seen_rev: set = set()
    for n in range(-w, w + 1):
        for m in range(-w, w + 1):
            pair = basis_ket(n, m)
            out = gates.apply_plus(pair)
            if out.amplitude((n, n + m)) != 1.0:
                problems.append(f"plus({n},{m})")
            seen_plus.add((n, n + m))
            out = gates.apply_minus(pair)
            if out.amplitude((n, m - n)) != 1.0:
                problems.append(f"minus({n},{m})")
            seen_minus.add((n, m - n))
            if n == 0:
                try:
                    gates.apply_times(pair)
                    problems.append(f"strict(0,{m}) accepted")
                except gates.GateDomainError:
                    pass
            else:
                out = gates.apply_times(pair)
                if out.amplitude((n, n * m)) != 1.0:
                    problems.append(f"times({n},{m})")
                seen_times.add((n, n * m))
            out = gates.apply_times(basis_ket(n, m, 0), gates.GateKind.TIMES_REVERSIBLE)
            if out.amplitude((n, m, n * m)) != 1.0:
                problems.append(f"times_rev({n},{m})")
            seen_rev.add((n, m, n * m))
    total = (2 * w + 1) ** 2
    if len(seen_plus) != total or len(seen_minus) != total:
        problems.append("adder not injective on the window")
    if len(seen_times) != total - (2 * w + 1) or len(seen_rev) != total:
        problems.append("multiplier not injective on the window")
    ok = not problems
    detail = "; ".join(problems[:4]) if problems else f"{total} label pairs per gate"
    return CheckResult("gate_window_exhaustive", ok, detail)


_GATE_CASES = (
    ("plus", gates.GateKind.PLUS, 2, False),
    ("minus", gates.GateKind.MINUS, 2, False),
    ("times_strict", gates.GateKind.TIMES_STRICT, 2, True),
    ("times_reversible", gates.GateKind.TIMES_REVERSIBLE, 3, False),
)


def _gate_sample(rng: np.random.Generator, registers: int, strict: bool, support: int) -> Ket:
    return _random_ket(
        rng,
        registers,
        support,
        nonzero_first=strict,
        zero_last=registers == 3,
    )


def check_gate_norm_linearity(config: Config, rng: np.random.Generator) -> CheckResult:
    norm_tol = config.tol("norm")
    lin_tol = config.tol("linearity")
    worst_norm = 0.0
    worst_lin = 0.0
    states = 0
    for _, kind, registers, strict in _GATE_CASES:
        for _ in range(100):
            ket = _gate_sample(rng, registers, strict, int(rng.integers(1, 51)))
            out = gates.apply_gate(ket, kind)
            worst_norm = max(worst_norm, abs(out.norm() - 1.0))
            states += 1
        for _ in range(30):
            a = _gate_sample(rng, registers, strict, int(rng.integers(1, 25)))
            b = _gate_sample(rng, registers, strict, int(rng.integers(1, 25)))
            alpha = complex(rng.normal(), rng.normal())
            beta = complex(rng.normal(), rng.normal())
            mixed = a.scaled(alpha).add_scaled(beta, b)
            lhs = gates.apply_gate(mixed, kind)
            rhs = gates.apply_gate(a, kind).scaled(alpha).add_scaled(
                beta, gates.apply_gate(b, kind)
            )
            worst_lin = max(worst_lin, lhs.distance(rhs))
    ok = worst_norm <= norm_tol and worst_lin <= lin_tol
    return CheckResult(
        "gate_norm_linearity",
        ok,
        f"{states} states, worst norm drift {worst_norm:.2e}, "
        f"worst linearity residual {worst_lin:.2e}",
    )


def check_plus_minus_inverse(config: Config, rng: np.random.Generator) -> CheckResult:
    tol = config.tol("amplitude")
    worst = -1.0
    ok = True
    for _ in range(40):
        ket = _random_ket(rng, 2, int(rng.integers(1, 21)))
        back = gates.apply_minus(gates.apply_plus(ket))
        forth = gates.apply_plus(gates.apply_minus(ket))
        for other in (back, forth):
            if other.support() != ket.support():
                ok = False
                continue
            worst = max(worst, ket.distance(other))
    ok = ok and worst <= tol
    return CheckResult(
        "plus_minus_inverse", ok, f"40 states, worst amplitude drift {max(worst, 0.0):.2e}"
    )


def check_iterate_matches_times(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    for n in range(1, 10):
        for m in range(-9, 10):
            iterated = gates.iterate_plus(basis_ket(m, m), n - 1)
            if iterated.amplitude((m, n * m)) != 1.0:
                problems.append(f"iterate({n},{m})")
            if m != 0:
                direct = gates.apply_times(basis_ket(m, n))
                if direct.amplitude((m, n * m)) != 1.0:
                    problems.append(f"times({m},{n})")
    ok = not problems
    return CheckResult(
        "iterate_matches_times", ok, "; ".join(problems[:4]) if problems else "171 pairs"
    )


def check_program_json(config: Config, rng: np.random.Generator) -> CheckResult:
    program = gates.GateProgram(
        (
            gates.GateStep(gates.GateKind.PLUS, (0, 1)),
            gates.GateStep(gates.GateKind.TIMES_REVERSIBLE, (0, 1, 2)),
            gates.GateStep(gates.GateKind.MINUS, (2, 1)),
        )
    )
    problems = []
    if gates.GateProgram.from_json(program.to_json()) != program:
        problems.append("round trip drift")
    for bad in ('{"steps": [{"gate": "NOPE", "roles": [0, 1]}]}', '{"steps": 3}', "[]"):
        try:
            gates.GateProgram.from_json(bad)
            problems.append(f"accepted {bad[:24]!r}")
        except ValueError:
            pass
    ok = not problems
    return CheckResult("program_json", ok, "; ".join(problems) if problems else "round trip stable")


def check_gate_errors(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    mixed = superposition({(0, 3): 0.6, (2, 1): 0.8})
    try:
        gates.apply_times(mixed)
        problems.append("strict multiplier accepted a zero source")
    except gates.GateDomainError as exc:
        if exc.component != (0, 3):
            problems.append(f"wrong offending component {exc.component}")
    try:
        gates.apply_times(basis_ket(2, 3, 1), gates.GateKind.TIMES_REVERSIBLE)
        problems.append("dirty result register accepted")
    except gates.AncillaError as exc:
        if exc.component != (2, 3, 1):
            problems.append(f"wrong ancilla component {exc.component}")
    program = gates.GateProgram(
        (
            gates.GateStep(gates.GateKind.PLUS, (1, 0)),
            gates.GateStep(gates.GateKind.TIMES_STRICT, (0, 1)),
        )
    )
    try:
        gates.run_program(program, basis_ket(-3, 3))
        problems.append("program over a zero source ran to completion")
    except gates.ProgramStepError as exc:
        if exc.step_index != 1 or not isinstance(exc.cause, gates.GateDomainError):
            problems.append(f"wrong step attribution: {exc}")
    ok = not problems
    return CheckResult("gate_errors", ok, "; ".join(problems) if problems else "as specified")


# --- dynamics ----------------------------------------------------------------


def check_generator_structure(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    f = model.fourier_matrix
    eye = np.eye(model.dim)
    problems = []
    if np.max(np.abs(f @ f.conj().T - eye)) > 1e-12:
        problems.append("fourier basis not unitary")
    g = model.shift_generator
    if np.max(np.abs(g - g.conj().T)) > 1e-12:
        problems.append("generator not hermitian")
    expected = set()
    for k in range(-model.half + 1, model.half + 1):
        expected.add(round(2.0 * math.pi * k / model.dim, 12))
    actual = {round(float(v), 12) for v in model.shift_eigenphases}
    if actual != expected:
        problems.append("eigenphase set mismatch")
    step = f @ np.diag(np.exp(-1j * model.shift_eigenphases)) @ f.conj().T
    perm = np.zeros_like(step)
    for idx in range(model.dim):
        target = model.ring_index(model.label_at(idx) + 1)
        perm[target, idx] = 1.0
    if np.max(np.abs(step - perm)) > 1e-12:
        problems.append("unit pulse is not the unit shift")
    ok = not problems
    return CheckResult(
        "generator_structure", ok, "; ".join(problems) if problems else f"D={model.dim}"
    )


def check_whole_shift_fidelity(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    tol = config.tol("fidelity")
    unit_tol = config.tol("unitary_exact")
    worst_fid = 0.0
    worst_norm = 0.0
    cases = [(2, 3, 1.0), (2, 3, 0.5), (4, -2, 0.75), (-4, 5, 0.25), (8, 1, 0.125)]
    for n in range(-6, 7):
        for m in (0, 3, -3):
            cases.append((n, m, 1.0))
    ran = 0
    for n, m, t in cases:
        shift = n * t
        if shift != int(shift) or abs(n) + abs(m) >= model.half:
            continue
        ran += 1
        state = dynamics.evolve_exact(model, n, m, t)
        fid = abs(state.amplitude((n, m + int(shift)))) ** 2
        worst_fid = max(worst_fid, abs(fid - 1.0))
        worst_norm = max(worst_norm, abs(state.norm() - 1.0))
    ok = worst_fid <= tol and worst_norm <= unit_tol
    return CheckResult(
        "whole_shift_fidelity",
        ok,
        f"{ran} cases, worst fidelity defect {worst_fid:.2e}, "
        f"worst norm drift {worst_norm:.2e}",
    )


def _window_pairs(config: Config, rng: np.random.Generator, count: int) -> list[tuple[int, int]]:
    half = config.dim // 2
    pairs = [(half - 1, 0), (-(half - 1), 0), (1, half - 2)]
    while len(pairs) < count:
        n = int(rng.integers(-(half - 1), half))
        m = int(rng.integers(-(half - 1), half))
        if abs(n) + abs(m) < half:
            pairs.append((n, m))
    return pairs


def check_numeric_vs_exact(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    tol = config.tol("integrator")
    unit_tol = config.tol("unitary_numeric")
    worst = 0.0
    worst_norm = 0.0
    pairs = _window_pairs(config, rng, 10)
    for n, m in pairs:
        for t in (0.3, 1.0, 1.4):
            approx = dynamics.evolve_numeric(model, n, m, t, config.dt)
            exact = dynamics.evolve_exact(model, n, m, t)
            worst = max(worst, approx.distance(exact))
            worst_norm = max(worst_norm, abs(approx.norm() - 1.0))
    ok = worst <= tol and worst_norm <= unit_tol
    return CheckResult(
        "numeric_vs_exact",
        ok,
        f"{len(pairs) * 3} runs, worst distance {worst:.2e}, worst norm drift {worst_norm:.2e}",
    )


def check_subsystem_consistency(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    tol = config.tol("subsystem")
    worst = 0.0
    for n, m in _window_pairs(config, rng, 12):
        for t in (0.4, 1.0, 1.3):
            pair = dynamics.evolve_exact(model, n, m, t)
            collapsed = Ket(1, {(key[1],): amp for key, amp in pair.items()})
            sub = dynamics.subsystem_evolve(model, n, m, t)
            worst = max(worst, collapsed.distance(sub))
    ok = worst <= tol
    return CheckResult("subsystem_consistency", ok, f"36 runs, worst distance {worst:.2e}")


def check_pulse_freeze(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    d = dynamics.evolve_exact(model, 2, 3, 1.0).distance(dynamics.evolve_exact(model, 2, 3, 1.4))
    ok = d <= 1e-12
    return CheckResult("pulse_freeze", ok, f"drift past the pulse {d:.2e}")


# --- stopping times ----------------------------------------------------------

# Grid pinned for stopping-time checks: wide enough that one grid step
# exceeds the fidelity threshold crossing width for every |n| >= 1.
STOP_T_MAX = 4.0
STOP_SAMPLES = 200


def _stop_n_max(config: Config) -> int:
    return min(6, config.dim // 2 - 1)


def _probe_pairs(config: Config) -> list[tuple[int, int]]:
    """Fixed probe pairs, shrunk toward zero on small rings."""
    half = config.dim // 2
    out = []
    for n, m in ((2, 3), (4, -1), (-3, 2)):
        n = max(-half + 2, min(half - 2, n))
        lim = half - 1 - abs(n)
        m = max(-lim, min(lim, m)) if lim > 0 else 0
        out.append((n, m))
    return out


def check_trace_bookkeeping(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    tol = config.tol("bookkeeping")
    worst = 0.0
    negative = False
    for n, m in _probe_pairs(config)[:2]:
        trace = dynamics.detect_stopping_time(
            model, n, m, config.epsilon, config.t_max, STOP_SAMPLES
        )
        for fid, leak in zip(trace.fidelity, trace.leakage):
            worst = max(worst, abs(fid + leak - 1.0))
            negative = negative or fid < 0.0 or leak < -1e-15
    ok = worst <= tol and not negative
    return CheckResult(
        "trace_bookkeeping", ok, f"2 traces x {STOP_SAMPLES} samples, worst defect {worst:.2e}"
    )


def check_stop_near_unit(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    grid = STOP_T_MAX / (STOP_SAMPLES - 1)
    problems = []
    count = 0
    for n in range(-_stop_n_max(config), _stop_n_max(config) + 1):
        if n == 0:
            continue
        for m in (0, 3, -3):
            if abs(n) + abs(m) >= model.half:
                continue
            trace = dynamics.detect_stopping_time(
                model, n, m, config.epsilon, STOP_T_MAX, STOP_SAMPLES
            )
            count += 1
            if trace.stopping_time is None:
                problems.append(f"no stopping time for ({n},{m})")
            elif abs(trace.stopping_time - dynamics.GATE_TIME) > grid:
                problems.append(f"T({n},{m})={trace.stopping_time:.4f}")
    ok = not problems
    return CheckResult(
        "stop_near_unit",
        ok,
        "; ".join(problems[:4]) if problems else f"{count} runs within one grid step of 1",
    )


def check_epsilon_monotone(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    n, m = _probe_pairs(config)[0]
    loose = dynamics.detect_stopping_time(model, n, m, 0.49, STOP_T_MAX, STOP_SAMPLES)
    tight = dynamics.detect_stopping_time(model, n, m, config.epsilon, STOP_T_MAX, STOP_SAMPLES)
    ok = (
        loose.stopping_time is not None
        and tight.stopping_time is not None
        and loose.stopping_time <= tight.stopping_time + 1e-12
    )
    return CheckResult(
        "epsilon_monotone",
        ok,
        f"T(0.49)={loose.stopping_time} vs T({config.epsilon})={tight.stopping_time}",
    )


def check_off_peak_bound(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    worst = 0.0
    for n, m in _probe_pairs(config):
        trace = dynamics.detect_stopping_time(
            model, n, m, config.epsilon, STOP_T_MAX, STOP_SAMPLES
        )
        if trace.off_peak_past_stop is None:
            return CheckResult("off_peak_bound", False, f"no stopping time for ({n},{m})")
        worst = max(worst, trace.off_peak_past_stop)
    ok = worst <= config.epsilon
    return CheckResult(
        "off_peak_bound", ok, f"worst single-label leak past T is {worst:.2e}"
    )


def check_superadditivity(config: Config, rng: np.random.Generator) -> CheckResult:
    model = dynamics.build_model(config.dim)
    rows = dynamics.superadditivity_table(
        model,
        n_max=_stop_n_max(config),
        epsilon=config.epsilon,
        t_max=STOP_T_MAX,
        samples=STOP_SAMPLES,
    )
    bad = [r for r in rows if not r.satisfied]
    detail = (
        f"{len(rows)} splits, all satisfied"
        if not bad
        else f"{len(bad)} of {len(rows)} splits violated, first at n={bad[0].n} k={bad[0].k}"
    )
    return CheckResult("superadditivity", not bad, detail)


# --- boolean layer -----------------------------------------------------------


def check_truth_tables(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    cases = 0
    for p, q in itertools.product((0, 1), repeat=2):
        expected = {"not": 1 - p, "and": p & q, "or": p | q}
        for name, want in expected.items():
            args = (p,) if name == "not" else (p, q)
            cases += 1
            if logic.eval_arithmetic(name, *args) != want:
                problems.append(f"arithmetic {name}{args}")
            if logic.eval_with_gates(name, *args) != want:
                problems.append(f"gates {name}{args}")
    ok = not problems
    return CheckResult(
        "truth_tables_dual", ok, "; ".join(problems) if problems else f"{cases} cases, both paths"
    )


def check_de_morgan(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    for p, q in itertools.product((0, 1), repeat=2):
        lhs = logic.not_(logic.and_(p, q))
        rhs = logic.or_(logic.not_(p), logic.not_(q))
        if lhs != rhs:
            problems.append(f"arithmetic ({p},{q})")
        lhs_g = logic.eval_with_gates("not", logic.eval_with_gates("and", p, q))
        rhs_g = logic.eval_with_gates(
            "or", logic.eval_with_gates("not", p), logic.eval_with_gates("not", q)
        )
        if lhs_g != rhs_g or lhs_g != lhs:
            problems.append(f"gates ({p},{q})")
    ok = not problems
    return CheckResult("de_morgan", ok, "; ".join(problems) if problems else "4 of 4 pairs")


def check_bit_domain(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    for fn, args in ((logic.not_, (2,)), (logic.and_, (1, -1)), (logic.or_, (0, "x"))):
        try:
            fn(*args)
            problems.append(f"accepted {args!r}")
        except ValueError:
            pass
    ok = not problems
    return CheckResult("bit_domain", ok, "; ".join(problems) if problems else "as specified")


# --- operation terms ---------------------------------------------------------

_GOLDEN_CLASS1 = (
    (3, (1, 0, 1), "n+(m+k)"),
    (4, (1, 0, 2), "n+(mk)"),
    (5, (1, 1, 0), "(n+m)+k"),
    (6, (1, 1, 1), "(n+m)+(k+l)"),
    (7, (1, 1, 2), "(n+m)+(kl)"),
    (8, (1, 2, 0), "(nm)+k"),
    (9, (1, 2, 1), "(nm)+(k+l)"),
    (10, (1, 2, 2), "(nm)+(kl)"),
    (11, (2, 0, 1), "n(m+k)"),
    (12, (2, 0, 2), "n(mk)"),
    (13, (2, 1, 0), "(n+m)k"),
    (14, (2, 1, 1), "(n+m)(k+l)"),
    (15, (2, 1, 2), "(n+m)(kl)"),
    (16, (2, 2, 0), "(nm)k"),
    (17, (2, 2, 1), "(nm)(k+l)"),
    (18, (2, 2, 2), "(nm)(kl)"),
)


def check_elementary_indices(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    if terms.index_of(terms.FREE) != 0:
        problems.append("free leaf index")
    if terms.index_of(terms.Node(terms.BinOp.PLUS, terms.FREE, terms.FREE)) != 1:
        problems.append("elementary plus index")
    if terms.index_of(terms.Node(terms.BinOp.TIMES, terms.FREE, terms.FREE)) != 2:
        problems.append("elementary times index")
    if tuple(terms.class_size(k) for k in range(3)) != (3, 16, 704):
        problems.append("class sizes")
    if terms.cumulative_size(2) != 723:
        problems.append("cumulative size")
    ok = not problems
    return CheckResult(
        "elementary_indices", ok, "; ".join(problems) if problems else "sizes 3/16/704"
    )


def check_golden_class1(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    for delta, split, infix in _GOLDEN_CLASS1:
        if terms.decompose_index(delta) != split:
            problems.append(f"split({delta})")
        if terms.render_infix(terms.term_of(delta)) != infix:
            problems.append(f"infix({delta})")
    ok = not problems
    return CheckResult(
        "golden_class1_table", ok, "; ".join(problems) if problems else "16 composed operations"
    )


def check_index_roundtrip(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    seen: dict = {}
    last_class = 0
    for delta in range(10001):
        term = terms.term_of(delta)
        if terms.index_of(term) != delta:
            problems.append(f"roundtrip({delta})")
        if term in seen:
            problems.append(f"collision({seen[term]},{delta})")
        seen[term] = delta
        k = terms.class_of(term)
        if k < last_class:
            problems.append(f"class order({delta})")
        last_class = k
    ok = not problems
    return CheckResult(
        "index_roundtrip",
        ok,
        "; ".join(problems[:4]) if problems else "indices 0..10000, class-major",
    )


def check_parse_render(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    if terms.parse_term("P(M0,T(M0,M0))") != terms.term_of(4):
        problems.append("prefix parse")
    if terms.parse_term("(n+m)+(kl)") != terms.term_of(7):
        problems.append("infix parse")
    if terms.parse_term("nm") != terms.term_of(2) or terms.parse_term("n*m") != terms.term_of(2):
        problems.append("product parse")
    for delta in (0, 1, 2, 7, 18, 100, 722, 5000):
        term = terms.term_of(delta)
        if terms.parse_term(terms.render_term(term)) != term:
            problems.append(f"prefix roundtrip({delta})")
        if terms.parse_term(terms.render_infix(term)) != term:
            problems.append(f"infix roundtrip({delta})")
    for bad in ("P(M0", "n+", "(n", "P(M0,M0,M0)", ""):
        try:
            terms.parse_term(bad)
            problems.append(f"accepted {bad!r}")
        except terms.TermSyntaxError:
            pass
    ok = not problems
    return CheckResult("parse_render", ok, "; ".join(problems) if problems else "round trips stable")


def check_dual_eval_examples(config: Config, rng: np.random.Generator) -> CheckResult:
    problems = []
    cases = (
        (7, (1, 2, 3, 4), 15),
        (13, (2, 3, 4), 20),
        (0, (5,), 5),
        (12, (-2, 3, -4), 24),
        (18, (2, -1, 3, 2), -12),
    )
    for delta, args, want in cases:
        report = terms.evaluate_gates(terms.term_of(delta), args)
        if report.oracle_result != want or report.gate_result != want or not report.agree:
            problems.append(f"delta {delta} args {args}")
    try:
        terms.evaluate_oracle(terms.term_of(7), (1, 2, 3))
        problems.append("arity violation accepted")
    except terms.ArityError:
        pass
    ok = not problems
    return CheckResult(
        "dual_eval_examples", ok, "; ".join(problems) if problems else f"{len(cases)} fixed cases"
    )


def check_bijection(config: Config, rng: np.random.Generator) -> CheckResult:
    report = terms.bijection_report(config.class_bound)
    expected = tuple(terms.class_size(k) for k in range(config.class_bound + 1))
    ok = report.ok and report.counts == expected
    detail = (
        f"{report.total} terms through class {config.class_bound}"
        if ok
        else f"failures: {list(report.failures)[:2]}"
    )
    return CheckResult("bijection_exhaustive", ok, detail)


def church_sweep(
    class_bound: int,
    budget: int,
    rng: np.random.Generator,
    lo: int = -3,
    hi: int = 3,
) -> tuple[int, list[terms.EvalReport]]:
    """Dual-evaluate every operation up to a class bound within a case budget.

    Small argument grids are swept exhaustively; wider ones fall back to
    seeded sampling so the total stays under the budget.
    """
    indexed = []
    for k in range(class_bound + 1):
        indexed.extend(terms.enumerate_class(k))
    width = hi - lo + 1
    quota = max(1, budget // len(indexed))
    cases = 0
    disagreements: list[terms.EvalReport] = []
    for item in indexed:
        n = terms.arity(item.term)
        if width**n <= quota:
            pool = itertools.product(range(lo, hi + 1), repeat=n)
        else:
            pool = (
                tuple(int(v) for v in rng.integers(lo, hi + 1, size=n)) for _ in range(quota)
            )
        for args in pool:
            report = terms.evaluate_gates(item.term, tuple(args))
            cases += 1
            if not report.agree:
                disagreements.append(report)
    return cases, disagreements


def check_church_correspondence(config: Config, rng: np.random.Generator) -> CheckResult:
    cases, disagreements = church_sweep(config.class_bound, 50000, rng)
    ok = not disagreements
    detail = (
        f"{cases} sampled cases, no disagreements"
        if ok
        else f"first disagreement: {disagreements[0].to_json_dict()}"
    )
    return CheckResult("church_correspondence", ok, detail)


# --- suites ------------------------------------------------------------------

SUITES: dict[str, tuple] = {
    "hilbert": (
        check_basis_orthonormality,
        check_norm_algebra,
        check_distance_fixed,
        check_state_json,
        check_zero_and_pruning,
    ),
    "gates": (
        check_gate_window,
        check_gate_norm_linearity,
        check_plus_minus_inverse,
        check_iterate_matches_times,
        check_program_json,
        check_gate_errors,
    ),
    "dynamics": (
        check_generator_structure,
        check_whole_shift_fidelity,
        check_numeric_vs_exact,
        check_subsystem_consistency,
        check_pulse_freeze,
    ),
    "stopping": (
        check_trace_bookkeeping,
        check_stop_near_unit,
        check_epsilon_monotone,
        check_off_peak_bound,
        check_superadditivity,
    ),
    "logic": (
        check_truth_tables,
        check_de_morgan,
        check_bit_domain,
    ),
    "termalg": (
        check_elementary_indices,
        check_golden_class1,
        check_index_roundtrip,
        check_parse_render,
        check_dual_eval_examples,
    ),
    "bijection": (check_bijection,),
    "church": (check_church_correspondence,),
}

SUITES["all"] = tuple(
    fn
    for name in ("hilbert", "gates", "dynamics", "stopping", "logic", "termalg", "bijection", "church")
    for fn in SUITES[name]
)


def run_suite(name: str, config: Config, seed: int = 0) -> dict:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    rng = np.random.default_rng(seed)
    results = [fn(config, rng) for fn in SUITES[name]]
    failed = sum(1 for r in results if not r.ok)
    return {
        "suite": name,
        "seed": seed,
        "config": config.to_json_dict(),
        "checks": [r.to_json_dict() for r in results],
        "passed": len(results) - failed,
        "failed": failed,
        "ok": failed == 0,
    }
