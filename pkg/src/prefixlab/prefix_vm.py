"""A self-delimiting stack machine over a q-symbol alphabet.

A machine reads input symbols on demand and T(p) is defined only when the
run halts having consumed exactly p, which makes every machine's domain
prefix-free by construction.  The universal interpreter takes programs of
the form header ++ payload, where the header is a self-delimiting encoding
of a machine; the header length is the concrete, measurable constant of the
compilation-based invariance property.

Normative header encoding (alphabet-parametric):
  * instructions in sequence, each a fixed-width opcode field storing the
    opcode number in base q, big-endian;
  * field width is max(2, digits of 12 in base q) symbols -- two symbols
    whenever two symbols can hold the 13 opcode values, wider only for
    q = 2 (4 symbols) and q = 3 (3 symbols) where they cannot;
  * opcode 0 is the END-OF-CODE sentinel terminating the header;
  * PUSH/WRITE/JMP/JZ carry an operand numeral in base (q-1) using digit
    symbols 0..q-2, terminated by the symbol q-1 (for q = 2 the numeral is
    unary: the value is the count of 0-digits).

Step accounting: one step per executed instruction, one step per decoded
header field (opcode fields and operand numerals each count one).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .qstrings import QString, empty

# opcode numbers; 0 is the END-OF-CODE sentinel and never appears in code
END = 0
READ = 1
PUSH = 2
POP = 3
DUP = 4
ADD = 5
SUBSAT = 6
WRITE = 7
WRITEPOP = 8
JMP = 9
JZ = 10
NOP = 11
HALT = 12

OP_NAMES = {
    READ: "READ",
    PUSH: "PUSH",
    POP: "POP",
    DUP: "DUP",
    ADD: "ADD",
    SUBSAT: "SUBSAT",
    WRITE: "WRITE",
    WRITEPOP: "WRITEPOP",
    JMP: "JMP",
    JZ: "JZ",
    NOP: "NOP",
    HALT: "HALT",
}
NAME_TO_OP = {name: op for op, name in OP_NAMES.items()}
OPERAND_OPS = {PUSH, WRITE, JMP, JZ}
MAX_OPCODE = 12

HALTED = "halted"
OUT_OF_INPUT = "out_of_input"
BUDGET_EXCEEDED = "budget_exceeded"
FAULT = "fault"


@dataclass(frozen=True)
class Instruction:
    op: int
    arg: Optional[int] = None

    def __str__(self) -> str:
        name = OP_NAMES[self.op]
        return f"{name} {self.arg}" if self.arg is not None else name


class MachineError(ValueError):
    """An instruction sequence that violates the machine invariants."""


@dataclass(frozen=True)
class Machine:
    q: int
    code: tuple[Instruction, ...]

    def __post_init__(self):
        if self.q < 2:
            raise MachineError(f"alphabet size must be >= 2, got {self.q}")
        validate_code(self.q, self.code)

    def source(self) -> str:
        return "\n".join(str(instr) for instr in self.code) + "\n"


def validate_code(q: int, code) -> None:
    for i, instr in enumerate(code):
        if instr.op not in OP_NAMES:
            raise MachineError(f"instruction {i}: unknown opcode {instr.op}")
        if instr.op in OPERAND_OPS:
            if instr.arg is None:
                raise MachineError(f"instruction {i}: {OP_NAMES[instr.op]} needs an operand")
            if instr.arg < 0:
                raise MachineError(f"instruction {i}: negative operand")
            if instr.op == WRITE and instr.arg >= q:
                raise MachineError(f"instruction {i}: WRITE operand {instr.arg} >= q")
            if instr.op in (JMP, JZ) and instr.arg >= len(code):
                raise MachineError(f"instruction {i}: jump target {instr.arg} out of bounds")
        elif instr.arg is not None:
            raise MachineError(f"instruction {i}: {OP_NAMES[instr.op]} takes no operand")


@dataclass(frozen=True)
class RunOutcome:
    kind: str
    output: QString
    consumed: int
    steps: int

    def halted_exactly(self, input_length: int) -> bool:
        return self.kind == HALTED and self.consumed == input_length


@dataclass(frozen=True)
class Adapter:
    """Self-delimiting machine header; its length is the compilation constant."""

    header: QString

    def __len__(self) -> int:
        return len(self.header)


class AssemblyError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def assemble(source: str, q: int = 2) -> Machine:
    """Assemble text into a Machine.

    One instruction per line; `#` starts a comment; `name:` on a line (alone
    or before an instruction) defines a jump label.
    """
    labels: dict[str, int] = {}
    pending: list[tuple[int, str, Optional[str], int]] = []  # (line, op name, operand text, col)
    count = 0
    for lineno, raw in enumerate(source.splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        while ":" in text:
            label, text = text.split(":", 1)
            label = label.strip()
            if not label or not label.replace("_", "").isalnum():
                raise AssemblyError(f"bad label {label!r}", lineno)
            if label in labels:
                raise AssemblyError(f"duplicate label {label!r}", lineno)
            labels[label] = count
            text = text.strip()
        if not text:
            continue
        parts = text.split()
        name = parts[0].upper()
        if name not in NAME_TO_OP:
            raise AssemblyError(f"unknown opcode {parts[0]!r}", lineno, raw.find(parts[0]) + 1)
        if len(parts) > 2:
            raise AssemblyError("too many operands", lineno)
        operand = parts[1] if len(parts) == 2 else None
        pending.append((lineno, name, operand, raw.find(parts[0]) + 1))
        count += 1

    code = []
    for lineno, name, operand, col in pending:
        op = NAME_TO_OP[name]
        if op in OPERAND_OPS:
            if operand is None:
                raise AssemblyError(f"{name} needs an operand", lineno, col)
            if operand.isdigit():
                arg = int(operand)
            elif op in (JMP, JZ) and operand in labels:
                arg = labels[operand]
            else:
                raise AssemblyError(f"bad operand {operand!r}", lineno, col)
        else:
            if operand is not None:
                raise AssemblyError(f"{name} takes no operand", lineno, col)
            arg = None
        code.append(Instruction(op, arg))
    try:
        return Machine(q, tuple(code))
    except MachineError as exc:
        raise AssemblyError(str(exc), len(source.splitlines())) from exc


def opcode_field_width(q: int) -> int:
    """Symbols per opcode field: 2, widened just enough when q**2 <= 12."""
    width = 1
    while q**width <= MAX_OPCODE:
        width += 1
    return max(2, width)


def _encode_operand(q: int, value: int) -> list[int]:
    """Base-(q-1) numeral (unary for q=2), terminated by the symbol q-1."""
    if q == 2:
        return [0] * value + [1]
    base = q - 1
    digits: list[int] = []
    v = value
    while v > 0:
        digits.append(v % base)
        v //= base
    digits.reverse()
    return digits + [q - 1]


def encode_machine(m: Machine) -> Adapter:
    width = opcode_field_width(m.q)
    symbols: list[int] = []

    def field(value: int) -> None:
        digits = []
        v = value
        for _ in range(width):
            digits.append(v % m.q)
            v //= m.q
        symbols.extend(reversed(digits))

    for instr in m.code:
        field(instr.op)
        if instr.op in OPERAND_OPS:
            symbols.extend(_encode_operand(m.q, instr.arg))
    field(END)
    return Adapter(QString(m.q, tuple(symbols)))


def decode_machine(q: int, header: QString) -> Machine:
    """Inverse of encode_machine; rejects trailing symbols."""
    outcome, machine, used, _ = _decode_header(q, header.symbols, budget=None)
    if outcome is not None:
        raise MachineError(f"malformed header: {outcome}")
    if used != len(header):
        raise MachineError("trailing symbols after END sentinel")
    return machine


def _decode_header(q, symbols, budget, steps=0):
    """Decode a header prefix of `symbols`.

    Returns (error_kind | None, machine | None, symbols_used, steps).
    `budget` of None disables step accounting.
    """
    width = opcode_field_width(q)
    code: list[Instruction] = []
    pos = 0
    n = len(symbols)
    while True:
        if pos + width > n:
            return OUT_OF_INPUT, None, n, steps
        if budget is not None and steps >= budget:
            return BUDGET_EXCEEDED, None, pos, steps
        value = 0
        for i in range(width):
            value = value * q + symbols[pos + i]
        pos += width
        steps += 1
        if value == END:
            try:
                machine = Machine(q, tuple(code))
            except MachineError:
                return FAULT, None, pos, steps
            return None, machine, pos, steps
        if value > MAX_OPCODE:
            return FAULT, None, pos, steps
        if value in OPERAND_OPS:
            arg = 0
            count = 0
            while True:
                if pos >= n:
                    return OUT_OF_INPUT, None, n, steps
                sym = symbols[pos]
                pos += 1
                if sym == q - 1:
                    break
                if q == 2:
                    count += 1
                else:
                    arg = arg * (q - 1) + sym
            if q == 2:
                arg = count
            if budget is not None and steps >= budget:
                return BUDGET_EXCEEDED, None, pos, steps
            steps += 1
            code.append(Instruction(value, arg))
        else:
            code.append(Instruction(value))


def run(m: Machine, input: QString, budget: int) -> RunOutcome:
    """Deterministic budgeted run of a machine on an input string."""
    if input.q != m.q:
        raise ValueError("input alphabet does not match machine alphabet")
    return _run_vm(m, input.symbols, budget, steps=0, consumed_offset=0)


def _run_vm(m, symbols, budget, steps, consumed_offset):
    code = m.code
    n = len(code)
    q = m.q
    pc = 0
    stack: list[int] = []
    out: list[int] = []
    consumed = 0
    total = len(symbols)

    def result(kind):
        return RunOutcome(kind, QString(q, tuple(out)), consumed_offset + consumed, steps)

    while True:
        if pc < 0 or pc >= n:
            return result(FAULT)
        if steps >= budget:
            return result(BUDGET_EXCEEDED)
        steps += 1
        instr = code[pc]
        op = instr.op
        if op == READ:
            if consumed >= total:
                return result(OUT_OF_INPUT)
            stack.append(symbols[consumed])
            consumed += 1
            pc += 1
        elif op == PUSH:
            stack.append(instr.arg)
            pc += 1
        elif op == POP:
            if not stack:
                return result(FAULT)
            stack.pop()
            pc += 1
        elif op == DUP:
            if not stack:
                return result(FAULT)
            stack.append(stack[-1])
            pc += 1
        elif op == ADD:
            if len(stack) < 2:
                return result(FAULT)
            y = stack.pop()
            stack[-1] = stack[-1] + y
            pc += 1
        elif op == SUBSAT:
            if len(stack) < 2:
                return result(FAULT)
            y = stack.pop()
            stack[-1] = max(0, stack[-1] - y)
            pc += 1
        elif op == WRITE:
            out.append(instr.arg)
            pc += 1
        elif op == WRITEPOP:
            if not stack:
                return result(FAULT)
            v = stack.pop()
            if v >= q:
                return result(FAULT)
            out.append(v)
            pc += 1
        elif op == JMP:
            pc = instr.arg
        elif op == JZ:
            if not stack:
                return result(FAULT)
            v = stack.pop()
            pc = instr.arg if v == 0 else pc + 1
        elif op == NOP:
            pc += 1
        else:  # HALT
            return result(HALTED)


def universal_run(q: int, input: QString, budget: int) -> RunOutcome:
    """Decode a machine header from the front of `input`, run it on the rest.

    The exact-consumption rule applies to the whole input: the outcome's
    `consumed` counts header symbols plus payload symbols read by the machine.
    """
    if input.q != q:
        raise ValueError("input alphabet mismatch")
    error, machine, used, steps = _decode_header(q, input.symbols, budget)
    if error is not None:
        return RunOutcome(error, empty(q), used, steps)
    return _run_vm(machine, input.symbols[used:], budget, steps, consumed_offset=used)


# ---------------------------------------------------------------------------
# Incremental engine: the same semantics, driven one input symbol at a time.
# Used by the halting-program enumerator so shared prefixes are not re-run;
# plain universal_run stays an independent implementation to check against.
# ---------------------------------------------------------------------------

NEED_INPUT = "need_input"
DONE = "done"

_PHASE_OPCODE = 0
_PHASE_OPERAND = 1
_PHASE_VM = 2


class UniversalEngine:
    __slots__ = (
        "q", "budget", "width", "status", "kind", "phase", "field", "pending_op",
        "operand_value", "operand_count", "code", "pc", "stack", "out",
        "consumed", "steps",
    )

    def __init__(self, q: int, budget: int):
        self.q = q
        self.budget = budget
        self.width = opcode_field_width(q)
        self.status = NEED_INPUT
        self.kind = None
        self.phase = _PHASE_OPCODE
        self.field: list[int] = []
        self.pending_op = None
        self.operand_value = 0
        self.operand_count = 0
        self.code: list[Instruction] = []
        self.pc = 0
        self.stack: list[int] = []
        self.out: list[int] = []
        self.consumed = 0
        self.steps = 0

    def clone(self) -> "UniversalEngine":
        other = UniversalEngine.__new__(UniversalEngine)
        other.q = self.q
        other.budget = self.budget
        other.width = self.width
        other.status = self.status
        other.kind = self.kind
        other.phase = self.phase
        other.field = list(self.field)
        other.pending_op = self.pending_op
        other.operand_value = self.operand_value
        other.operand_count = self.operand_count
        other.code = list(self.code)
        other.pc = self.pc
        other.stack = list(self.stack)
        other.out = list(self.out)
        other.consumed = self.consumed
        other.steps = self.steps
        return other

    def _finish(self, kind: str) -> None:
        self.status = DONE
        self.kind = kind

    def _charge(self) -> bool:
        """One step against the budget; False means the budget is exhausted."""
        if self.steps >= self.budget:
            self._finish(BUDGET_EXCEEDED)
            return False
        self.steps += 1
        return True

    def feed(self, symbol: int) -> None:
        assert self.status == NEED_INPUT
        self.consumed += 1
        if self.phase == _PHASE_OPCODE:
            self.field.append(symbol)
            if len(self.field) < self.width:
                return
            if not self._charge():
                return
            value = 0
            for s in self.field:
                value = value * self.q + s
            self.field = []
            if value == END:
                try:
                    validate_code(self.q, self.code)
                except MachineError:
                    self._finish(FAULT)
                    return
                self.phase = _PHASE_VM
                self._run_vm()
            elif value > MAX_OPCODE:
                self._finish(FAULT)
            elif value in OPERAND_OPS:
                self.phase = _PHASE_OPERAND
                self.pending_op = value
                self.operand_value = 0
                self.operand_count = 0
            else:
                self.code.append(Instruction(value))
        elif self.phase == _PHASE_OPERAND:
            if symbol == self.q - 1:
                if not self._charge():
                    return
                arg = self.operand_count if self.q == 2 else self.operand_value
                self.code.append(Instruction(self.pending_op, arg))
                self.pending_op = None
                self.phase = _PHASE_OPCODE
            else:
                self.operand_value = self.operand_value * (self.q - 1) + symbol
                self.operand_count += 1
        else:  # vm phase: a pending READ takes this symbol
            self.stack.append(symbol)
            self.pc += 1
            self._run_vm()

    def _run_vm(self) -> None:
        code = self.code
        n = len(code)
        q = self.q
        stack = self.stack
        while True:
            if self.pc < 0 or self.pc >= n:
                self._finish(FAULT)
                return
            if self.steps >= self.budget:
                self._finish(BUDGET_EXCEEDED)
                return
            self.steps += 1
            instr = code[self.pc]
            op = instr.op
            if op == READ:
                self.status = NEED_INPUT
                return
            if op == PUSH:
                stack.append(instr.arg)
                self.pc += 1
            elif op == POP:
                if not stack:
                    self._finish(FAULT)
                    return
                stack.pop()
                self.pc += 1
            elif op == DUP:
                if not stack:
                    self._finish(FAULT)
                    return
                stack.append(stack[-1])
                self.pc += 1
            elif op == ADD:
                if len(stack) < 2:
                    self._finish(FAULT)
                    return
                y = stack.pop()
                stack[-1] = stack[-1] + y
                self.pc += 1
            elif op == SUBSAT:
                if len(stack) < 2:
                    self._finish(FAULT)
                    return
                y = stack.pop()
                stack[-1] = max(0, stack[-1] - y)
                self.pc += 1
            elif op == WRITE:
                self.out.append(instr.arg)
                self.pc += 1
            elif op == WRITEPOP:
                if not stack:
                    self._finish(FAULT)
                    return
                v = stack.pop()
                if v >= q:
                    self._finish(FAULT)
                    return
                self.out.append(v)
                self.pc += 1
            elif op == JMP:
                self.pc = instr.arg
            elif op == JZ:
                if not stack:
                    self._finish(FAULT)
                    return
                v = stack.pop()
                self.pc = instr.arg if v == 0 else self.pc + 1
            elif op == NOP:
                self.pc += 1
            else:  # HALT
                self._finish(HALTED)
                return


def _engine_for_read(q, budget):
    """Fresh engine, advanced to its first input demand (or done)."""
    engine = UniversalEngine(q, budget)
    return engine


def _dfs(engine: UniversalEngine, prefix: list[int], q: int, max_len: int,
         results: list[tuple[tuple[int, ...], tuple[int, ...]]]) -> None:
    if engine.status == DONE:
        # halting here means it consumed exactly the prefix: exact by construction
        if engine.kind == HALTED:
            results.append((tuple(prefix), tuple(engine.out)))
        return
    if len(prefix) >= max_len:
        return
    for symbol in range(q):
        child = engine.clone()
        child.feed(symbol)
        prefix.append(symbol)
        _dfs(child, prefix, q, max_len, results)
        prefix.pop()


def _enumerate_subtree(args):
    q, max_len, budget, prefix = args
    engine = UniversalEngine(q, budget)
    for symbol in prefix:
        if engine.status == DONE:
            return []
        engine.feed(symbol)
    results: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    _dfs(engine, list(prefix), q, max_len, results)
    return results


def enumerate_halting(q: int, max_len: int, budget: int,
                      workers: int = 1) -> list[tuple[QString, QString]]:
    """All programs p, |p| <= max_len, on which the universal machine halts
    exactly within the step budget, with their outputs, in quasi-lex order.

    The parallel mode fans subtrees out across processes; its output is
    identical to the sequential reference.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if workers <= 1:
        raw = _enumerate_subtree((q, max_len, budget, ()))
    else:
        split_depth = 1
        while q**split_depth < 4 * workers and split_depth < max_len:
            split_depth += 1
        raw = []
        alive: list[tuple[int, ...]] = []

        def shallow(engine, prefix):
            if engine.status == DONE:
                if engine.kind == HALTED:
                    raw.append((tuple(prefix), tuple(engine.out)))
                return
            if len(prefix) >= max_len:
                return
            if len(prefix) == split_depth:
                alive.append(tuple(prefix))
                return
            for symbol in range(q):
                child = engine.clone()
                child.feed(symbol)
                shallow(child, prefix + [symbol])

        shallow(UniversalEngine(q, budget), [])
        if alive:
            from concurrent.futures import ProcessPoolExecutor

            tasks = [(q, max_len, budget, prefix) for prefix in alive]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for chunk in pool.map(_enumerate_subtree, tasks):
                    raw.extend(chunk)
    raw.sort(key=lambda pair: (len(pair[0]), pair[0]))
    return [(QString(q, prog), QString(q, out)) for prog, out in raw]
