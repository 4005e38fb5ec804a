"""Budgeted upper bounds for program-size complexity and the derived
length-difference measure.

All estimates are sound upper bounds: every reported value is witnessed by a
program that replays on the universal interpreter to the target output with
exact consumption.  Candidate witnesses come from three places: a snapshot
table of enumerated halting programs, an always-available literal printer,
and caller-supplied extra witnesses (compiled adapters, echo machines, codec
programs).  Lower bounds are never claimed.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import prefix_vm as vm
from .kraft_chaitin import Allocator
from .qstrings import QString, empty, index_to_string

SearchBudget = namedtuple("SearchBudget", ["max_len", "steps"])


@dataclass(frozen=True)
class ComplexityEstimate:
    value: int
    witness: Optional[QString]
    budget: SearchBudget

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("complexity upper bound cannot be negative")


@dataclass(frozen=True)
class WitnessTable:
    """Snapshot of the universal machine's halting programs within a budget."""

    q: int
    budget: SearchBudget
    programs: tuple[tuple[QString, QString], ...]  # (program, output), quasi-lex

    def min_program_for(self, x: QString):
        return self._index().get(x.symbols)

    def _index(self):
        cached = getattr(self, "_by_output", None)
        if cached is None:
            cached = {}
            for prog, out in self.programs:
                if out.symbols not in cached:
                    cached[out.symbols] = prog  # quasi-lex order: first is minimal
            object.__setattr__(self, "_by_output", cached)
        return cached

    def halting_counts(self) -> list[int]:
        """r_i = number of halting programs of length i, i = 0..max_len."""
        counts = [0] * (self.budget.max_len + 1)
        for prog, _ in self.programs:
            counts[len(prog)] += 1
        return counts


_TABLE_CACHE: dict[tuple[int, SearchBudget], WitnessTable] = {}


def build_witness_table(q: int, budget: SearchBudget, workers: int = 1) -> WitnessTable:
    key = (q, budget)
    if key not in _TABLE_CACHE:
        pairs = vm.enumerate_halting(q, budget.max_len, budget.steps, workers=workers)
        _TABLE_CACHE[key] = WitnessTable(q, budget, tuple(pairs))
    return _TABLE_CACHE[key]


def printer_machine(x: QString) -> vm.Machine:
    code = tuple(vm.Instruction(vm.WRITE, s) for s in x.symbols) + (
        vm.Instruction(vm.HALT),
    )
    return vm.Machine(x.q, code)


def printer_program(x: QString) -> QString:
    """Literal-printer program: header of the print-x machine, empty payload."""
    return vm.encode_machine(printer_machine(x)).header


def replay_budget_for(witness: QString, x: QString, steps: int) -> int:
    # generous: witness verification must not be starved by the search budget
    return max(steps, 10 * (len(witness) + len(x)) + 100)


def replays_to(q: int, witness: QString, x: QString, steps: int) -> bool:
    outcome = vm.universal_run(q, witness, replay_budget_for(witness, x, steps))
    return outcome.halted_exactly(len(witness)) and outcome.output == x


def h_upper(
    q: int,
    x: QString,
    budget: SearchBudget,
    extra_witnesses: Iterable[QString] = (),
    table: Optional[WitnessTable] = None,
    workers: int = 1,
) -> ComplexityEstimate:
    """Least witnessed program length for output x under the given budget.

    The literal printer is always injected, so the value is never unknown and
    is at most |x| plus the printer header overhead.
    """
    if x.q != q:
        raise ValueError("target alphabet mismatch")
    if table is None:
        table = build_witness_table(q, budget, workers=workers)
    candidates: list[QString] = []
    hit = table.min_program_for(x)
    if hit is not None:
        candidates.append(hit)
    candidates.append(printer_program(x))
    candidates.extend(extra_witnesses)
    best: Optional[QString] = None
    for witness in candidates:
        if witness.q != q:
            raise ValueError("witness alphabet mismatch")
        if best is not None and (len(witness), witness.symbols) >= (len(best), best.symbols):
            continue
        if replays_to(q, witness, x, budget.steps):
            best = witness
    assert best is not None, "printer witness must replay"
    return ComplexityEstimate(len(best), best, budget)


def delta_upper(
    q: int,
    x: QString,
    budget: SearchBudget,
    extra_witnesses: Iterable[QString] = (),
    table: Optional[WitnessTable] = None,
) -> int:
    """Upper bound on program-size complexity minus string length."""
    return h_upper(q, x, budget, extra_witnesses, table).value - len(x)


# ---------------------------------------------------------------------------
# Fixed-width binary naming of q-ary strings (the concrete string-level
# encoder behind the default Goedel numbering; ceil(log2 q) bits per symbol).
# ---------------------------------------------------------------------------


def bits_per_symbol(q: int) -> int:
    b = 1
    while 2**b < q:
        b += 1
    return b


def encode_string_bits(x: QString) -> QString:
    b = bits_per_symbol(x.q)
    bits: list[int] = []
    for s in x.symbols:
        bits.extend((s >> (b - 1 - i)) & 1 for i in range(b))
    return QString(2, tuple(bits))


def decode_string_bits(q: int, y: QString) -> Optional[QString]:
    b = bits_per_symbol(q)
    if len(y) % b != 0:
        return None
    symbols = []
    for i in range(0, len(y), b):
        value = 0
        for j in range(b):
            value = value * 2 + y.symbols[i + j]
        if value >= q:
            return None
        symbols.append(value)
    return QString(q, tuple(symbols))


# ---------------------------------------------------------------------------
# Table machines: decision trees whose exact-consumption domain is a given
# prefix-free codeword set; the workhorse behind the compiled adapters.
# ---------------------------------------------------------------------------


def build_table_machine(q: int, mapping: dict[QString, QString]) -> vm.Machine:
    """A machine halting exactly on each codeword with the mapped output.

    Codewords must be prefix-free; any other input faults or runs out of
    input, so the machine's domain is exactly the codeword set.
    """
    trie: dict = {}
    LEAF = object()
    for word, output in sorted(mapping.items(), key=lambda kv: kv[0].sort_key()):
        node = trie
        for s in word.symbols:
            node = node.setdefault(s, {})
        if node or LEAF in node:
            raise ValueError("codewords are not prefix-free")
        node[LEAF] = output

    lines: list[str] = []
    counter = [0]

    def fresh(prefix: str) -> str:
        counter[0] += 1
        return f"{prefix}{counter[0]}"

    def emit(node) -> None:
        if LEAF in node:
            for s in node[LEAF].symbols:
                lines.append(f"WRITE {s}")
            lines.append("HALT")
            return
        lines.append("READ")
        labels = {}
        for s in range(q):
            labels[s] = fresh("c") if s in node else "nomatch"
        # countdown chain: test 0, subtract 1, test again ...
        for s in range(q):
            lines.append("DUP")
            lines.append(f"JZ {labels[s]}")
            if s < q - 1:
                lines.append("PUSH 1")
                lines.append("SUBSAT")
        # unreachable: the read symbol always matches one branch
        for s in range(q):
            if s in node:
                lines.append(f"{labels[s]}:")
                lines.append("POP")  # the leftover zero from the matched test
                emit(node[s])

    emit(trie)
    lines.append("nomatch:")
    lines.append("POP")
    lines.append("POP")  # empty stack: deliberate fault for non-codewords
    return vm.assemble("\n".join(lines), q)


@dataclass(frozen=True)
class CompiledAdapter:
    machine: vm.Machine
    header: QString
    codebook: tuple[tuple[QString, QString], ...]  # (source program, codeword)

    def codeword_for(self, program: QString) -> Optional[QString]:
        for prog, word in self.codebook:
            if prog == program:
                return word
        return None


def build_adapter_C(
    q: int,
    snapshot: WitnessTable,
    encoder: Callable[[QString], QString] = encode_string_bits,
) -> CompiledAdapter:
    """Compile a snapshot of the q-ary universal domain into a binary machine.

    For every snapshot program w a binary codeword s_w of length
    ceil(log2 q) * |w| is allocated; the machine halts exactly on s_w with
    output encoder(U_q(w)).  Feasibility of the allocation is the exact Kraft
    comparison sum 2^-n_w <= sum q^-|w| <= 1.
    """
    b = bits_per_symbol(q)
    requested = [(prog, b * len(prog)) for prog, _ in snapshot.programs]
    mass = sum(Fraction(1, 2**n) for _, n in requested)
    source_mass = sum(Fraction(1, q ** len(p)) for p, _ in requested)
    if not mass <= source_mass <= 1:
        raise ValueError("snapshot violates the Kraft comparison")
    allocator = Allocator(2)
    codebook = []
    mapping: dict[QString, QString] = {}
    for (prog, out), (_, n) in zip(snapshot.programs, requested):
        word = allocator.allocate(n).word
        codebook.append((prog, word))
        mapping[word] = encoder(out)
    machine = build_table_machine(2, mapping)
    return CompiledAdapter(machine, vm.encode_machine(machine).header, tuple(codebook))


def ceil_log_pow(q: int, m: int) -> int:
    """ceil(m * log_q 2): the least k with q**k >= 2**m, by exact integers."""
    k = 0
    power = 1
    target = 2**m
    while power < target:
        power *= q
        k += 1
    return k


def build_adapter_D(
    q: int,
    snapshot: WitnessTable,
    decoder: Callable[[QString], Optional[QString]] = None,
) -> CompiledAdapter:
    """Compile a binary snapshot into a q-ary machine inverting the naming.

    Snapshot programs w with 2**|w| >= q whose outputs decode to q-ary
    strings get q-ary codewords t_w of length ceil(|w| * log_q 2); the
    machine halts exactly on t_w with the decoded string as output.
    """
    if snapshot.q != 2:
        raise ValueError("adapter D consumes a binary snapshot")
    if decoder is None:
        decoder = lambda y: decode_string_bits(q, y)
    entries = []
    for prog, out in snapshot.programs:
        if 2 ** len(prog) < q:
            continue
        decoded = decoder(out)
        if decoded is None:
            continue
        entries.append((prog, decoded, ceil_log_pow(q, len(prog))))
    mass = sum(Fraction(1, q**m) for _, _, m in entries)
    source_mass = sum(Fraction(1, 2 ** len(p)) for p, _, _ in entries)
    if not mass <= source_mass <= 1:
        raise ValueError("snapshot violates the Kraft comparison")
    allocator = Allocator(q)
    codebook = []
    mapping: dict[QString, QString] = {}
    for prog, decoded, m in entries:
        word = allocator.allocate(m).word
        codebook.append((prog, word))
        mapping[word] = decoded
    machine = build_table_machine(q, mapping)
    return CompiledAdapter(machine, vm.encode_machine(machine).header, tuple(codebook))


# ---------------------------------------------------------------------------
# Density profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityRow:
    n: int
    fraction: Fraction
    majorant: Optional[Fraction]


def density_profile(
    q: int,
    lengths: Iterable[int],
    threshold: int,
    budget: SearchBudget,
    table: Optional[WitnessTable] = None,
) -> list[DensityRow]:
    """Exact fraction of length-n strings whose delta upper bound is below
    the threshold, with the halting-count majorant where the snapshot covers
    it (majorant omitted when n + threshold exceeds the snapshot length)."""
    if table is None:
        table = build_witness_table(q, budget)
    counts = table.halting_counts()
    rows = []
    for n in lengths:
        hits = 0
        for idx in range(q**n):
            # strings of length n enumerated by offset within the length block
            x = _string_of_length(q, n, idx)
            if delta_upper(q, x, budget, table=table) <= threshold:
                hits += 1
        fraction = Fraction(hits, q**n)
        majorant = None
        if n + threshold <= table.budget.max_len:
            majorant = Fraction(sum(counts[: n + threshold + 1]), q**n)
        rows.append(DensityRow(n, fraction, majorant))
    return rows


def _string_of_length(q: int, n: int, offset: int) -> QString:
    shorter = (q**n - 1) // (q - 1)
    return index_to_string(q, shorter + offset)
