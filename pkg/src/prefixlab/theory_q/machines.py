"""Echo machines realizing the syntactic compressibility of the formula
language.

Every formula render starts with "(" and first returns to parenthesis
balance zero at its end, so a machine that echoes symbols until the balance
first hits zero halts exactly on a prefix-free superset of the sentence
language.  Feeding a render through the universal interpreter behind this
machine's header bounds the complexity of any formula by its length plus a
constant: the header length is that constant.

Two variants: one over the 15-symbol alphabet, one over bits reading 4-bit
groups (for images under the fixed-width numbering).  Parentheses are the
two top symbol codes, so a group value of 12 or less leaves the balance
alone.
"""

from __future__ import annotations

from functools import lru_cache

from ..prefix_vm import Machine, assemble

_BALANCE_LOGIC = """
    # [depth, value]: classify value as other (<=12), open (13), close (14)
    PUSH 12
    SUBSAT
    DUP
    JZ nochange
    PUSH 1
    SUBSAT
    DUP
    JZ open
    POP             # close paren
    PUSH 1
    SUBSAT
    JMP check
open:
    POP
    PUSH 1
    ADD
    JMP check
nochange:
    POP
check:
    DUP
    JZ done
    JMP loop
done:
    HALT
"""


@lru_cache(maxsize=None)
def build_sentence_echo_machine() -> Machine:
    """Echoes 15-ary symbols until parenthesis balance first returns to zero."""
    source = (
        """
    PUSH 0          # depth
loop:
    READ
    DUP
    WRITEPOP
"""
        + _BALANCE_LOGIC
    )
    return assemble(source, 15)


@lru_cache(maxsize=None)
def build_group_echo_machine() -> Machine:
    """Echoes bits in 4-bit groups until group balance first returns to zero."""
    read_bit = """
    DUP
    ADD
    READ
    DUP
    WRITEPOP
    ADD
"""
    source = (
        """
    PUSH 0          # depth
loop:
    PUSH 0          # group accumulator
"""
        + read_bit * 4
        + _BALANCE_LOGIC
    )
    return assemble(source, 2)
