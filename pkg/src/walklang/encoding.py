"""Input encodings: classical words and symbol-wise quantum superpositions.

Words are plain strings over the two-letter alphabet ``{a, b}``.  A word
of length n is loaded with amplitude ``1/sqrt(n)`` per symbol:

* spatial machines place it on one of the two rail vertices assigned to
  each position (the a-rail or the b-rail);
* sequential machines place it on one of the two arriving ports of each
  chain vertex, so position k carries ``(alpha, 0, 0, 0)`` for ``a`` and
  ``(0, alpha, 0, 0)`` for ``b``.

A quantum input superposes two equal-length words symbol by symbol: where
they agree the slot is loaded classically, where they differ the first
word's slot gets ``alpha * eta`` and the second word's slot gets
``alpha * sqrt(1 - |eta|^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .walk import WalkState

__all__ = [
    "ALPHABET",
    "check_word",
    "enumerate_words",
    "QuantumInput",
    "spatial_initial_state",
    "sequential_initial_state",
    "initial_state",
    "quantum_initial_state",
]

ALPHABET = "ab"


def check_word(word: str) -> str:
    if not word:
        raise ValueError("word must be non-empty")
    bad = set(word) - set(ALPHABET)
    if bad:
        raise ValueError(f"word {word!r} uses symbols outside {{a, b}}: {sorted(bad)}")
    return word


def enumerate_words(max_len: int) -> Iterator[str]:
    """All words up to ``max_len``, shortest first, then lexicographic (a < b)."""
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    for length in range(1, max_len + 1):
        for bits in range(2 ** length):
            yield "".join(
                ALPHABET[(bits >> (length - 1 - k)) & 1] for k in range(length)
            )


@dataclass(frozen=True)
class QuantumInput:
    """Symbol-wise superposition of ``w1`` and ``w2`` with amplitude ratio eta.

    At positions where the words differ, ``w1``'s slot carries relative
    amplitude ``eta`` and ``w2``'s slot ``sqrt(1 - |eta|^2)``; eta = 1
    reproduces ``w1`` exactly and eta = 0 reproduces ``w2``.
    """

    w1: str
    w2: str
    eta: complex

    def __post_init__(self):
        check_word(self.w1)
        check_word(self.w2)
        if len(self.w1) != len(self.w2):
            raise ValueError(
                f"words must have equal length, got {len(self.w1)} and {len(self.w2)}"
            )
        if abs(self.eta) > 1 + 1e-12:
            raise ValueError(f"|eta| must be <= 1, got {abs(self.eta)}")


def _check_length(machine, word: str) -> None:
    if len(word) != machine.word_length:
        raise ValueError(
            f"machine expects words of length {machine.word_length}, "
            f"got {len(word)}"
        )


def spatial_initial_state(machine, word: str) -> WalkState:
    """Load a word across the input rails of a spatial machine.

    Position k (1-based) puts amplitude ``1/sqrt(n)`` on the single port of
    its a-rail vertex when the symbol is ``a``, else on its b-rail vertex.
    """
    if machine.kind != "spatial":
        raise ValueError(f"machine kind is {machine.kind!r}, expected 'spatial'")
    check_word(word)
    _check_length(machine, word)
    n = len(word)
    alpha = 1.0 / np.sqrt(n)
    amps = np.zeros(machine.graph.num_ports, dtype=np.complex128)
    for k, symbol in enumerate(word):
        ia, ib = machine.symbol_state_indices(k)
        amps[ia if symbol == "a" else ib] = alpha
    return WalkState(machine.graph, amps)


def sequential_initial_state(machine, word: str) -> WalkState:
    """Load a word along the input chain of a sequential machine."""
    if machine.kind != "sequential":
        raise ValueError(f"machine kind is {machine.kind!r}, expected 'sequential'")
    check_word(word)
    _check_length(machine, word)
    n = len(word)
    alpha = 1.0 / np.sqrt(n)
    amps = np.zeros(machine.graph.num_ports, dtype=np.complex128)
    for k, symbol in enumerate(word):
        ia, ib = machine.symbol_state_indices(k)
        amps[ia if symbol == "a" else ib] = alpha
    return WalkState(machine.graph, amps)


def initial_state(machine, word: str) -> WalkState:
    """Dispatch to the spatial or sequential encoder by machine kind."""
    if machine.kind == "spatial":
        return spatial_initial_state(machine, word)
    return sequential_initial_state(machine, word)


def quantum_initial_state(machine, qinput: QuantumInput) -> WalkState:
    """Load a symbol-wise superposition of two words.

    Matching positions are encoded classically; differing positions split
    their ``1/sqrt(n)`` amplitude between the two words' slots in the
    ratio eta to sqrt(1 - |eta|^2).
    """
    _check_length(machine, qinput.w1)
    n = len(qinput.w1)
    alpha = 1.0 / np.sqrt(n)
    eta = complex(qinput.eta)
    residual = np.sqrt(max(0.0, 1.0 - abs(eta) ** 2))
    amps = np.zeros(machine.graph.num_ports, dtype=np.complex128)
    for k, (s1, s2) in enumerate(zip(qinput.w1, qinput.w2)):
        ia, ib = machine.symbol_state_indices(k)
        i1 = ia if s1 == "a" else ib
        if s1 == s2:
            amps[i1] = alpha
        else:
            i2 = ia if s2 == "a" else ib
            amps[i1] += alpha * eta
            amps[i2] += alpha * residual
    return WalkState(machine.graph, amps)
