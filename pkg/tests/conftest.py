import random

import pytest

from realpred.machine import TuringMachine


def two_state_halting() -> TuringMachine:
    return TuringMachine(
        ("qI", "qF"),
        "qI",
        "qF",
        {("qI", 0): ("qF", 1, "R"), ("qI", 1): ("qF", 1, "R")},
    )


def two_state_looping() -> TuringMachine:
    return TuringMachine(
        ("qI", "qF"),
        "qI",
        "qF",
        {("qI", 0): ("qI", 0, "R"), ("qI", 1): ("qI", 1, "R")},
    )


def binary_counter() -> TuringMachine:
    """Plants a marker at cell 0 and counts in binary on the cells left of it,
    bouncing between the marker and the carry chain; never halts."""
    return TuringMachine(
        ("qS", "qA", "qB", "qF"),
        "qS",
        "qF",
        {
            ("qS", 0): ("qA", 1, "L"),
            ("qS", 1): ("qA", 1, "L"),
            ("qA", 0): ("qB", 1, "R"),
            ("qA", 1): ("qA", 0, "L"),
            ("qB", 0): ("qB", 0, "R"),
            ("qB", 1): ("qA", 1, "L"),
        },
    )


def seventeen_stepper() -> TuringMachine:
    """A chain of states that halts after exactly 17 steps."""
    names = [f"s{i}" for i in range(17)] + ["sF"]
    delta = {}
    for i in range(17):
        for a in (0, 1):
            delta[(names[i], a)] = (names[i + 1], 1, "R")
    return TuringMachine(names, "s0", "sF", delta)


def random_machine(seed: int, n_work: int = 3) -> TuringMachine:
    rng = random.Random(seed)
    states = [f"q{i}" for i in range(n_work)] + ["qF"]
    delta = {}
    for q in states[:-1]:
        for a in (0, 1):
            delta[(q, a)] = (rng.choice(states), rng.randint(0, 1), rng.choice("LR"))
    return TuringMachine(states, "q0", "qF", delta)


def machine_corpus() -> dict[str, TuringMachine]:
    return {
        "two_state_halting": two_state_halting(),
        "two_state_looping": two_state_looping(),
        "binary_counter": binary_counter(),
        "seventeen_stepper": seventeen_stepper(),
        "random_halting": random_machine(13),
        "random_looping": random_machine(15),
    }


@pytest.fixture
def m2() -> TuringMachine:
    return two_state_halting()


@pytest.fixture
def ml() -> TuringMachine:
    return two_state_looping()


@pytest.fixture
def corpus() -> dict[str, TuringMachine]:
    return machine_corpus()
