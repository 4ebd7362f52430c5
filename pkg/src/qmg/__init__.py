"""Quantum minority game simulator and analysis toolkit."""

from .core import LocalUnitary, MixedState, PureState
from .game import (
    GameSpec,
    StrategyParams,
    StrategyProfile,
    classical_payoff,
    expected_payoff,
    max_symmetric_payoff,
)
from .states import InitialStateRecipe, StateFamily, build_initial

__all__ = [
    "GameSpec",
    "InitialStateRecipe",
    "LocalUnitary",
    "MixedState",
    "PureState",
    "StateFamily",
    "StrategyParams",
    "StrategyProfile",
    "build_initial",
    "classical_payoff",
    "expected_payoff",
    "max_symmetric_payoff",
]
