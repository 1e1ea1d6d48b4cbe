"""Coincidence post-selection and pure-state fidelity.

Detection is modelled per fiber: a pattern constrains the photon count of
each spatial port summed over polarization (the detector counts photons
per port and polarization is resolved afterwards). Post-selecting keeps
the matching terms and renormalizes; the discarded squared-amplitude
weight is reported separately.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .fock import FockState, SuperposedState

# Below this a kept weight is treated as exact destructive interference,
# not renormalizable round-off.
ZERO_PROBABILITY_TOL = 1e-12


@dataclass(frozen=True)
class CoincidencePattern:
    """Detector-count predicate over spatial ports.

    Either one photon in every port (``one_per_port``) or explicit
    required counts on a subset of ports, other ports unconstrained.
    """

    required: tuple[tuple[int, int], ...] | None  # (port, count) pairs, or None

    @classmethod
    def one_per_port(cls) -> "CoincidencePattern":
        return cls(required=None)

    @classmethod
    def port_counts(cls, counts: dict[int, int]) -> "CoincidencePattern":
        for port, count in counts.items():
            if port < 0:
                raise ValueError(f"port {port} is negative")
            if count < 0:
                raise ValueError(f"required count {count} for port {port} is negative")
        return cls(required=tuple(sorted(counts.items())))

    def validate_for(self, n_ports: int) -> None:
        if self.required is not None:
            for port, _ in self.required:
                if port >= n_ports:
                    raise ValueError(f"pattern references port {port}, device has {n_ports}")

    def matches(self, state: FockState) -> bool:
        spatial = state.spatial_counts()
        if self.required is None:
            return all(c == 1 for c in spatial)
        return all(spatial[port] == count for port, count in self.required)

    def describe(self) -> str:
        if self.required is None:
            return "one-per-port"
        return ",".join(f"{p}:{c}" for p, c in self.required)


@dataclass(frozen=True)
class PostSelectionResult:
    conditional: SuperposedState
    probability: float
    kept_terms: int
    dropped_probability: float

    def to_json_obj(self) -> dict:
        return {
            "probability": self.probability,
            "droppedProbability": self.dropped_probability,
            "keptTerms": self.kept_terms,
            "conditional": self.conditional.to_json_obj(),
        }


def postselect(state: SuperposedState, pattern: CoincidencePattern) -> PostSelectionResult:
    """Condition on a coincidence pattern and renormalize the survivors.

    When the kept weight is below ``ZERO_PROBABILITY_TOL`` the conditional
    state is empty rather than renormalized noise.
    """
    pattern.validate_for(state.n_ports)
    kept = {s: a for s, a in state if pattern.matches(s)}
    probability = sum(abs(a) ** 2 for a in kept.values())
    if probability < ZERO_PROBABILITY_TOL:
        conditional = SuperposedState({}, state.n_ports, require_normalized=False)
        return PostSelectionResult(conditional, 0.0, 0, 1.0)
    scale = 1.0 / math.sqrt(probability)
    conditional = SuperposedState(
        {s: a * scale for s, a in kept.items()}, state.n_ports
    )
    return PostSelectionResult(conditional, probability, len(kept), 1.0 - probability)


def branch_amplitude_report(
    state: SuperposedState, pattern: CoincidencePattern
) -> list[tuple[FockState, complex]]:
    """Kept terms with their pre-renormalization amplitudes, in deterministic order."""
    pattern.validate_for(state.n_ports)
    return [(s, a) for s, a in state if pattern.matches(s)]


def fidelity(state: SuperposedState, target: SuperposedState) -> float:
    """|<target|state>|^2 for pure states; global-phase invariant, in [0, 1]."""
    if state.n_ports != target.n_ports:
        raise ValueError(
            f"port counts differ: {state.n_ports} vs {target.n_ports}"
        )
    overlap = sum(target.amplitude(s).conjugate() * a for s, a in state)
    return min(abs(overlap) ** 2, 1.0)
