"""Bosonic mode labels, Fock occupation states, and sparse superpositions.

A mode is a (spatial port, polarization) pair. A :class:`FockState` maps
modes to photon counts in canonical form (zero counts absent, modes sorted
by port then polarization with H < V). A :class:`SuperposedState` is a
finite map from Fock states to complex amplitudes.

All types are immutable values: equal occupation maps compare equal and
hash identically, and everything is safe to share across threads.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

# Amplitudes below this are dropped on construction so destructive
# interference leaves canonical term maps.
AMPLITUDE_PRUNE_TOL = 1e-12

NORMALIZATION_TOL = 1e-9


class Polarization(str, enum.Enum):
    H = "H"
    V = "V"

    def __lt__(self, other: "Polarization") -> bool:
        return self.value < other.value


class Mode(NamedTuple):
    port: int
    pol: Polarization


@dataclass(frozen=True)
class FockState:
    """Occupation-number state over (port, polarization) modes.

    ``occ`` is a sorted tuple of (Mode, count) pairs with all counts > 0;
    use :meth:`from_counts` rather than the raw constructor.
    """

    n_ports: int
    occ: tuple[tuple[Mode, int], ...]

    @classmethod
    def from_counts(cls, counts: Mapping[Mode, int] | Iterable[tuple[Mode, int]],
                    n_ports: int) -> "FockState":
        if n_ports < 1:
            raise ValueError(f"n_ports must be positive, got {n_ports}")
        merged: dict[Mode, int] = {}
        items = counts.items() if isinstance(counts, Mapping) else counts
        for mode, count in items:
            mode = Mode(mode[0], Polarization(mode[1]))
            if count < 0:
                raise ValueError(f"negative photon count {count} for mode {mode}")
            if not 0 <= mode.port < n_ports:
                raise ValueError(f"port {mode.port} out of range for {n_ports} ports")
            if count > 0:
                merged[mode] = merged.get(mode, 0) + count
        occ = tuple(sorted(merged.items(), key=lambda mc: (mc[0].port, mc[0].pol.value)))
        return cls(n_ports, occ)

    def count(self, mode: Mode) -> int:
        for m, c in self.occ:
            if m == mode:
                return c
        return 0

    def total_photons(self) -> int:
        return sum(c for _, c in self.occ)

    def photons_per_pol(self) -> dict[Polarization, int]:
        totals = {Polarization.H: 0, Polarization.V: 0}
        for mode, c in self.occ:
            totals[mode.pol] += c
        return totals

    def occupation_vector(self, pol: Polarization) -> tuple[int, ...]:
        """Per-port counts for one polarization, length n_ports."""
        vec = [0] * self.n_ports
        for mode, c in self.occ:
            if mode.pol == pol:
                vec[mode.port] = c
        return tuple(vec)

    def spatial_counts(self) -> tuple[int, ...]:
        """Per-port counts summed over polarization (what a non-resolving detector sees)."""
        vec = [0] * self.n_ports
        for mode, c in self.occ:
            vec[mode.port] += c
        return tuple(vec)

    def sort_key(self) -> tuple:
        """Deterministic ordering key: lexicographic occupation vectors, H sector major."""
        return (self.occupation_vector(Polarization.H),
                self.occupation_vector(Polarization.V))

    def to_json_obj(self) -> dict:
        return {
            "nPorts": self.n_ports,
            "occ": [{"port": m.port, "pol": m.pol.value, "count": c} for m, c in self.occ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FockState":
        counts = {Mode(e["port"], Polarization(e["pol"])): e["count"] for e in obj["occ"]}
        return cls.from_counts(counts, obj["nPorts"])

    def __str__(self) -> str:
        if not self.occ:
            return f"|vac;{self.n_ports}>"
        parts = [f"{m.pol.value}{m.port}" + (f"^{c}" if c > 1 else "") for m, c in self.occ]
        return "|" + " ".join(parts) + ">"


class SuperposedState:
    """Finite map FockState -> complex amplitude over a fixed port count.

    All member states must share the port count and the photon totals per
    polarization. Amplitudes below ``AMPLITUDE_PRUNE_TOL`` are dropped.
    Normalization is enforced unless the owning operation passes
    ``require_normalized=False`` (explicitly-unnormalized intermediates).
    """

    def __init__(self, terms: Mapping[FockState, complex] | Iterable[tuple[FockState, complex]],
                 n_ports: int, require_normalized: bool = True):
        if n_ports < 1:
            raise ValueError(f"n_ports must be positive, got {n_ports}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        kept: dict[FockState, complex] = {}
        for state, amp in items:
            amp = complex(amp)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise ValueError(f"non-finite amplitude for {state}")
            if abs(amp) < AMPLITUDE_PRUNE_TOL:
                continue
            if state.n_ports != n_ports:
                raise ValueError(f"term {state} has {state.n_ports} ports, expected {n_ports}")
            kept[state] = kept.get(state, 0.0) + amp
        pol_totals = None
        for state in kept:
            totals = state.photons_per_pol()
            if pol_totals is None:
                pol_totals = totals
            elif totals != pol_totals:
                raise ValueError("terms differ in photon count per polarization")
        if require_normalized:
            norm_sq = sum(abs(a) ** 2 for a in kept.values())
            if abs(norm_sq - 1.0) > NORMALIZATION_TOL:
                raise ValueError(f"state is not normalized: sum |amp|^2 = {norm_sq!r}")
        self.n_ports = n_ports
        self._terms = dict(sorted(kept.items(), key=lambda sa: sa[0].sort_key()))

    @property
    def terms(self) -> dict[FockState, complex]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[FockState, complex]]:
        return iter(self._terms.items())

    def amplitude(self, state: FockState) -> complex:
        return self._terms.get(state, 0.0 + 0.0j)

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self._terms.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperposedState):
            return NotImplemented
        return self.n_ports == other.n_ports and self._terms == other._terms

    def allclose(self, other: "SuperposedState", tol: float = 1e-9) -> bool:
        """Term-for-term amplitude agreement within ``tol``."""
        if self.n_ports != other.n_ports:
            return False
        states = set(self._terms) | set(other._terms)
        return all(abs(self.amplitude(s) - other.amplitude(s)) <= tol for s in states)

    def to_json_obj(self) -> dict:
        return {
            "nPorts": self.n_ports,
            "terms": [
                {"state": s.to_json_obj(), "amp": [amp.real, amp.imag]}
                for s, amp in self._terms.items()
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict, require_normalized: bool = True) -> "SuperposedState":
        terms = [
            (FockState.from_json_obj(t["state"]), complex(t["amp"][0], t["amp"][1]))
            for t in obj["terms"]
        ]
        return cls(terms, obj["nPorts"], require_normalized=require_normalized)

    def __repr__(self) -> str:
        body = " + ".join(f"({a:.4g}){s}" for s, a in self._terms.items())
        return f"SuperposedState({body or '0'})"


def single_photon_state(port: int, pol: Polarization, n_ports: int) -> FockState:
    """One photon in (port, pol), every other mode vacuum."""
    if not 0 <= port < n_ports:
        raise ValueError(f"port {port} out of range for {n_ports} ports")
    return FockState.from_counts({Mode(port, pol): 1}, n_ports)


def product_input(photons: Sequence[tuple[int, Polarization]], n_ports: int) -> FockState:
    """Fock state with one photon per entry; repeated modes accumulate counts."""
    counts: dict[Mode, int] = {}
    for port, pol in photons:
        if not 0 <= port < n_ports:
            raise ValueError(f"port {port} out of range for {n_ports} ports")
        mode = Mode(port, Polarization(pol))
        counts[mode] = counts.get(mode, 0) + 1
    return FockState.from_counts(counts, n_ports)


def w_state_path(n: int) -> SuperposedState:
    """Single-photon path W state: one H photon spread uniformly over n ports."""
    if n < 2:
        raise ValueError(f"need at least 2 ports, got {n}")
    amp = 1.0 / math.sqrt(n)
    terms = {single_photon_state(p, Polarization.H, n): amp for p in range(n)}
    return SuperposedState(terms, n)


def w_state_polarization(n: int) -> SuperposedState:
    """n-photon polarization W state: one photon per port, the single V shared uniformly."""
    if n < 2:
        raise ValueError(f"need at least 2 ports, got {n}")
    amp = 1.0 / math.sqrt(n)
    terms = {}
    for v_port in range(n):
        photons = [(p, Polarization.V if p == v_port else Polarization.H) for p in range(n)]
        terms[product_input(photons, n)] = amp
    return SuperposedState(terms, n)


def target_from_coefficients(coeffs: Sequence[complex], kind: str) -> SuperposedState:
    """W-shaped state with the given amplitudes.

    Coefficient index k multiplies the term with the excitation (the photon
    for ``kind="path"``, the V polarization for ``kind="polarization"``) at
    port n-1-k: the first coefficient goes with the |00...1>-like term.
    """
    from . import linalg  # local import to avoid a cycle at module load

    c = linalg.check_normalized_column(coeffs)
    n = c.size
    if kind not in ("path", "polarization"):
        raise ValueError(f"kind must be 'path' or 'polarization', got {kind!r}")
    terms = {}
    for k in range(n):
        port = n - 1 - k
        if kind == "path":
            state = single_photon_state(port, Polarization.H, n)
        else:
            photons = [(p, Polarization.V if p == port else Polarization.H) for p in range(n)]
            state = product_input(photons, n)
        terms[state] = complex(c[k])
    return SuperposedState(terms, n)
