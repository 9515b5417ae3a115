"""TOPSIS multi-criteria ranking of network nodes.

Pipeline over a decision matrix D (rows = alternatives, columns =
criteria): column-wise Euclidean normalization, weighting, ideal /
anti-ideal solutions per criterion direction, Euclidean separations,
and the closeness coefficient C = S- / (S- + S+) that orders the
alternatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .centrality import CentralityTable

CRITERIA_ORDER = ("degree", "closeness", "betweenness", "eigenvector")

BENEFIT = "benefit"
COST = "cost"


@dataclass(frozen=True)
class CriteriaSpec:
    """Column weights (summing to 1) and optimization directions."""

    weights: tuple[float, ...]
    directions: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != len(self.directions):
            raise ValueError("weights and directions must have equal length")
        if not self.weights:
            raise ValueError("criteria spec must cover at least one column")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if not any(w > 0 for w in self.weights):
            raise ValueError("at least one weight must be positive")
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {sum(self.weights)!r}")
        for d in self.directions:
            if d not in (BENEFIT, COST):
                raise ValueError(f"direction must be benefit or cost, got {d!r}")

    @classmethod
    def equal(cls, q: int, directions: tuple[str, ...] | None = None) -> "CriteriaSpec":
        if directions is None:
            directions = (BENEFIT,) * q
        return cls(weights=(1.0 / q,) * q, directions=directions)


@dataclass(frozen=True)
class DecisionMatrix:
    values: np.ndarray  # p x q, finite, nonnegative when from centralities
    row_labels: tuple[str, ...]
    column_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        p, q = self.values.shape
        if p < 1 or q < 1:
            raise ValueError("decision matrix must be at least 1x1")
        if len(self.row_labels) != p or len(self.column_labels) != q:
            raise ValueError("label counts do not match matrix shape")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("decision matrix entries must be finite")


@dataclass(frozen=True)
class TopsisTableau:
    """Intermediate quantities of one full evaluation."""

    normalized: np.ndarray
    weighted: np.ndarray
    ideal: np.ndarray
    anti_ideal: np.ndarray
    s_plus: np.ndarray
    s_minus: np.ndarray
    closeness: np.ndarray
    zero_columns: tuple[int, ...]


@dataclass(frozen=True)
class RankingResult:
    """Final ordering: (rank, entity, closeness, raw criterion values)."""

    entries: tuple[tuple[int, str, float, tuple[float, ...]], ...]
    provenance: dict = field(default_factory=dict, compare=False)


def build_decision_matrix(
    table: CentralityTable, criteria: tuple[str, ...] = CRITERIA_ORDER
) -> DecisionMatrix:
    """One row per node, columns in the fixed degree/closeness/
    betweenness/eigenvector order (any nonempty subset)."""
    if not criteria:
        raise ValueError("criteria selection must not be empty")
    unknown = [c for c in criteria if c not in CRITERIA_ORDER]
    if unknown:
        raise ValueError(f"unknown criteria: {unknown}")
    ordered = tuple(c for c in CRITERIA_ORDER if c in criteria)
    columns = {
        "degree": table.degree.astype(np.float64),
        "closeness": table.closeness,
        "betweenness": table.betweenness,
        "eigenvector": table.eigenvector,
    }
    values = np.column_stack([columns[c] for c in ordered])
    return DecisionMatrix(
        values=values, row_labels=tuple(table.names), column_labels=ordered
    )


def normalize(values: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Divide each column by its Euclidean norm.

    All-zero columns stay all-zero and are reported so callers can flag
    them; they then contribute nothing to any separation.
    """
    norms = np.sqrt((values**2).sum(axis=0))
    zero_cols = tuple(int(j) for j in np.nonzero(norms == 0.0)[0])
    safe = np.where(norms == 0.0, 1.0, norms)
    return values / safe, zero_cols


def apply_weights(normalized: np.ndarray, spec: CriteriaSpec) -> np.ndarray:
    if normalized.shape[1] != len(spec.weights):
        raise ValueError(
            f"{len(spec.weights)} weights for {normalized.shape[1]} columns"
        )
    return normalized * np.asarray(spec.weights)


def ideal_solutions(
    weighted: np.ndarray, spec: CriteriaSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Best and worst value per column: max/min for benefit criteria,
    swapped for cost criteria."""
    col_max = weighted.max(axis=0)
    col_min = weighted.min(axis=0)
    benefit = np.asarray([d == BENEFIT for d in spec.directions])
    ideal = np.where(benefit, col_max, col_min)
    anti = np.where(benefit, col_min, col_max)
    return ideal, anti


def separations(
    weighted: np.ndarray, ideal: np.ndarray, anti_ideal: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    s_plus = np.sqrt(((weighted - ideal) ** 2).sum(axis=1))
    s_minus = np.sqrt(((weighted - anti_ideal) ** 2).sum(axis=1))
    return s_plus, s_minus


def closeness_coefficient(s_plus: np.ndarray, s_minus: np.ndarray) -> np.ndarray:
    """C = S- / (S- + S+), with 0.5 where both separations vanish."""
    total = s_plus + s_minus
    out = np.full_like(total, 0.5)
    nz = total > 0.0
    out[nz] = s_minus[nz] / total[nz]
    return out


def evaluate(matrix: DecisionMatrix, spec: CriteriaSpec) -> TopsisTableau:
    normalized, zero_cols = normalize(matrix.values)
    weighted = apply_weights(normalized, spec)
    ideal, anti = ideal_solutions(weighted, spec)
    s_plus, s_minus = separations(weighted, ideal, anti)
    return TopsisTableau(
        normalized=normalized,
        weighted=weighted,
        ideal=ideal,
        anti_ideal=anti,
        s_plus=s_plus,
        s_minus=s_minus,
        closeness=closeness_coefficient(s_plus, s_minus),
        zero_columns=zero_cols,
    )


def rank(matrix: DecisionMatrix, spec: CriteriaSpec) -> RankingResult:
    """Full pipeline; alternatives sorted by descending closeness with
    exact ties broken by ascending entity name."""
    tableau = evaluate(matrix, spec)
    order = sorted(
        range(len(matrix.row_labels)),
        key=lambda i: (-tableau.closeness[i], matrix.row_labels[i]),
    )
    entries = tuple(
        (
            position + 1,
            matrix.row_labels[i],
            float(tableau.closeness[i]),
            tuple(float(x) for x in matrix.values[i]),
        )
        for position, i in enumerate(order)
    )
    return RankingResult(
        entries=entries,
        provenance={
            "weights": tuple(spec.weights),
            "directions": tuple(spec.directions),
            "criteria": tuple(matrix.column_labels),
            "zero_columns": tableau.zero_columns,
            "tie_break": "closeness desc, entity asc",
        },
    )
