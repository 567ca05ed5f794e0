"""Structural distance terms and the combined link-propensity score.

Two structural distances in [0, 1]: a degree-based preferential-attachment
distance (low for well-connected nodes) and a friend-of-a-friend overlap
distance (low for pairs with many shared neighbors). The combined score
flips the weighted distance mix into a similarity: 1 means maximally
attractive pair, 0 maximally unattractive. Thresholding and proportional
sampling in the generator both operate on this high-is-similar score.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .attributes import AttributeSchema, NodeProfile, demographic_distance
from .graph import Graph


@dataclass
class SimilarityParams:
    """Balance factors: alpha weights the demographic term, beta the
    structural term; weight_pa/weight_fof split the structural term."""

    alpha: float = 1.0
    beta: float = 1.0
    weight_pa: float = 1.0
    weight_fof: float = 1.0

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be nonnegative")
        if self.alpha + self.beta <= 0:
            raise ValueError("alpha + beta must be positive")
        if self.weight_pa < 0 or self.weight_fof < 0:
            raise ValueError("structural weights must be nonnegative")
        if self.weight_pa + self.weight_fof <= 0:
            raise ValueError("structural weights must not both be zero")


def pa_distance(g: Graph, i: int) -> float:
    """1 - deg_i / max_degree; low value = attractive high-degree node.

    On an edgeless graph every node is maximally distant (1.0); the
    generator never hits that case because the seed triad exists first.
    """
    max_deg = g.max_degree()
    if max_deg == 0:
        return 1.0
    return 1.0 - g.degree(i) / max_deg


def fof_distance(g: Graph, i: int, j: int) -> float:
    """1 - shared neighbors / min(deg_i, deg_j); 1 when either side has none.

    The min denominator avoids penalizing a pair just because one side has
    many contacts.
    """
    smaller = min(g.degree(i), g.degree(j))
    if smaller == 0:
        return 1.0
    return 1.0 - g.common_neighbors(i, j) / smaller


def structural_distance(g: Graph, i: int, j: int, params: SimilarityParams) -> float:
    """Weight-normalized mean of pa_distance and fof_distance, in [0, 1].

    The preferential-attachment term is evaluated one-sidedly on j, the
    existing node of a candidate edge (i=new, j=existing).
    """
    wsum = params.weight_pa + params.weight_fof
    return (params.weight_pa * pa_distance(g, j) + params.weight_fof * fof_distance(g, i, j)) / wsum


def combined_score(
    g: Graph,
    i: int,
    j: int,
    profiles: list[NodeProfile],
    schemas: list[AttributeSchema],
    params: SimilarityParams,
) -> float:
    """Similarity of the candidate edge (i, j) in [0, 1]; 1 = most attractive.

    1 - (alpha * demographic + beta * structural) / (alpha + beta), with both
    distance terms weight-normalized into [0, 1]. Asymmetric in (i, j) when
    beta > 0 because the degree term looks at j only.
    """
    d = demographic_distance(profiles[i], profiles[j], schemas)
    s = structural_distance(g, i, j, params)
    return 1.0 - (params.alpha * d + params.beta * s) / (params.alpha + params.beta)


def combined_score_vector(
    candidate_degrees: np.ndarray,
    max_degree: int,
    common_counts: np.ndarray,
    node_degree: int,
    demographic: np.ndarray,
    params: SimilarityParams,
) -> np.ndarray:
    """Vectorized combined_score for one new node against many candidates.

    candidate_degrees, common_counts and demographic are aligned arrays over
    the candidate ids; node_degree is the new node's current degree. Matches
    the scalar combined_score exactly.
    """
    # score = (1 - B) - A*D + c_deg*deg + c_fof*(common/min), the expanded
    # form of 1 - (alpha*D + beta*S)/(alpha+beta) with both terms normalized.
    total = params.alpha + params.beta
    alpha_norm = params.alpha / total
    beta_norm = params.beta / total
    wsum = params.weight_pa + params.weight_fof
    c_deg = beta_norm * params.weight_pa / wsum / max_degree if max_degree > 0 else 0.0
    c_fof = beta_norm * params.weight_fof / wsum

    smaller = np.minimum(candidate_degrees, node_degree)
    score = np.zeros_like(demographic)
    np.divide(common_counts, smaller, out=score, where=smaller > 0)
    score *= c_fof
    score += 1.0 - beta_norm
    score -= alpha_norm * demographic
    if c_deg:
        score += c_deg * candidate_degrees
    return score
