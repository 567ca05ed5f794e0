"""sociogen: synthetic social networks from socio-demographic attribute
distributions, plus the structural statistics to validate them."""

from .attributes import (
    AttributeSchema,
    NodeProfile,
    assign_profiles,
    categorical_distance,
    demographic_distance,
    load_schemas,
    numerical_distance,
    ordinal_distance,
    read_profiles,
    save_schemas,
    write_profiles,
)
from .generator import (
    GenerationConfig,
    TraceRecord,
    generate,
    load_config,
    save_config,
    similarity_link_step,
    triad_formation_step,
    triad_linkage_step,
    with_overrides,
)
from .graph import Graph
from .ingestion import DatasetBundle, extract_proportions, load_dataset
from .metrics import (
    MetricsReport,
    PowerlawFit,
    attribute_homophily,
    avg_geodesic_distance,
    clustering_coefficient,
    degree_assortativity,
    degree_histogram,
    density,
    measure_graph,
    powerlaw_fit,
)
from .similarity import SimilarityParams, combined_score, fof_distance, pa_distance

__version__ = "0.1.0"

__all__ = [
    "AttributeSchema",
    "DatasetBundle",
    "GenerationConfig",
    "Graph",
    "MetricsReport",
    "NodeProfile",
    "PowerlawFit",
    "SimilarityParams",
    "TraceRecord",
    "assign_profiles",
    "attribute_homophily",
    "avg_geodesic_distance",
    "categorical_distance",
    "clustering_coefficient",
    "combined_score",
    "degree_assortativity",
    "degree_histogram",
    "demographic_distance",
    "density",
    "extract_proportions",
    "fof_distance",
    "generate",
    "load_config",
    "load_dataset",
    "load_schemas",
    "measure_graph",
    "numerical_distance",
    "ordinal_distance",
    "pa_distance",
    "powerlaw_fit",
    "read_profiles",
    "save_config",
    "save_schemas",
    "similarity_link_step",
    "triad_formation_step",
    "triad_linkage_step",
    "with_overrides",
    "write_profiles",
]
