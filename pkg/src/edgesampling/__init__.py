"""Edge sampling of graphs via smoothness-based node sampling on line graphs.

The toolkit converts a graph to its line graph (or edge Laplacian), builds a
spectral localization operator there, and greedily selects the edges whose
kernel atoms best cover the edge set. An accelerated variant performs the
filtering on the original graph through the incidence matrix. Baselines,
synthetic graph families, bandlimited weight synthesis, sparsification
metrics, and a deterministic experiment harness round out the package.
"""

from .errors import (
    AsymmetricInputError,
    BadBandwidthError,
    DegenerateEmbeddingError,
    DimensionMismatchError,
    DisconnectedError,
    DuplicateEdgeError,
    EdgeSamplingError,
    EmptyEdgeSetError,
    FormatError,
    InvalidEdgeIdError,
    KMismatchError,
    NodeOutOfRangeError,
    NonPositiveWeightError,
    NotSymmetricError,
    ParseError,
    RangeTooSmallError,
    RankDeficientWarning,
    SelfLoopError,
    SizeLimitError,
    SizeTooLargeError,
)
from .experiment import (
    CSV_COLUMNS,
    ExperimentConfig,
    RunRecord,
    config_from_mapping,
    config_hash,
    csv_text,
    fanout_seed,
    json_text,
    parse_config_file,
    resolve_sizes,
    run_experiment,
    write_csv,
    write_json,
)
from .filters import (
    FilterKernel,
    LocalizationOperator,
    Spectrum,
    apply_cpa,
    bandlimit_energy,
    cheb_fit,
    edge_gft,
    eig_sym,
    heat_kernel,
    inverse_edge_gft,
    lambda_max_bound,
    localization_accelerated,
    localization_cpa_line,
    localization_exact,
)
from .generators import (
    FAMILIES,
    GeneratorSpec,
    gen_community,
    gen_erdos_renyi,
    gen_knn_clusters,
    gen_sensor,
    generate,
)
from .graphio import (
    graph_to_edge_list_str,
    read_coords,
    read_edge_list,
    read_matrix_market,
    write_coords,
    write_edge_list,
    write_matrix_market,
)
from .graphs import (
    DegreeVectors,
    Graph,
    IncidenceMatrix,
    adjacency,
    adjacent_weight_diffs,
    build_graph,
    degrees,
    incidence,
    incident_edges,
    laplacian,
    subgraph,
    unweighted_copy,
)
from .linegraph import (
    EdgeLaplacian,
    LineGraph,
    edge_laplacian,
    line_degree_closed_form,
    line_degrees_closed_form,
    line_graph,
    verify_degree_identities,
)
from .metrics import (
    DiffusionMSE,
    ReconstructionError,
    SynthesisSpec,
    cluster_inconsistency,
    diffusion_mse,
    heat_diffuse,
    interp_bandlimited,
    isolated_nodes,
    reconstruction_error,
    spectral_cluster,
    synth_edge_weights,
)
from .samplers import (
    DETERMINISTIC_METHODS,
    METHODS,
    SampleResult,
    SamplerParams,
    anslg,
    anslg_prepare,
    effective_resistance,
    fastgsss_select,
    gsparse_select,
    maxdegree_select,
    netmelt_select,
    nslg,
    nslg_prepare,
    sample,
)

__version__ = "0.1.0"
