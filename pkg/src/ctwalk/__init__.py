"""ctwalk: spectral simulation of continuous-time classical and quantum walks
on finite undirected graphs: transition probabilities, long-time averages,
average return probabilities, degeneracy-based bounds, and transport
efficiency diagnostics."""

from .graphs import (
    Graph,
    LabeledMatrix,
    FAMILY_LABELS,
    adjacency,
    from_edge_list,
    format_edge_list,
    gen_broom,
    gen_cycle,
    gen_family,
    gen_path,
    gen_star,
    hamiltonian,
    is_connected,
    laplacian,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from .spectral import (
    DEFAULT_DEG_TOL,
    ConvergenceError,
    DegeneracyClass,
    Spectrum,
    cluster_degeneracies,
    eigendecompose,
    format_spectrum,
    jacobi_eigh,
    symmetry_degree,
)
from .transport import (
    QUANTITIES,
    ProbabilityMatrix,
    TimeGrid,
    TransportSeries,
    alpha_bar_sq,
    approx_alpha_bar_sq,
    avg_return_classical,
    avg_return_quantum,
    chi_bar,
    chi_bar_lb,
    classical_prob,
    expm_oracle,
    lta_matrix,
    lta_pair,
    nearest_class,
    propagator,
    quantum_amplitude,
    quantum_prob,
    series,
    transition_matrix,
)
from .analysis import (
    EfficiencyReport,
    ReportConfig,
    VERDICTS,
    decay_slope,
    efficiency_report,
    equipartition_time,
    running_time_average,
    verdict,
)

__version__ = "0.1.0"
