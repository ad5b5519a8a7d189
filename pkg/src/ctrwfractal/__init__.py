"""Time-changed CTRW scaling limits: simulation, closed-form dimension
formulas, and box-counting verification."""

from .boxcount import (BoxCountCurve, DimEstimate, FitPolicy, PointCloud,
                       ResolutionError, box_count, extract_graph,
                       extract_parametric_set, extract_range, fit_dimension)
from .criteria import (IndexResult, SandwichResult, graph_dim_by_integral,
                       packing_index_from_profile, packing_profile,
                       range_dim_by_integral, sandwich_check)
from .dimensions import (DimensionReport, UnsupportedModelError,
                         theoretical_dimensions)
from .exponents import (CoupledShlesinger, MixtureSubordinator, StableRadial,
                        SumExponent, eval_exponent)
from .experiments import (ConfigError, ExperimentConfig, ExperimentReport,
                          convergence_study, emit_theory_table,
                          run_experiments, theory_table_rows)
from .ks import ks_critical_value, ks_statistic
from .montecarlo import MonteCarloResult, monte_carlo_dimension
from .processes import (CoverageError, GridPath, ModelSpec, SubordinatorPath,
                        TimeChange, compose_time_change, count_renewals,
                        invert_subordinator, simulate_correlated_jump_walk,
                        simulate_coupled_shlesinger, simulate_ctrw_discrete,
                        simulate_fbm_outer, simulate_levy_outer,
                        simulate_subordinator)
from .sampling import (sample_mixture_index, sample_one_sided_stable,
                       sample_symmetric_stable, sample_triangular_waiting)
from .streams import RandomStream

__version__ = "0.1.0"
