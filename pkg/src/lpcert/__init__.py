"""lpcert: certify candidate optima of dense linear programs.

A candidate point is accepted when no point of a regular lattice on a
small hypersphere around it is both feasible and better than the candidate
by more than a tolerance. The lattice is indexable, so the scan partitions
over a worker pool with a deterministic AND-reduction; verdicts are
bit-identical for every worker count and for both scan backends (numba
kernels or the pure-numpy fallback, selectable via the LPCERT_BACKEND
environment variable).
"""

from .backends import BACKEND_ENV, numba_available, resolve_backend
from .bench import BenchResult, BenchRow, run_bench
from .core import DimensionError, Problem, is_feasible, objective, residuals
from .instances import (
    GeneratorSpec,
    ParseError,
    gen_capped_cube,
    gen_hypercube,
    generate,
    load_problem,
    load_solution,
    read_problem,
    read_solution,
    save_problem,
    write_problem,
    write_solution,
)
from .sphere import (
    AngleIndex,
    DedupAudit,
    SphereParams,
    angle_tables,
    angles_to_index,
    angles_to_point,
    cardinality,
    cardinality_with_duplicates,
    dedup_audit,
    enumerate_dedup,
    enumerate_with_duplicates,
    format_point_csv,
    index_to_angles,
    point_at,
)
from .validate import (
    Chunk,
    ValidationParams,
    Verdict,
    Witness,
    check_point,
    partition_range,
    precheck_candidate,
    validate_par,
    validate_seq,
)

__version__ = "0.1.0"
