"""qftatlas: linear-depth QFT schedules for constrained qubit topologies."""

from .topology import (
    ArchKind,
    CouplingGraph,
    TopologyError,
    Unit,
    UnitKind,
    UnitPartition,
    boundary_links,
    build_architecture,
    unit_partition,
)
from .qft_gates import (
    DependencyOrder,
    Mode,
    check_order,
    dependency_generators,
    logical_gates,
)
from .circuit import (
    Metrics,
    PlacedOp,
    ScheduleBuilder,
    ScheduledCircuit,
    ScheduleError,
    SchemaError,
    append_layer,
    export_json,
    export_qasm,
    import_json,
    metrics,
)
from .verifier import VerificationReport, verify, verify_file
from .lnn import LnnOptions, lnn_qft
from .grid import GridIeOptions, grid_ie, grid_qft, grid_unit_swap
from .sycamore import SycIeOptions, syc_ie, syc_qft, syc_unit_swap
from .heavyhex import HhPlan, hh_plan, hh_qft
from .faults import FaultError, hh_qft_faulty, syc_qft_faulty
from .synthesis import (
    HoleAssignment,
    SketchTemplate,
    SynthSpec,
    cross_validate,
    solve,
    solve_shape,
)
from .bench import BenchRow, bench_one, generate, run_bench

__version__ = "0.1.0"

__all__ = [
    "ArchKind", "CouplingGraph", "TopologyError", "Unit", "UnitKind",
    "UnitPartition", "boundary_links", "build_architecture", "unit_partition",
    "DependencyOrder", "Mode", "check_order", "dependency_generators",
    "logical_gates", "Metrics", "PlacedOp", "ScheduleBuilder",
    "ScheduledCircuit", "ScheduleError", "SchemaError", "append_layer",
    "export_json", "export_qasm", "import_json", "metrics",
    "VerificationReport", "verify", "verify_file", "LnnOptions", "lnn_qft",
    "GridIeOptions", "grid_ie", "grid_qft", "grid_unit_swap",
    "SycIeOptions", "syc_ie", "syc_qft", "syc_unit_swap",
    "HhPlan", "hh_plan", "hh_qft", "FaultError", "hh_qft_faulty",
    "syc_qft_faulty", "HoleAssignment", "SketchTemplate", "SynthSpec",
    "cross_validate", "solve", "solve_shape", "BenchRow", "bench_one",
    "generate", "run_bench",
]
