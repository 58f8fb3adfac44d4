"""Normal trail partitions of cubic multigraphs.

The top-level namespace re-exports the most used types and operations; the
submodules hold the rest.
"""

from .constructions import (odd_partition_from_matching, partition_from_hamiltonian_path,
                            partition_from_perfect_path_partition, partition_with_lengths)
from .errors import (ConstructionError, CubicTrailsError, DocumentError, Falsification, GraphFormatError,
                     GuardExceeded, InvalidMarking, PartitionError, SwitchError)
from .generators import generate
from .graph import CubicMultigraph, Dart, GeneralGraph, parse_edge_list, structure_report
from .marking import (Marking, are_compatible, enumerate_normal_partitions, from_marking, to_marking)
from .ppdc import PathCollection, cppdc_minimal_2ec, is_minimal_2ec, verify_cppdc, verify_ppdc
from .search import EdgeColoring, perfect_matchings, proper_3_edge_coloring
from .switching import switch, switching_sequence
from .trails import Trail, TrailPartition, greedy_normalize, is_normal, status
from .triples import (CompatibleTriple, analyze_triple, fan_raspaud_from_triple, search_compatible_triple,
                      three_compatible, three_compatible_bipartite, three_compatible_colored, triangle_expand)

__version__ = "0.1.0"

__all__ = [
    "CompatibleTriple", "ConstructionError", "CubicMultigraph", "CubicTrailsError", "Dart", "DocumentError",
    "EdgeColoring", "Falsification", "GeneralGraph", "GraphFormatError", "GuardExceeded", "InvalidMarking",
    "Marking", "PartitionError", "PathCollection", "SwitchError", "Trail", "TrailPartition",
    "analyze_triple", "are_compatible", "cppdc_minimal_2ec", "enumerate_normal_partitions",
    "fan_raspaud_from_triple", "from_marking", "generate", "greedy_normalize", "is_minimal_2ec", "is_normal",
    "odd_partition_from_matching", "parse_edge_list", "partition_from_hamiltonian_path",
    "partition_from_perfect_path_partition", "partition_with_lengths", "perfect_matchings",
    "proper_3_edge_coloring", "search_compatible_triple", "status", "structure_report", "switch",
    "switching_sequence", "three_compatible", "three_compatible_bipartite", "three_compatible_colored",
    "to_marking", "triangle_expand", "verify_cppdc", "verify_ppdc",
]
