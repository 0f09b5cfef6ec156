"""Excluded-minor graph constructions at desk scale.

Clique-sum decompositions of K5- and K3,3-minor-free graphs, the fattening
of planar embeddings, pilar-based bounded-degree hosts and finite windows
of the two-coloured universal gluing, all with checkable minor certificates.
"""

from .cliquesum import CliqueSumTree, decompose, random_clique_sum, recompose, verify_decomposition
from .degree_bound import BoundifyResult, Pilar, boundify, check_boundify, expand_with_pilars, k_pilar
from .embedding import RotationSystem, faces, genus_of_rotation, planar_embed
from .errors import ForbiddenMinorPresent, GraphError
from .fatten import FattenedGraph, TriangleAccess, blowup_subcubic, fatten, subdivide_all, triangle_access
from .graph import Graph, complete_graph, parse_graph, wagner
from .minor import MinorCertificate, find_minor, find_topological_minor, minimal_k3, verify_certificate
from .twins import RootedTree, build_t_prime, ordered_embed, separate_pair
from .universal import UniversalWindow, embed_in_universal, universal_window

__version__ = "0.1.0"

__all__ = [
    "BoundifyResult",
    "CliqueSumTree",
    "FattenedGraph",
    "ForbiddenMinorPresent",
    "Graph",
    "GraphError",
    "MinorCertificate",
    "Pilar",
    "RootedTree",
    "RotationSystem",
    "TriangleAccess",
    "UniversalWindow",
    "blowup_subcubic",
    "boundify",
    "check_boundify",
    "build_t_prime",
    "complete_graph",
    "decompose",
    "embed_in_universal",
    "expand_with_pilars",
    "faces",
    "fatten",
    "find_minor",
    "find_topological_minor",
    "genus_of_rotation",
    "k_pilar",
    "minimal_k3",
    "ordered_embed",
    "parse_graph",
    "planar_embed",
    "random_clique_sum",
    "recompose",
    "separate_pair",
    "subdivide_all",
    "triangle_access",
    "universal_window",
    "verify_certificate",
    "verify_decomposition",
    "wagner",
]
