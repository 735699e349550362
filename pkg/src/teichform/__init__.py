"""Balanced geodesic graphs on a closed genus-2 hyperbolic surface.

Graphs give tangent vectors to Teichmüller space through a cocycle in
H¹(π₁S, so(2,1)); two of them pair by an angle sum over their crossings,
which matches the Goldman pairing of the cocycles.  A convex hull in
Minkowski space goes back from cocycles to graphs.
"""

from .cohomology import Cocycle, class_distance, goldman_pairing, phi, twist_holonomy
from .fuchsian import FuchsianGroup, genus2_octagon
from .geograph import BalancedGraph, GraphEdge, GraphVertex, add, from_closed_geodesic, from_multicurve, scalar_mul
from .mess import tangent_to_graph
from .wolpert import wolpert_pairing
from .words import Word

__version__ = "0.1.0"

__all__ = [
    "BalancedGraph", "Cocycle", "FuchsianGroup", "GraphEdge", "GraphVertex", "Word",
    "add", "class_distance", "from_closed_geodesic", "from_multicurve", "genus2_octagon",
    "goldman_pairing", "phi", "scalar_mul", "tangent_to_graph", "twist_holonomy", "wolpert_pairing",
]
