"""Non-commutative Donaldson-Thomas invariants of the conifold, computed
exactly: by enumerating pyramid partitions and by expanding infinite
products."""

from .series import BiSeries, QTSeries, QZSeries, substitute_qz, substitute_t
from .products import macmahon, reduced, zA_product, zX_product
from .pyramid import PyramidPartition, Stone, zA_enumerated, plane_partitions_enumerated
from .poset import BACKENDS, default_backend
from .quiver import module_from_partition, tangent_dimension
from .dimer import DimerDelta, from_dimers, to_dimers
from .analysis import mdk, sigma

__version__ = "0.1.0"
