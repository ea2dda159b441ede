"""blockforge: exact basic algebras of blocks with normal defect group.

Pipeline: pc-group engine -> group algebras over finite fields -> dimension
subgroups and the graded restricted Lie algebra with its H-eigenbasis ->
quantum commutation scalars and the graded quiver presentation -> lifts,
correction terms and the ungraded presentation -> rewriting-based dimension
certificates for the emitted presentations.
"""

from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
