from .cone import ConeTriangle, mapping_cone
from .homotopy import (
    Homotopy,
    homotopy_from_morphism,
    homotopy_sum,
    homotopy_verify,
    HomotopyCheck,
    identity_homotopy,
    null_homotopic_morphism,
)
from .resolution import periodic_resolution, PeriodicResolution
from .squares import CompletedSquare, pullback, pushout
from .structure import (
    cok_rank_bookkeeping,
    cosyzygy,
    interleave_permutation,
    omega_signature,
    ShortExactSeq,
    strand_order,
    structure_maps,
    StructureMaps,
    syzygy,
    syzygy_cosyzygy_iso,
    SyzygyIso,
)
