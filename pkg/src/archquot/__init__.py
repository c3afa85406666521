"""Flag graphs of the Archimedean solids and their minimal regular covers.

Typical use::

    from archquot import build, cover_report
    report = cover_report(build("snub cube"), "snub cube")
    report.cover_order.factored()   # '2^32*3^11*5'
"""

from .builders import (
    CATALOG,
    SEEDS,
    SOLIDS,
    LatticeBasis,
    OperationKind,
    PolyhedronSpec,
    SpecError,
    build,
    from_spec,
    full_truncate,
    hemi,
    load_spec,
    parse_spec,
    rhombify,
    snub,
    torus_44,
    truncate,
    truncate_full_truncate,
)
from .flagcore import (
    FaceId,
    FlagGraph,
    VertexSymbol,
    apply_word,
    flag_orbits,
    is_isomorphic,
    parse_word,
    validate,
    word_perm,
)
from .permgrp import BigCount, PermGroup
from .petrie import acoptic_ranks, coxeter_elements
from .quotient import (
    PSI_MAPS,
    CoverReport,
    SchlafliType,
    cover_report,
    monodromy,
    psi_apply,
    schlafli_type,
    stabilizer_words,
    verify_psi,
)

__version__ = "0.1.0"
