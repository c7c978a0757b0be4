"""Tight frames built on 2n-point interpolatory subdivision over a mesh with two step sizes.

Typical use::

    from ddframes import MeshConfig, construct_frame, verify_frame
    fc = construct_frame(MeshConfig(2, h_left=1.0, h_right=2.0))
    report = verify_frame(fc)
"""

from .filters import (
    Filter,
    RegularFrame,
    daubechies_factor,
    dd_mask,
    regular_frame,
    uep_product,
    uep_residual,
)
from .frame import (
    FrameConstruction,
    FrameError,
    FrameOperator,
    NotPositiveSemidefinite,
    VerificationReport,
    assemble_frame,
    build_R,
    build_R_irr,
    build_S,
    construct_frame,
    psd_factor,
    sample_framelet,
    sample_scaling,
    verify_frame,
)
from .gramian import InadmissibleMesh, moment_table, regular_gram, semiregular_gram
from .mesh import (
    BandedOperator,
    IndexWindow,
    MeshConfig,
    ToleranceSet,
    central_window,
    irregular_index_set,
    mesh_point,
    section_window,
)
from .subdivision import build_subdivision_operator, finite_section, spectral_check

__version__ = "0.1.0"
