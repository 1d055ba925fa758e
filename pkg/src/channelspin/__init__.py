"""Entanglement and Majorana geometry of the channel spin-1 state formed by a
polarized spin-1/2 beam and a polarized spin-1/2 target."""

from channelspin.channel_state import (
    ChannelConfig,
    PolarizationVector,
    StatTensors,
    channel_density,
    product_state,
    slf_frame,
    stat_tensors_closed_form,
    stat_tensors_from_state,
    triplet_projection,
)
from channelspin.entanglement import (
    canonical_diagonals,
    covariance_matrix,
    entangled_theta_intervals,
    ppt_min_eigenvalue,
    symmetric_embedding,
    verdict,
)
from channelspin.majorana import (
    channel_eigen_closed_form,
    channel_spinor_angles,
    constellation,
    stellar_points,
)

__version__ = "0.1.0"
