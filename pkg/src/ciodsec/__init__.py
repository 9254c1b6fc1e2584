"""Link-level simulator and analysis toolkit for index-modulated
coordinate-interleaved orthogonal designs with artificial-noise secrecy."""

from .analysis import (
    CodewordSet,
    diversity_rank_scan,
    enumerate_codewords,
    ergodic_secrecy_rate,
    mutual_information,
    pep,
    union_bound,
)
from .artificial_noise import AnBlock, an_coefficients, build_an, normalize_an
from .channel import ChannelState, draw_channel, transmit
from .codec import (
    DispersionSet,
    TxBlock,
    antenna_pairs,
    dispersion_matrices,
    encode,
    interleave,
    spectral_efficiency,
)
from .config import SimConfig, load_config
from .constellation import BaseKind, Constellation, build_constellation, cpd, optimal_rotation
from .harness import CurvePoint, run_ber, run_bound, run_esr, write_csv
from .receiver import (
    DetectionResult,
    detect,
    noise_variance_bob,
    noise_variance_eve,
    whiten,
)

__all__ = [
    "AnBlock",
    "BaseKind",
    "ChannelState",
    "CodewordSet",
    "Constellation",
    "CurvePoint",
    "DetectionResult",
    "DispersionSet",
    "SimConfig",
    "TxBlock",
    "an_coefficients",
    "antenna_pairs",
    "build_an",
    "build_constellation",
    "cpd",
    "detect",
    "dispersion_matrices",
    "diversity_rank_scan",
    "encode",
    "enumerate_codewords",
    "ergodic_secrecy_rate",
    "interleave",
    "load_config",
    "mutual_information",
    "noise_variance_bob",
    "noise_variance_eve",
    "normalize_an",
    "optimal_rotation",
    "pep",
    "run_ber",
    "run_bound",
    "run_esr",
    "spectral_efficiency",
    "union_bound",
    "whiten",
    "write_csv",
]

__version__ = "0.1.0"
