"""The moment map and the geometric tests built on it."""
from .capelli import CapelliResult, capelli_probe
from .invariants import InvariantSpace, invariant_catalog, invariant_space
from .probes import FiberProbeResult, ImageProbeResult, fiber_orbit_probe, orbit_in_image_probe
from .rank import Crosscheck, RankReport, finite_to_one_verdict, mf_rank_crosscheck, pullback_jacobian_rank
from .tau import MomentValue, equivariance_residual, orbit_dim, pulled_back_generators, tau, tau_polys

__all__ = [
    "CapelliResult", "Crosscheck", "FiberProbeResult", "ImageProbeResult", "InvariantSpace",
    "MomentValue", "RankReport", "capelli_probe", "equivariance_residual", "fiber_orbit_probe",
    "finite_to_one_verdict", "invariant_catalog", "invariant_space", "orbit_dim",
    "orbit_in_image_probe", "pullback_jacobian_rank", "pulled_back_generators", "tau",
    "tau_polys", "mf_rank_crosscheck",
]
