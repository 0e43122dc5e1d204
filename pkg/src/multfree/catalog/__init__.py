"""Action registry, spectrum analysis and verification reports."""
from .registry import ActionSpec, find, registry_load, registry_parse
from .spectrum import YoungDiagram, diagrams, spectrum_s2_analysis
from .verify import analyze, property_suite, run_verify, strip_wall_time

__all__ = ["ActionSpec", "YoungDiagram", "analyze", "diagrams", "find", "property_suite",
           "registry_load", "registry_parse", "run_verify", "spectrum_s2_analysis", "strip_wall_time"]
