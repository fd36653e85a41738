from .spec import BackendSpec, load_backend_spec
from .cache import ResponseCache, cache_key
from .runner import ReductionRecord, RunResult, run_pipeline, validate_intermediate

__all__ = [
    "BackendSpec",
    "load_backend_spec",
    "cache_key",
    "ResponseCache",
    "ReductionRecord",
    "RunResult",
    "run_pipeline",
    "validate_intermediate",
]
