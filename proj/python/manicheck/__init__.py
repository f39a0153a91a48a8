"""Python bindings for the manicheck claim verification pipeline."""

from ._core import (
    ManicheckError,
    cache_key,
    compute_metrics,
    cosine_similarity,
    embed_mock,
    majority,
    parse_verdict,
    run_cli,
    split,
    top_n,
    validate_claim_record,
)

__all__ = [
    "ManicheckError",
    "cache_key",
    "compute_metrics",
    "cosine_similarity",
    "embed_mock",
    "majority",
    "parse_verdict",
    "run_cli",
    "split",
    "top_n",
    "validate_claim_record",
]
