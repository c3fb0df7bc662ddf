"""Digests of canonical report payloads."""

import hashlib
import hmac
import json
import logging
from typing import Any

logger = logging.getLogger("graph-width")


def canonical_json(payload: Any) -> str:
    """Serialize with sorted keys and fixed separators so equal payloads give equal text."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def results_digest(payload: Any) -> str:
    """SHA-256 hex digest of the canonical JSON of ``payload``."""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def verify_digest(payload: Any, digest: str) -> bool:
    """Check a digest recorded in a report against its results.

    Args:
        payload: The ``results`` section of a report
        digest: The recorded ``results_digest``

    Returns:
        bool: True if the digest matches
    """
    try:
        return hmac.compare_digest(results_digest(payload), digest)
    except (TypeError, ValueError) as e:
        logger.error(f"Error verifying digest: {str(e)}")
        return False
